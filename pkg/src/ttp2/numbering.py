"""Team numbering: original indices -> paper labels t_1..t_n.

The numbering pins the two matched pairs with the smallest degree-sum totals
to the top labels (smallest -> {t_{n-1}, t_n}, second smallest ->
{t_{n-3}, t_{n-2}}) and orders the remaining pairs so that the even labels
2, 4, ..., n-4 appear along the Christofides cycle in that cyclic order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Matching, SpanningTree, Tour
from .instances import DistanceMatrix


@dataclass(frozen=True)
class DegreeSums:
    """Per-team summed distance to all other venues, plus the grand total."""

    per_team: tuple[float, ...]
    delta: float


@dataclass(frozen=True)
class TeamNumbering:
    label_of: tuple[int, ...]  # original index -> label in 1..n
    original_of: tuple[int, ...]  # label-1 -> original index
    m: int

    @property
    def n(self) -> int:
        return 2 * self.m

    def relabeled_matrix(self, dm: DistanceMatrix) -> np.ndarray:
        """Distance matrix indexed by paper label minus one."""
        perm = np.array(self.original_of)
        return dm.d[np.ix_(perm, perm)]

    def to_text(self) -> str:
        lines = [f"{orig} {lab}" for orig, lab in sorted(enumerate(self.label_of))]
        return "\n".join(lines) + "\n"


def degree_sums(dm: DistanceMatrix) -> DegreeSums:
    sums = dm.d.sum(axis=1)
    return DegreeSums(tuple(float(x) for x in sums), float(sums.sum()))


def assign_numbering(dm: DistanceMatrix, matching: Matching, tour: Tour) -> TeamNumbering:
    """Deterministic label assignment from the matching and the tour."""
    n = dm.n
    m = n // 2
    sums = degree_sums(dm).per_team
    # Rank pairs by degree-sum total; ties to the smaller original index.
    ranked = sorted(matching.pairs, key=lambda p: (sums[p[0]] + sums[p[1]], min(p)))
    smallest, second = ranked[0], ranked[1]
    rest = [p for p in matching.pairs if p not in (smallest, second)]

    label_of = [0] * n

    def give(pair, odd_label):
        lo, hi = sorted(pair)
        label_of[lo] = odd_label
        label_of[hi] = odd_label + 1

    give(smallest, n - 1)
    give(second, n - 3)

    # Remaining pairs take u_1..u_{m-2} ordered by where each pair's
    # even-label member (its larger original index) first appears along the
    # tour, walking from the tour's lowest-index team.
    start = tour.order.index(min(tour.order))
    walk = tour.order[start:] + tour.order[:start]
    even_member = {max(p): p for p in rest}
    ordered = [even_member[v] for v in walk if v in even_member]
    for k, pair in enumerate(ordered, start=1):
        give(pair, 2 * k - 1)

    original_of = [0] * n
    for orig, lab in enumerate(label_of):
        original_of[lab - 1] = orig
    return TeamNumbering(tuple(label_of), tuple(original_of), m)


def even_cycle_length(dm: DistanceMatrix, numbering: TeamNumbering) -> float:
    """d_{2,4} + d_{4,6} + ... + d_{n-6,n-4} + d_{n-4,2} over paper labels."""
    n = numbering.n
    orig = numbering.original_of
    labels = list(range(2, n - 3, 2))  # 2, 4, ..., n-4
    total = 0.0
    for i, lab in enumerate(labels):
        nxt = labels[(i + 1) % len(labels)]
        total += float(dm.d[orig[lab - 1]][orig[nxt - 1]])
    return total


def numbering_diagnostics(
    numbering: TeamNumbering,
    dm: DistanceMatrix,
    matching: Matching,
    tree: SpanningTree,
    tour: Tour,
) -> dict:
    """The two label-order inequalities the numbering is designed to give.

    The first (four largest-labeled degree sums vs (4/n) * Delta) always
    holds by choice of the top pairs.  The second (even-label cycle vs
    d(T) + d(M)) is reported per instance, not asserted.
    """
    n = numbering.n
    ds = degree_sums(dm)
    orig = numbering.original_of
    four = sum(ds.per_team[orig[lab - 1]] for lab in (n - 3, n - 2, n - 1, n))
    ineq3_rhs = 4.0 / n * ds.delta
    ineq4_lhs = even_cycle_length(dm, numbering)
    ineq4_rhs = tree.weight + matching.weight
    tolerance = 1e-9 * max(1.0, abs(ineq3_rhs), abs(ineq4_rhs))
    return {
        "ineq3_lhs": four,
        "ineq3_rhs": ineq3_rhs,
        "ineq3_holds": four <= ineq3_rhs + tolerance,
        "ineq4_lhs": ineq4_lhs,
        "ineq4_rhs": ineq4_rhs,
        "ineq4_holds": ineq4_lhs <= ineq4_rhs + tolerance,
    }
