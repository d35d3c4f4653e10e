"""Travel accounting: itineraries, the two lower bounds, the analytic upper
bound, and per-team extra-travel diagnostics.

Bounds (all in paper labels):
  lb1 = Delta + n * d(M)                      (pair-trip bound)
  lb2 = n * (d(T) + d(M))                     (spanning-tree bound)
  upper = Delta + sum of the four largest-labeled degree sums
          + 5 * (even-label cycle) + (n + 4) * d(M)
With the numbering inequalities this gives total <= (1 + 9/n) * lb1 whenever
the even-cycle inequality holds on the instance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .construction import Schedule
from .errors import DegenerateError, DomainError
from .graph import Matching, SpanningTree
from .instances import DistanceMatrix
from .numbering import TeamNumbering, degree_sums, even_cycle_length

REL_TOL = 1e-9


@dataclass(frozen=True)
class TravelReport:
    n: int
    per_team: tuple[float, ...]  # by paper label
    total: float
    lb1: float
    lb2: float
    analytic_upper: float
    ratio_lb1: float
    target_ratio: float
    ineq4_holds: bool


def team_itinerary(schedule: Schedule, dmat: np.ndarray, team: int) -> tuple[list[int], float]:
    """Venue sequence (paper labels, home first and last) and travel distance.

    ``dmat`` is the label-indexed distance matrix (entry [i-1][j-1]).
    """
    tab = schedule.table()
    opp, home = tab["opp"], tab["home"]
    seq = [team]
    for day in range(1, schedule.days + 1):
        j = opp[team][day]
        if j == 0:
            raise DomainError(f"team {team} has no game on day {day}")
        seq.append(team if home[team][day] else j)
    seq.append(team)
    dist = 0.0
    for a, b in zip(seq, seq[1:]):
        dist += float(dmat[a - 1][b - 1])
    return seq, dist


def lower_bounds(dm: DistanceMatrix, matching: Matching, tree: SpanningTree) -> dict:
    ds = degree_sums(dm)
    lb1 = ds.delta + dm.n * matching.weight
    lb2 = dm.n * (tree.weight + matching.weight)
    return {"lb1": float(lb1), "lb2": float(lb2)}


def analytic_upper_bound(
    dm: DistanceMatrix, numbering: TeamNumbering, matching: Matching, tree: SpanningTree
) -> float:
    n = dm.n
    ds = degree_sums(dm)
    orig = numbering.original_of
    four = sum(ds.per_team[orig[lab - 1]] for lab in (n - 3, n - 2, n - 1, n))
    cyc = even_cycle_length(dm, numbering)
    return float(ds.delta + four + 5.0 * cyc + (n + 4) * matching.weight)


def travel_totals(
    schedule: Schedule,
    dm: DistanceMatrix,
    numbering: TeamNumbering,
    matching: Matching,
    tree: SpanningTree,
) -> TravelReport:
    dmat = numbering.relabeled_matrix(dm)
    per_team = tuple(team_itinerary(schedule, dmat, t)[1] for t in range(1, schedule.n + 1))
    total = float(sum(per_team))
    bounds = lower_bounds(dm, matching, tree)
    lb1, lb2 = bounds["lb1"], bounds["lb2"]
    if lb1 == 0.0:
        if total > 0.0:
            raise DegenerateError("lb1 = 0 with positive travel; distances are corrupt")
        ratio = 1.0
    else:
        ratio = total / lb1
    ineq4 = even_cycle_length(dm, numbering) <= tree.weight + matching.weight + REL_TOL * max(
        1.0, tree.weight + matching.weight
    )
    return TravelReport(
        n=schedule.n,
        per_team=per_team,
        total=total,
        lb1=lb1,
        lb2=lb2,
        analytic_upper=analytic_upper_bound(dm, numbering, matching, tree),
        ratio_lb1=ratio,
        target_ratio=1.0 + 9.0 / schedule.n,
        ineq4_holds=bool(ineq4),
    )


def extra_travel_breakdown(schedule: Schedule, dm: DistanceMatrix, numbering: TeamNumbering) -> dict:
    """Signed per-team extras: itinerary minus (degree sum + own matched edge).

    Categories follow the super-team roles: u_1; even rotators; odd rotators;
    u_{m-2}; the left anchor u_{m-1}; the right anchor u_m.
    """
    n = schedule.n
    m = n // 2
    dmat = numbering.relabeled_matrix(dm)
    row_sums = dmat.sum(axis=1)
    per_team = {}
    for t in range(1, n + 1):
        partner = t + 1 if t % 2 == 1 else t - 1
        _, dist = team_itinerary(schedule, dmat, t)
        per_team[t] = dist - float(row_sums[t - 1]) - float(dmat[t - 1][partner - 1])

    def pair_teams(i):
        return (2 * i - 1, 2 * i)

    categories = {
        "I:u1": [1],
        "II:even": list(range(2, m - 2, 2)),
        "III:odd": list(range(3, m - 3, 2)),
        "IV:u_m-2": [m - 2],
        "V:u_m-1": [m - 1],
        "VI:u_m": [m],
    }
    by_category = {
        key: float(sum(per_team[t] for i in idxs for t in pair_teams(i)))
        for key, idxs in categories.items()
    }
    return {"per_team": per_team, "by_category": by_category}


def counted_leg_budget(n: int) -> dict[int, dict]:
    """Per-team multiset of legs the pair-trip bound accounts for: each
    incident edge once plus every matched edge once (own edge twice in all)."""
    budgets = {}
    for t in range(1, n + 1):
        incident = {frozenset((t, j)): 1 for j in range(1, n + 1) if j != t}
        medges = {frozenset((2 * i - 1, 2 * i)): 1 for i in range(1, n // 2 + 1)}
        budgets[t] = {"incident": incident, "matched": medges}
    return budgets


def extra_legs(schedule: Schedule, dmat: np.ndarray, team: int) -> list[tuple[int, int]]:
    """Itinerary legs of ``team`` not covered by the pair-trip bound's budget.

    A leg touching home consumes the incident-edge allowance of the other
    endpoint; a leg between two venues consumes the matched-pair allowance if
    the venues are partners.  Whatever remains is extra traveling.
    """
    seq, _ = team_itinerary(schedule, dmat, team)
    incident_left = {j: 1 for j in range(1, schedule.n + 1) if j != team}
    matched_left = {i: 1 for i in range(1, schedule.n // 2 + 1)}
    extras = []
    for a, b in zip(seq, seq[1:]):
        if a == b:
            continue
        if a == team or b == team:
            other = b if a == team else a
            if incident_left.get(other, 0) > 0:
                incident_left[other] -= 1
                continue
        lo, hi = min(a, b), max(a, b)
        if hi == lo + 1 and lo % 2 == 1 and matched_left.get((lo + 1) // 2, 0) > 0:
            matched_left[(lo + 1) // 2] -= 1
            continue
        extras.append((a, b))
    return extras
