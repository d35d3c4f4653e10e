"""Exhaustive optimal TTP-k solver for tiny instances.

Day-by-day depth-first assignment over complete day matchings, pruned with
an admissible bound that is exact per team: the cheapest way for each team,
in isolation, to finish its remaining away venues in trips of at most k
stops and return home.  Ground truth for lower-bound checks and gap
measurement.  Factorial search: n is capped at 8.
"""

from __future__ import annotations

from dataclasses import dataclass

from .construction import Game, Schedule
from .errors import DomainError, LimitError
from .instances import DistanceMatrix


@dataclass(frozen=True)
class ExactResult:
    optimum: float
    schedule: Schedule
    nodes_explored: int


def solve_exact(
    dm: DistanceMatrix,
    k: int = 2,
    node_limit: int = 500_000_000,
    prune: bool = True,
) -> ExactResult:
    """Minimum total travel over all feasible TTP-k schedules of ``dm``.

    Deterministic search: within a day the pivot is the team with the fewest
    legal moves (lowest index on ties) and moves are tried cheapest first, so
    node counts are reproducible.  ``prune=False`` disables only the cost
    bound, not the feasibility filtering.
    """
    n = dm.n
    if n % 2 != 0:
        raise DomainError(f"n must be even, got {n}")
    if n > 8:
        raise DomainError(f"exact search is factorial; n capped at 8, got {n}")
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    days = 2 * (n - 1)
    d = [[float(x) for x in row] for row in dm.d]

    full = (1 << n) - 1
    home_mask = [full & ~(1 << i) for i in range(n)]  # opponents still to host
    away_mask = [full & ~(1 << i) for i in range(n)]  # venues still to visit
    loc = list(range(n))
    run_home = [True] * n
    run_len = [0] * n
    prev_opp = [-1] * n
    cost = 0.0

    # Per-team relaxation: cheapest continuation from (venue, remaining away
    # capacity of the current trip, remaining away set), ending at home.
    # Memoized per team; trips are capped at k venues, which is exactly what
    # bounded-by-k allows.
    tb_memo: list[dict[tuple[int, int, int], float]] = [dict() for _ in range(n)]

    def team_bound(i: int, v: int, cap: int, mask: int) -> float:
        key = (v, cap, mask)
        memo = tb_memo[i]
        got = memo.get(key)
        if got is not None:
            return got
        if v == i:
            if mask == 0:
                res = 0.0
            else:
                res = float("inf")
                mm = mask
                while mm:
                    j = (mm & -mm).bit_length() - 1
                    mm &= mm - 1
                    res = min(res, d[i][j] + team_bound(i, j, k - 1, mask & ~(1 << j)))
        else:
            res = d[v][i] + team_bound(i, i, 0, mask)
            if cap > 0:
                mm = mask
                while mm:
                    j = (mm & -mm).bit_length() - 1
                    mm &= mm - 1
                    res = min(res, d[v][j] + team_bound(i, j, cap - 1, mask & ~(1 << j)))
        memo[key] = res
        return res

    def contrib(i: int) -> float:
        if loc[i] == i:
            return team_bound(i, i, 0, away_mask[i])
        return team_bound(i, loc[i], k - run_len[i], away_mask[i])

    bound = [contrib(i) for i in range(n)]
    rem = sum(bound)
    # Slack absorbs float-order noise so equal-cost branches are never cut;
    # pruned and unpruned searches then land on the same optimum bitwise.
    tol = 1e-9 * (1.0 + max(max(row) for row in d) * n)

    best = [float("inf")]
    best_games: list[list[tuple[int, int, int]]] = [[]]
    games: list[tuple[int, int, int]] = []
    nodes = [0]

    def moves_for(a: int, unassigned: int):
        out = []
        for b in range(n):
            if b == a or not (unassigned >> b & 1) or prev_opp[a] == b:
                continue
            for host, guest in ((a, b), (b, a)):
                if not (home_mask[host] >> guest & 1):
                    continue
                if run_len[host] >= k and run_home[host]:
                    continue
                if run_len[guest] >= k and not run_home[guest]:
                    continue
                step = d[loc[host]][host] + d[loc[guest]][host]
                out.append((step, host, guest))
        return out

    def day_fill(day: int, unassigned: int):
        nonlocal cost, rem
        if unassigned == 0:
            if day == days:
                final = cost + sum(d[loc[i]][i] for i in range(n))
                if final < best[0]:
                    best[0] = final
                    best_games[0] = list(games)
                return
            day_fill(day + 1, full)
            return
        # Fail-first pivot: the unassigned team with the fewest legal moves.
        pivot, pivot_moves = -1, None
        mask = unassigned
        while mask:
            a = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            mv = moves_for(a, unassigned)
            if not mv:
                return
            if pivot_moves is None or len(mv) < len(pivot_moves):
                pivot, pivot_moves = a, mv
                if len(mv) == 1:
                    break
        pivot_moves.sort(key=lambda t: (t[0], t[1], t[2]))
        for step, host, guest in pivot_moves:
            nodes[0] += 1
            if nodes[0] > node_limit:
                raise LimitError(f"node limit {node_limit} exceeded")
            b = host if guest == pivot else guest
            home_mask[host] &= ~(1 << guest)
            away_mask[guest] &= ~(1 << host)
            saved = (
                loc[host], loc[guest],
                run_home[host], run_len[host], run_home[guest], run_len[guest],
                prev_opp[pivot], prev_opp[b], cost, rem,
                bound[host], bound[guest],
            )
            cost += step
            loc[host] = host
            loc[guest] = host
            run_len[host] = run_len[host] + 1 if run_home[host] else 1
            run_home[host] = True
            run_len[guest] = run_len[guest] + 1 if not run_home[guest] else 1
            run_home[guest] = False
            prev_opp[pivot] = b
            prev_opp[b] = pivot
            rem -= bound[host] + bound[guest]
            bound[host] = contrib(host)
            bound[guest] = contrib(guest)
            rem += bound[host] + bound[guest]
            games.append((day, host, guest))

            if not prune or cost + rem < best[0] + tol:
                day_fill(day, unassigned & ~(1 << host) & ~(1 << guest))

            games.pop()
            home_mask[host] |= 1 << guest
            away_mask[guest] |= 1 << host
            (
                loc[host], loc[guest],
                run_home[host], run_len[host], run_home[guest], run_len[guest],
                prev_opp[pivot], prev_opp[b], cost, rem,
                bound[host], bound[guest],
            ) = saved

    day_fill(1, full)
    if best[0] == float("inf"):
        raise DomainError(f"no feasible TTP-{k} schedule exists for n = {n}")
    sched = Schedule(n, tuple(Game(day, h + 1, g + 1) for day, h, g in best_games[0]))
    return ExactResult(float(best[0]), sched, nodes[0])
