"""Schedule feasibility checks: every tournament constraint, exhaustively
enumerated so template bugs come back with concrete witnesses."""

from __future__ import annotations

from dataclasses import dataclass

from .construction import Schedule


@dataclass(frozen=True)
class Violation:
    kind: str  # FixedGameTime | NoRepeat | BoundedByK | DoubleRoundRobin | DayRange
    teams: tuple[int, ...]
    days: tuple[int, ...]
    detail: str


def validate_schedule(schedule: Schedule, k: int = 2, expected_days: int | None = None) -> list[Violation]:
    """Empty list iff the schedule is a feasible bounded-by-k double round robin."""
    n = schedule.n
    days = expected_days if expected_days is not None else 2 * (n - 1)
    out: list[Violation] = []

    per_day: dict[int, list] = {}
    for g in schedule.games:
        if not 1 <= g.day <= days:
            out.append(Violation("DayRange", (g.home, g.away), (g.day,), f"game on day {g.day} outside 1..{days}"))
        per_day.setdefault(g.day, []).append(g)

    # Fixed game time: exactly one game per team per day.
    appearances: dict[tuple[int, int], int] = {}
    for g in schedule.games:
        for team in (g.home, g.away):
            appearances[(team, g.day)] = appearances.get((team, g.day), 0) + 1
    for day in range(1, days + 1):
        for team in range(1, n + 1):
            cnt = appearances.get((team, day), 0)
            if cnt != 1:
                out.append(
                    Violation("FixedGameTime", (team,), (day,), f"team {team} plays {cnt} games on day {day}")
                )

    # Double round robin: every ordered pair hosted exactly once.
    counts: dict[tuple[int, int], int] = {}
    for g in schedule.games:
        counts[(g.home, g.away)] = counts.get((g.home, g.away), 0) + 1
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            cnt = counts.get((i, j), 0)
            if cnt != 1:
                out.append(
                    Violation("DoubleRoundRobin", (i, j), (), f"{i} hosts {j} {cnt} times (expected once)")
                )

    # Opponent and venue sequences for no-repeat and run bounds; only
    # meaningful on days where the team plays exactly once.
    opp_seq: dict[int, list[tuple[int, int, bool]]] = {t: [] for t in range(1, n + 1)}
    for day in range(1, days + 1):
        for g in sorted(per_day.get(day, []), key=lambda g: (g.home, g.away)):
            if appearances.get((g.home, g.day)) == 1 and appearances.get((g.away, g.day)) == 1:
                opp_seq[g.home].append((day, g.away, True))
                opp_seq[g.away].append((day, g.home, False))
    for team in range(1, n + 1):
        seq = sorted(opp_seq[team])
        for (d1, o1, _), (d2, o2, _) in zip(seq, seq[1:]):
            if d2 == d1 + 1 and o1 == o2:
                out.append(
                    Violation("NoRepeat", (team, o1), (d1, d2), f"team {team} meets {o1} on days {d1} and {d2}")
                )
        run_len = 0
        run_home: bool | None = None
        prev_day = None
        for day, _, is_home in seq:
            if prev_day is not None and day == prev_day + 1 and is_home == run_home:
                run_len += 1
            else:
                run_len = 1
                run_home = is_home
            prev_day = day
            if run_len == k + 1:  # report once per overlong run
                word = "home" if is_home else "away"
                out.append(
                    Violation(
                        "BoundedByK",
                        (team,),
                        (day - k, day),
                        f"team {team} has more than {k} consecutive {word} games ending day {day}",
                    )
                )
    return out
