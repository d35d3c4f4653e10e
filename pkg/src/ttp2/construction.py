"""Schedule construction for n = 2 (mod 4): slot rotation, super-game
expansion, and the six-day last slot.

Super-teams u_1..u_m are the matched pairs {t_{2i-1}, t_{2i}} under the
minimum-weight perfect matching, after renumbering.  The first m-2 slots of
four days each run a circle rotation: u_1..u_{m-2} move one position per
slot while u_{m-1} (left anchor) and u_m (right anchor) stay fixed.  The
block played at each position follows a fixed template chosen by slot and
pair parity; days 3-4 of every right block are the venue mirrors of days
1-2, which is what keeps every home/away run at length <= 2 across slot
boundaries.

All games here use paper labels 1..n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, LedgerError, ParseError, UnsupportedError
from .graph import christofides_tour, min_weight_perfect_matching, minimum_spanning_tree
from .instances import DistanceMatrix
from .numbering import TeamNumbering, assign_numbering


@dataclass(frozen=True)
class Game:
    day: int
    home: int
    away: int


@dataclass(frozen=True)
class SuperGame:
    kind: str  # normal | left | special-left | right
    members: tuple[int, ...]  # super-team indices; right blocks list (A, B, m)
    forward: bool
    daytypes: tuple[str, ...] = ()


@dataclass(frozen=True)
class SlotPlan:
    s: int
    supergames: tuple[SuperGame, ...]


@dataclass
class Schedule:
    n: int
    games: tuple[Game, ...]
    _table: dict | None = field(default=None, repr=False, compare=False)

    @property
    def days(self) -> int:
        return 2 * (self.n - 1)

    def table(self) -> dict:
        """Lazy per-(team, day) lookup: opponent and home flag (0 = no game)."""
        if self._table is None:
            opp = [[0] * (self.days + 1) for _ in range(self.n + 1)]
            home = [[False] * (self.days + 1) for _ in range(self.n + 1)]
            clashes = []
            for g in self.games:
                if 1 <= g.day <= self.days:
                    for team, other, is_home in ((g.home, g.away, True), (g.away, g.home, False)):
                        if 1 <= team <= self.n and opp[team][g.day] == 0:
                            opp[team][g.day] = other
                            home[team][g.day] = is_home
                        else:
                            clashes.append((team, g.day))
            self._table = {"opp": opp, "home": home, "clashes": clashes}
        return self._table


# ---------------------------------------------------------------------------
# Super-game templates.  Games are (home, away) in role space; helpers below
# map roles to labels and attach days.


def _sg(day0: int, rows: list[list[tuple[int, int]]]) -> list[Game]:
    return [Game(day0 + i, h, a) for i, row in enumerate(rows) for h, a in row]


def expand_normal(i: int, j: int, forward: bool, s: int) -> list[Game]:
    """Two super-teams, eight games, days 4s-3..4s; the tail pair hosts first."""
    tail, head = (i, j) if forward else (j, i)
    a1, a2 = 2 * tail - 1, 2 * tail
    b1, b2 = 2 * head - 1, 2 * head
    return _sg(
        4 * s - 3,
        [
            [(a1, b1), (a2, b2)],
            [(a1, b2), (a2, b1)],
            [(b1, a1), (b2, a2)],
            [(b1, a2), (b2, a1)],
        ],
    )


def expand_left(i: int, s: int, variant: str, n: int) -> list[Game]:
    """Left super-game of u_i against u_{m-1} = {t_{n-3}, t_{n-2}}.

    ``consecutive`` (even slots): the anchor pair tours u_i back to back and
    travels nothing extra; u_i's teams each make two one-day visits.
    ``single-trip`` (odd slots): the full venue mirror - the anchor teams
    make the single-day visits instead.
    """
    a1, a2 = 2 * i - 1, 2 * i
    c1, c2 = n - 3, n - 2
    rows = [
        [(c1, a1), (c2, a2)],
        [(a1, c2), (a2, c1)],
        [(a1, c1), (a2, c2)],
        [(c2, a1), (c1, a2)],
    ]
    if variant == "single-trip":
        rows = [[(a, h) for h, a in row] for row in rows]
    elif variant != "consecutive":
        raise DomainError(f"unknown left variant {variant!r}")
    return _sg(4 * s - 3, rows)


def expand_special_left(s: int, n: int) -> list[Game]:
    """Slot m-2: u_1 vs u_{m-1}, days 2n-11..2n-8.

    Normal template with t_{n-2}'s second and fourth games venue-flipped:
    t_{n-3} keeps the back-to-back visit to u_1 while t_{n-2} makes two
    single-day visits (to t_2 and then t_1).
    """
    m = n // 2
    if s != m - 2:
        raise DomainError(f"special left super-game belongs to slot m-2 = {m - 2}, got {s}")
    c1, c2 = n - 3, n - 2
    return _sg(
        4 * s - 3,
        [
            [(1, c1), (2, c2)],
            [(c2, 1), (2, c1)],
            [(c1, 1), (c2, 2)],
            [(c1, 2), (1, c2)],
        ],
    )


# Right-block day types.  Roles: a1/a2 = odd/even member of u_{i-1},
# b1/b2 of u_i, g1/g2 = t_{n-1}/t_n.  A bar prefix (~) flips every venue.
_RIGHT_BASE = {
    "R1": [("b1", "g1"), ("g2", "a1"), ("b2", "a2")],
    "R2": [("g1", "a2"), ("b1", "g2"), ("b2", "a1")],
    "R3": [("b1", "a1"), ("g1", "a2"), ("b2", "g2")],
    "R4": [("b2", "a1"), ("g2", "a2"), ("b1", "g1")],
}


def _right_day(symbol: str) -> list[tuple[str, str]]:
    if symbol.startswith("~"):
        return [(a, h) for h, a in _RIGHT_BASE[symbol[1:]]]
    return list(_RIGHT_BASE[symbol])


def right_daytypes(s: int, m: int, forward: bool) -> tuple[str, str, str, str]:
    """Day-type sequence of the right super-game in slot s."""
    if not 1 <= s <= m - 2:
        raise DomainError(f"slot {s} outside 1..{m - 2}")
    if s <= (m - 3) // 2:
        return ("R4", "R3", "~R4", "~R3") if forward else ("~R2", "~R1", "R2", "R1")
    if s == (m - 1) // 2:
        return ("R1", "R3", "~R1", "~R3")
    return ("R1", "R2", "~R1", "~R2") if forward else ("~R3", "~R4", "R3", "R4")


def right_forward(s: int, m: int) -> bool:
    """Edge direction of the right block alternates by slot; the middle slot
    (the u_{m-2}/u_1 meeting) carries the forward orientation."""
    return s % 2 == ((m - 1) // 2) % 2


def expand_right(ia: int, ib: int, daytypes, s: int, n: int) -> list[Game]:
    """Three super-teams u_{i-1}, u_i, u_m: twelve games on days 4s-3..4s."""
    if len(daytypes) != 4:
        raise DomainError("a right super-game spans exactly four day types")
    roles = {
        "a1": 2 * ia - 1,
        "a2": 2 * ia,
        "b1": 2 * ib - 1,
        "b2": 2 * ib,
        "g1": n - 1,
        "g2": n,
    }
    rows = [[(roles[h], roles[a]) for h, a in _right_day(sym)] for sym in daytypes]
    return _sg(4 * s - 3, rows)


# ---------------------------------------------------------------------------
# Slot plans.


def _occupant(p: int, s: int, m: int) -> int:
    # Rotating super-team sitting at wheel position p in slot s.
    return (p - s) % (m - 2) + 1


def build_slot_plans(m: int, n_mod_8: int) -> list[SlotPlan]:
    """Plans for slots 1..m-2: who plays what kind of block where."""
    if m % 2 == 0 or m < 5:
        raise DomainError(f"super-team count must be odd and >= 5, got {m}")
    if n_mod_8 not in (2, 6) or (2 * m) % 8 != n_mod_8:
        raise DomainError(f"n_mod_8 = {n_mod_8} inconsistent with m = {m}")
    plans = []
    for s in range(1, m - 1):
        sgs: list[SuperGame] = []
        left_rotator = _occupant(0, s, m)
        if s == 1:
            sgs.append(SuperGame("normal", (m - 1, left_rotator), True))
        elif s == m - 2:
            sgs.append(SuperGame("special-left", (1, m - 1), True))
        else:
            variant_forward = s % 2 == 0  # edge points at u_{m-1} on even slots
            sgs.append(SuperGame("left", (left_rotator, m - 1), variant_forward))
        ib = _occupant((m - 1) // 2, s, m)
        ia = _occupant((m - 3) // 2, s, m)
        fwd = right_forward(s, m)
        sgs.append(SuperGame("right", (ia, ib, m), fwd, right_daytypes(s, m, fwd)))
        for k in range(1, (m - 5) // 2 + 1):
            ui = _occupant(k, s, m)
            uj = _occupant(m - 2 - k, s, m)
            # Hosts-first side: wheel parity (position + slot even) is the tail.
            tail_is_ui = (k + s) % 2 == 0
            sgs.append(SuperGame("normal", (ui, uj) if tail_is_ui else (uj, ui), True))
        plans.append(SlotPlan(s, tuple(sgs)))
    return plans


def _expand_slot(plan: SlotPlan, n: int) -> list[Game]:
    m = n // 2
    games: list[Game] = []
    for sg in plan.supergames:
        if sg.kind == "normal":
            tail, head = sg.members
            games += expand_normal(tail, head, True, plan.s)
        elif sg.kind == "left":
            rot = sg.members[0]
            variant = "consecutive" if plan.s % 2 == 0 else "single-trip"
            games += expand_left(rot, plan.s, variant, n)
        elif sg.kind == "special-left":
            games += expand_special_left(plan.s, n)
        elif sg.kind == "right":
            ia, ib, _ = sg.members
            games += expand_right(ia, ib, sg.daytypes, plan.s, n)
        else:
            raise DomainError(f"unknown super-game kind {sg.kind!r}")
    return games


# ---------------------------------------------------------------------------
# Last slot: six days resolving partner games, the skipped neighbour games,
# and the round robin of the four anchored teams.


def _last_slot_rows(n: int) -> list[list[tuple[int, int]]]:
    rows: list[list[tuple[int, int]]] = [[] for _ in range(6)]
    m = n // 2
    # Four-team gadgets t_{4k}..t_{4k+3} between consecutive even pairs.
    for k in range(1, (n - 10) // 4 + 1):
        w, x, y, z = 4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3
        rows[0] += [(w, x), (z, y)]
        rows[1] += [(y, x)]
        rows[2] += [(w, y), (x, z)]
        rows[3] += [(x, w), (y, z)]
        rows[4] += [(y, w), (z, x)]
        rows[5] += [(x, y)]
    # Even-pair partner games bridge the gadgets on days 2 and 6.
    for j in range(2, m - 2, 2):
        rows[1] += [(2 * j - 1, 2 * j)]
        rows[5] += [(2 * j, 2 * j - 1)]
    # Wrap gadget across the u_{m-2} / u_1 seam.
    w, p, q = n - 6, n - 5, n - 4
    rows[0] += [(3, 1), (2, p), (w, q)]
    rows[1] += [(1, 2), (p, q)]
    rows[2] += [(2, 3), (w, p), (q, 1)]
    rows[3] += [(1, 3), (p, 2), (q, w)]
    rows[4] += [(3, 2), (p, w), (1, q)]
    rows[5] += [(2, 1), (q, p)]
    # The four anchored teams play their own double round robin.
    c1, c2, g1, g2 = n - 3, n - 2, n - 1, n
    rows[0] += [(c2, c1), (g2, g1)]
    rows[1] += [(g1, c1), (c2, g2)]
    rows[2] += [(c1, c2), (g1, g2)]
    rows[3] += [(g2, c1), (c2, g1)]
    rows[4] += [(c1, g1), (g2, c2)]
    rows[5] += [(c1, g2), (g1, c2)]
    return rows


def build_last_slot(numbering: TeamNumbering, met) -> list[Game]:
    """Days 2n-7..2n-2.  ``met`` is the set of ordered (home, away) pairs
    already played in slots 1..m-2; it must leave exactly the pattern this
    slot's templates cover."""
    n = numbering.n
    met_pairs = {(g.home, g.away) if isinstance(g, Game) else tuple(g) for g in met}
    rows = _last_slot_rows(n)
    expected = set()
    for row in rows:
        expected.update(row)
        expected.update((a, h) for h, a in row)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            if (i, j) in met_pairs and (i, j) in expected:
                raise LedgerError(f"ordered pair {(i, j)} already played before the last slot")
            if (i, j) not in met_pairs and (i, j) not in expected:
                raise LedgerError(f"ordered pair {(i, j)} is never scheduled")
    day0 = 2 * n - 7
    return [Game(day0 + i, h, a) for i, row in enumerate(rows) for h, a in row]


# ---------------------------------------------------------------------------
# Full pipeline.


@dataclass(frozen=True)
class ConstructionResult:
    schedule: Schedule
    numbering: TeamNumbering
    slot_plans: tuple[SlotPlan, ...]
    matching: object
    tree: object
    tour: object


def construct_schedule(dm: DistanceMatrix) -> ConstructionResult:
    """Matching, tour, numbering, slot plans, expansion, last slot."""
    n = dm.n
    if n % 4 != 2 or n < 10:
        raise UnsupportedError(
            f"construction covers n = 2 (mod 4) with n >= 10, got n = {n}"
        )
    matching = min_weight_perfect_matching(dm)
    tree = minimum_spanning_tree(dm)
    tour = christofides_tour(dm)
    numbering = assign_numbering(dm, matching, tour)
    plans = build_slot_plans(n // 2, n % 8)
    games: list[Game] = []
    for plan in plans:
        games += _expand_slot(plan, n)
    games += build_last_slot(numbering, games)
    games.sort(key=lambda g: (g.day, g.home))
    schedule = Schedule(n, tuple(games))
    return ConstructionResult(schedule, numbering, tuple(plans), matching, tree, tour)


# ---------------------------------------------------------------------------
# Timetable text format: one row per day, one signed entry per team.


def write_timetable(schedule: Schedule) -> str:
    """2(n-1) rows by n columns; +j means the team hosts j, -j plays at j."""
    tab = schedule.table()
    opp, home = tab["opp"], tab["home"]
    lines = []
    for day in range(1, schedule.days + 1):
        row = []
        for team in range(1, schedule.n + 1):
            j = opp[team][day]
            row.append(f"{j:+d}" if home[team][day] else f"{-j:+d}")
        lines.append(" ".join(f"{e:>4s}" for e in row))
    return "\n".join(lines) + "\n"


def read_timetable(text: str) -> Schedule:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty timetable")
    rows = []
    for ln in lines:
        try:
            rows.append([int(tok) for tok in ln.split()])
        except ValueError as exc:
            raise ParseError(f"malformed timetable row: {ln!r}") from exc
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ParseError("ragged timetable rows")
    games = []
    for day, row in enumerate(rows, start=1):
        for team, entry in enumerate(row, start=1):
            if entry > 0:
                games.append(Game(day, team, entry))
    return Schedule(n, tuple(games))
