from pathlib import Path

import pytest

from ttp2.construction import (
    Game,
    build_last_slot,
    build_slot_plans,
    construct_schedule,
    expand_left,
    expand_normal,
    expand_right,
    expand_special_left,
    read_timetable,
    right_daytypes,
    right_forward,
    write_timetable,
)
from ttp2.errors import DomainError, LedgerError, UnsupportedError
from ttp2.instances import generate_instance
from ttp2.validation import validate_schedule

DATA = Path(__file__).parent / "data"


def patterns(games, team):
    by_day = {}
    for g in games:
        if g.home == team:
            by_day[g.day] = "H"
        elif g.away == team:
            by_day[g.day] = "A"
    return "".join(by_day[d] for d in sorted(by_day))


# -- slot plans ---------------------------------------------------------------


def test_slot_plans_m5():
    plans = build_slot_plans(5, n_mod_8=2)
    assert len(plans) == 3
    for plan in plans[1:]:
        kinds = sorted(sg.kind for sg in plan.supergames)
        assert kinds in (["left", "right"], ["right", "special-left"])
    right1 = next(sg for sg in plans[0].supergames if sg.kind == "right")
    assert set(right1.members) == {1, 2, 5}  # i + s = 3 (mod 3) at s = 1


def test_slot_plan_partition_and_congruence():
    for m, mod in ((5, 2), (7, 6), (9, 2), (13, 2), (11, 6)):
        plans = build_slot_plans(m, n_mod_8=mod)
        assert len(plans) == m - 2
        for plan in plans:
            seen = sorted(u for sg in plan.supergames for u in sg.members)
            assert seen == list(range(1, m + 1)), f"slot {plan.s} does not partition"
            rights = [sg for sg in plan.supergames if sg.kind == "right"]
            assert len(rights) == 1
            ia, ib, um = rights[0].members
            assert um == m
            assert (ib + plan.s) % (m - 2) == ((m + 1) // 2) % (m - 2)
            normals = [sg for sg in plan.supergames if sg.kind == "normal"]
            expected_normals = (m - 5) // 2 + (1 if plan.s == 1 else 0)
            assert len(normals) == expected_normals
        special = [sg for p in plans for sg in p.supergames if sg.kind == "special-left"]
        assert len(special) == 1
        assert set(special[0].members) == {1, m - 1}
        assert plans[-1].s == m - 2


def test_slot_plans_reject_bad_m():
    with pytest.raises(DomainError):
        build_slot_plans(6, 2)
    with pytest.raises(DomainError):
        build_slot_plans(3, 6)
    with pytest.raises(DomainError):
        build_slot_plans(5, 6)  # inconsistent residue


# -- day types ----------------------------------------------------------------


def test_right_daytypes_paper_sequences():
    m = 13
    lower = [s for s in range(1, m - 1) if s <= (m - 3) // 2]
    upper = [s for s in range(1, m - 1) if s >= (m + 1) // 2]
    assert right_daytypes(lower[0], m, True) == ("R4", "R3", "~R4", "~R3")
    assert right_daytypes(lower[0], m, False) == ("~R2", "~R1", "R2", "R1")
    assert right_daytypes((m - 1) // 2, m, right_forward((m - 1) // 2, m)) == (
        "R1",
        "R3",
        "~R1",
        "~R3",
    )
    assert right_daytypes(upper[0], m, True) == ("R1", "R2", "~R1", "~R2")
    assert right_daytypes(upper[0], m, False) == ("~R3", "~R4", "R3", "R4")
    with pytest.raises(DomainError):
        right_daytypes(m - 1, m, True)


def test_middle_slot_is_forward():
    for m in (5, 7, 9, 11, 13):
        assert right_forward((m - 1) // 2, m)


# -- expansions ---------------------------------------------------------------


def test_expand_normal_shape():
    games = expand_normal(2, 5, True, s=3)
    assert len(games) == 8
    assert {g.day for g in games} == {9, 10, 11, 12}
    assert patterns(games, 3) == "HHAA"  # tail odd member hosts first
    assert patterns(games, 9) == "AAHH"
    # visiting pair tours the tail pair back to back: no isolated away days
    opps = [g.home for g in sorted(games, key=lambda g: g.day) if g.away == 9]
    assert opps == [3, 4]


def test_expand_normal_alternates_opponents():
    games = expand_normal(1, 2, True, s=1)
    seq = []
    for day in (1, 2, 3, 4):
        g = next(g for g in games if g.day == day and 1 in (g.home, g.away))
        seq.append(g.home if g.away == 1 else g.away)
    assert seq in ([3, 4, 3, 4], [4, 3, 4, 3])


def test_expand_left_variants():
    n = 18
    cons = expand_left(4, 4, "consecutive", n)
    assert len(cons) == 8 and {g.day for g in cons} == {13, 14, 15, 16}
    assert patterns(cons, n - 3) == "HAAH"
    assert patterns(cons, 7) == "AHHA"
    single = expand_left(3, 5, "single-trip", n)
    assert patterns(single, n - 3) == "AHHA"
    assert patterns(single, 5) == "HAAH"
    # single-trip: anchor odd member's away venues are the two rotator homes
    aways = [g.home for g in sorted(single, key=lambda g: g.day) if g.away == n - 3]
    assert aways == [5, 6]
    with pytest.raises(DomainError):
        expand_left(3, 5, "zigzag", n)


def test_expand_special_left():
    n = 10
    m = n // 2
    games = expand_special_left(m - 2, n)
    assert {g.day for g in games} == {2 * n - 11, 2 * n - 10, 2 * n - 9, 2 * n - 8}
    assert patterns(games, n - 3) == "AAHH"
    assert patterns(games, n - 2) == "AHHA"
    assert patterns(games, 1) == "HAAH"
    assert patterns(games, 2) == "HHAA"
    # t_{n-2} visits t_2 then t_1 on its two away days
    aways = [g.home for g in sorted(games, key=lambda g: g.day) if g.away == n - 2]
    assert aways == [2, 1]
    with pytest.raises(DomainError):
        expand_special_left(m - 3, n)


def test_expand_right_shape():
    n = 26
    m = n // 2
    s = 1
    games = expand_right(5, 6, right_daytypes(s, m, right_forward(s, m)), s, n)
    assert len(games) == 12
    for day in (1, 2, 3, 4):
        todays = [g for g in games if g.day == day]
        assert len(todays) == 3
        teams = sorted(t for g in todays for t in (g.home, g.away))
        assert teams == sorted([9, 10, 11, 12, n - 1, n])
    # days 3 and 4 are the venue mirrors of days 1 and 2
    key = lambda g: (g.home, g.away)
    d1 = {key(g) for g in games if g.day == 1}
    d3 = {(a, h) for h, a in d1}
    assert {key(g) for g in games if g.day == 3} == d3


# -- full pipeline ------------------------------------------------------------


def test_construct_rejects_unsupported_n():
    for n in (6, 12, 16):
        with pytest.raises(UnsupportedError):
            dm = generate_instance("euclidean", n, 1)
            construct_schedule(dm)


def test_n10_shape():
    dm = generate_instance("euclidean", 10, 1)
    res = construct_schedule(dm)
    assert len(res.schedule.games) == 90
    assert res.schedule.days == 18
    assert max(g.day for g in res.schedule.games) == 18


def test_supergame_counts_by_category():
    # Category participation counts: u_1 (m-5 normal, 1 special left,
    # 2 right); u_{m-1} (1 normal, m-3 left incl. the special one);
    # u_m (m-2 right); u_{m-2} (m-4 normal, 2 right); others
    # (m-5 normal, 1 left, 2 right).
    for n in (10, 14, 18, 26):
        m = n // 2
        plans = build_slot_plans(m, n % 8)
        counts = {u: {"normal": 0, "left": 0, "special-left": 0, "right": 0} for u in range(1, m + 1)}
        for plan in plans:
            for sg in plan.supergames:
                for u in sg.members:
                    counts[u][sg.kind] += 1
        assert counts[1] == {"normal": m - 5, "left": 0, "special-left": 1, "right": 2}
        assert counts[m - 1] == {"normal": 1, "left": m - 4, "special-left": 1, "right": 0}
        assert counts[m] == {"normal": 0, "left": 0, "special-left": 0, "right": m - 2}
        assert counts[m - 2] == {"normal": m - 4, "left": 0, "special-left": 0, "right": 2}
        for u in range(2, m - 2):
            assert counts[u] == {"normal": m - 5, "left": 1, "special-left": 0, "right": 2}, u


def test_last_slot_ledger_checks():
    dm = generate_instance("euclidean", 10, 1)
    res = construct_schedule(dm)
    slot_games = [g for g in res.schedule.games if g.day <= 12]
    built = build_last_slot(res.numbering, slot_games)
    assert len(built) == 30
    assert {g.day for g in built} == set(range(13, 19))
    # A tampered ledger must be rejected.
    with pytest.raises(LedgerError):
        build_last_slot(res.numbering, slot_games[:-1])
    with pytest.raises(LedgerError):
        extra = slot_games + [Game(1, 1, 2)]
        build_last_slot(res.numbering, extra)


def test_last_slot_partner_and_anchor_games():
    dm = generate_instance("euclidean", 14, 2)
    res = construct_schedule(dm)
    n = dm.n
    last = [g for g in res.schedule.games if g.day >= 2 * n - 7]
    # partner games both land here
    for i in range(1, n // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        meets = [(g.home, g.away) for g in last if {g.home, g.away} == {a, b}]
        assert sorted(meets) == [(a, b), (b, a)]
    # the four anchored teams play each other twice
    anchors = {n - 3, n - 2, n - 1, n}
    for a in anchors:
        opponents = [g.home + g.away - a for g in last if a in (g.home, g.away)]
        assert sorted(opponents) == sorted([x for x in anchors if x != a] * 2)


def test_golden_timetables_bit_exact():
    for seed in (1, 2):
        dm = generate_instance("euclidean", 10, seed)
        res = construct_schedule(dm)
        golden = (DATA / f"golden_timetable_n10_euclidean_seed{seed}.txt").read_text()
        assert write_timetable(res.schedule) == golden


def test_timetable_round_trip():
    dm = generate_instance("euclidean", 14, 3)
    res = construct_schedule(dm)
    text = write_timetable(res.schedule)
    back = read_timetable(text)
    assert back.n == 14
    assert sorted((g.day, g.home, g.away) for g in back.games) == sorted(
        (g.day, g.home, g.away) for g in res.schedule.games
    )
    assert validate_schedule(back) == []
