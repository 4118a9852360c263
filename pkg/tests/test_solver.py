import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_force_count, brute_force_count_plain
from qkd.gauss import GaussCode, parse_gauss_code, rotate
from qkd.quandles import make_dihedral
from qkd.solver import (
    Convention,
    DEFAULT_CONVENTION,
    UnsupportedQuandleError,
    build_system,
    count_colorings,
    count_colorings_linear,
    enumerate_colorings,
    has_nontrivial,
)

TREFOIL = "1, -3, 5, -1, 3, -5"
FIGURE_EIGHT = "-1, 3, -2, 4, -3, 1, -4, 2"


# ---------------------------------------------------------------------------
# The two anchor values are established by the plain exhaustive oracle
# before any solver output is trusted against them.
# ---------------------------------------------------------------------------


def test_anchor_trefoil_three_colorings(quandles):
    system = build_system(parse_gauss_code(TREFOIL))
    oracle = brute_force_count_plain(system, quandles[0])  # 3^3 assignments
    assert oracle == 9
    assert count_colorings(system, quandles[0]).count == oracle


def test_anchor_figure_eight_five_colorings(quandles):
    system = build_system(parse_gauss_code(FIGURE_EIGHT))
    oracle = brute_force_count_plain(system, quandles[1])  # 5^4 assignments
    assert oracle == 25
    assert count_colorings(system, quandles[1]).count == oracle


def test_trefoil_against_scalar_alexander_quandle(quandles):
    system = build_system(parse_gauss_code(TREFOIL))
    oracle = brute_force_count_plain(system, quandles[3])  # 7^3 assignments
    assert oracle == 7
    assert count_colorings(system, quandles[3]).count == 7
    assert count_colorings_linear(parse_gauss_code(TREFOIL), quandles[3]).count == 7


def test_propagation_matches_oracle_on_all_small_knots(catalog, quandles):
    small = [e for e in catalog if e.code.crossing_count <= 6]
    assert len(small) == 7
    for entry in small:
        system = build_system(entry.code)
        for q in quandles:
            expected = brute_force_count(system, q)
            got = count_colorings(system, q)
            assert got.count == expected, (entry.name, q.name)
            assert got.nontrivial == (expected > q.size)


def test_build_system_directions():
    all_odd = build_system(parse_gauss_code(TREFOIL), Convention.ODD_FORWARD)
    assert all_odd.arc_count == 3
    assert all_odd.relations == ((0, 2, 1), (2, 1, 0), (1, 0, 2))
    flipped = build_system(parse_gauss_code(TREFOIL), Convention.ODD_BACKWARD)
    assert flipped.relations == tuple((t, o, s) for s, o, t in all_odd.relations)

    mixed = build_system(parse_gauss_code(FIGURE_EIGHT), Convention.ODD_FORWARD)
    mixed_rev = build_system(parse_gauss_code(FIGURE_EIGHT), Convention.ODD_BACKWARD)
    # parity splits 4_1 evenly: two relations flip, two stay
    assert sum(1 for r, s in zip(mixed.relations, mixed_rev.relations) if r != s) == 4
    assert {frozenset((r[0], r[2])) for r in mixed.relations} == {
        frozenset((r[0], r[2])) for r in mixed_rev.relations
    }


def test_empty_code_counts_constants_only(quandles):
    system = build_system(GaussCode(()))
    assert system.arc_count == 1 and system.relations == ()
    for q in quandles:
        assert count_colorings(system, q).count == q.size
        assert not count_colorings(system, q).nontrivial
    assert count_colorings_linear(GaussCode(()), quandles[3]).count == 7


def test_one_crossing_unknot_diagram(quandles):
    system = build_system(parse_gauss_code("1, -1"))
    for q in quandles:
        assert count_colorings(system, q).count == q.size


def test_linear_matches_propagation_up_to_eight_crossings(catalog, quandles):
    for entry in catalog:
        if entry.code.crossing_count > 8:
            continue
        for q in quandles[:9]:
            prop = count_colorings(build_system(entry.code), q).count
            lin = count_colorings_linear(entry.code, q).count
            assert prop == lin, (entry.name, q.name)


def test_linear_rejects_r9(catalog, quandles):
    with pytest.raises(UnsupportedQuandleError):
        count_colorings_linear(catalog.entry(1).code, quandles[9])


def test_linear_rejects_tableless_quandle():
    bare = make_dihedral(5)
    stripped = type(bare)(name="anon", size=5, table=bare.table, descriptor=None)
    with pytest.raises(UnsupportedQuandleError):
        count_colorings_linear(GaussCode(()), stripped)


def test_field_counts_are_powers_of_field_size(catalog, quandles):
    for index in (1, 2, 5, 15, 47, 90, 170, 249):
        code = catalog.entry(index).code
        for q in quandles[:9]:
            count = count_colorings_linear(code, q).count
            while count % q.size == 0 and count > 1:
                count //= q.size
            assert count == 1


def test_has_nontrivial(catalog, quandles):
    r3 = quandles[0]
    assert not has_nontrivial(build_system(GaussCode(())), r3)
    assert has_nontrivial(build_system(parse_gauss_code(TREFOIL)), r3)
    # 3^4 oracle: the figure eight admits only constant 3-colorings
    fig8 = build_system(parse_gauss_code(FIGURE_EIGHT))
    assert brute_force_count_plain(fig8, r3) == 3
    assert not has_nontrivial(fig8, r3)


def test_has_nontrivial_agrees_with_count(catalog, quandles):
    for index in (1, 2, 3, 8, 36, 85, 167):
        system = build_system(catalog.entry(index).code)
        for q in quandles:
            expected = count_colorings(system, q).count > q.size
            assert has_nontrivial(system, q) == expected


def test_enumerate_colorings_unknot(quandles):
    system = build_system(GaussCode(()))
    found = enumerate_colorings(system, quandles[0], 10)
    assert [c.assignment for c in found] == [(0,), (1,), (2,)]


def test_enumerate_colorings_trefoil(quandles):
    system = build_system(parse_gauss_code(TREFOIL))
    found = enumerate_colorings(system, quandles[0], 100)
    assert len(found) == 9
    assert sum(1 for c in found if c.is_constant()) == 3
    table = quandles[0].table
    for coloring in found:
        for s, o, t in system.relations:
            assert table[coloring.assignment[s]][coloring.assignment[o]] == coloring.assignment[t]


def test_enumerate_colorings_limits(quandles):
    system = build_system(parse_gauss_code(TREFOIL))
    assert enumerate_colorings(system, quandles[0], 0) == []
    assert len(enumerate_colorings(system, quandles[0], 4)) == 4
    # deterministic order: a prefix of the full enumeration
    full = enumerate_colorings(system, quandles[0], 100)
    assert enumerate_colorings(system, quandles[0], 4) == full[:4]


@settings(max_examples=25, deadline=None)
@given(index=st.integers(1, 248), k=st.integers(1, 19), qi=st.integers(0, 9))
def test_rotation_never_changes_counts(catalog, quandles, index, k, qi):
    entry = catalog.entry(index)
    q = quandles[qi]
    base = count_colorings(build_system(entry.code), q).count
    turned = count_colorings(build_system(rotate(entry.code, k)), q).count
    assert base == turned


def test_default_convention_is_odd_forward():
    assert DEFAULT_CONVENTION is Convention.ODD_FORWARD
    assert Convention("odd-forward") is Convention.ODD_FORWARD
