import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wreathlab import scalars
from wreathlab.errors import DimensionMismatch, NonPositiveParameter, PochhammerZero, ZeroParameter
from wreathlab.measures import (
    ColoredThomaPoint,
    MeasureTable,
    a_params,
    branching_multiplicity,
    check_coherency,
    check_projection,
    dim_irrep,
    ewens_element_prob,
    ewens_pushforward,
    multiple_z_measure,
    thoma_kernel,
    z_measure,
)
from wreathlab.multipartitions import MultiPartition, check_mps, enumerate_multipartitions, growth_color
from wreathlab.scalars import GaussRat
from wreathlab.wreath import WreathElement, enumerate_wreath

F = Fraction
MP = MultiPartition.parse
pos_rationals = st.fractions(min_value=F(1, 20), max_value=20, max_denominator=20)
gauss = st.builds(GaussRat, st.fractions(-5, 5, max_denominator=8), st.fractions(-5, 5, max_denominator=8)).filter(
    lambda v: v != 0
)


# Ewens


def test_ewens_element_n1(z2):
    t1, t2 = F(2, 3), F(5)
    assert ewens_element_prob(z2, WreathElement((0,), (0,)), [t1, t2]) == t1 / (t1 + t2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_trivial_unit_parameter_is_uniform(trivial, n):
    for x in enumerate_wreath(trivial, n):
        assert ewens_element_prob(trivial, x, [1]) == F(1, math.factorial(n))


def test_pushforward_trivial_n3(trivial):
    m = ewens_pushforward(3, [1], trivial)
    assert m["(3)"] == F(1, 3) and m["(2,1)"] == F(1, 2) and m["(1,1,1)"] == F(1, 6)


def test_pushforward_n1(z2):
    m = ewens_pushforward(1, ["1", "3"], z2)
    assert m["(1)|()"] == F(1, 4) and m["()|(1)"] == F(3, 4)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ewens_sums_to_one_exhaustive(z2, n):
    total = sum(ewens_element_prob(z2, x, [1, 2]) for x in enumerate_wreath(z2, n))
    assert total == 1


@pytest.mark.parametrize("name,n_max", [("z2", 4), ("s3", 3), ("z2xz2", 3)])
def test_dual_routes_agree(groups, name, n_max):
    g = groups[name]
    t = [F(l + 1, 2) + 1 for l in range(g.k)]
    for n in range(1, n_max + 1):
        a = ewens_pushforward(n, t, g)
        b = ewens_pushforward(n, t, g, route="closed")
        assert a.entries == b.entries
        assert a.total() == 1


@given(st.lists(pos_rationals, min_size=2, max_size=2), st.integers(1, 5))
def test_ewens_pushforward_normalized(z2, t, n):
    m = ewens_pushforward(n, t, z2)
    assert m.total() == 1
    assert all(v >= 0 for v in m.entries.values())


def test_ewens_rejects_nonpositive(z2):
    with pytest.raises(NonPositiveParameter):
        ewens_pushforward(2, [1, 0], z2)
    with pytest.raises(NonPositiveParameter):
        ewens_pushforward(2, [1, "-1/2"], z2)


def test_projection_consistency(z2):
    for n in (1, 2, 3):
        assert check_projection(z2, n, ["1/2", "3"]).passed


# z-measures


def test_z_measure_small():
    assert z_measure(1, "3/2+1/2i")["(1)"] == 1
    m = z_measure(2, 1)
    assert m["(2)"] == 1 and m["(1,1)"] == 0
    z = GaussRat(F(3, 2), F(1, 2))
    m = z_measure(2, z)
    zz = z * z.conjugate()
    assert m["(2)"] == scalars.simplify((z + 1) * (z.conjugate() + 1) / (2 * (zz + 1)))


@pytest.mark.parametrize("n", range(1, 7))
def test_z_measure_gaussian_rational_normalized(n):
    m = z_measure(n, "3/2+1/2i")
    assert m.backend == scalars.EXACT
    assert m.total() == 1
    assert all(isinstance(v, Fraction) or isinstance(v, int) for v in m.entries.values())


@given(gauss, st.integers(1, 5))
def test_z_measure_normalized_random(z, n):
    try:
        m = z_measure(n, z)
    except PochhammerZero:
        return
    assert m.total() == 1
    assert all(v >= 0 for v in m.entries.values())


def test_z_measure_errors():
    with pytest.raises(ZeroParameter):
        z_measure(2, 0)
    with pytest.raises(PochhammerZero):
        z_measure(2, "i", "i")  # z z' = -1


def test_decoupled_parameters_still_sum_to_one():
    assert z_measure(3, "2", zprime="1/3").total() == 1


def test_a_params(z2, s3, trivial):
    assert a_params(trivial, ["3/2+1/2i"]) == [GaussRat(F(3, 2), F(1, 2))]
    a1, a2 = a_params(z2, [1, 2])
    assert (a1, a2) == (F(3, 2), F(-1, 2))
    a = a_params(s3, [1, 2, 3])
    assert sum(v * v for v in a) == sum(F(zi * zi) / s3.zeta(i) for i, zi in enumerate([1, 2, 3]))
    with pytest.raises(DimensionMismatch):
        a_params(z2, [1])


@given(st.lists(gauss, min_size=3, max_size=3))
def test_parseval_s3(s3, z):
    a = a_params(s3, z)
    lhs = scalars.simplify(sum((v * v.conjugate() for v in a), GaussRat(0, 0)))
    rhs = scalars.simplify(sum((zi * zi.conjugate() / s3.zeta(i) for i, zi in enumerate(z)), GaussRat(0, 0)))
    assert lhs == rhs


def test_multiple_z_n1(z2):
    m = multiple_z_measure(1, [1, "2+i"], z2)
    a1, a2 = a_params(z2, [1, GaussRat(2, 1)])
    t1, t2 = a1 * a1.conjugate(), a2 * a2.conjugate()
    assert m["(1)|()"] == scalars.simplify(t1 / (t1 + t2))


def test_multiple_z_k1_matches_z_measure(trivial):
    for n in range(1, 5):
        assert multiple_z_measure(n, ["3/2+1/2i"], trivial).entries == z_measure(n, "3/2+1/2i").entries


@pytest.mark.parametrize("n", range(1, 5))
def test_multiple_z_normalized(z2, n):
    assert multiple_z_measure(n, [1, "2+i"], z2).total() == 1


def test_multiple_z_degenerate_colour(z2):
    # z = (1, 1) gives a_2 = 0: colour 2 stays empty
    m = multiple_z_measure(3, [1, 1], z2)
    assert m.total() == 1
    assert all(v == 0 for lam, v in m.entries.items() if lam[1])
    assert m["(3)|()"] == z_measure(3, 1)["(3)"]


def test_multiple_z_all_a_zero(z2):
    # a is an invertible transform of z, so all a_l vanish only at z = 0
    with pytest.raises(ZeroParameter):
        multiple_z_measure(2, [0, 0], z2)


# DIM and branching


def test_dim_irrep_examples(z2, trivial):
    assert dim_irrep(MP("(1)|(1)"), z2) == 2
    assert [dim_irrep(lam, z2) for lam in enumerate_multipartitions(2, 2)] == [1, 1, 2, 1, 1]
    assert dim_irrep(MP("(3,2)"), trivial) == 5


@pytest.mark.parametrize("name,n_max", [("z2", 4), ("s3", 3), ("z2xz2", 3)])
def test_burnside(groups, name, n_max):
    g = groups[name]
    for n in range(n_max + 1):
        assert sum(dim_irrep(lam, g) ** 2 for lam in enumerate_multipartitions(n, g.k)) == g.order**n * math.factorial(n)


def test_branching_multiplicity(z2, s3):
    for n in range(1, 4):
        for small in enumerate_multipartitions(n - 1, 2):
            for big in enumerate_multipartitions(n, 2):
                assert branching_multiplicity(small, big, z2) in (0, 1)
    assert branching_multiplicity(MP("()|()|()"), MP("()|()|(1)"), s3) == 2


@pytest.mark.parametrize("n", range(1, 5))
def test_dim_recurrence_s3(s3, n):
    for big in enumerate_multipartitions(n, s3.k):
        rhs = sum(branching_multiplicity(small, big, s3) * dim_irrep(small, s3)
                  for small in enumerate_multipartitions(n - 1, s3.k))
        assert dim_irrep(big, s3) == rhs


# coherency and partition structures


def test_coherency_multiple_z(z2):
    tables = [multiple_z_measure(n, [1, 2], z2) for n in range(1, 5)]
    for a, b in zip(tables, tables[1:]):
        assert check_coherency(a, b, z2).passed


def test_coherency_s3(s3):
    tables = [multiple_z_measure(n, [1, 2, "1/2+i"], s3) for n in range(1, 4)]
    for a, b in zip(tables, tables[1:]):
        assert check_coherency(a, b, s3).passed


def test_mps_ewens(z2):
    assert check_mps([ewens_pushforward(n, [1, 1], z2) for n in range(1, 5)]).passed
    assert check_mps([ewens_pushforward(n, ["1/3", 5], z2) for n in range(1, 5)]).passed


def test_cross_pairings_are_not_identities(z2):
    # coherency is the statement for z-measures, ball deletion the one for Ewens laws;
    # swapping them gives genuine nonzero defects
    ew = [ewens_pushforward(n, [1, 2], z2) for n in range(1, 5)]
    mz = [multiple_z_measure(n, [1, 2], z2) for n in range(1, 5)]
    assert not check_mps(mz).passed
    assert not all(check_coherency(a, b, z2).passed for a, b in zip(ew, ew[1:]))


def test_coherency_negative_control(z2):
    a, b = multiple_z_measure(2, [1, 2], z2), multiple_z_measure(3, [1, 2], z2)
    lam = MP("(2)|()")
    a.entries[lam] += F(1, 1000)
    report = check_coherency(a, b, z2)
    assert not report.passed
    assert report.max_defect >= F(1, 1000) / dim_irrep(lam, z2)


def test_measure_table_json_round_trip(z2):
    for m in (multiple_z_measure(3, [1, "2+i"], z2), ewens_pushforward(3, [0.5, 2.0], z2)):
        back = MeasureTable.from_json(m.to_json())
        assert back.entries == m.entries and back.backend == m.backend and back.level == m.level


# Thoma kernel


def _point(alpha, beta, delta):
    return ColoredThomaPoint(tuple(map(tuple, alpha)), tuple(map(tuple, beta)), tuple(delta))


def test_thoma_single_box(z2, s3):
    w = _point([[F(1, 4)], []], [[F(1, 8)], [F(1, 2)]], [F(3, 8), F(5, 8)])
    assert thoma_kernel(MP("(1)|()"), w, z2) == F(3, 8)
    w3 = _point([[], [], [F(1, 2)]], [[F(1, 4)], [], []], [F(1, 4), 0, F(3, 4)])
    assert thoma_kernel(MP("()|()|(1)"), w3, s3) == F(3, 8)


def test_thoma_one_row(trivial):
    w = _point([[1]], [[]], [1])
    for n in range(1, 5):
        for lam in enumerate_multipartitions(n, 1):
            assert thoma_kernel(lam, w, trivial) == (1 if len(lam[0]) == 1 else 0)


OMEGAS = [
    _point([[F(1, 2)], []], [[], [F(1, 2)]], [F(1, 2), F(1, 2)]),
    _point([[F(1, 3), F(1, 6)], [F(1, 4)]], [[F(1, 12)], [F(1, 6)]], [F(7, 12), F(5, 12)]),
    _point([[1], []], [[], []], [1, 0]),
    _point([[], [F(2, 5), F(1, 5)]], [[F(3, 10)], [F(1, 10)]], [F(3, 10), F(7, 10)]),
    _point([[F(1, 7)], [F(2, 7)]], [[F(1, 7), F(1, 7)], [F(2, 7)]], [F(3, 7), F(4, 7)]),
]


@pytest.mark.parametrize("omega", OMEGAS)
def test_thoma_normalization(z2, omega):
    assert omega.is_degenerate_series()
    for n in range(1, 5):
        assert sum(dim_irrep(lam, z2) * thoma_kernel(lam, omega, z2) for lam in enumerate_multipartitions(n, 2)) == 1


def test_thoma_point_validation():
    with pytest.raises(ValueError):
        _point([[F(1, 2)], []], [[], []], [F(1, 4), F(1, 4)])  # delta does not sum to one


def test_multiple_z_numerically_degenerate(z2):
    from wreathlab.errors import DegenerateParameter

    with pytest.raises(DegenerateParameter):
        multiple_z_measure(2, [1e-12, 1e-12], z2)
