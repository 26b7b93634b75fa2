import itertools
import math

import pytest
from hypothesis import given, strategies as st

from wreathlab.errors import LevelMismatch, SizeMismatch, SizeShrink, SizeTooSmall, TooLarge
from wreathlab.multipartitions import MultiPartition, enumerate_multipartitions
from wreathlab.wreath import (
    WreathElement,
    act,
    class_representative,
    class_size,
    cocycle,
    compose_pairs,
    count_class_sizes,
    cycle_products,
    cycle_type,
    embed,
    enumerate_wreath,
    format_element,
    identity,
    inverse,
    multiply,
    parse_element,
    project,
)


def elements(order, n_min=1, n_max=4):
    """Hypothesis strategy for elements of G~S(n) with |G| = order."""
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.builds(
            WreathElement,
            st.lists(st.integers(0, order - 1), min_size=n, max_size=n).map(tuple),
            st.permutations(range(n)).map(tuple),
        )
    )


def same_level(order, n):
    return st.builds(
        WreathElement,
        st.lists(st.integers(0, order - 1), min_size=n, max_size=n).map(tuple),
        st.permutations(range(n)).map(tuple),
    )


# multiplication


def test_z2_hand_product(z2):
    x = WreathElement((1, 0), (1, 0))
    assert multiply(z2, x, x) == WreathElement((1, 1), (0, 1))


def test_trivial_group_is_permutation_composition(trivial):
    s = WreathElement((0, 0, 0), (2, 1, 0))  # (13)(2)
    t = WreathElement((0, 0, 0), (1, 0, 2))  # (12)(3)
    st_ = multiply(trivial, s, t)
    assert st_.perm == tuple(s.perm[t.perm[i]] for i in range(3))


def test_size_mismatch(z2):
    with pytest.raises(SizeMismatch):
        multiply(z2, identity(z2, 2), identity(z2, 3))


@given(st.data())
def test_associativity_random(s3, data):
    n = data.draw(st.integers(1, 4))
    x, y, z = (data.draw(same_level(6, n)) for _ in range(3))
    assert multiply(s3, multiply(s3, x, y), z) == multiply(s3, x, multiply(s3, y, z))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identity_and_inverse_exhaustive(z2, n):
    e = identity(z2, n)
    for x in enumerate_wreath(z2, n):
        assert multiply(z2, x, e) == x == multiply(z2, e, x)
        assert multiply(z2, x, inverse(z2, x)) == e == multiply(z2, inverse(z2, x), x)


def test_inverse_of_pure_permutation(z2):
    x = WreathElement((0, 0, 0), (1, 2, 0))
    assert inverse(z2, x) == WreathElement((0, 0, 0), (2, 0, 1))


# cycles


def test_cycle_products_examples(z2):
    recs = cycle_products(z2, identity(z2, 3))
    assert [(r.cycle, r.product, r.color) for r in recs] == [((0,), 0, 0), ((1,), 0, 0), ((2,), 0, 0)]
    [rec] = cycle_products(z2, WreathElement((1, 1), (1, 0)))
    assert (rec.cycle, rec.product, rec.color) == ((0, 1), 0, 0)
    [rec] = cycle_products(z2, WreathElement((1, 0), (1, 0)))
    assert (rec.product, rec.color) == (1, 1)


def test_cycle_product_order_is_right_to_left(s3):
    # cycle 0 -> 1: product g_1 g_0 (positions zero-based)
    x = WreathElement((1, 4), (1, 0))
    [rec] = cycle_products(s3, x)
    assert rec.product == s3.mul[4][1]


def test_cycle_type_examples(z2):
    assert cycle_type(z2, identity(z2, 3)) == MultiPartition([(1, 1, 1), ()])
    assert cycle_type(z2, WreathElement((1, 0), (1, 0))) == MultiPartition([(), (2,)])


def test_cycle_type_class_function_exhaustive(z2):
    elems = list(enumerate_wreath(z2, 3))
    for x in elems:
        lam = cycle_type(z2, x)
        for w in elems[::5]:
            assert cycle_type(z2, multiply(z2, multiply(z2, w, x), inverse(z2, w))) == lam


@given(st.data())
def test_cycle_type_class_function_s3(s3, data):
    n = data.draw(st.integers(1, 4))
    x, w = data.draw(same_level(6, n)), data.draw(same_level(6, n))
    assert cycle_type(s3, multiply(s3, multiply(s3, w, x), inverse(s3, w))) == cycle_type(s3, x)


# projection and embedding


def test_projection_drops_fixed_last_letter(s3):
    x = WreathElement((3, 4, 0), (1, 0, 2))
    assert project(s3, x) == WreathElement((3, 4), (1, 0))


def test_projection_cut_example(s3):
    # (13)(26475) in one-based notation; weights are arbitrary S3 elements
    g = (1, 2, 3, 4, 5, 1, 4)
    x = WreathElement(g, (2, 5, 0, 6, 1, 3, 4))
    y = project(s3, x)
    assert y.perm == (2, 5, 0, 4, 1, 3)  # (13)(2645)
    assert y.weights == (g[0], g[1], g[2], g[3], s3.mul[g[4]][g[6]], g[5])


def test_projection_too_small(z2):
    with pytest.raises(SizeTooSmall):
        project(z2, identity(z2, 1))


def test_projection_preserves_cycle_types_of_survivors(s3):
    for x in itertools.islice(enumerate_wreath(s3, 3), 0, None, 7):
        lam, mu = cycle_type(s3, x), cycle_type(s3, project(s3, x))
        assert mu.n == lam.n - 1
        # removing one letter shortens exactly one cycle (or drops a fixed point)
        diff = [l for l in range(s3.k) if lam[l] != mu[l]]
        assert len(diff) <= 1


def test_projection_equivariance_exhaustive(z2):
    small = list(enumerate_wreath(z2, 2))
    for x in enumerate_wreath(z2, 3):
        px = project(z2, x)
        for v, w in itertools.product(small, repeat=2):
            lhs = project(z2, multiply(z2, multiply(z2, embed(z2, v, 3), x), embed(z2, w, 3)))
            assert lhs == multiply(z2, multiply(z2, v, px), w)


@given(elements(6))
def test_project_after_embed_is_identity(s3, x):
    assert project(s3, embed(s3, x, x.n + 1)) == x
    assert embed(s3, x, x.n) == x


def test_embed_identity(z2):
    assert embed(z2, identity(z2, 1), 3) == identity(z2, 3)
    with pytest.raises(SizeShrink):
        embed(z2, identity(z2, 3), 2)


# cocycles


def test_cocycle_trivial_pairs(z2):
    w = WreathElement((1, 0), (1, 0))
    for x in enumerate_wreath(z2, 3):
        for l in range(2):
            assert cocycle(z2, x, (identity(z2, 2), identity(z2, 2)), l) == 0
            assert cocycle(z2, x, (w, w), l) == 0


def test_cocycle_stability_exhaustive(z2):
    small = list(enumerate_wreath(z2, 2))
    for xt in enumerate_wreath(z2, 3):
        x = project(z2, xt)
        for pair in itertools.product(small, repeat=2):
            for l in range(2):
                assert cocycle(z2, x, pair, l) == cocycle(z2, xt, pair, l)


def test_action_orientation(z2):
    x = WreathElement((0, 0), (0, 1))
    w1 = WreathElement((1, 0), (1, 0))
    e = identity(z2, 2)
    assert act(z2, x, (w1, e)) == w1
    assert act(z2, x, (e, w1)) == inverse(z2, w1)


def test_action_level_mismatch(z2):
    with pytest.raises(LevelMismatch):
        act(z2, identity(z2, 2), (identity(z2, 3), identity(z2, 2)))


@given(st.data())
def test_cocycle_chain_rule(z2, data):
    n = data.draw(st.integers(2, 4))
    m = data.draw(st.integers(1, n))
    x = data.draw(same_level(2, n))
    w1 = (data.draw(same_level(2, m)), data.draw(same_level(2, m)))
    w2 = (data.draw(same_level(2, m)), data.draw(same_level(2, m)))
    both = compose_pairs(z2, w1, w2)
    assert act(z2, act(z2, x, w1), w2) == act(z2, x, both)
    for l in range(2):
        assert cocycle(z2, x, both, l) == cocycle(z2, x, w1, l) + cocycle(z2, act(z2, x, w1), w2, l)


# classes


def test_class_size_examples(z2, trivial):
    assert class_size(MultiPartition([(1, 1, 1)]), trivial) == 1
    assert class_size(MultiPartition([(2,), ()]), z2) == 2
    members = [x for x in enumerate_wreath(z2, 2) if cycle_type(z2, x) == MultiPartition([(2,), ()])]
    assert members == [WreathElement((0, 0), (1, 0)), WreathElement((1, 1), (1, 0))]


@pytest.mark.parametrize("name,n_max", [("trivial", 4), ("z2", 4), ("s3", 3)])
def test_class_sizes_match_enumeration(groups, name, n_max):
    g = groups[name]
    for n in range(1, n_max + 1):
        counted = count_class_sizes(g, n)
        for lam in enumerate_multipartitions(n, g.k):
            assert class_size(lam, g) == counted.get(lam, 0)
        assert sum(counted.values()) == g.order**n * math.factorial(n)


@pytest.mark.parametrize("name,n", [("trivial", 3), ("z2", 2), ("s3", 2)])
def test_enumeration_counts(groups, name, n):
    g = groups[name]
    elems = list(enumerate_wreath(g, n))
    assert len(elems) == len(set(elems)) == g.order**n * math.factorial(n)


def test_enumeration_cap(s3):
    with pytest.raises(TooLarge):
        list(enumerate_wreath(s3, 3, cap=100))


@pytest.mark.parametrize("name", ["z2", "s3"])
def test_class_representative_has_its_type(groups, name):
    g = groups[name]
    for lam in enumerate_multipartitions(3, g.k):
        assert cycle_type(g, class_representative(lam, g)) == lam


@given(elements(6, 0, 6))
def test_text_form_round_trip(x):
    assert parse_element(format_element(x)) == x


def test_text_form_literal():
    assert format_element(WreathElement((1, 0), (1, 0))) == "[1,0|1,0]"
    assert parse_element("[|]") == WreathElement((), ())
