import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from tropnet.canonical import (
    E,
    NE,
    SE,
    alpha,
    beta,
    cell_functional,
    collection_A,
    collection_B,
    gamma0_labels,
    invert_gz,
    invert_horn,
    region_cells,
    region_functional,
    rhombus_region,
    w_collection,
)
from tropnet.errors import NonFiniteEntry, NonZeroFirstColumn, NOutOfRange, UnknownCell, UnknownRegion
from tropnet.hive import rhombus_inequalities
from tropnet.multipath import L_map, M_map, Tableau, enumerate_kpaths
from tropnet.network import gamma0, gamma0_delta0, truncate
from tropnet.randnet import random_network, random_weighting
from tropnet.tropical import NEG_INF


def rand_w(rng, edge_ids):
    return {e: Fraction(rng.randint(-12, 12), rng.randint(1, 5)) for e in edge_ids}


def rand_tableau(rng, n, first_col_zero):
    def entry(k, i):
        if (i == 0 and first_col_zero) or k == 0:
            return Fraction(0)
        return Fraction(rng.randint(-20, 20), rng.randint(1, 3))
    return Tableau.from_function(n, entry)


def test_labels_partition_edges():
    for n in range(1, 7):
        for horn in (False, True):
            lab = gamma0_labels(n, horn)
            free = [e for _, _, e in lab.free()]
            total = len(free) + len(lab.zero_edges)
            net = gamma0_delta0(n) if horn else gamma0(n)
            assert len(set(free)) == len(free)
            assert set(free) | lab.zero_edges == set(net.edge_ids) and total == len(net.edges)
            assert len(free) == n * (n + 1) // 2 + (n if horn else 0)


@pytest.mark.parametrize("n", range(1, 6))
def test_alpha_is_unique_member_of_its_type(n):
    for k in range(1, n + 1):
        sub = truncate(gamma0(n), k)
        for i in range(1, k + 1):
            a = alpha(n, k, i)
            assert a.sources == tuple(range(k, k - i, -1))
            assert a.sinks == tuple(range(1, i + 1))
            same = [m for m in enumerate_kpaths(sub, i, cap=10**6) if m.type == a.type]
            assert same == [a]


def test_alpha_6_4_2_slants():
    n = 6
    lab = gamma0_labels(n)
    a = alpha(n, 4, 2)
    top, bottom = sorted(a.paths, key=len, reverse=True)
    slants_top = [e for e in top if e in lab.a.values()]
    slants_bottom = [e for e in bottom if e in lab.a.values()]
    assert slants_top == [lab.a[3, 2], lab.a[2, 2]]
    assert slants_bottom == [lab.a[2, 1], lab.a[1, 1]]


def test_alpha_kk_is_lowest_lines():
    for n in range(1, 5):
        for k in range(1, n + 1):
            assert alpha(n, k, k).sinks == tuple(range(1, k + 1))


def test_alpha_range_errors():
    with pytest.raises(NOutOfRange):
        alpha(3, 4, 1)
    with pytest.raises(NOutOfRange):
        beta(3, 2, 3)
    with pytest.raises(NOutOfRange):
        gamma0_labels(0)


@pytest.mark.parametrize("n", range(1, 6))
def test_beta_structure(n):
    coll = collection_B(n)
    for (k, i), b in coll.members.items():
        assert b.k == k and b.i == i
        assert b.delta_part.sources == tuple(range(n, n - i, -1))
    for k in range(n + 1):
        assert coll[k, 0].gamma_part.edges == (alpha(n, n, k).edges if k else frozenset())
        assert coll[k, 0].delta_part.k == 0


def test_beta_6_4_2():
    b = beta(6, 4, 2)
    assert alpha(6, 4, 2).edges < b.gamma_part.edges
    assert b.delta_part.sources == (6, 5)
    assert b.delta_part.k == 2 and b.gamma_part.k == 4


def test_zero_weighting_gives_zero_tableau():
    for n in range(1, 5):
        assert w_collection(collection_A(n), {e: 0 for e in gamma0(n).edge_ids}) == Tableau.zeros(n)
        gd = gamma0_delta0(n)
        assert w_collection(collection_B(n), {e: 0 for e in gd.edge_ids}) == Tableau.zeros(n)
        assert set(invert_gz(Tableau.zeros(n)).values()) == {0}
        assert set(invert_horn(Tableau.zeros(n)).values()) == {0}


def test_small_inversions():
    lab = gamma0_labels(1)
    w = invert_gz(Tableau(1, [[0], [0, 5]]))
    assert w[lab.h[1]] == 5
    lab = gamma0_labels(1, horn=True)
    w = invert_horn(Tableau(1, [[0], [3, 7]]))
    assert w[lab.h[1]] == 3 and w[lab.d[1]] == 4


def test_inversion_errors():
    with pytest.raises(NonZeroFirstColumn):
        invert_gz(Tableau(1, [[0], [1, 5]]))
    with pytest.raises(NonZeroFirstColumn):
        invert_horn(Tableau(1, [[1], [0, 5]]))
    with pytest.raises(NonFiniteEntry):
        invert_gz(Tableau(1, [[0], [0, NEG_INF]]))


@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_inversions_are_right_inverses(seed, n):
    rng = random.Random(seed)
    t = rand_tableau(rng, n, True)
    assert w_collection(collection_A(n), invert_gz(t)) == t
    t = rand_tableau(rng, n, False)
    assert w_collection(collection_B(n), invert_horn(t)) == t


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_round_trip_gz(seed, n):
    rng = random.Random(seed)
    net = random_network(rng, rank=n, max_edges=14)
    t = L_map(net, random_weighting(net, rng, neg_inf=0))
    assume(t.is_finite())
    w = invert_gz(t)
    assert L_map(gamma0(n), w) == t
    # members of A are maximal for this weighting
    assert w_collection(collection_A(n), w) == t


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_round_trip_horn(seed, n):
    rng = random.Random(seed)
    gd = gamma0_delta0(n)
    t = M_map(gd, None, rand_w(rng, gd.edge_ids))
    assert M_map(gd, None, invert_horn(t)) == t


@given(st.integers(0, 2**32 - 1))
def test_jacobian_is_triangular(seed):
    rng = random.Random(seed)
    n = 5
    lab = gamma0_labels(n)
    coll = collection_A(n)
    w = rand_w(rng, gamma0(n).edge_ids)
    base = w_collection(coll, w)
    k0 = rng.randint(1, n)
    bumped = dict(w)
    bumped[lab.h[k0]] += 1
    diff = w_collection(coll, bumped)
    for (k, i), v in base.items():
        # the edge into sink k0 is shared by every member reaching that sink
        assert diff[k, i] - v == (1 if i >= k0 else 0)
    r, s = rng.choice(sorted(lab.a))
    bumped = dict(w)
    bumped[lab.a[r, s]] += 1
    diff = w_collection(coll, bumped)
    for (k, i), v in base.items():
        if k <= r:
            assert diff[k, i] == v
    assert diff[r + 1, s] - base[r + 1, s] == 1


def region_identities(n, horn, w):
    net = gamma0_delta0(n) if horn else gamma0(n)
    coll = collection_B(n) if horn else collection_A(n)
    t = w_collection(coll, w)
    fams = (1, 2, 3) if horn else (1, 2)
    for fam, k, i, plus, minus in rhombus_inequalities(n, fams):
        combo = t[plus[0]] + t[plus[1]] - t[minus[0]] - t[minus[1]]
        kind, kk, ii, sign = rhombus_region(horn, fam, k, i, n)
        if combo != sign * region_functional(net, kind, kk, ii, w):
            return False
    return True


@pytest.mark.parametrize("n", range(1, 7))
def test_region_identities(n):
    rng = random.Random(n)
    for horn in (False, True):
        net = gamma0_delta0(n) if horn else gamma0(n)
        for _ in range(5):
            assert region_identities(n, horn, rand_w(rng, net.edge_ids))


def test_cell_and_region_basics():
    n = 4
    gd = gamma0_delta0(n)
    zero = {e: 0 for e in gd.edge_ids}
    assert cell_functional(gd, (2, 1), zero) == 0
    assert region_functional(gd, E, 2, 1, zero) == 0
    rng = random.Random(0)
    w = rand_w(rng, gd.edge_ids)
    for k in range(n):
        assert region_functional(gd, NE, k, 0, w) == cell_functional(gd, (k, 0), w)
    for j in range(1, n):
        lhs = cell_functional(gd, ("delta", j, j + 1), w)
        assert lhs == region_functional(gd, E, j, j, w) - region_functional(gd, SE, j, j, w)
    assert region_cells(n, NE, 3, 2) == [(3, 2), (2, 1), (1, 0)]


def test_cell_region_errors():
    net = gamma0(3)
    w = {e: 0 for e in net.edge_ids}
    with pytest.raises(UnknownCell):
        cell_functional(net, ("delta", 1, 2), w)
    with pytest.raises(UnknownCell):
        cell_functional(net, (5, 1), w)
    with pytest.raises(UnknownRegion):
        region_functional(net, E, 1, 1, w)
    with pytest.raises(UnknownRegion):
        region_functional(net, "W", 1, 1, w)
