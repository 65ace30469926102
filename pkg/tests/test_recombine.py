import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from instances import dor_pair, gd_paths, union_pair
from oracles import count_colorings_full
from tropnet.errors import InfeasibleColoring, TripleContact, TypeMismatch
from tropnet.multipath import empty_multipath, make_gd_path
from tropnet.multipath import enumerate_kpaths
from tropnet.network import build_network, gamma0_delta0, tau_line, truncate
from tropnet.randnet import random_network, random_weighting
from tropnet.recombine import (
    FIRST,
    GREEN,
    RED,
    SECOND,
    THIRD,
    _polyline,
    _locate,
    alternating_coloring,
    canonical_decomposition,
    coloring_counts,
    count_alternating_colorings,
    interleave_sort,
    is_alternating,
    recombine_balance,
    recombine_shift,
    split,
    third_variant_rule,
    union,
)


def x_grid(net):
    xs = sorted({v.x for v in net.vertices})
    return xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])]


def height(net, path, x):
    pts, seg = _polyline(net, path)
    return _locate(pts, seg, x)[0]


def line(gd, y):
    return tuple(sorted(tau_line(gd, y), key=lambda e: gd.vertex(gd.edge(e).tail).x))


def touch_net():
    """Two paths meeting at one vertex, where they swap heights."""
    verts = [(0, 0, 1), (1, 0, 3), (2, 2, 2), (3, 4, 1), (4, 4, 3)]
    edges = [(0, 0, 2), (1, 2, 4), (2, 1, 2), (3, 2, 3)]
    return build_network(0, 4, verts, edges)


def test_interleave_sort_touching():
    net = touch_net()
    a, b = (2, 3), (0, 1)
    upper, lower = interleave_sort(net, [b, a])
    assert (upper, lower) == ((2, 1), (0, 3))
    for x in x_grid(net):
        ha, hb = height(net, a, x), height(net, b, x)
        assert height(net, upper, x) == max(ha, hb)
        assert height(net, lower, x) == min(ha, hb)


def test_interleave_sort_nested_is_reorder():
    gd = gamma0_delta0(3)
    lines = [line(gd, y) for y in (1, 2, 3)]
    assert interleave_sort(gd, lines) == lines[::-1]
    assert interleave_sort(gd, []) == []


def test_triple_contact():
    gd = gamma0_delta0(2)
    ln = line(gd, 1)
    with pytest.raises(TripleContact):
        interleave_sort(gd, [ln, ln, ln])


def test_shift_trivial_cases():
    rng = random.Random(1)
    for _ in range(20):
        net = random_network(rng, rank=3)
        low = truncate(net, 2)
        gs = enumerate_kpaths(low, 1)
        if not gs:
            continue
        g = rng.choice(gs)
        even, odd = recombine_shift(empty_multipath(truncate(net, 3)), g, 3, net)
        assert even.k == 0 and odd.edges == g.edges


def test_balance_splits_pair():
    rng = random.Random(2)
    for _ in range(20):
        net = random_network(rng, rank=3)
        fs = enumerate_kpaths(truncate(net, 3), 2)
        if not fs:
            continue
        f = rng.choice(fs)
        even, odd = recombine_balance(f, empty_multipath(truncate(net, 2)), 3, net)
        assert even.edges | odd.edges == f.edges
        assert even.k == odd.k == 1
        (pe,), (po,) = even.paths, odd.paths
        assert all(height(net, po, x) >= height(net, pe, x) for x in x_grid(net))


def test_shift_type_errors():
    net = random_network(random.Random(0), rank=3)
    e = empty_multipath(net)
    with pytest.raises(TypeMismatch):
        recombine_shift(e, e, 3, net)
    with pytest.raises(TypeMismatch):
        recombine_balance(e, e, 3, net)


def check_dor(net, f, g, k, kind, w):
    fn = recombine_shift if kind == "shift" else recombine_balance
    even, odd = fn(f, g, k, net)
    assert even.weight(w) + odd.weight(w) == f.weight(w) + g.weight(w)
    i = g.k if kind == "shift" else f.k - 1
    assert (even.k, odd.k) == ((i - 1, i) if kind == "shift" else (i, i))
    assert all(y <= k - 1 for y in even.sources + even.sinks)
    assert all(y <= k for y in odd.sources + odd.sinks)
    # dor ordering: odd paths interleave the even ones from above
    dor = interleave_sort(net, list(f.paths) + list(g.paths))
    for x in x_grid(net):
        hs = [height(net, p, x) for p in dor]
        assert hs == sorted(hs, reverse=True)
        assert all(hs[j + 2] < hs[j] for j in range(len(hs) - 2))


@given(st.integers(0, 2**32 - 1), st.sampled_from(["shift", "balance"]))
def test_dor_conservation(seed, kind):
    rng = random.Random(seed)
    net = random_network(rng, rank=rng.randint(2, 4), max_edges=14)
    inst = dor_pair(rng, net, kind)
    if inst is None:
        return
    f, g, k = inst
    for _ in range(3):
        check_dor(net, f, g, k, kind, random_weighting(net, rng))


def test_union_of_equal_paths():
    gd = gamma0_delta0(2)
    p = gd_paths(2, 1, 1)[0]
    theta = union(p, p, gd)
    assert all(te.multiplicity == 2 for te in theta.edges)
    assert theta.type == (2, 2)
    dec = canonical_decomposition(theta)
    assert len(dec) == 1 and dec.classes["Qcl"] == [0]
    assert count_alternating_colorings(theta) == 2


def test_union_of_disjoint_paths():
    gd = gamma0_delta0(3)
    lines = []
    for y in (1, 3):
        full = line(gd, y)
        mid = [e for e in full if gd.vertex(gd.edge(e).head).x <= gd.middle]
        lines.append((mid, [e for e in full if e not in mid]))
    a = make_gd_path(gd, [lines[0][0]], [lines[0][1]])
    b = make_gd_path(gd, [lines[1][0]], [lines[1][1]])
    dec = canonical_decomposition(union(a, b, gd))
    assert len(dec.classes["QLR"]) == 2 and len(dec) == 2


def test_union_type_five_three():
    rng = random.Random(4)
    for _ in range(50):
        a, b = rng.choice(gd_paths(3, 2, 2)), rng.choice(gd_paths(3, 3, 1))
        theta = union(a, b)
        assert theta.type == (5, 3)
        red, green = split(theta, (3, 2), FIRST)
        assert (red.k, red.i, green.k, green.i) == (3, 2, 2, 1)


def test_split_on_union_with_empty_system():
    gd = gamma0_delta0(2)
    p = gd_paths(2, 1, 1)[0]
    theta = union(p, gd_paths(2, 0, 0)[0], gd)
    red, green = split(theta, (1, 1), FIRST)
    assert red == p and green.k == 0


def test_split_type_mismatch():
    gd = gamma0_delta0(2)
    p = gd_paths(2, 1, 1)[0]
    with pytest.raises(TypeMismatch):
        split(union(p, p, gd), (1, 1), FIRST)
    with pytest.raises(TypeMismatch):
        split(union(p, p, gd), (1, 1), "FOURTH")


def test_coloring_counts_rules():
    assert coloring_counts(FIRST, 1, 0, 0) == (1, 0, 0)
    assert coloring_counts(SECOND, 1, 0, 1) == (1, 0, 0)
    assert coloring_counts(THIRD, 1, 1, 0) == (1, 0, 0)
    with pytest.raises(InfeasibleColoring):
        coloring_counts(FIRST, 2, 0, 0)
    with pytest.raises(InfeasibleColoring):
        coloring_counts(THIRD, 0, 1, 1)


def red_counts(theta, coloring):
    net = theta.base
    src = snk = 0
    for (tid, c), col in coloring.items():
        te = theta.edge(tid)
        if col == RED:
            src += net.vertex(te.tail).x == net.a
            snk += net.vertex(te.head).x == net.b
    return src, snk


def all_alternating(theta):
    copies = theta.copies()
    for bits in product((RED, GREEN), repeat=len(copies)):
        col = dict(zip(copies, bits))
        if is_alternating(theta, col):
            yield col


@pytest.mark.parametrize("variant", [FIRST, SECOND, THIRD])
def test_split_properties(variant):
    rng = random.Random(hash(variant) % 1000)
    for n in (2, 3):
        gd = gamma0_delta0(n)
        for _ in range(60):
            inst = union_pair(rng, n, variant)
            if inst is None:
                continue
            (k, i), a, b = inst
            theta = union(a, b, gd)
            dec = canonical_decomposition(theta)
            for idx, p in enumerate(dec.paths):
                if dec.class_of(idx) in ("Q00", "QLL", "QRR", "Qcl"):
                    assert len(p) % 2 == 0
            red, green = split(theta, (k, i), variant)
            w = {e: Fraction(rng.randint(-30, 30), rng.randint(1, 4)) for e in gd.edge_ids}
            assert red.weight(w) + green.weight(w) == theta.weight(w) == a.weight(w) + b.weight(w)
            assert (red.k, red.i) == (k, i)
            if len(theta.copies()) <= 14:
                n_alt = count_alternating_colorings(theta)
                assert n_alt == 2 ** len(dec) == count_colorings_full(theta)


def test_third_variant_against_exhaustive_oracle():
    rng = random.Random(33)
    seen_parity = set()
    checked = 0
    for _ in range(200):
        inst = union_pair(rng, 3, THIRD)
        if inst is None:
            continue
        (k, i), a, b = inst
        theta = union(a, b)
        if len(theta.copies()) > 12:
            continue
        dec = canonical_decomposition(theta)
        seen_parity.add(len(dec.classes["QLR"]) % 2)
        ours = alternating_coloring(theta, dec, THIRD)
        assert is_alternating(theta, ours)
        assert red_counts(theta, ours) == (k, i)
        good = [c for c in all_alternating(theta) if red_counts(theta, c) == (k, i)]
        assert ours in good
        third_variant_rule(dec)
        checked += 1
    assert checked > 30 and seen_parity == {0, 1}
