import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import hollow_triangle, lone_vertex, uve
from oracles import dense_betti, in_boundary_span
from zigzag_reps import (
    ApexIntervalKind,
    Chain,
    IntervalTree,
    PrismChain,
    RepIndex,
    Run,
    Vertical,
    ZigzagError,
    all_reps,
    bar_span,
    build_rep_index,
    slice,
    zigzag_barcode,
)
from zigzag_reps.generate import random_zigzag
from zigzag_reps.reduction import PairClass, PairKind


def test_lone_vertex_bar():
    zz = zigzag_barcode(lone_vertex())
    (bar,) = zz.bars
    assert (bar.dim, bar.type, bar.span) == (0, "closed-closed", (1, 3))
    assert [i for i in range(zz.complex.n + 1) if i in bar] == [1, 2, 3]
    assert dict(zz.representative(0, 2)) == {"v": 1}
    assert {i: dict(z) for i, z in zz.representatives(0).items()} == {1: {"v": 1}, 2: {"v": 1}, 3: {"v": 1}}
    assert zz.input_span(bar) == (1, 1)


def test_uve_bars_and_slices():
    zz = zigzag_barcode(uve(), p=2)
    got = [(b.dim, b.type, b.span) for b in zz.bars]
    assert got == [(0, "closed-closed", (1, 11)), (0, "closed-open", (3, 4)), (0, "open-closed", (8, 9))]
    ordinary = zz.bars[1]
    assert dict(zz.representative(ordinary.id, 3)) == {"u": 1, "v": 1}
    assert zz.input_span(ordinary) == (3, 4)
    c = zz.complex
    # the bar dies when e enters at 5: component count drops
    assert [dense_betti(c, i, 0, 2) for i in (3, 4, 5)] == [2, 2, 1]


def _pair(kind, b, d):
    return PairClass(kind, "x", "y", b, d, 0, None, None)


def test_span_table():
    assert bar_span(_pair(PairKind.ORDINARY, 3, 5)).span == (3, 4)
    assert bar_span(_pair(PairKind.RELATIVE, 7, 9)).span == (8, 9)
    rec = bar_span(_pair(PairKind.EXTENDED_OO, 5, 9))
    assert rec.span == (6, 8) and rec.kind is ApexIntervalKind.OPEN_OPEN
    assert bar_span(_pair(PairKind.EXTENDED_CC, 1, 3)).span == (1, 3)
    with pytest.raises(ZigzagError):
        bar_span(_pair(PairKind.ORDINARY, 3, 3))


def test_rep_index_examples():
    idx = RepIndex(PrismChain({Run("v", 1, 3): 1}, 2))
    assert idx.stab(2.5) == {"v": 1}
    idx = RepIndex(PrismChain({Run("u", 3, 5): 1, Run("v", 3, 5): 1, Vertical("e", 5): 1}, 2))
    assert idx.stab(3.5) == {"u": 1, "v": 1}
    assert idx.stab(5.5) == {}
    assert idx.verticals == {Vertical("e", 5): 1}


def test_slice_outside_span():
    zz = zigzag_barcode(lone_vertex())
    with pytest.raises(IndexError):
        zz.representative(0, 4)
    with pytest.raises(KeyError):
        zz.bar(3)


def test_slices_at_hi_end_lie_in_space():
    zz = zigzag_barcode(uve(), p=5)
    for bar in zz.bars:
        z = zz.representative(bar.id, bar.span[1])
        assert all(zz.complex[cell].tmin <= bar.span[1] <= zz.complex[cell].tmax for cell in z)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 50), st.integers(0, 50)), max_size=60), st.lists(st.integers(-2, 104), max_size=20))
def test_interval_tree_matches_scan(ivs, probes):
    items = [(min(a, b), max(a, b), k) for k, (a, b) in enumerate(ivs)]
    tree = IntervalTree(items)
    for x2 in probes:
        x = x2 / 2
        want = sorted(k for lo, hi, k in items if lo <= x <= hi)
        assert sorted(k for _, _, k in tree.stab(x)) == want


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from([2, 5]))
def test_slices_are_compatible_nonzero_cycles(seed, p):
    zz = zigzag_barcode(random_zigzag(seed, m=30), p)
    c = zz.complex
    for bar in zz.bars:
        reps = zz.representatives(bar.id)
        idx = zz.index(bar.id)
        for i, z in reps.items():
            assert not in_boundary_span(c, i, z, p)
            x = i + 0.5 if i < bar.d else i - 0.5
            assert idx.stab(x) == idx.scan(x)
            # for even i the slice from the other side is homologous
            if i % 2 == 0 and bar.b < i - 0.5 and i + 0.5 < bar.d:
                other = Chain(idx.stab(i - 0.5), p, bar.dim)
                assert in_boundary_span(c, i, z - other, p)
        for i in range(bar.span[0], bar.span[1]):
            odd = i if i % 2 else i + 1
            assert in_boundary_span(c, odd, reps[i] - reps[i + 1], p)


def test_bar_order_is_deterministic():
    a = zigzag_barcode(random_zigzag(3, m=40), 5)
    b = zigzag_barcode(random_zigzag(3, m=40), 5)
    assert [(x.dim, x.span, x.type) for x in a.bars] == [(x.dim, x.span, x.type) for x in b.bars]
    keys = [(x.dim, x.span) for x in a.bars]
    assert keys == sorted(keys)


def test_all_reps_matches_slice():
    zz = zigzag_barcode(hollow_triangle(), 5)
    for bar in zz.bars:
        idx = build_rep_index(zz.reps[bar.id])
        assert all_reps(idx, bar) == {i: slice(idx, bar, i) for i in bar.indices()}
