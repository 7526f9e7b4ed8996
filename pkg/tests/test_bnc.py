from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from bifree.bnc import (
    BncPartition,
    bnc_one,
    bnc_refines,
    bnc_zero,
    classify_blocks,
    enumerate_bnc,
    enumerate_lr,
    is_lateral_refinement,
    is_shade_constant,
    kreweras_bnc,
    s_perm,
    shaded_bnc,
    transport,
    Shading,
    SidePattern,
)
from bifree.errors import DimensionError, SizeLimitError
from bifree.incidence import catalan
from bifree.partitions import Partition, enumerate_nc, is_non_crossing, parse_partition, refines


def patterns(n):
    return ["".join(c) for c in product("LR", repeat=n)]


def shadings(n):
    return ["".join(c) for c in product("AB", repeat=n)]


def bnc(chi, text):
    return BncPartition.parse(chi, text)


def test_pattern_types_validate():
    with pytest.raises(ValueError):
        SidePattern("LX")
    with pytest.raises(ValueError):
        SidePattern("")
    with pytest.raises(ValueError):
        Shading("AC")


def test_s_perm_examples():
    assert s_perm("LLRLR") == (1, 2, 4, 5, 3)
    assert s_perm("LLL") == (1, 2, 3)
    assert s_perm("RR") == (2, 1)


def test_transport_example():
    q = parse_partition("1,5|2,3,4")
    assert str(transport(q, "LLRLR", "from_nc")) == "1,3|2,4,5"
    assert transport(q, "LLLLL", "to_nc") == q
    with pytest.raises(DimensionError):
        transport(q, "LLR", "to_nc")


@pytest.mark.parametrize("n", range(1, 6))
def test_transport_inverse(n):
    for chi in patterns(n):
        for p in enumerate_nc(n):
            assert transport(transport(p, chi, "from_nc"), chi, "to_nc") == p


def test_membership_by_transport():
    with pytest.raises(ValueError, match="bi-non-crossing"):
        bnc("LLLL", "1,3|2,4")
    # the same blocks are fine once the sides are rearranged
    assert bnc("LRLR", "1,3|2,4").n == 4


def test_small_lattices():
    assert len(enumerate_bnc("L")) == 1
    assert enumerate_bnc("LR") == [bnc_zero("LR"), bnc_one("LR")]
    with pytest.raises(SizeLimitError):
        enumerate_bnc("L" * 11)


@pytest.mark.parametrize("n", range(1, 9))
def test_catalan_census(n):
    pats = patterns(n) if n <= 5 else patterns(n)[:: 2 ** (n - 5)]
    for chi in pats:
        assert len(enumerate_bnc(chi)) == catalan(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_transport_is_order_isomorphism(n):
    for chi in patterns(n):
        ps = enumerate_bnc(chi)
        for p in ps:
            assert is_non_crossing(p.to_nc())
            for q in ps:
                assert bnc_refines(p, q) == refines(p.to_nc(), q.to_nc())


def test_kreweras_figure_example():
    p = bnc("LLRLLLRR", "1,3,5|2,4|6,8|7")
    assert str(kreweras_bnc(p)) == "1,4|2|3|5,7,8|6"
    assert kreweras_bnc(bnc_zero("LRL")) == bnc_one("LRL")
    assert kreweras_bnc(bnc_one("LRL")) == bnc_zero("LRL")


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.sampled_from(patterns(n)), st.integers(0, catalan(n) - 1), st.integers(0, catalan(n) - 1))))
def test_kreweras_reverses_order(case):
    chi, i, j = case
    ps = enumerate_bnc(chi)
    p, q = ps[i], ps[j]
    assert len(p) + len(kreweras_bnc(p)) == len(chi) + 1
    if bnc_refines(p, q):
        assert bnc_refines(kreweras_bnc(q), kreweras_bnc(p))


# block geometry


def test_separation_example():
    chi = "RRRLLLLRR"
    p = bnc(chi, "1,4|2,5|3,6,8|7,9")
    rel = classify_blocks(p, (1, 4), (3, 6, 8))
    assert (2, 5) in rel.separators
    assert rel.piled and not rel.tangled
    assert classify_blocks(p, (1, 4), (2, 5)).piled


def test_singletons_not_piled():
    rel = classify_blocks(bnc_zero("LL"), (1,), (2,))
    assert not rel.piled and not rel.tangled


def test_classify_rejects_foreign_block():
    with pytest.raises(ValueError):
        classify_blocks(bnc_zero("LL"), (1, 2), (1,))


def test_lateral_examples():
    assert is_lateral_refinement(bnc("RLR", "1|2|3"), bnc("RLR", "1,2|3"))
    assert not is_lateral_refinement(bnc("LRL", "1,3|2"), bnc_one("LRL"))
    p = bnc("LRL", "1,3|2")
    assert is_lateral_refinement(p, p)
    with pytest.raises(ValueError):
        is_lateral_refinement(bnc_one("LRL"), p)


# shaded diagrams


def census(chi, eps):
    counts = {}
    for d in enumerate_lr(chi, eps):
        counts[d.open_chords] = counts.get(d.open_chords, 0) + 1
    return counts


def test_lr_worked_examples():
    assert len(enumerate_lr("LR", "AB")) == 4
    assert census("LR", "AB") == {0: 1, 1: 2, 2: 1}
    assert len(enumerate_lr("RLR", "AAB")) == 8
    assert [str(p) for p in shaded_bnc("LR", "AB")] == ["1|2"]
    assert [str(p) for p in shaded_bnc("RLR", "AAB")] == ["1|2|3", "1,2|3"]


@pytest.mark.parametrize("n", range(1, 8))
def test_lr_has_two_to_the_n(n):
    for chi in patterns(n)[:: max(1, 2 ** n // 16)]:
        for eps in shadings(n)[:: max(1, 2 ** n // 8)]:
            assert len(enumerate_lr(chi, eps)) == 2 ** n


@pytest.mark.parametrize("n", range(2, 6))
def test_lr_parent_map_is_two_to_one(n):
    for chi in patterns(n):
        for eps in shadings(n):
            parents = {}
            for d in enumerate_lr(chi, eps):
                key = d.parent()
                parents[key] = parents.get(key, 0) + 1
            assert set(parents) == set(enumerate_lr(chi[1:], eps[1:]))
            assert set(parents.values()) == {2}


@pytest.mark.parametrize("n", range(1, 6))
def test_lr_diagram_invariants(n):
    for chi in patterns(n):
        for eps in shadings(n):
            for d in enumerate_lr(chi, eps):
                assert sorted(k for b in d.blocks for k in b.nodes) == list(range(1, n + 1))
                for b in d.blocks:
                    assert all(eps[k - 1] == b.shade for k in b.nodes)
                shades = [d.block(i).shade for i in d.open_order]
                assert all(a != b for a, b in zip(shades, shades[1:]))
                closed = [b.nodes for b in d.blocks if not b.open]
                nodes = sorted(k for b in closed for k in b)
                if nodes:
                    sub = "".join(chi[k - 1] for k in nodes)
                    pos = {k: i + 1 for i, k in enumerate(nodes)}
                    BncPartition(Partition(len(nodes), [[pos[k] for k in b] for b in closed]), sub)


def test_constant_shading_gives_interval_partitions():
    # with one shade at most one spine is ever open, so every block is a run of
    # consecutive nodes
    for n in range(1, 7):
        for chi in patterns(n):
            got = shaded_bnc(chi, "A" * n)
            assert len(got) == 2 ** (n - 1)
            for p in got:
                for b in p.blocks:
                    assert list(b) == list(range(b[0], b[-1] + 1))


@pytest.mark.parametrize("n", range(1, 7))
def test_union_identity(n):
    for chi in patterns(n):
        union = set()
        for eps in shadings(n):
            union.update(shaded_bnc(chi, eps))
        assert union == set(enumerate_bnc(chi))


def candidate(chi, eps):
    """pi <= eps whose same-shade piled blocks are all separated."""
    out = []
    for p in enumerate_bnc(chi):
        if not is_shade_constant(p.blocks, eps):
            continue
        ok = True
        for i, v in enumerate(p.blocks):
            for w in p.blocks[i + 1:]:
                if eps[v[0] - 1] == eps[w[0] - 1] and classify_blocks(p, v, w).tangled:
                    ok = False
        if ok:
            out.append(p)
    return out


@pytest.mark.parametrize("n", range(1, 6))
def test_shaded_lateral_and_characterization(n):
    for chi in patterns(n):
        for eps in shadings(n):
            shaded = shaded_bnc(chi, eps)
            assert shaded == candidate(chi, eps)
            for q in shaded:
                assert is_shade_constant(q.blocks, eps)
                for p in shaded:
                    if bnc_refines(p, q):
                        assert is_lateral_refinement(p, q)


def test_refinement_below_shaded_need_not_be_lateral():
    # the lateral conclusion needs both partitions shaded; an arbitrary
    # refinement can merge piled blocks
    q = bnc("LLLL", "1|2,3,4")
    assert q in shaded_bnc("LLLL", "AAAA")
    p = bnc("LLLL", "1|2,4|3")
    assert bnc_refines(p, q) and not is_lateral_refinement(p, q)
