import json
import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from bifree.bnc import BncPartition, bnc_one, bnc_refines, bnc_zero, enumerate_bnc, kreweras_bnc
from bifree.errors import IncompleteNetError, SizeLimitError
from bifree.incidence import (
    MultiplicativeNet,
    catalan,
    convolve,
    delta,
    delta_net,
    eval_multiplicative,
    format_rational,
    induced_net,
    interval,
    interval_decompose,
    mobius_bnc,
    mobius_full,
    moebius,
    moebius_net,
    multiplicative,
    nc_mobius,
    zeta,
    zeta_net,
)


def patterns(n):
    return ["".join(c) for c in product("LR", repeat=n)]


def random_net(bound, rng):
    return MultiplicativeNet.from_function(bound, lambda c: Fraction(rng.randint(-5, 5), rng.randint(1, 4)))


def counts_only_net(bound, rng):
    """Net values depending only on the number of L and R letters."""
    table = {}
    return MultiplicativeNet.from_function(
        bound, lambda c: table.setdefault(c.count("L") * 10 + c.count("R"), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    )


def comparable_pairs(chi):
    ps = enumerate_bnc(chi)
    return [(p, q) for p in ps for q in ps if bnc_refines(p, q)]


def brute_mobius(p, q):
    """mu by the defining recursion sum_{p <= r <= q} mu(p, r) = delta(p, q)."""
    memo = {}

    def mu(r):
        if r in memo:
            return memo[r]
        if r == p:
            val = 1
        else:
            val = -sum(mu(s) for s in interval(p, r) if s != r)
        memo[r] = val
        return val

    return mu(q)


# decomposition


def test_decompose_trivial_examples():
    chi = "LRL"
    assert interval_decompose(bnc_zero(chi), bnc_one(chi)) == [chi]
    p = BncPartition.parse(chi, "1,3|2")
    assert interval_decompose(p, p) == []
    assert interval_decompose(BncPartition.parse("LLL", "1,3|2"), bnc_one("LLL")) == ["LL"]


def test_decompose_rejects_non_refinement():
    with pytest.raises(ValueError):
        interval_decompose(bnc_one("LR"), bnc_zero("LR"))


def kreweras_factors(p, q):
    out = []
    for w in q.blocks:
        sub = BncPartition(p.partition.restrict(w), "".join(p.chi[k - 1] for k in w))
        for u in kreweras_bnc(sub).blocks:
            if len(u) > 1:
                out.append("".join(sub.chi[k - 1] for k in u))
    return sorted(out)


@pytest.mark.parametrize("n", range(1, 6))
def test_decomposition_matches_kreweras(n):
    # [pi, 1] is anti-isomorphic to [0, K(pi)], which factors over the blocks of K(pi)
    for chi in patterns(n):
        for p, q in comparable_pairs(chi):
            factors = interval_decompose(p, q)
            assert sorted(factors) == kreweras_factors(p, q)
            assert sorted(interval_decompose(p, q, reverse=True)) == sorted(factors)
            size = 1
            for beta in factors:
                size *= catalan(len(beta))
            assert size == len(interval(p, q))


def test_literal_lower_node_rule_disagrees():
    # LLR, pi = {1,3|2}: the block {1,3} runs from a top left node to a bottom
    # right node; the gap factor must be LL, the pattern of K(pi)'s big block
    p = BncPartition.parse("LLR", "1,3|2")
    assert [str(b) for b in interval_decompose(p, bnc_one("LLR"))] == ["LL"]
    assert str(kreweras_bnc(p)) == "1,2|3"


# Moebius function


def test_mobius_examples():
    for chi in ("L", "LR", "RLRL"):
        p = bnc_zero(chi)
        assert mobius_bnc(p, p) == 1
    assert mobius_bnc(bnc_zero("LR"), bnc_one("LR")) == -1
    assert mobius_bnc(bnc_zero("LRRL"), bnc_one("LRRL")) == -5
    assert mobius_bnc(bnc_one("LR"), bnc_zero("LR")) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_mobius_full_lattice_closed_form(n):
    for chi in patterns(n)[:: max(1, 2 ** n // 8)]:
        assert mobius_bnc(bnc_zero(chi), bnc_one(chi)) == mobius_full(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_mobius_against_defining_recursion(n):
    for chi in patterns(n):
        for p, q in comparable_pairs(chi):
            assert mobius_bnc(p, q) == brute_mobius(p, q)


@pytest.mark.parametrize("n", range(1, 6))
def test_mobius_factor_product_and_transport(n):
    for chi in patterns(n):
        for p, q in comparable_pairs(chi):
            prod = 1
            for beta in interval_decompose(p, q):
                prod *= mobius_full(len(beta))
            assert mobius_bnc(p, q) == prod
            assert mobius_bnc(p, q) == nc_mobius(p.to_nc(), q.to_nc())


@pytest.mark.parametrize("n", range(1, 5))
def test_mu_zeta_delta(n):
    mu, ze, de = moebius(), zeta(), delta()
    for chi in patterns(n):
        for p, q in comparable_pairs(chi):
            assert convolve(mu, ze, p, q) == de(p, q)
            assert convolve(ze, mu, p, q) == de(p, q)


def test_convolution_examples():
    rng = random.Random(4)
    f = multiplicative(random_net(4, rng))
    for chi in ("LR", "RLR", "LRRL"):
        z, o = bnc_zero(chi), bnc_one(chi)
        assert convolve(zeta(), zeta(), z, o) == catalan(len(chi))
        for p, q in comparable_pairs(chi):
            assert convolve(delta(), f, p, q) == f(p, q)
    with pytest.raises(SizeLimitError):
        convolve(zeta(), zeta(), bnc_zero("L" * 9), bnc_one("L" * 9))


def test_functions_vanish_off_the_order():
    z, o = bnc_zero("LR"), bnc_one("LR")
    for f in (delta(), zeta(), moebius(), multiplicative(zeta_net(2))):
        assert f(o, z) == 0


# multiplicative nets


def test_net_examples():
    for chi in ("LRL", "RRLL"):
        for p, q in comparable_pairs(chi):
            assert eval_multiplicative(zeta_net(4), p, q) == 1
            assert eval_multiplicative(delta_net(4), p, q) == int(p == q)
    assert eval_multiplicative(moebius_net(3), bnc_zero("LRL"), bnc_one("LRL")) == 2


def test_net_completeness_and_json():
    with pytest.raises(IncompleteNetError):
        MultiplicativeNet(2, {"L": 1, "R": 1, "LL": 1})
    net = random_net(3, random.Random(1))
    data = json.loads(net.dumps())
    assert data["values"]["LRL"] == format_rational(net["LRL"])
    assert MultiplicativeNet.from_json(data) == net
    with pytest.raises(IncompleteNetError):
        net["LLLL"]


@pytest.mark.parametrize("n", range(1, 5))
def test_convolution_is_multiplicative(n):
    rng = random.Random(n)
    f, g = multiplicative(random_net(n, rng)), multiplicative(random_net(n, rng))
    net = induced_net(f * g, n)
    for chi in patterns(n):
        for p, q in comparable_pairs(chi):
            assert convolve(f, g, p, q) == eval_multiplicative(net, p, q)


@pytest.mark.parametrize("n", range(1, 6))
def test_associativity_on_full_intervals(n):
    rng = random.Random(10 + n)
    f, g, h = (multiplicative(random_net(n, rng)) for _ in range(3))
    for chi in patterns(n)[:: max(1, 2 ** n // 8)]:
        z, o = bnc_zero(chi), bnc_one(chi)
        assert convolve(f * g, h, z, o) == convolve(f, g * h, z, o)


@pytest.mark.parametrize("n", range(1, 6))
def test_kreweras_rewriting(n):
    rng = random.Random(20 + n)
    f, g = multiplicative(random_net(n, rng)), multiplicative(random_net(n, rng))
    for chi in patterns(n):
        z, o = bnc_zero(chi), bnc_one(chi)
        rewritten = sum((f(z, p) * g(z, kreweras_bnc(p)) for p in enumerate_bnc(chi)), Fraction(0))
        assert convolve(f, g, z, o) == rewritten


@pytest.mark.parametrize("n", range(1, 6))
def test_commutativity_for_count_nets(n):
    rng = random.Random(30 + n)
    f, g = multiplicative(counts_only_net(n, rng)), multiplicative(counts_only_net(n, rng))
    for chi in patterns(n):
        z, o = bnc_zero(chi), bnc_one(chi)
        assert convolve(f, g, z, o) == convolve(g, f, z, o)


def test_commutativity_fails_for_generic_nets():
    # LRL: the Kreweras sums of f*g and g*f pair different block patterns
    rng = random.Random(7)
    f, g = multiplicative(random_net(3, rng)), multiplicative(random_net(3, rng))
    z, o = bnc_zero("LRL"), bnc_one("LRL")
    assert convolve(f, g, z, o) != convolve(g, f, z, o)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.sampled_from(patterns(n)), st.integers(0, 10 ** 6))))
def test_evaluation_is_path_independent(case):
    chi, seed = case
    net = random_net(len(chi), random.Random(seed))
    for p, q in comparable_pairs(chi):
        assert eval_multiplicative(net, p, q) == eval_multiplicative(net, p, q, reverse=True)
