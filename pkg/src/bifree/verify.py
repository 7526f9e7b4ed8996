"""Named property suites, runnable from the command line.

A suite takes ``max_n`` and a seeded RNG and returns ``None`` when every
case holds, or a short description of the first counterexample.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from . import bnc, cumulants as cm, fock, incidence as ia, partitions as pt, polynomials as poly

Suite = Callable[[int, random.Random], Optional[str]]


def _patterns(n: int) -> list[str]:
    return ["".join(c) for c in product("LR", repeat=n)]


def _shadings(n: int) -> list[str]:
    return ["".join(c) for c in product("AB", repeat=n)]


def lattice_census(max_n: int, rng: random.Random) -> Optional[str]:
    for n in range(1, min(max_n, 8) + 1):
        pats = _patterns(n) if n <= 5 else rng.sample(_patterns(n), min(50, 2 ** n))
        for chi in pats:
            got = len(bnc.enumerate_bnc(chi))
            if got != ia.catalan(n):
                return f"|BNC({chi})| = {got}, expected {ia.catalan(n)}"
    return None


def kreweras(max_n: int, rng: random.Random) -> Optional[str]:
    for n in range(1, min(max_n, 6) + 1):
        for chi in _patterns(n):
            ps = bnc.enumerate_bnc(chi)
            images = {bnc.kreweras_bnc(p) for p in ps}
            if len(images) != len(ps):
                return f"Kreweras complement on BNC({chi}) is not a bijection"
            for p in ps:
                k = bnc.kreweras_bnc(p)
                if len(p) + len(k) != n + 1:
                    return f"|{p}| + |K({p})| != {n + 1} for {chi}"
    return None


def mobius(max_n: int, rng: random.Random) -> Optional[str]:
    mu, ze, de = ia.moebius(), ia.zeta(), ia.delta()
    for n in range(1, min(max_n, 5) + 1):
        for chi in _patterns(n):
            ps = bnc.enumerate_bnc(chi)
            for p in ps:
                for q in ps:
                    if not bnc.bnc_refines(p, q):
                        continue
                    d = de(p, q)
                    if ia.convolve(mu, ze, p, q) != d or ia.convolve(ze, mu, p, q) != d:
                        return f"mu*zeta != delta on [{p}, {q}] for {chi}"
                    prod_mu = 1
                    for beta in ia.interval_decompose(p, q):
                        prod_mu *= ia.mobius_full(len(beta))
                    if prod_mu != ia.mobius_bnc(p, q):
                        return f"factor product of mu disagrees on [{p}, {q}] for {chi}"
    return None


def _random_net(bound: int, rng: random.Random) -> ia.MultiplicativeNet:
    return ia.MultiplicativeNet.from_function(bound, lambda c: Fraction(rng.randint(-4, 4), rng.randint(1, 3)))


def decomposition(max_n: int, rng: random.Random) -> Optional[str]:
    """Factors of [p, q] are the Kreweras blocks inside each block of q, in any order."""
    for n in range(1, min(max_n, 5) + 1):
        for chi in _patterns(n):
            ps = bnc.enumerate_bnc(chi)
            for p in ps:
                for q in ps:
                    if not bnc.bnc_refines(p, q):
                        continue
                    a = ia.interval_decompose(p, q)
                    if sorted(a) != sorted(ia.interval_decompose(p, q, reverse=True)):
                        return f"decomposition of [{p}, {q}] depends on the order, {chi}"
                    if len(ia.interval(p, q)) != _product_size(a):
                        return f"[{p}, {q}] and its factors differ in size, {chi}"
    return None


def _product_size(patterns) -> int:
    size = 1
    for beta in patterns:
        size *= ia.catalan(len(beta))
    return size


def convolution(max_n: int, rng: random.Random) -> Optional[str]:
    for n in range(1, min(max_n, 4) + 1):
        f = ia.multiplicative(_random_net(n, rng))
        g = ia.multiplicative(_random_net(n, rng))
        h = ia.multiplicative(_random_net(n, rng))
        net = ia.induced_net(f * g, n)
        for chi in _patterns(n):
            ps = bnc.enumerate_bnc(chi)
            z, o = bnc.bnc_zero(chi), bnc.bnc_one(chi)
            if ia.convolve(f * g, h, z, o) != ia.convolve(f, g * h, z, o):
                return f"convolution is not associative on BNC({chi})"
            for p in ps:
                for q in ps:
                    if bnc.bnc_refines(p, q) and ia.convolve(f, g, p, q) != ia.eval_multiplicative(net, p, q):
                        return f"f*g is not multiplicative on [{p}, {q}] for {chi}"
    return None


def coefficient_equality(max_n: int, rng: random.Random) -> Optional[str]:
    for n in range(1, min(max_n, 5) + 1):
        for chi in _patterns(n):
            for eps in _shadings(n):
                for p in bnc.enumerate_bnc(chi):
                    if not bnc.is_shade_constant(p.blocks, eps):
                        continue
                    a, b = cm.lat_coefficient(p, eps), cm.mobius_coefficient(p, eps)
                    if a != b:
                        return f"lat {a} != mobius {b} for {chi}, {eps}, {p}"
    return None


def _swap(chi: str, k: int) -> str:
    s = list(chi)
    s[k - 1], s[k] = s[k], s[k - 1]
    return "".join(s)


def coefficient_invariance(max_n: int, rng: random.Random) -> Optional[str]:
    for n in range(1, min(max_n, 5) + 1):
        for chi in _patterns(n):
            for eps in _shadings(n):
                for p in bnc.enumerate_bnc(chi):
                    if not bnc.is_shade_constant(p.blocks, eps):
                        continue
                    base = (cm.lat_coefficient(p, eps), cm.mobius_coefficient(p, eps))
                    moved = []
                    if chi[-1] == "L":
                        q = bnc.BncPartition(p.partition, chi[:-1] + "R")
                        moved.append(("bottom move", q, eps))
                    for k in range(1, n):
                        if chi[k - 1] == "L" and chi[k] == "R":
                            t = {k: k + 1, k + 1: k}
                            part = pt.Partition(n, [[t.get(x, x) for x in b] for b in p.blocks])
                            moved.append((f"swap {k}", bnc.BncPartition(part, _swap(chi, k)), _swap(eps, k)))
                    for what, q, e in moved:
                        if (cm.lat_coefficient(q, e), cm.mobius_coefficient(q, e)) != base:
                            return f"{what} changes the coefficients of {p} for {chi}, {eps}"
    return None


def transform_roundtrip(max_n: int, rng: random.Random) -> Optional[str]:
    for _ in range(10):
        d = cm.random_distribution(["a", "b"], ["x", "y"], min(max_n, 4), rng)
        if cm.cumulants_to_moments(cm.moments_to_cumulants(d)).moments != d.moments:
            return "cumulants_to_moments does not invert moments_to_cumulants"
    return None


def _pair(rng: random.Random, degree: int):
    return (
        cm.random_distribution(["a"], ["x"], degree, rng),
        cm.random_distribution(["a"], ["x"], degree, rng),
    )


def join(max_n: int, rng: random.Random) -> Optional[str]:
    deg = min(max_n, 4)
    for _ in range(3):
        d1, d2 = _pair(rng, deg)
        joint = cm.bifree_join(d1, d2)
        for w in joint.words():
            base = tuple(cm.untag_name(x)[0] for x in w)
            eps = "".join(cm.untag_name(x)[1] for x in w)
            if cm.mixed_moment_lat(d1, d2, base, eps, verify=True) != joint[w]:
                return f"lateral formula disagrees with the join on {cm.format_word(w)}"
        report = cm.check_combinatorial_bifreeness(joint)
        if not report:
            return f"join has a mixed cumulant {report.witness}"
    return None


def cumulant_property(max_n: int, rng: random.Random) -> Optional[str]:
    deg = min(max_n, 4)
    for _ in range(3):
        d1, d2 = _pair(rng, deg)
        s = cm.sum_family(cm.bifree_join(d1, d2))
        k1, k2, ks = (cm.moments_to_cumulants(d) for d in (d1, d2, s))
        for w in s.words():
            chi = s.pattern(w)
            if ks[w] != k1[w] + k2[w]:
                return f"cumulants are not additive on {cm.format_word(w)}"
            if poly.eval_poly(poly.universal_poly("R", chi), d1, None, w) != k1[w]:
                return f"R does not reproduce the cumulant of {cm.format_word(w)}"
            if poly.eval_poly(poly.universal_poly("Q", chi), d1, d2, w) != s[w]:
                return f"Q does not reproduce the moment of the sum on {cm.format_word(w)}"
    return None


def polynomials(max_n: int, rng: random.Random) -> Optional[str]:
    for n in range(1, min(max_n, 4) + 1):
        for chi in _patterns(n):
            for kind in ("Q", "R"):
                if not poly.universal_poly(kind, chi).is_homogeneous():
                    return f"{kind} for {chi} is not homogeneous"
            for side in "AB":
                pc = poly.universal_poly("P", chi, side * n)
                if pc.terms != {(((tuple(range(1, n + 1))), side),): 1}:
                    return f"P for constant shading {side * n} is not the single full monomial"
    return None


def multconv(max_n: int, rng: random.Random) -> Optional[str]:
    deg = min(max_n, 4)
    for _ in range(3):
        d1, d2 = _pair(rng, deg)
        got = cm.multconv_cumulants(d1, d2, deg)
        direct = cm.moments_to_cumulants(cm.product_family(d1, d2, deg))
        for w in got.words():
            if got[w] != direct[w]:
                return f"convolution sum and direct route differ on {cm.format_word(w)}"
    return None


def fock_model(max_n: int, rng: random.Random) -> Optional[str]:
    deg = min(max_n, 4)
    for left, right in ((["a"], ["x"]), (["a", "b"], ["x", "y"])):
        d = cm.random_distribution(left, right, deg if len(left) == 1 else min(deg, 3), rng)
        net = fock.cumulant_net(d)
        for w in d.words():
            if fock.fock_moment(d, w, net) != d[w]:
                return f"Fock model gives the wrong moment for {cm.format_word(w)}"
    return None


def operator_identities(max_n: int, rng: random.Random) -> Optional[str]:
    cap = 5
    i, i2, j = "i", "i2", "j"
    space = fock.FockSpace([i, i2], [j], cap, overflow="drop")
    for m in range(0, 4):
        for eta in product((i, i2, j), repeat=m):
            v = fock.FockVector.basis(eta, cap)
            err = _identity_one(space, (i, i2), v, cap) or _identity_two(space, (j, i2), v)
            if err:
                return f"{err} on {cm.format_word(eta) or 'vacuum'}"
    return None


def _identity_one(space: fock.FockSpace, alpha, v: fock.FockVector, cap: int) -> Optional[str]:
    first, last = alpha
    lhs = space.t_alpha(alpha, v)
    rhs = fock.FockVector.zero(cap)
    for m in range(0, cap - 1):
        for word in product(space.right, repeat=m):
            u = v
            for a in word:
                u = space.annihilation_left(a, u)
            u = space.creation("left", first, u)
            for a in reversed(word):
                u = space.creation("left", a, u)
            rhs = rhs + space.creation("left", last, u)
    return None if lhs == rhs else "T_(i,i') identity fails"


def _identity_two(space: fock.FockSpace, alpha, v: fock.FockVector) -> Optional[str]:
    j, last = alpha
    lhs = space.t_alpha(alpha, v)
    rhs = space.creation("left", last, space.creation("right", j, space.project_right(v)))
    return None if lhs == rhs else "T_(j,i') identity fails"


def free_nc_cumulants(word_moment: Callable[[tuple], Fraction], word: tuple) -> Fraction:
    """Free cumulant of ``word`` by triangular solving over NC(n) only."""
    n = len(word)
    memo: dict[tuple, Fraction] = {}

    def kappa(sub: tuple) -> Fraction:
        if sub in memo:
            return memo[sub]
        m = len(sub)
        total = word_moment(sub)
        for p in pt.enumerate_set_partitions(m):
            if len(p) == 1 or not pt.is_non_crossing(p):
                continue
            term = Fraction(1)
            for b in p.blocks:
                term *= kappa(tuple(sub[k - 1] for k in b))
            total -= term
        memo[sub] = total
        return total

    return kappa(tuple(word)) if n else Fraction(1)


def free_reduction(max_n: int, rng: random.Random) -> Optional[str]:
    deg = min(max_n, 6)
    d = cm.random_distribution(["a", "b"], ["x"], deg, rng)
    table = cm.moments_to_cumulants(d)
    for w in cm.words_up_to(("a", "b"), deg):
        if table[w] != free_nc_cumulants(lambda s: d[s], w):
            return f"all-left cumulant of {cm.format_word(w)} is not the free cumulant"
    return None


SUITES: dict[str, Suite] = {
    "lattice-census": lattice_census,
    "kreweras": kreweras,
    "mobius": mobius,
    "decomposition": decomposition,
    "convolution": convolution,
    "coefficient-equality": coefficient_equality,
    "coefficient-invariance": coefficient_invariance,
    "transform-roundtrip": transform_roundtrip,
    "join": join,
    "cumulant-property": cumulant_property,
    "polynomials": polynomials,
    "multconv": multconv,
    "fock-model": fock_model,
    "operator-identities": operator_identities,
    "free-reduction": free_reduction,
}


def run_suite(name: str, max_n: int, seed: int = 0) -> list[tuple[str, Optional[str]]]:
    """Run one suite (or every suite for ``"all"``); returns (name, failure) pairs."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}")
    return [(s, SUITES[s](max_n, random.Random(seed))) for s in names]
