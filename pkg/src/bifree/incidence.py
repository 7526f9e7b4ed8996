"""Incidence algebra on bi-non-crossing partitions.

Functions on comparable pairs are evaluators rather than stored tables.
The Moebius function is computed by inverting zeta on transported NC
intervals; the product formula over full-lattice factors is kept only as a
cross-check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Mapping

from .bnc import (
    BncPartition,
    SidePattern,
    _enumerate_bnc,
    _s_inverse,
    bnc_one,
    bnc_refines,
    bnc_zero,
    s_perm,
)
from .errors import DimensionError, IncompleteNetError, SizeLimitError
from .partitions import Block, Partition, enumerate_nc, refines

MAX_CONVOLVE = 8


def _same_pattern(p: BncPartition, q: BncPartition) -> None:
    if p.chi != q.chi:
        raise DimensionError(f"partitions over different patterns {p.chi} and {q.chi}")


# ---------------------------------------------------------------------------
# interval decomposition


def _restrict(sides: str, blocks: list[Block], nodes: list[int]) -> tuple[str, list[Block]]:
    """Restrict to ``nodes`` (ascending, 0-based), relabelling as 0..len-1."""
    pos = {k: i for i, k in enumerate(nodes)}
    sub = [tuple(pos[k] for k in b if k in pos) for b in blocks]
    return "".join(sides[k] for k in nodes), [b for b in sub if b]


def _decompose_full(sides: str, blocks: list[Block], reverse: bool) -> list[str]:
    """Factors of the interval [pi, 1] with pi given by 0-based ``blocks``."""
    m = len(sides)
    s = [x - 1 for x in s_perm(sides)]
    sinv = [x - 1 for x in _s_inverse(sides)]
    tau = sorted(tuple(sorted(sinv[k] for k in b)) for b in blocks)
    gaps = [
        (tb[t], tb[t + 1])
        for tb in tau
        for t in range(len(tb) - 1)
        if tb[t + 1] != tb[t] + 1
    ]
    if gaps:
        lo, hi = gaps[-1] if reverse else gaps[0]
        gap_nodes = sorted(s[g] for g in range(lo + 1, hi))
        gap_set = set(gap_nodes)
        rest_nodes = [k for k in range(m) if k not in gap_set]
        outer = _restrict(sides, blocks, rest_nodes)
        # an isolated copy of the earlier endpoint (in transported order) stands in
        # for the gap's outer boundary; it keeps that endpoint's side and position
        anchor = s[lo]
        inner_nodes = sorted(gap_nodes + [anchor])
        inner_sides, inner_blocks = _restrict(sides, blocks, gap_nodes)
        at = inner_nodes.index(anchor)
        shift = [tuple(k + (k >= at) for k in b) for b in inner_blocks]
        inner = ("".join(sides[k] for k in inner_nodes), [(at,)] + shift)
        first, second = (inner, outer) if reverse else (outer, inner)
        return _decompose_full(*first, reverse) + _decompose_full(*second, reverse)
    # every block is a transported interval: keep the transported-last node of each
    lasts = sorted(s[max(sinv[k] for k in b)] for b in blocks)
    pattern = "".join(sides[k] for k in lasts)
    return [pattern] if len(pattern) > 1 else []


def interval_decompose(p: BncPartition, q: BncPartition, reverse: bool = False) -> list[SidePattern]:
    """Side patterns beta_j with [p, q] isomorphic to the product of BNC(beta_j).

    One-element factors are dropped.  ``reverse`` processes the blocks of
    ``q`` and the gaps of ``p`` in the opposite order; the resulting factors
    must describe the same interval.
    """
    _same_pattern(p, q)
    if not refines(p.partition, q.partition):
        raise ValueError(f"{p} is not a refinement of {q}")
    out: list[str] = []
    qblocks = q.blocks[::-1] if reverse else q.blocks
    for w in qblocks:
        nodes = [k - 1 for k in w]
        sides, blocks = _restrict(p.chi, [tuple(k - 1 for k in b) for b in p.blocks], nodes)
        out.extend(_decompose_full(sides, blocks, reverse))
    return [SidePattern(b) for b in out]


# ---------------------------------------------------------------------------
# Moebius function


@lru_cache(maxsize=None)
def _nc_downset(top: Partition) -> tuple[Partition, ...]:
    return tuple(x for x in enumerate_nc(top.n) if refines(x, top))


@lru_cache(maxsize=None)
def _nc_mobius_column(top: Partition) -> dict[Partition, int]:
    """mu(x, top) for every x <= top in NC(n), by inverting zeta from the top."""
    down = sorted(_nc_downset(top), key=len)
    mu: dict[Partition, int] = {}
    done: list[Partition] = []
    for x in down:
        if x == top:
            mu[x] = 1
        else:
            mu[x] = -sum(mu[y] for y in done if refines(x, y))
        done.append(x)
    return mu


def nc_mobius(p: Partition, q: Partition) -> int:
    if not refines(p, q):
        return 0
    return _nc_mobius_column(q)[p]


def mobius_bnc(p: BncPartition, q: BncPartition) -> Fraction:
    _same_pattern(p, q)
    return Fraction(nc_mobius(p.to_nc(), q.to_nc()))


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def mobius_full(n: int) -> int:
    """Closed form of mu(0_n, 1_n) on NC(n), used as a cross-check."""
    return (-1) ** (n - 1) * catalan(n - 1)


# ---------------------------------------------------------------------------
# multiplicative nets and incidence functions


def all_patterns(bound: int) -> list[str]:
    return ["".join(w) for m in range(1, bound + 1) for w in product("LR", repeat=m)]


@dataclass(frozen=True)
class MultiplicativeNet:
    """Values a_chi = f(0_chi, 1_chi) for every pattern up to ``bound``."""

    bound: int
    values: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        vals = {str(SidePattern(k)): Fraction(v) for k, v in self.values.items()}
        missing = [c for c in all_patterns(self.bound) if c not in vals]
        if missing:
            raise IncompleteNetError(f"net of bound {self.bound} has no value for {missing[0]}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, bound: int, fn: Callable[[str], Fraction]) -> "MultiplicativeNet":
        return cls(bound, {c: Fraction(fn(c)) for c in all_patterns(bound)})

    def __getitem__(self, chi: str) -> Fraction:
        try:
            return self.values[chi]
        except KeyError:
            raise IncompleteNetError(f"net of bound {self.bound} has no value for {chi}") from None

    def to_json(self) -> dict:
        return {"bound": self.bound, "values": {k: format_rational(v) for k, v in sorted(self.values.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "MultiplicativeNet":
        return cls(int(data["bound"]), {k: parse_rational(v) for k, v in data["values"].items()})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ValueError(f"rationals must be strings or integers, got {text!r}")
    return Fraction(text)


def eval_multiplicative(net: MultiplicativeNet, p: BncPartition, q: BncPartition, reverse: bool = False) -> Fraction:
    value = Fraction(1)
    for beta in interval_decompose(p, q, reverse=reverse):
        value *= net[beta]
    return value


class IncidenceFunction:
    """A function on comparable pairs of BNC(chi), zero off the order."""

    def __init__(self, evaluator: Callable[[BncPartition, BncPartition], Fraction], kind: str):
        self._evaluator = evaluator
        self.kind = kind

    def __call__(self, p: BncPartition, q: BncPartition) -> Fraction:
        if not bnc_refines(p, q):
            return Fraction(0)
        return Fraction(self._evaluator(p, q))

    def __repr__(self) -> str:
        return f"IncidenceFunction({self.kind})"

    def __mul__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        return convolution(self, other)


def delta() -> IncidenceFunction:
    return IncidenceFunction(lambda p, q: Fraction(int(p == q)), "delta")


def zeta() -> IncidenceFunction:
    return IncidenceFunction(lambda p, q: Fraction(1), "zeta")


def moebius() -> IncidenceFunction:
    return IncidenceFunction(mobius_bnc, "moebius")


def multiplicative(net: MultiplicativeNet) -> IncidenceFunction:
    return IncidenceFunction(lambda p, q: eval_multiplicative(net, p, q), "multiplicative")


def convolution(f: IncidenceFunction, g: IncidenceFunction) -> IncidenceFunction:
    return IncidenceFunction(lambda p, q: convolve(f, g, p, q), f"convolution({f.kind},{g.kind})")


def interval(p: BncPartition, q: BncPartition) -> list[BncPartition]:
    """All rho in BNC(chi) with p <= rho <= q."""
    _same_pattern(p, q)
    return [
        r
        for r in _enumerate_bnc(p.chi)
        if refines(p.partition, r.partition) and refines(r.partition, q.partition)
    ]


def convolve(f: IncidenceFunction, g: IncidenceFunction, p: BncPartition, q: BncPartition) -> Fraction:
    _same_pattern(p, q)
    if p.n > MAX_CONVOLVE:
        raise SizeLimitError(f"convolution is limited to n <= {MAX_CONVOLVE}")
    return sum((f(p, r) * g(r, q) for r in interval(p, q)), Fraction(0))


def zeta_net(bound: int) -> MultiplicativeNet:
    return MultiplicativeNet.from_function(bound, lambda c: 1)


def delta_net(bound: int) -> MultiplicativeNet:
    return MultiplicativeNet.from_function(bound, lambda c: int(len(c) == 1))


def moebius_net(bound: int) -> MultiplicativeNet:
    return MultiplicativeNet.from_function(bound, lambda c: mobius_bnc(bnc_zero(c), bnc_one(c)))


def induced_net(f: IncidenceFunction, bound: int) -> MultiplicativeNet:
    """The net f(0_chi, 1_chi) of an incidence function."""
    return MultiplicativeNet.from_function(bound, lambda c: f(bnc_zero(c), bnc_one(c)))
