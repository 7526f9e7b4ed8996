"""Universal polynomials P, Q and R in the indeterminates X_K.

A monomial is a sorted tuple of factors ``(K, shade)`` with ``K`` a tuple of
positions and ``shade`` one of ``"A"``, ``"B"`` or ``None`` (unshaded).
Evaluating ``X_K^A`` means taking the moment of the subword on ``K`` in the
first family, ``X_K^B`` in the second.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Optional, Sequence

from .bnc import SidePattern, Shading, _guard, _shaded_bnc
from .cumulants import Distribution, _mobius_to_top, format_word, mobius_coefficient
from .errors import DimensionError, SizeLimitError

MAX_POLY = 6

Factor = tuple[tuple[int, ...], Optional[str]]
Monomial = tuple[Factor, ...]


@dataclass(frozen=True)
class UniversalPolynomial:
    n: int
    chi: str
    kind: str
    terms: Mapping[Monomial, int]

    def __post_init__(self):
        # fewer factors first, so the full-set monomial leads
        ordered = sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0]))
        object.__setattr__(self, "terms", {m: c for m, c in ordered if c})

    def degree_of(self, mono: Monomial) -> int:
        return sum(len(k) for k, _ in mono)

    def is_homogeneous(self) -> bool:
        return all(self.degree_of(m) == self.n for m in self.terms)

    def to_json(self) -> list[dict]:
        return [
            {"coeff": c, "factors": [{"K": list(k), "shade": s} for k, s in m]}
            for m, c in self.terms.items()
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: list, n: int, chi: str, kind: str) -> "UniversalPolynomial":
        terms: dict[Monomial, int] = {}
        for t in data:
            mono = tuple(sorted((tuple(f["K"]), f["shade"]) for f in t["factors"]))
            terms[mono] = terms.get(mono, 0) + int(t["coeff"])
        return cls(n, chi, kind, terms)

    def to_latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            body = " ".join(_latex_factor(k, s) for k, s in m)
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append((sign, f"{mag}{body}"))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _latex_factor(k: Sequence[int], shade: Optional[str]) -> str:
    sub = "\\{" + ",".join(str(x) for x in k) + "\\}"
    return f"X_{{{sub}}}" + (f"^{{{shade}}}" if shade else "")


def _monomial(blocks, eps: Optional[str]) -> Monomial:
    return tuple(sorted((b, eps[b[0] - 1] if eps else None) for b in blocks))


def _p_terms(chi: str, eps: str) -> dict[Monomial, int]:
    terms: dict[Monomial, int] = {}
    for p in _shaded_bnc(chi, eps):
        c = int(mobius_coefficient(p, eps))
        if c:
            m = _monomial(p.blocks, eps)
            terms[m] = terms.get(m, 0) + c
    return terms


def universal_poly(kind: str, chi: str, eps: str | None = None) -> UniversalPolynomial:
    chi = SidePattern(chi)
    n = len(chi)
    if n > MAX_POLY:
        raise SizeLimitError(f"universal polynomials are limited to n <= {MAX_POLY}")
    _guard(chi)
    if kind == "P":
        if eps is None:
            raise ValueError("P needs a shading")
        eps = Shading(eps)
        if len(eps) != n:
            raise DimensionError(f"shading {eps} does not match {chi}")
        return UniversalPolynomial(n, chi, "P", _p_terms(chi, eps))
    if kind == "Q":
        terms: dict[Monomial, int] = {}
        for e in map("".join, product("AB", repeat=n)):
            for m, c in _p_terms(chi, e).items():
                terms[m] = terms.get(m, 0) + c
        return UniversalPolynomial(n, chi, "Q", terms)
    if kind == "R":
        terms = {}
        for blocks, mu in _mobius_to_top(chi):
            if mu:
                m = _monomial(blocks, None)
                terms[m] = terms.get(m, 0) + mu
        return UniversalPolynomial(n, chi, "R", terms)
    raise ValueError(f"unknown polynomial kind {kind!r}; use P, Q or R")


def eval_poly(poly: UniversalPolynomial, d1: Distribution, d2: Distribution | None, word: Sequence[str]) -> Fraction:
    word = tuple(word)
    if len(word) != poly.n:
        raise DimensionError(f"polynomial in {poly.n} variables, word of length {len(word)}")
    if d1.pattern(word) != poly.chi:
        raise ValueError(f"word {format_word(word)!r} does not have sides {poly.chi}")
    total = Fraction(0)
    for m, c in poly.terms.items():
        term = Fraction(c)
        for k, shade in m:
            fam = d2 if shade == "B" else d1
            if fam is None:
                raise ValueError("this polynomial uses the second family but none was given")
            term *= fam[tuple(word[i - 1] for i in k)]
        total += term
    return total
