"""Moments and bi-free cumulants of two-faced families.

A two-faced family is described by its moments: every word over the left
names ``I`` and the right names ``J`` up to some degree gets an exact
rational value.  The side pattern of a word is read off its letters.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .bnc import (
    BncPartition,
    SidePattern,
    Shading,
    _enumerate_bnc,
    _shaded_bnc,
    _lateral,
    bnc_one,
    bnc_zero,
    is_shade_constant,
    kreweras_bnc,
)
from .errors import DimensionError, SizeLimitError, UnsupportedShapeError
from .incidence import _nc_mobius_column, format_rational, interval, mobius_bnc, parse_rational
from .partitions import Block, one

Word = tuple[str, ...]

MAX_TRANSFORM = 8
MAX_JOIN = 6
MAX_MULTCONV = 5
TAG_SEP = "#"


# ---------------------------------------------------------------------------
# tables of words


def words_up_to(alphabet: Sequence[str], degree: int) -> Iterator[Word]:
    for m in range(1, degree + 1):
        yield from product(alphabet, repeat=m)


def parse_word(text: str) -> Word:
    return tuple(text.split())


def format_word(word: Sequence[str]) -> str:
    return " ".join(word)


@dataclass(frozen=True)
class _WordTable:
    left: tuple[str, ...]
    right: tuple[str, ...]
    degree: int
    values: Mapping[Word, Fraction] = field(repr=False)
    tags: Mapping[str, str] | None = field(default=None, compare=False, repr=False)

    _key = "values"

    def __post_init__(self):
        left, right = tuple(self.left), tuple(self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        names = left + right
        if len(set(names)) != len(names):
            raise ValueError(f"index names must be distinct and I, J disjoint: {names}")
        for name in names:
            if not name or any(c.isspace() for c in name):
                raise ValueError(f"index name {name!r} must be non-empty without spaces")
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError(f"degree must be a positive integer, got {self.degree!r}")
        vals = {tuple(w): Fraction(v) for w, v in self.values.items()}
        for w in words_up_to(names, self.degree):
            if w not in vals:
                raise ValueError(f"{self._key} table has no entry for the word {format_word(w)!r}")
        extra = [w for w in vals if len(w) > self.degree or any(c not in names for c in w) or not w]
        if extra:
            raise ValueError(f"{self._key} table has an entry outside its shape: {format_word(extra[0])!r}")
        object.__setattr__(self, "values", vals)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.left + self.right

    def side(self, name: str) -> str:
        if name in self.left:
            return "L"
        if name in self.right:
            return "R"
        raise KeyError(f"unknown index name {name!r}")

    def pattern(self, word: Sequence[str]) -> SidePattern:
        return SidePattern("".join(self.side(c) for c in word))

    def __getitem__(self, word: Sequence[str]) -> Fraction:
        word = tuple(word)
        if not word:
            return Fraction(1)
        if len(word) > self.degree:
            raise SizeLimitError(f"word of length {len(word)} exceeds degree {self.degree}")
        return self.values[word]

    def words(self, degree: int | None = None) -> Iterator[Word]:
        return words_up_to(self.alphabet, self.degree if degree is None else degree)

    def to_json(self) -> dict:
        out = {
            "left": list(self.left),
            "right": list(self.right),
            "degree": self.degree,
            self._key: {format_word(w): format_rational(self.values[w]) for w in self.words()},
        }
        if self.tags:
            out["tags"] = dict(sorted(self.tags.items()))
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: Mapping):
        if not isinstance(data, Mapping):
            raise ValueError("expected a JSON object")
        missing = [k for k in ("left", "right", "degree", cls._key) if k not in data]
        if missing:
            raise ValueError(f"missing field {missing[0]!r}")
        raw = data[cls._key]
        if not isinstance(raw, Mapping):
            raise ValueError(f"field {cls._key!r} must be an object")
        vals = {parse_word(k): parse_rational(v) for k, v in raw.items()}
        return cls(tuple(data["left"]), tuple(data["right"]), data["degree"], vals, data.get("tags"))

    @classmethod
    def loads(cls, text: str):
        return cls.from_json(json.loads(text))


class Distribution(_WordTable):
    """Moments phi(z_{w1} ... z_{wm}) of a two-faced family; the empty word is 1.

    ``tags`` optionally assigns each name to family A or B, which is how
    :func:`bifree_join` records where a doubled name came from.
    """

    _key = "moments"

    @property
    def moments(self) -> Mapping[Word, Fraction]:
        return self.values


class CumulantTable(_WordTable):
    """Bi-free cumulants kappa_alpha, one per word."""

    _key = "cumulants"

    @property
    def cumulants(self) -> Mapping[Word, Fraction]:
        return self.values


def _check_word(table: _WordTable, word: Sequence[str], p: BncPartition) -> Word:
    word = tuple(word)
    if len(word) != p.n:
        raise DimensionError(f"word of length {len(word)} against a partition of {p.n} nodes")
    if table.pattern(word) != p.chi:
        raise ValueError(f"word {format_word(word)!r} has sides {table.pattern(word)}, partition has {p.chi}")
    return word


def _sub(word: Word, block: Block) -> Word:
    return tuple(word[k - 1] for k in block)


# ---------------------------------------------------------------------------
# phi_pi, kappa_pi and the two transforms


def phi_pi(dist: Distribution, word: Sequence[str], p: BncPartition) -> Fraction:
    word = _check_word(dist, word, p)
    value = Fraction(1)
    for b in p.blocks:
        value *= dist[_sub(word, b)]
    return value


def kappa_pi(dist: Distribution, word: Sequence[str], p: BncPartition) -> Fraction:
    """Moebius sum over sigma <= p of phi_sigma mu(sigma, p)."""
    word = _check_word(dist, word, p)
    below = interval(bnc_zero(p.chi), p)
    return sum((phi_pi(dist, word, s) * mobius_bnc(s, p) for s in below), Fraction(0))


@lru_cache(maxsize=None)
def _mobius_to_top(chi: str) -> tuple[tuple[tuple[Block, ...], int], ...]:
    """(blocks, mu(pi, 1_chi)) for every pi in BNC(chi)."""
    column = _nc_mobius_column(one(len(chi)))
    return tuple((p.blocks, column[p.to_nc()]) for p in _enumerate_bnc(chi))


def _check_degree(degree: int, limit: int, what: str) -> None:
    if degree > limit:
        raise SizeLimitError(f"{what} is limited to degree {limit}, got {degree}")


def moments_to_cumulants(dist: Distribution) -> CumulantTable:
    _check_degree(dist.degree, MAX_TRANSFORM, "moments_to_cumulants")
    out: dict[Word, Fraction] = {}
    for w in dist.words():
        total = Fraction(0)
        for blocks, mu in _mobius_to_top(dist.pattern(w)):
            if mu:
                term = Fraction(mu)
                for b in blocks:
                    term *= dist[_sub(w, b)]
                total += term
        out[w] = total
    return CumulantTable(dist.left, dist.right, dist.degree, out, dist.tags)


def _moment_from(kappa: CumulantTable, word: Word, parts: Iterable[tuple[Block, ...]]) -> Fraction:
    total = Fraction(0)
    for blocks in parts:
        term = Fraction(1)
        for b in blocks:
            term *= kappa[_sub(word, b)]
            if not term:
                break
        total += term
    return total


def cumulants_to_moments(table: CumulantTable, shape: tuple[Sequence[str], Sequence[str], int] | None = None) -> Distribution:
    """phi_alpha = sum over pi in BNC(chi_alpha) of the block cumulant products."""
    if shape is not None:
        left, right, degree = shape
        if (tuple(left), tuple(right)) != (table.left, table.right) or degree > table.degree:
            raise DimensionError(f"shape {shape} does not match the cumulant table")
    else:
        degree = table.degree
    _check_degree(degree, MAX_TRANSFORM, "cumulants_to_moments")
    out = {
        w: _moment_from(table, w, (p.blocks for p in _enumerate_bnc(table.pattern(w))))
        for w in table.words(degree)
    }
    return Distribution(table.left, table.right, degree, out, table.tags)


# ---------------------------------------------------------------------------
# coefficients of the shaded moment formula


def _require_below(p: BncPartition, eps: str) -> Shading:
    eps = Shading(eps)
    if len(eps) != p.n:
        raise DimensionError(f"shading {eps} does not match {p.n} nodes")
    if not is_shade_constant(p.blocks, eps):
        raise ValueError(f"{p} has a block meeting both shades of {eps}")
    return eps


def _lat_sum(p: BncPartition, eps: str) -> int:
    total = 0
    for s in _shaded_bnc(p.chi, eps):
        if all(any(set(b) <= set(v) for v in s.blocks) for b in p.blocks) and _lateral(p.blocks, s.partition.labels):
            total += (-1) ** (len(p) - len(s))
    return total


def lat_coefficient(p: BncPartition, eps: str) -> Fraction:
    """Signed count of sigma in BNC(chi, eps) that p laterally refines."""
    eps = _require_below(p, eps)
    return Fraction(_lat_sum(p, eps))


def mobius_coefficient(p: BncPartition, eps: str) -> Fraction:
    """Sum of mu(p, sigma) over p <= sigma <= eps."""
    eps = _require_below(p, eps)
    return sum(
        (mobius_bnc(p, s) for s in interval(p, bnc_one(p.chi)) if is_shade_constant(s.blocks, eps)),
        Fraction(0),
    )


# ---------------------------------------------------------------------------
# bi-free joins


def tag_name(name: str, shade: str) -> str:
    return f"{name}{TAG_SEP}{shade}"


def untag_name(name: str) -> tuple[str, str]:
    base, sep, shade = name.rpartition(TAG_SEP)
    if not sep or shade not in ("A", "B"):
        raise ValueError(f"{name!r} is not a tagged name")
    return base, shade


@lru_cache(maxsize=None)
def _below(chi: str, eps: str) -> tuple[tuple[Block, ...], ...]:
    """Blocks of every pi in BNC(chi) with pi <= eps."""
    return tuple(p.blocks for p in _enumerate_bnc(chi) if is_shade_constant(p.blocks, eps))


def _same_shape(d1: _WordTable, d2: _WordTable) -> None:
    if (d1.left, d1.right) != (d2.left, d2.right):
        raise DimensionError(f"families have different faces: {(d1.left, d1.right)} and {(d2.left, d2.right)}")


def _joint_moment(k1: CumulantTable, k2: CumulantTable, word: Word, eps: str) -> Fraction:
    """phi(z^eps_word) for a bi-free pair given by their cumulants."""
    chi = k1.pattern(word)
    total = Fraction(0)
    for blocks in _below(chi, eps):
        term = Fraction(1)
        for b in blocks:
            table = k1 if eps[b[0] - 1] == "A" else k2
            term *= table[_sub(word, b)]
            if not term:
                break
        total += term
    return total


def joint_moment(d1: Distribution, d2: Distribution, word: Sequence[str], eps: str) -> Fraction:
    """phi(z^eps_word) for the bi-free pair with marginals d1 (shade A) and d2 (shade B)."""
    _same_shape(d1, d2)
    word, eps = tuple(word), Shading(eps)
    if len(eps) != len(word):
        raise DimensionError(f"shading {eps} does not match a word of length {len(word)}")
    return _joint_moment(moments_to_cumulants(d1), moments_to_cumulants(d2), word, eps)


def bifree_join(d1: Distribution, d2: Distribution) -> Distribution:
    """The joint distribution of (z', z'') when the two families are bi-free.

    Name ``x`` of the first family becomes ``x#A``, of the second ``x#B``.
    """
    _same_shape(d1, d2)
    degree = min(d1.degree, d2.degree)
    _check_degree(degree, MAX_JOIN, "bifree_join")
    k1, k2 = moments_to_cumulants(d1), moments_to_cumulants(d2)
    left = tuple(tag_name(x, s) for s in "AB" for x in d1.left)
    right = tuple(tag_name(x, s) for s in "AB" for x in d1.right)
    out: dict[Word, Fraction] = {}
    for w in words_up_to(left + right, degree):
        base = tuple(untag_name(x)[0] for x in w)
        eps = "".join(untag_name(x)[1] for x in w)
        out[w] = _joint_moment(k1, k2, base, eps)
    tags = {x: untag_name(x)[1] for x in left + right}
    return Distribution(left, right, degree, out, tags)


def mixed_moment_lat(d1: Distribution, d2: Distribution, word: Sequence[str], eps: str, verify: bool = False) -> Fraction:
    """phi_alpha(z^eps) as a lateral-coefficient weighted sum of moment products.

    With ``verify`` the coefficient of every pi not below ``eps`` is checked
    to vanish, so restricting the sum to pi <= eps loses nothing.
    """
    _same_shape(d1, d2)
    word = tuple(word)
    eps = Shading(eps)
    if len(eps) != len(word):
        raise DimensionError(f"shading {eps} does not match a word of length {len(word)}")
    if len(word) > min(d1.degree, d2.degree):
        raise SizeLimitError(f"word of length {len(word)} exceeds the degree of the inputs")
    chi = d1.pattern(word)
    total = Fraction(0)
    for p in _enumerate_bnc(chi):
        if not is_shade_constant(p.blocks, eps):
            if verify and _lat_sum(p, eps):
                raise AssertionError(f"non-zero coefficient for {p}, which is not below {eps}")
            continue
        c = _lat_sum(p, eps)
        if c:
            term = Fraction(c)
            for b in p.blocks:
                term *= (d1 if eps[b[0] - 1] == "A" else d2)[_sub(word, b)]
            total += term
    return total


class BifreenessReport(NamedTuple):
    ok: bool
    witness: tuple[Word, Fraction] | None

    def __bool__(self) -> bool:
        return self.ok


def check_combinatorial_bifreeness(
    joint: Distribution, tagging: Mapping[str, str] | None = None, max_degree: int | None = None
) -> BifreenessReport:
    """Do all cumulants mixing the A and B families vanish?"""
    tagging = joint.tags if tagging is None else tagging
    if tagging is None:
        raise ValueError("no tagging given and the distribution carries none")
    unknown = [x for x in joint.alphabet if x not in tagging]
    if unknown:
        raise KeyError(f"tagging has no family for index {unknown[0]!r}")
    max_degree = joint.degree if max_degree is None else max_degree
    if max_degree > joint.degree:
        raise ValueError(f"max_degree {max_degree} exceeds the degree {joint.degree}")
    if max_degree < 2:
        return BifreenessReport(True, None)
    trimmed = Distribution(
        joint.left, joint.right, max_degree, {w: joint[w] for w in joint.words(max_degree)}
    )
    kappa = moments_to_cumulants(trimmed)
    for w in trimmed.words():
        if len({tagging[x] for x in w}) > 1 and kappa[w]:
            return BifreenessReport(False, (w, kappa[w]))
    return BifreenessReport(True, None)


def sum_family(joint: Distribution) -> Distribution:
    """Moments of z' + z'' from a tagged joint distribution."""
    if not joint.tags:
        raise ValueError("sum_family needs a tagged joint distribution")
    left = tuple(dict.fromkeys(untag_name(x)[0] for x in joint.left))
    right = tuple(dict.fromkeys(untag_name(x)[0] for x in joint.right))
    out = {}
    for w in words_up_to(left + right, joint.degree):
        out[w] = sum(
            (joint[tuple(tag_name(x, s) for x, s in zip(w, eps))] for eps in product("AB", repeat=len(w))),
            Fraction(0),
        )
    return Distribution(left, right, joint.degree, out)


# ---------------------------------------------------------------------------
# multiplicative convolution


def _single_faces(d: _WordTable) -> None:
    if len(d.left) != 1 or len(d.right) != 1:
        raise UnsupportedShapeError("multiplicative convolution needs exactly one left and one right variable")


def _letters(d: _WordTable, chi: str) -> Word:
    return tuple(d.left[0] if c == "L" else d.right[0] for c in chi)


def multconv_cumulants(d1: Distribution, d2: Distribution, max_degree: int) -> CumulantTable:
    """Cumulants of ({z'_l z''_l}, {z''_r z'_r}) by the Kreweras convolution sum.

    The result is written in the names of ``d1``.
    """
    _single_faces(d1)
    _single_faces(d2)
    _check_degree(max_degree, MAX_MULTCONV, "multconv_cumulants")
    if max_degree > min(d1.degree, d2.degree):
        raise SizeLimitError(f"inputs only reach degree {min(d1.degree, d2.degree)}")
    k1, k2 = moments_to_cumulants(d1), moments_to_cumulants(d2)
    out: dict[Word, Fraction] = {}
    for w in words_up_to(d1.alphabet, max_degree):
        chi = d1.pattern(w)
        w2 = _letters(d2, chi)
        total = Fraction(0)
        for p in _enumerate_bnc(chi):
            a = Fraction(1)
            for b in p.blocks:
                a *= k1[_sub(w, b)]
            if not a:
                continue
            for b in kreweras_bnc(p).blocks:
                a *= k2[_sub(w2, b)]
            total += a
        out[w] = total
    return CumulantTable(d1.left, d1.right, max_degree, out)


def product_family(d1: Distribution, d2: Distribution, max_degree: int, swapped: bool = False) -> Distribution:
    """Moments of ({z'_l z''_l}, {z''_r z'_r}) computed on the doubled word.

    Each z_l becomes z'_l z''_l and each z_r becomes z''_r z'_r, and the
    doubled word is evaluated on the bi-free pair.  ``swapped`` gives
    ({z''_l z'_l}, {z'_r z''_r}) instead.  The result uses the names of ``d1``.
    """
    _single_faces(d1)
    _single_faces(d2)
    if max_degree > min(d1.degree, d2.degree):
        raise SizeLimitError(f"inputs only reach degree {min(d1.degree, d2.degree)}")
    kappa = {"A": moments_to_cumulants(d1), "B": moments_to_cumulants(d2)}
    outer, inner = ("B", "A") if swapped else ("A", "B")
    out: dict[Word, Fraction] = {}
    for w in words_up_to(d1.alphabet, max_degree):
        chi = d1.pattern(w)
        doubled = "".join(c + c for c in chi)
        eps = "".join(outer + inner if c == "L" else inner + outer for c in chi)
        out[w] = _tagged_moment(kappa, doubled, eps)
    return Distribution(d1.left, d1.right, max_degree, out)


def _tagged_moment(kappa: Mapping[str, CumulantTable], chi: str, eps: str) -> Fraction:
    """Moment of a single-face word with sides chi, letter k taken from family eps[k]."""
    total = Fraction(0)
    for blocks in _below(chi, eps):
        term = Fraction(1)
        for b in blocks:
            t = kappa[eps[b[0] - 1]]
            term *= t[_letters(t, "".join(chi[k - 1] for k in b))]
            if not term:
                break
        total += term
    return total


# ---------------------------------------------------------------------------
# random inputs


def random_distribution(
    left: Sequence[str], right: Sequence[str], degree: int, rng: random.Random, spread: int = 3
) -> Distribution:
    """Random rational moments with small numerators and denominators."""
    names = tuple(left) + tuple(right)
    moments = {
        w: Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for w in words_up_to(names, degree)
    }
    return Distribution(tuple(left), tuple(right), degree, moments)
