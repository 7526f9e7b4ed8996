"""A truncated Fock-space model for two-faced families.

Basis words are tuples of index names.  The leftmost letter of a word is
the bottom open node of the corresponding skeleton, which is the next one
an annihilation operator sees.  Words longer than ``cap`` are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Literal, Mapping, Sequence

from .cumulants import CumulantTable, Distribution, Word, format_word, moments_to_cumulants, words_up_to
from .errors import CapOverflowError, SizeLimitError
from .incidence import format_rational

MAX_FOCK = 6


@dataclass(frozen=True)
class FockVector:
    cap: int
    amplitudes: Mapping[Word, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, a in self.amplitudes.items():
            w = tuple(w)
            if len(w) > self.cap:
                raise CapOverflowError(f"word {format_word(w)!r} is longer than the cap {self.cap}")
            a = Fraction(a)
            if a:
                clean[w] = a
        object.__setattr__(self, "amplitudes", clean)

    @classmethod
    def vacuum(cls, cap: int) -> "FockVector":
        return cls(cap, {(): Fraction(1)})

    @classmethod
    def basis(cls, word: Sequence[str], cap: int) -> "FockVector":
        return cls(cap, {tuple(word): Fraction(1)})

    @classmethod
    def zero(cls, cap: int) -> "FockVector":
        return cls(cap, {})

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.amplitudes)
        for w, a in other.amplitudes.items():
            out[w] = out.get(w, 0) + a
        return FockVector(max(self.cap, other.cap), out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def scale(self, c) -> "FockVector":
        return FockVector(self.cap, {w: a * c for w, a in self.amplitudes.items()})

    def __bool__(self) -> bool:
        return bool(self.amplitudes)

    def vacuum_amplitude(self) -> Fraction:
        return self.amplitudes.get((), Fraction(0))

    def dump(self) -> str:
        """One ``amplitude  word`` line per basis word, sorted by word."""
        lines = [f"{format_rational(a)}  {format_word(w) or '()'}" for w, a in sorted(self.amplitudes.items())]
        return "\n".join(lines)


def _collect(terms: Iterable[tuple[Word, Fraction]], cap: int, overflow: str) -> FockVector:
    out: dict[Word, Fraction] = {}
    for w, a in terms:
        if len(w) > cap:
            if overflow == "error":
                raise CapOverflowError(f"word {format_word(w)!r} would exceed the cap {cap}")
            continue
        out[w] = out.get(w, 0) + a
    return FockVector(cap, out)


def shuffles(u: Word, w: Word) -> Iterator[Word]:
    """All interleavings of u and w keeping the internal order of each."""
    n = len(u) + len(w)
    for spots in combinations(range(n), len(u)):
        chosen = set(spots)
        iu, iw = iter(u), iter(w)
        yield tuple(next(iu) if k in chosen else next(iw) for k in range(n))


class FockSpace:
    """Operators on the Fock space over the names ``left`` and ``right``.

    ``overflow`` decides what happens to words that would pass ``cap``:
    ``"error"`` raises, ``"drop"`` discards them.
    """

    def __init__(self, left: Sequence[str], right: Sequence[str], cap: int, overflow: Literal["error", "drop"] = "error"):
        self.left = tuple(left)
        self.right = tuple(right)
        if set(self.left) & set(self.right):
            raise ValueError("left and right names must be disjoint")
        if overflow not in ("error", "drop"):
            raise ValueError(f"overflow must be 'error' or 'drop', got {overflow!r}")
        self.cap = cap
        self.overflow = overflow
        self._left_set = frozenset(self.left)
        self._right_set = frozenset(self.right)

    def is_left(self, name: str) -> bool:
        if name in self._left_set:
            return True
        if name in self._right_set:
            return False
        raise KeyError(f"unknown index name {name!r}")

    def _out(self, terms) -> FockVector:
        return _collect(terms, self.cap, self.overflow)

    # the basic operators

    def creation(self, side: Literal["left", "right"], k: str, v: FockVector) -> FockVector:
        self.is_left(k)
        if side == "left":
            return self._out(((k,) + w, a) for w, a in v.amplitudes.items())
        if side == "right":
            return self._out((w + (k,), a) for w, a in v.amplitudes.items())
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def annihilation_left(self, k: str, v: FockVector) -> FockVector:
        return FockVector(self.cap, {w[1:]: a for w, a in v.amplitudes.items() if w and w[0] == k})

    def project_right(self, v: FockVector) -> FockVector:
        return FockVector(
            self.cap, {w: a for w, a in v.amplitudes.items() if all(c in self._right_set for c in w)}
        )

    def sigma(self, u: Sequence[str], w: Sequence[str]) -> FockVector:
        u, w = tuple(u), tuple(w)
        if len(u) + len(w) > self.cap:
            raise CapOverflowError(f"an interleaving of lengths {len(u)} and {len(w)} exceeds the cap {self.cap}")
        return self._out((s, Fraction(1)) for s in shuffles(u, w))

    # skeleton gluing

    def _t_terms(self, alpha: Word, eta: Word) -> Iterator[Word]:
        """Basis words of T_alpha(eta), with multiplicity."""
        n = len(alpha)
        own = self.is_left(alpha[-1])
        same = [self.is_left(c) == own for c in alpha]
        hit = [t for t, c in enumerate(eta) if self.is_left(c) == own]
        if not hit:
            # nodes of alpha up to the last one on the other side stay above eta
            k = max([0] + [t + 1 for t in range(n) if not same[t]])
            upper = tuple(reversed(alpha[k:n - 1]))
            top = tuple(reversed(alpha[:k]))
            for s in shuffles(upper, eta):
                yield (alpha[-1],) + s + top
            return
        if not all(same):
            return
        cut = hit[0]
        rest = tuple(reversed(alpha[:n - 1]))
        for s in shuffles(rest, eta[:cut]):
            yield (alpha[-1],) + s + eta[cut:]

    def t_alpha(self, alpha: Sequence[str], v: FockVector) -> FockVector:
        alpha = tuple(alpha)
        if not alpha:
            raise ValueError("T_alpha needs a non-empty word")
        terms = ((w, a) for eta, a in v.amplitudes.items() for w in self._t_terms(alpha, eta))
        return self._out(terms)

    def z_apply(self, k: str, net: "CumulantNet", v: FockVector, limit: int | None = None) -> FockVector:
        """Z_k = L_k^* (I + sum_alpha kappa_alpha T_alpha).

        Only alpha ending in ``k`` survive the annihilation.  With ``limit``,
        words longer than ``limit`` are dropped from the result; they cannot
        return to the vacuum in the factors that remain.
        """
        bound = self.cap if limit is None else limit
        out: dict[Word, Fraction] = {}
        for w, a in v.amplitudes.items():
            if w and w[0] == k and len(w) - 1 <= bound:
                out[w[1:]] = out.get(w[1:], 0) + a
        for alpha, c in net.ending_in(k):
            for eta, a in v.amplitudes.items():
                size = len(alpha) + len(eta)
                if size > self.cap and self.overflow == "error":
                    raise CapOverflowError(f"T_{format_word(alpha)} on a word of length {len(eta)} exceeds the cap {self.cap}")
                if size - 1 > bound:
                    continue
                for w in self._t_terms(alpha, eta):
                    out[w[1:]] = out.get(w[1:], 0) + c * a
        return FockVector(self.cap, out)


@dataclass(frozen=True)
class CumulantNet:
    """Weights kappa_alpha of the generating operator, for words up to ``bound``."""

    alphabet: tuple[str, ...]
    bound: int
    kappa: Mapping[Word, Fraction]

    def __post_init__(self):
        vals = {tuple(w): Fraction(c) for w, c in self.kappa.items()}
        for w in words_up_to(self.alphabet, self.bound):
            if w not in vals:
                raise ValueError(f"cumulant net has no value for {format_word(w)!r}")
        object.__setattr__(self, "kappa", vals)
        by_last: dict[str, list[tuple[Word, Fraction]]] = {}
        for w in words_up_to(self.alphabet, self.bound):
            if vals[w]:
                by_last.setdefault(w[-1], []).append((w, vals[w]))
        object.__setattr__(self, "_by_last", by_last)

    @classmethod
    def from_table(cls, table: CumulantTable, bound: int | None = None) -> "CumulantNet":
        bound = table.degree if bound is None else bound
        return cls(table.alphabet, bound, {w: table[w] for w in table.words(bound)})

    def ending_in(self, k: str) -> list[tuple[Word, Fraction]]:
        return self._by_last.get(k, [])  # type: ignore[attr-defined]


def fock_moment(dist: Distribution, word: Sequence[str], net: CumulantNet | None = None) -> Fraction:
    """Vacuum expectation of Z_{w1} ... Z_{wn} built from the cumulants of ``dist``.

    ``net`` may carry precomputed cumulants of ``dist`` (bound at least
    ``len(word)``) when many words of one distribution are evaluated.
    """
    word = tuple(word)
    n = len(word)
    if n == 0:
        return Fraction(1)
    if n > MAX_FOCK or n > dist.degree:
        raise SizeLimitError(f"fock_moment needs 1 <= |word| <= min(degree, {MAX_FOCK})")
    for c in word:
        dist.side(c)
    if net is None:
        net = cumulant_net(dist, n)
    elif net.bound < n:
        raise ValueError(f"cumulant net of bound {net.bound} is too short for a word of length {n}")
    space = FockSpace(dist.left, dist.right, cap=n, overflow="drop")
    v = FockVector.vacuum(n)
    for t in range(n - 1, -1, -1):
        v = space.z_apply(word[t], net, v, limit=t)
    return v.vacuum_amplitude()


def cumulant_net(dist: Distribution, bound: int | None = None) -> CumulantNet:
    bound = dist.degree if bound is None else bound
    trimmed = Distribution(dist.left, dist.right, bound, {w: dist[w] for w in dist.words(bound)})
    return CumulantNet.from_table(moments_to_cumulants(trimmed))


def skeleton_paths(
    left: Sequence[str],
    right: Sequence[str],
    word: Sequence[str],
    candidates: Iterable[Sequence[str]] | None = None,
) -> list[tuple[tuple[Word | None, ...], Fraction]]:
    """Expand Z_{w1} ... Z_{wn} Omega choice by choice.

    Each factor either annihilates alone (``None``) or first glues in a
    skeleton ``alpha`` ending in its letter.  Returns every choice sequence
    (listed from the first factor) whose vacuum amplitude is non-zero, with
    unit cumulant weights.  ``candidates`` restricts the skeletons tried,
    which keeps long words tractable.
    """
    word = tuple(word)
    n = len(word)
    space = FockSpace(left, right, cap=n, overflow="drop")
    alphabet = tuple(left) + tuple(right)
    pool = list(words_up_to(alphabet, n)) if candidates is None else [tuple(a) for a in candidates]
    found: list[tuple[tuple[Word | None, ...], Fraction]] = []

    def rec(t: int, v: FockVector, chosen: tuple[Word | None, ...]) -> None:
        if t < 0:
            if v.vacuum_amplitude():
                found.append((chosen, v.vacuum_amplitude()))
            return
        k = word[t]
        options: list[Word | None] = [None]
        options += [a for a in pool if a[-1] == k]
        for a in options:
            u = v if a is None else space.t_alpha(a, v)
            u = FockVector(n, {w: c for w, c in space.annihilation_left(k, u).amplitudes.items() if len(w) <= t})
            if u:
                rec(t - 1, u, (a,) + chosen)

    rec(n - 1, FockVector.vacuum(n), ())
    return found
