"""Bi-non-crossing partitions and shaded LR diagrams.

Node ``k`` of a two-column diagram sits at height ``n - k`` on the left
column when ``chi[k] == "L"`` and on the right column otherwise; so
index order is top-to-bottom order.  A partition is bi-non-crossing when
its transport to the standard line (left nodes top-down, then right nodes
bottom-up) is non-crossing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal, NamedTuple

from .errors import DimensionError, SizeLimitError
from .partitions import (
    Block,
    Partition,
    enumerate_nc,
    format_partition,
    is_non_crossing,
    kreweras_nc,
    one,
    parse_partition,
    refines,
    zero,
)

MAX_BNC = 10


class SidePattern(str):
    """A word over {L, R}; position k is a left or a right node."""

    def __new__(cls, sides: str):
        sides = str(sides)
        if not sides or any(c not in "LR" for c in sides):
            raise ValueError(f"side pattern must be a non-empty string over 'LR', got {sides!r}")
        return super().__new__(cls, sides)


class Shading(str):
    """A word over {A, B}; ``A`` marks the first family and ``B`` the second."""

    def __new__(cls, marks: str):
        marks = str(marks)
        if not marks or any(c not in "AB" for c in marks):
            raise ValueError(f"shading must be a non-empty string over 'AB', got {marks!r}")
        return super().__new__(cls, marks)


def _guard(chi: str, limit: int = MAX_BNC) -> None:
    if len(chi) > limit:
        raise SizeLimitError(f"pattern length {len(chi)} exceeds the limit {limit}")


@lru_cache(maxsize=None)
def s_perm(chi: str) -> tuple[int, ...]:
    """One-line notation of the permutation carrying NC(n) onto BNC(chi).

    Standard positions 1..p go to the left nodes in increasing order and
    positions p+1..n go to the right nodes in decreasing order.
    """
    chi = SidePattern(chi)
    lefts = [k + 1 for k, c in enumerate(chi) if c == "L"]
    rights = [k + 1 for k, c in enumerate(chi) if c == "R"]
    return tuple(lefts + rights[::-1])


@lru_cache(maxsize=None)
def _s_inverse(chi: str) -> tuple[int, ...]:
    s = s_perm(chi)
    inv = [0] * len(s)
    for k, v in enumerate(s):
        inv[v - 1] = k + 1
    return tuple(inv)


def transport(p: Partition, chi: str, direction: Literal["to_nc", "from_nc"]) -> Partition:
    """Act on ``p`` by ``s_chi^{-1}`` (``to_nc``) or ``s_chi`` (``from_nc``)."""
    if p.n != len(chi):
        raise DimensionError(f"partition on {p.n} points vs pattern of length {len(chi)}")
    if direction == "to_nc":
        perm = _s_inverse(chi)
    elif direction == "from_nc":
        perm = s_perm(chi)
    else:
        raise ValueError(f"direction must be 'to_nc' or 'from_nc', got {direction!r}")
    return Partition(p.n, [[perm[k - 1] for k in b] for b in p.blocks])


@dataclass(frozen=True)
class BncPartition:
    partition: Partition
    chi: SidePattern

    def __init__(self, partition: Partition, chi: str, _checked: bool = False):
        chi = SidePattern(chi)
        if partition.n != len(chi):
            raise DimensionError(
                f"partition on {partition.n} points vs pattern of length {len(chi)}"
            )
        if not _checked and not is_non_crossing(transport(partition, chi, "to_nc")):
            raise ValueError(f"{format_partition(partition)} is not bi-non-crossing for {chi}")
        object.__setattr__(self, "partition", partition)
        object.__setattr__(self, "chi", chi)

    @classmethod
    def parse(cls, chi: str, text: str) -> "BncPartition":
        return cls(parse_partition(text, len(chi)), chi)

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def blocks(self) -> tuple[Block, ...]:
        return self.partition.blocks

    def __len__(self) -> int:
        return len(self.partition)

    def __str__(self) -> str:
        return format_partition(self.partition)

    def to_json(self) -> dict:
        return {"chi": str(self.chi), "partition": str(self)}

    def to_nc(self) -> Partition:
        return transport(self.partition, self.chi, "to_nc")


def bnc_zero(chi: str) -> BncPartition:
    return BncPartition(zero(len(chi)), chi, _checked=True)


def bnc_one(chi: str) -> BncPartition:
    return BncPartition(one(len(chi)), chi, _checked=True)


def from_nc(q: Partition, chi: str) -> BncPartition:
    return BncPartition(transport(q, chi, "from_nc"), chi, _checked=True)


@lru_cache(maxsize=None)
def _enumerate_bnc(chi: str) -> tuple[BncPartition, ...]:
    out = [from_nc(q, chi) for q in enumerate_nc(len(chi))]
    out.sort(key=lambda b: b.blocks)
    return tuple(out)


def enumerate_bnc(chi: str) -> list[BncPartition]:
    """BNC(chi), sorted by canonical block tuple."""
    chi = SidePattern(chi)
    _guard(chi)
    return list(_enumerate_bnc(chi))


def bnc_refines(p: BncPartition, q: BncPartition) -> bool:
    if p.chi != q.chi:
        raise DimensionError(f"partitions over different patterns {p.chi} and {q.chi}")
    return refines(p.partition, q.partition)


# ---------------------------------------------------------------------------
# block geometry


def piled(v: Block, w: Block) -> bool:
    return max(v[0], w[0]) <= min(v[-1], w[-1])


def _separates(u: Block, v: Block, w: Block, sinv: tuple[int, ...]) -> bool:
    tv = [sinv[k - 1] for k in v]
    tw = [sinv[k - 1] for k in w]
    tu = sorted(sinv[k - 1] for k in u)
    for a in range(len(tu)):
        for b in range(a, len(tu)):
            lo, hi = tu[a], tu[b]
            v_in = all(lo <= x <= hi for x in tv)
            w_in = all(lo <= x <= hi for x in tw)
            v_out = not any(lo <= x <= hi for x in tv)
            w_out = not any(lo <= x <= hi for x in tw)
            if (v_in and w_out) or (w_in and v_out):
                return True
    return False


class BlockRelation(NamedTuple):
    piled: bool
    tangled: bool
    separators: tuple[Block, ...]


def classify_blocks(p: BncPartition, v: Block, w: Block) -> BlockRelation:
    v, w = tuple(v), tuple(w)
    if v not in p.blocks or w not in p.blocks:
        raise ValueError(f"{v} and {w} must both be blocks of {p}")
    if v == w:
        raise ValueError("classify_blocks needs two distinct blocks")
    sinv = _s_inverse(p.chi)
    seps = tuple(
        u
        for u in p.blocks
        if u != v and u != w and piled(u, v) and piled(u, w) and _separates(u, v, w, sinv)
    )
    is_piled = piled(v, w)
    return BlockRelation(is_piled, is_piled and not seps, seps)


def is_lateral_refinement(p: BncPartition, q: BncPartition) -> bool:
    """True iff ``p <= q`` is obtained by horizontal cuts only."""
    if not bnc_refines(p, q):
        raise ValueError(f"{p} is not a refinement of {q}")
    return _lateral(p.blocks, q.partition.labels)


def _lateral(blocks: tuple[Block, ...], qlabels: tuple[int, ...]) -> bool:
    for i, v in enumerate(blocks):
        for w in blocks[i + 1:]:
            if qlabels[v[0] - 1] == qlabels[w[0] - 1] and piled(v, w):
                return False
    return True


def is_shade_constant(blocks: tuple[Block, ...], eps: str) -> bool:
    """``pi <= eps`` when the shading is read as a two-block partition."""
    return all(len({eps[k - 1] for k in b}) == 1 for b in blocks)


# ---------------------------------------------------------------------------
# LR diagrams


class DiagramBlock(NamedTuple):
    nodes: Block
    shade: str
    open: bool


@dataclass(frozen=True)
class LrDiagram:
    """One diagram of LR(chi, eps).

    Blocks are identified by their lowest node (largest index), which is the
    node that created them.  ``open_order`` lists the identifiers of blocks
    whose spine reaches the top gap, from left to right.
    """

    chi: SidePattern
    shading: Shading
    blocks: tuple[DiagramBlock, ...]
    open_order: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.chi)

    @property
    def open_chords(self) -> int:
        return len(self.open_order)

    def block(self, ident: int) -> DiagramBlock:
        for b in self.blocks:
            if b.nodes[-1] == ident:
                return b
        raise KeyError(ident)

    def partition(self) -> Partition:
        return Partition(self.n, [b.nodes for b in self.blocks])

    def parent(self) -> "LrDiagram":
        """The diagram of LR(chi[1:], eps[1:]) this one was grown from."""
        if self.n == 1:
            raise ValueError("a one-node diagram has no parent")
        top_side = self.chi[0]
        blocks = []
        order = list(self.open_order)
        for b in self.blocks:
            if b.nodes[0] != 1:
                blocks.append(b)
                continue
            ident = b.nodes[-1]
            if len(b.nodes) == 1:
                if b.open:
                    order.remove(ident)
                continue
            if not b.open:
                # node 1 closed this spine; it was the nearest one on node 1's side
                if top_side == "L":
                    order.insert(0, ident)
                else:
                    order.append(ident)
            blocks.append(DiagramBlock(b.nodes[1:], b.shade, True))
        shifted = tuple(
            sorted(
                (DiagramBlock(tuple(k - 1 for k in b.nodes), b.shade, b.open) for b in blocks),
                key=lambda b: b.nodes,
            )
        )
        return LrDiagram(
            SidePattern(self.chi[1:]),
            Shading(self.shading[1:]),
            shifted,
            tuple(i - 1 for i in order),
        )

    def dump(self) -> str:
        """Plain-text rendering, one node per line from the top."""
        lines = []
        for k in range(1, self.n + 1):
            b = next(b for b in self.blocks if k in b.nodes)
            tag = f"{b.shade}{'*' if b.open else ''}"
            label = f"{k}:{tag}:{','.join(map(str, b.nodes))}"
            lines.append(label if self.chi[k - 1] == "L" else " " * 16 + label)
        lines.append("open: " + " ".join(str(i) for i in self.open_order))
        return "\n".join(lines)


def _grow(chi: str, eps: str) -> Iterator[tuple[dict[int, list[int]], dict[int, bool], tuple[int, ...]]]:
    """Recursive construction, bottom node first.

    State: ``members[ident]`` (nodes of each block, top-first), ``is_open``
    and the left-to-right ``order`` of open spines.
    """
    n = len(chi)

    def rec(k: int, members: dict[int, list[int]], is_open: dict[int, bool], order: tuple[int, ...]):
        if k == 0:
            yield members, is_open, order
            return
        side, shade = chi[k - 1], eps[k - 1]
        nearest = None
        if order:
            nearest = order[0] if side == "L" else order[-1]
        if nearest is not None and eps[nearest - 1] == shade:
            joined = dict(members)
            joined[nearest] = [k] + members[nearest]
            # keep the spine open
            yield from rec(k - 1, joined, is_open, order)
            # terminate the spine at the new node
            closed = dict(is_open)
            closed[nearest] = False
            yield from rec(k - 1, joined, closed, tuple(i for i in order if i != nearest))
        else:
            added = dict(members)
            added[k] = [k]
            iso = dict(is_open)
            iso[k] = False
            yield from rec(k - 1, added, iso, order)
            opened = dict(is_open)
            opened[k] = True
            new_order = (k,) + order if side == "L" else order + (k,)
            yield from rec(k - 1, added, opened, new_order)

    yield from rec(n, {}, {}, ())


def enumerate_lr(chi: str, eps: str) -> list[LrDiagram]:
    chi, eps = SidePattern(chi), Shading(eps)
    if len(chi) != len(eps):
        raise DimensionError(f"pattern {chi} and shading {eps} differ in length")
    _guard(chi)
    out = []
    for members, is_open, order in _grow(chi, eps):
        blocks = tuple(
            sorted(
                (DiagramBlock(tuple(nodes), eps[ident - 1], is_open[ident]) for ident, nodes in members.items()),
                key=lambda b: b.nodes,
            )
        )
        out.append(LrDiagram(chi, eps, blocks, order))
    return out


@lru_cache(maxsize=None)
def _shaded_bnc(chi: str, eps: str) -> tuple[BncPartition, ...]:
    seen: dict[Partition, BncPartition] = {}
    for members, is_open, order in _grow(chi, eps):
        if order:
            continue
        p = Partition(len(chi), members.values())
        # distinct LR_0 diagrams have distinct partitions
        assert p not in seen, f"duplicate LR_0 partition {p}"
        seen[p] = BncPartition(p, chi)
    return tuple(sorted(seen.values(), key=lambda b: b.blocks))


def shaded_bnc(chi: str, eps: str) -> list[BncPartition]:
    """BNC(chi, eps): partitions of the diagrams without open chords."""
    chi, eps = SidePattern(chi), Shading(eps)
    if len(chi) != len(eps):
        raise DimensionError(f"pattern {chi} and shading {eps} differ in length")
    _guard(chi)
    return list(_shaded_bnc(chi, eps))


def kreweras_bnc(p: BncPartition) -> BncPartition:
    return from_nc(kreweras_nc(p.to_nc()), p.chi)
