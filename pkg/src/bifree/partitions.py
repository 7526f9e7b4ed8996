"""Set partitions of {1, ..., n}, refinement, non-crossing partitions.

Partitions are stored in canonical form: every block is an ascending tuple
and blocks are ordered by their minimum.  Structural equality of two
:class:`Partition` objects is therefore equality of the partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, SizeLimitError

MAX_GROUND_SET = 12

Block = tuple[int, ...]


def _check_size(n: int, limit: int = MAX_GROUND_SET) -> None:
    if not isinstance(n, int) or n < 1 or n > limit:
        raise SizeLimitError(f"ground set size must be in 1..{limit}, got {n!r}")


@dataclass(frozen=True)
class Partition:
    """A partition of ``{1, ..., n}``.

    The constructor normalizes ``blocks`` into canonical order, so
    ``Partition(3, [(3, 1), (2,)])`` equals ``Partition(3, [(1, 3), (2,)])``.
    """

    n: int
    blocks: tuple[Block, ...]

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        canon = tuple(sorted(tuple(sorted(b)) for b in blocks))
        seen: list[int] = []
        for b in canon:
            if not b:
                raise ValueError("blocks must be non-empty")
            seen.extend(b)
        if sorted(seen) != list(range(1, n + 1)):
            raise ValueError(
                f"blocks {canon} do not partition {{1..{n}}} into disjoint sets"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", canon)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return format_partition(self)

    def __repr__(self) -> str:
        return f"Partition({self.n}, {format_partition(self)!r})"

    @cached_property
    def labels(self) -> tuple[int, ...]:
        """``labels[k-1]`` is the index of the block containing ``k``."""
        out = [0] * self.n
        for i, b in enumerate(self.blocks):
            for k in b:
                out[k - 1] = i
        return tuple(out)

    def block_of(self, k: int) -> Block:
        return self.blocks[self.labels[k - 1]]

    def restrict(self, nodes: Sequence[int]) -> "Partition":
        """Restriction to ``nodes`` (ascending), relabelled as 1..len(nodes)."""
        pos = {k: i + 1 for i, k in enumerate(nodes)}
        blocks = []
        for b in self.blocks:
            sub = [pos[k] for k in b if k in pos]
            if sub:
                blocks.append(sub)
        return Partition(len(nodes), blocks)


def zero(n: int) -> Partition:
    """The discrete partition 0_n."""
    return Partition(n, [(k,) for k in range(1, n + 1)])


def one(n: int) -> Partition:
    """The one-block partition 1_n."""
    return Partition(n, [tuple(range(1, n + 1))])


def format_partition(p: Partition) -> str:
    return "|".join(",".join(str(k) for k in b) for b in p.blocks)


def parse_partition(text: str, n: int | None = None) -> Partition:
    """Parse the ``"1,3|2"`` text form; non-canonical input is rejected."""
    text = text.strip()
    try:
        blocks = [tuple(int(x) for x in part.split(",")) for part in text.split("|")]
    except ValueError:
        raise ValueError(f"malformed partition string {text!r}") from None
    size = sum(len(b) for b in blocks)
    if n is not None and size != n:
        raise DimensionError(f"partition {text!r} has {size} elements, expected {n}")
    p = Partition(size, blocks)
    if format_partition(p) != text:
        raise ValueError(
            f"partition {text!r} is not in canonical form; write it as {format_partition(p)!r}"
        )
    return p


def iter_set_partitions(n: int) -> Iterator[Partition]:
    """All partitions of {1..n} via restricted growth strings."""
    _check_size(n)
    rgs = [0] * n

    def rec(k: int, nblocks: int) -> Iterator[Partition]:
        if k == n:
            blocks: list[list[int]] = [[] for _ in range(nblocks)]
            for i, b in enumerate(rgs):
                blocks[b].append(i + 1)
            yield Partition(n, blocks)
            return
        for b in range(nblocks + 1):
            rgs[k] = b
            yield from rec(k + 1, max(nblocks, b + 1))

    rgs[0] = 0
    yield from rec(1, 1)


def enumerate_set_partitions(n: int) -> list[Partition]:
    return list(iter_set_partitions(n))


def _crossing_pair(v: Block, w: Block) -> bool:
    # v_l < w_1 < v_{l+1}  must agree with  v_l < w_s < v_{l+1}
    w1, ws = w[0], w[-1]
    for a, b in zip(v, v[1:]):
        if (a < w1 < b) != (a < ws < b):
            return True
    return False


def is_non_crossing(p: Partition) -> bool:
    bs = p.blocks
    for i, v in enumerate(bs):
        for w in bs[i + 1:]:
            if _crossing_pair(v, w) or _crossing_pair(w, v):
                return False
    return True


def _nc_blocks(lo: int, hi: int) -> Iterator[list[Block]]:
    """Non-crossing partitions of the integer interval [lo, hi)."""
    if lo >= hi:
        yield []
        return

    def grow(block: list[int]) -> Iterator[list[Block]]:
        last = block[-1]
        # close the block here; everything after it is independent
        for rest in _nc_blocks(last + 1, hi):
            yield [tuple(block)] + rest
        for nxt in range(last + 1, hi):
            for inner in _nc_blocks(last + 1, nxt):
                for tail in grow(block + [nxt]):
                    yield inner + tail

    yield from grow([lo])


def enumerate_nc(n: int) -> list[Partition]:
    """NC(n), sorted by canonical block tuple."""
    _check_size(n)
    out = [Partition(n, bs) for bs in _nc_blocks(1, n + 1)]
    out.sort(key=lambda p: p.blocks)
    return out


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of ``p`` lies inside a block of ``q``."""
    if p.n != q.n:
        raise DimensionError(f"cannot compare partitions of {p.n} and {q.n} elements")
    lab = q.labels
    for b in p.blocks:
        first = lab[b[0] - 1]
        for k in b[1:]:
            if lab[k - 1] != first:
                return False
    return True


def kreweras_nc(p: Partition) -> Partition:
    """Kreweras complement in NC(n) by the interleaving construction.

    Points are ordered 1, 1', 2, 2', ..., n, n'.  Two primed points a' < b'
    can share a block without crossing ``p`` exactly when {a+1, ..., b} is a
    union of blocks of ``p``; this relation is an equivalence and its classes
    form the largest admissible partition of the primed points.
    """
    if not is_non_crossing(p):
        raise ValueError(f"{p} is crossing; the Kreweras complement needs NC input")
    n = p.n
    lab = p.labels
    # prefix-closed check: {a+1..b} is a union of blocks iff every block meeting it
    # lies inside it
    lo = [min(b) for b in p.blocks]
    hi = [max(b) for b in p.blocks]
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if all(lo[lab[k - 1]] > a and hi[lab[k - 1]] <= b for k in range(a + 1, b + 1)):
                parent[find(b)] = find(a)
                break  # b joins a's class; later b's chain through this one
    groups: dict[int, list[int]] = {}
    for k in range(1, n + 1):
        groups.setdefault(find(k), []).append(k)
    return Partition(n, groups.values())
