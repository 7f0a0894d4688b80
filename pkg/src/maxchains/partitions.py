"""Ordered and unordered set partitions of {1, ..., n}.

A partition is stored by its restricted-growth string (RGS): position ``x``
holds the 0-based index of the block containing element ``x + 1``.  An RGS
always lists blocks in order of their minima, so the encoding of a naturally
ordered partition is canonical and doubles as a dictionary key for colorings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1, ..., n} into nonempty blocks, in a fixed block order."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise PartitionError("empty block")
            if seen & b:
                raise PartitionError("blocks overlap")
            seen |= b
        if seen != set(range(1, len(seen) + 1)):
            raise PartitionError(f"blocks do not cover 1..{len(seen)}")

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "SetPartition":
        return cls(tuple(frozenset(b) for b in blocks))

    @classmethod
    def from_rgs(cls, code: Sequence[int] | str) -> "SetPartition":
        digits = list(decode(code)) if isinstance(code, str) else list(code)
        if not is_rgs(digits):
            raise PartitionError(f"not a restricted-growth string: {code!r}")
        k = max(digits) + 1 if digits else 0
        blocks = [set() for _ in range(k)]
        for x, b in enumerate(digits, start=1):
            blocks[b].add(x)
        return cls(tuple(frozenset(b) for b in blocks))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def rgs(self) -> tuple[int, ...]:
        """Canonical encoding; ignores the current block order."""
        return _rgs_of(naturally_order(self).blocks)

    def encode(self) -> str:
        return encode(self.rgs())

    def is_naturally_ordered(self) -> bool:
        mins = [min(b) for b in self.blocks]
        return all(a < b for a, b in zip(mins, mins[1:]))

    def block_of(self, x: int) -> int:
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise PartitionError(f"{x} not in ground set")

    def __str__(self):
        return "(" + ",".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks) + ")"


def _rgs_of(blocks: Sequence[frozenset[int]]) -> tuple[int, ...]:
    n = sum(len(b) for b in blocks)
    out = [0] * n
    for i, b in enumerate(blocks):
        for x in b:
            out[x - 1] = i
    return tuple(out)


def is_rgs(code: Sequence[int]) -> bool:
    top = -1
    for d in code:
        if d < 0 or d > top + 1:
            return False
        top = max(top, d)
    return True


def encode(code: Sequence[int]) -> str:
    # digits beyond 9 would make the string ambiguous
    if any(d > 9 for d in code):
        return ".".join(map(str, code))
    return "".join(map(str, code))


def decode(text: str) -> tuple[int, ...]:
    if "." in text:
        return tuple(int(t) for t in text.split("."))
    return tuple(int(ch) for ch in text)


def rgs_strings(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All RGS of length n with exactly k distinct symbols, lexicographically."""
    if k < 1 or k > n:
        return
    code = [0] * n

    def rec(pos: int, top: int):
        # top = largest symbol used so far
        if pos == n:
            if top == k - 1:
                yield tuple(code)
            return
        remaining = n - pos
        for d in range(0, min(top + 2, k)):
            new_top = max(top, d)
            if (k - 1 - new_top) > remaining - 1:
                continue
            code[pos] = d
            yield from rec(pos + 1, new_top)

    code[0] = 0
    yield from rec(1, 0)


@lru_cache(maxsize=None)
def rgs_list(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(rgs_strings(n, k))


def enumerate_partitions(n: int, k: int, naturally_ordered: bool = True) -> Iterator[SetPartition]:
    """Stream the partitions of {1..n} into k blocks in lexicographic RGS order.

    With ``naturally_ordered`` set, one representative per unordered partition
    is produced.  Otherwise every ordering of the blocks is produced, grouped by
    underlying RGS and then by the lexicographic order of the block
    permutation.
    """
    from itertools import permutations

    for code in rgs_strings(n, k):
        p = SetPartition.from_rgs(code)
        if naturally_ordered:
            yield p
        else:
            for perm in permutations(range(k)):
                yield SetPartition(tuple(p.blocks[i] for i in perm))


def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind by the usual recurrence."""
    table = [[0] * (k + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, min(i, k) + 1):
            table[i][j] = j * table[i - 1][j] + table[i - 1][j - 1]
    return table[n][k]


def naturally_order(p: SetPartition) -> SetPartition:
    return SetPartition(tuple(sorted(p.blocks, key=min)))


def amalgamate_rgs(gamma: Sequence[int], beta: Sequence[int]) -> tuple[int, ...]:
    """RGS of gamma_beta: element x goes to the beta-block of its gamma-block."""
    return tuple(beta[b] for b in gamma)


def amalgamate(gamma: SetPartition, beta: SetPartition) -> SetPartition:
    """Merge the blocks of ``gamma`` according to the index partition ``beta``.

    Block j of the result is the union of gamma's blocks C_i for i in B_j.
    Both inputs must be naturally ordered; so is the output.
    """
    if beta.n != gamma.k:
        raise PartitionError(f"beta partitions {{1..{beta.n}}} but gamma has {gamma.k} blocks")
    if not (gamma.is_naturally_ordered() and beta.is_naturally_ordered()):
        raise PartitionError("amalgamate requires naturally ordered inputs")
    merged = tuple(frozenset().union(*(gamma.blocks[i - 1] for i in bj)) for bj in beta.blocks)
    return naturally_order(SetPartition(merged))


def coarsenings(eta: SetPartition, k: int) -> set[SetPartition]:
    """All k-block partitions whose blocks are unions of eta's blocks."""
    if not eta.is_naturally_ordered():
        raise PartitionError("coarsenings requires a naturally ordered partition")
    code = eta.rgs()
    return {SetPartition.from_rgs(amalgamate_rgs(code, tau)) for tau in rgs_list(eta.k, k)}


def is_refinement(fine: SetPartition, coarse: SetPartition) -> bool:
    if fine.n != coarse.n:
        raise PartitionError("partitions of different ground sets")
    return all(any(b <= c for c in coarse.blocks) for b in fine.blocks)


# -- colorings -------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    """A total coloring of the k-block partitions of {1..N}, keyed by RGS."""

    n: int
    k: int
    colors: Mapping[tuple[int, ...], object]

    def __post_init__(self):
        missing = [c for c in rgs_list(self.n, self.k) if c not in self.colors]
        if missing:
            raise PartitionError(f"coloring is partial: {len(missing)} partitions uncolored")

    def __call__(self, p: SetPartition | Sequence[int]) -> object:
        key = p.rgs() if isinstance(p, SetPartition) else tuple(p)
        return self.colors[key]

    @property
    def palette(self) -> list:
        out = []
        for code in rgs_list(self.n, self.k):
            c = self.colors[code]
            if c not in out:
                out.append(c)
        return out

    def to_json(self) -> str:
        payload = {encode(code): self.colors[code] for code in rgs_list(self.n, self.k)}
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, n: int, k: int) -> "Coloring":
        raw = json.loads(text)
        return cls(n, k, {decode(key): v for key, v in raw.items()})
