"""A finitary model of the Cantor set {0,1}^N and its homeomorphism group.

Words are Python strings over ``"01"``; the word ``w`` stands for the cylinder
of all infinite sequences extending it, and the empty word is the whole
space.  Clopen sets are canonical antichains of words, homeomorphisms are
bijections between complete prefix codes acting by prefix replacement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Sequence


class ContractError(ValueError):
    """An operation was called outside its documented preconditions."""


def _check_word(w: str) -> str:
    if any(ch not in "01" for ch in w):
        raise ContractError(f"not a binary word: {w!r}")
    return w


def comparable(u: str, v: str) -> bool:
    return u.startswith(v) or v.startswith(u)


def sibling(w: str) -> str:
    return w[:-1] + ("1" if w[-1] == "0" else "0")


# -- clopen sets ------------------------------------------------------------


def canonicalize(words: Iterable[str]) -> frozenset[str]:
    """Canonical antichain for the union of the given cylinders.

    Words covered by a shorter word are dropped, then complete sibling pairs
    are merged into their parent until nothing merges.
    """
    ws = sorted({_check_word(w) for w in words}, key=lambda w: (len(w), w))
    kept: set[str] = set()
    for w in ws:
        if not any(w[:i] in kept for i in range(len(w) + 1)):
            kept.add(w)
    changed = True
    while changed:
        changed = False
        for w in sorted(kept, key=len, reverse=True):
            if w and w in kept and sibling(w) in kept:
                kept.discard(w)
                kept.discard(sibling(w))
                kept.add(w[:-1])
                changed = True
    return frozenset(kept)


@dataclass(frozen=True, order=False)
class ClopenSet:
    cylinders: frozenset[str]

    def __init__(self, words: Iterable[str] = ()):
        object.__setattr__(self, "cylinders", canonicalize(words))

    @classmethod
    def whole(cls) -> "ClopenSet":
        return cls([""])

    @classmethod
    def empty(cls) -> "ClopenSet":
        return cls()

    def is_empty(self) -> bool:
        return not self.cylinders

    def is_whole(self) -> bool:
        return self.cylinders == frozenset([""])

    def sorted(self) -> list[str]:
        return sorted(self.cylinders)

    def least(self) -> str:
        return min(self.cylinders)

    def depth(self) -> int:
        return max((len(w) for w in self.cylinders), default=0)

    def contains_word(self, w: str) -> bool:
        """True iff the cylinder [w] lies inside this set."""
        cyl = self.cylinders
        for i in range(len(w) + 1):
            if w[:i] in cyl:
                return True
        return False

    def meets_word(self, w: str) -> bool:
        """True iff the cylinder [w] meets this set."""
        return w in self._prefixes() or self.contains_word(w)

    def _prefixes(self) -> frozenset[str]:
        # all prefixes of the cylinders, cached; [w] meets a cylinder below it iff w is one
        try:
            return self.__dict__["_prefix_cache"]
        except KeyError:
            out = frozenset(c[:i] for c in self.cylinders for i in range(len(c) + 1))
            object.__setattr__(self, "_prefix_cache", out)
            return out

    def measure(self) -> Fraction:
        return sum((Fraction(1, 2 ** len(w)) for w in self.cylinders), Fraction(0))

    def __or__(self, other: "ClopenSet") -> "ClopenSet":
        return union(self, other)

    def __and__(self, other: "ClopenSet") -> "ClopenSet":
        return intersect(self, other)

    def __invert__(self) -> "ClopenSet":
        return complement(self)

    def __sub__(self, other: "ClopenSet") -> "ClopenSet":
        return intersect(self, complement(other))

    def __le__(self, other: "ClopenSet") -> bool:
        return is_subset(self, other)

    def __str__(self):
        if self.is_whole():
            return "X"
        return "{" + ",".join(self.sorted()) + "}"

    def to_json(self) -> list[str]:
        return self.sorted()


def union(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return ClopenSet(a.cylinders | b.cylinders)


def intersect(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    out = []
    for u in a.cylinders:
        for v in b.cylinders:
            if u.startswith(v):
                out.append(u)
            elif v.startswith(u):
                out.append(v)
    return ClopenSet(out)


def complement(a: ClopenSet) -> ClopenSet:
    out: list[str] = []

    def rec(w: str, words: list[str]):
        if not words:
            out.append(w)
        elif w in words:
            return
        else:
            rec(w + "0", [u for u in words if u.startswith(w + "0")])
            rec(w + "1", [u for u in words if u.startswith(w + "1")])

    rec("", list(a.cylinders))
    return ClopenSet(out)


def is_subset(a: ClopenSet, b: ClopenSet) -> bool:
    return all(b.contains_word(u) for u in a.cylinders)


def disjoint(a: ClopenSet, b: ClopenSet) -> bool:
    return not any(comparable(u, v) for u in a.cylinders for v in b.cylinders)


# -- prefix codes -----------------------------------------------------------


def is_complete_code(leaves: Iterable[str]) -> bool:
    ls = sorted(leaves)
    if not ls:
        return False
    # in sorted order a prefix sits right before some word extending it
    for u, v in zip(ls, ls[1:]):
        if v.startswith(u):
            return False
    depth = max(len(w) for w in ls)
    return sum(1 << (depth - len(w)) for w in ls) == 1 << depth


def refine_code(leaves: Iterable[str], words: Iterable[str]) -> list[str]:
    """Split leaves until every given word is a union of leaves.

    The result is the coarsest complete code refining ``leaves`` in which each
    of ``words`` is a leaf or a union of leaves; returned in lexicographic
    order.
    """
    targets = set(words)
    out: list[str] = []
    stack = sorted(leaves, reverse=True)
    while stack:
        u = stack.pop()
        if any(t.startswith(u) and len(t) > len(u) for t in targets):
            stack.append(u + "1")
            stack.append(u + "0")
        else:
            out.append(u)
    return sorted(out)


def all_codes(n: int) -> list[tuple[str, ...]]:
    """Every complete binary prefix code with exactly n leaves (lex-sorted leaves)."""

    def rec(prefix: str, size: int) -> Iterator[list[str]]:
        if size == 1:
            yield [prefix]
            return
        for left in range(1, size):
            for a in rec(prefix + "0", left):
                for b in rec(prefix + "1", size - left):
                    yield a + b

    return [tuple(c) for c in rec("", n)] if n >= 1 else []


def uniform_code(depth: int) -> list[str]:
    if depth == 0:
        return [""]
    return [format(i, f"0{depth}b") for i in range(2 ** depth)]


# -- homeomorphisms ---------------------------------------------------------


def _reduce_pairing(pairs: dict[str, str]) -> dict[str, str]:
    """Merge sibling domain leaves whose images are the matching siblings."""
    pairs = dict(pairs)
    changed = True
    while changed:
        changed = False
        for u in sorted(pairs, key=len, reverse=True):
            if not u or u not in pairs or u[-1] != "0":
                continue
            u1 = u[:-1] + "1"
            v0 = pairs[u]
            if u1 in pairs and v0 and v0[-1] == "0" and pairs[u1] == v0[:-1] + "1":
                del pairs[u]
                del pairs[u1]
                pairs[u[:-1]] = v0[:-1]
                changed = True
    return pairs


@dataclass(frozen=True)
class PrefixMap:
    """Homeomorphism of the Cantor set given by a bijection of prefix codes.

    ``pairs`` maps each domain leaf u to a range leaf v; a sequence ``u + s``
    is sent to ``v + s``.  The stored pairing is always reduced, so equal maps
    compare equal.
    """

    pairs: tuple[tuple[str, str], ...]

    def __init__(self, pairing: Mapping[str, str] | Iterable[tuple[str, str]]):
        raw = dict(pairing.items() if isinstance(pairing, Mapping) else pairing)
        if not is_complete_code(raw.keys()):
            raise ContractError(f"domain is not a complete prefix code: {sorted(raw)}")
        if len(set(raw.values())) != len(raw) or not is_complete_code(raw.values()):
            raise ContractError(f"range is not a complete prefix code: {sorted(raw.values())}")
        object.__setattr__(self, "pairs", tuple(sorted(_reduce_pairing(raw).items())))

    @classmethod
    def identity(cls) -> "PrefixMap":
        return cls({"": ""})

    @property
    def pairing(self) -> dict[str, str]:
        return dict(self.pairs)

    @property
    def domain_code(self) -> list[str]:
        return [u for u, _ in self.pairs]

    @property
    def range_code(self) -> list[str]:
        return sorted(v for _, v in self.pairs)

    def is_identity(self) -> bool:
        return self.pairs == (("", ""),)

    def __call__(self, w: str) -> str:
        """Image of a word that extends some domain leaf."""
        for u, v in self.pairs:
            if w.startswith(u):
                return v + w[len(u):]
        raise ContractError(f"word {w!r} is shorter than the domain leaves covering it")

    def __mul__(self, other: "PrefixMap") -> "PrefixMap":
        return compose(self, other)

    def inverse(self) -> "PrefixMap":
        return invert(self)

    def __str__(self):
        return ", ".join(f"{u or 'e'}->{v or 'e'}" for u, v in self.pairs)

    def to_json(self) -> list[str]:
        return [f"{u}→{v}" for u, v in self.pairs]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "PrefixMap":
        out = {}
        for item in items:
            sep = "→" if "→" in item else "->"
            u, v = item.split(sep)
            out[u.strip()] = v.strip()
        return cls(out)


def invert(f: PrefixMap) -> PrefixMap:
    return PrefixMap({v: u for u, v in f.pairs})


def compose(f: PrefixMap, g: PrefixMap) -> PrefixMap:
    """The map x -> f(g(x))."""
    g_range = [v for _, v in g.pairs]
    common = refine_code(g_range, f.domain_code)
    g_inv = {v: u for u, v in g.pairs}
    out = {}
    for w in common:
        # w extends exactly one range leaf of g and exactly one domain leaf of f
        for v, u in g_inv.items():
            if w.startswith(v):
                out[u + w[len(v):]] = f(w)
                break
    return PrefixMap(out)


def transposition(a: str, b: str) -> PrefixMap:
    """Swap the cylinders [a] and [b] (which must be disjoint) leafwise."""
    if comparable(a, b):
        raise ContractError("cylinders must be disjoint")
    code = refine_code([""], [a, b])
    return PrefixMap({u: (b if u == a else a if u == b else u) for u in code})


def apply_clopen(g: PrefixMap, c: ClopenSet) -> ClopenSet:
    out = []
    for w in c.cylinders:
        for u, v in g.pairs:
            if w.startswith(u):
                out.append(v + w[len(u):])
                break
            if u.startswith(w):
                out.append(v)
    return ClopenSet(out)


# -- clopen partitions ------------------------------------------------------


class OrderedPartition(tuple):
    """A finite ordered clopen partition (A_1, ..., A_k) of the Cantor set."""

    def __new__(cls, parts: Iterable[ClopenSet | Iterable[str]]):
        ps = tuple(p if isinstance(p, ClopenSet) else ClopenSet(p) for p in parts)
        _check_partition(ps)
        return super().__new__(cls, ps)

    @classmethod
    def _trusted(cls, parts: Iterable[ClopenSet]) -> "OrderedPartition":
        # reordering of an already validated partition
        return tuple.__new__(cls, parts)

    @classmethod
    def of(cls, *parts: Iterable[str]) -> "OrderedPartition":
        return cls(parts)

    @property
    def k(self) -> int:
        return len(self)

    def __eq__(self, other):
        return type(other) is OrderedPartition and tuple.__eq__(self, other)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(("ordered", tuple(self)))

    def unordered(self) -> "UnorderedPartition":
        return UnorderedPartition(self)

    def permute(self, sigma: "Permutation") -> "OrderedPartition":
        """sigma (B_1..B_k) = (B_sigma(1), ..., B_sigma(k))."""
        return sigma.act(self)

    def words(self) -> set[str]:
        return {w for p in self for w in p.cylinders}

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self):
        return f"OrderedPartition{str(self)}"

    def to_json(self) -> list[list[str]]:
        return [p.to_json() for p in self]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "OrderedPartition":
        return cls(data)


class UnorderedPartition(tuple):
    """A clopen partition as a set; parts kept sorted by least cylinder."""

    def __new__(cls, parts: Iterable[ClopenSet | Iterable[str]]):
        op = parts if isinstance(parts, (OrderedPartition, UnorderedPartition)) else OrderedPartition(parts)
        return super().__new__(cls, sorted(op, key=ClopenSet.least))

    @property
    def k(self) -> int:
        return len(self)

    def __eq__(self, other):
        return type(other) is UnorderedPartition and tuple.__eq__(self, other)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(("unordered", tuple(self)))

    def as_ordered(self) -> OrderedPartition:
        return OrderedPartition._trusted(self)

    def words(self) -> set[str]:
        return {w for p in self for w in p.cylinders}

    def __str__(self):
        return "{" + ",".join(map(str, self)) + "}"

    def __repr__(self):
        return f"UnorderedPartition{str(self)}"

    def to_json(self) -> list[list[str]]:
        return [p.to_json() for p in self]


def _check_partition(ps: Sequence[ClopenSet]) -> None:
    words = []
    for p in ps:
        if p.is_empty():
            raise ContractError("partition has an empty part")
        words.extend(p.cylinders)
    if not is_complete_code(words):
        raise ContractError("parts overlap or do not cover X")


def apply_partition(g: PrefixMap, alpha: OrderedPartition) -> OrderedPartition:
    return OrderedPartition(apply_clopen(g, a) for a in alpha)


def apply_unordered(g: PrefixMap, alpha: UnorderedPartition) -> UnorderedPartition:
    return UnorderedPartition(apply_clopen(g, a) for a in alpha)


def join(alpha: OrderedPartition, beta: OrderedPartition) -> OrderedPartition:
    """Common refinement; parts A_i & B_j in lexicographic (i, j) order, empties dropped."""
    parts = []
    for a in alpha:
        for b in beta:
            ab = intersect(a, b)
            if not ab.is_empty():
                parts.append(ab)
    return OrderedPartition(parts)


def partition_refines(fine: OrderedPartition | UnorderedPartition, coarse: OrderedPartition | UnorderedPartition) -> bool:
    return all(any(is_subset(p, q) for q in coarse) for p in fine)


def leaf_partition(code: Sequence[str], blocks: Sequence[Iterable[int]]) -> OrderedPartition:
    """Ordered partition whose i-th part is the union of the listed leaves."""
    return OrderedPartition(ClopenSet(code[j] for j in b) for b in blocks)


# -- permutations -----------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..k} in one-line notation (sigma(1), ..., sigma(k)).

    ``p * q`` is composition, ``(p * q)(i) == p(q(i))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ContractError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def all(cls, k: int) -> list["Permutation"]:
        return [cls(p) for p in permutations(range(1, k + 1))]

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(tuple(int(ch) for ch in text.replace(",", "").replace(" ", "")))

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.k != other.k:
            raise ContractError("permutations of different degree")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.k
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.k + 1))

    def act(self, seq: Sequence) -> OrderedPartition | tuple:
        out = tuple(seq[j - 1] for j in self.images)
        return OrderedPartition._trusted(out) if isinstance(seq, OrderedPartition) else out

    def __str__(self):
        return "".join(map(str, self.images)) if self.k < 10 else ",".join(map(str, self.images))


def solve_permutation(source: Sequence, target: Sequence) -> Permutation:
    """The unique sigma with sigma(source) == target, for orderings of one set."""
    index = {x: i for i, x in enumerate(source, start=1)}
    if len(index) != len(source) or set(index) != set(target) or len(target) != len(source):
        raise ContractError("source and target are not orderings of the same parts")
    return Permutation(tuple(index[x] for x in target))


# -- partition homogeneity --------------------------------------------------


def _pad(words: list[str], size: int) -> list[str]:
    ws = sorted(words)
    while len(ws) < size:
        last = ws.pop()
        ws.extend([last + "0", last + "1"])
        ws.sort()
    return ws


def homogeneity_witness(alpha: OrderedPartition, beta: OrderedPartition) -> PrefixMap:
    """A homeomorphism carrying the i-th part of alpha onto the i-th part of beta.

    Each pair of parts is brought to equal cylinder counts by repeatedly
    splitting the lexicographically last cylinder of the part with fewer
    cylinders; cylinders are then matched in lexicographic order.
    """
    if len(alpha) != len(beta):
        raise ContractError(f"partitions have different sizes {len(alpha)} != {len(beta)}")
    if tuple(alpha) == tuple(beta):
        return PrefixMap.identity()
    pairs = {}
    for a, b in zip(alpha, beta):
        size = max(len(a.cylinders), len(b.cylinders))
        for u, v in zip(_pad(a.sorted(), size), _pad(b.sorted(), size)):
            pairs[u] = v
    return PrefixMap(pairs)


def stabilizes(g: PrefixMap, alpha: Sequence[ClopenSet]) -> bool:
    return all(apply_clopen(g, a) == a for a in alpha)


def fixes_pointwise(g: PrefixMap, c: ClopenSet) -> bool:
    """True iff g restricted to c is the identity map."""
    for w in c.cylinders:
        for u, v in g.pairs:
            if w.startswith(u):
                if u != v:
                    return False
            elif u.startswith(w) and u != v:
                return False
    return True


def random_map(rng, max_leaves: int) -> PrefixMap:
    """Random homeomorphism with at most ``max_leaves`` leaves on each side."""
    n = rng.randint(1, max_leaves)
    dom = random_code(rng, n)
    ran = random_code(rng, n)
    rng.shuffle(ran)
    return PrefixMap(dict(zip(dom, ran)))


def random_code(rng, n: int) -> list[str]:
    leaves = [""]
    while len(leaves) < n:
        w = leaves.pop(rng.randrange(len(leaves)))
        leaves.extend([w + "0", w + "1"])
    return sorted(leaves)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)
