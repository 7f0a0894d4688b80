"""Finite traces of maximal chains of closed subsets of the Cantor set.

A ``ChainApprox`` is a complete prefix code with a linear order on its
leaves.  Its chain elements are the order-prefixes: the union of the first
leaf, of the first two leaves, and so on up to the whole space.  Every
maximal chain restricts to such a trace at every finite level, and the
induced orders, neighbourhoods and ratios used below depend on nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Sequence

from .cantor import (
    ClopenSet,
    ContractError,
    OrderedPartition,
    Permutation,
    PrefixMap,
    UnorderedPartition,
    apply_clopen,
    is_complete_code,
    is_subset,
    solve_permutation,
)


@dataclass(frozen=True)
class ChainApprox:
    order: tuple[str, ...]

    def __init__(self, order: Iterable[str]):
        order = tuple(order)
        if not is_complete_code(order):
            raise ContractError(f"chain order is not a complete prefix code: {order}")
        object.__setattr__(self, "order", order)

    @classmethod
    def _trusted(cls, order: Iterable[str]) -> "ChainApprox":
        # skips validation; only for orders built from a valid chain
        c = object.__new__(cls)
        object.__setattr__(c, "order", tuple(order))
        return c

    @classmethod
    def lex(cls, code: Iterable[str]) -> "ChainApprox":
        return cls(sorted(code))

    @property
    def code(self) -> list[str]:
        return sorted(self.order)

    def __len__(self):
        return len(self.order)

    def position(self, leaf: str) -> int:
        return self.order.index(leaf)

    def elements(self) -> list[ClopenSet]:
        """The order-prefixes P_1 ⊂ P_2 ⊂ ... ⊂ P_n = X."""
        return [ClopenSet(self.order[: j + 1]) for j in range(len(self.order))]

    def __str__(self):
        return "(" + ",".join(w or "e" for w in self.order) + ")"

    def to_json(self) -> list[str]:
        return list(self.order)

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "ChainApprox":
        return cls(data)


def root(c: ChainApprox) -> str:
    return c.order[0]


# -- refinement -------------------------------------------------------------


def refine_chain(c: ChainApprox, leaf: str, first_child: str, insert_pos: int) -> ChainApprox:
    """Split ``leaf``: ``first_child`` takes its place, the sibling lands at ``insert_pos``.

    Positions are 1-based in the resulting order, and the sibling must come
    after ``first_child``.
    """
    if leaf not in c.order:
        raise ContractError(f"{leaf!r} is not a leaf of the chain")
    if first_child not in (leaf + "0", leaf + "1"):
        raise ContractError(f"{first_child!r} is not a child of {leaf!r}")
    pos = c.position(leaf) + 1
    if not pos < insert_pos <= len(c) + 1:
        raise ContractError(f"insert position {insert_pos} must lie in ({pos}, {len(c) + 1}]")
    other = leaf + ("1" if first_child.endswith("0") else "0")
    order = list(c.order)
    order[pos - 1] = first_child
    order.insert(insert_pos - 1, other)
    return ChainApprox(order)


def project_chain(c: ChainApprox, coarse: Iterable[str]) -> ChainApprox:
    """Restrict the chain to a coarser code, keeping first occurrences."""
    coarse = list(coarse)
    out: list[str] = []
    for w in c.order:
        owners = [u for u in coarse if w.startswith(u)]
        if len(owners) != 1:
            raise ContractError(f"{coarse} is not a coarsening of the chain's code")
        if owners[0] not in out:
            out.append(owners[0])
    return ChainApprox(out)


def _first_below(c: ChainApprox) -> dict[str, int]:
    """Map every prefix of a leaf to the least position of a leaf extending it (cached)."""
    try:
        return c.__dict__["_first_below"]
    except KeyError:
        first: dict[str, int] = {}
        for j, leaf in enumerate(c.order):
            for i in range(len(leaf) + 1):
                first.setdefault(leaf[:i], j)
        object.__setattr__(c, "_first_below", first)
        return first


def refine_to(c: ChainApprox, words: Iterable[str]) -> ChainApprox:
    """Refine until every given word is a union of leaves.

    Each split keeps the 0-child in place and puts the 1-child directly
    after it, so inside an original leaf the new leaves appear in
    lexicographic order.
    """
    # a word that is no prefix of any leaf lies strictly inside a leaf (the code is complete)
    first = _first_below(c)
    targets = [w for w in words if w not in first]
    if not targets:
        return c
    split = {t[:i] for t in targets for i in range(len(t))}
    order = list(c.order)
    i = 0
    while i < len(order):
        u = order[i]
        if u in split:
            order[i : i + 1] = [u + "0", u + "1"]
        else:
            i += 1
    return ChainApprox._trusted(order)


def _part_index(alpha) -> dict[str, int]:
    """Map each cylinder of each part to the part's index, cached on the partition."""
    cache = getattr(alpha, "__dict__", None)
    if cache is not None and "_part_index" in cache:
        return cache["_part_index"]
    index = {w: i for i, p in enumerate(alpha) for w in p.cylinders}
    if cache is not None:
        cache["_part_index"] = index
    return index


def _words(x) -> Iterable[str]:
    if isinstance(x, ClopenSet):
        return x.cylinders
    return _part_index(x).keys()


# -- induced orders ---------------------------------------------------------


def hull_min(c: ChainApprox, d: ClopenSet) -> frozenset[str]:
    """Leaves of the least chain element meeting ``d``."""
    if d.is_empty():
        raise ContractError("hull_min of the empty set")
    first = _first_below(c)
    j = len(c.order)
    for u in d.cylinders:
        # [u] meets the leaves extending u, or the single leaf that u extends
        at = first.get(u)
        if at is None:
            at = next(first[u[:i]] for i in range(len(u), -1, -1) if u[:i] in first)
        if at < j:
            j = at
    return frozenset(c.order[: j + 1])


def hull_max(c: ChainApprox, d: ClopenSet) -> frozenset[str]:
    """Leaves of the greatest chain element contained in ``d``."""
    if not d.contains_word(c.order[0]):
        raise ContractError("hull_max needs the root leaf inside D")
    j = 0
    while j < len(c.order) and d.contains_word(c.order[j]):
        j += 1
    return frozenset(c.order[:j])


def _touch_order(c: ChainApprox, parts: Sequence[ClopenSet]) -> list[int]:
    """Indices of ``parts`` in order of first contact; c must be fine enough."""
    owner = _part_index(parts)
    seen: list[int] = []
    k = len(parts)
    for leaf in c.order:
        i = owner.get(leaf)
        if i is None:
            # the parts form a prefix code, so at most one proper prefix is a cylinder
            for j in range(len(leaf) - 1, -1, -1):
                i = owner.get(leaf[:j])
                if i is not None:
                    break
            else:
                raise ContractError(f"leaf {leaf!r} lies in no part")
        if i not in seen:
            seen.append(i)
            if len(seen) == k:
                break
    return seen


def induced_order(c: ChainApprox, alpha: UnorderedPartition | OrderedPartition) -> OrderedPartition:
    """t*_c: list the parts in the order in which the chain first reaches them."""
    c = refine_to(c, _words(alpha))
    return OrderedPartition._trusted(alpha[i] for i in _touch_order(c, alpha))


def induced_order_by_hulls(c: ChainApprox, alpha: UnorderedPartition | OrderedPartition) -> OrderedPartition:
    """The same order, read off the inclusions between least meeting elements."""
    c = refine_to(c, _words(alpha))
    hulls = [hull_min(c, p) for p in alpha]

    def cmp(i, j):
        hi, hj = hulls[i], hulls[j]
        if hi == hj:
            return 0
        if hi <= hj:
            return -1
        if hj <= hi:
            return 1
        raise AssertionError("chain elements are not nested")

    ranked = sorted(range(len(alpha)), key=cmp_to_key(cmp))
    return OrderedPartition._trusted(alpha[i] for i in ranked)


def entry_points(c: ChainApprox, alpha: OrderedPartition | UnorderedPartition) -> list[str]:
    """First leaf reached in each part, listed in induced order."""
    c = refine_to(c, _words(alpha))
    out = []
    for p in induced_order(c, alpha):
        out.append(next(w for w in c.order if p.contains_word(w)))
    return out


def theta(c: ChainApprox, beta: OrderedPartition) -> Permutation:
    """The beta-ratio: the permutation sigma with sigma(beta) = t*_c(beta)."""
    return solve_permutation(beta, induced_order(c, beta))


def in_neighborhood(c: ChainApprox, alpha: OrderedPartition) -> bool:
    """Membership of the chain in the basic clopen set U_alpha."""
    return induced_order(c, alpha) == alpha


def in_vietoris_neighborhood(c: ChainApprox, alpha: OrderedPartition) -> bool:
    """U_alpha membership evaluated directly from the Vietoris basic sets.

    U_alpha = <U_1, ..., U_n> with U_j = <A_1, ..., A_j>: every chain element
    must lie in some U_j, and every U_j must contain a chain element.  Sets
    are encoded as bitmasks over leaf positions of a common refinement.
    """
    c = refine_to(c, _words(alpha))
    k = len(alpha)
    cylinder_part = _part_index(alpha)
    part_masks = [0] * k
    owner = []
    for pos, leaf in enumerate(c.order):
        for cut in range(len(leaf), -1, -1):
            i = cylinder_part.get(leaf[:cut])
            if i is not None:
                break
        else:
            raise ContractError(f"leaf {leaf!r} lies in no part")
        part_masks[i] |= 1 << pos
        owner.append(i)
    unions = []
    acc = 0
    for mask in part_masks:
        acc |= mask
        unions.append(acc)
    hit = [False] * k
    met = 0  # bit l set when the current element meets A_{l+1}
    for j in range(len(c.order)):
        element = (1 << (j + 1)) - 1
        met |= 1 << owner[j]
        found = False
        for i in range(k):
            first = (1 << (i + 1)) - 1
            # element lies in <A_1, ..., A_{i+1}>: inside their union and meeting each
            if element & ~unions[i] == 0 and met & first == first:
                hit[i] = found = True
        if not found:
            return False
    return all(hit)


# -- the group action -------------------------------------------------------


def act_chain(g: PrefixMap, c: ChainApprox) -> ChainApprox:
    """Transport the chain along g, leaf by leaf."""
    c = refine_to(c, g.domain_code)
    return ChainApprox._trusted(g(w) for w in c.order)


def chain_key(c: ChainApprox, level: Iterable[str]) -> ChainApprox:
    """Canonical comparison form: refine to ``level`` and project back to it."""
    return project_chain(refine_to(c, level), level)


def all_chains(code: Sequence[str]):
    from itertools import permutations

    for order in permutations(code):
        yield ChainApprox(order)


def random_chain(rng, code: Sequence[str]) -> ChainApprox:
    order = list(code)
    rng.shuffle(order)
    return ChainApprox(order)
