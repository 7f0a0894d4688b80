"""Witness constructors for the dynamical properties of Homeo(X) on X and Phi(X).

Each constructor returns a concrete homeomorphism; ``certify_*`` wraps it
in a ``WitnessCertificate`` and ``check_witness`` re-verifies a certificate
from its serialized form using only set operations, the map action and the
Vietoris membership test.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .cantor import (
    ClopenSet,
    ContractError,
    OrderedPartition,
    PrefixMap,
    apply_clopen,
    complement,
    homogeneity_witness,
    is_subset,
    refine_code,
)
from .chains import ChainApprox, act_chain, induced_order, refine_to, root

KINDS = ("minimality", "extreme_proximality", "phi_minimality", "proximality", "incomparability")


@dataclass(frozen=True)
class WitnessCertificate:
    kind: str
    inputs: dict[str, Any]
    witness: PrefixMap
    evidence: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": self.inputs,
            "witness": self.witness.to_json(),
            "evidence": self.evidence,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "WitnessCertificate":
        return cls(data["kind"], data["inputs"], PrefixMap.from_json(data["witness"]), data.get("evidence", {}))


# -- constructors -----------------------------------------------------------


def point_cover_witness(x: str, u: ClopenSet) -> PrefixMap:
    """g whose image of ``u`` contains the cylinder of the point prefix ``x``."""
    if u.is_empty():
        raise ContractError("U must be nonempty")
    if u.contains_word(x):
        return PrefixMap.identity()
    if not x:
        raise ContractError("the point prefix must be nonempty when U is not X")
    a = ClopenSet([u.least()])
    target = ClopenSet([x])
    return homogeneity_witness(OrderedPartition([a, complement(a)]), OrderedPartition([target, complement(target)]))


def extreme_proximality_witness(f: ClopenSet, u: ClopenSet) -> PrefixMap:
    """g with g(F) inside U.

    When U reaches outside F, a cylinder A of U \\ F is chosen and g swaps
    A^c onto A, which pushes F inside A.  Otherwise F is sent onto a single
    cylinder of U.
    """
    if f.is_whole():
        raise ContractError("F = X cannot be compressed")
    if u.is_empty():
        raise ContractError("U must be nonempty")
    if is_subset(f, u):
        return PrefixMap.identity()
    room = u - f
    if not room.is_empty():
        a = ClopenSet([room.least()])
        return homogeneity_witness(OrderedPartition([complement(a), a]), OrderedPartition([a, complement(a)]))
    a = ClopenSet([u.least()])
    return homogeneity_witness(OrderedPartition([f, complement(f)]), OrderedPartition([a, complement(a)]))


def phi_minimality_witness(c: ChainApprox, alpha: OrderedPartition) -> PrefixMap:
    """g with g c in U_alpha: send the parts, in c's induced order, onto alpha in order."""
    return homogeneity_witness(induced_order(c, alpha), alpha)


def proximality_witness(c1: ChainApprox, c2: ChainApprox, alpha: OrderedPartition) -> PrefixMap:
    """A single g with both g c1 and g c2 in U_alpha.

    Builds the pullback partition (B_1, ..., B_n) = g^-1 alpha one part at a
    time: B_{k+1} takes the first leaf not yet used by each chain, i.e. the
    roots of the two chains restricted to the complement of B_1 ∪ ... ∪ B_k.
    The last part takes whatever is left.  The common code is refined until
    it has at least 2n - 1 leaves so the last part is never empty.
    """
    if c1 == c2:
        return phi_minimality_witness(c1, alpha)
    n = len(alpha)
    words = {w for w in c2.order} | {w for w in c1.order}
    r1, r2 = refine_to(c1, words), refine_to(c2, words)
    while len(r1) < 2 * n - 1:
        r1 = refine_to(r1, [w + "0" for w in r1.order])
        r2 = refine_to(r2, [w + "0" for w in r2.order])
    used: set[str] = set()
    parts: list[list[str]] = []
    for _ in range(n - 1):
        block = []
        for ch in (r1, r2):
            w = next(w for w in ch.order if w not in used)
            if w not in block:
                block.append(w)
        used.update(block)
        parts.append(block)
    parts.append([w for w in r1.order if w not in used])
    beta = OrderedPartition(ClopenSet(b) for b in parts)
    return homogeneity_witness(beta, alpha)


def incomparability_witness(c: ChainApprox, f: ClopenSet) -> tuple[PrefixMap, str, str]:
    """g fixing the root leaf pointwise, with F and gF incomparable.

    P is the root leaf, A = F \\ P and B = X \\ F; g is the identity on P and
    exchanges A and B.  Returns g together with a cylinder a ⊆ F \\ gF and a
    cylinder b ⊆ gF \\ F.
    """
    elements = c.elements()
    if f not in elements:
        raise ContractError(f"{f} is not an element of the chain")
    p = ClopenSet([root(c)])
    if f == p:
        raise ContractError("F is the root leaf; it cannot meet two parts")
    if f.is_whole():
        raise ContractError("F = X leaves no room outside F")
    a = f - p
    b = complement(f)
    g = homogeneity_witness(OrderedPartition([p, a, b]), OrderedPartition([p, b, a]))
    return g, a.least(), b.least()


# -- certificates -----------------------------------------------------------


def certify_minimality(x: str, u: ClopenSet) -> WitnessCertificate:
    return WitnessCertificate("minimality", {"x": x, "U": u.to_json()}, point_cover_witness(x, u))


def certify_extreme_proximality(f: ClopenSet, u: ClopenSet) -> WitnessCertificate:
    return WitnessCertificate("extreme_proximality", {"F": f.to_json(), "U": u.to_json()}, extreme_proximality_witness(f, u))


def certify_phi_minimality(c: ChainApprox, alpha: OrderedPartition) -> WitnessCertificate:
    return WitnessCertificate(
        "phi_minimality", {"chain": c.to_json(), "alpha": alpha.to_json()}, phi_minimality_witness(c, alpha)
    )


def certify_proximality(c1: ChainApprox, c2: ChainApprox, alpha: OrderedPartition) -> WitnessCertificate:
    return WitnessCertificate(
        "proximality",
        {"chain1": c1.to_json(), "chain2": c2.to_json(), "alpha": alpha.to_json()},
        proximality_witness(c1, c2, alpha),
    )


def certify_incomparability(c: ChainApprox, f: ClopenSet) -> WitnessCertificate:
    g, a, b = incomparability_witness(c, f)
    return WitnessCertificate("incomparability", {"chain": c.to_json(), "F": f.to_json()}, g, {"a": a, "b": b})


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _chain_in(c: ChainApprox, alpha: OrderedPartition) -> bool:
    # Vietoris form of U_alpha membership, evaluated on the chain elements.
    from .chains import in_vietoris_neighborhood

    return in_vietoris_neighborhood(c, alpha)


def check_witness(cert: WitnessCertificate | dict) -> Verdict:
    """Re-verify a certificate; malformed input yields a failing verdict."""
    try:
        if isinstance(cert, dict):
            cert = WitnessCertificate.from_dict(cert)
        return _check(cert)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        return Verdict(False, f"malformed certificate: {exc}")


def _check(cert: WitnessCertificate) -> Verdict:
    g, inp = cert.witness, cert.inputs
    if cert.kind == "minimality":
        x, u = inp["x"], ClopenSet(inp["U"])
        if u.is_empty():
            return Verdict(False, "U is empty")
        if not apply_clopen(g, u).contains_word(x):
            return Verdict(False, f"[{x}] is not inside g(U) = {apply_clopen(g, u)}")
        return Verdict(True)
    if cert.kind == "extreme_proximality":
        f, u = ClopenSet(inp["F"]), ClopenSet(inp["U"])
        if f.is_whole() or u.is_empty():
            return Verdict(False, "inputs violate F != X, U nonempty")
        image = apply_clopen(g, f)
        if not is_subset(image, u):
            return Verdict(False, f"g(F) = {image} is not inside U = {u}")
        return Verdict(True)
    if cert.kind == "phi_minimality":
        c, alpha = ChainApprox(inp["chain"]), OrderedPartition(inp["alpha"])
        if not _chain_in(act_chain(g, c), alpha):
            return Verdict(False, "g c is not in U_alpha")
        return Verdict(True)
    if cert.kind == "proximality":
        alpha = OrderedPartition(inp["alpha"])
        for key in ("chain1", "chain2"):
            gc = act_chain(g, ChainApprox(inp[key]))
            if not _chain_in(gc, alpha):
                return Verdict(False, f"g {key} is not in U_alpha")
        return Verdict(True)
    if cert.kind == "incomparability":
        c, f = ChainApprox(inp["chain"]), ClopenSet(inp["F"])
        a, b = cert.evidence["a"], cert.evidence["b"]
        if f not in c.elements():
            return Verdict(False, "F is not a chain element")
        gf = apply_clopen(g, f)
        if not (f.contains_word(a) and not gf.meets_word(a)):
            return Verdict(False, f"[{a}] is not inside F \\ gF")
        if not (gf.contains_word(b) and not f.meets_word(b)):
            return Verdict(False, f"[{b}] is not inside gF \\ F")
        rootleaf = c.order[0]
        for u, v in g.pairs:
            if (u.startswith(rootleaf) or rootleaf.startswith(u)) and u != v:
                return Verdict(False, "g moves points of the root leaf")
        return Verdict(True)
    return Verdict(False, f"unknown certificate kind {cert.kind!r}")


def leaf_split_code(c: ChainApprox, alpha: OrderedPartition) -> list[str]:
    """Common code on which both the chain and alpha are leaf-measurable."""
    return refine_code(c.code, alpha.words())
