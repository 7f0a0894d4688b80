"""Exhaustive search for the dual Ramsey property of set partitions.

For a coloring of the k-block partitions of {1..N}, an m-block partition eta
is *monochromatic* when every k-block coarsening of eta has the same color.
``verify_dr(N, k, m, r)`` decides whether every r-coloring has a
monochromatic eta; the search looks for a *bad* coloring (none) by
backtracking over partitions in lexicographic RGS order and stops a branch
as soon as a fully colored coarsening family is monochromatic.

Outcomes carry certificates that ``maxchains.certcheck`` verifies without
touching this module.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterator

from .cantor import (
    ClopenSet,
    ContractError,
    OrderedPartition,
    PrefixMap,
    UnorderedPartition,
    homogeneity_witness,
)
from .certcheck import check_dr_certificate  # re-exported; the checker is independent of this module
from .chains import ChainApprox, induced_order, refine_to
from .partitions import Coloring, SetPartition, amalgamate_rgs, encode, rgs_list
from .symbolic import SymbolConfig, Table, bullet, tilde

log = logging.getLogger(__name__)

BUDGET_ENV = "MAXCHAINS_BUDGET"
DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(float(raw)) if raw else DEFAULT_BUDGET


def find_monochromatic(col: Coloring, m: int) -> tuple[SetPartition, object] | None:
    """Lexicographically least m-block eta whose k-coarsenings share one color."""
    n, k = col.n, col.k
    if not k <= m <= n:
        raise ContractError(f"need k <= m <= N, got k={k}, m={m}, N={n}")
    taus = rgs_list(m, k)
    for eta in rgs_list(n, m):
        colors = {col.colors[amalgamate_rgs(eta, tau)] for tau in taus}
        if len(colors) == 1:
            return SetPartition.from_rgs(eta), colors.pop()
    return None


# -- the search -------------------------------------------------------------


@lru_cache(maxsize=64)
def _problem(n: int, k: int, m: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[tuple[int, ...], ...], ...], tuple]:
    """Partitions, and for each index i the coarsening families completed at i."""
    parts = rgs_list(n, k)
    index = {p: i for i, p in enumerate(parts)}
    closing: list[list[tuple[int, ...]]] = [[] for _ in parts]
    etas = []
    for eta in rgs_list(n, m):
        family = tuple(sorted({index[amalgamate_rgs(eta, tau)] for tau in rgs_list(m, k)}))
        closing[family[-1]].append(family)
        etas.append((eta, family))
    return parts, tuple(tuple(c) for c in closing), tuple(etas)


@dataclass
class ShardResult:
    prefix: tuple[int, ...]
    nodes: int
    exhausted: bool  # hit the node cap before finishing
    bad: tuple[int, ...] | None
    leaves: list[tuple[tuple[int, ...], int]] = field(default_factory=list)  # (color prefix, eta index)


def _search_shard(n: int, k: int, m: int, r: int, prefix: tuple[int, ...], pruned: bool, cap: int, record: bool) -> ShardResult:
    parts, closing, etas = _problem(n, k, m)
    eta_index = {fam: i for i, (_, fam) in enumerate(etas)}
    size = len(parts)
    colors = list(prefix) + [0] * (size - len(prefix))
    res = ShardResult(prefix, 0, False, None)

    def conflict(i: int) -> tuple[int, ...] | None:
        for fam in closing[i]:
            c0 = colors[fam[0]]
            if all(colors[j] == c0 for j in fam):
                return fam
        return None

    # a prefix handed over by the sharding step must itself be conflict-free
    for i in range(len(prefix)):
        fam = conflict(i)
        if fam is not None:
            if record:
                res.leaves.append((tuple(colors[: i + 1]), eta_index[fam]))
            return res

    def rec(i: int, top: int) -> bool:
        if i == size:
            res.bad = tuple(colors)
            return True
        limit = min(top + 2, r) if pruned else r
        for c in range(limit):
            res.nodes += 1
            if res.nodes > cap:
                res.exhausted = True
                return True
            colors[i] = c
            fam = conflict(i)
            if fam is not None:
                if record:
                    res.leaves.append((tuple(colors[: i + 1]), eta_index[fam]))
                continue
            if rec(i + 1, max(top, c)):
                return True
        return False

    rec(len(prefix), max(prefix, default=-1))
    return res


def _shard_prefixes(size: int, r: int, pruned: bool, depth: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for _ in range(min(depth, size)):
        nxt = []
        for p in out:
            limit = min(max(p, default=-1) + 2, r) if pruned else r
            nxt.extend(p + (c,) for c in range(limit))
        out = nxt
    return out


@dataclass
class DRResult:
    """Outcome of one decision: True, False, or None when the budget ran out."""

    query: dict
    holds: bool | None
    nodes: int
    bad_coloring: Coloring | None = None
    certificate: dict | None = None

    @property
    def status(self) -> str:
        return {True: "holds", False: "fails", None: "unknown"}[self.holds]


def _run_shards(n, k, m, r, pruned, budget, workers, record, shard_depth):
    parts, _, _ = _problem(n, k, m)
    prefixes = _shard_prefixes(len(parts), r, pruned, shard_depth if workers > 1 else 0)
    args = [(n, k, m, r, p, pruned, budget, record) for p in prefixes]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_shard, *zip(*args)))
    else:
        results = []
        total = 0
        for a in args:
            res = _search_shard(*a[:6], budget - total, a[7])
            results.append(res)
            total += res.nodes
            if res.bad is not None or res.exhausted or total > budget:
                break
    # reduce in shard order, exactly as a sequential run would have seen them
    total = 0
    leaves: list = []
    for res in results:
        total += res.nodes
        leaves.extend(res.leaves)
        if res.exhausted or total > budget:
            return None, total, None, leaves
        if res.bad is not None:
            return False, total, res.bad, leaves
    return True, total, None, leaves


def verify_dr(
    n: int,
    k: int,
    m: int,
    r: int,
    *,
    budget: int | None = None,
    workers: int = 1,
    pruned: bool = True,
    certify: bool = True,
    shard_depth: int = 3,
) -> DRResult:
    """Does every r-coloring of Pi~(N, k) have a monochromatic eta in Pi(N, m)?"""
    if not (1 <= k <= m) or r < 1 or n < 1:
        raise ContractError(f"need 1 <= k <= m, r >= 1, got k={k}, m={m}, r={r}")
    budget = default_budget() if budget is None else budget
    query = {"N": n, "k": k, "m": m, "r": r}
    if m > n:
        # no m-partition exists, so every coloring is bad
        bad = {code: 0 for code in rgs_list(n, k)}
        col = Coloring(n, k, bad) if bad else None
        cert = lower_certificate(query, col) if col else {"kind": "lower_bound", "query": query, "coloring": {}, "trivial": True}
        return DRResult(query, False, 0, col, cert if certify else None)
    holds, nodes, bad, leaves = _run_shards(n, k, m, r, pruned, budget, workers, certify, shard_depth)
    if holds is None:
        return DRResult(query, None, nodes)
    if holds is False:
        parts, _, _ = _problem(n, k, m)
        col = Coloring(n, k, dict(zip(parts, bad)))
        return DRResult(query, False, nodes, col, lower_certificate(query, col) if certify else None)
    cert = None
    if certify:
        _, _, etas = _problem(n, k, m)
        cert = {
            "kind": "upper_witnessed",
            "query": query,
            "symmetry": "colors" if pruned else "none",
            "leaves": [[list(p), encode(etas[e][0])] for p, e in leaves],
        }
    return DRResult(query, True, nodes, None, cert)


def search_bad_coloring(n: int, k: int, m: int, r: int, **kw) -> Coloring | None:
    res = verify_dr(n, k, m, r, **kw)
    if res.holds is None:
        raise BudgetExceeded(f"budget exhausted after {res.nodes} nodes for {res.query}")
    return res.bad_coloring


def lower_certificate(query: dict, col: Coloring) -> dict:
    return {
        "kind": "lower_bound",
        "query": query,
        "coloring": {encode(code): col.colors[code] for code in rgs_list(col.n, col.k)},
    }


def witnessed_certificate(col: Coloring, m: int, r: int) -> dict | None:
    """Certificate that this particular coloring has a monochromatic eta."""
    found = find_monochromatic(col, m)
    if found is None:
        return None
    eta, color = found
    return {
        "kind": "witnessed",
        "query": {"N": col.n, "k": col.k, "m": m, "r": r},
        "coloring": {encode(code): col.colors[code] for code in rgs_list(col.n, col.k)},
        "eta": eta.encode(),
        "color": color,
    }


@dataclass
class DRNumber:
    query: dict
    value: int | None
    lower: int  # DR > lower is certified
    status: str  # "exact" | "lower_bound" | "unknown"
    upper_certificate: dict | None = None
    lower_certificate: dict | None = None
    transcript: list[dict] = field(default_factory=list)


def dr_number(
    k: int,
    m: int,
    r: int,
    n_max: int,
    *,
    budget: int | None = None,
    workers: int = 1,
    transcript_path: str | None = None,
    resume: bool = False,
) -> DRNumber:
    """Least N <= n_max with the dual Ramsey property, or a certified lower bound.

    Each decided N is appended to ``transcript_path`` as one JSON line; with
    ``resume`` set, lines already present are reused instead of recomputed.
    """
    if not 1 <= k <= m:
        raise ContractError("need 1 <= k <= m")
    query = {"k": k, "m": m, "r": r, "N_max": n_max}
    done: dict[int, dict] = {}
    if resume and transcript_path and os.path.exists(transcript_path):
        with open(transcript_path) as fh:
            for line in fh:
                rec = json.loads(line)
                if {key: rec["query"][key] for key in ("k", "m", "r")} == {"k": k, "m": m, "r": r}:
                    done[rec["query"]["N"]] = rec
    out = DRNumber(query, None, m - 1, "lower_bound")
    previous_lower = None
    for n in range(m, n_max + 1):
        if n in done:
            rec = done[n]
        else:
            res = verify_dr(n, k, m, r, budget=budget, workers=workers)
            rec = {"query": res.query, "status": res.status, "nodes": res.nodes, "certificate": res.certificate}
            if transcript_path:
                with open(transcript_path, "a") as fh:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
        out.transcript.append({"N": n, "status": rec["status"], "nodes": rec["nodes"]})
        log.info("DR(%d,%d,%d): N=%d %s after %d nodes", k, m, r, n, rec["status"], rec["nodes"])
        if rec["status"] == "unknown":
            out.status = "unknown" if out.lower < m else "lower_bound"
            out.lower_certificate = previous_lower
            return out
        if rec["status"] == "holds":
            out.value = n
            out.status = "exact"
            out.upper_certificate = rec["certificate"]
            out.lower_certificate = previous_lower
            return out
        out.lower = n
        previous_lower = rec["certificate"]
    out.lower_certificate = previous_lower
    return out


# -- the minimal-factor pipeline --------------------------------------------


def factor_coloring(omega: SymbolConfig, c0: ChainApprox, beta: OrderedPartition) -> Coloring:
    """Color gamma in Pi~(N, k) by the table pi_c0(omega)(beta_gamma)."""
    if induced_order(c0, beta) != beta:
        raise ContractError("beta must be sorted by the chain's induced order")
    k, n = omega.k, len(beta)
    om_t = tilde(omega, c0)
    colors = {}
    for gamma in rgs_list(n, k):
        colors[gamma] = om_t.table(amalgamated_cover(beta, gamma).unordered())
    return Coloring(n, k, colors)


def amalgamated_cover(alpha: OrderedPartition, gamma: tuple[int, ...] | SetPartition) -> OrderedPartition:
    """alpha_gamma: part j is the union of the A_i with i in block j of gamma."""
    code = gamma.rgs() if isinstance(gamma, SetPartition) else gamma
    if len(code) != len(alpha):
        raise ContractError("gamma must partition the index set of alpha")
    k = max(code) + 1
    groups: list[list[str]] = [[] for _ in range(k)]
    for part, j in zip(alpha, code):
        groups[j].extend(part.cylinders)
    return OrderedPartition(ClopenSet(g) for g in groups)


def sorted_refinement(c0: ChainApprox, alpha: OrderedPartition, n: int) -> OrderedPartition:
    """An n-part partition refining alpha and listed in c0's induced order."""
    m = len(alpha)
    if n < m:
        raise ContractError(f"cannot refine {m} parts into {n}")
    c = refine_to(c0, alpha.words())
    while True:
        groups = [[w for w in c.order if a.contains_word(w)] for a in induced_order(c, alpha)]
        if sum(len(g) for g in groups) >= n:
            break
        c = refine_to(c, [w + "0" for w in c.order])
    extra = n - m
    pieces: list[list[str]] = []
    for g in groups:
        take = min(extra, len(g) - 1)
        extra -= take
        pieces.extend([w] for w in g[:take])
        pieces.append(g[take:])
    return induced_order(c0, OrderedPartition(ClopenSet(p) for p in pieces))


@dataclass
class Extraction:
    table: Table
    g_alpha: PrefixMap
    eta: SetPartition
    beta: OrderedPartition


def extract_table(omega: SymbolConfig, c0: ChainApprox, alpha: OrderedPartition, n: int) -> Extraction | None:
    """Run the coloring/dual-Ramsey step for one alpha; None when no monochromatic eta exists at this N."""
    k, m = omega.k, len(alpha)
    if not k <= m <= n:
        raise ContractError(f"need k <= |alpha| <= N, got k={k}, |alpha|={m}, N={n}")
    beta = sorted_refinement(c0, alpha, n)
    col = factor_coloring(omega, c0, beta)
    found = find_monochromatic(col, m)
    if found is None:
        return None
    eta, table = found
    sorted_alpha = induced_order(c0, alpha)
    beta_eta = amalgamated_cover(beta, eta)
    g_alpha = homogeneity_witness(beta_eta, sorted_alpha)
    shifted = bullet(c0, g_alpha, tilde(omega, c0))
    for tau in rgs_list(m, k):
        xi = amalgamated_cover(sorted_alpha, tau).unordered()
        if shifted.table(xi) != table:
            raise AssertionError(f"extracted table fails at tau={encode(tau)}")
    return Extraction(table, g_alpha, eta, beta)


def adversarial_config(beta: OrderedPartition, bad: Coloring) -> SymbolConfig:
    """A configuration whose factor coloring on beta reproduces a given 2-coloring.

    Coarsenings of beta colored 1 get the constant table -1, everything else +1.
    """
    flagged = {amalgamated_cover(beta, code).unordered() for code, col in bad.colors.items() if col == 1}
    return SymbolConfig(bad.k, lambda b: -1 if b.unordered() in flagged else 1, "adversarial")


def iter_sorted_partitions(c0: ChainApprox, code: list[str], blocks_list) -> Iterator[OrderedPartition]:
    for blocks in blocks_list:
        yield induced_order(c0, UnorderedPartition(ClopenSet(code[j] for j in b) for b in blocks))


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True)
