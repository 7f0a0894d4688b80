"""Stand-alone checker for dual Ramsey certificates.

Deliberately shares no code with the search: partitions are regenerated here
by brute force over label strings, and coarsenings are recomputed from
scratch.
"""

from __future__ import annotations

from itertools import product

from .dynamics import Verdict


def _rgs(n: int, k: int) -> list[tuple[int, ...]]:
    out = []
    for labels in product(range(k), repeat=n):
        first_seen = []
        for x in labels:
            if x not in first_seen:
                first_seen.append(x)
        if len(first_seen) == k and first_seen == list(range(k)):
            out.append(labels)
    return out


def _key(code) -> str:
    return ".".join(map(str, code)) if any(d > 9 for d in code) else "".join(map(str, code))


def _parse(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(".")) if "." in text else tuple(int(ch) for ch in text)


def _coarsening_keys(eta: tuple[int, ...], m: int, k: int) -> set[str]:
    out = set()
    for tau in _rgs(m, k):
        merged = [tau[b] for b in eta]
        # relabel by first appearance
        relabel: dict[int, int] = {}
        out.add(_key(tuple(relabel.setdefault(x, len(relabel)) for x in merged)))
    return out


def _families(n: int, k: int, m: int) -> list[tuple[str, set[str]]]:
    return [(_key(eta), _coarsening_keys(eta, m, k)) for eta in _rgs(n, m)]


def check_dr_certificate(cert: dict) -> Verdict:
    try:
        kind = cert["kind"]
        q = cert["query"]
        n, k, m, r = int(q["N"]), int(q["k"]), int(q["m"]), int(q["r"])
    except (KeyError, TypeError, ValueError) as exc:
        return Verdict(False, f"malformed certificate: {exc}")
    if kind == "lower_bound":
        return _check_lower(cert, n, k, m, r)
    if kind == "witnessed":
        return _check_witnessed(cert, n, k, m)
    if kind == "upper_witnessed":
        return _check_upper(cert, n, k, m, r)
    return Verdict(False, f"unknown certificate kind {kind!r}")


def _coloring(cert: dict, n: int, k: int, r: int | None) -> dict[str, object] | Verdict:
    col = cert.get("coloring")
    if cert.get("trivial") and m_exceeds(cert):
        return {}
    if not col:
        return Verdict(False, "empty coloring payload")
    keys = {_key(p) for p in _rgs(n, k)}
    if set(col) != keys:
        return Verdict(False, "coloring is not total on the k-partitions of N")
    if r is not None and any(not isinstance(v, int) or not 0 <= v < r for v in col.values()):
        return Verdict(False, f"coloring uses colors outside 0..{r - 1}")
    return col


def m_exceeds(cert: dict) -> bool:
    q = cert["query"]
    return int(q["m"]) > int(q["N"])


def _check_lower(cert: dict, n: int, k: int, m: int, r: int) -> Verdict:
    col = _coloring(cert, n, k, r)
    if isinstance(col, Verdict):
        return col
    for eta, keys in _families(n, k, m):
        if len({col[x] for x in keys}) == 1:
            return Verdict(False, f"eta={eta} is monochromatic")
    return Verdict(True)


def _check_witnessed(cert: dict, n: int, k: int, m: int) -> Verdict:
    col = _coloring(cert, n, k, None)
    if isinstance(col, Verdict):
        return col
    eta = _parse(cert["eta"])
    if eta not in set(_rgs(n, m)):
        return Verdict(False, "eta is not an m-partition of N")
    colors = {col[x] for x in _coarsening_keys(eta, m, k)}
    if colors != {cert["color"]}:
        return Verdict(False, f"coarsenings of eta carry colors {sorted(map(str, colors))}")
    return Verdict(True)


def _check_upper(cert: dict, n: int, k: int, m: int, r: int) -> Verdict:
    parts = [_key(p) for p in _rgs(n, k)]
    index = {p: i for i, p in enumerate(parts)}
    fams = {eta: sorted(index[x] for x in keys) for eta, keys in _families(n, k, m)}
    symmetric = cert.get("symmetry") == "colors"
    leaves = {}
    for prefix, eta in cert.get("leaves", []):
        leaves[tuple(prefix)] = eta
    if not leaves and parts:
        return Verdict(False, "empty transcript")

    # every leaf must exhibit a fully colored monochromatic family
    for prefix, eta in leaves.items():
        fam = fams.get(eta)
        if fam is None:
            return Verdict(False, f"{eta} is not an m-partition")
        if fam[-1] >= len(prefix) or len({prefix[i] for i in fam}) != 1:
            return Verdict(False, f"leaf {prefix} does not make {eta} monochromatic")
        if any(not 0 <= c < r for c in prefix):
            return Verdict(False, f"leaf {prefix} uses colors outside 0..{r - 1}")

    # the leaves must cover every coloring (every canonical one, under color symmetry)
    stack = [()]
    while stack:
        prefix = stack.pop()
        if prefix in leaves:
            continue
        if len(prefix) == len(parts):
            return Verdict(False, f"coloring {prefix} is not covered")
        limit = min(max(prefix, default=-1) + 2, r) if symmetric else r
        stack.extend(prefix + (c,) for c in range(limit))
    return Verdict(True)
