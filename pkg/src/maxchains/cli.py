"""Command line driver.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
errors (unknown verbs or flags, malformed inputs).  Reports written to
``--out`` contain no timing data, so equal seeds and flags give equal bytes;
the wall-clock duration goes to stderr and to ``timing.json``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from typing import Any, Sequence

from . import certcheck, suites
from .cantor import (
    ClopenSet,
    ContractError,
    OrderedPartition,
    PrefixMap,
    apply_clopen,
    apply_partition,
    homogeneity_witness,
    join,
)
from .chains import ChainApprox, act_chain, entry_points, in_neighborhood, induced_order, theta
from .dual_ramsey import (
    BUDGET_ENV,
    adversarial_config,
    default_budget,
    dr_number,
    extract_table,
    sorted_refinement,
    verify_dr,
)
from .dynamics import (
    certify_extreme_proximality,
    certify_incomparability,
    certify_minimality,
    certify_phi_minimality,
    certify_proximality,
    check_witness,
)
from .partitions import (
    PartitionError,
    SetPartition,
    amalgamate,
    coarsenings,
    enumerate_partitions,
    is_refinement,
    naturally_order,
)
from .symbolic import Table, phi_T, phi_config, rho

log = logging.getLogger("maxchains")


class UsageError(Exception):
    pass


# -- argument syntax --------------------------------------------------------


def parse_word(text: str) -> str:
    text = text.strip()
    return "" if text in ("e", "X", "") else text


def parse_set(text: str) -> ClopenSet:
    """``"0,10"``; ``X`` is the whole space and ``-`` the empty set."""
    text = text.strip()
    if text == "-":
        return ClopenSet.empty()
    return ClopenSet(parse_word(w) for w in text.split(","))


def parse_partition(text: str) -> OrderedPartition:
    """Parts separated by ``|``, cylinders by commas: ``"0|10,11"``."""
    return OrderedPartition(parse_set(part) for part in text.split("|"))


def parse_chain(text: str) -> ChainApprox:
    return ChainApprox(parse_word(w) for w in text.split(","))


def parse_map(text: str) -> PrefixMap:
    """``"0->1,1->0"``; ``id`` is the identity."""
    if text.strip() == "id":
        return PrefixMap.identity()
    pairs = []
    for item in text.split(","):
        sep = "→" if "→" in item else "->"
        u, v = item.split(sep)
        pairs.append((parse_word(u), parse_word(v)))
    return PrefixMap(pairs)


def parse_budget(text: str) -> int:
    try:
        value = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def parse_blocks(text: str) -> SetPartition:
    """Either an RGS such as ``0010`` or blocks such as ``1,2,4/3``."""
    if "/" in text or "," in text:
        return SetPartition.of(*[[int(x) for x in b.split(",")] for b in text.split("/")])
    return SetPartition.from_rgs(text)


# -- output -----------------------------------------------------------------


class Run:
    """Collects results and certificates for one invocation."""

    def __init__(self, argv: Sequence[str], args: argparse.Namespace):
        self.argv = list(argv)
        self.args = args
        self.out = getattr(args, "out", None)
        self.passed = 0
        self.failed = 0
        self.results: list[dict] = []
        self.certificates: list[str] = []
        self.reproduce: list[str] = []

    def record(self, ok: bool, **payload: Any) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
        self.results.append({"ok": ok, **payload})

    def certificate(self, name: str, payload: dict) -> str | None:
        if not self.out:
            return None
        path = os.path.join("certificates", f"{name}.json")
        os.makedirs(os.path.join(self.out, "certificates"), exist_ok=True)
        with open(os.path.join(self.out, path), "w") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False) + "\n")
        self.certificates.append(path)
        return path

    def report(self) -> dict:
        return {
            "command": self.argv,
            "seed": getattr(self.args, "seed", None),
            "passed": self.passed,
            "failed": self.failed,
            "results": self.results,
            "certificates": self.certificates,
            "reproduce": self.reproduce,
        }

    def finish(self, started: float) -> int:
        report = self.report()
        elapsed = time.perf_counter() - started
        if self.out:
            os.makedirs(self.out, exist_ok=True)
            with open(os.path.join(self.out, "report.json"), "w") as fh:
                fh.write(json.dumps(report, sort_keys=True, indent=1, ensure_ascii=False) + "\n")
            with open(os.path.join(self.out, "timing.json"), "w") as fh:
                fh.write(json.dumps({"command": self.argv, "seconds": round(elapsed, 3)}) + "\n")
        print(f"passed={self.passed} failed={self.failed} seconds={elapsed:.2f}", file=sys.stderr)
        return 0 if self.failed == 0 else 1


def emit(obj: Any) -> None:
    print(json.dumps(obj, sort_keys=True, ensure_ascii=False))


# -- verbs ------------------------------------------------------------------


def cmd_partitions(run: Run, a) -> None:
    if a.action == "enumerate":
        for p in enumerate_partitions(a.n, a.k, naturally_ordered=not a.all_orders):
            print(p.encode() if not a.all_orders else str(p))
    elif a.action == "natural":
        p = naturally_order(parse_blocks(a.items[0]))
        print(p)
    elif a.action == "amalgamate":
        print(amalgamate(parse_blocks(a.items[0]), parse_blocks(a.items[1])))
    elif a.action == "coarsenings":
        for p in sorted(coarsenings(parse_blocks(a.items[0]), a.k), key=SetPartition.rgs):
            print(p.encode())
    elif a.action == "refines":
        value = is_refinement(parse_blocks(a.items[0]), parse_blocks(a.items[1]))
        print("true" if value else "false")
    run.record(True, verb="partitions", action=a.action)


def cmd_cantor(run: Run, a) -> None:
    if a.action == "compose":
        print(parse_map(a.items[0]) * parse_map(a.items[1]))
    elif a.action == "invert":
        print(parse_map(a.items[0]).inverse())
    elif a.action == "apply":
        print(apply_clopen(parse_map(a.items[0]), parse_set(a.items[1])))
    elif a.action == "apply-partition":
        print(apply_partition(parse_map(a.items[0]), parse_partition(a.items[1])))
    elif a.action == "join":
        print(join(parse_partition(a.items[0]), parse_partition(a.items[1])))
    elif a.action == "witness":
        alpha, beta = parse_partition(a.items[0]), parse_partition(a.items[1])
        g = homogeneity_witness(alpha, beta)
        ok = apply_partition(g, alpha) == beta
        print(g)
        run.record(ok, verb="cantor", action="witness", witness=g.to_json())
        return
    run.record(True, verb="cantor", action=a.action)


def cmd_chains(run: Run, a) -> None:
    c = parse_chain(a.chain)
    if a.action == "induced":
        print(induced_order(c, parse_partition(a.alpha)))
    elif a.action == "theta":
        print(theta(c, parse_partition(a.alpha)))
    elif a.action == "entry":
        print(",".join(w or "e" for w in entry_points(c, parse_partition(a.alpha))))
    elif a.action == "neighborhood":
        print("true" if in_neighborhood(c, parse_partition(a.alpha)) else "false")
    elif a.action == "act":
        print(act_chain(parse_map(a.map), c))
    elif a.action == "elements":
        for e in c.elements():
            print(e)
    run.record(True, verb="chains", action=a.action)


def cmd_symbolic(run: Run, a) -> None:
    c = parse_chain(a.chain)
    if a.action == "phi":
        table = Table.parse(a.table)
        print(f"{phi_T(table, c, parse_partition(a.beta)):+d}")
    elif a.action == "rho":
        print(rho(c, parse_map(a.map), parse_partition(a.beta).unordered()))
    run.record(True, verb="symbolic", action=a.action)


def cmd_dynamics(run: Run, a) -> None:
    if a.action == "check":
        verdict = _load_and_check(a.file, check_witness)
        emit({"ok": verdict.ok, "reason": verdict.reason})
        run.record(verdict.ok, verb="dynamics check", file=a.file, reason=verdict.reason)
        return
    needed = {"phi-minimality": ["chain"], "proximality": ["chain", "chain2"], "incomparability": ["chain"]}
    missing = [f"--{name}" for name in needed.get(a.action, []) if getattr(a, name) is None]
    if missing:
        raise UsageError(f"{a.action} needs {' '.join(missing)}")
    if a.action == "minimality":
        cert = certify_minimality(parse_word(a.x), parse_set(a.U))
    elif a.action == "extreme-proximality":
        cert = certify_extreme_proximality(parse_set(a.F), parse_set(a.U))
    elif a.action == "phi-minimality":
        cert = certify_phi_minimality(parse_chain(a.chain), parse_partition(a.alpha))
    elif a.action == "proximality":
        cert = certify_proximality(parse_chain(a.chain), parse_chain(a.chain2), parse_partition(a.alpha))
    else:
        cert = certify_incomparability(parse_chain(a.chain), parse_set(a.F))
    verdict = check_witness(cert.to_dict())
    emit(cert.to_dict())
    path = run.certificate(cert.kind, cert.to_dict())
    run.record(verdict.ok, verb="dynamics", kind=cert.kind, certificate=path, reason=verdict.reason)


def _load_and_check(path: str, checker):
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except ValueError as exc:
        from .dynamics import Verdict

        return Verdict(False, f"not JSON: {exc}")
    return checker(data)


def cmd_ramsey(run: Run, a) -> None:
    budget = a.budget if a.budget is not None else default_budget()
    if a.action == "check":
        verdict = _load_and_check(a.file, certcheck.check_dr_certificate)
        emit({"ok": verdict.ok, "reason": verdict.reason})
        run.record(verdict.ok, verb="ramsey check", file=a.file, reason=verdict.reason)
        return
    if a.action in ("verify", "lower"):
        res = verify_dr(a.N, a.k, a.m, a.r, budget=budget, workers=a.workers, pruned=not a.unpruned)
        emit({"query": res.query, "status": res.status, "nodes": res.nodes})
        ok = True
        path = None
        if res.certificate is not None:
            ok = certcheck.check_dr_certificate(res.certificate).ok
            if a.action == "verify" or res.certificate["kind"] == "lower_bound":
                path = run.certificate(f"dr_{a.N}_{a.k}_{a.m}_{a.r}_{res.certificate['kind']}", res.certificate)
        if a.action == "lower" and res.bad_coloring is not None:
            print(res.bad_coloring.to_json())
        run.record(ok, verb=f"ramsey {a.action}", status=res.status, nodes=res.nodes, certificate=path)
        return
    transcript = os.path.join(a.out, "transcript.jsonl") if a.out else a.transcript
    if a.out and not a.resume and os.path.exists(transcript):
        os.remove(transcript)
    if a.out:
        os.makedirs(a.out, exist_ok=True)
    out = dr_number(a.k, a.m, a.r, a.n_max, budget=budget, workers=a.workers, transcript_path=transcript, resume=a.resume)
    ok = True
    paths = {}
    for label, cert in (("upper", out.upper_certificate), ("lower", out.lower_certificate)):
        if cert is not None:
            ok = ok and certcheck.check_dr_certificate(cert).ok
            paths[label] = run.certificate(f"dr_{a.k}_{a.m}_{a.r}_{label}", cert)
    emit({"query": out.query, "status": out.status, "value": out.value, "lower": out.lower, "transcript": out.transcript})
    run.record(ok, verb="ramsey number", status=out.status, value=out.value, lower=out.lower, certificates=paths)


def cmd_factor(run: Run, a) -> None:
    rng = random.Random(a.seed)
    if a.action == "roundtrip":
        table = Table.parse(a.table) if a.table else Table.random(rng, a.k)
        if table.k != a.k:
            raise UsageError(f"--table is a table on S_{table.k}, not S_{a.k}")
        for i in range(a.cases):
            c0 = suites.random_chain_on(rng, a.max_leaves)
            m = rng.randint(a.k, a.k + 2)
            alpha = suites.random_partition(rng, m, max(a.max_leaves, m)).as_ordered()
            got = extract_table(phi_config(table, c0), c0, alpha, len(alpha))
            ok = got is not None and got.table == table
            run.record(
                ok,
                case=i,
                chain=c0.to_json(),
                alpha=alpha.to_json(),
                recovered=None if got is None else got.table.to_json(),
                g_alpha=None if got is None else got.g_alpha.to_json(),
            )
            if not ok:
                run.reproduce.append(f"maxchains factor roundtrip -k {a.k} --table {a.table} --seed {a.seed}")
        emit({"table": table.to_json(), "cases": a.cases, "recovered": run.failed == 0})
    else:
        bad = verify_dr(5, 2, 3, 2).bad_coloring
        for i in range(a.cases):
            c0 = suites.random_chain_on(rng, a.max_leaves)
            alpha = suites.random_partition(rng, 3, max(a.max_leaves, 3)).as_ordered()
            omega = adversarial_config(sorted_refinement(c0, alpha, 5), bad)
            got = extract_table(omega, c0, alpha, 5)
            run.record(got is None, case=i, chain=c0.to_json(), alpha=alpha.to_json())
        emit({"adversarial_cases": a.cases, "all_empty": run.failed == 0})


def cmd_verify_suite(run: Run, a) -> None:
    names = a.only or list(suites.SUITES)
    for name in names:
        t0 = time.perf_counter()
        res = suites.run_suite(name, a.seed, a.max_leaves, a.samples)
        print(f"{name}: checked={res.checked} failed={res.failed} ({time.perf_counter() - t0:.1f}s)", file=sys.stderr)
        payload = res.to_dict()
        payload.pop("ok")
        run.record(res.ok, suite=payload.pop("name"), **payload)
        if not res.ok:
            run.reproduce.append(
                f"maxchains verify-suite --only {name} --seed {a.seed} --max-leaves {a.max_leaves} --samples {a.samples}"
            )
    if a.out:
        for kind, cert in _sample_certificates():
            run.certificate(kind, cert)


def _sample_certificates() -> list[tuple[str, dict]]:
    """A fixed set of certificates written alongside every suite report."""
    c = ChainApprox(["10", "00", "11", "01"])
    alpha = OrderedPartition.of(["0"], ["1"])
    out = [
        ("minimality", certify_minimality("01", ClopenSet(["1"])).to_dict()),
        ("extreme_proximality", certify_extreme_proximality(ClopenSet(["0"]), ClopenSet(["11"])).to_dict()),
        ("phi_minimality", certify_phi_minimality(c, alpha).to_dict()),
        ("proximality", certify_proximality(c, ChainApprox(["01", "11", "00", "10"]), alpha).to_dict()),
        ("incomparability", certify_incomparability(ChainApprox(["00", "01", "1"]), ClopenSet(["0"])).to_dict()),
    ]
    for n in (5, 6):
        res = verify_dr(n, 2, 3, 2)
        out.append((f"dr_{n}_2_3_2_{res.certificate['kind']}", res.certificate))
    return out


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed of the single random generator")
    common.add_argument("--out", help="directory for report.json and certificates")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="maxchains", description="Cantor-set chains, symbolic systems and dual Ramsey search.")
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("partitions", parents=[common], help="set partitions of {1..n}")
    sp.add_argument("action", choices=["enumerate", "natural", "amalgamate", "coarsenings", "refines"])
    sp.add_argument("items", nargs="*", help="partitions as RGS (0010) or blocks (1,2,4/3)")
    sp.add_argument("-n", type=int, default=3)
    sp.add_argument("-k", type=int, default=2)
    sp.add_argument("--all-orders", action="store_true", help="emit every block order")

    sp = sub.add_parser("cantor", parents=[common], help="clopen sets and prefix maps")
    sp.add_argument("action", choices=["compose", "invert", "apply", "apply-partition", "join", "witness"])
    sp.add_argument("items", nargs="+", help='maps "0->1,1->0", sets "0,10", partitions "0|1"')

    sp = sub.add_parser("chains", parents=[common], help="chain traces and induced orders")
    sp.add_argument("action", choices=["induced", "theta", "entry", "neighborhood", "act", "elements"])
    sp.add_argument("--chain", required=True, help="leaf order, e.g. 10,00,11,01")
    sp.add_argument("--alpha", default="X")
    sp.add_argument("--map", default="id")

    sp = sub.add_parser("symbolic", parents=[common], help="phi_T and the cocycle")
    sp.add_argument("action", choices=["phi", "rho"])
    sp.add_argument("--chain", required=True)
    sp.add_argument("--beta", required=True)
    sp.add_argument("--table", default="id:+1,swap:-1")
    sp.add_argument("--map", default="id")

    sp = sub.add_parser("dynamics", parents=[common], help="witness constructors and checker")
    sp.add_argument(
        "action", choices=["minimality", "extreme-proximality", "phi-minimality", "proximality", "incomparability", "check"]
    )
    sp.add_argument("file", nargs="?", help="certificate to check")
    sp.add_argument("--x", default="")
    sp.add_argument("--U", default="X")
    sp.add_argument("--F", default="-")
    sp.add_argument("--chain")
    sp.add_argument("--chain2")
    sp.add_argument("--alpha", default="X")

    sp = sub.add_parser("ramsey", parents=[common], help="dual Ramsey search and certificates")
    sp.add_argument("action", choices=["verify", "lower", "number", "check"])
    sp.add_argument("file", nargs="?", help="certificate to check")
    sp.add_argument("-N", type=int, default=3)
    sp.add_argument("-k", type=int, default=2)
    sp.add_argument("-m", type=int, default=3)
    sp.add_argument("-r", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--budget", type=parse_budget, help=f"node budget (default ${BUDGET_ENV} or 1e7)")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--unpruned", action="store_true", help="disable color-symmetry pruning")
    sp.add_argument("--transcript", help="JSONL transcript path for ramsey number")
    sp.add_argument("--resume", action="store_true")

    sp = sub.add_parser("factor", parents=[common], help="minimal-factor table extraction")
    sp.add_argument("action", choices=["roundtrip", "adversarial"])
    sp.add_argument("-k", type=int, default=2)
    sp.add_argument("--table", help='e.g. "id:+1,swap:-1" or "123:+1,132:-1,..."')
    sp.add_argument("--cases", type=int, default=20)
    sp.add_argument("--max-leaves", type=int, default=6)

    sp = sub.add_parser("verify-suite", parents=[common], help="run the invariant suites")
    sp.add_argument("--max-leaves", type=int, default=5)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--only", nargs="+", choices=suites.SUITES)
    return p


VERBS = {
    "partitions": cmd_partitions,
    "cantor": cmd_cantor,
    "chains": cmd_chains,
    "symbolic": cmd_symbolic,
    "dynamics": cmd_dynamics,
    "ramsey": cmd_ramsey,
    "factor": cmd_factor,
    "verify-suite": cmd_verify_suite,
}


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verb == "verify-suite" and args.out is None:
        # set here: --out comes from a shared parent, so set_defaults would leak to every verb
        args.out = "maxchains-out"
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    started = time.perf_counter()
    job = Run(argv, args)
    needs_file = args.verb in ("dynamics", "ramsey") and args.action == "check"
    if needs_file and not args.file:
        parser.print_usage(sys.stderr)
        print("maxchains: error: check needs a certificate file", file=sys.stderr)
        return 2
    try:
        VERBS[args.verb](job, args)
    except (UsageError, ContractError, PartitionError, ValueError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"maxchains: error: {exc}", file=sys.stderr)
        return 2
    return job.finish(started)


def main() -> None:
    sys.exit(run())
