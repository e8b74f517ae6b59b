"""Command-line interface.

Exit codes: 0 = pass, 1 = a checked claim is false, 2 = usage or precondition
error.  Results are canonical JSON on stdout (CSV only for enumeration
streams); timing goes to stderr so identical invocations produce identical
stdout bytes regardless of --workers.
"""

import argparse
import dataclasses
import json
import sys
import time

from . import acceptance
from .constructions import ConstructionSpec, RegistryEntry
from .enumeration import Enumeration, count_all
from .equivalence import canonical_form, min_orbit_sum
from .errors import ModsumError, ScaleGuardError
from .gfbound import epsilon_growth_check, eval_g, verify_magnitude_bound
from .structure import (
    check_dilated_powers_form,
    check_valuation_form,
    classify_pow2_plus2,
)
from .subsetsum import ResidueSet, compute_sumset, is_sumset_distinct, missing_residues
from .verify import THEOREM_DRIVERS, run_theorem

PASS, FAIL, USAGE_ERROR = 0, 1, 2


def _jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(status: str, payload, started: float) -> int:
    document = {"status": status, "payload": _jsonable(payload)}
    sys.stdout.write(json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n")
    sys.stderr.write(f"# elapsed-ms {int(1000 * (time.perf_counter() - started))}\n")
    return {"pass": PASS, "fail": FAIL}.get(status, USAGE_ERROR)


def _parse_set(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ModsumError(f"cannot parse element list {text!r}") from exc


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        values = list(range(int(lo), int(hi) + 1))
    else:
        values = [int(text)]
    if not values:
        raise ModsumError(f"empty range {text!r}")
    return values


def _residue_set(args) -> ResidueSet:
    return ResidueSet.make(args.modulus, _parse_set(args.set))


def _cmd_check(args, started: float) -> int:
    rset = _residue_set(args)
    distinct = is_sumset_distinct(rset)
    bitmap = compute_sumset(rset)
    payload = {
        "modulus": rset.modulus,
        "set": list(rset.elements),
        "sumset_distinct": distinct,
        "attained": bitmap.popcount,
        "missing": list(bitmap.missing()),
    }
    if distinct:
        pattern = missing_residues(rset)
        payload["total_sum"] = pattern.total_sum
        if pattern.singleton is not None:
            payload["decomposition"] = {
                "singleton": pattern.singleton,
                "pairs": [list(p) for p in pattern.pairs],
            }
    return _emit("pass", payload, started)


def _cmd_enumerate(args, started: float) -> int:
    mode = "canonical-only" if args.canonical else "all"
    if args.resume:
        run = Enumeration.from_checkpoint(args.resume, workers=args.workers, force=args.force)
    else:
        if args.n is None or args.modulus is None:
            raise ModsumError("enumerate needs --n and --modulus (or --resume FILE)")
        run = Enumeration(args.n, args.modulus, mode, workers=args.workers, force=args.force)

    if args.count_only and mode == "all" and not args.resume and not args.checkpoint:
        total = count_all(run.n, run.modulus, workers=args.workers, force=args.force)
        payload = {"n": run.n, "modulus": run.modulus, "mode": mode, "count": total}
        return _emit("pass", payload, started)

    if args.checkpoint and args.workers == 1:
        # shard-by-shard drive so a checkpoint lands after every shard
        sets = []
        while True:
            shard = run.next_shard()
            if shard is None:
                break
            sets.extend(shard)
            run.save(args.checkpoint)
    else:
        sets = list(run)
        if args.checkpoint:
            run.save(args.checkpoint)

    if args.csv:
        for rset in sets:
            sys.stdout.write(",".join(str(e) for e in rset.elements) + "\n")
        sys.stderr.write(f"# elapsed-ms {int(1000 * (time.perf_counter() - started))}\n")
        return PASS
    payload = {
        "n": run.n,
        "modulus": run.modulus,
        "mode": run.mode,
        "count": len(sets),
    }
    if not args.count_only:
        payload["sets"] = [list(s.elements) for s in sets]
    return _emit("pass", payload, started)


def _cmd_orbit(args, started: float) -> int:
    rset = _residue_set(args)
    descriptor = canonical_form(rset)
    payload = {
        "modulus": rset.modulus,
        "set": list(rset.elements),
        "canonical": list(descriptor.canonical.elements),
        "orbit_size": descriptor.orbit_size,
        "witness_lambda": descriptor.witness_lambda,
        "witness_signs": descriptor.witness_signs,
    }
    if args.min_sum:
        value, lam = min_orbit_sum(rset)
        payload["min_sum"] = {"value": value, "lambda": lam}
    return _emit("pass", payload, started)


def _cmd_construct(args, started: float) -> int:
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.k is not None:
        params["k"] = args.k
    if args.r is not None:
        params["r"] = args.r
    if args.p is not None:
        params["p"] = _parse_set(args.p)
    if args.prefix is not None:
        params["prefix"] = _parse_set(args.prefix)
    if args.modulus is not None:
        params["modulus"] = args.modulus
    if args.name is not None:
        params["name"] = args.name
    spec = ConstructionSpec(args.family, params)
    built = spec.build()
    if isinstance(built, ResidueSet):
        payload = {"family": args.family, "modulus": built.modulus, "set": list(built.elements)}
    elif isinstance(built, list):  # registry listing
        payload = {
            "family": args.family,
            "entries": [
                {
                    "name": e.name,
                    "modulus": e.residue_set.modulus,
                    "set": list(e.residue_set.elements),
                    "verified": e.verified,
                }
                for e in built
            ],
        }
    elif isinstance(built, RegistryEntry):
        payload = {
            "family": args.family,
            "name": built.name,
            "modulus": built.residue_set.modulus,
            "set": list(built.residue_set.elements),
            "verified": built.verified,
        }
    else:
        payload = {"family": args.family, **_jsonable(built)}
    return _emit("pass", payload, started)


def _cmd_classify(args, started: float) -> int:
    rset = _residue_set(args)
    n = len(rset)
    modulus = rset.modulus
    if modulus == 1 << n:
        report = check_valuation_form(rset)
    elif modulus in ((1 << n) + 1, (1 << n) + 3):
        report = check_dilated_powers_form(rset)
    else:
        report = classify_pow2_plus2(rset)  # raises WrongModulusShapeError otherwise
    payload = {
        "modulus": modulus,
        "set": list(rset.elements),
        "sumset_distinct": is_sumset_distinct(rset),
        "report": report,
    }
    return _emit("pass", payload, started)


def _cmd_bound(args, started: float) -> int:
    rset = _residue_set(args)
    evaluation = eval_g(rset)
    payload = {
        "modulus": rset.modulus,
        "set": list(rset.elements),
        "evaluation": evaluation,
    }
    status = "pass"
    if evaluation.residual is not None:
        holds = verify_magnitude_bound(rset)
        payload["t"] = rset.modulus - (1 << len(rset))
        payload["magnitude_bound_holds"] = holds
        if not holds:
            status = "fail"
    if args.eps is not None:
        payload["growth"] = epsilon_growth_check(rset, args.eps)
    return _emit(status, payload, started)


def _cmd_verify(args, started: float) -> int:
    n_values = _parse_range(args.n)
    results = run_theorem(args.theorem, n_values, workers=args.workers, force=args.force)
    ok = all(r.passed for r in results)
    payload = {
        "theorem": args.theorem,
        "results": results,
    }
    return _emit("pass" if ok else "fail", payload, started)


def _cmd_repro(args, started: float) -> int:
    results = acceptance.run_all(printer=lambda line: print(line, flush=True))
    return PASS if all(r.passed for r in results) else FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modsum",
        description="Sumset-distinct sets modulo N: check, enumerate, canonicalize, construct, bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="distinctness and missing residues of one set")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated elements")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("enumerate", help="stream all sumset-distinct sets of size n")
    p.add_argument("--n", type=int)
    p.add_argument("--modulus", type=int)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--canonical", action="store_true", help="one set per orbit")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", help="write a resumable checkpoint file")
    p.add_argument("--resume", help="resume from a checkpoint file")
    p.add_argument("--csv", action="store_true", help="one comma-separated set per line")
    p.add_argument("--force", action="store_true", help="lift the desk-scale guard")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("orbit", help="canonical form and orbit data of one set")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--min-sum", action="store_true", help="include the orbit-minimal element sum")
    p.set_defaults(handler=_cmd_orbit)

    p = sub.add_parser("construct", help="generate one of the explicit families")
    p.add_argument(
        "--family",
        required=True,
        choices=["powers", "thm2", "thm2-dilation", "perturbation", "example10", "appendix-b", "registry"],
    )
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--p", help="comma-separated perturbation vector")
    p.add_argument("--prefix", help="comma-separated prefix elements")
    p.add_argument("--modulus", type=int)
    p.add_argument("--name", help="registry entry name")
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("classify", help="structure report for a set (modulus-shape dependent)")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("bound", help="root-of-unity evaluation and magnitude bound")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--eps", type=float, help="also run the per-factor growth check")
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("verify", help="cross-check a characterization over a range of n")
    p.add_argument("--theorem", required=True, choices=sorted(THEOREM_DRIVERS))
    p.add_argument("--n", required=True, help="single value or inclusive range lo..hi")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--force", action="store_true")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("repro", help="run the full acceptance suite")
    p.set_defaults(handler=_cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        return args.handler(args, started)
    except ScaleGuardError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    except ModsumError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
