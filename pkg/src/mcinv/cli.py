"""Command line front end.

Exit codes: 0 when every selected check passes, 1 on a mathematical failure,
2 on a usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import jsonschema

from . import __version__
from .checks import CHECKS, Job, run_checks
from .errors import ConfigError, McinvError, RegularityError, StaircaseError, StructureConstantError, VerificationError
from .invariants import killing_transport
from .lie import LieAlgebra, Sl2Triple, index as lie_index, index_failure_bound, sl_n_chevalley
from .multicurrent import MCElement, is_nondegenerate
from .oracle import oracle_check_components
from .ratpoly import Polynomial
from .slices import TruncatedSlice, build_slice, reduce_to_slice, transversality, verify_uniqueness
from .staircase import Staircase, minkowski_sum

SCHEMA_VERSION = 1

_INT_LIST = {"type": "array", "items": {"type": "integer", "minimum": 0}}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["lie", "staircase"],
    "properties": {
        "lie": {
            "oneOf": [
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["type", "n"],
                    "properties": {"type": {"const": "sl"}, "n": {"type": "integer", "minimum": 2}},
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["structure_constants"],
                    "properties": {
                        "structure_constants": {"type": "object"},
                        "triple": {"type": "object"},
                        "generators": {"type": "array", "items": {"type": "array"}},
                    },
                },
            ]
        },
        "staircase": {
            "oneOf": [
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["ell", "box"],
                    "properties": {"ell": {"type": "integer", "minimum": 0}, "box": _INT_LIST},
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["ell", "omega1"],
                    "properties": {
                        "ell": {"type": "integer", "minimum": 0},
                        "omega1": {"type": "array", "items": _INT_LIST, "minItems": 1},
                    },
                },
            ]
        },
        "seed": {"type": "integer"},
        "checks": {"type": "array", "items": {"enum": sorted(CHECKS)}},
        "output": {"type": "string"},
    },
}


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(data, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise ConfigError(f"config error at {where}: {exc.message}") from exc
    return data


def build_job(cfg: dict, seed: int | None = None, exact_rank: bool = False) -> Job:
    lie = cfg["lie"]
    triple = None
    generators = None
    if "n" in lie:
        g = sl_n_chevalley(lie["n"])
    else:
        try:
            g = LieAlgebra.from_json(lie["structure_constants"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"malformed structure constants: {exc}") from exc
        if "triple" in lie:
            triple = Sl2Triple.from_json(lie["triple"]).validate(g)
        if "generators" in lie:
            generators = [Polynomial.from_json(p) for p in lie["generators"]]
    try:
        s = Staircase.from_json(cfg["staircase"])
    except StaircaseError as exc:
        raise ConfigError(f"bad staircase: {exc}") from exc
    seed = cfg.get("seed", 0) if seed is None else seed
    return Job(g, s, seed=seed, exact_rank=exact_rank, generators=generators, triple=triple)


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _header(job: Job, cfg: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "algebra": job.g.name or f"dim{job.g.dim}",
        "staircase": job.staircase.to_json(),
        "seed": job.seed,
    }


# -- subcommands -----------------------------------------------------------------


def cmd_generators(job: Job, cfg: dict, args) -> int:
    from .checks import Skip

    try:
        fams = job.primal_families() + job.dual_families()
    except Skip as exc:
        raise ConfigError(str(exc)) from exc
    report = _header(job, cfg)
    report["families"] = [f.to_json() for f in fams]
    _dump(report, args.out or cfg.get("output"))
    return 0


def cmd_verify(job: Job, cfg: dict, args) -> int:
    names = args.checks.split(",") if args.checks else cfg.get("checks")
    if names:
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(unknown)}")
    results = run_checks(job, names)
    report = _header(job, cfg)
    report["checks"] = [r.to_json() for r in results]
    report["summary"] = {st: sum(r.status == st for r in results) for st in ("pass", "fail", "skipped")}
    for r in results:
        tail = f" ({r.reason})" if r.reason else ""
        print(f"{r.status.upper():8s} {r.name} [{r.claim}]{tail}", file=sys.stderr)
    _dump(report, args.out or cfg.get("output"))
    return 1 if report["summary"]["fail"] else 0


def cmd_reduce(job: Job, cfg: dict, args) -> int:
    if not args.element:
        raise ConfigError("reduce needs --element PATH")
    try:
        with open(args.element, encoding="utf-8") as fh:
            x = MCElement.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"cannot read element: {exc}") from exc
    from .checks import Skip

    try:
        ts = job.truncated_slice()
    except Skip as exc:
        raise ConfigError(str(exc)) from exc
    try:
        job.mca.check(x)
    except McinvError as exc:
        raise ConfigError(str(exc)) from exc
    res = reduce_to_slice(x, ts, seed=job.seed)
    report = _header(job, cfg)
    report["x_prime"] = res.x_prime.to_json()
    report["log"] = res.log
    report["uniqueness"] = verify_uniqueness(x, res.x_prime, ts)
    report["transversality_rank"] = transversality(res.x_prime, ts)
    _dump(report, args.out or cfg.get("output"))
    return 0


def cmd_index(job: Job, cfg: dict, args) -> int:
    mca = job.mca
    chi = mca.index(seed=job.seed)
    base = lie_index(job.g, seed=job.seed)
    report = _header(job, cfg)
    report.update({
        "index": chi,
        "base_index": base,
        "expected": base * len(job.staircase),
        "samples": 8,
        "failure_bound": str(index_failure_bound(mca.dim, 8)),
    })
    _dump(report, args.out or cfg.get("output"))
    return 0 if chi == base * len(job.staircase) else 1


def cmd_forms(job: Job, cfg: dict, args) -> int:
    mca = job.mca
    s = job.staircase
    kappa = job.g.killing_form
    from . import linalg

    rows = []
    for w in sorted(minkowski_sum(s.omega1, s.omega1)):
        m = mca.kappa_omega(kappa, w)
        rows.append({
            "omega": list(w),
            "rank": linalg.rank(m),
            "symmetric": m == linalg.transpose(m),
            "nondegenerate": is_nondegenerate(m),
        })
    report = _header(job, cfg)
    report["forms"] = rows
    ok = True
    if s.mu is not None:
        top = next(r for r in rows if tuple(r["omega"]) == s.mu)
        ok = top["nondegenerate"] and all(r["symmetric"] for r in rows)
    _dump(report, args.out or cfg.get("output"))
    return 0 if ok else 1


def cmd_oracle(job: Job, cfg: dict, args) -> int:
    from .checks import Skip
    from .invariants import expand, invariant_indices

    try:
        gens = job.base_generators()
    except Skip as exc:
        raise ConfigError(str(exc)) from exc
    out = []
    ok = True
    for picture in ("dual", "primal"):
        for j, p in enumerate(gens, start=1):
            q = p if picture == "dual" else killing_transport(p, job.g, "primal")
            wanted = invariant_indices(job.staircase, q.total_degree(), picture)
            for gamma, r in oracle_check_components(expand(q, job.staircase), job.mca, picture).items():
                expected = gamma in wanted
                if expected and not r.invariant:
                    ok = False
                out.append({
                    "picture": picture,
                    "j": j,
                    "gamma": list(gamma),
                    "invariant": r.invariant,
                    "guaranteed": expected,
                })
    report = _header(job, cfg)
    report["components"] = out
    _dump(report, args.out or cfg.get("output"))
    return 0 if ok else 1


COMMANDS = {
    "generators": cmd_generators,
    "verify": cmd_verify,
    "reduce": cmd_reduce,
    "index": cmd_index,
    "forms": cmd_forms,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcinv", description="Invariants of truncated multicurrent algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON job configuration")
        sp.add_argument("--seed", type=int, default=None, help="override the configured seed")
        sp.add_argument("--out", default=None, help="write the JSON report here ('-' for stdout)")
        sp.add_argument("--checks", default=None, help="comma-separated check names (verify only)")
        sp.add_argument("--exact-rank", action="store_true", help="symbolic Jacobian rank")
        if name == "reduce":
            sp.add_argument("--element", default=None, help="element JSON file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = load_config(args.config)
        job = build_job(cfg, args.seed, args.exact_rank)
        return COMMANDS[args.command](job, cfg, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RegularityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (StructureConstantError, VerificationError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    except McinvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
