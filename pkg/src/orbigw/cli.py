"""
Command line surface.

Subcommands:

* ``genus0``            dump the genus zero series and their identity report
* ``pmatrix``           build the column polynomials and run their verification
* ``potential``         assemble one potential and emit its canonical form
* ``verify-identities`` the full lemma battery below the anomaly equations
* ``verify-hae``        the anomaly equation itself, across constants policies

Exit codes: 0 on success, 1 when any verification fails, 2 on configuration
errors.  ``--format`` selects json, csv or text output; ``--cache-dir`` (or
the ORBIGW_CACHE_DIR environment variable) enables the content-addressed
cache; ``--jobs`` sets the parallelism degree of the graph sum (results are
identical for every value, which the test suite checks).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .cache import Cache, canonical_json
from .genus0 import (
    GenusZeroData,
    ModelConfig,
    verify_birkhoff,
    verify_picard_fuchs,
    verify_quantum,
    verify_ring_series,
)
from .hae import verify_hae_policies
from .pmatrix import PColumn, build_pmatrix, verify_pmatrix
from .potentials import ContributionTables, assemble_F, audit_generators
from .report import Report
from .ring import RingContext, certify_rules


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by the subcommands."""

    n: int
    N: int = 0
    g: int = 2
    k_max: int = 4
    policy: str = "symplectic"
    normalization: str = "1"
    cache_dir: str | None = None
    fmt: str = "text"
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        ModelConfig(self.n, self.N)  # validates n >= 3 and N >= 4n
        if self.g >= 1 and self.k_max < 3 * self.g - 2:
            raise ValueError(f"k_max must be at least 3g-2 = {3 * self.g - 2}")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")


def _run_config(args, g: int | None = None, k_max: int | None = None) -> RunConfig:
    return RunConfig(
        n=args.n,
        N=args.N,
        g=g if g is not None else 2,
        k_max=k_max if k_max is not None else (3 * g - 2 if g else 4),
        policy=getattr(args, "policy", "symplectic"),
        cache_dir=args.cache_dir,
        fmt=args.format,
        jobs=args.jobs,
        seed=args.seed,
    )


def _emit(payload: dict, report: Report | None, fmt: str, out) -> None:
    if fmt == "json":
        body = dict(payload)
        if report is not None:
            body["report"] = report.to_json()
        out.write(canonical_json(body) + "\n")
    elif fmt == "csv":
        out.write("check,ok,detail\n")
        if report is not None:
            for c in report.checks:
                detail = c.detail.replace('"', "'")
                out.write(f'"{c.name}",{int(c.ok)},"{detail}"\n')
    else:
        if report is not None:
            out.write(report.render() + "\n")
        for k, v in payload.items():
            if k not in ("series", "column", "potential", "lifted"):
                out.write(f"{k}: {v}\n")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="order of the cyclic quotient, n >= 3")
    parser.add_argument("--N", type=int, default=0, help="x-truncation order (default 10n)")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text")
    parser.add_argument("--out", default="-", help="output file, - for stdout")
    parser.add_argument("--cache-dir", default=os.environ.get("ORBIGW_CACHE_DIR"))
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized tooling, recorded in the payload")


def cmd_genus0(args) -> tuple[dict, Report]:
    cfg = ModelConfig(args.n, args.N)
    cache = Cache(args.cache_dir)
    key = {"cmd": "genus0", "n": cfg.n, "N": cfg.N}
    cached = cache.load("genus0", key)
    data = GenusZeroData.build(cfg)
    rep = Report(f"genus zero (n={cfg.n}, N={cfg.N})")
    for sub in (verify_picard_fuchs(data), verify_birkhoff(data), verify_ring_series(data), verify_quantum(data)):
        rep.checks.extend(sub.checks)
    series = {
        "L": data.L.to_json(),
        "Theta": data.Theta.to_json(),
        "I": [s.to_json() for s in data.I],
        "C": [s.to_json() for s in data.C],
        "K": [s.to_json() for s in data.K],
        "A": [s.to_json() for s in data.A],
    }
    if cached is not None and cached["series"] != series:
        rep.add("cache consistency", False, "cached series differ from recomputation")
    cache.store("genus0", key, {"series": series})
    return {"n": cfg.n, "N": cfg.N, "seed": args.seed, "series": series}, rep


def cmd_pmatrix(args) -> tuple[dict, Report]:
    cfg = ModelConfig(args.n, args.N)
    cache = Cache(args.cache_dir)
    ctx = RingContext(cfg.n)
    data = GenusZeroData.build(ModelConfig(cfg.n, cfg.N + 2 * args.k_max + 2))
    key = {
        "cmd": "pmatrix",
        "n": cfg.n,
        "N": cfg.N,
        "k_max": args.k_max,
        "policy": args.policy,
        "normalization": str(args.normalization),
    }
    cached = cache.load("pmatrix", key)
    if cached is not None and args.policy != "custom":
        col = PColumn.from_json(cached["column"])
        pm = build_pmatrix(ctx, data, args.k_max, "custom", custom_constants=col.constants)
        pm.col.policy = col.policy
        pm.col.constant_status = col.constant_status
    else:
        pm = build_pmatrix(ctx, data, args.k_max, args.policy, normalization=Fraction(args.normalization))
    rep = certify_rules(ctx, data)
    rep.checks.extend(verify_pmatrix(pm).checks)
    payload = {
        "n": cfg.n,
        "k_max": args.k_max,
        "policy": args.policy,
        "seed": args.seed,
        "column": pm.col.to_json(),
        "lifted": {f"{k},{i},{j}": e.to_json() for (k, i, j), e in sorted(pm.lifted.items())},
    }
    cache.store("pmatrix", key, {"column": pm.col.to_json(), "lifted": payload["lifted"]})
    return payload, rep


def cmd_potential(args) -> tuple[dict, Report]:
    k_max = max(3 * args.g - 2, 1)
    _run_config(args, g=args.g, k_max=k_max)
    cfg = ModelConfig(args.n, args.N)
    ctx = RingContext(cfg.n)
    data = GenusZeroData.build(cfg)
    insertions = tuple(int(t) for t in args.insertions.split(",") if t != "")
    pm = build_pmatrix(ctx, data, k_max, args.policy)
    tables = ContributionTables(pm)
    pot = assemble_F(tables, args.g, insertions, jobs=args.jobs)
    audit = audit_generators(tables, pot)
    ev = ctx.evaluator(data)
    rep = Report(f"potential, genus {args.g}, insertions {insertions}")
    rep.add("finite generation audit", audit["core_ok"] and audit["prefactor_ok"] and audit["vertex_ok"], str(audit["core_gens"]))
    payload = {
        "n": cfg.n,
        "g": args.g,
        "seed": args.seed,
        "insertions": list(insertions),
        "potential": {
            "prefactor": pot.prefactor.to_json(),
            "core": pot.core.to_json(),
            "series": ev.eval(pot.full()).to_json(),
        },
    }
    return payload, rep


def cmd_verify_identities(args) -> tuple[dict, Report]:
    cfg = ModelConfig(args.n, args.N)
    ctx = RingContext(cfg.n)
    data = GenusZeroData.build(ModelConfig(cfg.n, cfg.N + 2 * args.k_max + 2))
    rep = Report(f"full identity battery (n={cfg.n})")
    for sub in (verify_picard_fuchs(data), verify_birkhoff(data), verify_ring_series(data), verify_quantum(data)):
        rep.checks.extend(sub.checks)
    rep.checks.extend(certify_rules(ctx, data).checks)
    pm = build_pmatrix(ctx, data, args.k_max, args.policy)
    rep.checks.extend(verify_pmatrix(pm).checks)
    return {"n": cfg.n, "N": cfg.N, "k_max": args.k_max}, rep


def cmd_verify_hae(args) -> tuple[dict, Report]:
    policies = args.policies.split(",") if args.policies else ["symplectic", "zero"]
    rep, results = verify_hae_policies(args.n, args.g, policies, N=args.N or None)
    payload = {
        "n": args.n,
        "g": args.g,
        "results": [r.to_json() for r in results],
    }
    return payload, rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbigw", description=__doc__.splitlines()[1])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus0", help="genus zero series and identities")
    _common(p)
    p.set_defaults(func=cmd_genus0)

    p = sub.add_parser("pmatrix", help="column polynomials, lift, verification")
    _common(p)
    p.add_argument("--k-max", dest="k_max", type=int, default=4)
    p.add_argument("--policy", choices=("symplectic", "zero", "custom"), default="symplectic")
    p.add_argument("--normalization", default="1")
    p.set_defaults(func=cmd_pmatrix)

    p = sub.add_parser("potential", help="assemble one potential")
    _common(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--insertions", default="", help="comma separated sector indices")
    p.add_argument("--policy", choices=("symplectic", "zero", "custom"), default="symplectic")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("verify-identities", help="all identities below the anomaly equation")
    _common(p)
    p.add_argument("--k-max", dest="k_max", type=int, default=4)
    p.add_argument("--policy", choices=("symplectic", "zero", "custom"), default="symplectic")
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("verify-hae", help="the holomorphic anomaly equation")
    _common(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--policies", default="", help="comma separated constants policies")
    p.set_defaults(func=cmd_verify_hae)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        payload, report = args.func(args)
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8")
    try:
        _emit(payload, report, args.format, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
