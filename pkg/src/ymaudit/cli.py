"""Command-line entry point: validate | claims | sweep | residual."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .ansatz import SumAnsatz, paper_presets, spec_from_dict, validate_conditions
from .claims import ScalingSweep, sweep_beta
from .claims.engine import _clean
from .field_calculus import (CONVENTIONS, DifferentiationScheme, el_residual,
                             reduced_residual_study)
from .geometry import METRICS
from .lie_algebra import su_structure_constants
from .report import (SWEEP_QUANTITIES, ConfigError, RunConfig, atomic_write, build_config,
                     build_report, load_config_file, sweep_csv)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON run configuration; command-line flags override it")
    p.add_argument("--preset", choices=("paper-single", "paper-pair"))
    p.add_argument("--metric", choices=tuple(METRICS))
    p.add_argument("--beta", help="width, or a comma-separated list for sweeps")
    p.add_argument("--s", help="comma-separated SU(2) charge vector, default 1,0,0")
    p.add_argument("--x0-rotation", dest="x0_rotation", action="store_true", default=None,
                   help="evaluate the field at i*x_0")
    p.add_argument("--scheme-order", dest="scheme_order", type=int, choices=(2, 4))
    p.add_argument("--quad-order", dest="quad_order", type=int, help="initial Gauss-Hermite nodes per axis")
    p.add_argument("--convention", choices=CONVENTIONS,
                   help="how upper-index derivatives carry the metric (default literal)")
    p.add_argument("--seed", type=int, help="seed for randomised samples")
    p.add_argument("--out", help="output path (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ymaudit", description="Audit product-form gauge field claims.")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", help="check the validity conditions of an ansatz")
    _common(v)
    c = sub.add_parser("claims", help="evaluate registered claims and write a JSON report")
    _common(c)
    c.add_argument("--claims", help="comma-separated claim ids, e.g. C5,C6")
    c.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
    c.add_argument("--no-sweeps", dest="sweeps", action="store_false", help="skip the beta sweep tables")
    s = sub.add_parser("sweep", help="beta sweep of norm, energy and ratio as CSV")
    _common(s)
    r = sub.add_parser("residual", help="field-equation residuals on random points")
    _common(r)
    r.add_argument("--points", type=int, default=100, help="number of points in [-2, 2]^4")
    r.add_argument("--coupling", type=float, default=1.0)
    r.add_argument("--step", type=float, default=1e-3)
    return ap


def resolve(args) -> RunConfig:
    file_values = load_config_file(args.config) if args.config else {}
    overrides = {k: getattr(args, k, None) for k in
                 ("preset", "metric", "beta", "x0_rotation", "scheme_order", "quad_order",
                  "convention", "seed", "claims")}
    if getattr(args, "s", None) is not None:
        try:
            overrides["s"] = tuple(float(v) for v in args.s.split(","))
        except ValueError:
            raise ConfigError(f"cannot parse charge vector {args.s!r}") from None
    return build_config(file_values, overrides)


def field_from(cfg: RunConfig):
    if cfg.ansatz is not None:
        return spec_from_dict(cfg.ansatz)
    return paper_presets(cfg.preset, cfg.beta, np.asarray(cfg.s))


def emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def cmd_validate(cfg: RunConfig, out: str | None) -> int:
    fld = field_from(cfg)
    terms = fld.terms if isinstance(fld, SumAnsatz) else (fld,)
    reports = [validate_conditions(t) for t in terms]
    lines = []
    for i, rep in enumerate(reports):
        label = f"term {i + 1}" if len(reports) > 1 else "ansatz"
        for c in rep.conditions:
            lines.append(f"{label:8s} {c.name:14s} residual={c.residual:.3e} "
                         f"{'PASS' if c.passed else 'FAIL'}")
        if rep.degenerate:
            lines.append(f"{label:8s} degenerate: {rep.degenerate}")
    failed = [(i, name) for i, rep in enumerate(reports) for name in rep.failed]
    print("\n".join(lines))
    if out:
        atomic_write(out, json.dumps(_clean({"terms": [r.as_dict() for r in reports]}),
                                     indent=2, sort_keys=True) + "\n")
    if failed:
        names = ", ".join(sorted({n for _, n in failed}))
        print(f"failed condition(s): {names}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_claims(cfg: RunConfig, out: str | None, timing: bool, sweeps: bool) -> int:
    if len(cfg.betas) != 1:
        raise ConfigError("claims take a single beta value")
    report = build_report(cfg, timing=timing, sweeps=sweeps)
    emit(report.to_json(), out)
    for v in report.claims:
        print(f"{v.claim_id:4s} {v.status:10s} {v.title}", file=sys.stderr)
    if report.internal_gate_failed:
        bad = [v.claim_id for v in report.claims if v.internal_gate_failed]
        print(f"internal oracle/quadrature disagreement in {', '.join(bad)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, out: str | None, explicit_beta: bool) -> int:
    betas = cfg.betas if explicit_beta else (0.5, 1.0, 2.0, 4.0)
    if len(set(betas)) < 3:
        raise ConfigError(f"a sweep needs at least 3 distinct beta values, got {list(betas)}")
    params = cfg.params(beta=betas[0])
    tables: dict[str, ScalingSweep] = {q: sweep_beta(q, params, betas) for q in SWEEP_QUANTITIES}
    emit(sweep_csv(tables), out)
    for q, t in tables.items():
        exp = "undefined" if t.fitted_exponent is None else f"{t.fitted_exponent:.6f}"
        note = f" ({t.note})" if t.note else ""
        print(f"{q:7s} exponent={exp} expected={t.expected_exponent:+.0f} {t.status}{note}",
              file=sys.stderr)
    return EXIT_OK


def cmd_residual(cfg: RunConfig, args) -> int:
    if args.points < 1:
        raise ConfigError("--points must be positive")
    fld = field_from(cfg)
    x = np.random.default_rng(cfg.seed).uniform(-2, 2, size=(args.points, 4))
    f = su_structure_constants(2)
    scheme = DifferentiationScheme(cfg.scheme_order, args.step)
    rep = el_residual(fld, x, args.coupling, f, cfg.metric, scheme, cfg.convention)
    study = reduced_residual_study(fld, x, args.coupling, f, cfg.metric, cfg.scheme_order, cfg.convention)
    body = {"points": args.points, "coupling": args.coupling, "step": args.step,
            "metric": cfg.metric, "convention": cfg.convention, "max_abs": rep.max_abs(),
            "max_field_scale": float(rep.field_scale.max()), "reduced_study": study.as_dict()}
    emit(json.dumps(_clean(body), indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        if args.command == "validate":
            return cmd_validate(cfg, args.out)
        if args.command == "claims":
            return cmd_claims(cfg, args.out, args.timing, args.sweeps)
        if args.command == "sweep":
            explicit = args.beta is not None or (args.config and "beta" in load_config_file(args.config))
            return cmd_sweep(cfg, args.out, bool(explicit))
        return cmd_residual(cfg, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
