"""Command-line front end.

Subcommands: ``constants``, ``verify``, ``norm-sweep``, ``divergence``.
Values come from built-in defaults, then ``--config FILE`` (key = value
lines, keys named like the long flags), then explicit flags. Exit status
is 0 when every selected check passes, 1 when one fails and 2 for usage
or admissibility errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .constants import (
    SETTINGS,
    ExponentProfile,
    Geometry,
    lambda_jk,
    lambda_jk_dual,
    lambda_mu,
    lambda_mu_dual,
    sharp_norm,
    unit_sphere_area,
    validate_parameters,
)
from .experiments import full_suite_jobs, identity_jobs, run_jobs
from .geometry import QuadratureSpec
from .reports import _clean, reports_to_csv, reports_to_json
from .results import AccuracyError, AdmissibilityError, ContractError, DegeneratePlaneError, is_divergent

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _exponent(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _common(p: argparse.ArgumentParser, geometry: bool = True) -> None:
    if geometry:
        p.add_argument("--n", type=int, default=2, help="ambient dimension")
        p.add_argument("--k", type=int, default=1, help="plane dimension")
        p.add_argument("--j", type=int, default=0, help="inner plane dimension for j->k settings")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", default=None, help="report file (.json or .csv)")
    p.add_argument("--format", choices=("json", "csv"), default=None,
                   help="report format (default: from --out suffix, else json)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--epsrel", type=float, default=None, help="quadrature relative tolerance")
    p.add_argument("--tol", type=float, default=None, help="override the check tolerance")
    p.add_argument("--config", default=None, help="key = value file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kplane", description="Sharp weighted bounds for k-plane transforms.")
    parser.add_argument("--version", action="version", version=f"kplane {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("constants", help="print constants, sharp norms and admissibility verdicts")
    _common(c)
    c.add_argument("--p", type=_exponent, default=2.0)
    c.add_argument("--mu", type=float, default=0.0)

    v = sub.add_parser("verify", help="check identities and the duality pairing")
    _common(v)
    v.add_argument("--identity", choices=("k", "jk", "k-dual", "jk-dual", "pairing"), default=None)
    v.add_argument("--suite", choices=("identities", "full"), default=None)
    v.add_argument("--profile", default="gaussian", help='e.g. "gaussian" or "family=shell, inner=1, outer=2"')
    v.add_argument("--mu", type=float, default=0.0)
    v.add_argument("--variant", choices=("pure", "damped", "both"), default="both")
    v.add_argument("--kappa", choices=("0", "1", "both"), default="both")
    v.add_argument("--method", choices=("quadrature", "monte-carlo"), default="quadrature")
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--f", default="gaussian", help="ambient test function for the pairing")
    v.add_argument("--phi", default="gaussian", help="plane test function for the pairing")

    s = sub.add_parser("norm-sweep", help="extremizer sweeps and norm audits")
    _common(s)
    s.add_argument("--setting", choices=SETTINGS, default="forward-k")
    s.add_argument("--p", type=_exponent, default=2.0)
    s.add_argument("--mu", type=float, default=1.0)
    s.add_argument("--eps", type=_float_list, default=[0.2, 0.1, 0.05, 0.02, 0.01])
    s.add_argument("--audit", choices=("dual-jk-constant", "scaling", "bounds"), default=None)
    s.add_argument("--grid", default="2:0,3:0.2,1.5:-0.3", help="p:mu pairs for the dual j->k audit")
    s.add_argument("--n-random", type=int, default=50, help="random profiles for the bounds audit")

    d = sub.add_parser("divergence", help="partial integrals at the admissibility boundary")
    _common(d)
    d.add_argument("--case", choices=("boundary", "jk-boundary", "endpoint-p1"), default="boundary")
    d.add_argument("--p", type=_exponent, default=2.0)
    d.add_argument("--delta", type=float, default=0.2)
    d.add_argument("--mu", type=float, default=None, help="must equal the boundary value if given")
    return parser


# ---------------------------------------------------------------------------
# config handling


def _read_config(path: str) -> list[str]:
    """Turn ``key = value`` lines into flag tokens."""
    tokens = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for num, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key = value")
        key, val = (x.strip() for x in line.split("=", 1))
        tokens += [f"--{key.replace('_', '-')}", val]
    return tokens


def _split_config(argv: list[str]) -> tuple[list[str], str | None]:
    out, path, i = [], None, 0
    while i < len(argv):
        a = argv[i]
        if a == "--config":
            if i + 1 >= len(argv):
                raise UsageError("--config needs a path")
            path = argv[i + 1]
            i += 2
            continue
        if a.startswith("--config="):
            path = a.split("=", 1)[1]
        else:
            out.append(a)
        i += 1
    return out, path


def parse_args(argv: list[str]) -> argparse.Namespace:
    argv, cfg = _split_config(list(argv))
    if cfg is not None:
        pos = next((i for i, a in enumerate(argv) if not a.startswith("-")), None)
        if pos is None:
            raise UsageError("--config needs a subcommand")
        # later flags win in argparse, so explicit flags override the file
        argv = argv[: pos + 1] + _read_config(cfg) + argv[pos + 1:]
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise UsageError("missing subcommand (constants, verify, norm-sweep, divergence)")
    args.config = cfg
    return args


def _config_echo(args: argparse.Namespace) -> dict:
    skip = {"out", "format", "jobs", "config"}
    return _clean({k: v for k, v in sorted(vars(args).items()) if k not in skip})


def _spec(args) -> QuadratureSpec:
    kw = {"seed": args.seed}
    if args.epsrel is not None:
        kw["epsrel"] = args.epsrel
    return QuadratureSpec(**kw)


def _geometry(args) -> dict:
    Geometry(args.n, args.k, args.j)  # validates
    return {"n": args.n, "k": args.k, "j": args.j}


def _tol(args, default):
    return default if args.tol is None else args.tol


# ---------------------------------------------------------------------------
# subcommands


def _fmt(x) -> str:
    if is_divergent(x):
        return f"divergent ({x.reason})"
    return f"{float(x):.10f}"


def _quantity(name, fn, *a) -> dict:
    try:
        return {"quantity": name, "value": fn(*a)}
    except AdmissibilityError as exc:
        msg = str(exc)
        return {"quantity": name, "value": None,
                "verdict": msg if msg.startswith("inadmissible") else f"inadmissible: {msg}"}


def cmd_constants(args) -> tuple[int, list[dict]]:
    geom = Geometry(args.n, args.k, args.j)
    exps = ExponentProfile(args.p, args.mu)
    rows = [
        {"quantity": f"sigma_{geom.n - 1}", "value": unit_sphere_area(geom.n)},
        _quantity("lambda_mu", lambda_mu, geom, args.mu),
        _quantity("lambda_mu_dual", lambda_mu_dual, geom.k, args.mu),
    ]
    if geom.j > 0:
        rows += [_quantity("lambda_j_mu", lambda_jk, geom, args.mu),
                 _quantity("lambda_j_mu_dual", lambda_jk_dual, geom, args.mu)]
    for setting in SETTINGS:
        if setting.endswith("jk") and geom.j == 0:
            continue
        rep = validate_parameters(geom, exps, setting)
        rows.append({"quantity": f"norm {setting}", "nu": rep.nu,
                     "value": sharp_norm(geom, exps, setting) if rep.bounded else None,
                     "verdict": rep.verdict})
    return EXIT_OK, rows


def _constants_text(rows) -> str:
    lines = []
    for r in rows:
        val = r["value"]
        cell = r.get("verdict", "") if val is None else _fmt(val)
        extra = f"  nu={r['nu']:.10g}  [{r['verdict']}]" if "verdict" in r and val is not None else ""
        if "verdict" in r and val is None and "nu" in r:
            extra = f"  nu={r['nu']:.10g}"
        lines.append(f"{r['quantity']:<22} {cell}{extra}")
    return "\n".join(lines)


def _verify_jobs(args) -> list[tuple[str, dict, dict]]:
    spec = _spec(args).to_dict()
    if args.suite == "full":
        return full_suite_jobs(args.seed) if args.epsrel is None else \
            [(k, p, spec) for k, p, _ in full_suite_jobs(args.seed)]
    if args.suite == "identities":
        return [(k, p, spec) for k, p, _ in identity_jobs(5, args.seed)]
    if args.identity is None:
        raise UsageError("verify needs --identity or --suite")
    geom = _geometry(args)
    if args.identity == "pairing":
        return [("duality_pairing", {"f": args.f, "phi": args.phi, "geom": geom,
                                     "samples": args.samples or 100_000, "rhs_samples": 10_000,
                                     "f_params": {}, "phi_params": {}}, spec)]
    jobs = []
    if args.identity in ("k", "jk"):
        kind = "identity_k" if args.identity == "k" else "identity_jk"
        variants = ("pure", "damped") if args.variant == "both" else (args.variant,)
        for var in variants:
            jobs.append((kind, {"profile": args.profile, "geom": geom, "mu": args.mu,
                                "variant": var, "tol": _tol(args, 1e-7)}, spec))
    else:
        kind = "identity_k_dual" if args.identity == "k-dual" else "identity_jk_dual"
        kappas = (0, 1) if args.kappa == "both" else (int(args.kappa),)
        for kap in kappas:
            jobs.append((kind, {"profile": args.profile, "geom": geom, "mu": args.mu, "kappa": kap,
                                "method": args.method, "samples": args.samples,
                                "tol": _tol(args, 1e-6)}, spec))
    return jobs


def _sweep_jobs(args) -> list[tuple[str, dict, dict]]:
    spec = _spec(args).to_dict()
    geom = _geometry(args)
    if args.audit == "dual-jk-constant":
        grid = [[float(a) for a in item.split(":")] for item in args.grid.split(",") if item.strip()]
        eps = args.eps if len(args.eps) >= 3 else [0.1, 0.05, 0.02, 0.01]
        return [("dual_jk_constant_audit", {"geom": geom, "grid": grid, "eps": eps, "tol": _tol(args, 0.02)}, spec)]
    if args.audit == "scaling":
        return [("scaling_audit", {"setting": args.setting, "geom": geom, "p": args.p, "mu": args.mu,
                                   "wrong_offsets": [0.5, -0.5],
                                   "profile": {"family": "shell", "inner": 1.0, "outer": 2.0},
                                   "tol": _tol(args, 1e-8), "log2_range": 10}, spec)]
    if args.audit == "bounds":
        return [("bound_check", {"setting": args.setting, "geom": geom, "p": args.p, "mu": args.mu,
                                 "n_random": args.n_random, "profiles": [], "tol": _tol(args, 1e-6),
                                 "bilinear": True}, spec)]
    return [("norm_sweep", {"setting": args.setting, "geom": geom, "p": args.p, "mu": args.mu,
                            "eps": args.eps, "tol_quad": 1e-6, "extrap_tol": _tol(args, 0.02),
                            "compare_gaussian": True}, spec)]


def _divergence_jobs(args) -> list[tuple[str, dict, dict]]:
    return [("divergence_demo", {"case": args.case, "geom": _geometry(args), "p": args.p,
                                 "delta": args.delta, "mu": args.mu, "radii": None,
                                 "growth_tol": _tol(args, 0.25)}, _spec(args).to_dict())]


def _summary(reports) -> str:
    lines = []
    for r in reports:
        rel = "" if r.rel_err is None else f"  rel_err={r.rel_err:.3e}"
        lines.append(f"{r.status.upper():<12} {r.id}{rel}")
        if len(reports) == 1:
            lines += [f"  {note}" for note in r.notes]
            if r.table:
                keys = [k for k in r.table[0] if not isinstance(r.table[0][k], dict)]
                lines.append("  " + "\t".join(keys))
                for row in r.table:
                    lines.append("  " + "\t".join(_cell(row.get(k)) for k in keys))
    return "\n".join(lines)


def _cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


def _write(args, payload: str) -> None:
    Path(args.out).write_text(payload)


def _format(args) -> str:
    if args.format:
        return args.format
    if args.out and args.out.lower().endswith(".csv"):
        return "csv"
    return "json"


def run(argv: list[str], stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = parse_args(argv)
    header = {"command": args.command, "config": _config_echo(args), "seed": args.seed}
    if args.command == "constants":
        code, rows = cmd_constants(args)
        print(f"# kplane {__version__} seed={args.seed} config={json.dumps(header['config'], sort_keys=True, default=str)}",
              file=stdout)
        print(_constants_text(rows), file=stdout)
        if args.out:
            clean = [{k: (v if not is_divergent(v) else f"divergent: {v.reason}") for k, v in r.items()}
                     for r in rows]
            if _format(args) == "csv":
                import csv
                import io

                buf = io.StringIO()
                buf.write(f"# kplane {__version__}\n# config: {json.dumps(header['config'], sort_keys=True, default=str)}\n")
                w = csv.DictWriter(buf, fieldnames=("quantity", "value", "nu", "verdict"), lineterminator="\n")
                w.writeheader()
                for r in clean:
                    w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
                _write(args, buf.getvalue())
            else:
                doc = {"version": __version__, **header, "rows": clean}
                _write(args, json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n")
        return code
    jobs = {"verify": _verify_jobs, "norm-sweep": _sweep_jobs, "divergence": _divergence_jobs}[args.command](args)
    reports = run_jobs(jobs, max(1, args.jobs))
    print(f"# kplane {__version__} seed={args.seed}", file=stdout)
    print(_summary(reports), file=stdout)
    if args.out:
        fmt = _format(args)
        _write(args, reports_to_json(reports, header) if fmt == "json" else reports_to_csv(reports, header))
    failed = [r.id for r in reports if r.status == "fail"]
    if failed:
        print("failed: " + ", ".join(failed), file=stdout)
        return EXIT_FAIL
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (AdmissibilityError, ContractError, DegeneratePlaneError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
