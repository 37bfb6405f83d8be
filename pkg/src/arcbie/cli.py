"""Command-line harness.

Usage::

    arcbie <subcommand> --config cfg.json [--out DIR]

Subcommands: verify-laplace, verify-orders, verify-symbols, solve, bench,
print-symbol.  Each writes ``report.csv`` and ``report.json`` into the output
directory and exits 0 when every check passes, 1 otherwise, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .curves import make_curve
from .parametrix import fit_slope  # re-exported for scripts
from .experiments import (
    Row,
    bench_suite,
    commutator_suite,
    laplace_suite,
    order_suite,
    solve_problem,
    sqrt_suite,
    symbol_suite,
    two_term_residual,
)

__all__ = ["Config", "CurveConfig", "DEFAULT_THRESHOLDS", "load_config", "main", "fit_slope", "write_report"]

log = logging.getLogger("arcbie")

# verification thresholds; any subset can be overridden by the "thresholds" key
DEFAULT_THRESHOLDS = {
    "laplace_rtol": 1e-10,
    "laplace_atol": 1e-11,
    "slope_tol": 0.5,
    "r2_min": 0.9,
    "two_term_tol": 0.5,
    "commutator_rel": 1e-8,
    "commutator_slope_tol": 0.7,
    "sqrt_rtol": 1e-8,
    "ratio_max": 0.5,
    "spread_max": 2,
}

SUBCOMMANDS = ("verify-laplace", "verify-orders", "verify-symbols", "solve", "bench", "print-symbol")
CSV_COLUMNS = ("experiment", "curve", "k", "N", "quantity", "value", "threshold", "pass")


class UsageError(Exception):
    pass


@dataclass
class CurveConfig:
    name: str = "segment"
    params: dict = field(default_factory=dict)


@dataclass
class Config:
    """Run configuration (JSON object with these keys).

    Attributes
    ----------
    curve : CurveConfig
        ``{"name": "segment" | "arc" | "perturbed", "params": {...}}``.
    k : float
        Wavenumber, ``>= 0``.
    N : int
        Truncation, ``>= 16``.
    M : int, optional
        Quadrature size, default ``4 N``.
    experiment : str, optional
        If given, must name the subcommand being run.
    tolerance : float
        GMRES tolerance and identity tolerance where relevant.
    output : str
        Output directory (``--out`` overrides).
    problem : str
        ``dirichlet`` or ``neumann`` (solve).
    preconditioner : str
        ``none``, ``laplace-diag`` or ``parametrix`` (solve).
    incidence : float
        Plane-wave angle in radians.
    ks, Ns : list
        Bench sweep grid.
    J : int
        Symbolic depth.
    dump_matrices : bool
        Write S, V, N as CSV next to the report (solve).
    thresholds : dict
        Overrides for :data:`DEFAULT_THRESHOLDS`.
    """

    curve: CurveConfig = field(default_factory=CurveConfig)
    k: float = 1.0
    N: int = 256
    M: int | None = None
    experiment: str | None = None
    tolerance: float = 1e-8
    output: str = "arcbie_out"
    problem: str = "dirichlet"
    preconditioner: str = "parametrix"
    incidence: float = math.pi / 4
    ks: list = field(default_factory=lambda: [1, 2, 4, 8, 16])
    Ns: list = field(default_factory=lambda: [128, 256, 512])
    J: int = 6
    dump_matrices: bool = False
    thresholds: dict = field(default_factory=dict)

    def th(self, name: str) -> float:
        return float(self.thresholds.get(name, DEFAULT_THRESHOLDS[name]))

    def validate(self):
        unknown = set(self.thresholds) - set(DEFAULT_THRESHOLDS)
        if unknown:
            raise UsageError(f"unknown thresholds: {sorted(unknown)}")
        if self.k < 0:
            raise UsageError("k must be nonnegative")
        if self.N < 16:
            raise UsageError("N must be at least 16")
        if self.M is not None and self.M < 4 * self.N:
            raise UsageError("M must be at least 4N")
        if not 0 < self.tolerance < 1:
            raise UsageError("tolerance must lie in (0, 1)")
        if self.experiment is not None and self.experiment not in SUBCOMMANDS:
            raise UsageError(f"unknown experiment {self.experiment!r}")


def load_config(path) -> Config:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config must be a JSON object")
    known = set(Config.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    curve = raw.pop("curve", {})
    if isinstance(curve, str):
        curve = {"name": curve}
    try:
        cfg = Config(curve=CurveConfig(**curve), **raw)
    except TypeError as exc:
        raise UsageError(str(exc)) from exc
    cfg.validate()
    return cfg


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isinf(v) or math.isnan(v):
            return str(v)
        return f"{v:.10e}"
    return str(v)


def _is_timing(r: Row) -> bool:
    return r.quantity.startswith("runtime")


def write_report(rows: list[Row], out: Path, extra: dict | None = None) -> None:
    """``report.csv`` and ``report.json``.

    The CSV uses fixed formatting and leaves out wall-clock rows, so identical
    configurations give byte-identical files; timings are kept in the JSON.
    """
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "report.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            if _is_timing(r):
                continue
            rec = r.as_record()
            w.writerow([_fmt(rec[c]) for c in CSV_COLUMNS])
    payload = {"rows": [r.as_record() for r in rows], "all_pass": all(r.passed for r in rows)}
    if extra:
        payload.update(extra)
    (out / "report.json").write_text(json.dumps(payload, indent=2, sort_keys=True, default=str), encoding="utf-8")


def _curve(cfg: Config):
    try:
        return make_curve(cfg.curve.name, cfg.curve.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify_laplace(cfg: Config, out: Path):
    if cfg.curve.name != "segment":
        raise UsageError("verify-laplace compares against the segment's exact diagonals")
    return laplace_suite(cfg.N, cfg.M, rtol=cfg.th("laplace_rtol"), atol=cfg.th("laplace_atol")), {}


def cmd_verify_orders(cfg: Config, out: Path):
    from .assembly import assemble_all

    c = _curve(cfg)
    rows = order_suite(c, cfg.k, cfg.N, cfg.M, slope_tol=cfg.th("slope_tol"), r2_min=cfg.th("r2_min"))
    S = assemble_all(c, cfg.k, cfg.N, cfg.M)["S"].entries
    rows += two_term_residual(c, cfg.k, cfg.N, cfg.M, tol=cfg.th("two_term_tol"), S=S)
    rows += commutator_suite(c, cfg.k, cfg.N, cfg.M, S=S, rel=cfg.th("commutator_rel"), tol=cfg.th("commutator_slope_tol"))
    rows += sqrt_suite(c, ks=(cfg.k,), N=cfg.N, rtol=cfg.th("sqrt_rtol"))
    return rows, {}


def cmd_verify_symbols(cfg: Config, out: Path):
    from .symbolic import compare_published

    table = [asdict(c) for c in compare_published(cfg.J)]
    return symbol_suite(cfg.J), {"coefficients": table}


def cmd_solve(cfg: Config, out: Path):
    from .assembly import assemble_all, dump_matrix

    c = _curve(cfg)
    ops = assemble_all(c, cfg.k, cfg.N, cfg.M)
    if cfg.dump_matrices:
        out.mkdir(parents=True, exist_ok=True)
        for name, op in ops.items():
            dump_matrix(op, out / f"{name}.csv")
    rep = solve_problem(c, cfg.k, cfg.N, cfg.problem, cfg.preconditioner, cfg.tolerance, cfg.incidence, cfg.M, ops=ops)
    rows = [
        Row("solve", c.id, cfg.k, cfg.N, f"iterations[{cfg.problem},{cfg.preconditioner}]", float(rep.iterations), "report", rep.converged),
        Row("solve", c.id, cfg.k, cfg.N, "final_residual", rep.residual_history[-1], f"<= {cfg.tolerance:g}", rep.residual_history[-1] <= cfg.tolerance),
    ]
    extra = {
        "residual_history": rep.residual_history,
        "density_re": rep.solution.real.tolist(),
        "density_im": rep.solution.imag.tolist(),
        "status": rep.status,
    }
    return rows, extra


def cmd_bench(cfg: Config, out: Path):
    c = _curve(cfg)
    rows, counts = bench_suite(
        c, cfg.ks, cfg.Ns, cfg.tolerance, incidence=cfg.incidence, ratio_max=cfg.th("ratio_max"), spread_max=cfg.th("spread_max")
    )
    return rows, {"counts": {"|".join(map(str, key)): v for key, v in counts.items()}}


def cmd_print_symbol(cfg: Config, out: Path):
    from .symbolic import format_symbol, sigma_N, sigma_S, sigma_V, sym_N1, sym_N2
    from .symbolic.printing import symbol_terms

    J = cfg.J
    syms = {
        "S": sigma_S(J),
        "V": sigma_V(J),
        "N1": sym_N1(sigma_S(J)),
        "N2": sym_N2(sigma_V(J)),
        "N": sigma_N(J),
    }
    for name, s in syms.items():
        print(f"σ_{name} = {format_symbol(s)}")
    out.mkdir(parents=True, exist_ok=True)
    (out / "symbols.json").write_text(
        json.dumps({name: symbol_terms(s) for name, s in syms.items()}, indent=2, ensure_ascii=False), encoding="utf-8"
    )
    rows = [Row("print-symbol", "generic", 0.0, J, f"terms[{n}]", float(len(s.terms)), "report", True) for n, s in syms.items()]
    return rows, {}


COMMANDS = {
    "verify-laplace": cmd_verify_laplace,
    "verify-orders": cmd_verify_orders,
    "verify-symbols": cmd_verify_symbols,
    "solve": cmd_solve,
    "bench": cmd_bench,
    "print-symbol": cmd_print_symbol,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arcbie", description="Spectral BIE toolkit for open arcs.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--config", required=True, help="JSON configuration file")
    p.add_argument("--out", default=None, help="output directory (overrides config)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = load_config(args.config)
        if cfg.experiment is not None and cfg.experiment != args.subcommand:
            raise UsageError(f"config experiment {cfg.experiment!r} does not match subcommand {args.subcommand!r}")
        out = Path(args.out or cfg.output)
        rows, extra = COMMANDS[args.subcommand](cfg, out)
    except UsageError as exc:
        print(f"arcbie: error: {exc}", file=sys.stderr)
        return 2
    write_report(rows, out, extra)
    failed = [r for r in rows if not r.passed]
    for r in rows:
        log.info("%s %s %s = %s (%s)", "PASS" if r.passed else "FAIL", r.curve, r.quantity, _fmt(r.value), r.threshold)
    if failed:
        print(f"{len(failed)} of {len(rows)} checks failed", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
