"""``infogeo`` command line.

Exit codes: 0 success, 1 a property or numerical check failed, 2 the
input or configuration was unusable.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from infogeo import alpha as ag
from infogeo import charts, connections as cn, orlicz
from infogeo.errors import ChartDomainError, InfogeoError
from infogeo.measure import Density, MeasureSpace, TangentVector, expectation
from infogeo.report import csv_text, dumps, fmt
from infogeo.verify import VerifyConfig, run_campaign

log = logging.getLogger("infogeo")

COLUMNS = ("weight", "p", "q", "u", "v", "q1", "q2", "f")
EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2
TRANSPORT_TOL = 1e-12


class InputError(Exception):
    """Malformed file, flag or sidecar; maps to exit code 2."""


class CheckFailed(Exception):
    """A numerical check did not hold; maps to exit code 1."""

    def __init__(self, message: str, output: str = ""):
        super().__init__(message)
        self.output = output


@dataclass
class ProblemFile:
    """Columns of an input CSV, validated against the measure types."""

    space: MeasureSpace
    columns: dict

    def has(self, *names) -> bool:
        return all(n in self.columns for n in names)

    def require(self, *names):
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise InputError(f"input is missing column(s): {', '.join(missing)}")
        return [self.columns[n] for n in names]

    def density(self, name: str) -> Density:
        (vals,) = self.require(name)
        try:
            return Density(self.space, vals)
        except InfogeoError as exc:
            raise InputError(f"column {name!r}: {exc}") from exc

    def tangent(self, base: Density, name: str) -> TangentVector:
        (vals,) = self.require(name)
        try:
            return TangentVector(base, vals)
        except InfogeoError as exc:
            raise InputError(f"column {name!r}: {exc}") from exc


def read_problem(path: str) -> ProblemFile:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except (OSError, UnicodeDecodeError, csv.Error) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if len(rows) < 2:
        raise InputError(f"{path}: need a header row and at least one atom")
    header = [h.strip().lower() for h in rows[0]]
    unknown = sorted(set(header) - set(COLUMNS))
    if unknown:
        raise InputError(f"{path}: unknown column(s) {unknown}")
    if len(set(header)) != len(header):
        raise InputError(f"{path}: duplicate column names")
    data = {h: [] for h in header}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
        for h, cell in zip(header, row):
            try:
                data[h].append(float(cell))
            except ValueError:
                raise InputError(f"{path}:{lineno}: {h}={cell!r} is not a number") from None
    columns = {h: np.array(v) for h, v in data.items()}
    if "weight" not in columns:
        raise InputError(f"{path}: the weight column is required")
    for h, v in columns.items():
        if not np.all(np.isfinite(v)):
            raise InputError(f"{path}: column {h!r} has non-finite entries")
    try:
        space = MeasureSpace(columns.pop("weight"))
    except InfogeoError as exc:
        raise InputError(f"{path}: {exc}") from exc
    return ProblemFile(space, columns)


# --------------------------------------------------------------------------
# option resolution: explicit flag > JSON sidecar > default

VERIFY_KEYS = ("seed", "trials", "tol", "atoms", "only", "trials_by_property",
               "tolerance_by_property")
SIDECAR_KEYS = VERIFY_KEYS + ("phi", "which", "kind", "alpha", "field", "t", "steps")


def load_sidecar(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise InputError(f"config {path} must hold a JSON object")
    unknown = sorted(set(cfg) - set(SIDECAR_KEYS))
    if unknown:
        raise InputError(f"config {path}: unknown key(s) {unknown}")
    return cfg


def option(args, cfg: dict, name: str, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return cfg.get(name, default)


def _phi(args, cfg):
    try:
        return orlicz.YoungFunction.parse(option(args, cfg, "phi", 1))
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad phi: {exc}") from exc


def _kind(args, cfg):
    kind = option(args, cfg, "kind", "exp")
    if kind not in ("exp", "mix"):
        raise InputError(f"kind must be exp or mix, got {kind!r}")
    return kind


def _alpha(args, cfg):
    a = option(args, cfg, "alpha")
    if a is None:
        return None
    try:
        return ag.AlphaParam(float(a))
    except (InfogeoError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _float(args, cfg, name, default):
    value = option(args, cfg, name, default)
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InputError(f"{name} must be a number, got {value!r}") from None
    if not np.isfinite(value):
        raise InputError(f"{name} must be finite")
    return value


def _curve(prob: ProblemFile, domain=(0.0, 1.0)) -> cn.Curve:
    """Mixture line when ``q1, q2`` are given, exponential segment from ``(p, u)`` otherwise."""
    if prob.has("q1", "q2"):
        return cn.mix_segment(prob.density("q1"), prob.density("q2"), domain)
    if prob.has("p", "u"):
        p = prob.density("p")
        return cn.exp_segment(p, prob.tangent(p, "u"), domain)
    raise InputError("a curve needs columns q1,q2 (mixture) or p,u (exponential)")


# --------------------------------------------------------------------------
# commands; each returns (text, exit code)

def cmd_norm(args, cfg):
    prob = read_problem(args.input)
    phi = _phi(args, cfg)
    which = option(args, cfg, "which", "luxemburg")
    if which not in ("luxemburg", "orlicz"):
        raise InputError(f"which must be luxemburg or orlicz, got {which!r}")
    p = prob.density("p")
    name = "f" if prob.has("f") else "u"
    (f,) = prob.require(name)
    value = orlicz.luxemburg_norm(phi, p, f) if which == "luxemburg" else orlicz.orlicz_norm(phi, p, f)
    return dumps({"norm": which, "phi": phi.value, "value": value}), EXIT_OK


def cmd_chart(args, cfg):
    prob = read_problem(args.input)
    p = prob.density("p")
    if prob.has("u"):
        u = prob.tangent(p, "u")
        radius = charts.chart_norm(p, u)
        try:
            q = charts.chart_forward(p, u)
        except ChartDomainError as exc:
            out = dumps({"direction": "forward", "chart_norm": radius, "in_domain": False})
            raise CheckFailed(str(exc), out) from exc
        return dumps({"direction": "forward", "values": q.vals, "chart_norm": radius,
                      "in_domain": True}), EXIT_OK
    q = prob.density("q")
    u = charts.chart_inverse(p, q)
    return dumps({"direction": "inverse", "values": u.vals, "chart_norm": charts.chart_norm(p, u),
                  "in_domain": charts.in_chart_domain(p, q)}), EXIT_OK


def cmd_transport(args, cfg):
    prob = read_problem(args.input)
    kind = _kind(args, cfg)
    tol = _float(args, cfg, "tol", TRANSPORT_TOL)
    p, q = prob.density("p"), prob.density("q")
    u = prob.tangent(p, "u")
    moved = cn.transport_exp(p, q, u) if kind == "exp" else cn.transport_mix(p, q, u)
    centering = expectation(q, moved.vals)
    scale = max(1.0, float(np.max(np.abs(moved.vals))))
    ok = abs(centering) <= tol * scale
    out = dumps({"kind": kind, "values": moved.vals, "centering": centering,
                 "tolerance": tol, "passed": ok})
    if not ok:
        raise CheckFailed(f"transported vector off-centre by {fmt(centering)}", out)
    return out, EXIT_OK


def cmd_metric(args, cfg):
    prob = read_problem(args.input)
    p = prob.density("p")
    value = cn.fisher(p, prob.tangent(p, "u"), prob.tangent(p, "v"))
    return dumps({"fisher": value}), EXIT_OK


FIELDS = ("tangent", "exp-parallel", "mix-parallel")


def cmd_covderiv(args, cfg):
    prob = read_problem(args.input)
    c = _curve(prob)
    t = _float(args, cfg, "t", 0.5)
    if not 0.0 <= t <= 1.0:
        raise InputError("t must lie in [0, 1]")
    field = option(args, cfg, "field", "tangent")
    if field == "tangent":
        s = cn.curve_tangent_field(c)
    elif field == "exp-parallel":
        (m,) = prob.require("v")
        s = cn.exp_parallel_field(m)
    elif field == "mix-parallel":
        s = cn.mix_parallel_field(c(0.0), prob.tangent(c(0.0), "v"))
    else:
        raise InputError(f"field must be one of {', '.join(FIELDS)}")
    a = _alpha(args, cfg)
    if a is not None:
        connection, result = a.alpha, ag.nabla_alpha(a, s, c, t)
    else:
        kind = _kind(args, cfg)
        connection, result = kind, cn.covariant_derivative(kind, s, c, t)
    return dumps({"connection": connection, "field": field, "t": t,
                  "values": result.vals}), EXIT_OK


def cmd_geodesic(args, cfg):
    prob = read_problem(args.input)
    kind = _kind(args, cfg)
    steps = option(args, cfg, "steps", 101)
    if not isinstance(steps, int) or steps < 2:
        raise InputError("steps must be an integer >= 2")
    if kind == "exp":
        p = prob.density("p")
        c = cn.exp_segment(p, prob.tangent(p, "u"))
    else:
        c = cn.mix_segment(prob.density("q1"), prob.density("q2"))
    ts = np.linspace(0.0, 1.0, steps)
    residuals = cn.geodesic_residuals(c, kind, ts)
    header = ["t"] + [f"x{i}" for i in range(c.space.n)] + ["residual"]
    rows = [[float(t), *map(float, c(t).vals), float(r)] for t, r in zip(ts, residuals)]
    return csv_text(header, rows), EXIT_OK




def cmd_verify(args, cfg):
    settings = {k: cfg[k] for k in VERIFY_KEYS if k in cfg}
    for k in ("seed", "trials", "tol"):
        if getattr(args, k) is not None:
            settings[k] = getattr(args, k)
    if "atoms" in settings:
        settings["atoms"] = tuple(settings["atoms"])
    if "only" in settings and settings["only"] is not None:
        settings["only"] = tuple(settings["only"])
    try:
        vc = VerifyConfig.from_dict(settings)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad verify config: {exc}") from exc
    report = run_campaign(vc)
    for r in report.records:
        log.info("%s %s", "PASS" if r.passed else "FAIL", r.name)
    return report.to_json(timing=args.timing), EXIT_OK if report.passed else EXIT_CHECK


COMMANDS = {
    "norm": cmd_norm,
    "chart": cmd_chart,
    "transport": cmd_transport,
    "metric": cmd_metric,
    "covderiv": cmd_covderiv,
    "geodesic": cmd_geodesic,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infogeo", description="Information geometry on finite measure spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, needs_input=True):
        sp = sub.add_parser(name, help=help_)
        if needs_input:
            sp.add_argument("--input", required=True, help="CSV with a header row")
        sp.add_argument("--config", help="JSON sidecar with scalar parameters")
        sp.add_argument("--output", help="write the result here instead of stdout")
        return sp

    sp = add("norm", "Luxemburg or Orlicz norm of column f (or u) under p")
    sp.add_argument("--phi", type=int, choices=(1, 2, 3))
    sp.add_argument("--which", choices=("luxemburg", "orlicz"))

    add("chart", "exponential chart at p: forward from u, inverse from q")

    sp = add("transport", "move u from p to q")
    sp.add_argument("--kind", choices=("exp", "mix"))
    sp.add_argument("--tol", type=float)

    add("metric", "Fisher scalar product of u and v at p")

    sp = add("covderiv", "covariant derivative of a field along a curve")
    sp.add_argument("--kind", choices=("exp", "mix"))
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--field", choices=FIELDS)
    sp.add_argument("--t", type=float, help="curve parameter in [0, 1]")

    sp = add("geodesic", "sample a geodesic and its residual")
    sp.add_argument("--kind", choices=("exp", "mix"))
    sp.add_argument("--steps", type=int)

    sp = add("verify", "run the property campaign", needs_input=False)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    return parser


def _setup_logging():
    level = os.environ.get("INFOGEO_LOG", "WARNING").strip().upper()
    if level.isdigit():
        level = int(level)
    elif not isinstance(getattr(logging, level, None), int):
        level = "WARNING"
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _emit(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        cfg = load_sidecar(args.config)
        text, code = COMMANDS[args.command](args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        if exc.output:
            _emit(exc.output, args.output)
        return EXIT_CHECK
    except InfogeoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    try:
        _emit(text, args.output)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
