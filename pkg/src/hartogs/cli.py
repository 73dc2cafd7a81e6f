"""Command-line front end: Cartesian parameter sweeps with CSV/JSON output.

Examples:
  hartogs ratio --j 3 --p 3 --k 50:400:8
  hartogs asymptotics --alpha=-100:100:1000 --format json --out asym.json
  hartogs --reproduce eq-test-divergence --format json

Ranges are written ``a,b,c`` (explicit list), ``start:stop:count`` (evenly
spaced, endpoints included) or ``geom:start:stop:count`` (evenly spaced in
log). A range starting with ``-`` must be attached with ``=``.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import mpmath
import numpy as np

from . import __version__
from .errors import ConvergenceError, DivergenceError, DomainError
from .geometry import ConeSpec
from .kernels import exp_diagonal_comparator, hartogs_monomial_norm, hinf_monomial_norm
from .lp_probe import (
    ProbeParams,
    chen_decompositions,
    divergence_verdict,
    edholm_mcneal_interval,
    test_ratio,
)
from .moments import (
    LAMBDA,
    RadialWeight,
    asymptotic_neg_probe,
    asymptotic_pos_probe,
    moment,
    recurrence_defect,
)
from .numerics import LogReal, log_gamma, quad_oracle
from .scan import DEFAULT_THRESHOLD, RayScan, cone_ray_scan, quad2d_norm_oracle, summarize_scan

__all__ = [
    "UsageError",
    "Column",
    "SweepConfig",
    "ResultEnvelope",
    "RECIPES",
    "parse_range",
    "run",
    "emit",
    "parse_json",
    "main",
]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DIVERGENCE = 3
INV_E = math.exp(-1.0)


class UsageError(ValueError):
    """Invalid configuration; the message names the offending field."""


# ---------------------------------------------------------------- config


@dataclass(frozen=True)
class Column:
    name: str
    kind: str  # int | float | str | bool | logreal


@dataclass(frozen=True)
class Axis:
    name: str
    kind: str  # int | float | str
    default: str
    check: Callable[[object], str | None] | None = None
    flag: str | None = None
    help: str = ""

    @property
    def option(self) -> str:
        return self.flag or "--" + self.name.replace("_", "-")


@dataclass(frozen=True)
class SweepConfig:
    command: str
    params: tuple[tuple[str, tuple], ...]  # sweep axes in iteration order
    options: tuple[tuple[str, object], ...] = ()
    tier: str = "fast"
    out: str | None = None
    fmt: str = "csv"

    def record(self) -> dict:
        """The hashed part of the config; output path and format are excluded."""
        return {
            "command": self.command,
            "params": {name: list(values) for name, values in self.params},
            "options": dict(self.options),
            "tier": self.tier,
        }

    def canonical(self) -> str:
        return json.dumps(self.record(), sort_keys=True, separators=(",", ":"))

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()

    def values(self, name: str) -> tuple:
        return dict(self.params)[name]

    def option(self, name: str, default=None):
        return dict(self.options).get(name, default)


@dataclass
class ResultEnvelope:
    command: str
    config: dict
    config_hash: str
    columns: tuple[Column, ...]
    rows: list[dict]
    summary: dict
    tool_version: str


def parse_range(text: str, field: str, kind: str = "float") -> tuple:
    """Expand a range expression into a tuple of values."""
    text = text.strip()
    if kind == "str":
        values = tuple(v.strip() for v in text.split(",") if v.strip())
        if not values:
            raise UsageError(f"{field}: empty range")
        return values
    try:
        if text.startswith("geom:"):
            start, stop, count = text[5:].split(":")
            if int(count) < 1:
                raise UsageError(f"{field}: empty range")
            if float(start) <= 0 or float(stop) <= 0:
                raise UsageError(f"{field}: geometric range needs positive endpoints")
            raw = np.geomspace(float(start), float(stop), int(count)).tolist()
        elif ":" in text:
            start, stop, count = text.split(":")
            if int(count) < 1:
                raise UsageError(f"{field}: empty range")
            raw = np.linspace(float(start), float(stop), int(count)).tolist()
        else:
            raw = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{field}: cannot parse range {text!r}") from None
    if not all(math.isfinite(v) for v in raw):
        raise UsageError(f"{field}: values must be finite")
    if kind == "int":
        ints = []
        for v in raw:
            if abs(v - round(v)) > 1e-9 * max(1.0, abs(v)):
                raise UsageError(f"{field}: expected integers, got {v!r}")
            ints.append(int(round(v)))
        return tuple(ints)
    return tuple(float(v) for v in raw)


def _at_least(bound, strict=False):
    def check(v):
        ok = v > bound if strict else v >= bound
        return None if ok else f"must be {'>' if strict else '>='} {bound}, got {v!r}"
    return check


def _weight_c_check(v):
    return None if v >= 0 else f"must be >= 0, got {v!r}"


def _unit_interval(v):
    return None if 0 < v < 1 else f"radii must lie in (0, 1), got {v!r}"


WEIGHT_AXES = (
    Axis("weight_t", "float", "0", help="weight exponent t in r^t exp(-c/r)"),
    Axis("weight_c", "float", "1", _weight_c_check, help="weight scale c >= 0"),
)


# ---------------------------------------------------------------- commands


def _status(fn):
    """Evaluate ``fn``; return (status, result, note) without raising numerical errors."""
    try:
        return "ok", fn(), ""
    except DivergenceError as exc:
        return "divergent", None, str(exc)
    except ConvergenceError as exc:
        return "no-convergence", None, str(exc)
    except DomainError as exc:
        return "domain-error", None, str(exc)



def _run_moment(cfg: SweepConfig):
    rows = []
    for t, c, alpha in itertools.product(*(cfg.values(n) for n in ("weight_t", "weight_c", "alpha"))):
        weight = RadialWeight(t, c)
        status, value, note = _status(lambda: moment(weight, alpha))
        oracle = None
        if status == "ok" and cfg.tier == "oracle":
            order = alpha + t
            result = quad_oracle(lambda r: r**order * mpmath.exp(-c / r), 0.0, 1.0, tol=1e-15)
            oracle = float(mpmath.log(result))
        rows.append({"t": t, "c": c, "alpha": alpha, "status": status, "moment": value,
                     "oracle_logmag": oracle, "note": note})
    logs = [r["moment"].logmag for r in rows if r["status"] == "ok"]
    summary = {"rows": len(rows), "ok_rows": len(logs),
               "min_logmag": min(logs, default=None), "max_logmag": max(logs, default=None)}
    return rows, summary


def _run_asymptotics(cfg: SweepConfig):
    rows = []
    for alpha in cfg.values("alpha"):
        defect = pos = neg = bound = None
        notes = []
        if alpha != -1:
            defect = recurrence_defect(alpha)
        else:
            notes.append("recurrence undefined at alpha = -1")
        if alpha > 0:
            pos = asymptotic_pos_probe(alpha)
        if alpha > 2:
            neg = asymptotic_neg_probe(alpha)
            bound = math.exp(-math.log(alpha - 1.0) - log_gamma(alpha - 1.0))
        rows.append({
            "alpha": alpha, "status": "ok", "recurrence_defect": defect,
            "pos_probe": pos, "pos_gap": None if pos is None else pos - INV_E,
            "neg_probe": neg, "neg_gap": None if neg is None else neg - 1.0,
            "neg_bound": bound, "note": "; ".join(notes),
        })
    defects = [abs(r["recurrence_defect"]) for r in rows if r["recurrence_defect"] is not None]
    summary = {"rows": len(rows), "inv_e": INV_E, "max_abs_recurrence_defect": max(defects, default=None)}
    return rows, summary


def _run_kernel_diag(cfg: SweepConfig):
    rows = []
    for t, c, r in itertools.product(*(cfg.values(n) for n in ("weight_t", "weight_c", "r"))):
        weight = RadialWeight(t, c)
        status, comp, note = _status(lambda: exp_diagonal_comparator(r, weight))
        row = {"t": t, "c": c, "r": r, "status": status, "kernel": None, "tail": None,
               "closed_form": None, "ratio": None, "note": note}
        if comp is not None:
            row.update(kernel=comp.series_value, tail=comp.series_tail)
            if weight == LAMBDA:
                row.update(closed_form=comp.closed_form_value, ratio=comp.ratio)
        rows.append(row)
    rel_tails = [math.exp(r["tail"].logmag - r["kernel"].logmag) for r in rows
                 if r["kernel"] is not None and r["tail"].sign != 0]
    summary = {"rows": len(rows), "max_relative_tail": max(rel_tails, default=0.0)}
    return rows, summary


def _run_ratio(cfg: SweepConfig):
    rows = []
    names = ("weight_t", "weight_c", "j", "p", "k")
    for t, c, j, p, k in itertools.product(*(cfg.values(n) for n in names)):
        status, res, note = _status(lambda: test_ratio(ProbeParams(j, k, p, RadialWeight(t, c))))
        rows.append({
            "t": t, "c": c, "j": j, "p": p, "k": k, "status": status,
            "log_ratio": None if res is None else res.log_ratio,
            "per_k_rate": None if res is None else res.per_k_rate,
            "predicted_rate": None if res is None else res.predicted_rate,
            "note": note,
        })
    groups = []
    for key, group in itertools.groupby(rows, key=lambda r: (r["t"], r["c"], r["j"], r["p"])):
        ok = [r for r in group if r["status"] == "ok"]
        entry = {"t": key[0], "c": key[1], "j": key[2], "p": key[3], "ok_rows": len(ok),
                 "min_log_ratio": None, "max_log_ratio": None, "slope": None, "increasing_in_k": None}
        if ok:
            logs = [r["log_ratio"] for r in ok]
            ks = [r["k"] for r in ok]
            entry.update(min_log_ratio=min(logs), max_log_ratio=max(logs))
            if len(set(ks)) >= 2:
                entry["slope"] = float(np.polyfit(np.array(ks, float), np.array(logs), 1)[0])
                order = sorted(zip(ks, logs))
                entry["increasing_in_k"] = all(b[1] > a[1] for a, b in zip(order, order[1:]))
        groups.append(entry)
    return rows, {"rows": len(rows), "groups": groups}


def _run_verdict(cfg: SweepConfig):
    rows = []
    names = ("weight_t", "weight_c", "j", "p", "k")
    for t, c, j, p, k_max in itertools.product(*(cfg.values(n) for n in names)):
        v = divergence_verdict(j, p, RadialWeight(t, c), k_max)
        rows.append({
            "t": t, "c": c, "j": j, "p": p, "k_max": k_max,
            "status": "divergent" if v.verdict == "structural-divergence" else "ok",
            "verdict": v.verdict, "slope": v.slope, "intercept": v.intercept,
            "residual": v.residual, "predicted_rate": v.predicted_rate,
            "relative_rate_error": v.relative_rate_error, "note": v.note,
        })
    counts: dict[str, int] = {}
    for r in rows:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    return rows, {"rows": len(rows), "verdicts": {k: counts[k] for k in sorted(counts)}}


def _run_cone_scan(cfg: SweepConfig):
    rows = []
    scans = []
    threshold = cfg.option("threshold", DEFAULT_THRESHOLD)
    corrected = cfg.option("mu_correction", False)
    grid = cfg.values("r")
    names = ("weight_t", "weight_c", "gamma", "tau")
    for t, c, gamma, tau in itertools.product(*(cfg.values(n) for n in names)):
        scan = RayScan(ConeSpec(gamma), grid, tau, corrected)
        try:
            scan.validate()
        except DomainError as exc:
            raise UsageError(f"--grid: {exc}") from None
        scan_rows = cone_ray_scan(scan, RadialWeight(t, c))
        for sr in scan_rows:
            rows.append({"t": t, "c": c, "gamma": gamma, "tau": tau, "r": sr.r, "status": "ok",
                         "value": sr.value, "fiber_factor": sr.fiber_factor})
        s = summarize_scan(scan_rows, threshold)
        scans.append({
            "t": t, "c": c, "gamma": gamma, "tau": tau, "sup_log": s.sup_log, "r_at_sup": s.r_at_sup,
            "first_exceed_r": s.first_exceed_r, "monotone_tail": s.monotone_tail,
            "unbounded": s.unbounded, "last_decade_log_drift": s.last_decade_log_drift,
        })
    return rows, {"rows": len(rows), "threshold": threshold, "mu_correction": corrected, "scans": scans}


def _run_intervals(cfg: SweepConfig):
    rows = []
    for t in cfg.values("t"):
        for kind, iv in zip(("chen", "chen-neighbour"), chen_decompositions(t)):
            rows.append({"kind": kind, "t": t, "s": iv.s, "k": iv.k, "p_lo": iv.p_lo,
                         "p_hi": iv.p_hi, "contains_two": iv.contains_two})
    for k in cfg.values("k"):
        lo, hi = edholm_mcneal_interval(k)
        rows.append({"kind": "edholm-mcneal", "t": None, "s": None, "k": k, "p_lo": lo,
                     "p_hi": hi, "contains_two": lo < 2.0 < hi})
    return rows, {"rows": len(rows)}


def _run_oracle(cfg: SweepConfig):
    rows = []
    tol = 1e-13 if cfg.tier == "oracle" else 1e-11
    names = ("domain", "weight_t", "weight_c", "n", "m", "p")
    worst = 0.0
    for domain, t, c, n, m, p in itertools.product(*(cfg.values(x) for x in names)):
        weight = RadialWeight(t, c)
        if domain == "H":
            status, formula, note = _status(lambda: hartogs_monomial_norm(weight, n, m, p))
        else:
            status, formula, note = _status(lambda: hinf_monomial_norm(n, m, p, weight))
        oracle = rel = None
        if status == "ok":
            status, oracle, note = _status(lambda: quad2d_norm_oracle(domain, weight, n, m, p, tol=tol))
            if oracle is not None:
                rel = abs(oracle / formula.to_real() - 1.0)
                worst = max(worst, rel)
        rows.append({"domain": domain, "t": t, "c": c, "n": n, "m": m, "p": p, "status": status,
                     "oracle_value": oracle, "formula": formula, "relative_difference": rel, "note": note})
    return rows, {"rows": len(rows), "max_relative_difference": worst}


@dataclass(frozen=True)
class Command:
    help: str
    axes: tuple[Axis, ...]
    columns: tuple[Column, ...]
    runner: Callable
    single_eval_exit: bool = True


def _cols(spec: str) -> tuple[Column, ...]:
    return tuple(Column(*item.split(":")) for item in spec.split())


_POSITIVE = _at_least(0, strict=True)

COMMANDS: dict[str, Command] = {
    "moment": Command(
        "moments M(alpha) of the weight r^t exp(-c/r) on (0, 1)",
        WEIGHT_AXES + (Axis("alpha", "float", "0"),),
        _cols("t:float c:float alpha:float status:str moment:logreal oracle_logmag:float note:str"),
        _run_moment,
    ),
    "asymptotics": Command(
        "recurrence defect and both large-alpha limits of I(alpha)",
        (Axis("alpha", "float", "100,1000,10000"),),
        _cols("alpha:float status:str recurrence_defect:float pos_probe:float pos_gap:float "
              "neg_probe:float neg_gap:float neg_bound:float note:str"),
        _run_asymptotics,
    ),
    "kernel-diag": Command(
        "diagonal 2 pi B(r, r) on the punctured disc, with the closed-form comparison for (0, 1)",
        WEIGHT_AXES + (Axis("r", "float", "0.05,0.1,0.3,0.5,0.9", _unit_interval, flag="--grid"),),
        _cols("t:float c:float r:float status:str kernel:logreal tail:logreal "
              "closed_form:logreal ratio:float note:str"),
        _run_kernel_diag,
    ),
    "ratio": Command(
        "log of the test-family norm ratio over a (j, p, k) grid",
        WEIGHT_AXES + (
            Axis("j", "int", "3", _at_least(2)),
            Axis("p", "float", "3", _at_least(1, strict=True)),
            Axis("k", "int", "50:400:8", _at_least(1)),
        ),
        _cols("t:float c:float j:int p:float k:int status:str log_ratio:float "
              "per_k_rate:float predicted_rate:float note:str"),
        _run_ratio,
    ),
    "verdict": Command(
        "least-squares growth verdict over k in [k/2, k]",
        WEIGHT_AXES + (
            Axis("j", "int", "3", _at_least(2)),
            Axis("p", "float", "3", _at_least(1, strict=True)),
            Axis("k", "int", "200", _at_least(50), help="k_max"),
        ),
        _cols("t:float c:float j:int p:float k_max:int status:str verdict:str slope:float "
              "intercept:float residual:float predicted_rate:float relative_rate_error:float note:str"),
        _run_verdict,
    ),
    "cone-scan": Command(
        "delta^tau B_H(z, z) along a ray inside the cone gamma |z2| < |z1|",
        WEIGHT_AXES + (
            Axis("gamma", "float", "2", _at_least(1, strict=True)),
            Axis("tau", "float", "10"),
            Axis("r", "float", "geom:0.5:0.004:120", _unit_interval, flag="--grid"),
        ),
        _cols("t:float c:float gamma:float tau:float r:float status:str value:logreal fiber_factor:float"),
        _run_cone_scan,
        single_eval_exit=False,
    ),
    "intervals": Command(
        "reference L^p intervals: Chen (|z1|^t weights) and Edholm-McNeal (H_k)",
        (Axis("t", "float", "0.5,2,4,6", _POSITIVE), Axis("k", "int", "1,10", _at_least(1))),
        _cols("kind:str t:float s:float k:int p_lo:float p_hi:float contains_two:bool"),
        _run_intervals,
        single_eval_exit=False,
    ),
    "oracle": Command(
        "monomial p-norms over H or H_inf: closed form against 2D quadrature",
        (Axis("domain", "str", "H,H_inf", lambda v: None if v in ("H", "H_inf") else f"unknown domain {v!r}"),)
        + WEIGHT_AXES
        + (Axis("n", "int", "0"), Axis("m", "int", "0", _at_least(0)), Axis("p", "float", "2", _POSITIVE)),
        _cols("domain:str t:float c:float n:int m:int p:float status:str oracle_value:float "
              "formula:logreal relative_difference:float note:str"),
        _run_oracle,
    ),
}

RECIPES: dict[str, list[str]] = {
    "moment-recurrence": ["asymptotics", "--alpha=-100:100:1000"],
    "eq-pos": ["asymptotics", "--alpha", "100,1000,10000,1000000"],
    "eq-neg": ["asymptotics", "--alpha", "3,5,10,20,50"],
    "eq-test-divergence": ["ratio", "--j", "3", "--p", "3", "--k", "50:400:8"],
    "p2-contraction": ["ratio", "--weight-t", "0,2", "--weight-c", "1,2", "--j", "2:20:19", "--p", "2",
                       "--k", "1,10,50,200"],
    "lambda-tilde-shift": ["ratio", "--weight-t", "0,2", "--j", "3", "--p", "3", "--k", "7"],
    "diagonal-closed-form": ["kernel-diag", "--grid", "0.05,0.1,0.3,0.5,0.9"],
    "cone-unbounded": ["cone-scan", "--tau", "10,20", "--gamma", "2"],
    "cone-corrected": ["cone-scan", "--tau", "5", "--gamma", "1.5,2,10", "--mu-correction"],
    "cone-polynomial": ["cone-scan", "--weight-t", "2", "--weight-c", "0", "--tau", "4"],
    "hinf-gram": ["oracle", "--domain", "H_inf", "--weight-c", "0", "--n=-5,-1,0,3", "--m", "0,2",
                  "--p", "2,3.5"],
    "verdict-c-independence": ["verdict", "--weight-c", "1,2", "--j", "3", "--p", "3", "--k", "200"],
    "intervals": ["intervals", "--t", "0.5,2,4,6", "--k", "1,10"],
}


def run(config: SweepConfig) -> ResultEnvelope:
    """Execute the configured sweep; rows come out in Cartesian (lexicographic) order."""
    command = COMMANDS[config.command]
    rows, summary = command.runner(config)
    return ResultEnvelope(
        command=config.command,
        config=config.record(),
        config_hash=config.config_hash,
        columns=command.columns,
        rows=rows,
        summary=summary,
        tool_version=__version__,
    )


# ---------------------------------------------------------------- emission


def _fmt_float(x: float) -> str:
    # adding 0.0 turns a signed zero into +0
    return "%.17g" % (x + 0.0)


def _csv_cells(col: Column, value) -> list[str]:
    if col.kind == "logreal":
        return ["", ""] if value is None else [str(value.sign), _fmt_float(value.logmag)]
    if value is None:
        return [""]
    if col.kind == "float":
        return [_fmt_float(value)]
    if col.kind == "bool":
        return ["true" if value else "false"]
    return [str(value)]


def header(columns) -> list[str]:
    names = []
    for col in columns:
        names.extend([col.name + "_sign", col.name + "_logmag"] if col.kind == "logreal" else [col.name])
    return names


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return _fmt_float(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _json_row(columns, row: dict) -> dict:
    out = {}
    for col in columns:
        value = row.get(col.name)
        if col.kind == "logreal":
            out[col.name + "_sign"] = None if value is None else value.sign
            out[col.name + "_logmag"] = None if value is None else _fmt_float(value.logmag)
        else:
            out[col.name] = _json_safe(value)
    return out


def emit(envelope: ResultEnvelope, fmt: str) -> bytes:
    """Serialize an envelope. CSV carries the rows only; JSON carries everything."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(header(envelope.columns))
        for row in envelope.rows:
            writer.writerow([cell for col in envelope.columns for cell in _csv_cells(col, row.get(col.name))])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        doc = {
            "command": envelope.command,
            "config": envelope.config,
            "config_hash": envelope.config_hash,
            "tool_version": envelope.tool_version,
            "columns": [{"name": c.name, "kind": c.kind} for c in envelope.columns],
            "rows": [_json_row(envelope.columns, row) for row in envelope.rows],
            "summary": _json_safe(envelope.summary),
        }
        return (json.dumps(doc, indent=2, allow_nan=False) + "\n").encode("utf-8")
    raise UsageError(f"--format: unknown format {fmt!r}")


def parse_json(data: bytes | str) -> ResultEnvelope:
    """Inverse of ``emit(..., "json")``."""
    doc = json.loads(data)
    columns = tuple(Column(c["name"], c["kind"]) for c in doc["columns"])
    rows = []
    for raw in doc["rows"]:
        row = {}
        for col in columns:
            if col.kind == "logreal":
                sign, logmag = raw[col.name + "_sign"], raw[col.name + "_logmag"]
                row[col.name] = None if sign is None else LogReal(sign, float(logmag))
            else:
                value = raw[col.name]
                row[col.name] = float(value) if col.kind == "float" and isinstance(value, str) else value
        rows.append(row)
    return ResultEnvelope(doc["command"], doc["config"], doc["config_hash"], columns, rows,
                          doc["summary"], doc["tool_version"])


# ---------------------------------------------------------------- argv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hartogs",
        description="Weighted Bergman kernel and L^p probe experiments.",
        epilog="recipes for --reproduce: " + ", ".join(RECIPES),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--reproduce", metavar="RECIPE", help="run a bundled experiment")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tier", choices=("fast", "oracle"), default="fast")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name, command in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=command.help, description=command.help)
        for axis in command.axes:
            p.add_argument(axis.option, dest=axis.name, default=axis.default,
                           help=f"{axis.help + '; ' if axis.help else ''}default {axis.default}")
        if name == "cone-scan":
            p.add_argument("--mu-correction", action="store_true", help="multiply by the weight nu(|z1|)")
            p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                           help="log-value threshold for the unbounded reading")
    return parser


def config_from_args(ns: argparse.Namespace) -> SweepConfig:
    command = COMMANDS[ns.command]
    params = []
    for axis in command.axes:
        values = parse_range(getattr(ns, axis.name), axis.option, axis.kind)
        if axis.check is not None:
            for v in values:
                problem = axis.check(v)
                if problem:
                    raise UsageError(f"{axis.option}: {problem}")
        params.append((axis.name, values))
    options = []
    if ns.command == "cone-scan":
        options = [("mu_correction", bool(ns.mu_correction)), ("threshold", float(ns.threshold))]
    if ns.out is not None:
        parent = Path(ns.out).resolve().parent
        if not parent.is_dir():
            raise UsageError(f"--out: directory {str(parent)!r} does not exist")
    return SweepConfig(ns.command, tuple(params), tuple(options), ns.tier, ns.out, ns.format)


def _expand_reproduce(argv: list[str]) -> list[str]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--reproduce")
    ns, rest = pre.parse_known_args(argv)
    if ns.reproduce is None:
        return argv
    if ns.reproduce not in RECIPES:
        raise UsageError(f"--reproduce: unknown recipe {ns.reproduce!r}; choose from {', '.join(RECIPES)}")
    return RECIPES[ns.reproduce] + rest


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _expand_reproduce(argv)
        parser = build_parser()
        try:
            ns = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        if ns.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        config = config_from_args(ns)
        envelope = run(config)
        payload = emit(envelope, config.fmt)
    except UsageError as exc:
        print(f"hartogs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if config.out is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        try:
            Path(config.out).write_bytes(payload)
        except OSError as exc:
            print(f"hartogs: error: cannot write {config.out!r}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    single = len(envelope.rows) == 1 and COMMANDS[config.command].single_eval_exit
    if single and envelope.rows[0].get("status") == "divergent":
        print(f"hartogs: divergence: {envelope.rows[0].get('note', '')}", file=sys.stderr)
        return EXIT_DIVERGENCE
    return EXIT_OK
