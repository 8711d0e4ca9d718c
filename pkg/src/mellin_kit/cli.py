"""Command-line experiment runner.

Every subcommand builds a catalog entry, runs one experiment and writes a
CSV table, a JSON report ``{command, config_echo, results, tolerances,
pass}`` or a log-log SVG. Exit status: 0 success, 1 numerical failure
(tolerance exceeded or numerical error), 2 usage or configuration error.
Values come from flags, then the ``--config`` JSON file, then defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import testlib
from .calculus import BoasConfig, boas_derivative, boas_remainder, mellin_derivative
from .core import SpaceDescriptor, xnorm
from .distance import (
    DistanceQuery,
    bernstein_check,
    bernstein_extended_check,
    dist_q,
    rate_fit,
    sobolev_bound,
    theta_l2_norm,
)
from .errors import (
    DomainError,
    InvalidParametersError,
    MellinKitError,
    NotFoundError,
    UnsupportedSpaceError,
)
from .sampling import (
    SamplingConfig,
    exp_sampling_bound,
    exp_sampling_reconstruct,
    exp_sampling_remainder_sup,
    lattice_samples,
    reproducing_kernel_apply,
    reproducing_kernel_remainder,
    rk_remainder_sup,
)
from .transform import mellin_forward

SEED_ENV = "MELLIN_KIT_SEED"  # reserved; every computation is deterministic

EXIT_OK, EXIT_NUMERICAL, EXIT_USAGE = 0, 1, 2

DEFAULTS: dict[str, Any] = {
    "entry": None,
    "T": 1.0,
    "c": 1.0,
    "sigma0": 2.0,
    "n": 8,
    "m": 2,
    "q": 1.0,
    "r": 1,
    "k": 0,
    "K": 5000,
    "kmax": 300,
    "space_p": None,
    "sigmas": [2.0, 4.0, 8.0, 16.0],
    "xs": [0.5, 1.0, math.e],
    "vs": list(np.linspace(-8.0, 8.0, 33)),
    "Ts": [0.5, 1.0, 2.0],
    "samples": None,
    "out": None,
    "format": None,
}

ENTRY_PARAMS = {
    "sinc_shifted": ("T", "c"),
    "sinc_centered": ("T", "c"),
    "gauss_log": ("c",),
    "bump_bl": ("sigma0", "n", "c"),
    "sobolev_m": ("m", "c"),
    "lin_kernel": ("c",),
}

DEFAULT_ENTRY = {
    "transform": "gauss_log",
    "reconstruct": "gauss_log",
    "kernel-apply": "gauss_log",
    "differentiate": "bump_bl",
    "distance": "sobolev_m",
    "rates": "sobolev_m",
    "verify-sharpness": None,
    "verify-bernstein": "bump_bl",
    "list-catalog": None,
}

DEFAULT_FORMAT = {"transform": "csv", "distance": "csv", "rates": "json"}

CSV_HEADERS = {
    "transform": ["v", "re", "im"],
    "differentiate": ["x", "boas", "spectral", "abs_diff", "tail_bound", "remainder"],
    "distance": ["sigma", "dist", "bound", "slope_running"],
    "list-catalog": ["x", "re", "im"],
}


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(eval_token(tok)) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def eval_token(tok: str) -> float:
    tok = tok.strip().lower()
    named = {"pi": math.pi, "e": math.e, "inf": math.inf}
    if tok in named:
        return named[tok]
    return float(tok)


def _number(text: str) -> float:
    try:
        return eval_token(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--entry", help="catalog entry name")
    common.add_argument("--T", type=_number, help="sampling/bandwidth parameter (pi T)")
    common.add_argument("--c", type=_number, help="Mellin exponent")
    common.add_argument("--sigma0", type=_number, help="bump_bl support half-width")
    common.add_argument("--n", type=int, help="bump_bl window power")
    common.add_argument("--m", type=int, help="sobolev_m order")
    common.add_argument("--q", type=_number, help="distance index q (inf allowed)")
    common.add_argument("--r", type=int, help="smoothness order")
    common.add_argument("--k", type=int, help="derivative order inside the distance")
    common.add_argument("--K", type=int, help="Boas truncation")
    common.add_argument("--kmax", type=int, help="sampling series half-width")
    common.add_argument("--space-p", dest="space_p", type=int, choices=(1, 2), help="bound space X^p")
    common.add_argument("--sigmas", type=_float_list, help="comma-separated sigma sweep")
    common.add_argument("--xs", type=_float_list, help="comma-separated probe points x > 0")
    common.add_argument("--vs", type=_float_list, help="comma-separated v grid (uniform)")
    common.add_argument("--Ts", type=_float_list, help="comma-separated T sweep")
    common.add_argument("--samples", help="CSV file with header k,re,im")
    common.add_argument("--config", help="JSON file with option values")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json", "svg"))

    parser = argparse.ArgumentParser(prog="mellin-kit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("transform", "sample the Mellin transform of an entry"),
        ("reconstruct", "exponential sampling reconstruction report"),
        ("kernel-apply", "reproducing-kernel integral and its remainder"),
        ("differentiate", "Boas series against the spectral derivative"),
        ("distance", "sigma sweep of dist_q with Sobolev bounds"),
        ("rates", "fitted log-log slope of dist_q against sigma"),
        ("verify-sharpness", "the two equality cases of the remainder bounds"),
        ("verify-bernstein", "Bernstein and extended Bernstein inequalities"),
        ("list-catalog", "catalog dump, or an entry on a grid with --entry"),
    ]:
        sub.add_parser(name, parents=[common], help=text, argument_default=argparse.SUPPRESS)
    return parser


def _load_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    out = {}
    for key, val in data.items():
        if key in ("sigmas", "xs", "vs", "Ts"):
            if isinstance(val, str):
                val = _float_list(val)
            if not isinstance(val, list) or not val:
                raise UsageError(f"{key} must be a nonempty list")
            val = [float(v) for v in val]
        elif key in ("n", "m", "r", "k", "K", "kmax", "space_p") and val is not None:
            val = int(val)
        elif key in ("T", "c", "sigma0", "q") and isinstance(val, str):
            val = eval_token(val)
        out[key] = val
    return out


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and flags (flags win)."""
    cfg = dict(DEFAULTS)
    flags = vars(args).copy()
    command = flags.pop("command")
    if "config" in flags:
        cfg.update(_load_config(flags.pop("config")))
    cfg.update(flags)
    if cfg["entry"] is None:
        cfg["entry"] = DEFAULT_ENTRY[command]
    if cfg["format"] is None:
        cfg["format"] = DEFAULT_FORMAT.get(command, "json")
    if any(x <= 0 for x in cfg["xs"]):
        raise UsageError("probe points must be positive")
    if any(s <= 0 for s in cfg["sigmas"]) or any(t <= 0 for t in cfg["Ts"]) or cfg["T"] <= 0:
        raise UsageError("sigma and T values must be positive")
    cfg["command"] = command
    return cfg


def make_entry(cfg: dict, name: str | None = None) -> testlib.TestPair:
    name = name or cfg["entry"]
    if name not in ENTRY_PARAMS:
        raise NotFoundError(f"unknown catalog entry {name!r}; known: {', '.join(testlib.NAMES)}")
    return testlib.lookup(name, **{p: cfg[p] for p in ENTRY_PARAMS[name]})


def _num(x):
    """JSON-safe float: non-finite values become strings."""
    x = float(x)
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")


def _cplx(z) -> list:
    z = complex(z)
    return [_num(z.real), _num(z.imag)]


def _fmt(x) -> str:
    return repr(float(x))


# -- subcommands -----------------------------------------------------------


def cmd_transform(cfg):
    pair = make_entry(cfg)
    tc = pair.transform_cfg
    v = np.asarray(cfg["vs"], dtype=float)
    if len(v) < 2:
        raise UsageError("--vs needs at least two points")
    samples = mellin_forward(pair.f, v, tc.t_window, tc.t_step,
                             floor=tc.floor, allow_slow_decay=tc.allow_slow_decay)
    exact = pair.phi(v)
    err = float(np.max(np.abs(samples.values - exact)))
    tol = 1e-2 if pair.slow_decay else 1e-8
    rows = [[_fmt(a), _fmt(z.real), _fmt(z.imag)] for a, z in zip(v, samples.values)]
    results = [{"v": _num(a), "phi": _cplx(z), "exact": _cplx(e)} for a, z, e in zip(v, samples.values, exact)]
    return rows, results, {"max_abs_error": tol, "observed": err}, err <= tol


def _read_samples(path: str) -> dict[int, complex]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != ["k", "re", "im"]:
                raise UsageError("samples CSV must have header k,re,im")
            return {int(r["k"]): complex(float(r["re"]), float(r["im"])) for r in reader}
    except OSError as exc:
        raise UsageError(f"cannot read samples: {exc}") from None
    except (ValueError, KeyError) as exc:
        raise UsageError(f"malformed samples CSV: {exc}") from None


def cmd_reconstruct(cfg):
    pair = make_entry(cfg)
    T, c = cfg["T"], pair.f.c
    kr = (-cfg["kmax"], cfg["kmax"])
    sc = SamplingConfig(T, c, kr)
    samples = _read_samples(cfg["samples"]) if cfg["samples"] else lattice_samples(pair.f, T, kr)
    results, ok = [], True
    for x in cfg["xs"]:
        rep = exp_sampling_reconstruct(samples, x, sc, reference=pair.f, spectrum=pair.phi)
        slack = rep.certified_bound + rep.truncation_estimate + 1e-9
        within = abs(rep.remainder) <= slack
        ok &= within
        results.append({
            "x": _num(x), "value": _cplx(rep.value), "remainder": _cplx(rep.remainder),
            "certified_bound": _num(rep.certified_bound),
            "truncation_estimate": _num(rep.truncation_estimate), "within_bound": bool(within),
        })
    return None, results, {"absolute_slack": 1e-9}, ok


def cmd_kernel_apply(cfg):
    pair = make_entry(cfg)
    T, c = cfg["T"], pair.f.c
    results, ok = [], True
    tol = 1e-3
    for x in cfg["xs"]:
        rep = reproducing_kernel_apply(pair.f, x, T, c)
        rstar, bound = reproducing_kernel_remainder(pair.phi, x, T, c)
        consistent = abs(rep.remainder - rstar) <= tol
        within = abs(rstar) <= bound + 1e-9
        ok &= consistent and within
        results.append({
            "x": _num(x), "value": _cplx(rep.value), "remainder": _cplx(rep.remainder),
            "remainder_spectral": _cplx(rstar), "certified_bound": _num(bound),
            "kernel_tail_estimate": _num(rep.truncation_estimate),
            "consistent": bool(consistent), "within_bound": bool(within),
        })
    return None, results, {"identity_abs": tol, "bound_slack": 1e-9}, ok


def cmd_differentiate(cfg):
    pair = make_entry(cfg)
    T, c = cfg["T"], pair.f.c
    bc = BoasConfig(T, cfg["K"], c)
    xs = np.asarray(cfg["xs"], dtype=float)
    spectral = mellin_derivative(pair.f, 1, xs)
    rows, results, ok = [], [], True
    for x, ref in zip(xs, spectral):
        est = boas_derivative(pair.f, x, bc)
        rem = boas_remainder(pair.phi, x, T, c)
        diff = abs(ref - est.value)
        good = abs(ref - est.value - rem) <= est.tail_bound + 1e-6
        ok &= good
        rows.append([_fmt(x), _fmt(est.value.real), _fmt(complex(ref).real), _fmt(diff),
                     _fmt(est.tail_bound), _fmt(abs(rem))])
        results.append({"x": _num(x), "boas": _cplx(est.value), "spectral": _cplx(ref),
                        "abs_diff": _num(diff), "tail_bound": _num(est.tail_bound),
                        "remainder": _cplx(rem), "within_bound": bool(good)})
    return rows, results, {"abs_slack": 1e-6}, ok


def _bound_space(cfg, q: float) -> int:
    if cfg["space_p"] is not None:
        return cfg["space_p"]
    return 2 if q <= 2 else 1


def _theta_norm(pair, r: int, p: int) -> float:
    if p == 2:
        return theta_l2_norm(pair.phi, r)
    if pair.profile_derivative is not None:
        from .core import DEFAULT_GRID, lp_norm_on_grid

        t = DEFAULT_GRID.log_nodes
        return lp_norm_on_grid(pair.profile_derivative(r, t), 1, DEFAULT_GRID.step)
    from .calculus import mellin_derivative_signal

    return xnorm(mellin_derivative_signal(pair.f, r), SpaceDescriptor(1, pair.f.c))


def cmd_distance(cfg):
    pair = make_entry(cfg)
    q, k, r = cfg["q"], cfg["k"], cfg["r"]
    p = _bound_space(cfg, q)
    norm = _theta_norm(pair, r + k, p)
    rows, results, ok, pts = [], [], True, []
    for s in cfg["sigmas"]:
        d = dist_q(pair.phi, DistanceQuery(s, q, k))
        rep = sobolev_bound(norm, r, s, q, p)
        pts.append((s, d))
        slope = math.nan
        if len(pts) >= 4:
            try:
                slope = rate_fit(pts)
            except MellinKitError:
                slope = math.nan
        dominated = d <= rep.bound_value * (1 + 1e-6) + 1e-12
        ok &= dominated
        rows.append([_fmt(s), _fmt(d), _fmt(rep.bound_value), _fmt(slope)])
        results.append({"sigma": _num(s), "dist": _num(d), "bound": _num(rep.bound_value),
                        "constant_D": _num(rep.constant_D), "source": rep.source.value,
                        "slope_running": _num(slope), "dominated": bool(dominated)})
    return rows, results, {"bound_rtol": 1e-6}, ok


def expected_slope(pair, q: float, k: int):
    if pair.name != "sobolev_m":
        return None
    m = pair.params["m"]
    return -2.0 * m + k + (0.0 if q == math.inf else 1.0 / q)


def cmd_rates(cfg):
    pair = make_entry(cfg)
    q, k = cfg["q"], cfg["k"]
    pts = [(s, dist_q(pair.phi, DistanceQuery(s, q, k))) for s in cfg["sigmas"]]
    slope = rate_fit(pts)
    expected = expected_slope(pair, q, k)
    rel = 0.05
    ok = expected is None or abs(slope - expected) <= rel * abs(expected)
    results = [{"points": [[_num(s), _num(d)] for s, d in pts], "slope": _num(slope),
                "expected_slope": None if expected is None else _num(expected)}]
    return None, results, {"slope_rtol": rel}, ok


def _sharpness_shifted(cfg):
    T = cfg["T"]
    pair = testlib.lookup("sinc_shifted", T=T, c=cfg["c"])
    d1 = dist_q(pair.phi, DistanceQuery(math.pi * T, 1.0))
    kr = (-cfg["kmax"], cfg["kmax"])
    samples = lattice_samples(pair.f, T, kr)
    sup = exp_sampling_remainder_sup(pair.f, SamplingConfig(T, pair.f.c, kr))
    bound = exp_sampling_bound(pair.phi, T)
    ok = abs(d1 - math.pi) <= 1e-6 and abs(sup - 1.0) <= 1e-3 and max(abs(v) for v in samples.values()) == 0
    return {"entry": "sinc_shifted", "dist1": _num(d1), "bound": _num(bound),
            "remainder_sup": _num(sup), "max_abs_sample": _num(max(abs(v) for v in samples.values())),
            "pass": bool(ok)}, ok


def _sharpness_centered(cfg):
    T = cfg["T"]
    pair = testlib.lookup("sinc_centered", T=T, c=cfg["c"])
    d1 = dist_q(pair.phi, DistanceQuery(math.pi * T, 1.0))
    sup = rk_remainder_sup(pair.phi, T)
    ok = abs(d1 - math.pi) <= 1e-6 and abs(sup - 0.5) <= 1e-3
    return {"entry": "sinc_centered", "dist1": _num(d1), "bound": _num(d1 / (2 * math.pi)),
            "remainder_sup": _num(sup), "pass": bool(ok)}, ok


def cmd_verify_sharpness(cfg):
    runs = {"sinc_shifted": _sharpness_shifted, "sinc_centered": _sharpness_centered}
    names = [cfg["entry"]] if cfg["entry"] else list(runs)
    results, ok = [], True
    for name in names:
        if name not in runs:
            raise UsageError("verify-sharpness supports sinc_shifted and sinc_centered")
        res, good = runs[name](cfg)
        results.append(res)
        ok &= good
    return None, results, {"dist1_abs": 1e-6, "remainder_sup_abs": 1e-3}, ok


def cmd_verify_bernstein(cfg):
    pair = make_entry(cfg)
    results, ok = [], True
    for T in cfg["Ts"]:
        row = {"T": _num(T)}
        support = pair.phi.support
        if support is not None and support <= math.pi * T:
            plain = bernstein_check(pair.f, T)
            row["plain"] = {"lhs": _num(plain.lhs), "rhs": _num(plain.rhs), "satisfied": plain.satisfied}
            ok &= plain.satisfied
        ext = bernstein_extended_check(pair.f, T)
        row["extended"] = {"lhs": _num(ext.lhs), "rhs": _num(ext.rhs), "satisfied": ext.satisfied}
        ok &= ext.satisfied
        results.append(row)
    return None, results, {"plain_rtol": 1e-8, "extended_rtol": 1e-9}, ok


def cmd_list_catalog(cfg):
    if cfg["entry"]:
        pair = make_entry(cfg)
        T = cfg["T"]
        k = np.arange(-int(8 * T), int(8 * T) + 1)
        x = np.exp(k / T)
        vals = pair.f(x)
        rows = [[_fmt(a), _fmt(z.real), _fmt(z.imag)] for a, z in zip(x, vals)]
        results = [{"x": _num(a), "f": _cplx(z)} for a, z in zip(x, vals)]
        return rows, results, {}, True
    results = []
    for pair in testlib.catalog(c=cfg["c"], T=cfg["T"]):
        results.append({
            "name": pair.name,
            "params": {k: _num(v) for k, v in pair.params.items()},
            "class_tags": sorted(pair.class_tags),
            "analytic_values": {k: {"value": _num(v), "provenance": prov.value}
                                for k, (v, prov) in sorted(pair.analytic_values.items())},
            "roundtrip_tol": _num(pair.roundtrip_tol),
            "slow_decay": pair.slow_decay,
            "support": None if pair.phi.support is None else _num(pair.phi.support),
        })
    return None, results, {}, True


COMMANDS: dict[str, Callable] = {
    "transform": cmd_transform,
    "reconstruct": cmd_reconstruct,
    "kernel-apply": cmd_kernel_apply,
    "differentiate": cmd_differentiate,
    "distance": cmd_distance,
    "rates": cmd_rates,
    "verify-sharpness": cmd_verify_sharpness,
    "verify-bernstein": cmd_verify_bernstein,
    "list-catalog": cmd_list_catalog,
}


# -- output ----------------------------------------------------------------


def _echo(cfg: dict) -> dict:
    out = {}
    for key, val in sorted(cfg.items()):
        if isinstance(val, float):
            val = _num(val)
        elif isinstance(val, list):
            val = [_num(v) for v in val]
        out[key] = val
    return out


def render_json(cfg, results, tolerances, passed) -> str:
    report = {
        "command": cfg["command"],
        "config_echo": _echo(cfg),
        "results": results,
        "tolerances": {k: _num(v) for k, v in tolerances.items()},
        "pass": bool(passed),
    }
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def render_csv(command: str, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADERS[command])
    w.writerows(rows)
    return buf.getvalue()


def render_svg(title: str, series: dict[str, list[tuple[float, float]]], xlabel: str, ylabel: str) -> str:
    """Static log-log polylines; nonpositive points are skipped."""
    W, H, pad = 480, 360, 56
    pts = {k: [(math.log10(a), math.log10(b)) for a, b in v if a > 0 and b > 0 and math.isfinite(b)]
           for k, v in series.items()}
    allp = [p for v in pts.values() for p in v]
    if not allp:
        raise NumericalFailure("nothing positive to plot on log axes")
    x0, x1 = min(p[0] for p in allp), max(p[0] for p in allp)
    y0, y1 = min(p[1] for p in allp), max(p[1] for p in allp)
    x1, y1 = (x1 if x1 > x0 else x0 + 1), (y1 if y1 > y0 else y0 + 1)

    def sx(a):
        return pad + (a - x0) / (x1 - x0) * (W - 2 * pad)

    def sy(b):
        return H - pad - (b - y0) / (y1 - y0) * (H - 2 * pad)

    colors = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
           f'<rect width="{W}" height="{H}" fill="white"/>',
           f'<text x="{W / 2:.1f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
           f'<line x1="{pad}" y1="{H - pad}" x2="{W - pad}" y2="{H - pad}" stroke="black"/>',
           f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{H - pad}" stroke="black"/>',
           f'<text x="{W / 2:.1f}" y="{H - 14}" text-anchor="middle" font-size="12">{xlabel}</text>',
           f'<text x="16" y="{H / 2:.1f}" text-anchor="middle" font-size="12" '
           f'transform="rotate(-90 16 {H / 2:.1f})">{ylabel}</text>',
           f'<text x="{pad}" y="{H - pad + 16}" font-size="10">1e{x0:.2f}</text>',
           f'<text x="{W - pad}" y="{H - pad + 16}" font-size="10" text-anchor="end">1e{x1:.2f}</text>',
           f'<text x="{pad - 4}" y="{H - pad}" font-size="10" text-anchor="end">1e{y0:.2f}</text>',
           f'<text x="{pad - 4}" y="{pad + 4}" font-size="10" text-anchor="end">1e{y1:.2f}</text>']
    for i, (name, p) in enumerate(pts.items()):
        color = colors[i % len(colors)]
        if p:
            coords = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in p)
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        out.append(f'<text x="{W - pad}" y="{pad + 14 * i}" font-size="11" fill="{color}" '
                   f'text-anchor="end">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _svg_for(cfg, results) -> str:
    cmd = cfg["command"]
    if cmd == "distance":
        series = {"dist": [(r["sigma"], r["dist"]) for r in results],
                  "bound": [(r["sigma"], r["bound"]) for r in results]}
        return render_svg(f"dist_q vs sigma ({cfg['entry']})", series, "sigma", "dist")
    if cmd == "rates":
        return render_svg(f"dist_q vs sigma ({cfg['entry']})",
                          {"dist": [tuple(p) for p in results[0]["points"]]}, "sigma", "dist")
    raise UsageError(f"svg output is available for distance and rates, not {cmd}")


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from None


def run(cfg: dict) -> int:
    command = cfg["command"]
    rows, results, tolerances, passed = COMMANDS[command](cfg)
    fmt = cfg["format"]
    if fmt == "csv":
        if rows is None:
            raise UsageError(f"csv output is not available for {command}")
        text = render_csv(command, rows)
    elif fmt == "svg":
        text = _svg_for(cfg, results)
    else:
        text = render_json(cfg, results, tolerances, passed)
    _write(text, cfg["out"])
    if not passed:
        print(f"mellin-kit {command}: tolerance exceeded", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


_USAGE_ERRORS = (UsageError, NotFoundError, DomainError, InvalidParametersError, UnsupportedSpaceError)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = resolve(args)
        return run(cfg)
    except _USAGE_ERRORS as exc:
        print(f"mellin-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MellinKitError, NumericalFailure, ArithmeticError) as exc:
        print(f"mellin-kit: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
