"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 singular scenario refused,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import jets
from .acceptance import CRITERIA, run_criterion
from .amplitudes import PoleKind, deform_amplitudes, invariance_check, pole_catalog
from .darboux import Scenario, deformed_potential, wronskian
from .exceptions import NotApplicable, ScatteringError
from .oracle import default_window, numerov_scatter, shoot_bound_states
from .potentials import FAMILIES, Group, family_class, kprime, make_potential
from .regularity import check_regularity
from .scenario_io import (
    GridSpec,
    ScenarioFile,
    ScenarioFormatError,
    load,
    parse_params,
    parse_seed_list,
)
from .seeds import admissible_ranges

EXIT_OK, EXIT_USAGE, EXIT_SINGULAR, EXIT_VERIFY = 0, 1, 2, 3
INVARIANCE_TOL = 1e-12
ORACLE_TOL = 1e-4
ENERGY_TOL = 1e-6


class UsageError(Exception):
    pass


class Singular(Exception):
    def __init__(self, zeros):
        super().__init__(f"singular scenario: Wronskian vanishes at x = {', '.join(f'{z:.10g}' for z in zeros)}")
        self.zeros = zeros


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        kw.setdefault("allow_abbrev", False)
        super().__init__(*a, **kw)

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- scenario assembly ---------------------------------------------------------------

def _known_options(parser: argparse.ArgumentParser) -> set:
    opts = set(parser._option_string_actions)
    for act in parser._actions:
        if isinstance(act, argparse._SubParsersAction):
            for sp in act.choices.values():
                opts |= set(sp._option_string_actions)
    return opts


def _rewrite_bare_params(argv: Sequence[str], known: set) -> List[str]:
    """Turn ``--h 2.5`` and ``--h=2.5`` into ``--param h=2.5``."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        name = tok.split("=", 1)[0]
        if tok.startswith("--") and len(tok) > 2 and name not in known:
            if "=" in tok:
                val = tok.split("=", 1)[1]
            else:
                val = next(it, None)
                if val is None:
                    raise UsageError(f"{tok} needs a value")
            out += ["--param", f"{name[2:]}={val}"]
        else:
            out.append(tok)
    return out


def _scenario_file(args) -> ScenarioFile:
    params = parse_params(args.param or [])
    if getattr(args, "scenario", None):
        sf = load(args.scenario)
        if args.family and family_class(args.family).tag != sf.family:
            raise UsageError("--family disagrees with the scenario file")
        sf.params.update(params)
        if args.seed is not None:
            sf.seeds = parse_seed_list(args.seed)
    else:
        if not args.family:
            raise UsageError("give a scenario file or --family with parameters")
        try:
            cls = family_class(args.family)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        sf = ScenarioFile(cls.tag, params, parse_seed_list(args.seed or ""))
    if getattr(args, "k_grid", None):
        sf.k_grid = GridSpec.parse(args.k_grid, "--k-grid")
    if getattr(args, "x_grid", None):
        sf.x_grid = GridSpec.parse(args.x_grid, "--x-grid")
    return sf


def _require_regular(sc: Scenario, force: bool):
    if sc.M == 0 or force:
        return None
    rep = check_regularity(sc)
    if not rep.regular:
        raise Singular(rep.zeros)
    return rep


def _default_x_grid(sc: Scenario) -> GridSpec:
    if sc.spec.half_line:
        return GridSpec(0.05, 12.0, 400)
    return GridSpec(-10.0, 10.0, 401)


# -- output --------------------------------------------------------------------------

def _num(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


def _emit(args, columns: List[str], rows: List[dict], meta: dict) -> str:
    fmt = args.format or "csv"
    if fmt == "json":
        return json.dumps({"columns": columns, "rows": rows, **meta}, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow(["" if r.get(c) is None else repr(r[c]) if isinstance(r[c], float) else r[c] for c in columns])
    for key, val in meta.get("summary", {}).items():
        buf.write(f"# {key}={val}\n")
    return buf.getvalue()


def _write(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------------

def cmd_list(args) -> int:
    rows = []
    if not args.family:
        columns = ["family", "name", "group", "params", "range", "twists"]
        for tag, cls in FAMILIES.items():
            rows.append({
                "family": tag,
                "name": cls.label,
                "group": cls.group.name,
                "params": " ".join(cls.param_names),
                "range": cls.range_text,
                "twists": " ".join(f"{k}: {v}" for k, v in cls.twists.items()),
            })
        _write(args, _emit(args, columns, rows, {}))
        return EXIT_OK
    sf = _scenario_file(args)
    spec = sf.potential()
    columns = ["origin", "twist", "kind", "interval", "degrees"]
    for rg in admissible_ranges(spec, args.limit):
        rows.append({
            "origin": rg.origin,
            "twist": rg.twist or "",
            "kind": rg.interval.kind.value,
            "interval": rg.interval.describe(),
            "degrees": " ".join(map(str, rg.degrees)) if rg.degrees else "none",
        })
    meta = {"summary": {"family": spec.tag, "params": json.dumps(spec.params), "nmax": spec.nmax()}}
    _write(args, _emit(args, columns, rows, meta))
    return EXIT_OK


def cmd_amplitudes(args) -> int:
    sf = _scenario_file(args)
    sc = sf.to_scenario()
    _require_regular(sc, args.force)
    k = (sf.k_grid or GridSpec(0.1, 10.0, 50)).array()
    if np.any(k <= 0):
        raise UsageError("k-grid must be positive")
    d = deform_amplitudes(sc, k)
    inv = invariance_check(sc, k, INVARIANCE_TOL)
    group_a = sc.spec.group is Group.A
    kp = kprime(k, sc.spec.mu) if sc.spec.has_kprime and group_a else k.astype(complex)
    columns = ["k", "t_re", "t_im", "r_re", "r_im", "T", "R", "t0_re", "t0_im", "r0_re", "r0_im"]
    num = None
    if args.oracle:
        try:
            num = numerov_scatter(sc, k)
        except NotApplicable as exc:
            raise UsageError(f"--oracle: {exc}") from None
        columns += ["r_num_re", "r_num_im", "t_num_re", "t_num_im", "oracle_dev"]
    rows = []
    worst_oracle = 0.0
    for i, kk in enumerate(k):
        row = {"k": float(kk), "r_re": float(d.r_D[i].real), "r_im": float(d.r_D[i].imag),
               "r0_re": float(d.r[i].real), "r0_im": float(d.r[i].imag), "R": float(abs(d.r_D[i]) ** 2)}
        if d.t_D is not None:
            open_ch = abs(kp[i].imag) == 0
            row.update({"t_re": float(d.t_D[i].real), "t_im": float(d.t_D[i].imag),
                        "t0_re": float(d.t[i].real), "t0_im": float(d.t[i].imag),
                        "T": float(kp[i].real / kk * abs(d.t_D[i]) ** 2) if open_ch else 0.0})
        if num is not None:
            o = num[i]
            dev = abs(o.r_num - d.r_D[i])
            row.update({"r_num_re": o.r_num.real, "r_num_im": o.r_num.imag})
            if o.t_num is not None:
                row.update({"t_num_re": o.t_num.real, "t_num_im": o.t_num.imag})
                dev = max(dev, abs(o.t_num - d.t_D[i]))
            row["oracle_dev"] = float(dev)
            worst_oracle = max(worst_oracle, dev)
        rows.append(row)
    ok = inv.passed and (num is None or worst_oracle < ORACLE_TOL)
    summary = {
        "scenario": repr(sc),
        "max_unimodularity_deviation": f"{inv.max_factor_dev:.3e}",
        "max_modulus_deviation": f"{max(inv.max_dev_r, inv.max_dev_t or 0.0):.3e}",
    }
    if num is not None:
        summary["max_oracle_deviation"] = f"{worst_oracle:.3e}"
    summary["status"] = "pass" if ok else "fail"
    _write(args, _emit(args, columns, rows, {"summary": summary}))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_potential(args) -> int:
    sf = _scenario_file(args)
    sc = sf.to_scenario()
    _require_regular(sc, args.force)
    x = (sf.x_grid or _default_x_grid(sc)).array()
    sc.spec.check_domain(x)
    u = np.asarray(sc.spec.potential(x), float)
    um = np.asarray(deformed_potential(sc, x, check=False), float) if sc.M else u
    w = wronskian(sc.seeds, x, check=False)
    with np.errstate(over="ignore", divide="ignore"):
        log_abs = np.real(w.log_abs)
        wval = np.real(w.value)
    columns = ["x", "U", "U_M", "W", "log_abs_W"]
    rows = [{"x": float(x[i]), "U": float(u[i]), "U_M": float(um[i]), "W": _num(wval[i]),
             "log_abs_W": _num(log_abs[i])} for i in range(x.size)]
    summary = {"scenario": repr(sc), "jet_order": jets.default_order(),
               "plot": "gnuplot: plot 'file' using 1:2 title 'U', '' using 1:3 title 'U_M'"}
    _write(args, _emit(args, columns, rows, {"summary": summary}))
    return EXIT_OK


def _spectrum_report(sc: Scenario, n_cut: int):
    base = [sc.spec.energy(n) for n in sc.spec.levels(n_cut)]
    added = sorted(s.energy for s in sc.seeds if s.kind.adds_state)
    lo, hi = default_window(sc)
    analytic = sorted(e for e in base + added if lo < e < hi)
    shot = shoot_bound_states(sc, (lo, hi))
    if sc.spec.group is Group.C:
        shot = shot[: len(analytic)]
    matched = len(shot) == len(analytic) and all(abs(a - b) < ENERGY_TOL for a, b in zip(analytic, shot))
    poles = []
    for rec in pole_catalog(sc, n_cut):
        d = rec.as_dict()
        if rec.kind is PoleKind.EIGEN:
            e = -(rec.k.imag ** 2)
            d["confirmed"] = bool(any(abs(e - s) < ENERGY_TOL for s in shot)) if lo < e < hi else None
            d["confirmed_by"] = "shooting"
        elif rec.kind in (PoleKind.CANCELLED, PoleKind.QNM):
            d["confirmed"] = rec.probe.bounded if rec.kind is PoleKind.CANCELLED else rec.probe.grows
            d["confirmed_by"] = "circle probe"
        poles.append(d)
    return {
        "scenario": repr(sc),
        "analytic": {"base": base, "added": added, "in_window": analytic},
        "shooting": {"window": [lo, hi], "energies": shot},
        "matched": matched,
        "poles": poles,
    }


def cmd_spectrum(args) -> int:
    sf = _scenario_file(args)
    sc = sf.to_scenario()
    _require_regular(sc, args.force)
    rep = _spectrum_report(sc, args.n_cut)
    confirmed = all(p.get("confirmed") is not False for p in rep["poles"])
    ok = rep["matched"] and confirmed
    rep["status"] = "pass" if ok else "fail"
    _write(args, json.dumps(rep, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_regularity(args) -> int:
    sf = _scenario_file(args)
    sc = sf.to_scenario()
    rep = check_regularity(sc)
    ka = rep.index_analysis
    out = {
        "scenario": repr(sc),
        "regular": rep.regular,
        "zeros": rep.zeros,
        "method": rep.method,
        "product_condition": None if ka is None else {
            "D": list(ka.D), "N": ka.N, "barD": list(ka.barD), "verdict": ka.verdict.value,
            "failing_n": ka.failing_n,
        },
        "type1_condition": rep.type1_condition,
        "agrees": rep.agrees,
    }
    if args.format == "csv":
        text = _emit(args, ["regular", "zeros", "method", "verdict", "type1_condition", "agrees"], [{
            "regular": rep.regular, "zeros": " ".join(f"{z:.10g}" for z in rep.zeros),
            "method": rep.method, "verdict": "" if ka is None else ka.verdict.value,
            "type1_condition": rep.type1_condition, "agrees": rep.agrees,
        }], {})
    else:
        text = json.dumps(out, indent=2) + "\n"
    _write(args, text)
    if rep.agrees is False:
        return EXIT_VERIFY
    return EXIT_OK if rep.regular else EXIT_SINGULAR


def cmd_verify(args) -> int:
    wanted = [n for n, _, _ in CRITERIA]
    if args.only:
        try:
            wanted = [int(t) for t in args.only.split(",")]
        except ValueError:
            raise UsageError("--only takes comma-separated criterion numbers") from None
        unknown = set(wanted) - {n for n, _, _ in CRITERIA}
        if unknown:
            raise UsageError(f"unknown criteria {sorted(unknown)}")
    results = []
    for n in wanted:
        r = run_criterion(n)
        results.append(r)
        if args.format != "json":
            print(r.line(), flush=True)
    if args.format == "json":
        text = json.dumps([r.__dict__ for r in results], indent=2) + "\n"
        _write(args, text)
    elif args.out:
        _write(args, "".join(r.line() + "\n" for r in results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="darboux-scattering", allow_abbrev=False, description="Darboux-deformed solvable potentials and their scattering data.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def _sub(name, **kw):
        return sub.add_parser(name, **kw)

    def common(sp, scenario=True, grids=()):
        if scenario:
            sp.add_argument("scenario", nargs="?", help="scenario file (TOML or JSON)")
        sp.add_argument("--family", help="family tag, e.g. soliton, rm, hst, morse, eckart, hpt, coulomb")
        sp.add_argument("--param", action="append", metavar="NAME=VALUE", help="family parameter (repeatable)")
        sp.add_argument("--seed", metavar="KIND:V[,...]", help="seed list, e.g. twist:0,overshoot:7 or twist-g:2")
        if "k" in grids:
            sp.add_argument("--k-grid", metavar="MIN:MAX:N")
        if "x" in grids:
            sp.add_argument("--x-grid", metavar="MIN:MAX:N")
        sp.add_argument("--format", choices=("csv", "json"))
        sp.add_argument("--out", metavar="PATH")

    sp = _sub("list", help="families, or admissible seed ranges for given parameters")
    common(sp, scenario=False)
    sp.add_argument("--limit", type=int, default=8, help="degrees listed per range")
    sp.set_defaults(func=cmd_list)

    sp = _sub("amplitudes", help="deformed t and r on a k grid")
    common(sp, grids=("k",))
    sp.add_argument("--oracle", action="store_true", help="add Numerov oracle columns")
    sp.add_argument("--force", action="store_true", help="skip the regularity gate")
    sp.set_defaults(func=cmd_amplitudes)

    sp = _sub("potential", help="U, deformed U and the Wronskian on an x grid")
    common(sp, grids=("x",))
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=cmd_potential)

    sp = _sub("spectrum", help="analytic levels, shooting levels and the pole catalog (JSON)")
    common(sp)
    sp.add_argument("--force", action="store_true")
    sp.add_argument("--n-cut", type=int, default=5, help="levels to list for infinite spectra")
    sp.set_defaults(func=cmd_spectrum)

    sp = _sub("regularity", help="nodeless scan plus the analytic conditions")
    common(sp)
    sp.set_defaults(func=cmd_regularity)

    sp = _sub("verify", help="run the acceptance suite")
    sp.add_argument("--only", metavar="N[,N...]")
    sp.add_argument("--format", choices=("csv", "json"))
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _rewrite_bare_params(argv, _known_options(parser))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Singular as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (UsageError, ScenarioFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScatteringError, KeyError, ValueError, TypeError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
