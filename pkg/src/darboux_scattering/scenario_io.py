"""Scenario files: a small TOML schema (JSON also accepted) with a canonical writer.

Grammar::

    family = "soliton"            # required, a family tag
    [params]                      # required, one real per family parameter
    h = 2.5
    [[seeds]]                     # optional, repeated; order is the Wronskian order
    kind = "twist"                # "twist", "twist-<name>", "overshoot" or a seed-kind name
    degree = 0
    twist = "h"                   # optional, twist name for twist seeds
    [grids.k]                     # optional
    min = 0.1
    max = 10.0
    points = 50
    [grids.x]                     # optional, same keys

Seed-kind names are resolved to their origin on load, so writing a loaded
file yields the canonical form, and that form reproduces itself byte for byte.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .darboux import Scenario
from .exceptions import ScatteringError
from .potentials import FAMILIES, family_class, make_potential
from .seeds import make_seed


class ScenarioFormatError(ScatteringError, ValueError):
    """Malformed scenario file; ``where`` names the line or field at fault."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class GridSpec:
    min: float
    max: float
    points: int

    def array(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.points)

    @classmethod
    def parse(cls, text: str, where: str = "grid") -> "GridSpec":
        """``min:max:n`` as used on the command line."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ScenarioFormatError(where, f"expected min:max:n, got {text!r}")
        try:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ScenarioFormatError(where, f"expected min:max:n, got {text!r}") from None
        return cls._checked(lo, hi, n, where)

    @classmethod
    def _checked(cls, lo, hi, n, where) -> "GridSpec":
        if n < 1:
            raise ScenarioFormatError(f"{where}.points", "must be >= 1")
        if hi < lo:
            raise ScenarioFormatError(where, "max must not be below min")
        return cls(float(lo), float(hi), int(n))


@dataclass(frozen=True)
class SeedEntry:
    kind: str
    degree: int
    twist: Optional[str] = None

    def token(self) -> str:
        return f"{self.kind}:{self.degree}" if not self.twist else f"twist-{self.twist}:{self.degree}"


@dataclass
class ScenarioFile:
    family: str
    params: Dict[str, float]
    seeds: List[SeedEntry] = field(default_factory=list)
    k_grid: Optional[GridSpec] = None
    x_grid: Optional[GridSpec] = None

    # -- conversion ------------------------------------------------------------
    def potential(self, validate: bool = True):
        return make_potential(self.family, validate=validate, **self.params)

    def to_scenario(self, validate: bool = True) -> Scenario:
        spec = self.potential(validate)
        seeds = []
        for i, s in enumerate(self.seeds):
            try:
                seeds.append(make_seed(spec, s.kind, s.degree, s.twist))
            except (ValueError, KeyError) as exc:
                raise ScenarioFormatError(f"seeds[{i}]", str(exc)) from exc
        return Scenario(spec, tuple(seeds))

    def canonical(self) -> "ScenarioFile":
        """Seeds rewritten with their resolved origin and twist."""
        sc = self.to_scenario(validate=False)
        seeds = [
            SeedEntry(s.origin, s.degree, s.twist if s.origin == "twist" else None)
            for s in sc.seeds
        ]
        spec = sc.spec
        return ScenarioFile(spec.tag, dict(spec.params), seeds, self.k_grid, self.x_grid)

    # -- serialisation ---------------------------------------------------------
    def to_dict(self) -> dict:
        out: dict = {"family": self.family, "params": {k: float(v) for k, v in self.params.items()}}
        if self.seeds:
            out["seeds"] = []
            for s in self.seeds:
                d = {"kind": s.kind, "degree": int(s.degree)}
                if s.twist:
                    d["twist"] = s.twist
                out["seeds"].append(d)
        grids = {}
        for name, g in (("k", self.k_grid), ("x", self.x_grid)):
            if g is not None:
                grids[name] = {"min": g.min, "max": g.max, "points": g.points}
        if grids:
            out["grids"] = grids
        return out

    def dumps(self, fmt: str = "toml") -> str:
        data = self.canonical().to_dict()
        if fmt == "json":
            return json.dumps(data, indent=2, sort_keys=False) + "\n"
        if fmt != "toml":
            raise ValueError("fmt must be 'toml' or 'json'")
        return tomli_w.dumps(data)

    def dump(self, path, fmt: Optional[str] = None) -> None:
        path = Path(path)
        fmt = fmt or ("json" if path.suffix.lower() == ".json" else "toml")
        path.write_text(self.dumps(fmt))


# -- parsing ---------------------------------------------------------------------------

def _real(value, where) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFormatError(where, f"expected a real number, got {value!r}")
    return float(value)


def _grid(data, where) -> GridSpec:
    if not isinstance(data, dict):
        raise ScenarioFormatError(where, "expected a table with min, max, points")
    missing = [k for k in ("min", "max", "points") if k not in data]
    if missing:
        raise ScenarioFormatError(where, f"missing {', '.join(missing)}")
    extra = sorted(set(data) - {"min", "max", "points"})
    if extra:
        raise ScenarioFormatError(where, f"unknown keys {extra}")
    pts = data["points"]
    if isinstance(pts, bool) or not isinstance(pts, int):
        raise ScenarioFormatError(f"{where}.points", f"expected an integer, got {pts!r}")
    return GridSpec._checked(_real(data["min"], f"{where}.min"), _real(data["max"], f"{where}.max"),
                             pts, where)


def from_dict(data: dict) -> ScenarioFile:
    """Validate the raw mapping field by field."""
    if not isinstance(data, dict):
        raise ScenarioFormatError("<root>", "expected a table")
    extra = sorted(set(data) - {"family", "params", "seeds", "grids"})
    if extra:
        raise ScenarioFormatError("<root>", f"unknown keys {extra}")
    fam = data.get("family")
    if not isinstance(fam, str):
        raise ScenarioFormatError("family", "required string")
    try:
        fam = family_class(fam).tag
    except (KeyError, ValueError):
        raise ScenarioFormatError("family", f"unknown family {fam!r}; choose from {sorted(FAMILIES)}") from None
    raw = data.get("params")
    if not isinstance(raw, dict):
        raise ScenarioFormatError("params", "required table")
    names = FAMILIES[fam].param_names
    missing = [n for n in names if n not in raw]
    unknown = [n for n in raw if n not in names]
    if missing or unknown:
        raise ScenarioFormatError("params", f"{fam} takes {list(names)}; missing {missing}, unknown {unknown}")
    params = {n: _real(raw[n], f"params.{n}") for n in names}
    seeds = []
    raw_seeds = data.get("seeds", [])
    if not isinstance(raw_seeds, list):
        raise ScenarioFormatError("seeds", "expected an array of tables")
    for i, s in enumerate(raw_seeds):
        w = f"seeds[{i}]"
        if not isinstance(s, dict):
            raise ScenarioFormatError(w, "expected a table")
        bad = sorted(set(s) - {"kind", "degree", "twist"})
        if bad:
            raise ScenarioFormatError(w, f"unknown keys {bad}")
        kind = s.get("kind")
        if not isinstance(kind, str):
            raise ScenarioFormatError(f"{w}.kind", "required string")
        deg = s.get("degree")
        if isinstance(deg, bool) or not isinstance(deg, int) or deg < 0:
            raise ScenarioFormatError(f"{w}.degree", f"expected a non-negative integer, got {deg!r}")
        tw = s.get("twist")
        if tw is not None and not isinstance(tw, str):
            raise ScenarioFormatError(f"{w}.twist", "expected a string")
        seeds.append(SeedEntry(kind, deg, tw))
    grids = data.get("grids", {})
    if not isinstance(grids, dict):
        raise ScenarioFormatError("grids", "expected a table")
    bad = sorted(set(grids) - {"k", "x"})
    if bad:
        raise ScenarioFormatError("grids", f"unknown grids {bad}")
    kg = _grid(grids["k"], "grids.k") if "k" in grids else None
    xg = _grid(grids["x"], "grids.x") if "x" in grids else None
    return ScenarioFile(fam, params, seeds, kg, xg)


def loads(text: str, fmt: Optional[str] = None) -> ScenarioFile:
    """Parse TOML (default) or JSON text; ``fmt=None`` sniffs a leading ``{``."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "toml"
    try:
        if fmt == "json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from exc
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioFormatError("toml", str(exc)) from exc
    return from_dict(data)


def load(path) -> ScenarioFile:
    path = Path(path)
    fmt = "json" if path.suffix.lower() == ".json" else None
    return loads(path.read_text(), fmt)


def parse_seed_list(text: str) -> List[SeedEntry]:
    """``kind:v[,kind:v...]``; ``twist-g:2`` names the twist explicitly."""
    out = []
    for item in filter(None, (t.strip() for t in text.split(","))):
        if ":" not in item:
            raise ScenarioFormatError("--seed", f"expected kind:degree, got {item!r}")
        kind, deg = item.rsplit(":", 1)
        try:
            v = int(deg)
        except ValueError:
            raise ScenarioFormatError("--seed", f"degree must be an integer in {item!r}") from None
        if v < 0:
            raise ScenarioFormatError("--seed", f"degree must be non-negative in {item!r}")
        twist = None
        if kind.lower().startswith("twist-"):
            kind, twist = "twist", kind.split("-", 1)[1]
        out.append(SeedEntry(kind, v, twist))
    return out


def parse_params(items: List[str]) -> Dict[str, float]:
    """``["h=2.5", "mu=1"]`` to a dict."""
    out = {}
    for it in items:
        if "=" not in it:
            raise ScenarioFormatError("--param", f"expected name=value, got {it!r}")
        k, v = it.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise ScenarioFormatError("--param", f"not a number in {it!r}") from None
    return out


def round_trip(text: str) -> Tuple[str, str]:
    """Serialise twice; the two strings should be identical."""
    once = loads(text).dumps()
    return once, loads(once).dumps()
