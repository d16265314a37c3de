"""Experiment configuration: a YAML mapping with a versioned header.

Example::

    schema: branchcov-config/1
    base: cp1          # cp1 | cpn:<n> | curve:<genus>
    k: 1
    d: 2
    alpha: "cyclic:-1,0,1"   # or a list of d coefficient lists
    xi: [0]
    g: 1
    series_order: 11
    quadrature: {tol: 1.0e-8, max_cells: 200000}
    r_provider: none   # none | trivial | zero

Every field has a default, and :meth:`ExperimentConfig.echo` writes all of
them out so that a report carries its complete configuration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import yaml

from .covering import CoveringSpec, covering_on_cpn, covering_on_curve, covering_on_p1

SCHEMA = "branchcov-config/1"
PROVIDERS = ("none", "trivial", "zero")


class ConfigError(ValueError):
    """Validation failure; ``errors`` maps field names to messages."""

    def __init__(self, errors: Dict[str, str]):
        self.errors = dict(errors)
        super().__init__("; ".join(f"{k}: {v}" for k, v in sorted(self.errors.items())))


def _frac_list(v) -> Tuple[Fraction, ...]:
    return tuple(Fraction(str(x)) for x in v)


@dataclass(frozen=True)
class ExperimentConfig:
    base: str = "cp1"
    k: int = 1
    d: int = 2
    alpha: Optional[Tuple[Tuple[Fraction, ...], ...]] = None  # alpha_1..alpha_d, ascending in z
    cyclic: bool = True
    xi: Tuple[int, ...] = (0,)
    g: int = 1
    series_order: int = 11
    tol: float = 1e-8
    max_cells: int = 200_000
    r_provider: str = "none"
    output: Optional[str] = None

    @property
    def base_kind(self) -> str:
        return self.base.split(":")[0]

    @property
    def base_param(self) -> int:
        return int(self.base.split(":")[1]) if ":" in self.base else 1

    @property
    def sections(self) -> Optional[Tuple[Tuple[Fraction, ...], ...]]:
        """Explicit sections over CP^1; the default cyclic cover is
        ``alpha_d = z^{dk} - 1`` (simple branch points)."""
        if self.base_kind != "cp1":
            return None
        if self.alpha is not None:
            return self.alpha
        top = (Fraction(-1),) + (Fraction(0),) * (self.d * self.k - 1) + (Fraction(1),)
        return tuple(() for _ in range(self.d - 1)) + (top,)

    def spec(self) -> CoveringSpec:
        kind = self.base_kind
        if kind == "cp1":
            return covering_on_p1(self.k, self.d, self.sections, self.xi)
        if kind == "cpn":
            return covering_on_cpn(self.base_param, self.k, self.d, self.xi)
        return covering_on_curve(self.base_param, self.k, self.d, self.xi)

    def echo(self) -> Dict[str, Any]:
        alpha: Any
        secs = self.sections
        if secs is None:
            alpha = None
        elif self.cyclic:
            alpha = "cyclic:" + ",".join(str(c) for c in secs[-1])
        else:
            alpha = [[str(c) for c in p] for p in secs]
        return {
            "schema": SCHEMA,
            "base": self.base,
            "k": self.k,
            "d": self.d,
            "alpha": alpha,
            "xi": list(self.xi),
            "g": self.g,
            "series_order": self.series_order,
            "quadrature": {"tol": self.tol, "max_cells": self.max_cells},
            "r_provider": self.r_provider,
            "output": self.output,
        }

    def replace(self, **changes) -> "ExperimentConfig":
        data = dict(self.__dict__)
        data.update(changes)
        return validate(data)


_KNOWN = {"schema", "base", "k", "d", "alpha", "xi", "g", "series_order", "quadrature", "r_provider", "output"}


def _int(raw: Dict[str, Any], name: str, default: int, errors: Dict[str, str], minimum: Optional[int] = None) -> int:
    v = raw.get(name, default)
    if isinstance(v, bool) or not isinstance(v, int):
        errors[name] = f"expected an integer, got {v!r}"
        return default
    if minimum is not None and v < minimum:
        errors[name] = f"must be >= {minimum}, got {v}"
    return v


def _parse_alpha(v, d: int, errors: Dict[str, str]):
    """Returns (sections, cyclic)."""
    if v is None:
        return None, True
    if isinstance(v, str):
        if not v.startswith("cyclic:"):
            errors["alpha"] = "string form must be 'cyclic:<c0>,<c1>,...'"
            return None, True
        try:
            top = _frac_list(x for x in v[len("cyclic:"):].split(",") if x.strip())
        except (ValueError, ZeroDivisionError):
            errors["alpha"] = f"bad coefficient list in {v!r}"
            return None, True
        return tuple(() for _ in range(d - 1)) + (top,), True
    if isinstance(v, list):
        if len(v) != d:
            errors["alpha"] = f"need d = {d} coefficient lists, got {len(v)}"
            return None, False
        try:
            secs = tuple(_frac_list(p) for p in v)
        except (TypeError, ValueError, ZeroDivisionError):
            errors["alpha"] = "coefficients must be numbers or rational strings"
            return None, False
        cyclic = all(all(c == 0 for c in p) for p in secs[:-1])
        return secs, cyclic
    errors["alpha"] = "expected 'cyclic:...' or a list of coefficient lists"
    return None, True


def validate(raw: Dict[str, Any]) -> ExperimentConfig:
    errors: Dict[str, str] = {}
    if not isinstance(raw, dict):
        raise ConfigError({"<root>": "configuration must be a mapping"})
    # accept both the file layout and the flat dataclass layout
    raw = dict(raw)
    if "quadrature" in raw:
        q = raw.pop("quadrature")
        if not isinstance(q, dict):
            errors["quadrature"] = "expected a mapping with tol and max_cells"
            q = {}
        raw.setdefault("tol", q.get("tol", 1e-8))
        raw.setdefault("max_cells", q.get("max_cells", 200_000))
    schema = raw.pop("schema", SCHEMA)
    if schema != SCHEMA:
        errors["schema"] = f"unsupported schema {schema!r} (expected {SCHEMA})"
    for key in raw:
        if key not in _KNOWN | {"tol", "max_cells", "cyclic"}:
            errors[key] = "unknown field"

    base = raw.get("base", "cp1")
    ok_base = isinstance(base, str) and (
        base == "cp1"
        or (base.startswith("cpn:") and base[4:].isdigit())
        or (base.startswith("curve:") and base[6:].isdigit())
    )
    if not ok_base:
        errors["base"] = f"expected cp1, cpn:<n> or curve:<genus>, got {base!r}"
        base = "cp1"
    k = _int(raw, "k", 1, errors, 1)
    d = _int(raw, "d", 2, errors, 2)
    g = _int(raw, "g", 1, errors, 0)
    if "g" not in errors and d >= 2 and g >= d:
        errors["g"] = f"group element must lie in 0..{d - 1}"
    order = _int(raw, "series_order", 11, errors, 1)
    max_cells = _int(raw, "max_cells", 200_000, errors, 64)
    tol = raw.get("tol", 1e-8)
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
        errors["quadrature.tol"] = f"expected a positive number, got {tol!r}"
        tol = 1e-8

    xi = raw.get("xi", [0])
    if isinstance(xi, int) and not isinstance(xi, bool):
        xi = [xi]
    if not isinstance(xi, (list, tuple)) or not xi or not all(isinstance(x, int) and not isinstance(x, bool) for x in xi):
        errors["xi"] = "expected a non-empty list of integer twist degrees"
        xi = [0]

    alpha_raw = raw.get("alpha")
    if isinstance(alpha_raw, tuple):  # already parsed (replace())
        secs, cyclic = alpha_raw, raw.get("cyclic", True)
    else:
        secs, cyclic = _parse_alpha(alpha_raw, d, errors)
    if secs is not None:
        if not base == "cp1":
            errors["alpha"] = "explicit sections are only supported over cp1"
        else:
            for i, p in enumerate(secs, start=1):
                deg = max((j for j, c in enumerate(p) if c != 0), default=-1)
                if deg > i * k:
                    errors["alpha"] = f"alpha_{i} has degree {deg} > {i}*k = {i * k}"
                    break
            if all(c == 0 for c in secs[-1]):
                errors["alpha"] = "alpha_d must not vanish identically"

    provider = raw.get("r_provider", "none")
    if provider not in PROVIDERS:
        errors["r_provider"] = f"expected one of {', '.join(PROVIDERS)}"
        provider = "none"
    output = raw.get("output")
    if output is not None and not isinstance(output, str):
        errors["output"] = "expected a path string"
        output = None
    if errors:
        raise ConfigError(errors)
    return ExperimentConfig(
        base=base,
        k=k,
        d=d,
        alpha=secs,
        cyclic=bool(cyclic),
        xi=tuple(xi),
        g=g,
        series_order=order,
        tol=float(tol),
        max_cells=max_cells,
        r_provider=provider,
        output=output,
    )


def load(path: Optional[str]) -> ExperimentConfig:
    if path is None:
        return validate({})
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as e:
        raise ConfigError({"<file>": str(e)})
    except yaml.YAMLError as e:
        raise ConfigError({"<file>": f"not valid YAML: {e}"})
    return validate(raw if raw is not None else {})


def dump(cfg: ExperimentConfig) -> str:
    return yaml.safe_dump(cfg.echo(), sort_keys=False)
