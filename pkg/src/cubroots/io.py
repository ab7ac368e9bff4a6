"""JSON schemas for designs, measures, Gaussian specs, bases and rules."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .cubature import CubatureRule, PrecisionReport
from .cyclo import CycNum
from .design import Design, IndicatorFn, RegularityResult
from .exceptions import CubatureError
from .interp import MonomialBasis
from .measures import DiscreteMeasure, GaussianMoments, GaussianSpec, MomentProvider


class InputError(CubatureError, ValueError):
    """Malformed or inconsistent user input."""


def read_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing required field {key!r}")
    return obj[key]


# -- monomials ---------------------------------------------------------------

_FACTOR = re.compile(r"z(\d+)(?:\^(\d+))?")


def parse_monomial(text: str, k: int) -> tuple[int, ...]:
    """``"1"``, ``"z1*z2^3"`` or a comma-separated exponent tuple ``"1,3"``."""
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty monomial")
    if s == "1":
        return (0,) * k
    if re.fullmatch(r"\d+(,\d+)*", s):
        alpha = tuple(int(x) for x in s.split(","))
        if len(alpha) != k:
            raise InputError(f"monomial {text!r} has {len(alpha)} exponents, expected {k}")
        return alpha
    alpha = [0] * k
    for factor in s.split("*"):
        mt = _FACTOR.fullmatch(factor)
        if mt is None:
            raise InputError(f"cannot parse monomial {text!r}")
        var = int(mt.group(1))
        if not 1 <= var <= k:
            raise InputError(f"variable z{var} out of range 1..{k} in {text!r}")
        alpha[var - 1] += int(mt.group(2) or 1)
    return tuple(alpha)


def format_monomial(alpha: Sequence[int]) -> str:
    parts = []
    for i, a in enumerate(alpha, start=1):
        if a == 1:
            parts.append(f"z{i}")
        elif a > 1:
            parts.append(f"z{i}^{a}")
    return "*".join(parts) or "1"


def _monomial_entry(entry, k: int, where: str) -> tuple[int, ...]:
    if isinstance(entry, str):
        return parse_monomial(entry, k)
    if isinstance(entry, list) and all(isinstance(x, int) and x >= 0 for x in entry):
        if len(entry) != k:
            raise InputError(f"{where}: monomial {entry} has {len(entry)} exponents, expected {k}")
        return tuple(entry)
    raise InputError(f"{where}: cannot read monomial {entry!r}")


def monomial_list(obj, k: int, where: str = "basis") -> list[tuple[int, ...]]:
    if isinstance(obj, dict):
        obj = _require(obj, "basis", where)
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list of monomials")
    return [_monomial_entry(e, k, where) for e in obj]


def load_basis(spec: str, design: Design) -> MonomialBasis:
    """A basis from a JSON file or an inline list such as ``1,z2,z1,z2^3``."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        mons = monomial_list(read_json(path), design.k, str(path))
    else:
        mons = [parse_monomial(t, design.k) for t in spec.split(",") if t.strip()]
    try:
        return MonomialBasis(mons, design.m)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_order(spec: str, design: Design):
    if spec == "deglex":
        return "deglex"
    return monomial_list(read_json(spec), design.k, spec)


# -- exact values ------------------------------------------------------------

def value_to_json(value) -> dict:
    if isinstance(value, CycNum):
        z = value.to_complex()
        exact = value.to_string()
    elif isinstance(value, complex):
        z, exact = value, None
    else:
        z = complex(Fraction(value))
        exact = str(Fraction(value))
    out = {"exact": exact} if exact is not None else {}
    out["re"] = round(z.real, 12) + 0.0
    out["im"] = round(z.imag, 12) + 0.0
    return out


def value_from_json(obj, m: int):
    if isinstance(obj, dict) and obj.get("exact") is not None:
        return CycNum.parse(obj["exact"], m)
    if isinstance(obj, dict):
        return complex(obj.get("re", 0.0), obj.get("im", 0.0))
    if isinstance(obj, str):
        return CycNum.parse(obj, m)
    raise InputError(f"cannot read value {obj!r}")


def format_value(value) -> str:
    z = complex(value)
    # rounding noise from the float conversion is shown as 0
    scale = max(abs(z), 1.0) * 1e-14
    re_, im = (0.0 if abs(x) < scale else x for x in (z.real, z.imag))
    dec = f"{re_:.12g}{im:+.12g}i"
    if isinstance(value, CycNum):
        return f"{value}  ~ {dec}"
    return dec


# -- designs and measures ------------------------------------------------------

def design_from_dict(obj, where: str = "design") -> Design:
    m = _require(obj, "m", where)
    k = _require(obj, "k", where)
    nodes = _require(obj, "nodes", where)
    if not isinstance(m, int) or not isinstance(k, int) or not isinstance(nodes, list):
        raise InputError(f"{where}: 'm' and 'k' must be integers and 'nodes' a list")
    try:
        return Design(m, k, tuple(tuple(d) for d in nodes))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def design_to_dict(design: Design) -> dict:
    return {"m": design.m, "k": design.k, "nodes": [list(d) for d in design.nodes]}


def load_design(path) -> Design:
    return design_from_dict(read_json(path), str(path))


def measure_from_dict(obj, where: str = "measure") -> DiscreteMeasure:
    m = _require(obj, "m", where)
    k = _require(obj, "k", where)
    nodes = _require(obj, "nodes", where)
    masses = _require(obj, "mass", where)
    if len(nodes) != len(masses):
        raise InputError(f"{where}: {len(nodes)} nodes but {len(masses)} masses")
    try:
        atoms = tuple((tuple(d), Fraction(str(w))) for d, w in zip(nodes, masses))
        return DiscreteMeasure(m, k, atoms)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def load_measure(spec: str, design: Design) -> MomentProvider:
    """``"gaussian"`` or the path of a discrete-measure JSON file."""
    if spec == "gaussian":
        return GaussianMoments(design.k)
    mu = measure_from_dict(read_json(spec), spec)
    if mu.k != design.k or mu.m != design.m:
        raise InputError(
            f"{spec}: measure lives on Omega_{mu.m}^{mu.k} but the design on Omega_{design.m}^{design.k}"
        )
    return mu


def gaussian_spec_from_dict(obj, where: str = "gaussian spec") -> GaussianSpec:
    p = _require(obj, "p", where)
    sigma2 = _require(obj, "sigma2", where)
    blocks = obj.get("blocks")
    if blocks is not None:
        if any(j < 1 for b in blocks for j in b):
            raise InputError(f"{where}: block indices are 1-based")
        blocks = tuple(tuple(j - 1 for j in b) for b in blocks)
    try:
        return GaussianSpec(p, tuple(sigma2), obj.get("alpha"), obj.get("beta"), blocks)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def load_gaussian_spec(path) -> GaussianSpec:
    return gaussian_spec_from_dict(read_json(path), str(path))


# -- reports -------------------------------------------------------------------

def indicator_to_dict(f: IndicatorFn, regularity: RegularityResult | None = None) -> dict:
    out = {
        "design": design_to_dict(f.design),
        "coefficients": [
            {"alpha": list(a), "monomial": format_monomial(a), "value": value_to_json(b)}
            for a, b in f.nonzero().items()
        ],
    }
    if regularity is not None:
        out["regular"] = regularity.regular
        out["witness"] = None if regularity.witness is None else list(regularity.witness)
        out["witness_monomial"] = None if regularity.witness is None else format_monomial(regularity.witness)
    return out


def precision_to_dict(report: PrecisionReport) -> dict:
    return {
        "member_classes": [list(a) for a in report.member_classes],
        "unbounded": [report.unbounded.get(a, False) for a in report.member_classes],
        "precision_degree": report.precision_degree,
        "unbounded_degree": report.unbounded_degree,
    }


def rule_to_dict(rule: CubatureRule, precision: PrecisionReport | None = None) -> dict:
    out = {
        "design": design_to_dict(rule.design),
        "basis": [list(a) for a in rule.basis],
        "basis_monomials": [format_monomial(a) for a in rule.basis],
        "weights": [value_to_json(w) for w in rule.weights],
        "equal_weights": rule.equal_weights,
        "exact": rule.exact,
        "provenance": rule.provenance,
    }
    if not rule.exact:
        out["residual"] = rule.residual
    if precision is not None:
        out["precision"] = precision_to_dict(precision)
    return out


def rule_from_dict(obj, where: str = "rule") -> CubatureRule:
    design = design_from_dict(_require(obj, "design", where), where)
    basis = MonomialBasis(monomial_list(_require(obj, "basis", where), design.k, where), design.m)
    raw = _require(obj, "weights", where)
    if len(raw) != design.n:
        raise InputError(f"{where}: {len(raw)} weights for {design.n} nodes")
    try:
        weights = tuple(value_from_json(w, design.m) for w in raw)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc
    exact = all(isinstance(w, CycNum) for w in weights)
    if exact:
        equal = all(w == Fraction(1, design.n) for w in weights)
    else:
        equal = bool(obj.get("equal_weights", False))
    return CubatureRule(
        design, basis, weights, equal, obj.get("provenance", "file"), exact, obj.get("residual")
    )


def load_rule(path) -> CubatureRule:
    return rule_from_dict(read_json(path), str(path))
