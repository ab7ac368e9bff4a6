"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 nothing found, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .cubature import (
    compute_weights,
    equal_weight_basis_search,
    precision_basis_report,
    verify_exactness,
)
from .design import indicator_coefficients, is_regular_fraction
from .exceptions import CubatureError, IncorrectPairError, InvariantError, PreconditionError
from .interp import quotient_basis
from .io import (
    InputError,
    format_monomial,
    format_value,
    indicator_to_dict,
    load_basis,
    load_design,
    load_gaussian_spec,
    load_measure,
    load_order,
    load_rule,
    parse_monomial,
    precision_to_dict,
    rule_to_dict,
    value_to_json,
)
from .measures import (
    GaussianMoments,
    GaussianSpec,
    gaussian_null_moment_predicate,
    gaussian_sampler,
    mc_estimate_moment,
)

EXIT_OK, EXIT_INPUT, EXIT_NOT_FOUND, EXIT_INVARIANT = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    order: str = "deglex"
    fmt: str = "text"
    mc: int | None = None
    seed: int = 0
    tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise InputError("--tol must be positive")
        if self.mc is not None and self.mc < 1:
            raise InputError("--mc must be at least 1")


def _emit(cfg: RunConfig, payload: dict, lines: list[str]) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def _rule_lines(rule, precision=None) -> list[str]:
    rows = [["node", "weight"]]
    for d, w in zip(rule.design.nodes, rule.weights):
        rows.append([str(list(d)), format_value(w)])
    lines = ["basis: " + ", ".join(format_monomial(a) for a in rule.basis)]
    lines += _table(rows)
    lines.append(f"equal weights: {str(rule.equal_weights).lower()}")
    if precision is not None:
        classes = ", ".join(str(a) for a in precision.member_classes)
        lines.append(f"precision classes: {classes}")
        deg = "unbounded" if precision.unbounded_degree else str(precision.precision_degree)
        lines.append(f"precision degree: {deg} (max over reduced classes {precision.precision_degree})")
    return lines


def cmd_indicator(cfg: RunConfig) -> int:
    design = load_design(cfg.inputs["design"])
    f = indicator_coefficients(design)
    reg = is_regular_fraction(design)
    rows = [["alpha", "monomial", "b_alpha"]]
    for a, b in f.nonzero().items():
        rows.append([str(a), format_monomial(a), format_value(b)])
    lines = _table(rows)
    status = f"regular: {str(reg.regular).lower()}"
    if not reg.regular:
        status += f", witness {format_monomial(reg.witness)}"
    lines.append(status)
    _emit(cfg, indicator_to_dict(f, reg), lines)
    return EXIT_OK


def cmd_weights(cfg: RunConfig) -> int:
    design = load_design(cfg.inputs["design"])
    provider = load_measure(cfg.inputs["measure"], design)
    if cfg.inputs["basis"] == "auto":
        basis = quotient_basis(design, load_order(cfg.order, design))
        provenance = f"quotient basis ({cfg.order})"
    else:
        basis = load_basis(cfg.inputs["basis"], design)
        provenance = "given"
    rule = compute_weights(design, basis, provider, provenance=provenance)
    precision = precision_basis_report(rule, provider) if rule.equal_weights and rule.exact else None
    _emit(cfg, rule_to_dict(rule, precision), _rule_lines(rule, precision))
    return EXIT_OK


def cmd_equal_search(cfg: RunConfig) -> int:
    design = load_design(cfg.inputs["design"])
    provider = load_measure(cfg.inputs["measure"], design)
    basis = equal_weight_basis_search(design, provider, load_order(cfg.order, design))
    if basis is None:
        _emit(cfg, {"found": False, "design": cfg.inputs["design"]}, ["none"])
        return EXIT_NOT_FOUND
    rule = compute_weights(design, basis, provider, provenance="equal-weight search")
    precision = precision_basis_report(rule, provider)
    payload = {"found": True, **rule_to_dict(rule, precision)}
    _emit(cfg, payload, _rule_lines(rule, precision))
    return EXIT_OK


def _default_spec(p: int) -> GaussianSpec:
    return GaussianSpec(p, (1.0,) * p)


def cmd_verify(cfg: RunConfig) -> int:
    design = load_design(cfg.inputs["design"])
    rule = load_rule(cfg.inputs["rule"])
    if rule.design != design:
        raise InputError(f"{cfg.inputs['rule']}: rule was built on a different design")
    provider = load_measure(cfg.inputs["measure"], design)
    alphas = [parse_monomial(a, design.k) for a in cfg.inputs["alphas"]]
    if not alphas:
        raise InputError("give at least one exponent with --alpha")
    sampler = None
    if cfg.mc is not None:
        if not isinstance(provider, GaussianMoments):
            raise InputError("--mc is only available with the gaussian measure")
        spec_path = cfg.inputs.get("spec")
        spec = load_gaussian_spec(spec_path) if spec_path else _default_spec(design.k)
        if spec.p != design.k:
            raise InputError(f"Gaussian spec has p={spec.p}, design has k={design.k}")
        sampler = gaussian_sampler(spec, cfg.seed)
    results, rows = [], [["alpha", "monomial", "exact"]]
    if sampler is not None:
        rows[0].append("mc estimate (+- se)")
    for a in alphas:
        ok = verify_exactness(rule, provider, a, tol=cfg.tol)
        entry = {"alpha": list(a), "monomial": format_monomial(a), "exact": ok}
        row = [str(a), format_monomial(a), str(ok).lower()]
        if sampler is not None:
            est = mc_estimate_moment(sampler, [(x, 0) for x in a], cfg.mc)
            entry["mc"] = {**value_to_json(est.value), "se": est.se, "n": est.n}
            row.append(f"{est.value.real:.5f}{est.value.imag:+.5f}i +- {est.se:.2g}")
        results.append(entry)
        rows.append(row)
    _emit(cfg, {"results": results}, _table(rows))
    return EXIT_OK


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise InputError(f"exponent pair {chunk!r} must look like 'n,m'")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise InputError(f"exponent pair {chunk!r} is not a pair of integers") from exc
    return pairs


def cmd_null_moment(cfg: RunConfig) -> int:
    spec = load_gaussian_spec(cfg.inputs["spec"])
    pairs = _parse_pairs(cfg.inputs["exponents"])
    if len(pairs) != spec.p:
        raise InputError(f"{len(pairs)} exponent pairs for p={spec.p}")
    verdict = gaussian_null_moment_predicate(pairs, spec)
    payload = {"exponents": [list(p) for p in pairs], "verdict": str(verdict)}
    lines = [str(verdict)]
    if cfg.mc is not None:
        est = mc_estimate_moment(gaussian_sampler(spec, cfg.seed), pairs, cfg.mc)
        payload["mc"] = {**value_to_json(est.value), "se": est.se, "n": est.n}
        lines.append(f"mc estimate: {est.value.real:.5f}{est.value.imag:+.5f}i +- {est.se:.2g} (N={est.n})")
    _emit(cfg, payload, lines)
    return EXIT_OK


COMMANDS = {
    "indicator": cmd_indicator,
    "weights": cmd_weights,
    "equal-search": cmd_equal_search,
    "verify": cmd_verify,
    "null-moment": cmd_null_moment,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", default="deglex", help="'deglex' or a JSON file listing monomials in scan order")
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="text")
    common.add_argument("--mc", type=int, default=None, metavar="N", help="Monte Carlo sample count")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-10)

    parser = argparse.ArgumentParser(prog="cubroots", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("indicator", parents=[common], help="indicator coefficients and regularity")
    p.add_argument("design")

    p = sub.add_parser("weights", parents=[common], help="weights of the interpolatory rule")
    p.add_argument("design")
    p.add_argument("--basis", default="auto", help="'auto', a JSON basis file, or e.g. '1,z2,z1,z2^3'")
    p.add_argument("--measure", default="gaussian", help="'gaussian' or a discrete-measure JSON file")

    p = sub.add_parser("equal-search", parents=[common], help="search for an equal-weight basis")
    p.add_argument("design")
    p.add_argument("--measure", default="gaussian")

    p = sub.add_parser("verify", parents=[common], help="check exactness of a rule on monomials")
    p.add_argument("design")
    p.add_argument("rule")
    p.add_argument("-a", "--alpha", action="append", default=[], help="exponent, e.g. '0,5' or 'z2^5'")
    p.add_argument("--measure", default="gaussian")
    p.add_argument("--spec", default=None, help="Gaussian spec JSON used with --mc")

    p = sub.add_parser("null-moment", parents=[common], help="null-moment test for a Gaussian mixed moment")
    p.add_argument("spec")
    p.add_argument("exponents", help="pairs 'n1,m1;n2,m2;...'")
    return parser


def _error(message: str) -> None:
    print(f"cubroots: error: {message}", file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = {
        key: getattr(args, key)
        for key in ("design", "rule", "basis", "measure", "spec", "exponents")
        if hasattr(args, key)
    }
    if hasattr(args, "alpha"):
        inputs["alphas"] = args.alpha
    try:
        cfg = RunConfig(args.command, inputs, args.order, args.fmt, args.mc, args.seed, args.tol)
        return COMMANDS[args.command](cfg)
    except InvariantError as exc:
        _error(f"internal invariant breached: {exc}")
        return EXIT_INVARIANT
    except (InputError, IncorrectPairError, PreconditionError) as exc:
        _error(str(exc))
        return EXIT_INPUT
    except (CubatureError, ValueError) as exc:
        _error(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
