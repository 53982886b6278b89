"""Configuration-driven check runner: parse, run, sweep, report.

A run configuration is a single JSON document with the space parameters, a
symbol-family descriptor, an optional conjugation descriptor, the list of
check names and optional tolerance overrides. Complex values are encoded as
a number (real) or a two-element [re, im] list.

Reports are deterministic for a fixed (config, seed): wall-clock timings
are kept out of the serialized report and can be written to a sidecar.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bergman import SpaceParams
from .conjugations import (
    AntilinearConjugation,
    extended_space,
    involution_defect,
    isometry_defect,
    is_C_symmetric,
    make_J,
    make_rotation_J,
    make_wc_J,
)
from .defaults import TOL_EXACT, TOL_GUARDED, guard_band
from .diagnostics import (
    boundedness_ratio_grid,
    is_hermitian,
    is_normal,
    necessary_conditions_check,
    nevanlinna_bound_grid,
    norm_defect_kernel_test,
)
from .errors import ConfigError, DomainError, SingularityError, UnboundedSymbolError
from .matrices import (
    adjoint_matrix,
    adjoint_on_kernel,
    build_wcd_matrix,
    cowen_adjoint_pair,
)
from .rng import SplitMix64
from .series import TruncatedSeries, polynomial
from .symbols import (
    LinearFractionalMap,
    SymbolPair,
    bounded_sufficient,
    family_conjugated,
    family_general,
    family_j_symmetric,
    family_normal_origin,
    family_self_adjoint,
    lft_eval,
    sup_norm_lft,
    unitary_symbols,
)

FAIL_THRESHOLD = 1e-3           # macroscopic defect certifying a structural failure
DEFAULT_KERNEL_POINTS = (0.4, 0.3j, -0.25)
BALANCE_POINTS = (0.5, 0.5j)


@dataclass(frozen=True)
class RunConfig:
    space: SpaceParams
    symbols: dict
    conjugation: dict
    checks: tuple
    tolerances: dict
    seed: int
    raw: dict = field(default_factory=dict, repr=False)


@dataclass
class CheckReport:
    name: str
    status: str                  # pass | fail | unverified
    defect: float | None
    tolerance: float | None
    guard: int
    provenance: str
    wall_time: float | None = None

    def payload(self) -> dict:
        """Deterministic serialization; wall time stays out."""
        return {
            "name": self.name,
            "status": self.status,
            "defect": self.defect,
            "tolerance": self.tolerance,
            "guard": self.guard,
            "provenance": self.provenance,
        }


def _complex_value(value, path: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) for v in value)
    ):
        return complex(value[0], value[1])
    raise ConfigError(path, "expected a number or a two-element [re, im] list")


def _require(mapping: dict, key: str, path: str):
    if key not in mapping:
        raise ConfigError(f"{path}.{key}", "missing required field")
    return mapping[key]


def parse_config(doc: dict, *, require_concrete: bool = True) -> RunConfig:
    """Validate a configuration document, including family preconditions.

    Sweep base configurations carry a family plus draw ranges rather than
    concrete parameters; pass require_concrete=False to skip building the
    probe pair.
    """
    if not isinstance(doc, dict):
        raise ConfigError("$", "configuration must be a JSON object")
    space_doc = _require(doc, "space", "$")
    try:
        space = SpaceParams(
            alpha=float(_require(space_doc, "alpha", "space")),
            n=int(_require(space_doc, "n", "space")),
            N=int(space_doc.get("N", 64)),
        )
    except DomainError as exc:
        raise ConfigError("space", str(exc)) from exc
    symbols = _require(doc, "symbols", "$")
    if not isinstance(symbols, dict) or "family" not in symbols:
        raise ConfigError("symbols.family", "missing family name")
    conjugation = doc.get("conjugation", {"kind": "auto"})
    if not isinstance(conjugation, dict) or "kind" not in conjugation:
        raise ConfigError("conjugation.kind", "missing conjugation kind")
    if conjugation["kind"] not in ("auto", "plain-J", "rotation-J", "wc-J"):
        raise ConfigError("conjugation.kind", f"unknown kind {conjugation['kind']!r}")
    checks = doc.get("checks", [])
    if not isinstance(checks, list):
        raise ConfigError("checks", "expected a list of check names")
    for i, name in enumerate(checks):
        if name not in CHECKS:
            raise ConfigError(f"checks[{i}]", f"unknown check {name!r}")
    tolerances = doc.get("tolerances", {})
    if not isinstance(tolerances, dict):
        raise ConfigError("tolerances", "expected an object of check -> tolerance")
    for name in tolerances:
        if name not in CHECKS:
            raise ConfigError(f"tolerances.{name}", "tolerance for an unknown check")
    config = RunConfig(
        space=space,
        symbols=symbols,
        conjugation=conjugation,
        checks=tuple(checks),
        tolerances={k: float(v) for k, v in tolerances.items()},
        seed=int(doc.get("seed", 0)),
        raw=doc,
    )
    # family preconditions surface as config errors before any check runs
    if require_concrete:
        try:
            make_pair(config.symbols, config.space)
        except (DomainError, SingularityError) as exc:
            raise ConfigError("symbols", str(exc)) from exc
    elif symbols["family"] not in SWEEPABLE_FAMILIES:
        raise ConfigError(
            "symbols.family", f"family {symbols['family']!r} cannot be swept"
        )
    return config


def make_pair(symbols: dict, space: SpaceParams, N: int | None = None) -> SymbolPair:
    """Build the symbol pair described by the config at truncation N."""
    N = space.N if N is None else N
    family = symbols["family"]
    path = "symbols"

    def cval(key, default=None):
        if key not in symbols:
            if default is not None:
                return default
            raise ConfigError(f"{path}.{key}", "missing required field")
        return _complex_value(symbols[key], f"{path}.{key}")

    if family == "j-symmetric":
        return family_j_symmetric(cval("a"), cval("b"), cval("c"), space.n, space.alpha, N)
    if family == "general":
        return family_general(cval("a"), cval("b"), cval("c"), space.n, space.alpha, N)
    if family == "self-adjoint":
        a, b = cval("a"), cval("b")
        if a.imag != 0 or b.imag != 0:
            raise ConfigError(f"{path}.a", "self-adjoint family needs real a and b")
        return family_self_adjoint(a.real, b.real, cval("c"), space.n, space.alpha, N)
    if family == "normal-origin":
        return family_normal_origin(cval("a"), cval("b"), space.n, N)
    if family == "unitary":
        return unitary_symbols(cval("p"), cval("lambda_u", 1.0 + 0j), space.alpha, N)
    if family == "wc-conjugated":
        return family_conjugated(
            cval("a"), cval("b"), cval("c"), space.n, space.alpha, N,
            p=cval("p"), lambda_u=cval("lambda_u", 1.0 + 0j),
        )
    if family == "rotation-conjugated":
        return family_conjugated(
            cval("a"), cval("b"), cval("c"), space.n, space.alpha, N,
            mu=cval("mu"), lam=cval("lam"),
        )
    if family == "explicit":
        raw_psi = _require(symbols, "psi", path)
        coeffs = [
            _complex_value(v, f"{path}.psi[{i}]") for i, v in enumerate(raw_psi)
        ]
        raw_phi = _require(symbols, "phi", path)
        if not isinstance(raw_phi, list) or len(raw_phi) != 4:
            raise ConfigError(f"{path}.phi", "expected four map coefficients [a, b, c, d]")
        try:
            phi = LinearFractionalMap(
                *(_complex_value(v, f"{path}.phi[{i}]") for i, v in enumerate(raw_phi))
            )
        except SingularityError as exc:
            raise ConfigError(f"{path}.phi", str(exc)) from exc
        return SymbolPair(
            polynomial(coeffs, N), phi, space.n, provenance="explicit",
            params={"bounded_hint": bool(symbols.get("bounded", False))},
        )
    raise ConfigError(f"{path}.family", f"unknown family {family!r}")


def resolve_conjugation_kind(config: RunConfig) -> dict:
    """Replace kind 'auto' with the descriptor matching the family."""
    conj = dict(config.conjugation)
    if conj.get("kind") != "auto":
        return conj
    symbols = config.symbols
    family = symbols["family"]
    if family == "wc-conjugated":
        return {"kind": "wc-J", "p": symbols["p"],
                "lambda_u": symbols.get("lambda_u", 1.0)}
    if family == "rotation-conjugated":
        return {"kind": "rotation-J", "mu": symbols["mu"], "lambda": symbols["lam"]}
    if family in ("self-adjoint", "general"):
        c = _complex_value(symbols.get("c", 0.0), "symbols.c")
        if c != 0:
            theta = math.atan2(c.imag, c.real)
            lam = complex(math.cos(-2 * theta), math.sin(-2 * theta))
            return {"kind": "rotation-J", "mu": [1.0, 0.0], "lambda": [lam.real, lam.imag]}
    return {"kind": "plain-J"}


def make_conjugation(descriptor: dict, space: SpaceParams) -> AntilinearConjugation:
    kind = descriptor["kind"]
    if kind == "plain-J":
        return make_J(space)
    if kind == "rotation-J":
        return make_rotation_J(
            _complex_value(descriptor.get("mu", 1.0), "conjugation.mu"),
            _complex_value(descriptor.get("lambda", 1.0), "conjugation.lambda"),
            space,
        )
    if kind == "wc-J":
        return make_wc_J(
            _complex_value(_require(descriptor, "p", "conjugation"), "conjugation.p"),
            _complex_value(descriptor.get("lambda_u", 1.0), "conjugation.lambda_u"),
            space,
        )
    raise ConfigError("conjugation.kind", f"unknown kind {kind!r}")


def _tolerance(config: RunConfig, name: str, default: float) -> float:
    return config.tolerances.get(name, default)


def _predicted_normal(symbols: dict) -> bool:
    b = _complex_value(symbols.get("b", 0.0), "symbols.b")
    c = _complex_value(symbols.get("c", 0.0), "symbols.c")
    return (b.imag == 0 and b.real != 0) or c == 0


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def _check_j_symmetry(config: RunConfig) -> CheckReport:
    tol = _tolerance(config, "J-symmetry", TOL_EXACT)
    pair = make_pair(config.symbols, config.space)
    M = build_wcd_matrix(pair, config.space)
    ok, defect = is_C_symmetric(M, make_J(config.space), tol)
    return CheckReport(
        "J-symmetry", "pass" if ok else "fail", defect, tol, guard_band(),
        "matrix-symmetry",
    )


def _check_c_symmetry(config: RunConfig) -> CheckReport:
    descriptor = resolve_conjugation_kind(config)
    kind = descriptor["kind"]
    tol = _tolerance(config, "C-symmetry", TOL_EXACT if kind == "plain-J" else TOL_GUARDED)
    space = config.space
    if kind == "wc-J":
        p = _complex_value(_require(descriptor, "p", "conjugation"), "conjugation.p")
        work = extended_space(space, p)
        pair = make_pair(config.symbols, space, N=work.N)
        M = build_wcd_matrix(pair, work)
        C = make_conjugation(descriptor, work)
        ok, defect = is_C_symmetric(M, C, tol, claim_dim=space.N + 1)
    else:
        pair = make_pair(config.symbols, space)
        M = build_wcd_matrix(pair, space)
        C = make_conjugation(descriptor, space)
        ok, defect = is_C_symmetric(M, C, tol)
    return CheckReport(
        "C-symmetry", "pass" if ok else "fail", defect, tol, guard_band(),
        f"conjugation-symmetry; kind={kind}",
    )


def _check_self_adjointness(config: RunConfig) -> CheckReport:
    tol = _tolerance(config, "self-adjointness", TOL_EXACT)
    pair = make_pair(config.symbols, config.space)
    M = build_wcd_matrix(pair, config.space)
    ok, defect = is_hermitian(M, tol)
    return CheckReport(
        "self-adjointness", "pass" if ok else "fail", defect, tol, guard_band(),
        "hermitian-defect",
    )


def _check_normality(config: RunConfig) -> CheckReport:
    tol = _tolerance(config, "normality", TOL_GUARDED)
    pair = make_pair(config.symbols, config.space)
    M = build_wcd_matrix(pair, config.space)
    ok, defect = is_normal(M, tol)
    return CheckReport(
        "normality", "pass" if ok else "fail", defect, tol, guard_band(),
        "commutator-defect",
    )


def _check_normality_predicate(config: RunConfig) -> CheckReport:
    tol = _tolerance(config, "normality-predicate", TOL_GUARDED)
    pair = make_pair(config.symbols, config.space)
    M = build_wcd_matrix(pair, config.space)
    _, defect = is_normal(M, tol)
    predicted = _predicted_normal(config.symbols)
    if defect <= tol:
        status = "pass" if predicted else "fail"
    elif defect >= FAIL_THRESHOLD:
        status = "fail" if predicted else "pass"
    else:
        status = "unverified"  # ambiguous band; sweeps redraw instead
    return CheckReport(
        "normality-predicate", status, defect, tol, guard_band(),
        f"normality-predicate; predicted={'normal' if predicted else 'nonnormal'}",
    )


def _check_adjoint_kernel(config: RunConfig) -> CheckReport:
    tol = _tolerance(config, "adjoint-kernel", TOL_GUARDED)
    pair = make_pair(config.symbols, config.space)
    if "w_points" in config.symbols:
        points = [
            _complex_value(v, f"symbols.w_points[{i}]")
            for i, v in enumerate(config.symbols["w_points"])
        ]
    else:
        points = list(DEFAULT_KERNEL_POINTS)
    worst = 0.0
    for w in points:
        worst = max(worst, adjoint_on_kernel(pair, w, config.space).defect)
    return CheckReport(
        "adjoint-kernel", "pass" if worst <= tol else "fail", worst, tol, guard_band(),
        "adjoint-kernel-identity",
    )


def _check_adjoint_pair(config: RunConfig) -> CheckReport:
    tol = _tolerance(config, "adjoint-pair", 1e-9)
    pair = make_pair(config.symbols, config.space)
    pair_a, pair_b = cowen_adjoint_pair(pair.phi, config.space.n, config.space)
    MA = build_wcd_matrix(pair_a, config.space)
    MB = build_wcd_matrix(pair_b, config.space)
    scale = float(np.max(np.abs(MB.entries)))
    defect = float(np.max(np.abs(adjoint_matrix(MA).entries - MB.entries)))
    rel = defect / scale if scale > 0 else defect
    return CheckReport(
        "adjoint-pair", "pass" if rel <= tol else "fail", rel, tol, guard_band(),
        "companion-adjoint-identity",
    )


def _check_necessary_conditions(config: RunConfig) -> CheckReport:
    pair = make_pair(config.symbols, config.space)
    report = necessary_conditions_check(pair, config.space)
    status = "pass" if report.all_pass else "fail"
    detail = ",".join(report.violations) if report.violations else "none"
    return CheckReport(
        "necessary-conditions", status, None, None, guard_band(),
        f"structural-necessary-conditions; violations={detail}",
    )


def _check_conjugation_axioms(config: RunConfig) -> CheckReport:
    descriptor = resolve_conjugation_kind(config)
    kind = descriptor["kind"]
    exact_kind = kind in ("plain-J", "rotation-J")
    tol = _tolerance(config, "conjugation-axioms", 1e-12 if exact_kind else 1e-9)
    space = config.space
    rng = SplitMix64(config.seed ^ 0xA5A5)
    if kind == "wc-J":
        p = _complex_value(_require(descriptor, "p", "conjugation"), "conjugation.p")
        work = extended_space(space, p)
        claim = space.N + 1
    else:
        work = space
        claim = None
    C = make_conjugation(descriptor, work)
    worst = 0.0
    for _ in range(5):
        coeffs = np.zeros(work.N + 1, dtype=complex)
        deg = space.N - guard_band()
        coeffs[: deg + 1] = [
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(deg + 1)
        ]
        f = TruncatedSeries(coeffs)
        worst = max(worst, involution_defect(C, f, claim_dim=claim))
        worst = max(worst, isometry_defect(C, f))
    return CheckReport(
        "conjugation-axioms", "pass" if worst <= tol else "fail", worst, tol,
        guard_band(), f"conjugation-axioms; kind={kind}",
    )


def _check_boundedness_grid(config: RunConfig) -> CheckReport:
    pair = make_pair(config.symbols, config.space)
    report = boundedness_ratio_grid(pair.phi, config.space.alpha, config.space.n)
    status = "pass" if report.samples else "unverified"
    return CheckReport(
        "boundedness-grid", status, report.supremum, None, guard_band(),
        f"boundedness-ratio-trend; trend={report.trend}",
    )


def _check_nevanlinna_grid(config: RunConfig) -> CheckReport:
    pair = make_pair(config.symbols, config.space)
    report = nevanlinna_bound_grid(pair.phi, config.space.alpha, config.space.n)
    status = "pass" if report.samples else "unverified"
    return CheckReport(
        "nevanlinna-grid", status, report.supremum, None, guard_band(),
        f"counting-function-trend; trend={report.trend}",
    )


def _check_kernel_norm_balance(config: RunConfig) -> CheckReport:
    tol = _tolerance(config, "kernel-norm-balance", TOL_GUARDED)
    pair = make_pair(config.symbols, config.space)
    worst = 0.0
    for w in BALANCE_POINTS:
        worst = max(worst, norm_defect_kernel_test(pair, w, config.space))
    predicted = _predicted_normal(config.symbols)
    if predicted:
        status = "pass" if worst <= tol else "fail"
    elif worst >= FAIL_THRESHOLD:
        status = "pass"
    elif worst <= tol:
        status = "fail"
    else:
        status = "unverified"
    return CheckReport(
        "kernel-norm-balance", status, worst, tol, guard_band(),
        f"kernel-norm-balance; predicted={'normal' if predicted else 'nonnormal'}",
    )


CHECKS = {
    "J-symmetry": _check_j_symmetry,
    "C-symmetry": _check_c_symmetry,
    "self-adjointness": _check_self_adjointness,
    "normality": _check_normality,
    "normality-predicate": _check_normality_predicate,
    "adjoint-kernel": _check_adjoint_kernel,
    "adjoint-pair": _check_adjoint_pair,
    "necessary-conditions": _check_necessary_conditions,
    "conjugation-axioms": _check_conjugation_axioms,
    "boundedness-grid": _check_boundedness_grid,
    "nevanlinna-grid": _check_nevanlinna_grid,
    "kernel-norm-balance": _check_kernel_norm_balance,
}

GRID_CHECKS = ("boundedness-grid", "nevanlinna-grid")


def run(config: RunConfig) -> list[CheckReport]:
    """Run the configured checks in declared order.

    Boundedness-gate refusals become 'unverified' reports; they signal that
    the parameters left the certified region, not that a claim failed.
    """
    reports = []
    for name in config.checks:
        start = time.perf_counter()
        try:
            report = CHECKS[name](config)
        except UnboundedSymbolError as exc:
            report = CheckReport(
                name, "unverified", None, None, guard_band(), f"gate-refusal; {exc}"
            )
        report.wall_time = time.perf_counter() - start
        reports.append(report)
    return reports


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

MAX_REJECTIONS = 10**5

SWEEPABLE_FAMILIES = (
    "j-symmetric",
    "general",
    "self-adjoint",
    "normal-origin",
    "unitary",
    "wc-conjugated",
    "rotation-conjugated",
)


def _range(symbols: dict, key: str, default: tuple) -> tuple:
    value = symbols.get("ranges", {}).get(key)
    if value is None:
        return default
    return float(value[0]), float(value[1])


def draw_symbols(symbols: dict, rng: SplitMix64) -> dict:
    """Draw concrete family parameters inside the admissible region.

    Rejection-samples against the sufficient boundedness inequality for the
    plain-denominator families and against sup |phi| < 0.95 for the
    conjugated-denominator families. The draw for the general family picks
    uniformly among its three parameter branches (b real, c = 0, both
    complex) so both sides of the normality predicate get exercised.
    """
    family = symbols["family"]
    a_lo, a_hi = _range(symbols, "abs_a", (0.5, 1.5))
    b_lo, b_hi = _range(symbols, "abs_b", (0.1, 0.6))
    c_lo, c_hi = _range(symbols, "abs_c", (0.0, 0.5))
    p_lo, p_hi = _range(symbols, "abs_p", (0.1, 0.6))

    def as_pair(z: complex):
        return [z.real, z.imag]

    for _ in range(MAX_REJECTIONS):
        draw = dict(symbols)
        if family in ("j-symmetric", "wc-conjugated", "rotation-conjugated"):
            a = rng.complex_annulus(a_lo, a_hi)
            b = rng.complex_annulus(b_lo, b_hi)
            c = rng.complex_annulus(c_lo, c_hi)
            if not bounded_sufficient(b, c):
                continue
            draw.update({"a": as_pair(a), "b": as_pair(b), "c": as_pair(c)})
            if family == "wc-conjugated":
                draw["p"] = as_pair(rng.complex_annulus(p_lo, p_hi))
                draw["lambda_u"] = as_pair(rng.unimodular())
            if family == "rotation-conjugated":
                draw["mu"] = as_pair(rng.unimodular())
                draw["lam"] = as_pair(rng.unimodular())
        elif family in ("self-adjoint", "general"):
            if family == "self-adjoint":
                a = complex(rng.real_signed(a_lo, a_hi))
                b = complex(rng.real_signed(b_lo, b_hi))
                c = rng.complex_annulus(c_lo, c_hi)
            else:
                branch = rng.choice(("b-real", "c-zero", "free"))
                a = rng.complex_annulus(a_lo, a_hi)
                if branch == "b-real":
                    b = complex(rng.real_signed(b_lo, b_hi))
                    c = rng.complex_annulus(max(c_lo, 0.05), c_hi)
                elif branch == "c-zero":
                    b = rng.complex_annulus(b_lo, b_hi)
                    c = 0j
                else:
                    b = rng.complex_annulus(b_lo, b_hi)
                    c = rng.complex_annulus(max(c_lo, 0.05), c_hi)
            cbar = c.conjugate()
            phi = LinearFractionalMap(b - c * cbar, c, -cbar, 1.0)
            if not sup_norm_lft(phi) < 0.95:
                continue
            draw.update({"a": as_pair(a), "b": as_pair(b), "c": as_pair(c)})
        elif family == "normal-origin":
            draw.update(
                {
                    "a": as_pair(rng.complex_annulus(a_lo, a_hi)),
                    "b": as_pair(rng.complex_annulus(0.1, 0.9)),
                }
            )
        elif family == "unitary":
            draw.update(
                {
                    "p": as_pair(rng.complex_annulus(p_lo, p_hi)),
                    "lambda_u": as_pair(rng.unimodular()),
                }
            )
        else:
            raise ConfigError("symbols.family", f"family {family!r} cannot be swept")
        return draw
    raise ConfigError("symbols", "admissible region looks empty after 1e5 rejections")


def _draw_passes_gates(draw: dict, config: RunConfig) -> bool:
    """Check-specific gates a drawn parameter set must satisfy."""
    if "adjoint-kernel" in config.checks:
        pair = make_pair(draw, config.space)
        if "w_points" in draw:
            points = [_complex_value(v, "symbols.w_points") for v in draw["w_points"]]
        else:
            points = list(DEFAULT_KERNEL_POINTS)
        for w in points:
            if abs(w) > 0.7 or abs(lft_eval(pair.phi, w)) > 0.85:
                return False
    if "kernel-norm-balance" in config.checks:
        b = _complex_value(draw["b"], "symbols.b")
        c = _complex_value(draw["c"], "symbols.c")
        for w in BALANCE_POINTS:
            p1 = c + np.conj(b) * w / (1 - np.conj(c) * w)
            p2 = c + b * w / (1 - np.conj(c) * w)
            if max(abs(p1), abs(p2)) >= 0.95:
                return False
    return True


def sweep(config: RunConfig, draws: int, seed: int) -> dict:
    """Run the configured checks across random family draws.

    Ambiguous predicate outcomes (defects between the pass tolerance and the
    failure threshold) are re-drawn and counted rather than recorded, so
    boolean aggregates are never decided inside the gray band.
    """
    rng = SplitMix64(seed)
    per_check = {
        name: {"pass": 0, "fail": 0, "unverified": 0, "worst_defect": 0.0}
        for name in config.checks
    }
    mismatches = 0
    redraws = 0
    completed = 0
    while completed < draws:
        draw = draw_symbols(config.symbols, rng)
        if not _draw_passes_gates(draw, config):
            redraws += 1
            if redraws > MAX_REJECTIONS:
                raise ConfigError("symbols", "gates rejected too many draws")
            continue
        draw_config = RunConfig(
            space=config.space,
            symbols=draw,
            conjugation=config.conjugation,
            checks=config.checks,
            tolerances=config.tolerances,
            seed=seed,
        )
        reports = run(draw_config)
        ambiguous = any(
            r.status == "unverified" and r.name in ("normality-predicate", "kernel-norm-balance")
            for r in reports
        )
        if ambiguous:
            redraws += 1
            if redraws > MAX_REJECTIONS:
                raise ConfigError("symbols", "ambiguous band rejected too many draws")
            continue
        completed += 1
        for report in reports:
            slot = per_check[report.name]
            slot[report.status] += 1
            if report.defect is not None:
                slot["worst_defect"] = max(slot["worst_defect"], report.defect)
            if report.status == "fail" and report.name in (
                "normality-predicate",
                "kernel-norm-balance",
            ):
                mismatches += 1
    return {
        "draws": draws,
        "redraws": redraws,
        "mismatches": mismatches,
        "checks": per_check,
    }


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def _encode(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"not serializable: {type(obj)!r}")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": "),
                      default=_encode) + "\n"


def config_hash(doc: dict) -> str:
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()


def report_header(config: RunConfig, mode: str, **extra) -> dict:
    header = {
        "artifact": "cswcd",
        "version": __version__,
        "mode": mode,
        "config_sha256": config_hash(config.raw),
        "seed": config.seed,
        "guard": guard_band(),
    }
    header.update(extra)
    return header


def check_report_document(config: RunConfig, reports: list) -> dict:
    return {
        "header": report_header(config, "check"),
        "reports": [r.payload() for r in reports],
    }


def sweep_report_document(config: RunConfig, aggregate: dict, draws: int, seed: int) -> dict:
    return {
        "header": report_header(config, "sweep", draws=draws, sweep_seed=seed),
        "aggregate": aggregate,
    }


def timing_sidecar(reports: list) -> dict:
    return {r.name: r.wall_time for r in reports}
