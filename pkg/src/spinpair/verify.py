"""Randomized cross-check suites tying the closed forms to independent oracles.

Each suite draws couplings uniformly from [-5, 5] and temperatures from
[0.05, 10] (seeded, so failures are reproducible), measures the worst
deviation between two routes that must agree, and reports it against a
threshold.  Every Gibbs state built along the way is also screened for
trace normalization and block positivity; a violation fails the suite
that produced it, naming the offending draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .model import ModelParams, energy_scales
from .thermal import (
    GibbsXState,
    Temperature,
    gibbs_closed,
    gibbs_oracle,
    ground_state_density,
    oracle_routes,
    partition_function,
)
from .entanglement import (
    concurrence,
    concurrence_xstate_max,
    lambda_pairs_closed,
    lambdas_closed,
    lambdas_from_elements,
)
from .criticality import (
    concurrence_T0,
    critical_b,
    detect_revival,
    larger_revival_condition,
)

_TRACE_TOL = 1e-12
_PSD_TOL = 1e-14


class VerificationError(AssertionError):
    """A cross-check suite failed; the message names the failing draw."""


@dataclass
class SuiteResult:
    name: str
    samples: int
    max_deviation: float
    threshold: float
    passed: bool
    worst_draw: dict | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}  {self.name}: max deviation {self.max_deviation:.3e} "
            f"(tolerance {self.threshold:.1e}, {self.samples} draws)"
        )


def _draw_params(rng: np.random.Generator) -> ModelParams:
    j, gamma, jz, big_b, small_b = rng.uniform(-5.0, 5.0, size=5)
    return ModelParams(J=j, gamma=gamma, Jz=jz, B=big_b, b=small_b)


def _draw_temperature(rng: np.random.Generator) -> Temperature:
    return Temperature(float(rng.uniform(0.05, 10.0)))


def _describe(p: ModelParams, t: Temperature | None = None) -> dict:
    record = {"J": p.J, "gamma": p.gamma, "Jz": p.Jz, "B": p.B, "b": p.b}
    if t is not None:
        record["T"] = t.T
    return record


def _screen_state(s: GibbsXState, draw: dict, origin: str) -> None:
    trace_dev, psd = s.validity_violations()
    if trace_dev > _TRACE_TOL or psd > _PSD_TOL:
        raise VerificationError(
            f"invalid state from {origin} at {draw}: trace dev {trace_dev:.3e}, "
            f"positivity deficit {psd:.3e}"
        )


def _screen_concurrence(c: float, draw: dict, origin: str) -> None:
    if not 0.0 <= c <= 1.0:
        raise VerificationError(f"concurrence {c!r} outside [0, 1] from {origin} at {draw}")


class _Tracker:
    """Worst deviation and the draw that produced it."""

    def __init__(self) -> None:
        self.value = 0.0
        self.worst: dict | None = None

    def update(self, deviation: float, draw: dict) -> None:
        if deviation > self.value or self.worst is None:
            self.value = deviation
            self.worst = draw


def _result(name: str, n: int, tracker: _Tracker, threshold: float) -> SuiteResult:
    passed = tracker.value <= threshold
    return SuiteResult(name, n, tracker.value, threshold, passed, tracker.worst)


def suite_gibbs_closed_vs_oracle(n: int, seed: int, tol: float = 1e-10) -> SuiteResult:
    """Element-wise agreement of the closed-form state with the oracle."""
    rng = np.random.default_rng([seed, 1])
    tracker = _Tracker()
    for _ in range(n):
        p, t = _draw_params(rng), _draw_temperature(rng)
        draw = _describe(p, t)
        closed = gibbs_closed(p, t)
        oracle = gibbs_oracle(p, t)
        _screen_state(closed, draw, "gibbs_closed")
        _screen_state(oracle, draw, "gibbs_oracle")
        deviation = max(
            abs(closed.mu_plus - oracle.mu_plus),
            abs(closed.mu_minus - oracle.mu_minus),
            abs(closed.omega1 - oracle.omega1),
            abs(closed.omega2 - oracle.omega2),
            abs(closed.z - oracle.z),
            abs(closed.v - oracle.v),
        )
        tracker.update(deviation, draw)
    return _result("gibbs closed vs oracle", n, tracker, tol)


def suite_oracle_route_agreement(n: int, seed: int, tol: float = 1e-12) -> SuiteResult:
    """Spectral-sum route vs series route of the matrix exponential."""
    rng = np.random.default_rng([seed, 2])
    tracker = _Tracker()
    for _ in range(n):
        p, t = _draw_params(rng), _draw_temperature(rng)
        spectral, series = oracle_routes(p, t)
        tracker.update(float(np.max(np.abs(spectral - series))), _describe(p, t))
    return _result("oracle route agreement", n, tracker, tol)


def suite_concurrence_routes(n: int, seed: int, tol: float = 1e-12) -> SuiteResult:
    """Pairwise agreement of the three concurrence routes."""
    rng = np.random.default_rng([seed, 3])
    tracker = _Tracker()
    for _ in range(n):
        p, t = _draw_params(rng), _draw_temperature(rng)
        draw = _describe(p, t)
        state = gibbs_closed(p, t)
        _screen_state(state, draw, "gibbs_closed")
        c_closed = concurrence(lambdas_closed(p, t))
        c_elements = concurrence(lambdas_from_elements(state))
        c_algebraic = concurrence_xstate_max(state)
        for c in (c_closed, c_elements, c_algebraic):
            _screen_concurrence(c, draw, "concurrence routes")
        deviation = max(
            abs(c_closed - c_elements),
            abs(c_closed - c_algebraic),
            abs(c_elements - c_algebraic),
        )
        tracker.update(deviation, draw)
    return _result("concurrence route agreement", n, tracker, tol)


def suite_zero_temperature_limit(
    n: int, seed: int, tol: float = 1e-3, margin: float = 0.05, t_small: float = 1e-3
) -> SuiteResult:
    """T = 0 piecewise concurrence vs the thermal value at small T.

    Draws closer than ``margin`` to the degeneracy surface xi = eta - Jz
    are rejected (the piecewise form is discontinuous there).
    """
    rng = np.random.default_rng([seed, 4])
    tracker = _Tracker()
    accepted = 0
    attempts = 0
    while accepted < n and attempts < 1000 * n:
        attempts += 1
        p = _draw_params(rng)
        scales_gap = _degeneracy_gap(p)
        if abs(scales_gap) < margin:
            continue
        accepted += 1
        draw = _describe(p)
        cold = concurrence_T0(p).concurrence
        thermal = concurrence(lambdas_closed(p, Temperature(t_small)))
        _screen_concurrence(cold, draw, "concurrence_T0")
        _screen_concurrence(thermal, draw, "small-T concurrence")
        tracker.update(abs(cold - thermal), draw)
    return _result("zero-temperature limit", accepted, tracker, tol)


def _degeneracy_gap(p: ModelParams) -> float:
    scales = energy_scales(p)
    return scales.xi - (scales.eta - p.Jz)


def bisect_critical_field(p: ModelParams, resolution: float = 1e-9) -> float | None:
    """Locate the T = 0 transition by bisecting on the concurrence itself.

    The sigma-branch value carries no b dependence, so the first field at
    which C(b) departs from C(0) is the critical field; locating it this
    way is independent of the closed-form b_c expression.  Returns None
    when the b = 0 state is not on the sigma branch (then C varies with b
    from the start and there is no plateau whose end could be located).
    """
    start = concurrence_T0(replace(p, b=0.0))
    if start.branch != "sigma_phase":
        return None
    plateau = start.concurrence

    def changed(bv: float) -> bool:
        return concurrence_T0(replace(p, b=bv)).concurrence != plateau

    hi = 1.0
    while not changed(hi):
        hi *= 2.0
        if hi > 1e9:
            return None
    lo = 0.0
    while hi - lo > resolution * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if changed(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def suite_critical_field_bisection(n: int, seed: int, tol: float = 1e-6) -> SuiteResult:
    """Closed-form critical field vs bisection on the T = 0 discontinuity."""
    rng = np.random.default_rng([seed, 5])
    tracker = _Tracker()
    accepted = 0
    attempts = 0
    while accepted < n and attempts < 1000 * n:
        attempts += 1
        p = _draw_params(rng)
        bc = critical_b(p)
        if bc is None:
            continue
        accepted += 1
        located = bisect_critical_field(p)
        draw = _describe(p)
        deviation = math.inf if located is None else abs(located - bc)
        tracker.update(deviation, draw)
    return _result("critical field bisection", accepted, tracker, tol)


def suite_revival_consistency(n: int, seed: int, margin: float = 0.05) -> SuiteResult:
    """Larger-revival inequality vs the scan-based revival verdict at T = 0.

    Draws keep J > 0, gamma in [0.05, 1], require an existing transition,
    and stay ``margin`` away from the threshold Jz = eta - eta/gamma where
    the two sides are allowed to disagree.  Deviation is the number of
    mismatches, threshold zero.
    """
    rng = np.random.default_rng([seed, 6])
    tracker = _Tracker()
    mismatches = 0
    accepted = 0
    attempts = 0
    while accepted < n and attempts < 5000 * n:
        attempts += 1
        p = _draw_params(rng)
        if p.J <= 0.0 or not 0.05 <= p.gamma <= 1.0:
            continue
        bc = critical_b(p)
        if bc is None:
            continue
        eta = energy_scales(p).eta
        if abs(p.Jz - (eta - eta / p.gamma)) < margin:
            continue
        accepted += 1
        predicted = larger_revival_condition(p)
        report = detect_revival(p, None, b_max=bc + max(1.0, 0.5 * bc), n=200)
        if predicted != report.larger_revival:
            mismatches += 1
            tracker.update(float(mismatches), _describe(p))
    tracker.value = float(mismatches)
    return _result("revival condition agreement", accepted, tracker, 0.0)


def suite_symmetry(n: int, seed: int, tol: float = 1e-12) -> SuiteResult:
    """Concurrence invariance under gamma -> -gamma and J -> -J."""
    rng = np.random.default_rng([seed, 7])
    tracker = _Tracker()
    for _ in range(n):
        p, t = _draw_params(rng), _draw_temperature(rng)
        draw = _describe(p, t)
        c = concurrence(lambdas_closed(p, t))
        c_gamma = concurrence(lambdas_closed(replace(p, gamma=-p.gamma), t))
        c_j = concurrence(lambdas_closed(replace(p, J=-p.J), t))
        tracker.update(max(abs(c - c_gamma), abs(c - c_j)), draw)
    return _result("symmetry under gamma and J sign flips", n, tracker, tol)


def suite_lambda_b_independence(n: int, seed: int, tol: float = 1e-12) -> SuiteResult:
    """Outer-block roots, rescaled by the partition function, ignore b.

    The normalized roots share the partition function with the inner block
    and therefore shift when b moves; their Z-free numerators are what
    carry no b dependence.  The check compares lambda * Z relatively
    between two random b values at otherwise fixed parameters.
    """
    rng = np.random.default_rng([seed, 8])
    tracker = _Tracker()
    for _ in range(n):
        p, t = _draw_params(rng), _draw_temperature(rng)
        other = replace(p, b=float(rng.uniform(-5.0, 5.0)))
        draw = _describe(p, t)
        outer_a, _ = lambda_pairs_closed(p, t)
        outer_b, _ = lambda_pairs_closed(other, t)
        z_a = partition_function(p, t)
        z_b = partition_function(other, t)
        deviation = 0.0
        for la, lb in zip(outer_a, outer_b):
            xa, xb = la * z_a, lb * z_b
            denom = max(abs(xa), abs(xb), 1e-300)
            deviation = max(deviation, abs(xa - xb) / denom)
        tracker.update(deviation, draw)
    return _result("partition-rescaled outer roots ignore b", n, tracker, tol)


def suite_state_validity(n: int, seed: int) -> SuiteResult:
    """Trace normalization and block positivity across construction routes."""
    rng = np.random.default_rng([seed, 9])
    tracker = _Tracker()
    for _ in range(n):
        p, t = _draw_params(rng), _draw_temperature(rng)
        draw = _describe(p, t)
        for origin, state in (
            ("gibbs_closed", gibbs_closed(p, t)),
            ("ground_state_density", ground_state_density(p)),
        ):
            trace_dev, psd = state.validity_violations()
            tracker.update(max(trace_dev, psd * (_TRACE_TOL / _PSD_TOL)), draw)
            _screen_state(state, draw, origin)
            c = concurrence(lambdas_from_elements(state))
            _screen_concurrence(c, draw, origin)
    return _result("state validity", n, tracker, _TRACE_TOL)


def run_verification(samples: int, seed: int, tol: float = 1e-10) -> list[SuiteResult]:
    """Run every suite with ``samples`` draws each; see cli verify.

    ``tol`` bounds the route-equivalence suites directly; the small-T limit
    and bisection suites keep their own physical tolerances (1e-3 and 1e-6,
    set by the finite temperature offset and the bisection resolution)
    unless ``tol`` is looser still.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    return [
        suite_gibbs_closed_vs_oracle(samples, seed, tol),
        suite_oracle_route_agreement(samples, seed, min(tol, 1e-12)),
        suite_concurrence_routes(samples, seed, min(tol, 1e-12)),
        suite_zero_temperature_limit(samples, seed, max(tol, 1e-3)),
        suite_critical_field_bisection(samples, seed, max(tol, 1e-6)),
        suite_revival_consistency(samples, seed),
        suite_symmetry(samples, seed, min(tol, 1e-12)),
        suite_lambda_b_independence(samples, seed, min(tol, 1e-12)),
        suite_state_validity(samples, seed),
    ]
