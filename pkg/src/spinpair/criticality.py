"""Zero-temperature phase structure, critical points, and revival detection.

At T = 0 the concurrence is piecewise in the level ordering of the two
ground candidates (outer sigma- at Jz/2 - eta, inner psi- at -Jz/2 - xi):

    C = |J gamma| / eta                 xi < eta - Jz   (sigma phase)
    C = ||J gamma|/eta - |J|/xi| / 2    xi = eta - Jz   (degenerate)
    C = |J| / xi                        xi > eta - Jz   (psi phase)

Since xi grows with the field inhomogeneity b while eta ignores it, the
phases cross at the critical field b_c = sqrt((eta - Jz)^2 - J^2) whenever
eta - Jz > |J|.  Beyond b_c the concurrence re-emerges at |J|/(eta - Jz)
and then decays; the revived peak exceeds the pre-drop plateau exactly
when Jz > eta - eta/gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .model import InvalidParameterError, ModelParams, energy_scales
from .thermal import DEGENERACY_TOL, InternalInconsistencyError, Temperature
from .entanglement import lambdas_closed, concurrence

# Minimum concurrence swing that counts as a real feature rather than noise.
_PROMINENCE = 1e-6


class UndefinedConditionError(ValueError):
    """The requested criterion is undefined for these parameters."""


Branch = Literal["sigma_phase", "degenerate", "psi_phase"]


@dataclass(frozen=True)
class PhaseVerdict:
    branch: Branch
    concurrence: float


@dataclass(frozen=True)
class RevivalReport:
    """Shape of a concurrence-vs-b curve around the critical field.

    When ``has_revival`` is set, the curve falls to ``drop_location`` and
    climbs back to ``revival_peak_value``; ``larger_revival`` additionally
    records whether that peak exceeds the b = 0 plateau.  When the scan
    range ends before the transition, ``transition_beyond_range`` is set
    instead.
    """

    has_revival: bool
    plateau_value: float
    drop_location: float | None
    revival_peak_value: float | None
    revival_peak_location: float | None
    larger_revival: bool
    transition_beyond_range: bool = False


def _branch_values(p: ModelParams) -> tuple[float, float]:
    scales = energy_scales(p)
    sigma_val = abs(p.J * p.gamma) / scales.eta if scales.eta > 0.0 else 0.0
    psi_val = abs(p.J) / scales.xi if scales.xi > 0.0 else 0.0
    return sigma_val, psi_val


def concurrence_T0(p: ModelParams) -> PhaseVerdict:
    """Zero-temperature concurrence and its phase branch.

    Intended regime is J > 0, 0 <= gamma <= 1, but the absolute-value form
    keeps the result defined (and symmetric under gamma -> -gamma and
    J -> -J) for all finite parameters.
    """
    scales = energy_scales(p)
    sigma_val, psi_val = _branch_values(p)
    gap = scales.xi - (scales.eta - p.Jz)
    tol = DEGENERACY_TOL * max(1.0, scales.xi, scales.eta)
    if abs(gap) <= tol:
        return PhaseVerdict("degenerate", abs(sigma_val - psi_val) / 2.0)
    if gap < 0.0:
        return PhaseVerdict("sigma_phase", sigma_val)
    return PhaseVerdict("psi_phase", psi_val)


def critical_b(p: ModelParams) -> float | None:
    """Critical inhomogeneity b_c where the T = 0 ground state switches block.

    Solves xi(b) = eta - Jz, i.e. b_c = sqrt((eta - Jz)^2 - J^2).  Returns
    None when eta - Jz <= |J|: then no b >= 0 reaches the crossing (xi >= |J|
    for every b), so the system sits in the psi branch for every b > 0 or is
    degenerate exactly at b = 0.  The b field of the input is ignored.
    """
    scales = energy_scales(p)
    level = scales.eta - p.Jz
    if level <= abs(p.J):
        return None
    return math.sqrt((level - abs(p.J)) * (level + abs(p.J)))


def larger_revival_condition(p: ModelParams) -> bool:
    """Whether the post-critical revival peak exceeds the pre-drop plateau.

    True iff Jz > eta - eta/gamma, equivalently |J|/(eta - Jz) > |J gamma|/eta.
    Assumes J > 0, 0 < gamma <= 1 and an existing transition; gamma = 0 has
    no plateau interpretation and raises UndefinedConditionError.
    """
    if p.gamma == 0.0:
        raise UndefinedConditionError(
            "larger-revival condition is undefined at gamma = 0 (no anisotropy plateau)"
        )
    eta = energy_scales(p).eta
    return p.Jz > eta - eta / p.gamma


def _thermal_c(p: ModelParams, temperature: float) -> float:
    return concurrence(lambdas_closed(p, Temperature(temperature)))


def _scan_temperatures(t_max: float) -> list[float]:
    # >= 200 points: linear through the low range, logarithmic above T = 0.1.
    if t_max <= 0.1:
        return [t_max * k / 224.0 for k in range(1, 225)]
    low = [0.1 * k / 64.0 for k in range(1, 65)]
    ratio = (t_max / 0.1) ** (1.0 / 159.0)
    high = [0.1 * ratio**k for k in range(1, 160)]
    high[-1] = t_max
    return low + high


def critical_temperature_detail(
    p: ModelParams, t_max: float
) -> tuple[float, float, float] | None:
    """Largest T in (0, t_max] with C > 0, plus the bracketing interval used.

    Coarse scan first, then bisection on the sign of C to relative width
    1e-8.  Returns None when the scan sees no entanglement anywhere; if the
    concurrence is still positive at t_max the boundary itself is returned.
    """
    if not (t_max > 0.0) or not math.isfinite(t_max):
        raise InvalidParameterError(f"t_max must be finite and > 0, got {t_max!r}")
    grid = _scan_temperatures(t_max)
    values = [_thermal_c(p, tv) for tv in grid]
    top = None
    for i in range(len(grid) - 1, -1, -1):
        if values[i] > 0.0:
            top = i
            break
    if top is None:
        return None
    if top == len(grid) - 1:
        return grid[-1], grid[-1], grid[-1]
    lo, hi = grid[top], grid[top + 1]
    bracket = (lo, hi)
    while hi - lo > 1e-8 * hi:
        mid = 0.5 * (lo + hi)
        if _thermal_c(p, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), bracket[0], bracket[1]


def critical_temperature(p: ModelParams, t_max: float) -> float | None:
    """Largest temperature in (0, t_max] with nonzero concurrence, or None."""
    detail = critical_temperature_detail(p, t_max)
    return None if detail is None else detail[0]


def detect_revival(
    p: ModelParams,
    temperature: Temperature | None,
    b_max: float,
    n: int = 400,
) -> RevivalReport:
    """Scan C(b) on [0, b_max] and describe any drop-and-revival structure.

    ``temperature`` None means T = 0; the zero-temperature scan inserts the
    critical field (and a point just beyond it) into the grid so the
    single-point dip at the transition is always sampled and the detected
    peak matches the closed form |J|/(eta - Jz) to well under 1e-6.  The
    plateau is C at b = 0; the revival peak is the first strict rise's
    local maximum; swings below 1e-6 are ignored as noise.
    """
    if not (b_max > 0.0) or not math.isfinite(b_max):
        raise InvalidParameterError(f"b_max must be finite and > 0, got {b_max!r}")
    if n < 100:
        raise InvalidParameterError(f"n must be >= 100, got {n}")

    grid = list(np.linspace(0.0, b_max, n))
    beyond = False
    bc = None
    if temperature is None:
        bc = critical_b(p)
        if bc is not None and bc >= b_max:
            beyond = True
        samples = {float(bv): concurrence_T0(replace(p, b=bv)).concurrence for bv in grid}
        if bc is not None and 0.0 < bc < b_max:
            # The dip at the transition is a single point, and the revived
            # branch starts at its right limit |J|/xi(b_c); sample both
            # explicitly so no grid resolution can miss them.
            samples[bc] = concurrence_T0(replace(p, b=bc)).concurrence
            samples[bc * (1.0 + 1e-9)] = abs(p.J) / math.hypot(bc, p.J)
        grid = sorted(samples)
        values = [samples[bv] for bv in grid]
    else:
        values = [_thermal_c(replace(p, b=bv), temperature.T) for bv in grid]

    plateau = values[0]
    rise = None
    for i in range(len(values) - 1):
        if values[i + 1] > values[i]:
            rise = i
            break
    if rise is None or rise == 0:
        return RevivalReport(False, plateau, None, None, None, False, beyond)

    low = min(values[: rise + 1])
    low_idx = max(i for i in range(rise + 1) if values[i] == low)
    peak_idx = rise
    while peak_idx + 1 < len(values) and values[peak_idx + 1] > values[peak_idx]:
        peak_idx += 1
    peak = values[peak_idx]

    has_revival = peak - low > _PROMINENCE
    larger = has_revival and peak > plateau + _PROMINENCE
    if not has_revival:
        return RevivalReport(False, plateau, None, None, None, False, beyond)

    if temperature is None and bc is not None and not beyond:
        sigma_val, _ = _branch_values(p)
        expected_peak = abs(p.J) / (energy_scales(p).eta - p.Jz)
        if abs(plateau - sigma_val) > _PROMINENCE or abs(peak - expected_peak) > _PROMINENCE:
            raise InternalInconsistencyError(
                "zero-temperature revival scan disagrees with the closed-form "
                f"plateau/peak at {p}"
            )

    return RevivalReport(
        has_revival=True,
        plateau_value=plateau,
        drop_location=grid[low_idx],
        revival_peak_value=peak,
        revival_peak_location=grid[peak_idx],
        larger_revival=larger,
        transition_beyond_range=beyond,
    )
