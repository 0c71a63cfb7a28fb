"""Gibbs states of the two-qubit pair, in closed form and by numeric oracle.

The equilibrium state rho = exp(-H/T)/Z inherits the X pattern of the
Hamiltonian: populations mu_plus, mu_minus on |00>, |11> and omega1, omega2
on |01>, |10>, with one real coherence per block (v outer, z inner).  The
closed-form elements are

    mu_+-  = (1/Z) e^{-Jz beta/2} [cosh(eta beta) -+ (B/eta)   sinh(eta beta)]
    omega  = (1/Z) e^{+Jz beta/2} [cosh(xi beta)  -+ (b/xi)    sinh(xi beta)]
    v      = -(J gamma / (Z eta)) e^{-Jz beta/2} sinh(eta beta)
    z      = -(J / (Z xi))        e^{+Jz beta/2} sinh(xi beta)
    Z      = 2 [e^{-Jz beta/2} cosh(eta beta) + e^{+Jz beta/2} cosh(xi beta)]

Internally every Boltzmann factor is rescaled by the ground energy, so each
exponent is <= 0, the rescaled partition sum stays >= 1, and beta as large
as 1e6 neither overflows nor underflows.  The population combinations are
assembled as sums of nonnegative weights (the cosh -+ sinh rearrangement),
and sinh(x)/x terms switch to their series below |x| = 1e-4 so eta -> 0 and
xi -> 0 stay finite.

``gibbs_oracle`` rebuilds the same state from the matrix exponential along
two independent routes (spectral sum over the plane-rotation eigensystem,
and scaling-and-squaring of the truncated power series) and refuses to
answer if the routes disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import (
    InvalidParameterError,
    ModelParams,
    NumericFailureError,
    build_hamiltonian,
    eigensystem_numeric,
    energy_scales,
)

# Off-pattern entries of exp(-beta H) must vanish; anything above this is a bug.
_X_PATTERN_TOL = 1e-12
_ROUTE_TOL = 1e-10
_SMALL_ARG = 1e-4

# Relative level-spacing tolerance below which two levels count as one
# degenerate ground space (shared with the zero-temperature phase logic).
DEGENERACY_TOL = 1e-9


class InternalInconsistencyError(RuntimeError):
    """Two supposedly equivalent computation routes disagreed."""


class InvalidStateError(ValueError):
    """A density-matrix value violates positivity or normalization."""


@dataclass(frozen=True)
class Temperature:
    """Equilibrium temperature T > 0 in energy units (k_B = 1)."""

    T: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "T", float(self.T))
        if not math.isfinite(self.T) or self.T <= 0.0:
            raise InvalidParameterError(f"temperature must be finite and > 0, got {self.T!r}")

    @property
    def beta(self) -> float:
        return 1.0 / self.T


@dataclass(frozen=True)
class GibbsXState:
    """The six independent real elements of an X-form thermal state.

    partition holds the true Z = tr exp(-beta H); it is None for the
    zero-temperature state (where Z has no finite limit) and may round to
    inf for extreme beta, while the elements themselves stay finite.
    """

    mu_plus: float
    mu_minus: float
    omega1: float
    omega2: float
    z: float
    v: float
    partition: float | None = None

    def diagonal(self) -> tuple[float, float, float, float]:
        return (self.mu_plus, self.omega1, self.omega2, self.mu_minus)

    def trace(self) -> float:
        return self.mu_plus + self.mu_minus + self.omega1 + self.omega2

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.mu_plus, 0.0, 0.0, self.v],
                [0.0, self.omega1, self.z, 0.0],
                [0.0, self.z, self.omega2, 0.0],
                [self.v, 0.0, 0.0, self.mu_minus],
            ]
        )

    def validity_violations(self) -> tuple[float, float]:
        """Return (trace deviation, worst block-positivity deficit).

        The first entry is |tr rho - 1|; the second is the amount by which
        a coherence squared exceeds its population product (0 when the
        state is exactly positive semidefinite), including any negative
        or > 1 diagonal excursions.
        """
        trace_dev = abs(self.trace() - 1.0)
        psd = max(
            self.v * self.v - self.mu_plus * self.mu_minus,
            self.z * self.z - self.omega1 * self.omega2,
            0.0,
        )
        for d in self.diagonal():
            psd = max(psd, -d, d - 1.0)
        return trace_dev, psd


class BoltzmannWeights(NamedTuple):
    """Ground-rescaled Boltzmann factors of the four levels.

    Each weight is exp(-beta (E - E0)) in (0, 1]; ``total`` is their sum
    (the rescaled partition sum, always >= 1).  f_sigma and f_psi are the
    rescaled block prefactors exp(-beta (+-Jz/2 - E0)).
    """

    sigma_plus: float
    sigma_minus: float
    psi_plus: float
    psi_minus: float
    f_sigma: float
    f_psi: float
    total: float
    ground: float
    eta: float
    xi: float


def level_energies(p: ModelParams) -> tuple[float, float, float, float]:
    """Closed-form energies (sigma+, sigma-, psi+, psi-)."""
    scales = energy_scales(p)
    half_jz = 0.5 * p.Jz
    return (
        half_jz + scales.eta,
        half_jz - scales.eta,
        -half_jz + scales.xi,
        -half_jz - scales.xi,
    )


def boltzmann_weights(p: ModelParams, beta: float) -> BoltzmannWeights:
    scales = energy_scales(p)
    e_sigma_plus, e_sigma_minus, e_psi_plus, e_psi_minus = level_energies(p)
    ground = min(e_sigma_minus, e_psi_minus)
    w_sigma_plus = math.exp(-beta * (e_sigma_plus - ground))
    w_sigma_minus = math.exp(-beta * (e_sigma_minus - ground))
    w_psi_plus = math.exp(-beta * (e_psi_plus - ground))
    w_psi_minus = math.exp(-beta * (e_psi_minus - ground))
    return BoltzmannWeights(
        sigma_plus=w_sigma_plus,
        sigma_minus=w_sigma_minus,
        psi_plus=w_psi_plus,
        psi_minus=w_psi_minus,
        f_sigma=math.exp(-beta * (0.5 * p.Jz - ground)),
        f_psi=math.exp(-beta * (-0.5 * p.Jz - ground)),
        total=w_sigma_plus + w_sigma_minus + w_psi_plus + w_psi_minus,
        ground=ground,
        eta=scales.eta,
        xi=scales.xi,
    )


def _sinhc(x: float) -> float:
    """sinh(x)/x, by series for small |x| so the x -> 0 limit is exact."""
    if abs(x) < _SMALL_ARG:
        x2 = x * x
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    return math.sinh(x) / x


def scaled_coherence(
    coupling: float,
    scale: float,
    beta: float,
    w_minus: float,
    w_plus: float,
    prefactor: float,
) -> float:
    """Rescaled coherence numerator -(coupling/scale) e^{...} sinh(scale beta).

    For small scale*beta the weight difference cancels, so the series form
    -coupling * beta * sinhc(scale beta) * prefactor is used instead; this
    also covers the removable singularity at scale = 0.
    """
    x = scale * beta
    if x < _SMALL_ARG:
        return -coupling * beta * _sinhc(x) * prefactor
    return -(coupling / scale) * 0.5 * (w_minus - w_plus)


def _exp_or_inf(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def partition_function(p: ModelParams, t: Temperature) -> float:
    """Trace of exp(-beta H), evaluated overflow-safely.

    Equal to 2 [e^{-Jz beta/2} cosh(eta beta) + e^{Jz beta/2} cosh(xi beta)];
    computed through ground-rescaled weights so the result is exact up to
    rounding whenever it is representable (and +inf when it is not).
    """
    w = boltzmann_weights(p, t.beta)
    return _exp_or_inf(math.log(w.total) - t.beta * w.ground)


def _population_coefficients(field: float, scale: float, coupling: float) -> tuple[float, float]:
    """((scale - field)/(2 scale), (scale + field)/(2 scale)) without cancellation.

    These are the squared ground/excited eigenvector weights of a 2x2 block
    [[field, coupling], [coupling, -field]] with scale = hypot(field,
    coupling).  The side that nearly cancels is rewritten through
    scale^2 - field^2 = coupling^2; a fully degenerate block (scale = 0)
    splits evenly.
    """
    if scale == 0.0:
        return 0.5, 0.5
    if coupling == 0.0:
        return (0.0, 1.0) if field >= 0.0 else (1.0, 0.0)
    # quotient-of-quotients form: each factor is <= 1, so subnormal inputs
    # cannot underflow the denominator
    if field >= 0.0:
        plus = (scale + field) / (2.0 * scale)
        minus = 0.5 * (coupling / scale) * (coupling / (scale + field))
        return minus, plus
    minus = (scale - field) / (2.0 * scale)
    plus = 0.5 * (coupling / scale) * (coupling / (scale - field))
    return minus, plus


def _assemble_state(
    p: ModelParams,
    w_sigma_plus: float,
    w_sigma_minus: float,
    w_psi_plus: float,
    w_psi_minus: float,
    v_numerator: float,
    z_numerator: float,
    eta: float,
    xi: float,
    partition: float | None,
) -> GibbsXState:
    total = w_sigma_plus + w_sigma_minus + w_psi_plus + w_psi_minus
    # cosh -+ (B/eta) sinh rearranged into nonnegative weight combinations
    outer_minus, outer_plus = _population_coefficients(p.B, eta, p.J * p.gamma)
    inner_minus, inner_plus = _population_coefficients(p.b, xi, p.J)
    return GibbsXState(
        mu_plus=(outer_minus * w_sigma_minus + outer_plus * w_sigma_plus) / total,
        mu_minus=(outer_plus * w_sigma_minus + outer_minus * w_sigma_plus) / total,
        omega1=(inner_minus * w_psi_minus + inner_plus * w_psi_plus) / total,
        omega2=(inner_plus * w_psi_minus + inner_minus * w_psi_plus) / total,
        z=z_numerator / total + 0.0,  # normalizes -0.0
        v=v_numerator / total + 0.0,
        partition=partition,
    )


def gibbs_closed(p: ModelParams, t: Temperature) -> GibbsXState:
    """Closed-form Gibbs state elements at temperature T."""
    beta = t.beta
    w = boltzmann_weights(p, beta)
    v_num = scaled_coherence(p.J * p.gamma, w.eta, beta, w.sigma_minus, w.sigma_plus, w.f_sigma)
    z_num = scaled_coherence(p.J, w.xi, beta, w.psi_minus, w.psi_plus, w.f_psi)
    partition = _exp_or_inf(math.log(w.total) - beta * w.ground)
    return _assemble_state(
        p,
        w.sigma_plus,
        w.sigma_minus,
        w.psi_plus,
        w.psi_minus,
        v_num,
        z_num,
        w.eta,
        w.xi,
        partition,
    )


def ground_state_density(p: ModelParams) -> GibbsXState:
    """T = 0 Gibbs state: the normalized projector onto the ground eigenspace.

    Every level within 1e-9 * max(1, eta, xi) of the minimum energy enters
    with equal weight, which covers both the inter-block degeneracy at
    xi = eta - Jz and the intra-block degeneracies at eta = 0 or xi = 0.
    The partition field is None (Z has no finite zero-temperature limit).
    """
    scales = energy_scales(p)
    levels = level_energies(p)
    ground = min(levels)
    tol = DEGENERACY_TOL * max(1.0, scales.eta, scales.xi)
    w_sigma_plus, w_sigma_minus, w_psi_plus, w_psi_minus = (
        1.0 if e - ground <= tol else 0.0 for e in levels
    )
    ratio_sigma = p.J * p.gamma / scales.eta if scales.eta > 0.0 else 0.0
    ratio_psi = p.J / scales.xi if scales.xi > 0.0 else 0.0
    v_num = -ratio_sigma * 0.5 * (w_sigma_minus - w_sigma_plus)
    z_num = -ratio_psi * 0.5 * (w_psi_minus - w_psi_plus)
    return _assemble_state(
        p,
        w_sigma_plus,
        w_sigma_minus,
        w_psi_plus,
        w_psi_minus,
        v_num,
        z_num,
        scales.eta,
        scales.xi,
        None,
    )


def _expm_taylor_scaled(a: np.ndarray, rel_tol: float = 1e-18, max_terms: int = 80) -> np.ndarray:
    """exp(a) by scaling-and-squaring of the truncated power series."""
    norm = float(np.linalg.norm(a))
    squarings = 0 if norm <= 1.0 else int(math.ceil(math.log2(norm)))
    scaled = a / (2.0**squarings)
    term = np.eye(a.shape[0])
    total = np.eye(a.shape[0])
    for k in range(1, max_terms + 1):
        term = term @ scaled / k
        total = total + term
        if np.linalg.norm(term) <= rel_tol * np.linalg.norm(total):
            break
    else:
        raise NumericFailureError("matrix-exponential series did not converge")
    for _ in range(squarings):
        total = total @ total
    return total


def oracle_routes(p: ModelParams, t: Temperature) -> tuple[np.ndarray, np.ndarray]:
    """Normalized exp(-beta H) by two independent numeric routes.

    Route one sums the spectral projectors of the plane-rotation
    eigensystem; route two runs scaling-and-squaring on the power series.
    Both shift H by its numeric ground energy first (the normalized state
    is shift-invariant), so no exponential can overflow.
    """
    h = build_hamiltonian(p)
    beta = t.beta
    system = eigensystem_numeric(h)
    ground = min(system.energies())

    spectral = np.zeros((4, 4))
    for pair in system.pairs():
        weight = math.exp(-beta * (pair.energy - ground))
        spectral += weight * np.outer(pair.vector, pair.vector)
    spectral /= np.trace(spectral)

    series = _expm_taylor_scaled(-beta * (h - ground * np.eye(4)))
    series /= np.trace(series)
    return spectral, series


_X_PATTERN_ZEROS = ((0, 1), (0, 2), (1, 3), (2, 3))


def gibbs_oracle(p: ModelParams, t: Temperature) -> GibbsXState:
    """Gibbs state from the matrix exponential, cross-checked across routes.

    Raises InternalInconsistencyError if the two routes differ anywhere by
    more than 1e-10 or if any off-X-pattern entry survives above 1e-12.
    """
    spectral, series = oracle_routes(p, t)
    deviation = float(np.max(np.abs(spectral - series)))
    if deviation > _ROUTE_TOL:
        raise InternalInconsistencyError(
            f"matrix-exponential routes disagree by {deviation:.3e} at {p}, T={t.T}"
        )
    rho = 0.5 * (spectral + series)
    for i, j in _X_PATTERN_ZEROS:
        if abs(rho[i, j]) > _X_PATTERN_TOL or abs(rho[j, i]) > _X_PATTERN_TOL:
            raise InternalInconsistencyError(
                f"thermal state is not X-patterned at entry ({i},{j}): {rho[i, j]:.3e}"
            )

    system = eigensystem_numeric(build_hamiltonian(p))
    ground = min(system.energies())
    weight_sum = sum(math.exp(-t.beta * (e - ground)) for e in system.energies())
    partition = _exp_or_inf(math.log(weight_sum) - t.beta * ground)
    return GibbsXState(
        mu_plus=float(rho[0, 0]),
        mu_minus=float(rho[3, 3]),
        omega1=float(rho[1, 1]),
        omega2=float(rho[2, 2]),
        z=float(0.5 * (rho[1, 2] + rho[2, 1])),
        v=float(0.5 * (rho[0, 3] + rho[3, 0])),
        partition=partition,
    )
