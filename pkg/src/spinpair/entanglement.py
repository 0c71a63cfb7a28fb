"""Wootters concurrence for the pair's X-form density matrices.

For an X state the spin-flipped matrix R = rho (sy x sy) rho* (sy x sy)
block-decomposes, and the square roots of its eigenvalues come out in
closed form per block:

    outer block:  |sqrt(mu_plus mu_minus) +- v|
    inner block:  |sqrt(omega1 omega2)    +- z|

The concurrence is C = max(0, 2 max_i lambda_i - sum_i lambda_i).  Three
mutually checking routes are provided: roots from the state elements,
roots directly from couplings and temperature, and the algebraic X-state
maximum 2 max(0, |z| - sqrt(mu+ mu-), |v| - sqrt(w1 w2)).  No dense R is
ever materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelParams
from .thermal import (
    GibbsXState,
    InvalidStateError,
    Temperature,
    boltzmann_weights,
    scaled_coherence,
)

# Radicands this far below zero are rounding dust and are clamped; anything
# lower means the input was not a valid state.
_RADICAND_TOL = 1e-14


@dataclass(frozen=True)
class LambdaSpectrum:
    """The four spin-flip roots, sorted descending, each >= 0."""

    lambdas: tuple[float, float, float, float]

    def __iter__(self):
        return iter(self.lambdas)


def _block_root(product: float) -> float:
    if product < -_RADICAND_TOL:
        raise InvalidStateError(
            f"population product {product!r} is negative beyond rounding tolerance"
        )
    return math.sqrt(max(product, 0.0))


def lambdas_from_elements(s: GibbsXState) -> LambdaSpectrum:
    """Spin-flip roots computed from the six state elements."""
    outer = _block_root(s.mu_plus * s.mu_minus)
    inner = _block_root(s.omega1 * s.omega2)
    roots = sorted(
        (abs(outer + s.v), abs(outer - s.v), abs(inner + s.z), abs(inner - s.z)),
        reverse=True,
    )
    return LambdaSpectrum(tuple(roots))


def lambda_pairs_closed(
    p: ModelParams, t: Temperature
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Closed-form spin-flip roots, resolved by block.

    Returns ((outer pair), (inner pair)) where the outer pair is

        (1/Z) e^{-Jz beta/2} | sqrt(1 + (J g / eta)^2 sinh^2(eta beta))
                               -+ (J g / eta) sinh(eta beta) |

    and the inner pair is the same with (J/xi, xi, +Jz/2).  Evaluated on
    ground-rescaled weights with the same series treatment of sinh(x)/x as
    the thermal elements, so extreme beta and eta, xi -> 0 stay finite.
    The outer pair's Z-free numerators carry no b dependence at all.
    """
    beta = t.beta
    w = boltzmann_weights(p, beta)
    q = -scaled_coherence(p.J * p.gamma, w.eta, beta, w.sigma_minus, w.sigma_plus, w.f_sigma)
    outer = (_small_root(w.f_sigma, q) / w.total, (math.hypot(w.f_sigma, q) + abs(q)) / w.total)
    d = -scaled_coherence(p.J, w.xi, beta, w.psi_minus, w.psi_plus, w.f_psi)
    inner = (_small_root(w.f_psi, d) / w.total, (math.hypot(w.f_psi, d) + abs(d)) / w.total)
    return outer, inner


def _small_root(f: float, q: float) -> float:
    # sqrt(f^2 + q^2) - |q| rewritten as f^2 / (sqrt(f^2 + q^2) + |q|): the
    # direct difference loses all relative accuracy once |q| >> f.  At
    # q = 0 both roots must come out bitwise equal to f, or vanishing
    # couplings would leave one-ulp concurrence dust where the exact
    # value is zero.
    if q == 0.0:
        return f
    denom = math.hypot(f, q) + abs(q)
    return f * f / denom if denom > 0.0 else 0.0


def lambdas_closed(p: ModelParams, t: Temperature) -> LambdaSpectrum:
    """Spin-flip roots directly from couplings and temperature."""
    outer, inner = lambda_pairs_closed(p, t)
    return LambdaSpectrum(tuple(sorted(outer + inner, reverse=True)))


def concurrence(spectrum: LambdaSpectrum) -> float:
    """Wootters concurrence max(0, 2 max lambda - sum lambda), in [0, 1]."""
    roots = spectrum.lambdas
    return max(0.0, 2.0 * max(roots) - sum(roots))


def concurrence_xstate_max(s: GibbsXState) -> float:
    """Algebraic X-state concurrence 2 max(0, |z| - sqrt(mu+ mu-), |v| - sqrt(w1 w2))."""
    outer = _block_root(s.mu_plus * s.mu_minus)
    inner = _block_root(s.omega1 * s.omega2)
    return 2.0 * max(0.0, abs(s.z) - outer, abs(s.v) - inner)


def thermal_concurrence(p: ModelParams, t: Temperature) -> float:
    """Concurrence of the Gibbs state via the closed-form roots."""
    return concurrence(lambdas_closed(p, t))
