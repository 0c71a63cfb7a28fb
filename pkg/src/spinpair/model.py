"""Two-qubit anisotropic XYZ exchange pair in a nonuniform magnetic field.

The model couples two spin-1/2 sites through an exchange J = (Jx + Jy)/2
with in-plane anisotropy gamma = (Jx - Jy)/(Jx + Jy), a z-axis exchange Jz,
and local fields B + b, B - b along z (b controls the field nonuniformity).
With |0> the sigma_z eigenvector of eigenvalue +1 and the product basis
ordered |00>, |01>, |10>, |11>, the Hamiltonian matrix is

    [[ Jz/2 + B,  0,          0,         J*gamma  ],
     [ 0,        -Jz/2 + b,   J,         0        ],
     [ 0,         J,         -Jz/2 - b,  0        ],
     [ J*gamma,   0,          0,         Jz/2 - B ]]

All energies are in natural units (k_B = hbar = 1).  The matrix splits into
an outer block on |00>, |11> governed by the scale eta = sqrt(B^2 + J^2 g^2)
and an inner block on |01>, |10> governed by xi = sqrt(b^2 + J^2); both
diagonalize in closed form.  ``eigensystem_numeric`` provides an independent
cyclic plane-rotation diagonalization used to cross-check the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class InvalidParameterError(ValueError):
    """An input parameter is non-finite or outside its allowed range."""


class NumericFailureError(RuntimeError):
    """An iterative numeric routine failed to converge."""


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidParameterError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """Couplings and fields of the pair (all finite reals, energy units).

    J is the symmetric in-plane exchange, gamma the dimensionless in-plane
    anisotropy, Jz the z-axis exchange, B the uniform field and b the field
    inhomogeneity.  No sign restriction is imposed here; operations that
    assume J > 0 or 0 <= gamma <= 1 state that as a precondition.
    """

    J: float = 1.0
    gamma: float = 0.0
    Jz: float = 0.0
    B: float = 0.0
    b: float = 0.0

    def __post_init__(self) -> None:
        for name in ("J", "gamma", "Jz", "B", "b"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite(J=self.J, gamma=self.gamma, Jz=self.Jz, B=self.B, b=self.b)


@dataclass(frozen=True)
class EnergyScales:
    """Block energy scales eta = sqrt(B^2 + J^2 gamma^2), xi = sqrt(b^2 + J^2)."""

    eta: float
    xi: float


def energy_scales(p: ModelParams) -> EnergyScales:
    """Return the outer/inner block scales (eta, xi) for the given couplings."""
    return EnergyScales(eta=math.hypot(p.B, p.J * p.gamma), xi=math.hypot(p.b, p.J))


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """Build the 4x4 real symmetric Hamiltonian in the product basis.

    The diagonal is (Jz/2 + B, -Jz/2 + b, -Jz/2 - b, Jz/2 - B), the
    anti-diagonal corners are J*gamma and the central off-diagonal is J;
    the trace vanishes identically.
    """
    half_jz = 0.5 * p.Jz
    return np.array(
        [
            [half_jz + p.B, 0.0, 0.0, p.J * p.gamma],
            [0.0, -half_jz + p.b, p.J, 0.0],
            [0.0, p.J, -half_jz - p.b, 0.0],
            [p.J * p.gamma, 0.0, 0.0, half_jz - p.B],
        ]
    )


@dataclass(frozen=True)
class EigenPair:
    energy: float
    vector: np.ndarray  # real 4-vector in the product basis


@dataclass(frozen=True)
class EigenSystem:
    """The four labeled eigenpairs of the pair Hamiltonian.

    psi_plus/psi_minus live on the inner block |01>, |10> with energies
    -Jz/2 +- xi; sigma_plus/sigma_minus live on the outer block |00>, |11>
    with energies Jz/2 +- eta.  The "+" label always carries the larger
    energy of its block.
    """

    psi_plus: EigenPair
    psi_minus: EigenPair
    sigma_plus: EigenPair
    sigma_minus: EigenPair

    def pairs(self) -> tuple[EigenPair, EigenPair, EigenPair, EigenPair]:
        return (self.psi_plus, self.psi_minus, self.sigma_plus, self.sigma_minus)

    def energies(self) -> tuple[float, float, float, float]:
        return tuple(pair.energy for pair in self.pairs())


def _block_pair(
    field: float, scale: float, coupling: float
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Normalized eigenvector components of [[field, coupling], [coupling, -field]].

    Returns ((plus major, plus minor), (minus major, minus minor)) for the
    eigenvalues +scale, -scale, where scale = hypot(field, coupling).  The
    unnormalized pair is (field + scale, coupling) and its quarter-turn
    (-coupling, field + scale) when field >= 0 (mirrored otherwise), which
    avoids both the cancellation in field - scale and any overflow: no
    ratio is ever formed.
    """
    if field >= 0.0:
        major, minor = field + scale, coupling
        if max(abs(major), abs(minor)) == 0.0:
            return (1.0, 0.0), (0.0, 1.0)
        major, minor = _rescale_subnormal(major, minor)
        h = math.hypot(major, minor)
        return (major / h, minor / h), (-minor / h, major / h)
    major, minor = _rescale_subnormal(field - scale, coupling)
    h = math.hypot(major, minor)
    return (-minor / h, major / h), (major / h, minor / h)


def _rescale_subnormal(major: float, minor: float) -> tuple[float, float]:
    # Subnormal components carry too few significand bits to normalize
    # accurately; scaling by a power of two is exact and restores them to
    # the normal range.
    if max(abs(major), abs(minor)) < 1e-280:
        factor = 2.0**600
        return major * factor, minor * factor
    return major, minor


def eigensystem_closed(p: ModelParams) -> EigenSystem:
    """Closed-form eigensystem of the pair Hamiltonian.

    Inner-block eigenvectors are proportional to (b +- xi, J) on
    (|01>, |10>), outer-block ones to (B +- eta, J gamma) on (|00>, |11>),
    matching the textbook ratios (b +- xi)/J and (B +- eta)/(J gamma).
    When a block's coupling vanishes the block is already diagonal and the
    computational basis vectors come out, the "+" label going to the
    larger eigenvalue; the fully degenerate blocks (xi = 0 or eta = 0)
    keep that convention.
    """
    scales = energy_scales(p)
    eta, xi = scales.eta, scales.xi

    (plus_01, plus_10), (minus_01, minus_10) = _block_pair(p.b, xi, p.J)
    psi_plus = EigenPair(-0.5 * p.Jz + xi, np.array([0.0, plus_01, plus_10, 0.0]))
    psi_minus = EigenPair(-0.5 * p.Jz - xi, np.array([0.0, minus_01, minus_10, 0.0]))

    (plus_00, plus_11), (minus_00, minus_11) = _block_pair(p.B, eta, p.J * p.gamma)
    sigma_plus = EigenPair(0.5 * p.Jz + eta, np.array([plus_00, 0.0, 0.0, plus_11]))
    sigma_minus = EigenPair(0.5 * p.Jz - eta, np.array([minus_00, 0.0, 0.0, minus_11]))

    return EigenSystem(psi_plus, psi_minus, sigma_plus, sigma_minus)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(
    a: np.ndarray, tol_scale: float = 1e-14, max_sweeps: int = 50
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a real symmetric matrix by cyclic Jacobi plane rotations.

    Sweeps rotate away every off-diagonal pair until the off-diagonal norm
    drops below ``tol_scale`` times the Frobenius norm of the input.
    Returns (eigenvalues, eigenvectors-as-columns), unsorted.  Raises
    NumericFailureError if the sweep budget is exhausted (never expected
    for the 4x4 matrices used here).
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise InvalidParameterError(f"matrix must be square, got shape {a.shape}")
    scale = float(np.linalg.norm(a))
    if not np.allclose(a, a.T, atol=1e-12 * max(scale, 1.0), rtol=0.0):
        raise InvalidParameterError("matrix must be symmetric")
    vecs = np.eye(n)
    if scale == 0.0:
        return np.zeros(n), vecs

    target = tol_scale * scale
    for _ in range(max_sweeps):
        if _off_norm(a) <= target:
            return np.diag(a).copy(), vecs
        for row in range(n - 1):
            for col in range(row + 1, n):
                if a[row, col] == 0.0:
                    continue
                phi = 0.5 * math.atan2(2.0 * a[row, col], a[col, col] - a[row, row])
                c, s = math.cos(phi), math.sin(phi)
                new_row = c * a[row, :] - s * a[col, :]
                new_col = s * a[row, :] + c * a[col, :]
                a[row, :], a[col, :] = new_row, new_col
                new_row = c * a[:, row] - s * a[:, col]
                new_col = s * a[:, row] + c * a[:, col]
                a[:, row], a[:, col] = new_row, new_col
                a[row, col] = 0.0
                a[col, row] = 0.0
                new_row = c * vecs[:, row] - s * vecs[:, col]
                new_col = s * vecs[:, row] + c * vecs[:, col]
                vecs[:, row], vecs[:, col] = new_row, new_col
    if _off_norm(a) <= target:
        return np.diag(a).copy(), vecs
    raise NumericFailureError(
        f"Jacobi sweeps did not converge: off-norm {_off_norm(a):.3e} > {target:.3e}"
    )


def eigensystem_numeric(h: np.ndarray) -> EigenSystem:
    """Numerically diagonalize a pair Hamiltonian and label the eigenpairs.

    Labels are recovered from block support: the two eigenvectors with the
    largest weight on |00>, |11> form the sigma pair, the other two the psi
    pair; within each pair the "+" label carries the larger eigenvalue.
    """
    values, vectors = jacobi_eigh(np.asarray(h, dtype=float))
    outer_weight = vectors[0, :] ** 2 + vectors[3, :] ** 2
    order = np.argsort(outer_weight, kind="stable")
    psi_idx = sorted(order[:2], key=lambda i: values[i])
    sigma_idx = sorted(order[2:], key=lambda i: values[i])
    return EigenSystem(
        psi_plus=EigenPair(float(values[psi_idx[1]]), vectors[:, psi_idx[1]].copy()),
        psi_minus=EigenPair(float(values[psi_idx[0]]), vectors[:, psi_idx[0]].copy()),
        sigma_plus=EigenPair(float(values[sigma_idx[1]]), vectors[:, sigma_idx[1]].copy()),
        sigma_minus=EigenPair(float(values[sigma_idx[0]]), vectors[:, sigma_idx[0]].copy()),
    )
