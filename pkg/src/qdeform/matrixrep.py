"""Floating-point engine on the truncated oscillator (number) basis.

Quantifies how the exact commutator identity of the sinh-deformed pair
survives finite-dimensional truncation.  The number basis keeps x and p
on the same footing (both dense Hermitian matrices), matching the
phase-space symmetry of the deformation; matrix functions go through a
full Hermitian eigendecomposition, which stays stable for spectral radii
of order sqrt(2N) where direct series summation would not.

The truncation defect of [p, x] + i*1 lives entirely on the top basis
state, so residuals are always reported on an interior block of the
lowest M states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .weyl import WeylSeriesElement

HERMITICITY_TOL = 1e-12
# double precision dies around exp(25)^2 in the anticommutator products
OVERFLOW_GUARD = 25.0
PREFACTOR_POLE_TOL = 1e-9
# eigendecomposition round-off floor for interior residuals (see config docs)
NOISE_FLOOR = 1e-12

RESIDUAL_CSV_COLUMNS = ("N", "M", "mu", "nu", "res_fro", "res_spec", "sqrt_cosh_xcheck")


class OperatorMatrix:
    """Dense complex matrix with Hermiticity bookkeeping.

    ``hermitian`` is true when max|M - M*| <= tol * max|entry| (entrywise);
    the measured defect is kept alongside the flag.
    """

    __slots__ = ("mat", "hermitian", "hermiticity_defect")

    def __init__(self, mat, tol: float = HERMITICITY_TOL):
        mat = np.asarray(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("operator matrix must be square")
        self.mat = mat
        defect = float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0
        scale = float(np.max(np.abs(mat))) if mat.size else 0.0
        self.hermitian = defect <= tol * scale
        self.hermiticity_defect = defect

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __repr__(self):
        return f"OperatorMatrix(dim={self.dim}, hermitian={self.hermitian})"


def oscillator_xp(dim: int) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Ladder construction x = (a + a*)/sqrt(2), p = i(a* - a)/sqrt(2).

    [p, x] = -i on all but the top basis state; the defect sits at the
    (dim-1, dim-1) entry only.
    """
    if dim < 2:
        raise ValueError("dimension must be >= 2")
    a = np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)
    ad = a.conj().T
    x = (a + ad) / math.sqrt(2)
    p = 1j * (ad - a) / math.sqrt(2)
    return OperatorMatrix(x), OperatorMatrix(p)


_SPECTRAL_FUNCTIONS = {
    "sinh": np.sinh,
    "cosh": np.cosh,
}


def hermitian_function(
    h: OperatorMatrix, kind: str, sqrt_floor: float = 1e-12
) -> OperatorMatrix:
    """Apply sinh, cosh or the principal square root by spectral calculus.

    ``principal-sqrt`` requires a positive definite input: smallest
    eigenvalue above ``sqrt_floor`` (absolute -- arguments of the form
    1 + (PSD) keep their unit lower bound however large the top of the
    spectrum grows, so a norm-relative floor would wrongly reject them).
    """
    if not h.hermitian:
        raise ValueError("input must be Hermitian")
    w, v = np.linalg.eigh(h.mat)
    if kind in _SPECTRAL_FUNCTIONS:
        fw = _SPECTRAL_FUNCTIONS[kind](w)
    elif kind == "principal-sqrt":
        if float(w[0]) <= sqrt_floor:
            raise ValueError(
                f"principal-sqrt needs a positive definite input "
                f"(smallest eigenvalue {w[0]:.3e})"
            )
        fw = np.sqrt(w)
    else:
        raise ValueError(f"unknown matrix function: {kind!r}")
    out = (v * fw) @ v.conj().T
    out = (out + out.conj().T) / 2.0  # symmetrize round-off
    return OperatorMatrix(out)


def deformed_ops(
    dim: int, mu: float, nu: float
) -> tuple[OperatorMatrix, OperatorMatrix]:
    """P = sinh(mu*p)/mu and X = sinh(nu*x)/nu; parameter 0 means undeformed."""
    if mu < 0 or nu < 0:
        raise ValueError("deformation parameters must be >= 0")
    x, p = oscillator_xp(dim)
    if mu > 0:
        w, v = np.linalg.eigh(p.mat)
        pd = OperatorMatrix((v * (np.sinh(mu * w) / mu)) @ v.conj().T)
    else:
        pd = p
    if nu > 0:
        w, v = np.linalg.eigh(x.mat)
        xd = OperatorMatrix((v * (np.sinh(nu * w) / nu)) @ v.conj().T)
    else:
        xd = x
    return pd, xd


def prefactor(theta: float) -> float:
    """c(theta) = sin(theta) / (theta * (1 + cos theta)); c(0) = 1/2 by continuity.

    Refuses to evaluate near the pole at theta = pi (mod 2*pi), where the
    identity itself degenerates.
    """
    if theta == 0.0:
        return 0.5
    den = 1.0 + math.cos(theta)
    if abs(den) <= PREFACTOR_POLE_TOL:
        raise ValueError(f"prefactor pole: 1 + cos({theta}) ~ 0")
    return math.sin(theta) / (theta * den)


def spectral_norm_estimate(block: np.ndarray, iterations: int = 64) -> float:
    """Largest-singular-value estimate by power iteration on A*A.

    Deterministic: fixed starting vector and iteration count.
    """
    n = block.shape[0]
    if n == 0:
        return 0.0
    gram = block.conj().T @ block
    v = np.ones(n, dtype=complex) / math.sqrt(n)
    for _ in range(iterations):
        w = gram @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
    return float(math.sqrt(np.real(np.vdot(v, gram @ v))))


@dataclass(frozen=True)
class ResidualReport:
    """Interior-projected residual of the commutator identity at finite N."""

    dim: int
    interior_dim: int
    mu: float
    nu: float
    residual_frobenius: float
    residual_spectral: float
    sqrt_cosh_xcheck: float
    cosh_norm: float  # normalization for the cross-check; not serialized

    def csv_row(self) -> tuple:
        return (
            self.dim,
            self.interior_dim,
            self.mu,
            self.nu,
            self.residual_frobenius,
            self.residual_spectral,
            self.sqrt_cosh_xcheck,
        )


def identity_residual(
    dim: int,
    interior_dim: int,
    mu: float,
    nu: float,
    overflow_guard: float = OVERFLOW_GUARD,
) -> ResidualReport:
    """Frobenius and spectral norms of the projected identity residual.

    Computes L = [P, X] and R = -i c(mu*nu) {sqrt(1+mu^2 P^2),
    sqrt(1+nu^2 X^2)} and reports ||(L-R)[:M,:M]||.  Also cross-checks the
    spectral square root against cosh(mu*p): the two are equal functions
    of p at any N, so their distance is pure floating-point noise.
    """
    if interior_dim < 2 or interior_dim >= dim:
        raise ValueError("interior dimension must satisfy 2 <= M < N")
    if mu < 0 or nu < 0:
        raise ValueError("deformation parameters must be >= 0")
    # spectral radius of x, p is below sqrt(2N)
    radius = math.sqrt(2 * dim)
    if mu * radius > overflow_guard or nu * radius > overflow_guard:
        raise ValueError(
            f"overflow guard: parameter * sqrt(2N) exceeds {overflow_guard}"
        )
    c = prefactor(mu * nu)

    pd, xd = deformed_ops(dim, mu, nu)
    eye = np.eye(dim)
    sq_p = hermitian_function(
        OperatorMatrix(eye + mu**2 * (pd.mat @ pd.mat)), "principal-sqrt"
    )
    sq_x = hermitian_function(
        OperatorMatrix(eye + nu**2 * (xd.mat @ xd.mat)), "principal-sqrt"
    )
    lhs = pd.mat @ xd.mat - xd.mat @ pd.mat
    rhs = -1j * c * (sq_p.mat @ sq_x.mat + sq_x.mat @ sq_p.mat)
    block = (lhs - rhs)[:interior_dim, :interior_dim]

    _, p = oscillator_xp(dim)
    w, v = np.linalg.eigh(p.mat)
    cosh_p = (v * np.cosh(mu * w)) @ v.conj().T
    cosh_norm = float(np.linalg.norm(cosh_p))

    return ResidualReport(
        dim=dim,
        interior_dim=interior_dim,
        mu=mu,
        nu=nu,
        residual_frobenius=float(np.linalg.norm(block)),
        residual_spectral=spectral_norm_estimate(block),
        sqrt_cosh_xcheck=float(np.linalg.norm(sq_p.mat - cosh_p)),
        cosh_norm=cosh_norm,
    )


def default_interior(dim: int) -> int:
    return max(4, dim // 4)


# window where the truncation error is still above the round-off floor
# at the reference parameters mu = nu = 0.2, M = 8
DEFAULT_SCAN_DIMS = (10, 12, 14, 16)


@dataclass(frozen=True)
class ConvergenceScan:
    rows: tuple[ResidualReport, ...]
    threshold: float
    noise_floor: float
    passed: bool


def convergence_scan(
    mu: float,
    nu: float,
    interior_dim: int,
    dims: Sequence[int],
    threshold: float,
    noise_floor: float = NOISE_FLOOR,
) -> ConvergenceScan:
    """Residual rows over increasing N with a convergence verdict.

    Passes when the residual at the largest N is below ``threshold`` and
    does not exceed the residual at the smallest N -- except that values
    below ``noise_floor`` count as converged regardless of ordering,
    since projected residuals bottom out at the eigensolver's round-off
    floor long before the scan ends and then fluctuate without meaning.
    """
    dims = [int(n) for n in dims]
    if not dims:
        raise ValueError("empty dimension list")
    if any(b <= a for a, b in zip(dims, dims[1:])):
        raise ValueError("dimensions must be strictly increasing")
    if dims[0] <= interior_dim:
        raise ValueError("all dimensions must exceed the interior dimension")
    rows = tuple(identity_residual(n, interior_dim, mu, nu) for n in dims)
    first = rows[0].residual_frobenius
    last = rows[-1].residual_frobenius
    passed = last <= threshold and last <= max(first, noise_floor)
    return ConvergenceScan(
        rows=rows, threshold=threshold, noise_floor=noise_floor, passed=passed
    )


def evaluate_element(
    element: WeylSeriesElement, mu: float, nu: float, x: np.ndarray, p: np.ndarray
) -> np.ndarray:
    """Numerically evaluate a symbolic element on given x, p matrices.

    Bridges the exact engine and this one: coefficients are evaluated at
    numeric (mu, nu) and each normal-ordered word becomes x^a @ p^b.
    """
    dim = x.shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    max_x = max((m.x_pow for m in element.terms), default=0)
    max_p = max((m.p_pow for m in element.terms), default=0)
    x_pows = _power_table(x, max_x)
    p_pows = _power_table(p, max_p)
    for mono, poly in element.terms.items():
        coeff = 0j
        for (mp, np_), value in poly.terms.items():
            coeff += complex(value) * (mu**mp) * (nu**np_)
        if coeff != 0j:
            out += coeff * (x_pows[mono.x_pow] @ p_pows[mono.p_pow])
    return out


def _power_table(mat: np.ndarray, max_pow: int) -> list[np.ndarray]:
    table = [np.eye(mat.shape[0], dtype=complex)]
    for _ in range(max_pow):
        table.append(table[-1] @ mat)
    return table
