"""Dense symmetric linear algebra and a small ADMM semidefinite solver.

Eigendecompositions delegate to numpy's LAPACK bindings; the solver on top
is written here because the semidefinite programs in this package are tiny
(dimension tens, not thousands) and need deterministic behavior and explicit
residual reporting rather than raw speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels

MAX_SDP_DIM = 200


class PsdError(ValueError):
    """Raised when a matrix fails a positive-semidefiniteness requirement."""


class SdpConvergenceError(RuntimeError):
    """Raised when ADMM stalls; carries the last residuals for diagnosis."""

    def __init__(self, message: str, residuals: "SdpResiduals"):
        super().__init__(message)
        self.residuals = residuals


def symmetrize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


def eigensystem_symmetric(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    w, v = np.linalg.eigh(symmetrize(a))
    return w, v


def psd_factor(a: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Rows g_i with <g_i, g_j> = a_ij for a PSD matrix a.

    Eigenvalues in [-tol, 0) are clipped to zero; anything below -tol
    raises PsdError reporting the offending eigenvalue.
    """
    w, v = eigensystem_symmetric(a)
    wmin = float(w[0])
    if wmin < -tol:
        raise PsdError(f"matrix is not PSD: min eigenvalue {wmin:.3e} < -{tol:.1e}")
    wc = np.clip(w, 0.0, None)
    return v * np.sqrt(wc)[None, :]


def gaussian_matrix(rows: int, cols: int, seed: int) -> np.ndarray:
    """(rows, cols) of iid standard normals from the package random stream."""
    if rows < 0 or cols < 0:
        raise ValueError("matrix dimensions must be nonnegative")
    return kernels.normals(seed, 0, rows * cols).reshape(rows, cols)


@dataclass(frozen=True)
class SdpProblem:
    """maximize <c, x> over symmetric PSD x with <a_i, x> = b_i for all i."""

    dim: int
    c: np.ndarray
    constraint_mats: tuple[np.ndarray, ...]
    constraint_vals: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.dim < 1 or self.dim > MAX_SDP_DIM:
            raise ValueError(f"sdp dimension must be in 1..{MAX_SDP_DIM}, got {self.dim}")
        if self.c.shape != (self.dim, self.dim):
            raise ValueError("objective matrix has wrong shape")
        if len(self.constraint_mats) != len(self.constraint_vals):
            raise ValueError("constraint matrices and values differ in count")
        for a in self.constraint_mats:
            if a.shape != (self.dim, self.dim):
                raise ValueError("constraint matrix has wrong shape")


@dataclass(frozen=True)
class SdpResiduals:
    primal: float
    dual: float
    affine: float
    iterations: int


@dataclass(frozen=True)
class SdpResult:
    matrix: np.ndarray
    value: float
    residuals: SdpResiduals


def _psd_project(s: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(symmetrize(s))
    if w[0] >= 0.0:
        return symmetrize(s)
    wc = np.clip(w, 0.0, None)
    return symmetrize((v * wc[None, :]) @ v.T)


def sdp_solve(
    problem: SdpProblem, tol: float = 1e-7, max_iter: int = 200_000
) -> SdpResult:
    """Solve the SDP by ADMM over the affine and PSD constraint sets.

    Alternates projection onto the affine subspace (x step, via the
    precomputed Gram pseudo-solve of the constraint system) and onto the
    PSD cone (z step), with over-relaxation 1.6 and residual-balancing
    updates of the penalty.  Converged when the max-norm primal gap,
    scaled dual change, and affine violation of the PSD iterate all drop
    below tol.  The returned matrix is the PSD-side iterate, so its only
    inexactness is affine, which is what the residual reports.
    """
    d = problem.dim
    c = symmetrize(np.asarray(problem.c, dtype=np.float64))
    k = len(problem.constraint_mats)
    amat = np.zeros((k, d * d))
    for i, a in enumerate(problem.constraint_mats):
        amat[i] = symmetrize(np.asarray(a, dtype=np.float64)).reshape(-1)
    b = np.asarray(problem.constraint_vals, dtype=np.float64)

    if k > 0:
        gram = amat @ amat.T
        gw, gv = np.linalg.eigh(symmetrize(gram))
        cut = max(float(gw[-1]), 1.0) * 1e-12
        keep = gw > cut
        gv_keep = gv[:, keep]
        gw_keep = gw[keep]

        def affine_project(y: np.ndarray) -> np.ndarray:
            r = amat @ y.reshape(-1) - b
            lam = gv_keep @ ((gv_keep.T @ r) / gw_keep)
            return y - (amat.T @ lam).reshape(d, d)

        def affine_violation(y: np.ndarray) -> float:
            return float(np.max(np.abs(amat @ y.reshape(-1) - b)))

    else:

        def affine_project(y: np.ndarray) -> np.ndarray:
            return y

        def affine_violation(y: np.ndarray) -> float:
            return 0.0

    rho = 1.0
    over = 1.6
    x = np.zeros((d, d))
    z = np.zeros((d, d))
    u = np.zeros((d, d))
    pri = dual = aff = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        x = affine_project(z - u + c / rho)
        xh = over * x + (1.0 - over) * z
        z_new = _psd_project(xh + u)
        u = u + xh - z_new
        pri = float(np.max(np.abs(x - z_new)))
        dual = rho * float(np.max(np.abs(z_new - z)))
        z = z_new
        if max(pri, dual) <= tol:
            aff = affine_violation(z)
            if aff <= tol:
                value = float(np.sum(c * z))
                return SdpResult(z, value, SdpResiduals(pri, dual, aff, it))
        # residual balancing keeps the two projection pressures comparable
        if it % 100 == 0:
            if pri > 10.0 * dual and rho < 1e6:
                rho *= 2.0
                u *= 0.5
            elif dual > 10.0 * pri and rho > 1e-6:
                rho *= 0.5
                u *= 2.0
    aff = affine_violation(z)
    res = SdpResiduals(pri, dual, aff, it)
    raise SdpConvergenceError(
        f"ADMM did not reach tol={tol:.1e} in {max_iter} iterations "
        f"(primal {pri:.3e}, dual {dual:.3e}, affine {aff:.3e}); "
        "the constraint system may be infeasible",
        res,
    )
