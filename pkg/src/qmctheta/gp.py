"""Moment-matrix relaxation of the full Hamiltonian and its rounding.

The variable is the 3n x 3n second-moment matrix M of single-site Pauli
observables, row index 3 i + k for site i and axis k.  Valid states give
unit diagonal, zero same-site off-axis entries, and M PSD; the relaxation
maximizes m/4 - (1/4) sum over edges of the axis-matched entries.  A PSD
factorization of M stacks into one unit vector per site (norm sqrt(3)
before normalization), which randomized projection rounds into product
states whose energies are compared against the relaxation or the exact
optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .numerics import SdpProblem, psd_factor, sdp_solve, symmetrize
from .rounding import ProductState, RoundingEstimate, estimate_expected_energy
from .spectrum import max_eigenvalue

MAX_GP_VERTICES = 40
MAX_EXACT_VERTICES = 20


@dataclass(frozen=True)
class MomentMatrix:
    """Second moments of the 3 n single-site Pauli observables."""

    n: int
    mat: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.mat, dtype=np.float64)
        if mat.shape != (3 * self.n, 3 * self.n):
            raise ValueError(f"moment matrix must be ({3*self.n}, {3*self.n})")
        object.__setattr__(self, "mat", symmetrize(mat))

    def validate(self, tol: float = 1e-6) -> None:
        """Check unit diagonal, same-site off-axis zeros, and PSD, within tol."""
        d = np.diag(self.mat)
        if np.max(np.abs(d - 1.0)) > tol:
            raise ValueError(f"diagonal deviates by {np.max(np.abs(d - 1.0)):.3e}")
        for i in range(self.n):
            blk = self.mat[3 * i : 3 * i + 3, 3 * i : 3 * i + 3]
            off = blk - np.diag(np.diag(blk))
            if np.max(np.abs(off)) > tol:
                raise ValueError(
                    f"same-site block {i} has off-axis entry {np.max(np.abs(off)):.3e}"
                )
        wmin = float(np.linalg.eigvalsh(self.mat)[0])
        if wmin < -tol:
            raise ValueError(f"moment matrix not PSD: min eigenvalue {wmin:.3e}")


@dataclass(frozen=True)
class GpReport:
    """Relaxation value, rounding summary, and the ratio between them.

    reference_kind records what the ratio denominator is: 'exact' when the
    true optimum was computable, else 'relaxation'.
    """

    relaxation_value: float
    estimate: RoundingEstimate
    ratio_estimate: float
    ratio_stderr: float
    reference_value: float
    reference_kind: str


def gp_sdp_solve(g: Graph, tol: float = 1e-7) -> tuple[MomentMatrix, float]:
    """Solve the moment relaxation; returns the matrix and its objective
    value m/4 - (1/4) sum_e sum_k M[3u+k, 3v+k], an upper bound on the
    largest eigenvalue of the full Hamiltonian."""
    if g.n > MAX_GP_VERTICES:
        raise ValueError(f"moment relaxation capped at {MAX_GP_VERTICES} vertices")
    n = g.n
    dim = 3 * n
    c = np.zeros((dim, dim))
    for u, v in g.edges:
        for k in range(3):
            c[3 * u + k, 3 * v + k] -= 0.125
            c[3 * v + k, 3 * u + k] -= 0.125
    mats: list[np.ndarray] = []
    vals: list[float] = []
    for i in range(dim):
        a = np.zeros((dim, dim))
        a[i, i] = 1.0
        mats.append(a)
        vals.append(1.0)
    for i in range(n):
        for k in range(3):
            for l in range(k + 1, 3):
                a = np.zeros((dim, dim))
                a[3 * i + k, 3 * i + l] = 0.5
                a[3 * i + l, 3 * i + k] = 0.5
                mats.append(a)
                vals.append(0.0)
    res = sdp_solve(SdpProblem(dim, c, tuple(mats), tuple(vals)), tol=tol)
    value = g.m / 4.0 + res.value
    return MomentMatrix(n, res.matrix), value


def stack_and_normalize(mm: MomentMatrix, tol: float = 1e-6) -> np.ndarray:
    """PSD-factor the moment matrix and stack each site's three factor rows
    into one unit vector (one row per site, length 9 n).

    Rows have norm sqrt(3) up to the diagonal deviation of mm; a larger
    deviation than tol raises.
    """
    rows = psd_factor(mm.mat, tol=max(1e-9, tol))
    n = mm.n
    width = rows.shape[1]
    stacked = np.zeros((n, 3 * width))
    for i in range(n):
        for k in range(3):
            stacked[i, k * width : (k + 1) * width] = rows[3 * i + k]
    norms = np.sqrt(np.sum(stacked * stacked, axis=1))
    if np.max(np.abs(norms - np.sqrt(3.0))) > np.sqrt(3.0) * tol + tol:
        raise ValueError(
            f"stacked rows deviate from norm sqrt(3) by "
            f"{np.max(np.abs(norms - np.sqrt(3.0))):.3e}"
        )
    return stacked / norms[:, None]


def moment_matrix_of_product_state(state: ProductState) -> MomentMatrix:
    """Moments of a product state: same-site identity blocks, cross-site
    outer products of the Bloch rows.  Always PSD (outer product of the
    concatenated Bloch vector plus same-site Schur complements)."""
    n = state.n
    b = state.bloch
    v = b.reshape(-1)
    mat = np.outer(v, v)
    for i in range(n):
        blk = np.eye(3) - np.outer(b[i], b[i])
        mat[3 * i : 3 * i + 3, 3 * i : 3 * i + 3] += blk
    return MomentMatrix(n, mat)


def gp_pipeline(
    g: Graph,
    trials: int = 5000,
    master_seed: int = 0,
    tol: float = 1e-7,
    max_exact_n: int = MAX_EXACT_VERTICES,
) -> GpReport:
    """Relax, stack, round, and compare.

    The ratio denominator is the exact largest eigenvalue when n is at most
    max_exact_n, otherwise the relaxation value (recorded in
    reference_kind); its stderr is the rounding stderr over the
    denominator.
    """
    if g.m == 0:
        raise ValueError("graph has no edges: relaxation and ratio are vacuous")
    mm, relaxation_value = gp_sdp_solve(g, tol=tol)
    stacked = stack_and_normalize(mm, tol=max(1e-6, 10.0 * tol))
    est = estimate_expected_energy(g, stacked, "qmc", trials, master_seed)
    if g.n <= max_exact_n:
        reference = max_eigenvalue(g, "qmc")
        kind = "exact"
    else:
        reference = relaxation_value
        kind = "relaxation"
    ratio = est.mean / reference
    ratio_stderr = est.stderr / reference
    return GpReport(relaxation_value, est, ratio, ratio_stderr, reference, kind)
