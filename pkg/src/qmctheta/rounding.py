"""Randomized projection rounding: turn the unit vectors of an edge-value
certificate into product states (or cuts) and estimate their energy.

One trial draws a single shared Gaussian matrix, projects every vertex
vector to r dimensions (r = 3 for the full model, 2 for xx, 1 for cuts),
and normalizes.  The closed-form expectation of a projected edge term is
expected_inner_product(r, t); the Monte Carlo side here lets tests check
that identity and the bound it implies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .graphs import Graph
from .specialfn import expected_inner_product, rounding_coefficient
from .theta import EdgelessGraphError

_MODEL_R = {"qmc": 3, "xx": 2, "mc": 1}
_BLOCH_TOL = 1e-8


def _check_model(model: str) -> str:
    m = model.strip().lower()
    if m not in _MODEL_R:
        raise ValueError(f"model must be one of {tuple(_MODEL_R)}, got {model!r}")
    return m


@dataclass(frozen=True)
class ProductState:
    """One unit Bloch vector per site, rows of an (n, 3) array.

    Construction accepts rows within 1e-8 of unit length and stores them
    renormalized, so downstream consumers see unit rows to machine
    precision.
    """

    bloch: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.bloch, dtype=np.float64)
        if b.ndim != 2 or b.shape[1] != 3 or b.shape[0] < 1:
            raise ValueError(f"bloch array must be (n, 3), got {b.shape}")
        norms = np.sqrt(np.sum(b * b, axis=1))
        if np.max(np.abs(norms - 1.0)) > _BLOCH_TOL:
            worst = float(np.max(np.abs(norms - 1.0)))
            raise ValueError(f"bloch rows must be unit length within {_BLOCH_TOL}, "
                             f"worst deviation {worst:.3e}")
        object.__setattr__(self, "bloch", b / norms[:, None])

    @property
    def n(self) -> int:
        return self.bloch.shape[0]


@dataclass(frozen=True)
class RoundingEstimate:
    """Monte Carlo summary of rounding trials.

    mean and stderr describe the trial energies (sample standard deviation
    over sqrt(trials); stderr is 0 by convention for a single trial).
    best_state reproduces the best trial exactly from its per-trial seed.
    resamples counts Gaussian redraws forced by vanishing projections.
    """

    mean: float
    stderr: float
    trials: int
    best_energy: float
    best_state: ProductState
    resamples: int

    @property
    def single_trial(self) -> bool:
        return self.trials == 1


@dataclass(frozen=True)
class LemmaCheck:
    """Empirical vs closed-form expectation of a projected inner product."""

    empirical: float
    closed_form: float
    stderr: float
    z_score: float


def round_vectors(vectors: np.ndarray, r: int, seed: int) -> np.ndarray:
    """Project unit rows through one shared (r, d) Gaussian and normalize.

    Deterministic in (vectors, r, seed); a vanishing projected norm forces
    a redraw from the successor seed.
    """
    vectors = np.ascontiguousarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise ValueError("vectors must be a 2d array of row vectors")
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"target dimension must be a positive integer, got {r!r}")
    out, _ = kernels.project_trial(vectors, r, seed)
    return out


def product_state_from_bloch(rows: np.ndarray) -> ProductState:
    return ProductState(np.asarray(rows, dtype=np.float64))


def _embed_bloch(y: np.ndarray, model: str) -> np.ndarray:
    """Rounded r-dimensional rows to Bloch rows: xx pads the third
    component with zero, mc places the sign on the z axis."""
    n = y.shape[0]
    if model == "qmc":
        return y.copy()
    b = np.zeros((n, 3))
    if model == "xx":
        b[:, 0] = y[:, 0]
        b[:, 1] = y[:, 1]
    else:
        b[:, 2] = np.where(y[:, 0] >= 0.0, 1.0, -1.0)
    return b


def energy_product(g: Graph, state: ProductState, model: str = "qmc") -> float:
    """Energy of a product state in closed form:
    m/4 - (1/4) sum_e <b_u, b_v>, where xx drops the z components."""
    model = _check_model(model)
    if model == "mc":
        raise ValueError("energy_product applies to the quantum models only")
    if state.n != g.n:
        raise ValueError(f"state has {state.n} sites, graph has {g.n}")
    b = state.bloch if model == "qmc" else state.bloch[:, :2]
    acc = 0.0
    for u, v in g.edges:
        acc += float(b[u] @ b[v])
    return g.m / 4.0 - 0.25 * acc


def classical_cut_from_rounding(
    g: Graph, vectors: np.ndarray, seed: int
) -> tuple[np.ndarray, int]:
    """Round to a bipartition by the sign of a 1-dimensional projection.

    Returns the +-1 side assignment and the number of cut edges.
    """
    y = round_vectors(vectors, 1, seed)
    signs = np.where(y[:, 0] >= 0.0, 1, -1).astype(np.int8)
    cut = 0
    for u, v in g.edges:
        if signs[u] != signs[v]:
            cut += 1
    return signs, cut


def theta_lower_bound(g: Graph, kappa: float, model: str = "qmc") -> float:
    """Guaranteed objective value of rounding at edge inner product
    -1/(kappa - 1).

    qmc: (m/4) (1 + c3/(kappa-1)) with c3 = 8/(3 pi);
    xx:  (m/4) (1 + c2/(kappa-1)) with c2 = pi/4;
    mc:  (m/2) (1 + c1/(kappa-1)) with c1 = 2/pi.
    """
    model = _check_model(model)
    if g.m == 0:
        raise EdgelessGraphError("graph has no edges: bound undefined")
    if not np.isfinite(kappa) or kappa <= 1.0:
        raise ValueError(f"kappa must be finite and above 1, got {kappa!r}")
    r = _MODEL_R[model]
    c = rounding_coefficient(r)
    scale = g.m / 4.0 if model in ("qmc", "xx") else g.m / 2.0
    return scale * (1.0 + c / (kappa - 1.0))


def estimate_expected_energy(
    g: Graph,
    vectors: np.ndarray,
    model: str,
    trials: int,
    master_seed: int,
) -> RoundingEstimate:
    """Round `trials` times and summarize the objective values.

    Trial i draws from the stream of derive_seed(master_seed, i), so any
    contiguous range of trials is reproducible independently of batching,
    and the best trial can be replayed.
    """
    model = _check_model(model)
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    vectors = np.ascontiguousarray(vectors, dtype=np.float64)
    if vectors.shape[0] != g.n:
        raise ValueError(f"need one vector per vertex, got {vectors.shape[0]} for n={g.n}")
    norms = np.sqrt(np.sum(vectors * vectors, axis=1))
    if np.max(np.abs(norms - 1.0)) > _BLOCH_TOL:
        raise ValueError("vertex vectors must be unit length")
    eu, ev = g.edge_arrays()
    r = _MODEL_R[model]
    code = 1 if model == "mc" else 0
    energies, resamples = kernels.rounding_energies(
        vectors, eu, ev, r, code, master_seed, trials
    )
    mean = float(np.mean(energies))
    stderr = float(np.std(energies, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    best_idx = int(np.argmax(energies))
    y, _ = kernels.project_trial(vectors, r, kernels.derive_seed(master_seed, best_idx))
    best_state = ProductState(_embed_bloch(y, model))
    return RoundingEstimate(
        mean=mean,
        stderr=stderr,
        trials=trials,
        best_energy=float(energies[best_idx]),
        best_state=best_state,
        resamples=resamples,
    )


def verify_lemma_expectation(
    n: int, t: float, r: int, samples: int, seed: int
) -> LemmaCheck:
    """Monte Carlo check of the projected-overlap expectation.

    Places two unit vectors at inner product t in R^n, rounds them
    `samples` times, and compares the mean projected inner product with
    expected_inner_product(r, t) via a z-score.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"ambient dimension must be an integer >= 2, got {n!r}")
    if not (-1.0 <= t <= 1.0):
        raise ValueError(f"inner product must lie in [-1, 1], got {t!r}")
    if samples < 2:
        raise ValueError("need at least two samples")
    xu = np.zeros(n)
    xu[0] = 1.0
    xv = np.zeros(n)
    xv[0] = t
    xv[1] = np.sqrt(max(0.0, 1.0 - t * t))
    dots = kernels.pair_dots(xu, xv, r, seed, samples)
    empirical = float(np.mean(dots))
    stderr = float(np.std(dots, ddof=1) / np.sqrt(samples))
    closed = expected_inner_product(r, t, tol=1e-9)
    if stderr > 0.0:
        z = abs(empirical - closed) / stderr
    else:
        z = 0.0 if abs(empirical - closed) <= 1e-9 else np.inf
    return LemmaCheck(empirical, closed, stderr, float(z))
