"""Vector relaxations of graph coloring: the strict and relaxed programs
that place one unit vector per vertex and control edge inner products.

lovasz_theta_complement finds the least kappa >= 2 for which every edge
(u, v) can have <x_u, x_v> exactly -1/(kappa - 1); vector_chromatic relaxes
equality to <=.  Both reduce to a small SDP over the Gram matrix in which
the common edge value is the objective.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .numerics import SdpProblem, psd_factor, sdp_solve, symmetrize


class EdgelessGraphError(ValueError):
    """Raised for graphs with no edges, where the edge programs are vacuous."""


@dataclass(frozen=True)
class ThetaCertificate:
    """Unit-vector witness for an edge inner product level.

    kappa and edge_inner satisfy edge_inner = -1 / (kappa - 1).  vectors has
    one unit row per vertex realizing gram; all stated relations hold up to
    residual, which folds together diagonal deviation, edge deviation,
    negative spectrum, and the factorization gap.
    """

    kappa: float
    edge_inner: float
    gram: np.ndarray
    vectors: np.ndarray
    residual: float


def _require_edges(g: Graph) -> None:
    if g.m == 0:
        raise EdgelessGraphError(
            "graph has no edges: no constraint fixes the edge inner product"
        )


def _edge_value_problem(g: Graph, with_slack: bool) -> SdpProblem:
    """SDP whose optimum is minus the least achievable common edge value.

    Variables are the Gram matrix of the vertex vectors, extended by one
    slack diagonal entry per edge when with_slack is set, making the common
    value an upper bound (entry + slack) instead of an equality.  The PSD
    cone only ever couples the slack block to the Gram block through zeros
    of the optimal solution, so the extension does not change the optimum.
    """
    n, m = g.n, g.m
    dim = n + m if with_slack else n
    c = np.zeros((dim, dim))
    for e, (u, v) in enumerate(g.edges):
        c[u, v] -= 0.5 / m
        c[v, u] -= 0.5 / m
        if with_slack:
            c[n + e, n + e] -= 1.0 / m
    mats: list[np.ndarray] = []
    vals: list[float] = []
    for i in range(n):
        a = np.zeros((dim, dim))
        a[i, i] = 1.0
        mats.append(a)
        vals.append(1.0)
    u0, v0 = g.edges[0]
    for e, (u, v) in enumerate(g.edges[1:], start=1):
        a = np.zeros((dim, dim))
        a[u, v] += 0.5
        a[v, u] += 0.5
        a[u0, v0] -= 0.5
        a[v0, u0] -= 0.5
        if with_slack:
            a[n + e, n + e] += 1.0
            a[n, n] -= 1.0
        mats.append(a)
        vals.append(0.0)
    return SdpProblem(dim, c, tuple(mats), tuple(vals))


def _certificate(g: Graph, z: np.ndarray, t: float, tol: float, one_sided: bool) -> ThetaCertificate:
    n = g.n
    gram = symmetrize(np.asarray(z[:n, :n]))
    diag_dev = float(np.max(np.abs(np.diag(gram) - 1.0)))
    edge_devs = []
    for u, v in g.edges:
        dev = gram[u, v] - t
        edge_devs.append(max(dev, 0.0) if one_sided else abs(dev))
    edge_dev = max(edge_devs)
    wmin = float(np.linalg.eigvalsh(gram)[0])
    psd_dev = max(0.0, -wmin)
    vectors = psd_factor(gram, tol=max(1e-9, 10.0 * tol))
    norms = np.sqrt(np.sum(vectors * vectors, axis=1))
    vectors = vectors / norms[:, None]
    recon_dev = float(np.max(np.abs(vectors @ vectors.T - gram)))
    residual = max(diag_dev, edge_dev, psd_dev, recon_dev)
    kappa = 1.0 - 1.0 / t
    if kappa < 2.0 - 1e-4:
        raise RuntimeError(
            f"solved edge value t={t} gives kappa={kappa} below the "
            "Cauchy-Schwarz floor of 2; solver output is inconsistent"
        )
    return ThetaCertificate(kappa, t, gram, vectors, residual)


def lovasz_theta_complement(g: Graph, tol: float = 1e-7) -> ThetaCertificate:
    """Least kappa with unit vectors at pairwise inner product exactly
    -1/(kappa - 1) across every edge of g.

    Equals the Lovasz theta function of the complement graph.  Bipartite
    graphs with an edge give kappa = 2 (antipodal pairs); complete graphs
    give kappa = n (regular simplex).
    """
    _require_edges(g)
    res = sdp_solve(_edge_value_problem(g, with_slack=False), tol=tol)
    t = -res.value
    return _certificate(g, res.matrix, t, tol, one_sided=False)


def vector_chromatic(g: Graph, tol: float = 1e-7) -> ThetaCertificate:
    """Least kappa with unit vectors at pairwise inner product at most
    -1/(kappa - 1) across every edge of g (one-sided variant)."""
    _require_edges(g)
    res = sdp_solve(_edge_value_problem(g, with_slack=True), tol=tol)
    t = -res.value
    return _certificate(g, res.matrix, t, tol, one_sided=True)


def _lovasz_theta_trace(g: Graph, tol: float = 1e-7) -> float:
    """Lovasz theta of g itself by the trace-normalized program:
    maximize <J, X> with tr X = 1, X_uv = 0 on edges, X PSD.

    Internal cross-check routine (vertex-transitive graphs satisfy
    theta(g) * theta(complement) = n, giving an independent route to the
    edge-value programs above)."""
    n = g.n
    c = np.ones((n, n))
    mats = [np.eye(n)]
    vals = [1.0]
    for u, v in g.edges:
        a = np.zeros((n, n))
        a[u, v] = a[v, u] = 0.5
        mats.append(a)
        vals.append(0.0)
    res = sdp_solve(SdpProblem(n, c, tuple(mats), tuple(vals)), tol=tol)
    return res.value
