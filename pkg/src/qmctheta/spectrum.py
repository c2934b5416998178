"""Exact spectral quantities on small graphs: largest eigenvalues of the
two-body Hamiltonians, dense oracles built independently from Pauli
matrices, and brute-force Max Cut.

Computational basis convention: bit u of the basis index is the Z state of
site u (bit 0 is the +Z eigenstate), with site 0 in the lowest bit.
"""

from __future__ import annotations

import numpy as np

from ._backend import kernels
from .graphs import Graph

MAX_QUBITS = 24
MAX_DENSE_QUBITS = 12
MAX_ORACLE_QUBITS = 8
MAX_CUT_QUBITS = 24

_MODELS = ("qmc", "xx")

_PAULI = {
    "i": np.eye(2, dtype=np.complex128),
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _check_model(model: str) -> str:
    m = model.strip().lower()
    if m not in _MODELS:
        raise ValueError(f"model must be one of {_MODELS}, got {model!r}")
    return m


def apply_hamiltonian(g: Graph, model: str, v: np.ndarray) -> np.ndarray:
    """Matrix-vector product H v without forming H.

    qmc: sum over edges of the two-site singlet projector
    (1 - XX - YY - ZZ)/4.  xx: sum over edges of (1 - XX - YY)/4.
    """
    model = _check_model(model)
    if g.n > MAX_QUBITS:
        raise ValueError(f"graph has {g.n} vertices, cap is {MAX_QUBITS}")
    v = np.ascontiguousarray(v, dtype=np.float64)
    if v.shape != (1 << g.n,):
        raise ValueError(f"state vector must have length 2^{g.n}, got {v.shape}")
    eu, ev = g.edge_arrays()
    if model == "qmc":
        return kernels.matvec_qmc(eu, ev, v)
    return kernels.matvec_xx(eu, ev, v)


def _site_operator(n: int, u: int, w: int, pauli: str) -> np.ndarray:
    op = np.ones((1, 1), dtype=np.complex128)
    for site in range(n - 1, -1, -1):
        local = _PAULI[pauli] if site in (u, w) else _PAULI["i"]
        op = np.kron(op, local)
    return op


def dense_hamiltonian(g: Graph, model: str) -> np.ndarray:
    """Full H as a real symmetric matrix, built the textbook way from
    Pauli tensor products (independent of apply_hamiltonian)."""
    model = _check_model(model)
    if g.n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense construction capped at {MAX_DENSE_QUBITS} qubits")
    dim = 1 << g.n
    h = np.zeros((dim, dim), dtype=np.complex128)
    eye = np.eye(dim, dtype=np.complex128)
    paulis = ("x", "y", "z") if model == "qmc" else ("x", "y")
    for u, v in g.edges:
        term = eye.copy()
        for p in paulis:
            term = term - _site_operator(g.n, u, v, p)
        h += 0.25 * term
    assert np.max(np.abs(h.imag)) < 1e-12
    hr = h.real
    return 0.5 * (hr + hr.T)


def _lanczos_pass(matvec, dim: int, q0: np.ndarray, k: int, basis: np.ndarray | None,
                  accumulate: np.ndarray | None = None):
    """Lanczos iteration from unit vector q0.

    With `basis` given, vectors are stored and re-orthogonalized twice per
    step.  With `accumulate` given (Ritz coefficients), the same vector
    sequence is regenerated and their combination returned instead; the
    arithmetic is identical to the bare pass, so the regenerated vectors
    match bit for bit.
    """
    alphas: list[float] = []
    betas: list[float] = []
    q = q0
    q_prev = None
    beta_prev = 0.0
    y = np.zeros(dim) if accumulate is not None else None
    for j in range(k):
        if basis is not None:
            basis[j] = q
        if accumulate is not None:
            y += accumulate[j] * q
        w = matvec(q)
        a = float(q @ w)
        alphas.append(a)
        w = w - a * q
        if q_prev is not None:
            w = w - beta_prev * q_prev
        if basis is not None and j > 0:
            for _ in range(2):
                w = w - basis[: j + 1].T @ (basis[: j + 1] @ w)
        b = float(np.linalg.norm(w))
        if b <= 1e-13:
            break
        betas.append(b)
        q_prev = q
        q = w / b
        beta_prev = b
    return np.asarray(alphas), np.asarray(betas[: len(alphas) - 1]), y


def _tridiag_top(alphas: np.ndarray, betas: np.ndarray) -> tuple[float, np.ndarray]:
    k = alphas.size
    t = np.diag(alphas)
    for i in range(k - 1):
        t[i, i + 1] = t[i + 1, i] = betas[i]
    w, s = np.linalg.eigh(t)
    return float(w[-1]), s[:, -1]


_STORED_BASIS_DIM = 1 << 17


def _lanczos_extreme(matvec, dim: int, tol: float, seed: int) -> float:
    """Largest eigenvalue by restarted Lanczos, verified by residual norm.

    The returned value always satisfies ||H y - theta y|| <= tol * max(1, theta)
    for the final Ritz vector y, which guards against orthogonality loss in
    the storage-free branch used beyond 2^17 dimensions.
    """
    q = kernels.normals(seed, 0, dim)
    q = q / np.linalg.norm(q)
    use_basis = dim <= _STORED_BASIS_DIM
    k = min(dim, 80 if use_basis else 60)
    for _ in range(80):
        basis = np.empty((k, dim)) if use_basis else None
        alphas, betas, _ = _lanczos_pass(matvec, dim, q, k, basis)
        theta, s = _tridiag_top(alphas, betas)
        if use_basis:
            y = basis[: alphas.size].T @ s
        else:
            _, _, y = _lanczos_pass(matvec, dim, q, alphas.size, None, accumulate=s)
        ny = float(np.linalg.norm(y))
        if ny <= 1e-13:
            raise RuntimeError("lanczos produced a vanishing Ritz vector")
        y = y / ny
        resid = float(np.linalg.norm(matvec(y) - theta * y))
        if resid <= tol * max(1.0, abs(theta)):
            return theta
        q = y
    raise RuntimeError(
        f"lanczos did not converge: residual {resid:.3e} above {tol:.1e}"
    )


def max_eigenvalue(
    g: Graph, model: str, tol: float = 1e-8, seed: int = 0, method: str = "auto"
) -> float:
    """Largest eigenvalue of the model Hamiltonian.

    method 'dense' diagonalizes the Pauli-built matrix (small n only),
    'lanczos' iterates with apply_hamiltonian, 'auto' picks dense for
    n <= 8 and lanczos above.
    """
    model = _check_model(model)
    if method not in ("auto", "dense", "lanczos"):
        raise ValueError(f"unknown method {method!r}")
    if g.n > MAX_QUBITS:
        raise ValueError(f"graph has {g.n} vertices, cap is {MAX_QUBITS}")
    if g.m == 0:
        return 0.0
    if method == "auto":
        method = "dense" if g.n <= 8 else "lanczos"
    if method == "dense":
        h = dense_hamiltonian(g, model)
        return float(np.linalg.eigvalsh(h)[-1])
    eu, ev = g.edge_arrays()
    if model == "qmc":
        matvec = lambda v: kernels.matvec_qmc(eu, ev, v)
    else:
        matvec = lambda v: kernels.matvec_xx(eu, ev, v)
    return _lanczos_extreme(matvec, 1 << g.n, tol, seed)


def max_cut_bruteforce(g: Graph) -> int:
    """Exact Max Cut value by enumerating all bipartitions."""
    if g.n > MAX_CUT_QUBITS:
        raise ValueError(f"brute force capped at {MAX_CUT_QUBITS} vertices")
    eu, ev = g.edge_arrays()
    return kernels.maxcut_bruteforce(g.n, eu, ev)


def dense_product_energy_oracle(g: Graph, bloch: np.ndarray, model: str) -> float:
    """Energy of the product state with the given Bloch rows, computed the
    slow way: build the full state vector from single-qubit amplitudes and
    take the quadratic form with the dense Hamiltonian."""
    model = _check_model(model)
    if g.n > MAX_ORACLE_QUBITS:
        raise ValueError(f"dense oracle capped at {MAX_ORACLE_QUBITS} qubits")
    bloch = np.asarray(bloch, dtype=np.float64)
    if bloch.shape != (g.n, 3):
        raise ValueError(f"need one Bloch row per vertex, got shape {bloch.shape}")
    psi = np.ones(1, dtype=np.complex128)
    for site in range(g.n - 1, -1, -1):
        x, y, z = bloch[site]
        theta = np.arccos(np.clip(z, -1.0, 1.0))
        phi = np.arctan2(y, x)
        local = np.array(
            [np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)],
            dtype=np.complex128,
        )
        psi = np.kron(psi, local)
    h = dense_hamiltonian(g, model)
    return float(np.real(np.conj(psi) @ (h @ psi)))
