"""Numba-compiled compute kernels (default backend when numba is present).

Function-for-function mirror of ``_kernels_numpy``; see that module for the
counter-based random stream layout.  Scalar loops here and vectorized numpy
there produce the same streams up to floating-point library differences of a
few ulp; each backend is bit-reproducible against itself.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from ._kernels_numpy import GOLDEN, MIX1, MIX2, TRIAL_TAG, ZERO_NORM, derive_seed, mix64_int

__all__ = [
    "normals",
    "derive_seed",
    "mix64_int",
    "project_trial",
    "rounding_energies",
    "pair_dots",
    "matvec_qmc",
    "matvec_xx",
    "maxcut_bruteforce",
]

_GOLDEN = np.uint64(GOLDEN)
_MIX1 = np.uint64(MIX1)
_MIX2 = np.uint64(MIX2)
_TAG = np.uint64(TRIAL_TAG)
_TWO_NEG53 = 2.0 ** -53
_TWO_PI = 2.0 * math.pi


@njit(cache=True, inline="always")
def _mix64(z):
    z = z ^ (z >> np.uint64(30))
    z = z * _MIX1
    z = z ^ (z >> np.uint64(27))
    z = z * _MIX2
    z = z ^ (z >> np.uint64(31))
    return z


@njit(cache=True, inline="always")
def _normal_at(seed, k):
    base = k & ~np.uint64(1)
    x1 = _mix64(seed + (base + np.uint64(1)) * _GOLDEN)
    x2 = _mix64(seed + (base + np.uint64(2)) * _GOLDEN)
    u1 = (np.float64(x1 >> np.uint64(11)) + 1.0) * _TWO_NEG53
    u2 = np.float64(x2 >> np.uint64(11)) * _TWO_NEG53
    rad = math.sqrt(-2.0 * math.log(u1))
    ang = _TWO_PI * u2
    if (k & np.uint64(1)) == np.uint64(0):
        return rad * math.cos(ang)
    return rad * math.sin(ang)


@njit(cache=True, inline="always")
def _derive(master, index):
    return _mix64((master ^ _TAG) + (index + np.uint64(1)) * _GOLDEN)


@njit(cache=True)
def _normals_fill(seed, start, count, out):
    for i in range(count):
        out[i] = _normal_at(seed, np.uint64(start + i))


def normals(seed: int, start: int, count: int) -> np.ndarray:
    """Standard normals at stream indices [start, start + count) of `seed`."""
    out = np.empty(max(count, 0), dtype=np.float64)
    if count > 0:
        _normals_fill(np.uint64(seed & 0xFFFFFFFFFFFFFFFF), start, count, out)
    return out


@njit(cache=True)
def _project_fill(vectors, r, seed, out):
    nv, d = vectors.shape
    z = np.empty((r, d))
    s = seed
    resamples = 0
    while True:
        for j in range(r):
            for l in range(d):
                z[j, l] = _normal_at(s, np.uint64(j * d + l))
        ok = True
        for i in range(nv):
            nrm2 = 0.0
            for j in range(r):
                acc = 0.0
                for l in range(d):
                    acc += z[j, l] * vectors[i, l]
                out[i, j] = acc
                nrm2 += acc * acc
            nrm = math.sqrt(nrm2)
            if nrm <= ZERO_NORM:
                ok = False
                break
            inv = 1.0 / nrm
            for j in range(r):
                out[i, j] *= inv
        if ok:
            return resamples
        resamples += 1
        s = s + np.uint64(1)


def project_trial(vectors: np.ndarray, r: int, seed: int) -> tuple[np.ndarray, int]:
    """One Gaussian projection of unit rows onto r dimensions; see numpy twin."""
    vectors = np.ascontiguousarray(vectors, dtype=np.float64)
    out = np.empty((vectors.shape[0], r), dtype=np.float64)
    resamples = _project_fill(vectors, r, np.uint64(seed & 0xFFFFFFFFFFFFFFFF), out)
    return out, resamples


@njit(cache=True)
def _rounding_energies_impl(vectors, eu, ev, r, model_code, master, trials, energies):
    nv = vectors.shape[0]
    m = eu.size
    resamples = 0
    y = np.empty((nv, r))
    for t in range(trials):
        seed = _derive(master, np.uint64(t))
        resamples += _project_fill(vectors, r, seed, y)
        if model_code == 1:
            acc = 0.0
            for e in range(m):
                zu = 1.0 if y[eu[e], 0] >= 0.0 else -1.0
                zv = 1.0 if y[ev[e], 0] >= 0.0 else -1.0
                acc += zu * zv
            energies[t] = 0.5 * m - 0.5 * acc
        else:
            acc = 0.0
            for e in range(m):
                dot = 0.0
                for j in range(r):
                    dot += y[eu[e], j] * y[ev[e], j]
                acc += dot
            energies[t] = 0.25 * m - 0.25 * acc
    return resamples


def rounding_energies(
    vectors: np.ndarray,
    eu: np.ndarray,
    ev: np.ndarray,
    r: int,
    model_code: int,
    master_seed: int,
    trials: int,
) -> tuple[np.ndarray, int]:
    """Per-trial rounding objective values; see numpy twin for the contract."""
    vectors = np.ascontiguousarray(vectors, dtype=np.float64)
    energies = np.empty(trials, dtype=np.float64)
    resamples = _rounding_energies_impl(
        vectors,
        np.ascontiguousarray(eu, dtype=np.int64),
        np.ascontiguousarray(ev, dtype=np.int64),
        r,
        model_code,
        np.uint64(master_seed & 0xFFFFFFFFFFFFFFFF),
        trials,
        energies,
    )
    return energies, resamples


@njit(cache=True)
def _pair_dots_impl(vectors, r, master, samples, out):
    y = np.empty((2, r))
    for t in range(samples):
        seed = _derive(master, np.uint64(t))
        _project_fill(vectors, r, seed, y)
        acc = 0.0
        for j in range(r):
            acc += y[0, j] * y[1, j]
        out[t] = acc


def pair_dots(
    xu: np.ndarray, xv: np.ndarray, r: int, master_seed: int, samples: int
) -> np.ndarray:
    """Inner products of the projected images of one vector pair, per sample."""
    vectors = np.ascontiguousarray(np.stack([xu, xv]), dtype=np.float64)
    out = np.empty(samples, dtype=np.float64)
    _pair_dots_impl(vectors, r, np.uint64(master_seed & 0xFFFFFFFFFFFFFFFF), samples, out)
    return out


@njit(cache=True)
def _matvec_qmc_impl(eu, ev, v, out):
    nstates = v.size
    for e in range(eu.size):
        u = eu[e]
        w = ev[e]
        mask = (np.int64(1) << u) | (np.int64(1) << w)
        for i in range(nstates):
            if ((i >> u) ^ (i >> w)) & 1:
                out[i] += 0.5 * (v[i] - v[i ^ mask])


def matvec_qmc(eu: np.ndarray, ev: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(v)
    _matvec_qmc_impl(
        np.ascontiguousarray(eu, dtype=np.int64),
        np.ascontiguousarray(ev, dtype=np.int64),
        v,
        out,
    )
    return out


@njit(cache=True)
def _matvec_xx_impl(eu, ev, v, out):
    nstates = v.size
    for e in range(eu.size):
        u = eu[e]
        w = ev[e]
        mask = (np.int64(1) << u) | (np.int64(1) << w)
        for i in range(nstates):
            out[i] += 0.25 * v[i]
            if ((i >> u) ^ (i >> w)) & 1:
                out[i] -= 0.5 * v[i ^ mask]


def matvec_xx(eu: np.ndarray, ev: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(v)
    _matvec_xx_impl(
        np.ascontiguousarray(eu, dtype=np.int64),
        np.ascontiguousarray(ev, dtype=np.int64),
        v,
        out,
    )
    return out


@njit(cache=True)
def _maxcut_impl(n, eu, ev):
    total = np.int64(1) << (n - 1)
    m = eu.size
    best = 0
    for p in range(total):
        acc = 0
        for e in range(m):
            acc += ((p >> eu[e]) ^ (p >> ev[e])) & 1
        if acc > best:
            best = acc
    return best


def maxcut_bruteforce(n: int, eu: np.ndarray, ev: np.ndarray) -> int:
    """Exact Max Cut by enumerating 2^(n-1) sign patterns (last vertex fixed)."""
    if eu.size == 0:
        return 0
    return int(
        _maxcut_impl(
            n,
            np.ascontiguousarray(eu, dtype=np.int64),
            np.ascontiguousarray(ev, dtype=np.int64),
        )
    )
