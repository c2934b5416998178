"""Vectorized numpy compute kernels (fallback backend).

Same function surface as ``_kernels_numba``; the active module is chosen in
``qmctheta._backend`` via the QMCTHETA_BACKEND environment variable.

Random numbers are generated counter-style so every value is a pure function
of (seed, stream index): output k is splitmix64(seed + (k + 1) * GOLDEN), and
standard normals come from Box-Muller applied to consecutive even/odd counter
pairs.  This makes streams reproducible and chunk-invariant: asking for
indices [s, s + c) gives the same numbers no matter how the range is split.
"""

from __future__ import annotations

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
TRIAL_TAG = 0xA3EC647659359ACD

_MASK64 = 0xFFFFFFFFFFFFFFFF
_TWO_NEG53 = 2.0 ** -53
_TWO_PI = 2.0 * np.pi

# Norms below this are treated as a failed Gaussian projection and the trial
# is redrawn from an offset seed.  With float64 Box-Muller output the event
# has never been observed; the guard exists so normalization cannot divide
# by zero.
ZERO_NORM = 1e-300


def mix64_int(x: int) -> int:
    """Scalar splitmix64 finalizer on python ints (mod 2^64)."""
    z = x & _MASK64
    z ^= z >> 30
    z = (z * MIX1) & _MASK64
    z ^= z >> 27
    z = (z * MIX2) & _MASK64
    z ^= z >> 31
    return z


def derive_seed(master: int, index: int) -> int:
    """Decorrelated per-trial seed for trial `index` under `master`."""
    base = ((master & _MASK64) ^ TRIAL_TAG) & _MASK64
    base = (base + ((index + 1) * GOLDEN)) & _MASK64
    return mix64_int(base)


def _mix64_arr(x: np.ndarray) -> np.ndarray:
    z = x
    z ^= z >> np.uint64(30)
    z *= np.uint64(MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(MIX2)
    z ^= z >> np.uint64(31)
    return z


def _normals_grid(seeds: np.ndarray, count: int) -> np.ndarray:
    """(len(seeds), count) normals; row i is the stream of seeds[i] from index 0."""
    k = np.arange(count, dtype=np.uint64)
    base = k & ~np.uint64(1)
    s = seeds[:, None]
    with np.errstate(over="ignore"):
        x1 = _mix64_arr(s + (base + np.uint64(1)) * np.uint64(GOLDEN))
        x2 = _mix64_arr(s + (base + np.uint64(2)) * np.uint64(GOLDEN))
    # (0, 1] for the log argument, [0, 1) for the angle
    u1 = ((x1 >> np.uint64(11)).astype(np.float64) + 1.0) * _TWO_NEG53
    u2 = (x2 >> np.uint64(11)).astype(np.float64) * _TWO_NEG53
    rad = np.sqrt(-2.0 * np.log(u1))
    ang = _TWO_PI * u2
    out = np.where((k & np.uint64(1)) == 0, rad * np.cos(ang), rad * np.sin(ang))
    return out


def normals(seed: int, start: int, count: int) -> np.ndarray:
    """Standard normals at stream indices [start, start + count) of `seed`."""
    if count <= 0:
        return np.zeros(0, dtype=np.float64)
    seed_u = np.uint64(seed & _MASK64)
    k = np.arange(start, start + count, dtype=np.uint64)
    base = k & ~np.uint64(1)
    with np.errstate(over="ignore"):
        x1 = _mix64_arr(seed_u + (base + np.uint64(1)) * np.uint64(GOLDEN))
        x2 = _mix64_arr(seed_u + (base + np.uint64(2)) * np.uint64(GOLDEN))
    u1 = ((x1 >> np.uint64(11)).astype(np.float64) + 1.0) * _TWO_NEG53
    u2 = (x2 >> np.uint64(11)).astype(np.float64) * _TWO_NEG53
    rad = np.sqrt(-2.0 * np.log(u1))
    ang = _TWO_PI * u2
    return np.where((k & np.uint64(1)) == 0, rad * np.cos(ang), rad * np.sin(ang))


def project_trial(vectors: np.ndarray, r: int, seed: int) -> tuple[np.ndarray, int]:
    """One Gaussian projection of unit rows of `vectors` onto r dimensions.

    Draws a single (r, d) Gaussian from `seed`, maps every input row x to
    Zx / |Zx|, and returns the (nv, r) image rows plus the number of redraws
    forced by vanishing norms.
    """
    nv, d = vectors.shape
    resamples = 0
    s = seed
    while True:
        z = normals(s, 0, r * d).reshape(r, d)
        p = vectors @ z.T  # (nv, r)
        nrm = np.sqrt(np.sum(p * p, axis=1))
        if np.all(nrm > ZERO_NORM):
            return p / nrm[:, None], resamples
        resamples += 1
        s = (s + 1) & _MASK64


def _trial_seeds(master: int, start: int, count: int) -> np.ndarray:
    idx = np.arange(start, start + count, dtype=np.uint64)
    base = np.uint64((master & _MASK64) ^ TRIAL_TAG)
    with np.errstate(over="ignore"):
        return _mix64_arr(base + (idx + np.uint64(1)) * np.uint64(GOLDEN))


_CHUNK = 4096


def rounding_energies(
    vectors: np.ndarray,
    eu: np.ndarray,
    ev: np.ndarray,
    r: int,
    model_code: int,
    master_seed: int,
    trials: int,
) -> tuple[np.ndarray, int]:
    """Per-trial objective values of randomized projection rounding.

    model_code 0: dot-product energy m/4 - (1/4) sum_e <y_u, y_v> on the
    normalized r-dimensional images (quantum models).
    model_code 1: classical cut value from the sign of a 1-dimensional
    projection, m/2 - (1/2) sum_e z_u z_v.
    Trial i uses the stream of derive_seed(master_seed, i), so any
    contiguous batch of trials reproduces exactly.
    """
    nv, d = vectors.shape
    m = eu.size
    energies = np.empty(trials, dtype=np.float64)
    resamples = 0
    rd = r * d
    for c0 in range(0, trials, _CHUNK):
        c1 = min(c0 + _CHUNK, trials)
        nb = c1 - c0
        seeds = _trial_seeds(master_seed, c0, nb)
        zs = _normals_grid(seeds, rd).reshape(nb, r, d)
        p = np.matmul(zs, vectors.T)  # (nb, r, nv)
        if model_code == 1:
            z = np.where(p[:, 0, :] >= 0.0, 1.0, -1.0)
            bad = np.nonzero(np.abs(p[:, 0, :]).min(axis=1) <= ZERO_NORM)[0]
            for t in bad:
                y, extra = project_trial(vectors, r, derive_seed(master_seed, c0 + t))
                resamples += extra
                z[t] = np.where(y[:, 0] >= 0.0, 1.0, -1.0)
            energies[c0:c1] = 0.5 * m - 0.5 * np.sum(z[:, eu] * z[:, ev], axis=1)
        else:
            nrm = np.sqrt(np.sum(p * p, axis=1))  # (nb, nv)
            bad = np.nonzero(nrm.min(axis=1) <= ZERO_NORM)[0]
            for t in bad:
                y, extra = project_trial(vectors, r, derive_seed(master_seed, c0 + t))
                resamples += extra
                p[t] = y.T
                nrm[t] = 1.0
            y = p / nrm[:, None, :]
            dots = np.einsum("tje,tje->te", y[:, :, eu], y[:, :, ev])
            energies[c0:c1] = 0.25 * m - 0.25 * np.sum(dots, axis=1)
    return energies, resamples


def pair_dots(
    xu: np.ndarray, xv: np.ndarray, r: int, master_seed: int, samples: int
) -> np.ndarray:
    """Inner products of the projected images of one vector pair, per sample."""
    vectors = np.stack([xu, xv])
    d = vectors.shape[1]
    rd = r * d
    out = np.empty(samples, dtype=np.float64)
    for c0 in range(0, samples, _CHUNK):
        c1 = min(c0 + _CHUNK, samples)
        nb = c1 - c0
        seeds = _trial_seeds(master_seed, c0, nb)
        zs = _normals_grid(seeds, rd).reshape(nb, r, d)
        p = np.matmul(zs, vectors.T)  # (nb, r, 2)
        nrm = np.sqrt(np.sum(p * p, axis=1))
        bad = np.nonzero(nrm.min(axis=1) <= ZERO_NORM)[0]
        for t in bad:
            y, _ = project_trial(vectors, r, derive_seed(master_seed, c0 + t))
            p[t] = y.T
            nrm[t] = 1.0
        out[c0:c1] = np.sum(p[:, :, 0] * p[:, :, 1], axis=1) / (nrm[:, 0] * nrm[:, 1])
    return out


def matvec_qmc(eu: np.ndarray, ev: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply sum of two-site singlet projectors to a real state vector.

    Basis index bit u is the Z eigenvalue of site u.  Each edge contributes
    0.5 * (v[i] - v[i with bits u, v swapped]) on components where the two
    bits differ, and nothing where they agree.
    """
    out = np.zeros_like(v)
    idx = np.arange(v.size, dtype=np.int64)
    for e in range(eu.size):
        u = int(eu[e])
        w = int(ev[e])
        mask = (1 << u) | (1 << w)
        differ = (((idx >> u) ^ (idx >> w)) & 1).astype(bool)
        sub = idx[differ]
        out[sub] += 0.5 * (v[sub] - v[sub ^ mask])
    return out


def matvec_xx(eu: np.ndarray, ev: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply the XX-model edge sum (1 - XX - YY)/4 to a real state vector."""
    out = np.zeros_like(v)
    idx = np.arange(v.size, dtype=np.int64)
    for e in range(eu.size):
        u = int(eu[e])
        w = int(ev[e])
        mask = (1 << u) | (1 << w)
        out += 0.25 * v
        differ = (((idx >> u) ^ (idx >> w)) & 1).astype(bool)
        sub = idx[differ]
        out[sub] -= 0.5 * v[sub ^ mask]
    return out


def maxcut_bruteforce(n: int, eu: np.ndarray, ev: np.ndarray) -> int:
    """Exact Max Cut by enumerating 2^(n-1) sign patterns (last vertex fixed)."""
    if eu.size == 0:
        return 0
    total = 1 << (n - 1)
    best = 0
    step = 1 << 16
    for c0 in range(0, total, step):
        c1 = min(c0 + step, total)
        pats = np.arange(c0, c1, dtype=np.int64)
        acc = np.zeros(pats.size, dtype=np.int64)
        for e in range(eu.size):
            acc += ((pats >> int(eu[e])) ^ (pats >> int(ev[e]))) & 1
        cmax = int(acc.max())
        if cmax > best:
            best = cmax
    return best
