"""Hot numeric kernels, each with a numba and a pure-numpy implementation.

The numba versions are used when numba imports and the environment
variable ``STABREC_DISABLE_NUMBA`` is unset (or ``0``).  Both paths return
identical results: the walk kernel uses integer-only random bits, and the
batched Kraus kernel differs only by floating-point summation order.

Random numbers
--------------
Trial ``t`` of a run with seed ``s`` draws from its own SplitMix64 stream
whose starting state is ``mix(s + (t + 1) * GOLDEN)``; the ``n``-th draw
of that stream is ``mix(state + (n + 1) * GOLDEN)``.  Any draw can be
computed from ``(seed, trial, step)`` alone, so trials can run in any
order or in parallel and still reproduce bit for bit.  A draw becomes a
double in [0, 1) from its top 53 bits.
"""

from __future__ import annotations

import os

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(11)
_TO_UNIT = 2.0**-53

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False


def numba_requested() -> bool:
    flag = os.environ.get("STABREC_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


USE_NUMBA = HAVE_NUMBA and numba_requested()


def _mix_np(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def stream_keys(seed: int, trials: np.ndarray) -> np.ndarray:
    trials = np.asarray(trials, dtype=np.uint64)
    return _mix_np(np.uint64(seed) + (trials + np.uint64(1)) * GOLDEN)


def uniforms(seed: int, trial: int, count: int) -> np.ndarray:
    """First ``count`` draws of one trial's stream (reference helper)."""
    key = stream_keys(seed, np.array([trial]))[0]
    n = np.arange(1, count + 1, dtype=np.uint64)
    return (_mix_np(key + n * GOLDEN) >> _S11).astype(np.float64) * _TO_UNIT


# -- random walk -------------------------------------------------------------


def walk_numpy(seed: int, trials: int, q_left: np.ndarray):
    """Run ``trials`` absorbing walks on {0..k}, ``k = len(q_left) + 1``.

    Each walk starts at 1 and steps left from position ``i`` with
    probability ``q_left[i - 1]``.  Returns per-trial step counts and a
    success flag (absorbed at 0).
    """
    q_left = np.ascontiguousarray(q_left, dtype=np.float64)
    k = q_left.shape[0] + 1
    keys = stream_keys(seed, np.arange(trials, dtype=np.uint64))
    pos = np.ones(trials, dtype=np.int64)
    steps = np.zeros(trials, dtype=np.int64)
    active = np.arange(trials)
    while active.size:
        n = steps[active].astype(np.uint64) + np.uint64(1)
        u = (_mix_np(keys[active] + n * GOLDEN) >> _S11).astype(np.float64) * _TO_UNIT
        left = u < q_left[pos[active] - 1]
        pos[active] += np.where(left, -1, 1)
        steps[active] += 1
        p = pos[active]
        active = active[(p > 0) & (p < k)]
    return steps, pos == 0


def _walk_numba_impl(seed, trials, q_left):
    k = q_left.shape[0] + 1
    steps = np.zeros(trials, dtype=np.int64)
    success = np.zeros(trials, dtype=np.bool_)
    seed = np.uint64(seed)
    for t in range(trials):
        z = seed + (np.uint64(t) + np.uint64(1)) * GOLDEN
        z = (z ^ (z >> _S30)) * _M1
        z = (z ^ (z >> _S27)) * _M2
        key = z ^ (z >> _S31)
        pos = 1
        n = 0
        while 0 < pos < k:
            n += 1
            z = key + np.uint64(n) * GOLDEN
            z = (z ^ (z >> _S30)) * _M1
            z = (z ^ (z >> _S27)) * _M2
            z = z ^ (z >> _S31)
            u = np.float64(z >> _S11) * _TO_UNIT
            if u < q_left[pos - 1]:
                pos -= 1
            else:
                pos += 1
        steps[t] = n
        success[t] = pos == 0
    return steps, success


# -- batched Kraus action ----------------------------------------------------


def sandwich_numpy(kraus: np.ndarray, rhos: np.ndarray) -> np.ndarray:
    """``K_n rho_p K_n†`` for every Kraus operator and input; shape (N, P, a, a)."""
    return np.einsum("nij,pjk,nlk->npil", kraus, rhos, kraus.conj(), optimize=True)


def _sandwich_numba_impl(kraus, rhos):
    n_k, a, b = kraus.shape
    n_p = rhos.shape[0]
    out = np.zeros((n_k, n_p, a, a), dtype=np.complex128)
    tmp = np.empty((a, b), dtype=np.complex128)
    for n in range(n_k):
        for p in range(n_p):
            for i in range(a):
                for k in range(b):
                    acc = 0j
                    for j in range(b):
                        acc += kraus[n, i, j] * rhos[p, j, k]
                    tmp[i, k] = acc
            for i in range(a):
                for m in range(a):
                    acc = 0j
                    for k in range(b):
                        acc += tmp[i, k] * np.conj(kraus[n, m, k])
                    out[n, p, i, m] = acc
    return out


if HAVE_NUMBA:
    walk_numba = numba.njit(cache=True)(_walk_numba_impl)
    sandwich_numba = numba.njit(cache=True)(_sandwich_numba_impl)
else:  # pragma: no cover
    walk_numba = None
    sandwich_numba = None


def walk(seed: int, trials: int, q_left: np.ndarray):
    q_left = np.ascontiguousarray(q_left, dtype=np.float64)
    if USE_NUMBA:
        return walk_numba(np.uint64(seed), trials, q_left)
    return walk_numpy(seed, trials, q_left)


def sandwich(kraus: np.ndarray, rhos: np.ndarray) -> np.ndarray:
    kraus = np.ascontiguousarray(kraus, dtype=np.complex128)
    rhos = np.ascontiguousarray(rhos, dtype=np.complex128)
    if USE_NUMBA:
        return sandwich_numba(kraus, rhos)
    return sandwich_numpy(kraus, rhos)
