"""Hot inner loops, each in a numba flavour and a pure-numpy flavour.

The public names (``aberth``, ``log_abs_factored``, ...) are bound to one of
the two implementations at import time, see :mod:`hilbert_et._accel`.  Both
flavours are always importable as ``nb_*`` / ``np_*`` so they can be compared
against each other in tests and benchmarks.
"""

import numpy as np

from ._accel import HAVE_NUMBA, USE_NUMBA, njit, prange

TWO_PI = 2.0 * np.pi
_RESYNC = 256  # phasor recurrence is re-anchored every this many steps


# --------------------------------------------------------------------------
# Aberth-Ehrlich simultaneous iteration
# --------------------------------------------------------------------------

@njit
def nb_aberth(coeffs, z, maxiter, tol):
    # coeffs: ascending, coeffs[-1] is the leading coefficient
    z = z.copy()
    n = z.size
    deg = coeffs.size - 1
    done = np.zeros(n, dtype=np.bool_)
    it = 0
    for it in range(maxiter):
        ndone = 0
        for i in range(n):
            if done[i]:
                ndone += 1
                continue
            zi = z[i]
            azi = abs(zi)
            p = coeffs[deg]
            dp = 0.0 + 0.0j
            scale = abs(coeffs[deg])
            for k in range(deg - 1, -1, -1):
                dp = dp * zi + p
                p = p * zi + coeffs[k]
                scale = scale * azi + abs(coeffs[k])
            if abs(p) <= tol * scale:
                done[i] = True
                ndone += 1
                continue
            if dp == 0:
                z[i] = zi * (1.0 + 1e-8) + 1e-8j
                continue
            ratio = p / dp
            acc = 0.0 + 0.0j
            for j in range(n):
                if j != i:
                    acc += 1.0 / (zi - z[j])
            w = ratio / (1.0 - ratio * acc)
            z[i] = zi - w
            if abs(w) <= 1e-16 * azi:
                done[i] = True
        if ndone == n:
            break
    return z, done, it + 1


def np_aberth(coeffs, z, maxiter, tol):
    z = z.copy()
    n = z.size
    deg = coeffs.size - 1
    done = np.zeros(n, dtype=bool)
    absc = np.abs(coeffs)
    it = 0
    for it in range(maxiter):
        live = ~done
        if not live.any():
            break
        zl = z[live]
        p = np.full(zl.shape, coeffs[deg], dtype=complex)
        dp = np.zeros(zl.shape, dtype=complex)
        scale = np.full(zl.shape, absc[deg])
        azl = np.abs(zl)
        for k in range(deg - 1, -1, -1):
            dp = dp * zl + p
            p = p * zl + coeffs[k]
            scale = scale * azl + absc[k]
        small = np.abs(p) <= tol * scale
        diff = zl[:, None] - z[None, :]
        idx = np.flatnonzero(live)
        diff[np.arange(idx.size), idx] = np.inf
        with np.errstate(divide="ignore", invalid="ignore"):
            acc = (1.0 / diff).sum(axis=1)
            ratio = p / dp
            w = ratio / (1.0 - ratio * acc)
        w = np.where(np.isfinite(w), w, zl * 1e-8 + 1e-8j)
        w[small] = 0.0
        z[idx] = zl - w
        tiny = np.abs(w) <= 1e-16 * azl
        done[idx[small | tiny]] = True
    return z, done, it + 1


# --------------------------------------------------------------------------
# log|P(e^{2 pi i theta})| for a factored polynomial
# --------------------------------------------------------------------------

@njit(parallel=True)
def nb_log_abs_factored(theta, rho, ang):
    out = np.empty(theta.size)
    for i in prange(theta.size):
        acc = 0.0
        for j in range(rho.size):
            s = np.sin(np.pi * (theta[i] - ang[j]))
            d = 1.0 - rho[j]
            acc += 0.5 * np.log(d * d + 4.0 * rho[j] * s * s)
        out[i] = acc
    return out


def np_log_abs_factored(theta, rho, ang):
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape)
    d2 = (1.0 - rho) ** 2
    step = max(1, 2_000_000 // max(rho.size, 1))
    flat = theta.ravel()
    res = out.ravel()
    for lo in range(0, flat.size, step):
        t = flat[lo:lo + step, None]
        s = np.sin(np.pi * (t - ang[None, :]))
        with np.errstate(divide="ignore"):
            res[lo:lo + step] = 0.5 * np.log(d2[None, :] + 4.0 * rho[None, :] * s * s).sum(axis=1)
    return res.reshape(theta.shape)


# --------------------------------------------------------------------------
# Exact discrepancy: O(N^2) scan over ordered index pairs
# --------------------------------------------------------------------------

@njit
def nb_arc_scan(theta_sorted):
    """Return (excess, i, j, deficit, i, j) over closed / open arcs."""
    n = theta_sorted.size
    ext = np.empty(2 * n)
    for m in range(n):
        ext[m] = theta_sorted[m]
        ext[m + n] = theta_sorted[m] + 1.0
    best_e = -np.inf
    be_i = 0
    be_j = 0
    best_d = -np.inf
    bd_i = 0
    bd_j = 0
    for i in range(n):
        for j in range(i, i + n):
            v = (j - i + 1) - n * (ext[j] - ext[i])
            if v > best_e:
                best_e = v
                be_i = i
                be_j = j
        for j in range(i + 1, i + n + 1):
            v = n * (ext[j] - ext[i]) - (j - i - 1)
            if v > best_d:
                best_d = v
                bd_i = i
                bd_j = j
    return best_e, be_i, be_j, best_d, bd_i, bd_j


def np_arc_scan(theta_sorted):
    n = theta_sorted.size
    ext = np.concatenate([theta_sorted, theta_sorted + 1.0])
    best_e, be_i, be_j = -np.inf, 0, 0
    best_d, bd_i, bd_j = -np.inf, 0, 0
    offs = np.arange(n)
    for i in range(n):
        v = (offs + 1) - n * (ext[i:i + n] - ext[i])
        k = int(np.argmax(v))
        if v[k] > best_e:
            best_e, be_i, be_j = v[k], i, i + k
        v = n * (ext[i + 1:i + n + 1] - ext[i]) - offs
        k = int(np.argmax(v))
        if v[k] > best_d:
            best_d, bd_i, bd_j = v[k], i, i + 1 + k
    return best_e, be_i, be_j, best_d, bd_i, bd_j


# --------------------------------------------------------------------------
# Brute-force arc oracle on a candidate endpoint set
# --------------------------------------------------------------------------

@njit(parallel=True)
def nb_arc_oracle(cand, cnt_le, cnt_lt, n):
    m = cand.size
    row_best = np.zeros(m)
    for u in prange(m):
        best = 0.0
        for v in range(u, m):
            length = n * (cand[v] - cand[u])
            closed = cnt_le[v] - cnt_lt[u]
            val = abs(closed - length)
            if val > best:
                best = val
            if v > u:
                opened = cnt_lt[v] - cnt_le[u]
                val = abs(opened - length)
                if val > best:
                    best = val
        row_best[u] = best
    return row_best.max()


def np_arc_oracle(cand, cnt_le, cnt_lt, n):
    best = 0.0
    for u in range(cand.size):
        length = n * (cand[u:] - cand[u])
        closed = cnt_le[u:] - cnt_lt[u]
        best = max(best, float(np.abs(closed - length).max()))
        if u + 1 < cand.size:
            opened = cnt_lt[u + 1:] - cnt_le[u]
            best = max(best, float(np.abs(opened - length[1:]).max()))
    return best


# --------------------------------------------------------------------------
# Trigonometric series 2 * sum_k (a_k sin(2 pi k t) + b_k cos(2 pi k t))
# --------------------------------------------------------------------------

@njit(parallel=True)
def nb_trig_series(theta, a, b):
    out = np.empty(theta.size)
    K = a.size
    for i in prange(theta.size):
        t = theta[i]
        acc = 0.0
        k = 0
        while k < K:
            stop = min(K, k + _RESYNC)
            # anchor the phasor exactly, then rotate
            c = np.cos(TWO_PI * (k + 1) * t)
            s = np.sin(TWO_PI * (k + 1) * t)
            c1 = np.cos(TWO_PI * t)
            s1 = np.sin(TWO_PI * t)
            for m in range(k, stop):
                acc += a[m] * s + b[m] * c
                c, s = c * c1 - s * s1, s * c1 + c * s1
            k = stop
        out[i] = 2.0 * acc
    return out


def np_trig_series(theta, a, b):
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    out = np.zeros(theta.size)
    K = a.size
    block = max(1, 4_000_000 // max(theta.size, 1))
    for lo in range(0, K, block):
        k = np.arange(lo + 1, min(K, lo + block) + 1, dtype=float)
        ph = TWO_PI * np.outer(theta, k)
        out += np.sin(ph) @ a[lo:lo + k.size] + np.cos(ph) @ b[lo:lo + k.size]
    return 2.0 * out


# --------------------------------------------------------------------------
# Rescaling-identity correction sum over k of the rational kernel
# --------------------------------------------------------------------------

@njit(parallel=True)
def nb_rescaling_ksum(theta, alpha, weights, K):
    out = np.empty(theta.size)
    for i in prange(theta.size):
        t = theta[i]
        acc = 0.0
        for n in range(alpha.size):
            a = alpha[n]
            dm = (t - a) * (t - a)
            dp = (t + a) * (t + a)
            num0 = t * t - a * a
            part = 0.0
            for k in range(1, K + 1):
                k2 = float(k) * float(k)
                part += 4.0 * t * (num0 - k2) / ((dm - k2) * (dp - k2))
            acc += weights[n] * part
        out[i] = acc
    return out


def np_rescaling_ksum(theta, alpha, weights, K):
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    k2 = np.arange(1, K + 1, dtype=float) ** 2
    out = np.empty(theta.size)
    for i, t in enumerate(theta):
        a = alpha[:, None]
        ker = 4.0 * t * (t * t - a * a - k2) / (((t - a) ** 2 - k2) * ((t + a) ** 2 - k2))
        out[i] = weights @ ker.sum(axis=1)
    return out


_PAIRS = {
    "aberth": (nb_aberth, np_aberth),
    "log_abs_factored": (nb_log_abs_factored, np_log_abs_factored),
    "arc_scan": (nb_arc_scan, np_arc_scan),
    "arc_oracle": (nb_arc_oracle, np_arc_oracle),
    "trig_series": (nb_trig_series, np_trig_series),
    "rescaling_ksum": (nb_rescaling_ksum, np_rescaling_ksum),
}


def get(name, backend=None):
    """Kernel ``name`` for an explicit backend (``"numba"`` / ``"numpy"``)."""
    nb, npf = _PAIRS[name]
    if backend is None:
        backend = "numba" if USE_NUMBA else "numpy"
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return nb if backend == "numba" else npf


aberth = get("aberth")
log_abs_factored = get("log_abs_factored")
arc_scan = get("arc_scan")
arc_oracle = get("arc_oracle")
trig_series = get("trig_series")
rescaling_ksum = get("rescaling_ksum")
