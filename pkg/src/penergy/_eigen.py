"""Compiled kernels for the dense symmetric eigenproblem.

Householder reduction to tridiagonal form followed by implicit-shift QL
iteration.  Both kernels work on plain float64 arrays; validation and
sorting live in :mod:`penergy.spectra`.
"""

import math

import numpy as np
from numba import njit

MAX_SWEEPS = 30


@njit(cache=True)
def tridiagonalize(a, want_q):
    """Reduce symmetric ``a`` to tridiagonal form ``T = Q^T a Q``.

    Returns ``(d, e, q)`` with ``d`` the diagonal, ``e[i]`` the coupling
    between rows ``i`` and ``i + 1`` (``e[n-1] == 0``) and ``q`` the
    accumulated orthogonal transform (identity when ``want_q`` is false).
    """
    n = a.shape[0]
    w = a.copy()
    q = np.eye(n)
    d = np.zeros(n)
    e = np.zeros(n)
    for k in range(n - 2):
        x = w[k + 1:, k].copy()
        sc = 0.0
        for i in range(x.shape[0]):
            sc = max(sc, abs(x[i]))
        tail = 0.0
        for i in range(1, x.shape[0]):
            tail += x[i] * x[i]
        if sc == 0.0 or tail == 0.0:
            e[k] = x[0]
            continue
        x /= sc
        alpha = math.sqrt(x[0] * x[0] + tail / (sc * sc))
        if x[0] > 0.0:
            alpha = -alpha
        v = x
        v[0] -= alpha
        vv = 0.0
        for i in range(v.shape[0]):
            vv += v[i] * v[i]
        beta = 2.0 / vv
        m = v.shape[0]
        p = np.zeros(m)
        for i in range(m):
            acc = 0.0
            for j in range(m):
                acc += w[k + 1 + i, k + 1 + j] * v[j]
            p[i] = beta * acc
        kk = 0.0
        for i in range(m):
            kk += v[i] * p[i]
        kk *= 0.5 * beta
        p -= kk * v
        for i in range(m):
            for j in range(m):
                w[k + 1 + i, k + 1 + j] -= v[i] * p[j] + p[i] * v[j]
        e[k] = alpha * sc
        w[k + 1:, k] = 0.0
        w[k, k + 1:] = 0.0
        if want_q:
            for r in range(n):
                acc = 0.0
                for j in range(m):
                    acc += q[r, k + 1 + j] * v[j]
                acc *= beta
                for j in range(m):
                    q[r, k + 1 + j] -= acc * v[j]
    for i in range(n):
        d[i] = w[i, i]
    if n >= 2:
        e[n - 2] = w[n - 1, n - 2]
    return d, e, q


@njit(cache=True)
def ql_implicit(d, e, z, want_z):
    """Diagonalize the tridiagonal ``(d, e)`` in place.

    Rotations are accumulated into the columns of ``z`` when ``want_z``
    is set.  Returns 0 on success, otherwise ``1 + index`` of the
    eigenvalue that failed to converge within ``MAX_SWEEPS`` sweeps.
    """
    n = d.shape[0]
    eps = np.finfo(np.float64).eps
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == MAX_SWEEPS:
                return l + 1
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            deflated = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if want_z:
                    for k in range(z.shape[0]):
                        f = z[k, i + 1]
                        z[k, i + 1] = s * z[k, i] + c * f
                        z[k, i] = c * z[k, i] - s * f
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


@njit(cache=True)
def symmetric_eigvals(a):
    d, e, q = tridiagonalize(a, False)
    status = ql_implicit(d, e, q, False)
    return d, status


@njit(cache=True)
def symmetric_eigh(a):
    d, e, q = tridiagonalize(a, True)
    status = ql_implicit(d, e, q, True)
    return d, q, status
