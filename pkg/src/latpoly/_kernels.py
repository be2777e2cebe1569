"""Hot loops: polynomial tabulation and the commutation matrix scan.

Each kernel exists twice, a numba ``@njit`` version and a vectorised numpy
version with the same signature and results. ``tabulate`` and
``first_failure`` dispatch on :data:`latpoly._accel.USE_NUMBA`.

Conventions shared by both paths: a tuple ``(x_1, ..., x_n)`` over a domain
of size ``k`` has flat index ``sum x_i * k**(n-i)`` (x_1 most significant),
and an n-by-m matrix is numbered the same way over its row-major entries,
so increasing matrix numbers is the row-major lexicographic order.
"""

import numpy as np

from . import _accel
from ._accel import njit

CHUNK = 1 << 15


@njit(cache=True, nogil=True)
def _tabulate_numba(coeffs, n, k, meet, join, bottom):
    total = k ** n
    out = np.empty(total, dtype=np.int64)
    digits = np.zeros(n, dtype=np.int64)
    nsub = coeffs.shape[0]
    for idx in range(total):
        rem = idx
        for i in range(n - 1, -1, -1):
            digits[i] = rem % k
            rem //= k
        val = bottom
        for mask in range(nsub):
            t = coeffs[mask]
            if t == bottom:
                continue
            for i in range(n):
                if (mask >> i) & 1:
                    t = meet[t, digits[i]]
            val = join[val, t]
        out[idx] = val
    return out


def _tabulate_numpy(coeffs, n, k, meet, join, bottom):
    total = k ** n
    digits = np.array(np.unravel_index(np.arange(total), (k,) * n), dtype=np.int64)
    val = np.full(total, bottom, dtype=np.int64)
    for mask in range(coeffs.shape[0]):
        a = int(coeffs[mask])
        if a == bottom:
            continue
        t = np.full(total, a, dtype=np.int64)
        for i in range(n):
            if (mask >> i) & 1:
                t = meet[t, digits[i]]
        val = join[val, t]
    return val


@njit(cache=True, nogil=True)
def _first_failure_numba(f_vals, n, g_vals, m, k, start, stop):
    # odometer over the row-major entries, keeping row/column table indices
    # up to date incrementally
    cells = n * m
    digits = np.zeros(cells, dtype=np.int64)
    rem = start
    for c in range(cells - 1, -1, -1):
        digits[c] = rem % k
        rem //= k
    pow_m = np.empty(m, dtype=np.int64)
    pow_n = np.empty(n, dtype=np.int64)
    for j in range(m):
        pow_m[j] = k ** (m - 1 - j)
    for i in range(n):
        pow_n[i] = k ** (n - 1 - i)
    row_idx = np.zeros(n, dtype=np.int64)
    col_idx = np.zeros(m, dtype=np.int64)
    for i in range(n):
        for j in range(m):
            d = digits[i * m + j]
            row_idx[i] += d * pow_m[j]
            col_idx[j] += d * pow_n[i]
    for num in range(start, stop):
        li = 0
        for i in range(n):
            li += g_vals[row_idx[i]] * pow_n[i]
        ri = 0
        for j in range(m):
            ri += f_vals[col_idx[j]] * pow_m[j]
        lhs = f_vals[li]
        rhs = g_vals[ri]
        if lhs != rhs:
            return num, lhs, rhs
        c = cells - 1
        while c >= 0:
            i = c // m
            j = c - i * m
            if digits[c] + 1 < k:
                digits[c] += 1
                row_idx[i] += pow_m[j]
                col_idx[j] += pow_n[i]
                break
            row_idx[i] -= digits[c] * pow_m[j]
            col_idx[j] -= digits[c] * pow_n[i]
            digits[c] = 0
            c -= 1
    return -1, 0, 0


def _first_failure_numpy(f_vals, n, g_vals, m, k, start, stop):
    pow_m = k ** np.arange(m - 1, -1, -1, dtype=np.int64)
    pow_n = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    cell_pow = k ** np.arange(n * m - 1, -1, -1, dtype=np.int64)
    for lo in range(start, stop, CHUNK):
        hi = min(lo + CHUNK, stop)
        nums = np.arange(lo, hi, dtype=np.int64)
        mats = ((nums[:, None] // cell_pow[None, :]) % k).reshape(-1, n, m)
        rows = mats @ pow_m  # (chunk, n) indices into g
        cols = np.einsum("cij,i->cj", mats, pow_n)  # (chunk, m) indices into f
        lhs = f_vals[g_vals[rows] @ pow_n]
        rhs = g_vals[f_vals[cols] @ pow_m]
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            b = int(bad[0])
            return lo + b, int(lhs[b]), int(rhs[b])
    return -1, 0, 0


def tabulate(coeffs, n, k, meet, join, bottom, use_numba=None):
    use = _accel.USE_NUMBA if use_numba is None else use_numba
    fn = _tabulate_numba if use else _tabulate_numpy
    return fn(np.ascontiguousarray(coeffs, dtype=np.int64), n, k, meet, join, bottom)


def first_failure(f_vals, n, g_vals, m, k, start, stop, use_numba=None):
    """First matrix number in ``[start, stop)`` breaking commutation.

    Returns ``(number, row_first_value, column_first_value)``, or
    ``(-1, 0, 0)`` when every matrix in the range commutes.
    """
    use = _accel.USE_NUMBA if use_numba is None else use_numba
    fn = _first_failure_numba if use else _first_failure_numpy
    num, lhs, rhs = fn(
        np.ascontiguousarray(f_vals, dtype=np.int64), n,
        np.ascontiguousarray(g_vals, dtype=np.int64), m, k, start, stop,
    )
    return int(num), int(lhs), int(rhs)
