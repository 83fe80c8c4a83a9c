"""Pure numpy fallback for the pair kernels in ``_ckernels.pyx``.

Each row ``i`` is handled as one vectorised slice over ``j > i``. Row totals
are folded together with :func:`math.fsum`, so the reductions are
deterministic and compensated across rows.
"""
import math

import numpy as np


def pair_log_sum(re, im, start=0, stop=-1):
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    n = re.shape[0]
    if stop < 0 or stop > n:
        stop = n
    rows = []
    for i in range(start, stop):
        d = np.hypot(re[i] - re[i + 1:], im[i] - im[i + 1:])
        if d.size and d.min() == 0.0:
            return -math.inf
        rows.append(math.fsum(np.log(d).tolist()))
    return math.fsum(rows)


def max_pair_dist2(re, im, skip_antipodal=False):
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    n = re.shape[0]
    h = n // 2
    best, bi, bj = -1.0, -1, -1
    for i in range(n - 1):
        dx = re[i] - re[i + 1:]
        dy = im[i] - im[i + 1:]
        d2 = dx * dx + dy * dy
        if skip_antipodal and i + h < n and h > 0:
            d2[h - 1] = -1.0
        k = int(np.argmax(d2))
        if d2[k] > best:
            best, bi, bj = float(d2[k]), i, i + 1 + k
    return best, bi, bj


def any_pair_exceeds(re, im, limit2, skip_antipodal=False):
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    n = re.shape[0]
    h = n // 2
    for i in range(n - 1):
        dx = re[i] - re[i + 1:]
        dy = im[i] - im[i + 1:]
        d2 = dx * dx + dy * dy
        if skip_antipodal and i + h < n and h > 0:
            d2[h - 1] = -1.0
        if np.any(d2 > limit2):
            return True
    return False


def rho_sums(re, im, vre, vim, max_power, t=0.0):
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    z = np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float)
    v = np.asarray(vre, dtype=float) + 1j * np.asarray(vim, dtype=float)
    n = z.shape[0]
    row_re = [[] for _ in range(max_power)]
    row_im = [[] for _ in range(max_power)]
    env_rows = []
    max_abs = 0.0
    blown = False
    for i in range(n - 1):
        dz = z[i] - z[i + 1:]
        if np.any(dz == 0):
            out = np.full(max_power, complex(math.nan, math.nan))
            return out, math.nan, math.nan
        r = (v[i] - v[i + 1:]) / dz
        p = r
        for m in range(max_power):
            if m > 0:
                p = p * r
            row_re[m].append(float(np.sum(p.real)))
            row_im[m].append(float(np.sum(p.imag)))
        a = np.abs(r)
        max_abs = max(max_abs, float(a.max()))
        q = 1.0 - a * t
        if np.any(q <= 0.0):
            blown = True
        else:
            env_rows.append(float(np.sum((a / q) ** 4)))
    out = np.array(
        [complex(2.0 * math.fsum(row_re[m]), 2.0 * math.fsum(row_im[m]))
         for m in range(max_power)],
        dtype=np.complex128,
    )
    envelope = math.inf if blown else 2.0 * math.fsum(env_rows)
    return out, max_abs, envelope
