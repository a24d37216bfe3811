"""Pure-Python/numpy kernels, used when the compiled extension is unavailable.

Both backends implement the same two primitives:

  horner_eval(coeffs, z)   -- evaluate sum c_k z^k at a batch of points
  hull_diameter(xs, ys)    -- squared diameter of a planar point set plus
                              the attaining index pair (smallest pair wins ties)
"""

import numpy as np

try:
    from scipy.spatial import ConvexHull, QhullError
except ImportError:  # pragma: no cover - scipy is a hard dependency elsewhere
    ConvexHull = None
    QhullError = Exception


def horner_eval(coeffs, z):
    """Horner evaluation of a complex polynomial at an array of points."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    acc = np.full(z.shape, coeffs[-1])
    for k in range(coeffs.shape[0] - 2, -1, -1):
        acc *= z
        acc += coeffs[k]
    return acc


def _brute_pair(xs, ys, idx):
    best = (-1.0, 0, 0)
    for a in range(len(idx)):
        i = idx[a]
        dx = xs[idx[a:]] - xs[i]
        dy = ys[idx[a:]] - ys[i]
        d2 = dx * dx + dy * dy
        b = int(np.argmax(d2))
        cand = float(d2[b])
        j = idx[a + b]
        lo, hi = (i, j) if i <= j else (j, i)
        if cand > best[0] or (cand == best[0] and (lo, hi) < best[1:]):
            best = (cand, lo, hi)
    return best


def _chains(xs, ys):
    """Upper and lower hull index chains, both ordered by increasing (x, y)."""
    order = np.lexsort((ys, xs))
    pts = [(xs[i], ys[i], int(i)) for i in order]
    upper, lower = [], []
    for p in pts:
        while len(upper) > 1 and _orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        while len(lower) > 1 and _orient(lower[-2], lower[-1], p) >= 0:
            lower.pop()
        upper.append(p)
        lower.append(p)
    return upper, lower


def _orient(p, q, r):
    return (q[1] - p[1]) * (r[0] - p[0]) - (q[0] - p[0]) * (r[1] - p[1])


def _chains_from_qhull(xs, ys):
    """Same chains as _chains but seeded from qhull's vertex cycle (faster)."""
    pts = np.column_stack((xs, ys))
    hull = ConvexHull(pts)
    verts = hull.vertices  # counterclockwise
    keys = [(xs[i], ys[i], int(i)) for i in verts]
    k0 = min(range(len(keys)), key=lambda a: keys[a][:2])
    k1 = max(range(len(keys)), key=lambda a: keys[a][:2])
    n = len(keys)
    lower = []
    a = k0
    while True:
        lower.append(keys[a])
        if a == k1:
            break
        a = (a + 1) % n
    upper = []
    a = k1
    while True:
        upper.append(keys[a])
        if a == k0:
            break
        a = (a + 1) % n
    upper.reverse()
    return upper, lower


def hull_diameter(xs, ys):
    """Max squared pairwise distance of (xs, ys) and the attaining pair.

    Returns (d2, i, j) with i <= j original indices; ties by smallest (i, j).
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    n = xs.shape[0]
    if n == 0:
        raise ValueError("empty point set")
    if n == 1:
        return 0.0, 0, 0
    if n <= 64:
        return _brute_pair(xs, ys, np.arange(n))
    if ConvexHull is not None:
        try:
            upper, lower = _chains_from_qhull(xs, ys)
        except QhullError:
            # collinear or otherwise degenerate: lexicographic extremes attain
            # the diameter
            order = np.lexsort((ys, xs))
            return _brute_pair(xs, ys, np.array([order[0], order[-1]]))
    else:
        upper, lower = _chains(xs, ys)

    best_d2 = -1.0
    best = (0, 0)
    i, j = 0, len(lower) - 1
    while i < len(upper) - 1 or j > 0:
        px, py, pi = upper[i]
        qx, qy, qj = lower[j]
        dx, dy = px - qx, py - qy
        d2 = dx * dx + dy * dy
        lo, hi = (pi, qj) if pi <= qj else (qj, pi)
        if d2 > best_d2 or (d2 == best_d2 and (lo, hi) < best):
            best_d2 = d2
            best = (lo, hi)
        if i == len(upper) - 1:
            j -= 1
        elif j == 0:
            i += 1
        elif (upper[i + 1][1] - py) * (qx - lower[j - 1][0]) > (
            qy - lower[j - 1][1]
        ) * (upper[i + 1][0] - px):
            i += 1
        else:
            j -= 1
    # final antipodal pair
    px, py, pi = upper[-1]
    qx, qy, qj = lower[0]
    dx, dy = px - qx, py - qy
    d2 = dx * dx + dy * dy
    lo, hi = (pi, qj) if pi <= qj else (qj, pi)
    if d2 > best_d2 or (d2 == best_d2 and (lo, hi) < best):
        best_d2 = d2
        best = (lo, hi)
    return best_d2, best[0], best[1]
