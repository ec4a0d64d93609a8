"""JIT-compiled inner loops for the per-frame hot path.

Everything here is sequential pixel work that pure numpy cannot vectorize
without blowing the frame budget: exact Euclidean distance transform,
connected-component labeling, Moore boundary following, and the adaptive
background-mixture update. Numba compiles these once per process (cached
on disk afterwards).
"""

import numpy as np
from numba import config as _numba_config
from numba import njit, prange

# workqueue never warns about TBB/OpenMP versions and is always available
_numba_config.THREADING_LAYER = "workqueue"


@njit(cache=True)
def edt_sq_padded(mask):
    """Squared Euclidean distance to the nearest background pixel.

    `mask` must already carry a one-pixel background border; every column
    then contains at least one background pixel, so no infinities survive
    the column pass. Returns int64 squared distances (exact).
    """
    h, w = mask.shape
    g = np.empty((h, w), np.int64)
    for x in range(w):
        g[0, x] = 0 if not mask[0, x] else h + w
        for y in range(1, h):
            g[y, x] = 0 if not mask[y, x] else g[y - 1, x] + 1
        for y in range(h - 2, -1, -1):
            if g[y + 1, x] + 1 < g[y, x]:
                g[y, x] = g[y + 1, x] + 1

    out = np.empty((h, w), np.int64)
    v = np.empty(w, np.int64)
    z = np.empty(w + 1, np.float64)
    for y in range(h):
        k = 0
        v[0] = 0
        z[0] = -1e30
        z[1] = 1e30
        for q in range(1, w):
            fq = g[y, q] * g[y, q]
            while True:
                p = v[k]
                fp = g[y, p] * g[y, p]
                s = (fq + q * q - (fp + p * p)) / (2.0 * (q - p))
                if s <= z[k]:
                    k -= 1
                else:
                    break
            k += 1
            v[k] = q
            z[k] = s
            z[k + 1] = 1e30
        k = 0
        for q in range(w):
            while z[k + 1] < q:
                k += 1
            dx = q - v[k]
            out[y, q] = dx * dx + g[y, v[k]] * g[y, v[k]]
    return out


@njit(cache=True)
def label_components(mask):
    """8-connected labeling. Returns (labels, count).

    Labels are 1..count in order of first appearance in row-major scan,
    0 for background.
    """
    h, w = mask.shape
    labels = np.zeros((h, w), np.int32)
    parent = np.empty(h * w // 2 + 2, np.int32)
    nprov = 0
    for y in range(h):
        for x in range(w):
            if not mask[y, x]:
                continue
            best = 0
            # previously-visited neighbors: W, NW, N, NE
            for dy, dx in ((0, -1), (-1, -1), (-1, 0), (-1, 1)):
                ny = y + dy
                nx = x + dx
                if 0 <= ny < h and 0 <= nx < w and labels[ny, nx] > 0:
                    r = labels[ny, nx]
                    while parent[r] != r:
                        r = parent[r]
                    if best == 0 or r < best:
                        if best != 0:
                            parent[best] = r
                        best = r
                    elif r != best:
                        parent[r] = best
            if best == 0:
                nprov += 1
                parent[nprov] = nprov
                best = nprov
            labels[y, x] = best
    # compress to final labels numbered by first appearance
    remap = np.zeros(nprov + 1, np.int32)
    count = 0
    for y in range(h):
        for x in range(w):
            l = labels[y, x]
            if l == 0:
                continue
            r = l
            while parent[r] != r:
                r = parent[r]
            if remap[r] == 0:
                count += 1
                remap[r] = count
            labels[y, x] = remap[r]
    return labels, count


# clockwise Moore neighborhood with image y pointing down: W NW N NE E SE S SW
_MOORE_DX = np.array([-1, -1, 0, 1, 1, 1, 0, -1], np.int64)
_MOORE_DY = np.array([0, -1, -1, -1, 0, 1, 1, 1], np.int64)


@njit(cache=True)
def trace_boundary(mask):
    """Moore-neighbor boundary following, clockwise.

    Starts at the row-major first foreground pixel with its (background)
    west neighbor as backtrack. The walk stops when it departs the start
    pixel toward the same second pixel again, i.e. when the boundary lap
    closes; thin shapes legitimately list interior spur pixels twice.
    Returns an (N, 2) array of (x, y) coordinates; an isolated pixel
    yields N = 1.
    """
    h, w = mask.shape
    sy = -1
    sx = -1
    for y in range(h):
        for x in range(w):
            if mask[y, x]:
                sy = y
                sx = x
                break
        if sy >= 0:
            break
    cap = 4 * (h * w + 2)
    out = np.empty((cap, 2), np.int64)
    out[0, 0] = sx
    out[0, 1] = sy
    n = 1
    bx = sx - 1
    by = sy
    cx = sx
    cy = sy
    p1x = -2
    p1y = -2
    steps = 0
    while steps < cap:
        steps += 1
        start = 0
        for i in range(8):
            if cx + _MOORE_DX[i] == bx and cy + _MOORE_DY[i] == by:
                start = i
                break
        found = -1
        for j in range(1, 9):
            i = (start + j) % 8
            nx = cx + _MOORE_DX[i]
            ny = cy + _MOORE_DY[i]
            if 0 <= nx < w and 0 <= ny < h and mask[ny, nx]:
                found = i
                break
            bx = nx
            by = ny
        if found < 0:
            return out[:1].copy()  # isolated pixel
        nx = cx + _MOORE_DX[found]
        ny = cy + _MOORE_DY[found]
        if cx == sx and cy == sy:
            if nx == p1x and ny == p1y:
                # departing toward the first move again: lap closed, the
                # trailing start-pixel copy belongs to the next lap
                n -= 1
                break
            if p1x == -2:
                p1x = nx
                p1y = ny
        cx = nx
        cy = ny
        out[n, 0] = cx
        out[n, 1] = cy
        n += 1
        if n + 1 >= cap:
            break
    # the walk closes on the start pixel; drop that duplicate if present
    if n > 1 and out[n - 1, 0] == sx and out[n - 1, 1] == sy:
        n -= 1
    return out[:n].copy()


@njit(cache=True, parallel=True)
def gmm_update(frame, weights, means, variances, ncomp, lr, tstd, var_init,
               var_floor, bg_ratio, out):
    """One online update step of the per-pixel background mixture.

    frame        (H, W, 3) float32
    weights      (H, W, K) float32, kept sorted descending per pixel
    means        (H, W, K, 3) float32
    variances    (H, W, K) float32, per-channel variance
    ncomp        (H, W) int64, live component count
    out          (H, W) bool, foreground mask for this frame

    A pixel matches a component when its RGB distance is within `tstd`
    standard deviations per channel (‖x − μ‖² ≤ tstd²·σ²·3). It is
    background when the matched component sits in the weight-ordered
    prefix covering `bg_ratio` of total weight.
    """
    h, w, k_max = weights.shape[0], weights.shape[1], weights.shape[2]
    for y in prange(h):
        for x in range(w):
            n = ncomp[y, x]
            # background prefix size
            cum = 0.0
            nbg = 0
            for k in range(n):
                cum += weights[y, x, k]
                nbg = k + 1
                if cum > bg_ratio:
                    break
            match = -1
            d2m = 0.0
            for k in range(n):
                d2 = 0.0
                for c in range(3):
                    dd = frame[y, x, c] - means[y, x, k, c]
                    d2 += dd * dd
                if d2 <= tstd * tstd * variances[y, x, k] * 3.0:
                    match = k
                    d2m = d2
                    break
            if match >= 0:
                out[y, x] = match >= nbg
                for k in range(n):
                    weights[y, x, k] *= 1.0 - lr
                weights[y, x, match] += lr
                for c in range(3):
                    means[y, x, match, c] += lr * (frame[y, x, c] - means[y, x, match, c])
                nv = variances[y, x, match] + lr * (d2m / 3.0 - variances[y, x, match])
                variances[y, x, match] = nv if nv > var_floor else var_floor
                # bubble the strengthened component toward the front
                k = match
                while k > 0 and weights[y, x, k] > weights[y, x, k - 1]:
                    tw = weights[y, x, k]
                    weights[y, x, k] = weights[y, x, k - 1]
                    weights[y, x, k - 1] = tw
                    tv = variances[y, x, k]
                    variances[y, x, k] = variances[y, x, k - 1]
                    variances[y, x, k - 1] = tv
                    for c in range(3):
                        tm = means[y, x, k, c]
                        means[y, x, k, c] = means[y, x, k - 1, c]
                        means[y, x, k - 1, c] = tm
                    k -= 1
            else:
                out[y, x] = True
                if n < k_max:
                    slot = n
                    ncomp[y, x] = n + 1
                else:
                    slot = k_max - 1  # replace the weakest
                for kk in range(n):
                    weights[y, x, kk] *= 1.0 - lr
                weights[y, x, slot] = lr
                for c in range(3):
                    means[y, x, slot, c] = frame[y, x, c]
                variances[y, x, slot] = var_init
                total = 0.0
                for kk in range(ncomp[y, x]):
                    total += weights[y, x, kk]
                for kk in range(ncomp[y, x]):
                    weights[y, x, kk] /= total
