"""Independent brute-force oracles shared by the unit and acceptance suites.

Everything here is deliberately naive — per-pixel loops and exhaustive
searches — so the fast implementations are checked against code that
shares none of their structure.
"""

import numpy as np

_M = np.array(
    [
        [0.2990, 0.5870, 0.1140],
        [-0.1687, -0.3313, 0.5000],
        [0.5000, -0.4187, -0.0813],
    ]
)
_OFF = np.array([0.0, 128.0, 128.0])


def ycbcr_pixel(r, g, b):
    """Direct matrix product for one pixel, in pure Python floats."""
    r, g, b = float(r), float(g), float(b)
    return np.array(
        [
            float(_M[i, 0]) * r + float(_M[i, 1]) * g + float(_M[i, 2]) * b + float(_OFF[i])
            for i in range(3)
        ]
    )


def brute_distance_transform(mask):
    """Nearest-background search over every pixel pair, with the implicit
    one-pixel background ring around the raster."""
    mask = np.asarray(mask, bool)
    h, w = mask.shape
    bg = [(x, y) for y in range(h) for x in range(w) if not mask[y, x]]
    # ring of background just outside the raster
    for x in range(-1, w + 1):
        bg.append((x, -1))
        bg.append((x, h))
    for y in range(h):
        bg.append((-1, y))
        bg.append((w, y))
    bg = np.array(bg, np.int64)
    out = np.zeros((h, w), np.float64)
    for y in range(h):
        for x in range(w):
            if mask[y, x]:
                d2 = (bg[:, 0] - x) ** 2 + (bg[:, 1] - y) ** 2
                out[y, x] = np.sqrt(float(d2.min()))
    return out


def brute_dilate(mask, offsets):
    mask = np.asarray(mask, bool)
    h, w = mask.shape
    out = np.zeros_like(mask)
    for y in range(h):
        for x in range(w):
            if mask[y, x]:
                for dx, dy in offsets:
                    if 0 <= x + dx < w and 0 <= y + dy < h:
                        out[y + dy, x + dx] = True
    return out


def brute_erode(mask, offsets):
    """Offsets landing outside the raster are ignored."""
    mask = np.asarray(mask, bool)
    h, w = mask.shape
    out = np.zeros_like(mask)
    for y in range(h):
        for x in range(w):
            ok = True
            for dx, dy in offsets:
                nx, ny = x + dx, y + dy
                if 0 <= nx < w and 0 <= ny < h and not mask[ny, nx]:
                    ok = False
                    break
            out[y, x] = ok
    return out


def brute_components(mask):
    """Flood-fill 8-connected components; returns list of pixel sets in
    row-major order of their first pixel."""
    mask = np.asarray(mask, bool)
    h, w = mask.shape
    seen = np.zeros_like(mask)
    comps = []
    for y in range(h):
        for x in range(w):
            if mask[y, x] and not seen[y, x]:
                stack = [(x, y)]
                seen[y, x] = True
                comp = set()
                while stack:
                    cx, cy = stack.pop()
                    comp.add((cx, cy))
                    for dy in (-1, 0, 1):
                        for dx in (-1, 0, 1):
                            nx, ny = cx + dx, cy + dy
                            if 0 <= nx < w and 0 <= ny < h and mask[ny, nx] and not seen[ny, nx]:
                                seen[ny, nx] = True
                                stack.append((nx, ny))
                comps.append(comp)
    return comps


def boundary_pixels(mask):
    """Outer-boundary pixels: foreground 4-adjacent to background that is
    itself reachable from outside the raster (interior holes excluded)."""
    mask = np.asarray(mask, bool)
    h, w = mask.shape
    exterior = np.zeros((h + 2, w + 2), bool)
    inner = np.zeros((h + 2, w + 2), bool)
    inner[1:-1, 1:-1] = mask
    stack = [(0, 0)]
    exterior[0, 0] = True
    while stack:
        cx, cy = stack.pop()
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nx, ny = cx + dx, cy + dy
            if 0 <= nx < w + 2 and 0 <= ny < h + 2 and not inner[ny, nx] and not exterior[ny, nx]:
                exterior[ny, nx] = True
                stack.append((nx, ny))
    out = set()
    for y in range(h):
        for x in range(w):
            if not mask[y, x]:
                continue
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                if exterior[y + 1 + dy, x + 1 + dx]:
                    out.add((x, y))
                    break
    return out


def brute_inscribed_radius(mask, cx, cy):
    """Largest Euclidean distance from (cx, cy) to the nearest background
    pixel, ring included — grown by exhaustive search."""
    mask = np.asarray(mask, bool)
    h, w = mask.shape
    best = np.inf
    for y in range(-1, h + 1):
        for x in range(-1, w + 1):
            inside = 0 <= x < w and 0 <= y < h
            if inside and mask[y, x]:
                continue
            d = np.hypot(x - cx, y - cy)
            best = min(best, d)
    return best


def box_iou(a, b):
    """a, b = (x, y, w, h) tuples."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    ix = max(0, min(ax + aw, bx + bw) - max(ax, bx))
    iy = max(0, min(ay + ah, by + bh) - max(ay, by))
    inter = ix * iy
    union = aw * ah + bw * bh - inter
    return inter / union if union > 0 else 0.0


def mask_from_strings(rows):
    """ASCII art mask: '#' foreground, anything else background."""
    return np.array([[c == "#" for c in row] for row in rows], bool)


def random_mask(rng, h, w, density=0.4):
    return rng.random((h, w)) < density


def sweep_motion(kind, n=59):
    """Ten directed sweep paths (<= 8 px/frame) for tracking acceptance.

    Lateral and diagonal sweeps keep the fingertip moving into fresh
    background, as real strokes do; slow pure-vertical translation of a
    rigid hand would drag the tip through its own background shadow.
    """
    paths = [
        [(4, 0)] * n,
        [(-4, 0)] * n,
        [(3, 2)] * n,
        [(-4, 1)] * n,
        [(5, 0)] * 30 + [(0, -4)] * (n - 30),
        [(-3, -2)] * n,
        [(2, 3)] * 30 + [(4, -2)] * (n - 30),
        [(int(round(6 * np.cos(i / 18))), int(round(4 * np.sin(i / 18)))) for i in range(n)],
        [(6, 1)] * n,
        [(-5, 1)] * n,
    ]
    return paths[kind]


def tracking_sequence(kind, seed=None, frames=60):
    """Standard one-finger tracking sequence for the acceptance battery."""
    from airwrite.synth import SynthHandSpec, synth_sequence

    spec = SynthHandSpec.random(seed=300 + kind if seed is None else seed, fingers=1)
    motion = sweep_motion(kind, frames - 1)
    net = np.cumsum(np.array([(0, 0)] + motion), axis=0)
    minx, miny = net.min(axis=0)
    maxx, maxy = net.max(axis=0)
    start = (
        max(12, 320 - 85 - (minx + maxx) // 2),
        max(12, 240 - 80 - (miny + maxy) // 2),
    )
    return synth_sequence(spec, motion=motion, frames=frames, start=start)


def random_blob(rng, h, w, r_min=3, r_max=8):
    """A few overlapping disks — single connected blob for contour tests."""
    mask = np.zeros((h, w), bool)
    cx, cy = rng.integers(r_max, w - r_max), rng.integers(r_max, h - r_max)
    yy, xx = np.mgrid[0:h, 0:w]
    for _ in range(int(rng.integers(1, 4))):
        r = int(rng.integers(r_min, r_max + 1))
        mask |= (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r
        step = rng.integers(-r_min, r_min + 1, 2)
        cx = int(np.clip(cx + step[0], r_max, w - r_max - 1))
        cy = int(np.clip(cy + step[1], r_max, h - r_max - 1))
    return mask
