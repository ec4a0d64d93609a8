"""Binary PGM (P5) / PPM (P6) raster I/O.

Masks travel as P5 with 0 = background, 255 = foreground; RGB frames as P6.
"""

import numpy as np


def _read_token(f):
    tok = b""
    while True:
        ch = f.read(1)
        if not ch:
            raise ValueError("unexpected end of header")
        if ch in b" \t\r\n":
            if tok:
                return tok
            continue
        if ch == b"#":
            while ch not in b"\r\n":
                ch = f.read(1)
                if not ch:
                    raise ValueError("unexpected end of header")
            continue
        tok += ch


def _read_pnm(path, magic, channels):
    with open(path, "rb") as f:
        if f.read(2) != magic:
            raise ValueError(f"{path}: not a {magic.decode()} file")
        width = int(_read_token(f))
        height = int(_read_token(f))
        maxval = int(_read_token(f))
        if maxval != 255:
            raise ValueError(f"{path}: only maxval 255 supported, got {maxval}")
        data = f.read(width * height * channels)
    if len(data) != width * height * channels:
        raise ValueError(f"{path}: truncated pixel data")
    arr = np.frombuffer(data, np.uint8)
    if channels == 1:
        return arr.reshape(height, width)
    return arr.reshape(height, width, channels)


def read_pgm(path):
    return _read_pnm(path, b"P5", 1)


def read_ppm(path):
    return _read_pnm(path, b"P6", 3)


def write_pgm(path, gray):
    gray = np.ascontiguousarray(gray, np.uint8)
    if gray.ndim != 2:
        raise ValueError("PGM expects a 2-D array")
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (gray.shape[1], gray.shape[0]))
        f.write(gray.tobytes())


def write_ppm(path, rgb):
    rgb = np.ascontiguousarray(rgb, np.uint8)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError("PPM expects an (H, W, 3) array")
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (rgb.shape[1], rgb.shape[0]))
        f.write(rgb.tobytes())


def read_mask(path):
    """Boolean mask from a PGM file; any nonzero sample is foreground."""
    return read_pgm(path) > 0


def write_mask(path, mask):
    write_pgm(path, np.where(np.asarray(mask, bool), 255, 0).astype(np.uint8))
