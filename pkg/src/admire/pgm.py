"""8-bit PGM reading (P5 binary, P2 ASCII) and P5 writing."""

from __future__ import annotations

import os

import numpy as np

from .histogram import as_gray_image


class PGMError(ValueError):
    pass


def _tokens(data: bytes, start: int, count: int):
    """Read ``count`` whitespace-separated header tokens, skipping # comments.

    Returns the tokens and the offset just past the last one.
    """
    out = []
    i, n = start, len(data)
    while len(out) < count:
        while i < n and data[i:i + 1].isspace():
            i += 1
        if i >= n:
            raise PGMError("truncated header")
        if data[i:i + 1] == b"#":
            while i < n and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        j = i
        while j < n and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
            j += 1
        out.append(data[i:j])
        i = j
    return out, i


def parse_pgm(data: bytes) -> np.ndarray:
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise PGMError(f"not a gray PGM file (magic {magic!r})")
    toks, pos = _tokens(data, 2, 3)
    try:
        width, height, maxval = (int(t) for t in toks)
    except ValueError:
        raise PGMError("malformed header") from None
    if width < 1 or height < 1:
        raise PGMError(f"bad dimensions {width}x{height}")
    if maxval > 255:
        raise PGMError(f"maxval {maxval} > 255: 16-bit PGM is not supported")
    if maxval < 1:
        raise PGMError(f"bad maxval {maxval}")
    size = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates header and raster
        raster = data[pos + 1:pos + 1 + size]
        if len(raster) < size:
            raise PGMError(f"truncated raster: {len(raster)} of {size} bytes")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = data[pos:].split()
        if len(body) < size:
            raise PGMError(f"truncated raster: {len(body)} of {size} samples")
        try:
            pixels = np.array([int(t) for t in body[:size]], dtype=np.int64)
        except ValueError:
            raise PGMError("non-integer sample in ASCII raster") from None
    if pixels.max(initial=0) > maxval:
        raise PGMError("sample exceeds maxval")
    return pixels.reshape(height, width).astype(np.uint8)


def read_pgm(path) -> np.ndarray:
    """Load an 8-bit P5 or P2 PGM file as a 2-D uint8 array."""
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def write_pgm(img, path) -> None:
    """Write ``img`` as binary P5 with maxval 255, replacing any existing file."""
    img = as_gray_image(img)
    header = f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(img).tobytes())
    os.replace(tmp, path)
