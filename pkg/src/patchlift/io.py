"""PGM (P5/P2, maxval 255) image files and one-value-per-line signal CSVs."""
from __future__ import annotations

import os

import numpy as np
from numpy.typing import ArrayLike

from .core import Image2D, Signal1D, as_image, as_signal


class ImageFormatError(ValueError):
    """Base class for unreadable image or signal files."""


class MalformedHeaderError(ImageFormatError):
    pass


class TruncatedPayloadError(ImageFormatError):
    pass


class UnsupportedMaxvalError(ImageFormatError):
    pass


class SignalFormatError(ImageFormatError):
    pass


def _header_tokens(data: bytes, count: int):
    """Return the first ``count`` header tokens and the offset just past them."""
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= n:
            raise MalformedHeaderError("unexpected end of file in header")
        if data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def read_pgm(path: str | os.PathLike) -> Image2D:
    with open(path, "rb") as fh:
        data = fh.read()
    tokens, pos = _header_tokens(data, 4)
    magic = tokens[0]
    if magic not in (b"P5", b"P2"):
        raise MalformedHeaderError(f"not a P5/P2 PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise MalformedHeaderError("non-integer width, height or maxval") from None
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedMaxvalError(f"unsupported maxval {maxval} (only 255)")
    npix = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        payload = data[pos + 1:pos + 1 + npix]
        if len(payload) < npix:
            raise TruncatedPayloadError(f"expected {npix} bytes, found {len(payload)}")
        values = np.frombuffer(payload, dtype=np.uint8)
    else:
        fields = data[pos:].split()
        if len(fields) < npix:
            raise TruncatedPayloadError(f"expected {npix} samples, found {len(fields)}")
        try:
            values = np.array([int(t) for t in fields[:npix]], dtype=np.int64)
        except ValueError:
            raise MalformedHeaderError("non-integer sample in P2 payload") from None
        if values.min() < 0 or values.max() > maxval:
            raise MalformedHeaderError("P2 sample outside [0, maxval]")
    return values.astype(np.float64).reshape(height, width)


def quantize(img: ArrayLike) -> np.ndarray:
    """Round half away from zero, then clamp to [0, 255] as uint8."""
    img = as_image(img)
    rounded = np.sign(img) * np.floor(np.abs(img) + 0.5)
    return np.clip(rounded, 0, 255).astype(np.uint8)


def write_pgm(img: ArrayLike, path: str | os.PathLike) -> None:
    q = quantize(img)
    h, w = q.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(q.tobytes())


def read_signal_csv(path: str | os.PathLike) -> Signal1D:
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise SignalFormatError(f"line {lineno}: not a number") from None
    if not values:
        raise SignalFormatError("empty signal file")
    return as_signal(values)


def write_signal_csv(sig: ArrayLike, path: str | os.PathLike) -> None:
    sig = as_signal(sig)
    with open(path, "w", encoding="utf-8") as fh:
        fh.writelines(f"{v:.12g}\n" for v in sig)
