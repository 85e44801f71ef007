"""Image containers, PGM I/O, synthetic fixtures and region tiling.

Images are thin immutable wrappers around 2-D ``uint8`` numpy arrays
indexed ``[row, col]`` (``[y, x]``).  Everything here is pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

MAX_GRAY = 255

Rect = Tuple[int, int, int, int]  # (top, left, height, width)


class PgmError(ValueError):
    """Base class for PGM parse failures."""


class PgmHeaderError(PgmError):
    pass


class PgmMaxvalError(PgmError):
    pass


class PgmTruncatedError(PgmError):
    pass


class PgmDimensionError(PgmError):
    pass


class TilingError(ValueError):
    """Region rectangles do not tile the target image."""


def _frozen_array(values, allowed_max: int, what: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{what} must be a non-empty 2-D grid, got shape {arr.shape}")
    if arr.dtype.kind not in "biu":
        raise TypeError(f"{what} must hold integers, got {arr.dtype}")
    if arr.size and (arr.min() < 0 or arr.max() > allowed_max):
        raise ValueError(f"{what} values must lie in [0, {allowed_max}]")
    out = np.array(arr, dtype=np.uint8, order="C", copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale image; ``pixels[y, x]`` in [0, 255]."""

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _frozen_array(self.pixels, MAX_GRAY, "pixels"))

    @classmethod
    def from_values(cls, width: int, height: int, values: Sequence[int]) -> "GrayImage":
        values = list(values)
        if len(values) != width * height:
            raise ValueError(f"expected {width * height} pixels, got {len(values)}")
        return cls(np.array(values, dtype=np.int64).reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def size(self) -> int:
        return self.pixels.size

    def values(self) -> List[int]:
        """Row-major pixel list."""
        return self.pixels.ravel().tolist()

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """Grid of {0, 1}; used for both binarized images and edge maps."""

    bits: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bits", _frozen_array(self.bits, 1, "bits"))

    @classmethod
    def from_values(cls, width: int, height: int, values: Sequence[int]) -> "BinaryImage":
        values = list(values)
        if len(values) != width * height:
            raise ValueError(f"expected {width * height} bits, got {len(values)}")
        return cls(np.array(values, dtype=np.int64).reshape(height, width))

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def values(self) -> List[int]:
        return self.bits.ravel().tolist()

    def invert(self) -> "BinaryImage":
        return BinaryImage(1 - self.bits)

    def count(self) -> int:
        return int(self.bits.sum())

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    __hash__ = None

    def __repr__(self):
        return f"BinaryImage({self.width}x{self.height}, ones={self.count()})"


@dataclass(frozen=True)
class RegionGrid:
    """An ``rows x cols`` tiling of a ``height x width`` parent image.

    Every region is ``floor(H/rows) x floor(W/cols)`` except the last row
    and column, which absorb the remainder.
    """

    rows: int
    cols: int
    height: int
    width: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid needs at least one row and one column")
        if self.rows > self.height or self.cols > self.width:
            raise ValueError(
                f"{self.rows}x{self.cols} grid exceeds {self.height}x{self.width} image"
            )

    @property
    def boundaries(self) -> List[Rect]:
        """Region rectangles ``(top, left, height, width)`` in row-major order."""
        rh, cw = self.height // self.rows, self.width // self.cols
        rects = []
        for i in range(self.rows):
            top = i * rh
            h = self.height - top if i == self.rows - 1 else rh
            for j in range(self.cols):
                left = j * cw
                w = self.width - left if j == self.cols - 1 else cw
                rects.append((top, left, h, w))
        return rects

    def __len__(self):
        return self.rows * self.cols


# ---------------------------------------------------------------------------
# PGM
# ---------------------------------------------------------------------------

_WS = b" \t\r\n\v\f"


def _header_tokens(data: bytes, count: int) -> Tuple[List[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments.

    Returns the tokens and the offset just past the last token.
    """
    tokens = []
    pos, n = 0, len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WS:
            pos += 1
        if pos >= n:
            raise PgmHeaderError("unexpected end of file in header")
        if data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WS and data[pos] != ord("#"):
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def read_pgm(data: bytes) -> GrayImage:
    """Parse a P2 or P5 PGM file with maxval <= 255.

    Pixel values are returned as stored; no rescaling is applied when
    maxval < 255.
    """
    if data[:2] not in (b"P2", b"P5"):
        raise PgmHeaderError(f"bad magic {data[:2]!r}, expected P2 or P5")
    magic = data[:2]
    tokens, pos = _header_tokens(data[2:], 3)
    pos += 2
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise PgmHeaderError(f"non-integer header field in {tokens!r}") from None
    if width <= 0 or height <= 0:
        raise PgmDimensionError(f"zero or negative dimension {width}x{height}")
    if maxval > MAX_GRAY:
        raise PgmMaxvalError(f"maxval {maxval} > 255 (16-bit PGM is unsupported)")
    if maxval < 1:
        raise PgmMaxvalError(f"maxval {maxval} < 1")
    npix = width * height

    if magic == b"P5":
        if pos >= len(data) or data[pos] not in _WS:
            raise PgmHeaderError("missing whitespace after maxval")
        raster = data[pos + 1 : pos + 1 + npix]
        if len(raster) < npix:
            raise PgmTruncatedError(f"expected {npix} pixel bytes, got {len(raster)}")
        values = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\r\n]*", b"", data[pos:]).split()
        if len(body) < npix:
            raise PgmTruncatedError(f"expected {npix} pixel values, got {len(body)}")
        try:
            values = np.array([int(v) for v in body[:npix]], dtype=np.int64)
        except ValueError:
            raise PgmHeaderError("non-integer pixel value in P2 raster") from None

    if values.size and values.max() > maxval:
        raise PgmError(f"pixel value exceeds declared maxval {maxval}")
    return GrayImage(values.reshape(height, width))


def write_pgm(img: GrayImage, ascii: bool = False) -> bytes:
    header = b"%s\n%d %d\n255\n" % (b"P2" if ascii else b"P5", img.width, img.height)
    if not ascii:
        return header + img.pixels.tobytes()
    rows = (" ".join(map(str, row)) for row in img.pixels.tolist())
    return header + "\n".join(rows).encode("ascii") + b"\n"


def load_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(path, img: GrayImage, ascii: bool = False) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img, ascii=ascii))


def binary_to_gray(bin_img: BinaryImage) -> GrayImage:
    """Render 0 -> 0 and 1 -> 255."""
    return GrayImage(bin_img.bits.astype(np.int64) * MAX_GRAY)


# ---------------------------------------------------------------------------
# Synthetic fixtures
# ---------------------------------------------------------------------------

def _check_intensity(v, name):
    if not 0 <= v <= MAX_GRAY:
        raise ValueError(f"{name}={v} outside [0, 255]")


def gen_constant(width: int, height: int, value: int) -> GrayImage:
    _check_intensity(value, "value")
    return GrayImage(np.full((height, width), value, dtype=np.uint8))


def gen_checkerboard(width: int, height: int, cell: int, lo: int, hi: int) -> GrayImage:
    """Pixel ``(x, y)`` is ``lo`` where ``x//cell + y//cell`` is even, else ``hi``."""
    if cell < 1:
        raise ValueError("cell must be positive")
    _check_intensity(lo, "lo")
    _check_intensity(hi, "hi")
    if lo >= hi:
        raise ValueError("checkerboard needs lo < hi")
    yy, xx = np.mgrid[0:height, 0:width]
    odd = ((xx // cell + yy // cell) % 2).astype(bool)
    return GrayImage(np.where(odd, hi, lo))


def gen_bimodal(
    width: int,
    height: int,
    mu1: float,
    mu2: float,
    sigma: float,
    mix_ratio: float,
    seed: int,
) -> GrayImage:
    """Two-mode Gaussian mixture image.

    Each pixel comes from mode ``mu1`` with probability ``mix_ratio`` and
    from ``mu2`` otherwise, plus N(0, sigma) noise, rounded and clamped
    to [0, 255].  Fully determined by ``seed``.
    """
    if not 0 <= mu1 < mu2 <= MAX_GRAY:
        raise ValueError("need 0 <= mu1 < mu2 <= 255")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if not 0 < mix_ratio < 1:
        raise ValueError("mix_ratio must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    first = rng.random((height, width)) < mix_ratio
    noise = rng.normal(0.0, sigma, (height, width))
    values = np.where(first, mu1, mu2) + noise
    return GrayImage(np.clip(np.rint(values), 0, MAX_GRAY).astype(np.int64))


# ---------------------------------------------------------------------------
# Tiling
# ---------------------------------------------------------------------------

def split_regions(img: GrayImage, rows: int, cols: int) -> List[Tuple[GrayImage, Rect]]:
    grid = RegionGrid(rows, cols, img.height, img.width)
    return [
        (GrayImage(img.pixels[t : t + h, l : l + w]), (t, l, h, w))
        for t, l, h, w in grid.boundaries
    ]


def assemble_regions(
    parts: Iterable[Tuple[BinaryImage, Rect]], width: int, height: int
) -> BinaryImage:
    """Paste binary parts into a ``width x height`` canvas.

    Raises
    ------
    TilingError
        If a part's shape disagrees with its rectangle, a rectangle leaves
        the canvas, rectangles overlap, or some pixel is left uncovered.
    """
    out = np.zeros((height, width), dtype=np.uint8)
    cover = np.zeros((height, width), dtype=np.int32)
    for part, (t, l, h, w) in parts:
        if (part.height, part.width) != (h, w):
            raise TilingError(
                f"part is {part.height}x{part.width} but its rectangle is {h}x{w}"
            )
        if t < 0 or l < 0 or t + h > height or l + w > width:
            raise TilingError(f"rectangle {(t, l, h, w)} leaves the {height}x{width} canvas")
        out[t : t + h, l : l + w] = part.bits
        cover[t : t + h, l : l + w] += 1
    if (cover > 1).any():
        raise TilingError("regions overlap")
    if (cover == 0).any():
        raise TilingError("regions leave a gap")
    return BinaryImage(out)
