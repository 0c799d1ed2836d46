"""Depth-map and grayscale-image file I/O.

PFM is the canonical lossless float container; PGM16 (plain or binary) and
16-bit grayscale PNG are supported for interoperability. Integer formats
store invalid pixels as 0 and note the convention in a sidecar JSON file.
Parse failures raise FormatError naming the byte offset.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image

from .defocus import GrayImage
from .errors import FormatError
from .grid import DepthMap
from .pipeline import invert_disparity

DEPTH_FORMATS = ("pfm", "pgm16", "png16")


def _tokenize_header(data: bytes, count: int, start: int = 0):
    """Read whitespace-separated tokens, skipping '#' comments, with offsets."""
    tokens = []
    i = start
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i:i + 1].isspace():
            i += 1
        if i < n and data[i:i + 1] == b"#":
            while i < n and data[i:i + 1] != b"\n":
                i += 1
            continue
        if i >= n:
            raise FormatError("header ended prematurely", i)
        j = i
        while j < n and not data[j:j + 1].isspace():
            j += 1
        tokens.append((data[i:j], i))
        i = j
    return tokens, i


def _read_pfm(data: bytes) -> DepthMap:
    if data[:2] not in (b"Pf", b"PF"):
        raise FormatError(f"bad PFM magic {data[:2]!r}", 0)
    if data[:2] == b"PF":
        raise FormatError("3-channel PFM is unsupported (need grayscale 'Pf')", 0)
    tokens, pos = _tokenize_header(data, 3, start=2)
    (wtok, woff), (htok, hoff), (stok, soff) = tokens
    try:
        width, height = int(wtok), int(htok)
    except ValueError:
        raise FormatError(f"bad PFM dimensions {wtok!r} {htok!r}", woff) from None
    try:
        scale = float(stok)
    except ValueError:
        raise FormatError(f"bad PFM scale {stok!r}", soff) from None
    if width <= 0 or height <= 0:
        raise FormatError(f"non-positive PFM dimensions {width}x{height}", woff)
    if scale == 0:
        raise FormatError("PFM scale must be nonzero", soff)
    pos += 1  # single whitespace byte terminates the header
    need = width * height * 4
    payload = data[pos:pos + need]
    if len(payload) < need:
        raise FormatError(
            f"truncated PFM payload: need {need} bytes, have {len(payload)}",
            pos + len(payload))
    dtype = "<f4" if scale < 0 else ">f4"
    arr = np.frombuffer(payload, dtype=dtype).reshape(height, width)
    return DepthMap(np.flipud(arr).astype(np.float64))


def _write_pfm(depth: DepthMap) -> bytes:
    header = f"Pf\n{depth.width} {depth.height}\n-1.0\n".encode("ascii")
    body = np.flipud(depth.values.astype("<f4")).tobytes()
    return header + body


def _read_pgm16(data: bytes) -> DepthMap:
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"bad PGM magic {magic!r}", 0)
    tokens, pos = _tokenize_header(data, 3, start=2)
    (wtok, woff), (htok, hoff), (mtok, moff) = tokens
    try:
        width, height, maxval = int(wtok), int(htok), int(mtok)
    except ValueError:
        raise FormatError("non-integer PGM header field", woff) from None
    if width <= 0 or height <= 0:
        raise FormatError(f"non-positive PGM dimensions {width}x{height}", woff)
    if not 0 < maxval <= 65535:
        raise FormatError(f"PGM maxval {maxval} out of range [1, 65535]", moff)
    count = width * height
    if magic == b"P2":
        try:
            tokens, _ = _tokenize_header(data, count, start=pos)
        except FormatError as exc:
            raise FormatError(
                f"truncated plain PGM payload ({count} samples expected)",
                exc.offset) from None
        vals = np.empty(count, dtype=np.float64)
        for i, (tok, off) in enumerate(tokens):
            try:
                v = int(tok)
            except ValueError:
                raise FormatError(f"bad PGM sample {tok!r}", off) from None
            if not 0 <= v <= maxval:
                raise FormatError(f"PGM sample {v} exceeds maxval {maxval}", off)
            vals[i] = v
    else:
        pos += 1  # single whitespace byte after maxval
        width_bytes = 2 if maxval > 255 else 1
        need = count * width_bytes
        payload = data[pos:pos + need]
        if len(payload) < need:
            raise FormatError(
                f"truncated PGM payload: need {need} bytes, have {len(payload)}",
                pos + len(payload))
        dtype = ">u2" if maxval > 255 else "u1"
        vals = np.frombuffer(payload, dtype=dtype).astype(np.float64)
        if vals.max(initial=0) > maxval:
            raise FormatError(f"PGM sample exceeds maxval {maxval}", pos)
    return DepthMap(vals.reshape(height, width))


def _write_pgm16(depth: DepthMap) -> bytes:
    vals = np.rint(depth.values)
    if vals.min() < 0 or vals.max() > 65535:
        raise ValueError("depth values out of PGM16 range [0, 65535]")
    header = f"P5\n{depth.width} {depth.height}\n65535\n".encode("ascii")
    return header + vals.astype(">u2").tobytes()


def _read_png16(path: Path, depth_scale: float) -> DepthMap:
    try:
        with Image.open(path) as im:
            if im.mode not in ("I", "I;16", "I;16B", "I;16L"):
                raise FormatError(
                    f"PNG mode {im.mode!r} is not 16-bit grayscale", 0)
            arr = np.asarray(im, dtype=np.float64)
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(f"unreadable PNG: {exc}", 0) from None
    if arr.min() < 0 or arr.max() > 65535:
        raise FormatError("PNG sample values outside the 16-bit range", 0)
    return DepthMap(arr / 65535.0 * depth_scale)


def _write_png16(depth: DepthMap, path: Path, depth_scale: float) -> None:
    scaled = np.rint(depth.values / depth_scale * 65535.0)
    if scaled.min() < 0 or scaled.max() > 65535:
        raise ValueError("depth values out of PNG16 range after scaling")
    Image.fromarray(scaled.astype("<u2")).save(path, format="PNG")


def read_depth_file(path, fmt: str, invert_depth: bool = False,
                    depth_scale: float = 1.0,
                    zero_missing: bool = False) -> DepthMap:
    """Load a depth map; optional 0=missing masking and disparity inversion."""
    if fmt not in DEPTH_FORMATS:
        raise ValueError(f"format must be one of {DEPTH_FORMATS}")
    path = Path(path)
    if fmt == "png16":
        depth = _read_png16(path, depth_scale)
    else:
        data = path.read_bytes()
        depth = _read_pfm(data) if fmt == "pfm" else _read_pgm16(data)
    if zero_missing:
        depth = DepthMap(depth.values, depth.valid & (depth.values != 0))
    if invert_depth:
        depth = invert_disparity(depth)
    return depth


def write_depth_file(depth: DepthMap, path, fmt: str,
                     depth_scale: float = 1.0) -> None:
    """Write a depth map; invalid pixels are stored as 0.

    When the map has invalid pixels, a ``<name>.<ext>.json`` sidecar records
    the missing-value convention.
    """
    if fmt not in DEPTH_FORMATS:
        raise ValueError(f"format must be one of {DEPTH_FORMATS}")
    path = Path(path)
    if fmt == "pfm":
        path.write_bytes(_write_pfm(depth))
    elif fmt == "pgm16":
        path.write_bytes(_write_pgm16(depth))
    else:
        _write_png16(depth, path, depth_scale)
    invalid = int((~depth.valid).sum())
    if invalid:
        sidecar = path.with_name(path.name + ".json")
        sidecar.write_text(json.dumps(
            {"missing_value": 0, "invalid_pixels": invalid}) + "\n")


def has_missing_sidecar(path) -> bool:
    """True if a write_depth_file sidecar marks 0 as the missing value."""
    path = Path(path)
    sidecar = path.with_name(path.name + ".json")
    if not sidecar.exists():
        return False
    try:
        return json.loads(sidecar.read_text()).get("missing_value") == 0
    except (OSError, json.JSONDecodeError):
        return False


def infer_depth_format(path) -> str:
    suffix = Path(path).suffix.lower()
    table = {".pfm": "pfm", ".pgm": "pgm16", ".png": "png16"}
    if suffix not in table:
        raise ValueError(f"cannot infer depth format from suffix {suffix!r}")
    return table[suffix]


def read_gray_image(path) -> GrayImage:
    """Load any Pillow-readable image as luminance in [0, 1]."""
    try:
        with Image.open(path) as im:
            if im.mode in ("I", "I;16", "I;16B", "I;16L"):
                arr = np.asarray(im, dtype=np.float64) / 65535.0
            else:
                arr = np.asarray(im.convert("L"), dtype=np.float64) / 255.0
    except Exception as exc:
        raise FormatError(f"unreadable image: {exc}", 0) from None
    return GrayImage(np.clip(arr, 0.0, 1.0))
