"""Image file I/O: 8-bit PNG (gray/RGB), binary PGM (P5) and PPM (P6).

Both codecs are self-contained. The PNG writer emits non-interlaced
images with per-row filter 0; the reader handles all five standard row
filters but rejects bit depths other than 8, palette/alpha color types,
and interlacing. Save followed by load round-trips pixels bit-exactly.
"""

from __future__ import annotations

import os
import struct
import zlib

import numpy as np

from .buffer import ColorSpace, ImageBuffer
from .errors import FormatError

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def load_image(path: str | os.PathLike) -> ImageBuffer:
    """Load a PNG/PGM/PPM file; gray files tag GRAY, color files RGB."""
    path = os.fspath(path)
    if not os.path.exists(path):
        raise FileNotFoundError(f"no such image file: {path}")
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob.startswith(_PNG_SIGNATURE):
        return _decode_png(blob)
    if blob[:2] in (b"P5", b"P6"):
        return _decode_pnm(blob)
    raise FormatError(f"unsupported image format in {path} (expected PNG, PGM, or PPM)")


def save_image(img: ImageBuffer, path: str | os.PathLike) -> None:
    """Write an image; format chosen by extension (.png/.pgm/.ppm).

    Gray and Binary buffers are stored as single-channel files, RGB as
    three-channel. Other color spaces must be converted first.
    """
    path = os.fspath(path)
    ext = os.path.splitext(path)[1].lower()
    if img.space not in (ColorSpace.GRAY, ColorSpace.BINARY, ColorSpace.RGB):
        raise FormatError(
            f"cannot save {img.space.value} data directly; convert to gray or RGB first"
        )
    if ext == ".png":
        blob = _encode_png(img)
    elif ext == ".pgm":
        if img.channels != 1:
            raise FormatError("PGM stores single-channel images only")
        blob = b"P5\n%d %d\n255\n" % (img.width, img.height) + img.data.tobytes()
    elif ext == ".ppm":
        if img.channels != 3:
            raise FormatError("PPM stores 3-channel images only")
        blob = b"P6\n%d %d\n255\n" % (img.width, img.height) + img.data.tobytes()
    else:
        raise FormatError(f"unsupported output extension '{ext}' (use .png/.pgm/.ppm)")
    with open(path, "wb") as fh:
        fh.write(blob)


# -- PNM ------------------------------------------------------------------

def _decode_pnm(blob: bytes) -> ImageBuffer:
    magic = blob[:2]
    channels = 1 if magic == b"P5" else 3
    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(blob) and blob[pos : pos + 1].isspace():
            pos += 1
        if pos < len(blob) and blob[pos : pos + 1] == b"#":
            while pos < len(blob) and blob[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(blob) and not blob[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise FormatError("truncated PNM header")
        token = blob[start:pos]
        if not token.isdigit():
            raise FormatError(f"malformed PNM header token {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if maxval != 255:
        raise FormatError(f"only maxval 255 PNM supported, got {maxval}")
    if width < 1 or height < 1:
        raise FormatError(f"bad PNM dimensions {width}x{height}")
    pos += 1  # single whitespace byte separates header from raster
    need = width * height * channels
    raster = blob[pos : pos + need]
    if len(raster) != need:
        raise FormatError(f"PNM raster truncated: need {need} bytes, have {len(raster)}")
    arr = np.frombuffer(raster, dtype=np.uint8)
    if channels == 1:
        return ImageBuffer(ColorSpace.GRAY, arr.reshape(height, width))
    return ImageBuffer(ColorSpace.RGB, arr.reshape(height, width, 3))


# -- PNG ------------------------------------------------------------------

def _encode_png(img: ImageBuffer) -> bytes:
    color_type = 0 if img.channels == 1 else 2
    raw = img.data.reshape(img.height, -1)
    scanlines = bytearray()
    for row in raw:
        scanlines.append(0)  # filter type 0: raw bytes
        scanlines.extend(row.tobytes())

    out = bytearray(_PNG_SIGNATURE)
    ihdr = struct.pack(">IIBBBBB", img.width, img.height, 8, color_type, 0, 0, 0)
    _append_chunk(out, b"IHDR", ihdr)
    _append_chunk(out, b"IDAT", zlib.compress(bytes(scanlines)))
    _append_chunk(out, b"IEND", b"")
    return bytes(out)


def _append_chunk(out: bytearray, tag: bytes, payload: bytes) -> None:
    out.extend(struct.pack(">I", len(payload)))
    out.extend(tag)
    out.extend(payload)
    out.extend(struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF))


def _decode_png(blob: bytes) -> ImageBuffer:
    pos = len(_PNG_SIGNATURE)
    header = None
    idat = bytearray()
    while pos < len(blob):
        if pos + 8 > len(blob):
            raise FormatError("truncated PNG chunk header")
        (length,) = struct.unpack(">I", blob[pos : pos + 4])
        tag = blob[pos + 4 : pos + 8]
        payload = blob[pos + 8 : pos + 8 + length]
        if len(payload) != length or pos + 12 + length > len(blob):
            raise FormatError("truncated PNG chunk payload")
        (crc,) = struct.unpack(">I", blob[pos + 8 + length : pos + 12 + length])
        if zlib.crc32(tag + payload) & 0xFFFFFFFF != crc:
            raise FormatError(f"PNG chunk {tag!r} fails CRC check")
        pos += 12 + length

        if tag == b"IHDR":
            header = struct.unpack(">IIBBBBB", payload)
        elif tag == b"IDAT":
            idat.extend(payload)
        elif tag == b"IEND":
            break
        # ancillary chunks are skipped

    if header is None:
        raise FormatError("PNG missing IHDR chunk")
    width, height, depth, color_type, comp, filt, interlace = header
    if depth != 8:
        raise FormatError(f"only 8-bit PNG supported, got bit depth {depth}")
    if color_type not in (0, 2):
        raise FormatError(f"only gray/RGB PNG supported, got color type {color_type}")
    if comp != 0 or filt != 0:
        raise FormatError("nonstandard PNG compression/filter method")
    if interlace != 0:
        raise FormatError("interlaced PNG not supported")
    if not idat:
        raise FormatError("PNG missing IDAT data")

    channels = 1 if color_type == 0 else 3
    try:
        raw = zlib.decompress(bytes(idat))
    except zlib.error as exc:
        raise FormatError(f"PNG IDAT inflate failed: {exc}") from exc
    stride = width * channels
    if len(raw) != (stride + 1) * height:
        raise FormatError("PNG pixel data has wrong length")

    out = np.zeros((height, stride), dtype=np.uint8)
    prev = np.zeros(stride, dtype=np.uint8)
    for y in range(height):
        ftype = raw[y * (stride + 1)]
        line = bytearray(raw[y * (stride + 1) + 1 : (y + 1) * (stride + 1)])
        _unfilter_row(line, prev, ftype, channels)
        out[y] = prev = np.frombuffer(bytes(line), dtype=np.uint8)
    if channels == 1:
        return ImageBuffer(ColorSpace.GRAY, out)
    return ImageBuffer(ColorSpace.RGB, out.reshape(height, width, 3))


def _unfilter_row(line: bytearray, prev: np.ndarray, ftype: int, bpp: int) -> None:
    n = len(line)
    if ftype == 0:
        return
    if ftype == 1:  # Sub
        for i in range(bpp, n):
            line[i] = (line[i] + line[i - bpp]) & 0xFF
    elif ftype == 2:  # Up
        for i in range(n):
            line[i] = (line[i] + prev[i]) & 0xFF
    elif ftype == 3:  # Average
        for i in range(n):
            left = line[i - bpp] if i >= bpp else 0
            line[i] = (line[i] + ((left + int(prev[i])) >> 1)) & 0xFF
    elif ftype == 4:  # Paeth
        for i in range(n):
            left = line[i - bpp] if i >= bpp else 0
            up = int(prev[i])
            ul = int(prev[i - bpp]) if i >= bpp else 0
            line[i] = (line[i] + _paeth(left, up, ul)) & 0xFF
    else:
        raise FormatError(f"unknown PNG row filter {ftype}")


def _paeth(a: int, b: int, c: int) -> int:
    p = a + b - c
    pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c
