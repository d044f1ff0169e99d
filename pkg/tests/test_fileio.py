import struct
import zlib

import numpy as np
import pytest

import spatialproc as sp
from spatialproc import ColorSpace
from spatialproc.errors import FormatError


@pytest.fixture
def gray3x3():
    return sp.gray_image(np.arange(9, dtype=np.uint8).reshape(3, 3) * 20)


@pytest.fixture
def rgb3x3(rng):
    return sp.color_image(rng.integers(0, 256, (3, 3, 3), dtype=np.uint8))


class TestRoundTrips:
    @pytest.mark.parametrize("ext", ["png", "pgm"])
    def test_gray_round_trip(self, tmp_path, gray3x3, ext):
        path = tmp_path / f"img.{ext}"
        sp.save_image(gray3x3, path)
        loaded = sp.load_image(path)
        assert loaded.space is ColorSpace.GRAY
        assert (loaded.data == gray3x3.data).all()

    @pytest.mark.parametrize("ext", ["png", "ppm"])
    def test_rgb_round_trip(self, tmp_path, rgb3x3, ext):
        path = tmp_path / f"img.{ext}"
        sp.save_image(rgb3x3, path)
        loaded = sp.load_image(path)
        assert loaded.space is ColorSpace.RGB
        assert (loaded.data == rgb3x3.data).all()

    def test_binary_saves_as_gray(self, tmp_path):
        mask = sp.binary_image(np.array([[0, 255], [255, 0]], np.uint8))
        sp.save_image(mask, tmp_path / "m.png")
        assert (sp.load_image(tmp_path / "m.png").data == mask.data).all()

    def test_save_then_save_is_identical(self, tmp_path, gray3x3):
        sp.save_image(gray3x3, tmp_path / "a.png")
        sp.save_image(gray3x3, tmp_path / "b.png")
        assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


class TestPnm:
    def test_parse_handbuilt_p5(self, tmp_path):
        raw = b"P5\n2 2\n255\n" + bytes([1, 2, 3, 4])
        path = tmp_path / "f.pgm"
        path.write_bytes(raw)
        img = sp.load_image(path)
        assert img.data.tolist() == [[1, 2], [3, 4]]

    def test_comments_and_whitespace(self, tmp_path):
        raw = b"P5 # magic\n# a comment line\n 2\t2 \n255\n" + bytes([9, 8, 7, 6])
        path = tmp_path / "f.pgm"
        path.write_bytes(raw)
        assert sp.load_image(path).data.tolist() == [[9, 8], [7, 6]]

    def test_truncated_raster(self, tmp_path):
        path = tmp_path / "f.pgm"
        path.write_bytes(b"P5\n4 4\n255\n" + bytes(3))
        with pytest.raises(FormatError, match="truncated"):
            sp.load_image(path)

    def test_wrong_maxval(self, tmp_path):
        path = tmp_path / "f.pgm"
        path.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
        with pytest.raises(FormatError, match="maxval"):
            sp.load_image(path)

    def test_pgm_rejects_color(self, tmp_path, rgb3x3):
        with pytest.raises(FormatError):
            sp.save_image(rgb3x3, tmp_path / "x.pgm")


def _chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF)
    )


def _png_blob(width, height, color_type, scanlines) -> bytes:
    ihdr = struct.pack(">IIBBBBB", width, height, 8, color_type, 0, 0, 0)
    return (
        b"\x89PNG\r\n\x1a\n"
        + _chunk(b"IHDR", ihdr)
        + _chunk(b"IDAT", zlib.compress(scanlines))
        + _chunk(b"IEND", b"")
    )


class TestPngDecoder:
    def test_all_row_filters(self, tmp_path, rng):
        # five rows, one per PNG filter type, rebuilt against a known raster
        raster = rng.integers(0, 256, (5, 6), dtype=np.uint8)
        rows = []
        prev = np.zeros(6, np.int16)
        for y, ftype in enumerate([0, 1, 2, 3, 4]):
            cur = raster[y].astype(np.int16)
            if ftype == 0:
                enc = cur.copy()
            elif ftype == 1:
                enc = cur.copy()
                enc[1:] = (cur[1:] - cur[:-1]) % 256
            elif ftype == 2:
                enc = (cur - prev) % 256
            elif ftype == 3:
                enc = cur.copy()
                for i in range(6):
                    left = int(cur[i - 1]) if i else 0
                    enc[i] = (int(cur[i]) - ((left + int(prev[i])) >> 1)) % 256
            else:
                enc = cur.copy()
                for i in range(6):
                    left = int(cur[i - 1]) if i else 0
                    up = int(prev[i])
                    ul = int(prev[i - 1]) if i else 0
                    p = left + up - ul
                    pa, pb, pc = abs(p - left), abs(p - up), abs(p - ul)
                    if pa <= pb and pa <= pc:
                        pred = left
                    elif pb <= pc:
                        pred = up
                    else:
                        pred = ul
                    enc[i] = (int(cur[i]) - pred) % 256
            rows.append(bytes([ftype]) + bytes(enc.astype(np.uint8)))
            prev = cur
        path = tmp_path / "filters.png"
        path.write_bytes(_png_blob(6, 5, 0, b"".join(rows)))
        assert (sp.load_image(path).data == raster).all()

    def test_bad_crc(self, tmp_path):
        img = sp.gray_image(np.zeros((2, 2), np.uint8))
        path = tmp_path / "x.png"
        sp.save_image(img, path)
        blob = bytearray(path.read_bytes())
        blob[-5] ^= 0xFF  # corrupt IEND CRC
        path.write_bytes(bytes(blob))
        with pytest.raises(FormatError, match="CRC"):
            sp.load_image(path)

    def test_unsupported_bit_depth(self, tmp_path):
        ihdr = struct.pack(">IIBBBBB", 1, 1, 16, 0, 0, 0, 0)
        blob = b"\x89PNG\r\n\x1a\n" + _chunk(b"IHDR", ihdr) + _chunk(b"IEND", b"")
        path = tmp_path / "deep.png"
        path.write_bytes(blob)
        with pytest.raises(FormatError, match="bit depth"):
            sp.load_image(path)

    def test_unsupported_color_type(self, tmp_path):
        ihdr = struct.pack(">IIBBBBB", 1, 1, 8, 3, 0, 0, 0)  # palette
        path = tmp_path / "pal.png"
        path.write_bytes(b"\x89PNG\r\n\x1a\n" + _chunk(b"IHDR", ihdr) + _chunk(b"IEND", b""))
        with pytest.raises(FormatError, match="color type"):
            sp.load_image(path)

    def test_ancillary_chunks_skipped(self, tmp_path):
        raster = b"\x00" + bytes([5, 6]) + b"\x00" + bytes([7, 8])
        blob = (
            b"\x89PNG\r\n\x1a\n"
            + _chunk(b"IHDR", struct.pack(">IIBBBBB", 2, 2, 8, 0, 0, 0, 0))
            + _chunk(b"tEXt", b"comment\x00hi")
            + _chunk(b"IDAT", zlib.compress(raster))
            + _chunk(b"IEND", b"")
        )
        path = tmp_path / "anc.png"
        path.write_bytes(blob)
        assert sp.load_image(path).data.tolist() == [[5, 6], [7, 8]]


class TestErrors:
    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            sp.load_image(tmp_path / "nope.png")

    def test_unknown_format(self, tmp_path):
        path = tmp_path / "x.png"
        path.write_bytes(b"GIF89a......")
        with pytest.raises(FormatError, match="unsupported"):
            sp.load_image(path)

    def test_unknown_extension(self, tmp_path, gray3x3):
        with pytest.raises(FormatError, match="extension"):
            sp.save_image(gray3x3, tmp_path / "img.bmp")

    def test_bgr_needs_conversion(self, tmp_path):
        bgr = sp.color_image(np.zeros((2, 2, 3), np.uint8), ColorSpace.BGR)
        with pytest.raises(FormatError, match="convert"):
            sp.save_image(bgr, tmp_path / "x.png")
