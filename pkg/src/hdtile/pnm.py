"""Binary PPM (P6) / PGM (P5) codec, maxval 255, with lossless round trips."""

from __future__ import annotations

from .image import ImageBuffer

_MAGIC_CHANNELS = {b"P6": 3, b"P5": 1}
_WHITESPACE = b" \t\n\r\x0b\x0c"


class PnmError(ValueError):
    """Malformed or unsupported PPM/PGM content."""


def _skip_separators(data: bytes, pos: int) -> int:
    """Advance over the whitespace (and # comment lines) separating header tokens."""
    start = pos
    while pos < len(data):
        if data[pos] in _WHITESPACE:
            pos += 1
        elif data[pos] == ord("#"):
            while pos < len(data) and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    if pos == start:
        raise PnmError(f"expected whitespace at byte {pos}")
    return pos


def _read_int(data: bytes, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(data) and data[pos : pos + 1].isdigit():
        pos += 1
    if pos == start:
        raise PnmError(f"expected an integer at byte {start}")
    return int(data[start:pos]), pos


def decode_ppm(data: bytes) -> ImageBuffer:
    """Decode a binary PPM (P6) or PGM (P5) file with maxval 255."""
    magic = data[:2]
    if magic not in _MAGIC_CHANNELS:
        raise PnmError(f"unsupported magic {magic!r}, expected P6 or P5")
    channels = _MAGIC_CHANNELS[magic]

    pos = 2
    fields = []
    for _ in range(3):
        pos = _skip_separators(data, pos)
        value, pos = _read_int(data, pos)
        fields.append(value)
    width, height, maxval = fields

    if width < 1 or height < 1:
        raise PnmError(f"dimensions must be positive, got {width}x{height}")
    if maxval != 255:
        raise PnmError(f"unsupported maxval {maxval}, only 255 is handled")
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise PnmError("expected a single whitespace byte before the pixel payload")
    pos += 1

    expected = width * height * channels
    payload = data[pos : pos + expected]
    if len(payload) < expected:
        raise PnmError(f"truncated payload: expected {expected} bytes, got {len(payload)}")
    if len(data) > pos + expected:
        raise PnmError(f"trailing data after pixel payload at byte {pos + expected}")
    return ImageBuffer(width=width, height=height, channels=channels, data=payload)


def encode_ppm(img: ImageBuffer) -> bytes:
    """Encode to binary P6 (3 channels) or P5 (1 channel); inverse of decode_ppm."""
    magic = "P6" if img.channels == 3 else "P5"
    header = f"{magic}\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.data
