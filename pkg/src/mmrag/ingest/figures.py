"""Figure normalization: all images are converted to PNG."""

from __future__ import annotations

import io

from PIL import Image

from ..errors import ImageDecodeError

SUPPORTED_FORMATS = {"PNG", "JPEG", "TIFF", "GIF"}
CANONICAL_FORMAT = "PNG"


def normalize_figure(
    image_bytes: bytes,
    declared_format: str,
    pmid: str = "",
    figure_index: int = -1,
) -> tuple[bytes, str]:
    """Decode image bytes and re-encode as PNG, preserving pixel dimensions."""
    fmt = declared_format.upper()
    if fmt == "JPG":
        fmt = "JPEG"
    if fmt not in SUPPORTED_FORMATS:
        raise ImageDecodeError(f"unsupported image format {declared_format!r}", pmid, figure_index)
    try:
        img = Image.open(io.BytesIO(image_bytes))
        img.load()
    except Exception as exc:
        raise ImageDecodeError(f"cannot decode image: {exc}", pmid, figure_index) from exc
    out = io.BytesIO()
    img.save(out, format=CANONICAL_FORMAT)
    return out.getvalue(), CANONICAL_FORMAT
