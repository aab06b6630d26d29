import io

import pytest
from PIL import Image

from mmrag.errors import ImageDecodeError
from mmrag.ingest import Table, flatten_table, normalize_figure, summarize_table
from mmrag.pipeline import ScriptedBackend


def dims(data: bytes):
    img = Image.open(io.BytesIO(data))
    return img.size, img.format


def test_png_fixed_point(png_bytes):
    out, fmt = normalize_figure(png_bytes, "PNG")
    assert fmt == "PNG"
    assert dims(out) == ((2, 2), "PNG")


def test_jpeg_converted_to_png(jpeg_bytes):
    out, fmt = normalize_figure(jpeg_bytes, "JPEG")
    (w, h), decoded_fmt = dims(out)
    assert (w, h) == (2, 2)
    assert decoded_fmt == "PNG"


def test_truncated_bytes_error(png_bytes):
    with pytest.raises(ImageDecodeError) as err:
        normalize_figure(png_bytes[:10], "PNG", pmid="123", figure_index=2)
    assert err.value.pmid == "123"
    assert err.value.figure_index == 2


def test_unsupported_format_error():
    with pytest.raises(ImageDecodeError):
        normalize_figure(b"BM....", "BMP")


def test_table_fallback_flattening():
    table = Table(caption="Doses", rows=[["Drug", "mg"], ["Donepezil", "10"]])
    assert summarize_table(table) == "Doses; Drug | mg; Donepezil | 10"


def test_empty_table_caption_only():
    assert summarize_table(Table(caption="Doses", rows=[])) == "Doses"


def test_backend_summary_passthrough():
    backend = ScriptedBackend(response="S")
    assert summarize_table(Table(caption="C", rows=[["a"]]), backend=backend) == "S"


def test_backend_failure_falls_back():
    backend = ScriptedBackend(error=RuntimeError("down"))
    table = Table(caption="C", rows=[["a", "b"]])
    assert summarize_table(table, backend=backend) == flatten_table(table) == "C; a | b"
