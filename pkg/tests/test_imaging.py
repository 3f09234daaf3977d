import os, tempfile
import numpy as np
import pytest
from PIL import Image
from hypothesis import given, settings
import hypothesis.strategies as st
from hypothesis.extra.numpy import arrays

from imaging import RasterImage, PixelRef, load_image, save_image, to_grayscale
from misc import IoError, UnsupportedFormat, BitDepthUnsupported, ChannelMismatch


def test_raster_shapes():
    gray = RasterImage(np.zeros((4, 5), dtype=np.uint8))
    assert gray.shape == (4, 5, 1)
    assert (gray.width, gray.height, gray.channels) == (5, 4, 1)

    rgb = RasterImage([[[1, 2, 3], [4, 5, 6]]])
    assert rgb.shape == (1, 2, 3)
    assert rgb.samples.tolist() == [1, 2, 3, 4, 5, 6]
    assert rgb.npixels == 2

@pytest.mark.parametrize("shape", [(2, 2, 2), (2, 2, 4), (2,), (2, 2, 3, 1)])
def test_raster_rejects_channels(shape):
    with pytest.raises(ChannelMismatch):
        RasterImage(np.zeros(shape, dtype=np.uint8))

@pytest.mark.parametrize("pixels", [[[256]], [[-1]], [[0.5]]])
def test_raster_rejects_samples(pixels):
    with pytest.raises(ValueError):
        RasterImage(pixels)

def test_raster_is_immutable():
    img = RasterImage(np.zeros((2, 2, 3), dtype=np.uint8))
    with pytest.raises(ValueError):
        img.pixels[0, 0, 0] = 1
    source = np.zeros((2, 2), dtype=np.uint8)
    img = RasterImage(source)
    source[0, 0] = 9
    assert img.pixels[0, 0, 0] == 0

def test_from_samples_and_pixel_ref():
    img = RasterImage.from_samples(3, 2, 3, range(18))
    assert img.pixels[1, 2].tolist() == [15, 16, 17]
    assert img.pixel_ref(4) == PixelRef(1, 1, 4)
    with pytest.raises(IndexError):
        img.pixel_ref(6)
    with pytest.raises(ValueError):
        RasterImage.from_samples(3, 2, 3, range(17))

@pytest.mark.parametrize("ext,channels", [(".png", 3), (".png", 1), (".bmp", 3), (".bmp", 1), \
    (".ppm", 3), (".pgm", 1)])
def test_save_load_identity(tmp_path, rng, ext, channels):
    img = RasterImage(rng.integers(0, 256, size=(7, 9, channels), dtype=np.uint8))
    path = str(tmp_path / f"img{ext}")
    save_image(img, path)
    assert load_image(path) == img

@settings(max_examples=25, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12), st.sampled_from([1, 3]))))
def test_png_round_trip(pixels):
    img = RasterImage(pixels)
    with tempfile.TemporaryDirectory() as tmp_dir:
        path = os.path.join(tmp_dir, "img.png")
        save_image(img, path)
        assert load_image(path) == img

def test_load_missing(tmp_path):
    with pytest.raises(IoError) as e_info:
        load_image(str(tmp_path / "none.png"))
    assert e_info.value.exit_code == 5

def test_load_lossy_format(tmp_path):
    path = str(tmp_path / "img.jpg")
    Image.new("RGB", (8, 8), (100, 100, 100)).save(path, format="JPEG")
    with pytest.raises(UnsupportedFormat):
        load_image(path)

def test_load_garbage(tmp_path):
    path = tmp_path / "img.png"
    path.write_bytes(b"not an image at all")
    with pytest.raises(UnsupportedFormat):
        load_image(str(path))

def test_load_16_bit(tmp_path):
    path = str(tmp_path / "wide.png")
    Image.fromarray(np.full((4, 4), 1000, dtype=np.uint16)).save(path, format="PNG")
    with pytest.raises(BitDepthUnsupported):
        load_image(path)

def test_alpha_and_palette_become_rgb(tmp_path):
    path = str(tmp_path / "alpha.png")
    Image.new("RGBA", (3, 2), (10, 20, 30, 40)).save(path)
    img = load_image(path)
    assert img.channels == 3
    assert img.pixels[0, 0].tolist() == [10, 20, 30]

    path = str(tmp_path / "palette.png")
    Image.new("RGB", (3, 2), (10, 20, 30)).convert("P").save(path)
    assert load_image(path).channels == 3

@pytest.mark.parametrize("filename", ["out.jpg", "out.gif", "out"])
def test_save_lossy_extension(tmp_path, filename):
    img = RasterImage(np.zeros((2, 2, 3), dtype=np.uint8))
    with pytest.raises(UnsupportedFormat):
        save_image(img, str(tmp_path / filename))
    assert not os.path.exists(tmp_path / filename)

def test_save_rgb_as_pgm(tmp_path):
    img = RasterImage(np.zeros((2, 2, 3), dtype=np.uint8))
    with pytest.raises(UnsupportedFormat):
        save_image(img, str(tmp_path / "out.pgm"))

def test_to_grayscale():
    img = RasterImage([[[255, 0, 0], [0, 255, 0], [0, 0, 255], [128, 128, 128], [255, 255, 255]]])
    gray = to_grayscale(img)
    assert gray.channels == 1
    assert gray.samples.tolist() == [76, 150, 29, 128, 255]
    assert to_grayscale(gray) is gray
