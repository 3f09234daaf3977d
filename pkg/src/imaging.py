from misc import lossless_ext, lossless_fmt, call_name, IoError, UnsupportedFormat, BitDepthUnsupported, ChannelMismatch
from dataclasses import dataclass
from PIL import Image, UnidentifiedImageError
import os
import numpy as np

png_signature = b"\x89PNG\r\n\x1a\n"

# Pillow modes holding more than 8 bits per sample
wide_modes = ["I", "I;16", "I;16B", "I;16L", "I;16N", "F"]


@dataclass(frozen=True)
class PixelRef:
    """ Position of a pixel in a raster

        :param integer x: Column index
        :param integer y: Row index
        :param integer linear: Row-major pixel index, y * width + x
    """
    x: int
    y: int
    linear: int


class RasterImage(object):
    """ 8-bit raster with 1 (grayscale) or 3 (RGB) channels, immutable once built

        :param pixels: Array of shape (height, width) or (height, width, channels)
        :type pixels: numpy.ndarray or nested list
    """
    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if (arr.ndim == 2):
            arr = arr[:, :, np.newaxis]

        if (arr.ndim != 3 or not arr.shape[2] in [1, 3]):
            error_message = "Raster must have shape (height, width) or (height, width, 1 or 3)!"
            error_vars = f"shape = {arr.shape}"
            raise ChannelMismatch (f"( {self.__class__.__name__}.{call_name()} ) {error_message} ( {error_vars} )", \
                shape=arr.shape)

        if (arr.shape[0] < 1 or arr.shape[1] < 1):
            error_message = "Raster must hold at least one pixel!"
            error_vars = f"shape = {arr.shape}"
            raise ValueError (f"( {self.__class__.__name__}.{call_name()} ) {error_message} ( {error_vars} )")

        if (arr.dtype != np.uint8):
            if (arr.size > 0 and (not np.issubdtype(arr.dtype, np.integer) or arr.min() < 0 or arr.max() > 255)):
                error_message = "Samples must be integers in [0, 255]!"
                error_vars = f"dtype = {arr.dtype}, min = {arr.min()}, max = {arr.max()}"
                raise ValueError (f"( {self.__class__.__name__}.{call_name()} ) {error_message} ( {error_vars} )")
            arr = arr.astype(np.uint8)

        self.pixels = np.array(arr, dtype=np.uint8, copy=True)
        self.pixels.flags.writeable = False

        self.height, self.width, self.channels = self.pixels.shape

    @classmethod
    def from_samples(cls, width, height, channels, samples):
        """ Build a raster from a row-major sample sequence

            :param integer width: Number of columns
            :param integer height: Number of rows
            :param integer channels: 1 or 3
            :param samples: Row-major samples, length width * height * channels
        """
        samples = np.asarray(samples)
        if (samples.size != width * height * channels):
            error_message = "Sample count does not match the dimensions!"
            error_vars = f"len(samples) = {samples.size}, width * height * channels = {width * height * channels}"
            raise ValueError (f"( {cls.__name__}.{call_name()} ) {error_message} ( {error_vars} )")
        return cls(samples.reshape(height, width, channels))

    @property
    def samples(self):
        """ Row-major samples as a flat read-only array
        """
        return self.pixels.reshape(-1)

    @property
    def npixels(self):
        return self.width * self.height

    @property
    def shape(self):
        return (self.height, self.width, self.channels)

    def pixel_ref(self, linear):
        """ PixelRef of a row-major pixel index

            :param integer linear: Row-major pixel index
        """
        if not (0 <= linear < self.npixels):
            error_message = "Pixel index out of range!"
            error_vars = f"linear = {linear}, npixels = {self.npixels}"
            raise IndexError (f"( {self.__class__.__name__}.{call_name()} ) {error_message} ( {error_vars} )")
        y, x = divmod(int(linear), self.width)
        return PixelRef(x, y, int(linear))

    def __eq__(self, other):
        if (not isinstance(other, RasterImage)):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.pixels, other.pixels)

    __hash__ = None

    def __repr__(self):
        return f"RasterImage(width={self.width}, height={self.height}, channels={self.channels})"


def _png_bit_depth(path):
    """ Bit depth read from the IHDR chunk, or None for non-PNG files
    """
    with open(path, "rb") as f:
        header = f.read(25)
    if (len(header) == 25 and header[:8] == png_signature and header[12:16] == b"IHDR"):
        return header[24]
    return None

def load_image(path):
    """ Decode a PNG, BMP or PPM/PGM file into a RasterImage

        :param string path: Image file path
    """
    path = os.path.expanduser(path)
    if (not os.path.isfile(path)):
        error_message = "Image file not found!"
        error_vars = f"path = {path}"
        raise IoError (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path)

    try:
        bit_depth = _png_bit_depth(path)
        with Image.open(path) as img:
            fmt = img.format
            if not (fmt in lossless_fmt):
                error_message = "Only lossless PNG, BMP and PPM/PGM rasters are supported!"
                error_vars = f"path = {path}, format = {fmt}"
                raise UnsupportedFormat (f"( {call_name()} ) {error_message} ( {error_vars} )", \
                    path=path, format=fmt)

            if (bit_depth == 16 or img.mode in wide_modes):
                error_message = "Only 8-bit samples are supported!"
                error_vars = f"path = {path}, mode = {img.mode}, bit_depth = {bit_depth}"
                raise BitDepthUnsupported (f"( {call_name()} ) {error_message} ( {error_vars} )", \
                    path=path, mode=img.mode)

            img.load()
            if (img.mode == "1"):
                img = img.convert("L")
            elif (img.mode != "L" and img.mode != "RGB"):
                # Palette and alpha images become plain RGB
                img = img.convert("RGB")
            arr = np.asarray(img, dtype=np.uint8)
    except UnidentifiedImageError:
        error_message = "File is not a recognised raster image!"
        error_vars = f"path = {path}"
        raise UnsupportedFormat (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path, format=None)
    except OSError as e_message:
        error_message = "Failed to read image!"
        error_vars = f"path = {path}, reason = {e_message}"
        raise IoError (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path)

    return RasterImage(arr)

def save_image(img, path):
    """ Write a RasterImage to a lossless file chosen by extension (.png, .bmp, .ppm, .pgm)

        :param object img: RasterImage to write
        :param string path: Output file path
    """
    path = os.path.expanduser(path)
    ext = os.path.splitext(path)[1].lower()
    if not (ext in lossless_ext):
        error_message = "Output must use a lossless raster extension!"
        error_vars = f"path = {path}, allowed = {', '.join(lossless_ext)}"
        raise UnsupportedFormat (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path, format=ext)

    if (ext == ".pgm" and img.channels != 1):
        error_message = "PGM output holds grayscale rasters only!"
        error_vars = f"path = {path}, channels = {img.channels}"
        raise UnsupportedFormat (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path, format=ext)

    if (img.channels == 1):
        arr = np.ascontiguousarray(img.pixels[:, :, 0])
    else:
        arr = np.ascontiguousarray(img.pixels)

    try:
        Image.fromarray(arr).save(path, format=lossless_ext[ext])
    except OSError as e_message:
        error_message = "Failed to write image!"
        error_vars = f"path = {path}, reason = {e_message}"
        raise IoError (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path)

def to_grayscale(img):
    """ Integer luma of an RGB raster, Y = (299 R + 587 G + 114 B + 500) // 1000

        :param object img: RasterImage to convert
    """
    if (img.channels == 1):
        return img
    rgb = img.pixels.astype(np.int64)
    luma = (299 * rgb[:, :, 0] + 587 * rgb[:, :, 1] + 114 * rgb[:, :, 2] + 500) // 1000
    return RasterImage(luma.astype(np.uint8))
