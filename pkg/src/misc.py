from functools import wraps
import sys, time, os

# Quinary perturbation set
quinary = (-2, -1, 0, 1, 2)
nquinary = len(quinary)
ncombinations = nquinary ** 3

# A pixel is usable when every channel stays inside [0, 255] after any perturbation
usable_min = 2
usable_max = 253

# Lossless raster formats and their Pillow writers
lossless_ext = {".png" : "PNG", ".bmp" : "BMP", ".ppm" : "PPM", ".pgm" : "PPM"}
lossless_fmt = ["PNG", "BMP", "PPM"]

# SSIM parameters
ssim_win = 11
ssim_sigma = 1.5
ssim_k1 = 0.01
ssim_k2 = 0.03
max_intensity = 255

# Heatmap magnitude range, |dR| + |dG| + |dB|
heatmap_max = 6


class StegoError(Exception):
    """ Base class of every error raised by PyQSteg

        :param string message: Formatted error message
    """
    exit_code = 1

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    @property
    def code(self):
        return self.__class__.__name__


class CapacityExceeded(StegoError, ValueError):
    exit_code = 2

class UnmappableCharacter(StegoError, ValueError):
    exit_code = 3

class ReservedSymbol(StegoError, ValueError):
    exit_code = 3

class UnassignedCombination(StegoError, ValueError):
    exit_code = 4

class DeltaOutOfRange(StegoError, ValueError):
    exit_code = 4

class MissingTerminator(StegoError, ValueError):
    exit_code = 4

class IncompleteGroup(StegoError, ValueError):
    exit_code = 4

class DimensionMismatch(StegoError, ValueError):
    exit_code = 4

class ChannelMismatch(StegoError, ValueError):
    exit_code = 4

class IoError(StegoError, OSError):
    exit_code = 5

class UnsupportedFormat(StegoError, ValueError):
    exit_code = 5

class BitDepthUnsupported(StegoError, ValueError):
    exit_code = 5

class ImageTooSmall(StegoError, ValueError):
    exit_code = 5

class EmptyReference(StegoError, ValueError):
    exit_code = 5

class UnknownMethod(StegoError, ValueError):
    exit_code = 5

class UsageError(StegoError):
    exit_code = 64


def elapsed_time(func):
    @wraps(func)
    def check(*args, **kwargs):
        tbegin = time.time()
        res = func(*args, **kwargs)
        tend = time.time()
        print (f"{func.__name__} : Elapsed time = {tend - tbegin} seconds", flush=True)
        return res
    return check

def call_name():
    return sys._getframe(1).f_code.co_name

def typewriter(string, dir_name, filename, mode):
    """ Function to open/write any string in dir_name/filename

        :param string string: Text string for output file
        :param string dir_name: Directory of output file
        :param string filename: Filename of output file
        :param string mode: Fileopen mode
    """
    tmp_name = os.path.join(dir_name, filename)
    with open(tmp_name, mode, encoding="utf-8", newline="\n") as f:
        f.write(string + "\n")
