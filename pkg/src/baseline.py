from imaging import RasterImage
from metrics import check_pair
from misc import call_name, CapacityExceeded, MissingTerminator, UnknownMethod, ReservedSymbol
from dataclasses import dataclass
import math
import numpy as np

nbits = 8


@dataclass(frozen=True)
class MethodProfile:
    """ Pixels a spatial-domain method spends on one character

        :param string method: Method name
        :param integer pixels_per_char_gray: Pixels per character of a grayscale cover
        :param integer pixels_per_char_rgb: Pixels per character of an RGB cover
    """
    method: str
    pixels_per_char_gray: int
    pixels_per_char_rgb: int

    def __post_init__(self):
        if (self.pixels_per_char_gray < 1 or self.pixels_per_char_rgb < 1):
            error_message = "Pixel counts must be positive!"
            error_vars = f"gray = {self.pixels_per_char_gray}, rgb = {self.pixels_per_char_rgb}"
            raise ValueError (f"( MethodProfile.{call_name()} ) {error_message} ( {error_vars} )")


# MSB substitution only has a pixel count; it has no working encoder
method_profiles = {
    "lsb" : MethodProfile("LSB", 8, 3),
    "msb" : MethodProfile("MSB", 8, 3),
    "proposed" : MethodProfile("Proposed", 3, 1),
}


def lsb_capacity(cover):
    """ Bytes a cover can carry with one bit per sample, terminator excluded

        :param object cover: Cover RasterImage
    """
    return max(cover.samples.size // nbits - 1, 0)

def lsb_encode(cover, text):
    """ Write the bits of text and a 0x00 terminator into successive sample LSBs,
        most significant bit first, row-major with R before G before B

        :param object cover: Cover RasterImage
        :param bytes text: Message bytes
    """
    text = bytes(text)
    if (b"\x00" in text):
        error_message = "Message must not contain the 0x00 terminator byte!"
        error_vars = f"position = {text.index(0)}"
        raise ReservedSymbol (f"( {call_name()} ) {error_message} ( {error_vars} )", \
            position=text.index(0))

    available = lsb_capacity(cover)
    if (len(text) > available):
        error_message = "Message does not fit in the sample LSBs of the cover!"
        error_vars = f"needed = {len(text)}, available = {available}"
        raise CapacityExceeded (f"( {call_name()} ) {error_message} ( {error_vars} )", \
            needed=len(text), available=available)

    bits = np.unpackbits(np.frombuffer(text + b"\x00", dtype=np.uint8))
    samples = cover.samples.copy()
    samples[:len(bits)] = (samples[:len(bits)] & 0xFE) | bits
    return RasterImage.from_samples(cover.width, cover.height, cover.channels, samples)

def lsb_decode(stego):
    """ Read sample LSBs back into bytes up to the first 0x00

        :param object stego: Stego RasterImage
    """
    bits = stego.samples & 1
    nbyte = bits.size // nbits
    data = np.packbits(bits[:nbyte * nbits])

    ends = np.flatnonzero(data == 0)
    if (len(ends) == 0):
        error_message = "Sample LSBs ran out before a 0x00 terminator!"
        error_vars = f"bytes = {nbyte}, leftover bits = {bits.size - nbyte * nbits}"
        raise MissingTerminator (f"( {call_name()} ) {error_message} ( {error_vars} )", slots=nbyte)

    return data[:ends[0]].tobytes()

def lsb_footprint(cover, nbyte):
    """ Pixels and samples spanned by an LSB message of nbyte bytes plus terminator

        :param object cover: Cover RasterImage
        :param integer nbyte: Message length in bytes
    """
    nsample = nbits * (nbyte + 1)
    return math.ceil(nsample / cover.channels), nsample

def pixels_per_character(method, channels):
    """ Pixel cost of one character for a method and a channel count

        :param string method: LSB, MSB or Proposed, case-insensitive
        :param integer channels: 1 for grayscale, 3 for RGB
    """
    key = str(method).lower()
    if not (key in method_profiles):
        error_message = "Unknown embedding method!"
        error_vars = f"method = {method}, known = {', '.join([p.method for p in method_profiles.values()])}"
        raise UnknownMethod (f"( {call_name()} ) {error_message} ( {error_vars} )", method=method)

    if not (channels in [1, 3]):
        error_message = "Channel count must be 1 or 3!"
        error_vars = f"channels = {channels}"
        raise ValueError (f"( {call_name()} ) {error_message} ( {error_vars} )")

    profile = method_profiles[key]
    if (channels == 1):
        return profile.pixels_per_char_gray
    return profile.pixels_per_char_rgb

def modified_counts(cover, stego):
    """ Number of pixels and of samples that differ between cover and stego

        :param object cover: Cover RasterImage
        :param object stego: Stego RasterImage
    """
    check_pair(cover, stego)
    changed = cover.pixels != stego.pixels
    return int(np.count_nonzero(np.any(changed, axis=2))), int(np.count_nonzero(changed))
