from codec.codec import Codec
from misc import call_name, IncompleteGroup
import numpy as np

class Grayscale(Codec):
    """ Class for the grayscale codec: the three triplet components of a symbol
        go to three consecutive usable grayscale pixels

        :param object codebook: Codebook object, the canonical one when omitted
    """
    channels = 1
    pixels_per_symbol = 3

    def __init__(self, codebook=None):
        # Initialize codec common variables
        super().__init__(codebook)

    def slots(self, mask):
        """ Consecutive usable pixels grouped in threes; a trailing partial group is dropped

            :param object mask: UsabilityMask of the cover
        """
        pixels = np.flatnonzero(mask.usable)
        ngroups = len(pixels) // self.pixels_per_symbol
        samples = pixels[:ngroups * self.pixels_per_symbol].reshape(ngroups, self.pixels_per_symbol)
        return samples, samples[:, -1]

    def check_remainder(self, cover, mask, diff):
        """ A perturbed partial group after the last full slot means a truncated message

            :param object cover: Cover RasterImage
            :param object mask: UsabilityMask of the cover
            :param diff: Stego minus cover samples
        """
        pixels = np.flatnonzero(mask.usable)
        nleft = len(pixels) % self.pixels_per_symbol
        if (nleft == 0):
            return
        tail = pixels[len(pixels) - nleft:]
        if (np.any(diff[tail] != 0)):
            pixel = cover.pixel_ref(int(tail[0]))
            error_message = "Usable pixels end inside a perturbed group before any terminator!"
            error_vars = f"pixel = ({pixel.x}, {pixel.y}), pixels in group = {nleft}"
            raise IncompleteGroup (f"( {self.codec_type}.{call_name()} ) {error_message} ( {error_vars} )", \
                pixel=pixel, nleft=nleft)


def grayscale_capacity(cover):
    return Grayscale().capacity(cover)

def encode_grayscale(cover, symbols, cb=None):
    return Grayscale(cb).encode(cover, symbols)

def decode_grayscale(cover, stego, cb=None):
    return Grayscale(cb).decode(cover, stego)
