from codec.codec import Codec
from codec.grayscale import Grayscale
import numpy as np

class RGB(Codec):
    """ Class for the RGB codec: one symbol per usable pixel, one channel per triplet component

        :param object codebook: Codebook object, the canonical one when omitted
    """
    channels = 3
    pixels_per_symbol = 1

    def __init__(self, codebook=None):
        # Initialize codec common variables
        super().__init__(codebook)

    def slots(self, mask):
        """ Every usable pixel is a slot made of its R, G, B samples

            :param object mask: UsabilityMask of the cover
        """
        pixels = np.flatnonzero(mask.usable)
        samples = pixels[:, np.newaxis] * self.channels + np.arange(self.channels)
        return samples, pixels


def usable_mask(cover):
    return RGB().usable_mask(cover)

def capacity(cover):
    return RGB().capacity(cover)

def encode(cover, symbols, cb=None):
    return RGB(cb).encode(cover, symbols)

def decode(cover, stego, cb=None):
    return RGB(cb).decode(cover, stego)

def inspect_stego(cover, stego, cb=None):
    """ Decoded symbols and EmbedReport of a stego raster, RGB or grayscale by channel count

        :param object cover: Cover RasterImage
        :param object stego: Stego RasterImage
        :param object cb: Codebook object
    """
    if (cover.channels == 1):
        return Grayscale(cb).inspect(cover, stego)
    return RGB(cb).inspect(cover, stego)
