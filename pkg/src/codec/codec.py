from codebook import build_codebook, TERMINATOR
from imaging import RasterImage
from misc import usable_min, usable_max, nquinary, call_name, CapacityExceeded, ChannelMismatch, \
    DimensionMismatch, DeltaOutOfRange, UnassignedCombination, MissingTerminator, ReservedSymbol
from dataclasses import dataclass
import numpy as np

channel_names = ["R", "G", "B"]


@dataclass(frozen=True)
class UsabilityMask:
    """ Usable pixels of a cover, in row-major order

        :param integer width: Number of columns of the cover
        :param integer height: Number of rows of the cover
        :param usable: Boolean per pixel, length width * height
    """
    width: int
    height: int
    usable: np.ndarray

    @property
    def count(self):
        return int(np.count_nonzero(self.usable))

    def __eq__(self, other):
        if (not isinstance(other, UsabilityMask)):
            return NotImplemented
        return self.width == other.width and self.height == other.height \
            and np.array_equal(self.usable, other.usable)

    __hash__ = None


@dataclass(frozen=True)
class EmbedReport:
    """ Pixel accounting of one embedding

        :param integer total_pixels: Number of pixels in the cover
        :param integer payload_count: Embedded symbols, terminator included
        :param integer pixels_used: Pixels carrying a perturbation slot
        :param integer pixels_skipped: Unusable pixels passed over before the terminator
        :param integer pixels_unused: Pixels after the terminator
        :param double utilization_pct: 100 * payload_count / total_pixels
    """
    total_pixels: int
    payload_count: int
    pixels_used: int
    pixels_skipped: int
    pixels_unused: int
    utilization_pct: float

    @classmethod
    def build(cls, total_pixels, payload_count, pixels_used, last_pixel):
        """ Derive the skipped/unused split from the row-major index of the last used pixel
        """
        pixels_skipped = last_pixel + 1 - pixels_used
        pixels_unused = total_pixels - pixels_used - pixels_skipped
        return cls(total_pixels, payload_count, pixels_used, pixels_skipped, pixels_unused, \
            100. * payload_count / total_pixels)

    def to_dict(self):
        """ JSON fields; the utilization percent is a string with exactly four decimals
        """
        return {"total_pixels" : self.total_pixels, "payload_count" : self.payload_count, \
            "pixels_used" : self.pixels_used, "pixels_skipped" : self.pixels_skipped, \
            "pixels_unused" : self.pixels_unused, "utilization_pct" : f"{self.utilization_pct:.4f}"}


class Codec(object):
    """ Class for symbol-per-slot embedding by bounded quinary perturbations

        A slot is three samples of the cover that jointly carry one symbol triplet.
        Subclasses decide how usable pixels are grouped into slots.

        :param object codebook: Codebook object, the canonical one when omitted
    """
    channels = None
    pixels_per_symbol = None

    def __init__(self, codebook=None):
        # Save name of codec
        self.codec_type = self.__class__.__name__

        if (codebook == None):
            codebook = build_codebook()
        self.cb = codebook

        # Weights turning a triplet row into its lexicographic index
        self.weights = np.array([nquinary ** 2, nquinary, 1], dtype=np.int64)

    def check_channels(self, *images):
        """ Reject rasters this codec cannot handle

            :param list images: RasterImage objects
        """
        for img in images:
            if (img.channels != self.channels):
                error_message = f"{self.codec_type} codec needs {self.channels}-channel rasters!"
                error_vars = f"channels = {img.channels}"
                raise ChannelMismatch (f"( {self.codec_type}.{call_name()} ) {error_message} ( {error_vars} )", \
                    expected=self.channels, channels=img.channels)

    def usable_mask(self, cover):
        """ Pixels whose every channel lies in [2, 253]

            :param object cover: Cover RasterImage
        """
        self.check_channels(cover)
        pix = cover.pixels
        usable = np.all((pix >= usable_min) & (pix <= usable_max), axis=2).reshape(-1)
        usable.flags.writeable = False
        return UsabilityMask(cover.width, cover.height, usable)

    def slots(self, mask):
        """ Sample indices of every slot and the row-major index of each slot's last pixel

            :param object mask: UsabilityMask of the cover
        """
        raise NotImplementedError

    def capacity(self, cover):
        """ Number of symbols that fit, one slot being reserved for the terminator

            :param object cover: Cover RasterImage
        """
        samples, _ = self.slots(self.usable_mask(cover))
        return max(len(samples) - 1, 0)

    def encode(self, cover, symbols):
        """ Embed a symbol sequence followed by the terminator

            :param object cover: Cover RasterImage
            :param list symbols: Symbols to embed, without terminator
        """
        self.check_channels(cover)
        if (TERMINATOR in symbols):
            error_message = "Payload must not contain the terminator!"
            error_vars = f"position = {list(symbols).index(TERMINATOR)}"
            raise ReservedSymbol (f"( {self.codec_type}.{call_name()} ) {error_message} ( {error_vars} )", \
                position=list(symbols).index(TERMINATOR))

        samples, last_pixel = self.slots(self.usable_mask(cover))
        available = max(len(samples) - 1, 0)
        # The terminator needs a slot of its own, even for an empty payload
        if (len(symbols) + 1 > len(samples)):
            error_message = "Payload does not fit in the usable pixels of the cover!"
            error_vars = f"needed = {len(symbols)}, available = {available}"
            raise CapacityExceeded (f"( {self.codec_type}.{call_name()} ) {error_message} ( {error_vars} )", \
                needed=len(symbols), available=available)

        indices = np.append(self.cb.symbol_indices(symbols), self.cb.terminator_index)
        npayload = len(indices)

        stego = cover.samples.astype(np.int16)
        stego[samples[:npayload]] += self.cb.deltas[indices]

        report = EmbedReport.build(cover.npixels, npayload, npayload * self.pixels_per_symbol, \
            int(last_pixel[npayload - 1]))
        return RasterImage.from_samples(cover.width, cover.height, cover.channels, stego), report

    def decode(self, cover, stego):
        """ Recover the symbols preceding the terminator

            :param object cover: Cover RasterImage
            :param object stego: Stego RasterImage
        """
        symbols, _ = self.inspect(cover, stego)
        return symbols

    def inspect(self, cover, stego):
        """ Decode and rebuild the embedding accounting from the terminator position

            :param object cover: Cover RasterImage
            :param object stego: Stego RasterImage
        """
        if (cover.shape != stego.shape):
            error_message = "Cover and stego rasters differ in shape!"
            error_vars = f"cover = {cover.shape}, stego = {stego.shape}"
            raise DimensionMismatch (f"( {self.codec_type}.{call_name()} ) {error_message} ( {error_vars} )", \
                cover=cover.shape, stego=stego.shape)
        self.check_channels(cover, stego)

        mask = self.usable_mask(cover)
        samples, last_pixel = self.slots(mask)

        diff = stego.samples.astype(np.int16) - cover.samples.astype(np.int16)
        deltas = diff[samples]

        in_range = np.all(np.abs(deltas) <= 2, axis=1)
        index = (deltas.astype(np.int64) + 2) @ self.weights
        assigned = in_range & (index < self.cb.nsym)
        stop = ~assigned | (index == self.cb.terminator_index)

        if (not np.any(stop)):
            self.check_remainder(cover, mask, diff)
            error_message = "Scan exhausted the usable pixels without meeting a terminator!"
            error_vars = f"slots = {len(samples)}"
            raise MissingTerminator (f"( {self.codec_type}.{call_name()} ) {error_message} ( {error_vars} )", \
                slots=len(samples))

        end = int(np.argmax(stop))
        if (not in_range[end]):
            channel = int(np.argmax(np.abs(deltas[end]) > 2))
            sample = int(samples[end, channel])
            pixel = cover.pixel_ref(sample // cover.channels)
            error_message = "Perturbation exceeds the quinary range!"
            error_vars = f"pixel = ({pixel.x}, {pixel.y}), channel = {channel_names[channel]}, " \
                + f"delta = {int(deltas[end, channel])}"
            raise DeltaOutOfRange (f"( {self.codec_type}.{call_name()} ) {error_message} ( {error_vars} )", \
                pixel=pixel, channel=channel, delta=int(deltas[end, channel]))
        if (not assigned[end]):
            pixel = cover.pixel_ref(int(samples[end, 0]) // cover.channels)
            error_message = "Perturbation is one of the shelved combinations!"
            error_vars = f"pixel = ({pixel.x}, {pixel.y}), triplet = {tuple(int(d) for d in deltas[end])}"
            raise UnassignedCombination (f"( {self.codec_type}.{call_name()} ) {error_message} ( {error_vars} )", \
                pixel=pixel, triplet=tuple(int(d) for d in deltas[end]))

        symbols = [self.cb.symbols[i] for i in index[:end]]
        npayload = end + 1
        report = EmbedReport.build(cover.npixels, npayload, npayload * self.pixels_per_symbol, \
            int(last_pixel[end]))
        return symbols, report

    def check_remainder(self, cover, mask, diff):
        """ Hook for usable samples left over after the last full slot

            :param object cover: Cover RasterImage
            :param object mask: UsabilityMask of the cover
            :param diff: Stego minus cover samples
        """
        pass
