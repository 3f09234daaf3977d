from .codec import Codec, EmbedReport, UsabilityMask
from .rgb import RGB, usable_mask, capacity, encode, decode, inspect_stego
from .grayscale import Grayscale, grayscale_capacity, encode_grayscale, decode_grayscale
