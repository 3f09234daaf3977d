import argparse
import numpy as np
from imaging import RasterImage, save_image
from misc import elapsed_time

# Scene intensities stay inside this band, so every pixel is usable
scene_min = 16
scene_max = 239

def synthetic_cover():
    """ Utility script writing a deterministic synthetic cover image
        The scene is a smooth gradient defined on the unit square plus seeded fine texture,
        so covers of any size show the same picture
    """
    parser = argparse.ArgumentParser(description="Utility script for PyQSteg synthetic cover images", \
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('-x', '-width', action='store', dest='width', type=int, \
        help="Number of columns", required=True)
    parser.add_argument('-y', '-height', action='store', dest='height', type=int, \
        help="Number of rows", required=True)
    parser.add_argument('-c', '-channels', action='store', dest='channels', type=int, choices=[1, 3], default=3, \
        help="1 for a grayscale cover, 3 for RGB")
    parser.add_argument('-s', '-seed', action='store', dest='seed', type=int, default=0, \
        help="Seed of the texture generator")
    parser.add_argument('-t', '-texture', action='store', dest='texture', type=float, default=2., \
        help="Standard deviation of the texture in intensity levels")
    parser.add_argument('-o', '-out', action='store', dest='out', type=str, default="cover.png", \
        help="Output image, the extension selects PNG, BMP or PPM/PGM")
    args = parser.parse_args()

    write_cover(args.width, args.height, args.channels, args.seed, args.texture, args.out)

@elapsed_time
def write_cover(width, height, channels, seed, texture, out):
    """ Render the scene and save it
    """
    save_image(synthetic_scene(width, height, channels, seed, texture), out)
    print (f"Synthetic cover {width}x{height}x{channels} written to {out}", flush=True)

def synthetic_scene(width, height, channels=3, seed=0, texture=2.):
    """ Smooth RGB (or luma) gradient with seeded Gaussian texture, clipped to [16, 239]

        :param integer width: Number of columns
        :param integer height: Number of rows
        :param integer channels: 1 or 3
        :param integer seed: Seed of the texture generator
        :param double texture: Standard deviation of the texture
    """
    # Pixel centres on the unit square
    u = (np.arange(width, dtype=np.float64) + 0.5) / width
    v = (np.arange(height, dtype=np.float64) + 0.5) / height
    u, v = np.meshgrid(u, v)

    red = 60. + 120. * u + 30. * np.sin(2. * np.pi * v)
    green = 80. + 90. * v + 25. * np.cos(3. * np.pi * u)
    blue = 110. + 60. * np.sin(np.pi * (u + v))
    scene = np.stack([red, green, blue], axis=2)
    if (channels == 1):
        scene = (0.299 * red + 0.587 * green + 0.114 * blue)[:, :, np.newaxis]

    rng = np.random.default_rng(seed)
    scene += rng.normal(0., texture, size=scene.shape)

    return RasterImage(np.clip(np.rint(scene), scene_min, scene_max).astype(np.uint8))

if (__name__ == "__main__"):
    synthetic_cover()
