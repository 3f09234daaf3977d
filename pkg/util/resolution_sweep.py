import argparse
import os
from codebook import normalize_text, tokenize, detokenize
from codec import RGB
from metrics import evaluate
from misc import elapsed_time, typewriter
from synthetic_cover import synthetic_scene

default_resolutions = ["512x512", "1280x720", "1920x1080", "3840x2160"]

def resolution_sweep():
    """ Utility script for the resolution experiment
        One text is embedded into several renditions of one synthetic scene,
        and the quality and utilization figures of every rendition are tabulated
    """
    parser = argparse.ArgumentParser(description="Utility script for PyQSteg resolution sweep", \
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('-t', '-text', action='store', dest='text', type=str, \
        help="UTF-8 text file embedded at every resolution", required=True)
    parser.add_argument('-r', '-resolutions', nargs="+", action='store', dest='resolutions', type=str, \
        default=default_resolutions, help="Cover sizes written as WIDTHxHEIGHT")
    parser.add_argument('-s', '-seed', action='store', dest='seed', type=int, default=0, \
        help="Seed of the scene texture")
    parser.add_argument('-d', '-dir', action='store', dest='dir_name', type=str, default=".", \
        help="Directory of the output table")
    parser.add_argument('-o', '-out', action='store', dest='filename', type=str, default="SWEEP", \
        help="Filename of the output table")
    args = parser.parse_args()

    resolutions = [parse_resolution(res) for res in args.resolutions]

    with open(args.text, "r", encoding="utf-8", newline="") as f:
        normalized, _ = normalize_text(f.read(), strict=False)

    rows = sweep(normalized, resolutions, args.seed)
    typewriter(format_table(rows), args.dir_name, args.filename, "w")
    print (f"Sweep of {len(rows)} resolutions written to {os.path.join(args.dir_name, args.filename)}", flush=True)

def parse_resolution(res):
    """ (width, height) of a WIDTHxHEIGHT string
    """
    try:
        width, height = [int(n) for n in res.lower().split("x")]
    except ValueError:
        raise ValueError (f"( parse_resolution ) Resolution must read WIDTHxHEIGHT! ( res = {res} )")
    return width, height

@elapsed_time
def sweep(normalized, resolutions, seed=0):
    """ Embed one normalized text at every resolution and collect the figures

        :param string normalized: Text made of alphabet characters only
        :param list resolutions: (width, height) pairs
        :param integer seed: Seed of the scene texture
    """
    symbols = tokenize(normalized)
    codec = RGB()

    rows = []
    for width, height in resolutions:
        cover = synthetic_scene(width, height, seed=seed)
        stego, embed = codec.encode(cover, symbols)
        recovered = detokenize(codec.decode(cover, stego))
        metrics = evaluate(cover, stego, normalized, recovered)

        row = {"width" : width, "height" : height}
        row.update(metrics.to_dict())
        row.update(embed.to_dict())
        row["utilization_pct"] = embed.utilization_pct
        rows.append(row)

    return rows

def format_table(rows):
    """ Whitespace aligned table, one resolution per line
    """
    f_write = "#" + "".join([f"{key:>15s}" for key in ["Resolution", "MAE", "MSE", "SNR(dB)", "PSNR(dB)", \
        "SSIM", "CER", "WER", "Total", "Used", "Unused", "Util(%)"]])

    for row in rows:
        ssim = row["ssim"] if row["ssim"] != None else float("nan")
        f_write += "\n" + f"{str(row['width']) + 'x' + str(row['height']):>16s}" \
            + "".join([f"{row[key]:15.6f}" for key in ["mae", "mse"]]) \
            + "".join([f"{row[key]:15.4f}" if isinstance(row[key], float) else f"{row[key]:>15s}" \
            for key in ["snr_db", "psnr_db"]]) \
            + f"{ssim:15.6f}" + f"{row['cer']:15.6f}" + f"{row['wer']:15.6f}" \
            + "".join([f"{row[key]:15d}" for key in ["total_pixels", "pixels_used", "pixels_unused"]]) \
            + f"{row['utilization_pct']:15.4f}"

    return f_write

if (__name__ == "__main__"):
    resolution_sweep()
