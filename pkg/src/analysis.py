from codec.codec import channel_names
from imaging import RasterImage, save_image
from metrics import check_pair
from misc import quinary, heatmap_max, max_intensity, call_name, IoError, DeltaOutOfRange
from dataclasses import dataclass
import csv, json, os
import numpy as np

# Bins of the payload profile along the row-major scan
nprofile = 100


@dataclass(frozen=True)
class ChannelHistogram:
    """ Intensity histogram of one channel

        :param string channel: R, G, B or Gray
        :param bins: 256 counts indexed by intensity
    """
    channel: str
    bins: np.ndarray

    @property
    def total(self):
        return int(self.bins.sum())

    def __eq__(self, other):
        if (not isinstance(other, ChannelHistogram)):
            return NotImplemented
        return self.channel == other.channel and np.array_equal(self.bins, other.bins)

    __hash__ = None


@dataclass(frozen=True)
class Heatmap:
    """ Per-pixel perturbation magnitude |dR| + |dG| + |dB|

        :param integer width: Number of columns
        :param integer height: Number of rows
        :param values: (height, width) magnitudes in [0, 6]
    """
    width: int
    height: int
    values: np.ndarray

    @property
    def nonzero(self):
        return int(np.count_nonzero(self.values))

    def to_raster(self):
        """ 8-bit grayscale rendition, value * 255 / 6 rounded half-up
        """
        scaled = (self.values.astype(np.int64) * 2 * max_intensity + heatmap_max) // (2 * heatmap_max)
        return RasterImage(scaled.astype(np.uint8))

    def __eq__(self, other):
        if (not isinstance(other, Heatmap)):
            return NotImplemented
        return self.width == other.width and self.height == other.height \
            and np.array_equal(self.values, other.values)

    __hash__ = None


@dataclass(frozen=True)
class UtilizationBreakdown:
    """ Used, skipped and unused pixels of an embedding, ready for a bar chart
    """
    total: int
    used: int
    skipped: int
    unused: int
    used_pct: float
    skipped_pct: float
    unused_pct: float

    def to_dict(self):
        return {"total" : self.total, "used" : self.used, "skipped" : self.skipped, "unused" : self.unused, \
            "used_pct" : self.used_pct, "skipped_pct" : self.skipped_pct, "unused_pct" : self.unused_pct}


@dataclass(frozen=True)
class PayloadProfile:
    """ Cumulative count of perturbed pixels along the row-major scan

        :param ends: Exclusive row-major end index of each bin
        :param cumulative: Perturbed pixels before each end
    """
    ends: np.ndarray
    cumulative: np.ndarray

    def to_dict(self):
        return {"ends" : self.ends.tolist(), "cumulative" : self.cumulative.tolist()}


@dataclass
class Artifacts:
    """ Everything analyze writes for one cover/stego pair
    """
    cover: RasterImage
    cover_hists: list
    stego_hists: list
    heat: Heatmap
    breakdown: UtilizationBreakdown
    profile: PayloadProfile
    metrics: object
    embed: object


def histogram_names(channels):
    if (channels == 1):
        return ["Gray"]
    return channel_names[:channels]

def channel_histograms(img):
    """ One exact 256-bin histogram per channel

        :param object img: RasterImage object
    """
    names = histogram_names(img.channels)
    return [ChannelHistogram(name, np.bincount(img.pixels[:, :, ich].reshape(-1), minlength=256).astype(np.int64)) \
        for ich, name in enumerate(names)]

def histogram_difference(cover_hists, stego_hists):
    """ Largest per-bin change, L1 distance and mass check of every channel

        :param list cover_hists: ChannelHistogram objects of the cover
        :param list stego_hists: ChannelHistogram objects of the stego image
    """
    summary = []
    for c_hist, s_hist in zip(cover_hists, stego_hists):
        diff = s_hist.bins - c_hist.bins
        summary.append({"channel" : c_hist.channel, "max_abs_diff" : int(np.abs(diff).max()), \
            "l1" : int(np.abs(diff).sum()), "mass_conserved" : c_hist.total == s_hist.total})
    return summary

def heatmap(cover, stego):
    """ L1 perturbation magnitude of every pixel

        :param object cover: Cover RasterImage
        :param object stego: Stego RasterImage
    """
    check_pair(cover, stego)
    diff = stego.pixels.astype(np.int16) - cover.pixels.astype(np.int16)

    # Any sample of a stego image, payload or not, stays within the quinary range
    outside = np.flatnonzero(np.abs(diff) > max(quinary))
    if (len(outside) > 0):
        sample = int(outside[0])
        pixel = cover.pixel_ref(sample // cover.channels)
        channel = sample % cover.channels
        delta = int(diff.reshape(-1)[sample])
        error_message = "Stego sample differs from the cover by more than the quinary range!"
        error_vars = f"pixel = ({pixel.x}, {pixel.y}), channel = {histogram_names(cover.channels)[channel]}, delta = {delta}"
        raise DeltaOutOfRange (f"( {call_name()} ) {error_message} ( {error_vars} )", \
            pixel=pixel, channel=channel, delta=delta)

    values = np.abs(diff).sum(axis=2).astype(np.uint8)
    values.flags.writeable = False
    return Heatmap(cover.width, cover.height, values)

def utilization_breakdown(report):
    """ Pixel split of an EmbedReport with percentages of the cover

        :param object report: EmbedReport object
    """
    total = report.total_pixels
    return UtilizationBreakdown(total, report.pixels_used, report.pixels_skipped, report.pixels_unused, \
        100. * report.pixels_used / total, 100. * report.pixels_skipped / total, 100. * report.pixels_unused / total)

def payload_profile(cover, stego, nbins=nprofile):
    """ Cumulative perturbed pixels at nbins evenly spaced scan positions

        :param object cover: Cover RasterImage
        :param object stego: Stego RasterImage
        :param integer nbins: Number of scan bins
    """
    touched = heatmap(cover, stego).values.reshape(-1) != 0
    nbins = min(nbins, len(touched))
    ends = np.linspace(0, len(touched), nbins + 1).round().astype(np.int64)[1:]
    running = np.concatenate(([0], np.cumsum(touched, dtype=np.int64)))
    return PayloadProfile(ends, running[ends])

def collect(cover, stego, metrics_report, embed_report):
    """ Compute every analysis artifact of a cover/stego pair

        :param object cover: Cover RasterImage
        :param object stego: Stego RasterImage
        :param object metrics_report: MetricsReport of the pair
        :param object embed_report: EmbedReport of the pair
    """
    return Artifacts(cover, channel_histograms(cover), channel_histograms(stego), heatmap(cover, stego), \
        utilization_breakdown(embed_report), payload_profile(cover, stego), metrics_report, embed_report)

def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)

def emit_report(artifacts, outdir):
    """ Write histogram CSVs, heatmap CSV/PNG and report.json, returning the file names

        :param object artifacts: Artifacts object
        :param string outdir: Output directory, created when missing
    """
    written = []
    try:
        os.makedirs(outdir, exist_ok=True)

        for which, hists in [("cover", artifacts.cover_hists), ("stego", artifacts.stego_hists)]:
            for hist in hists:
                filename = f"hist_{which}_{hist.channel}.csv"
                _write_csv(os.path.join(outdir, filename), ["intensity", "count"], \
                    [(intensity, int(count)) for intensity, count in enumerate(hist.bins)])
                written.append(filename)

        # Sparse listing; every cell absent from the file is zero
        heat = artifacts.heat
        ys, xs = np.nonzero(heat.values)
        _write_csv(os.path.join(outdir, "heatmap.csv"), ["x", "y", "value"], \
            zip(xs.tolist(), ys.tolist(), heat.values[ys, xs].tolist()))
        written.append("heatmap.csv")

        save_image(heat.to_raster(), os.path.join(outdir, "heatmap.png"))
        written.append("heatmap.png")

        cover = artifacts.cover
        report = {"image" : {"width" : cover.width, "height" : cover.height, "channels" : cover.channels}}
        report.update(artifacts.embed.to_dict())
        report.update(artifacts.metrics.to_dict())
        report["utilization_breakdown"] = artifacts.breakdown.to_dict()
        report["histogram_difference"] = histogram_difference(artifacts.cover_hists, artifacts.stego_hists)
        report["payload_profile"] = artifacts.profile.to_dict()
        with open(os.path.join(outdir, "report.json"), "w", encoding="utf-8", newline="\n") as f:
            json.dump(report, f, indent=2)
            f.write("\n")
        written.append("report.json")
    except OSError as e_message:
        error_message = "Failed to write analysis files!"
        error_vars = f"outdir = {outdir}, reason = {e_message}"
        raise IoError (f"( {call_name()} ) {error_message} ( {error_vars} )", path=outdir)

    return written

def read_histogram_csv(path):
    """ Counts of a histogram CSV written by emit_report

        :param string path: CSV file path
    """
    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    bins = np.zeros(256, dtype=np.int64)
    for row in rows:
        bins[int(row["intensity"])] = int(row["count"])
    return bins

def read_heatmap_csv(path, width, height):
    """ Heatmap rebuilt from the sparse CSV written by emit_report

        :param string path: CSV file path
        :param integer width: Number of columns
        :param integer height: Number of rows
    """
    values = np.zeros((height, width), dtype=np.uint8)
    with open(path, encoding="utf-8", newline="") as f:
        for row in csv.DictReader(f):
            values[int(row["y"]), int(row["x"])] = int(row["value"])
    values.flags.writeable = False
    return Heatmap(width, height, values)
