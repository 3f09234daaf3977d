from misc import ssim_win, ssim_sigma, ssim_k1, ssim_k2, max_intensity, call_name, \
    DimensionMismatch, ImageTooSmall, EmptyReference
from dataclasses import dataclass
from numpy.lib.stride_tricks import sliding_window_view
import math
import numpy as np


@dataclass(frozen=True)
class MetricsReport:
    """ Image and text quality measures of one cover/stego pair

        :param double mae: Mean absolute sample error
        :param double mse: Mean squared sample error
        :param double snr: Signal to noise ratio (dB)
        :param double psnr: Peak signal to noise ratio (dB)
        :param double ssim: Mean structural similarity, None when the raster is under 11 pixels wide or high
        :param double cer: Character error rate, None without reference text
        :param double wer: Word error rate, None without reference text
    """
    mae: float
    mse: float
    snr: float
    psnr: float
    ssim: float = None
    cer: float = None
    wer: float = None

    def to_dict(self):
        return {"mae" : self.mae, "mse" : self.mse, "snr_db" : _finite(self.snr), \
            "psnr_db" : _finite(self.psnr), "ssim" : self.ssim, "cer" : self.cer, "wer" : self.wer}


def _finite(value):
    """ JSON has no infinity; render it as a string
    """
    if (value != None and math.isinf(value)):
        return "inf" if value > 0 else "-inf"
    return value

def check_pair(cover, stego):
    if (cover.shape != stego.shape):
        error_message = "Cover and stego rasters differ in shape!"
        error_vars = f"cover = {cover.shape}, stego = {stego.shape}"
        raise DimensionMismatch (f"( {call_name()} ) {error_message} ( {error_vars} )", \
            cover=cover.shape, stego=stego.shape)

def psnr_from_mse(mse):
    """ 10 log10(255^2 / MSE), +inf for a zero MSE

        :param double mse: Mean squared error
    """
    if (mse == 0):
        return math.inf
    return 10. * math.log10(max_intensity ** 2 / mse)

def quality_metrics(cover, stego):
    """ MAE, MSE, SNR and PSNR pooled over every sample of every channel

        :param object cover: Cover RasterImage
        :param object stego: Stego RasterImage
    """
    check_pair(cover, stego)

    c = cover.samples.astype(np.int64)
    diff = c - stego.samples.astype(np.int64)
    nsample = c.size

    # Exact integer sums, one division each
    abs_sum = int(np.abs(diff).sum())
    sq_sum = int((diff * diff).sum())
    signal = int((c * c).sum())

    mae = abs_sum / nsample
    mse = sq_sum / nsample
    if (sq_sum == 0):
        snr = math.inf
        psnr = math.inf
    else:
        snr = 10. * math.log10(signal / sq_sum) if signal > 0 else -math.inf
        psnr = 10. * math.log10(max_intensity ** 2 * nsample / sq_sum)

    return mae, mse, snr, psnr

def gaussian_window(size=ssim_win, sigma=ssim_sigma):
    """ Normalized 1-D Gaussian; the 2-D SSIM window is its outer product

        :param integer size: Window length
        :param double sigma: Standard deviation
    """
    x = np.arange(size, dtype=np.float64) - (size - 1) / 2.
    g = np.exp(- x ** 2 / (2. * sigma ** 2))
    return g / g.sum()

def _window_mean(img, g):
    """ Gaussian-weighted mean over every fully contained window
    """
    rows = sliding_window_view(img, len(g), axis=1) @ g
    return sliding_window_view(rows, len(g), axis=0) @ g

def ssim(cover, stego):
    """ Mean SSIM over 11x11 Gaussian windows (sigma 1.5), averaged over positions and channels

        :param object cover: Cover RasterImage
        :param object stego: Stego RasterImage
    """
    check_pair(cover, stego)
    if (min(cover.width, cover.height) < ssim_win):
        error_message = f"SSIM needs at least {ssim_win} pixels in each direction!"
        error_vars = f"width = {cover.width}, height = {cover.height}"
        raise ImageTooSmall (f"( {call_name()} ) {error_message} ( {error_vars} )", \
            width=cover.width, height=cover.height)

    c1 = (ssim_k1 * max_intensity) ** 2
    c2 = (ssim_k2 * max_intensity) ** 2
    g = gaussian_window()

    ssim_maps = []
    for ich in range(cover.channels):
        x = cover.pixels[:, :, ich].astype(np.float64)
        y = stego.pixels[:, :, ich].astype(np.float64)

        mu_x = _window_mean(x, g)
        mu_y = _window_mean(y, g)
        var_x = _window_mean(x * x, g) - mu_x * mu_x
        var_y = _window_mean(y * y, g) - mu_y * mu_y
        cov_xy = _window_mean(x * y, g) - mu_x * mu_y

        num = (2. * mu_x * mu_y + c1) * (2. * cov_xy + c2)
        den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
        ssim_maps.append(num / den)

    return float(np.mean(ssim_maps))

def edit_distance(ref, hyp):
    """ Levenshtein distance with unit costs between two sequences

        :param ref: Reference sequence (string or list of tokens)
        :param hyp: Hypothesis sequence
    """
    if (len(ref) == 0):
        return len(hyp)
    if (len(hyp) == 0):
        return len(ref)

    vocab = {}
    ref_ids = [vocab.setdefault(tok, len(vocab)) for tok in ref]
    hyp_ids = np.array([vocab.setdefault(tok, len(vocab)) for tok in hyp], dtype=np.int64)

    offset = np.arange(len(hyp_ids) + 1, dtype=np.int64)
    prev = offset.copy()
    cur = np.empty_like(prev)
    for irow, tok in enumerate(ref_ids, 1):
        cur[0] = irow
        # Substitution (or match) and deletion
        np.minimum(prev[:-1] + (hyp_ids != tok), prev[1:] + 1, out=cur[1:])
        # Insertion chain: cur[j] = min(cur[j], cur[j - 1] + 1)
        cur = np.minimum.accumulate(cur - offset) + offset
        prev, cur = cur, prev

    return int(prev[-1])

def words(text):
    """ Tokens of a text split on runs of whitespace
    """
    return text.split()

def cer(reference, hypothesis):
    """ Character error rate, edit distance over the reference length

        :param string reference: Reference text
        :param string hypothesis: Recovered text
    """
    if (len(reference) == 0):
        error_message = "Reference text is empty!"
        error_vars = "len(reference) = 0"
        raise EmptyReference (f"( {call_name()} ) {error_message} ( {error_vars} )")
    return edit_distance(reference, hypothesis) / len(reference)

def wer(reference, hypothesis):
    """ Word error rate, token edit distance over the reference token count

        :param string reference: Reference text
        :param string hypothesis: Recovered text
    """
    ref_words = words(reference)
    if (len(ref_words) == 0):
        error_message = "Reference text holds no words!"
        error_vars = f"len(reference) = {len(reference)}"
        raise EmptyReference (f"( {call_name()} ) {error_message} ( {error_vars} )")
    return edit_distance(ref_words, words(hypothesis)) / len(ref_words)

def utilization(report):
    """ Embedded symbols as a percentage of all cover pixels

        :param object report: EmbedReport object
    """
    return 100. * report.payload_count / report.total_pixels

def payload_energy(cb, symbols):
    """ Sum of squared triplet components of a payload and its terminator,
        equal to MSE * number of samples of the matching stego image

        :param object cb: Codebook object
        :param list symbols: Embedded symbols without terminator
    """
    indices = np.append(cb.symbol_indices(symbols), cb.terminator_index)
    deltas = cb.deltas[indices].astype(np.int64)
    return int((deltas * deltas).sum())

def evaluate(cover, stego, reference=None, hypothesis=None):
    """ Every measure of a cover/stego pair in one MetricsReport

        :param object cover: Cover RasterImage
        :param object stego: Stego RasterImage
        :param string reference: Original text, for CER/WER
        :param string hypothesis: Recovered text, for CER/WER
    """
    mae, mse, snr, psnr = quality_metrics(cover, stego)

    ssim_value = None
    if (min(cover.width, cover.height) >= ssim_win):
        ssim_value = ssim(cover, stego)

    cer_value = None
    wer_value = None
    if (reference != None and hypothesis != None):
        cer_value = cer(reference, hypothesis)
        wer_value = wer(reference, hypothesis)

    return MetricsReport(mae, mse, snr, psnr, ssim_value, cer_value, wer_value)
