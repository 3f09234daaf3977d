from analysis import collect, emit_report
from baseline import lsb_encode, lsb_decode, lsb_capacity, lsb_footprint, pixels_per_character, \
    method_profiles, modified_counts
from codebook import build_codebook, normalize_text, tokenize, detokenize
from codec import RGB, Grayscale
from imaging import load_image, save_image, to_grayscale
from metrics import evaluate
from misc import ncombinations, call_name, StegoError, IoError, UsageError
import argparse, json, math, os, sys, textwrap

version = "1.0"


class ArgumentParser(argparse.ArgumentParser):
    """ Parser whose usage errors become UsageError instead of exiting
    """
    def error(self, message):
        error_message = "Invalid command line!"
        error_vars = f"reason = {message}"
        raise UsageError (f"( {self.prog} ) {error_message} ( {error_vars} )")


def build_parser():
    """ pyqsteg command line: encode, decode, metrics, analyze, capacity, codebook, baseline
    """
    # Output options are accepted before or after the subcommand
    common = ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, \
        help="Write one JSON document instead of report blocks")
    common.add_argument("--verbosity", type=int, choices=[0, 1, 2], default=argparse.SUPPRESS, \
        help="0: results only, 1: program banner, 2: file listings")

    parser = ArgumentParser(prog="pyqsteg", description="Quinary text-in-image steganography")
    parser.add_argument("--json", action="store_true", default=False, \
        help="Write one JSON document instead of report blocks")
    parser.add_argument("--verbosity", type=int, choices=[0, 1, 2], default=0, \
        help="0: results only, 1: program banner, 2: file listings")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    sub = subparsers.add_parser("encode", parents=[common], help="Embed a text file into a cover image")
    sub.add_argument("--cover", required=True, help="Cover image (PNG, BMP, PPM/PGM)")
    sub.add_argument("--text", required=True, help="UTF-8 text file to embed")
    sub.add_argument("--out", required=True, help="Stego image to write")
    sub.add_argument("--report", help="JSON file receiving the embedding report")
    sub.add_argument("--lossy", action="store_true", help="Replace unmappable characters by '?'")
    sub.add_argument("--force-gray", action="store_true", dest="force_gray", \
        help="Convert an RGB cover to integer luma before embedding")

    sub = subparsers.add_parser("decode", parents=[common], help="Recover the text of a stego image")
    sub.add_argument("--cover", required=True, help="Cover image used for embedding")
    sub.add_argument("--stego", required=True, help="Stego image")
    sub.add_argument("--out", help="UTF-8 text file to write, standard output when omitted")
    sub.add_argument("--force-gray", action="store_true", dest="force_gray", \
        help="Convert an RGB cover to integer luma first")

    sub = subparsers.add_parser("metrics", parents=[common], help="Image and text quality of a stego image")
    sub.add_argument("--cover", required=True, help="Cover image")
    sub.add_argument("--stego", required=True, help="Stego image")
    sub.add_argument("--reference-text", dest="reference_text", help="Original text file, enables CER and WER")
    sub.add_argument("--force-gray", action="store_true", dest="force_gray", \
        help="Convert an RGB cover to integer luma first")

    sub = subparsers.add_parser("analyze", parents=[common], help="Write histograms, heatmap and report files")
    sub.add_argument("--cover", required=True, help="Cover image")
    sub.add_argument("--stego", required=True, help="Stego image")
    sub.add_argument("--outdir", required=True, help="Directory receiving the analysis files")
    sub.add_argument("--force-gray", action="store_true", dest="force_gray", \
        help="Convert an RGB cover to integer luma first")

    sub = subparsers.add_parser("capacity", parents=[common], help="Symbols a cover can carry")
    sub.add_argument("--cover", required=True, help="Cover image")
    sub.add_argument("--force-gray", action="store_true", dest="force_gray", \
        help="Convert an RGB cover to integer luma first")

    sub = subparsers.add_parser("codebook", parents=[common], help="Dump the symbol to triplet table")
    sub.add_argument("--out", help="CSV file to write, standard output when omitted")

    sub = subparsers.add_parser("baseline", parents=[common], help="LSB reference method and pixel cost table")
    baseline_parsers = sub.add_subparsers(dest="action", metavar="action")
    baseline_parsers.required = True

    action = baseline_parsers.add_parser("lsb-encode", parents=[common], help="Embed bytes one bit per sample")
    action.add_argument("--cover", required=True, help="Cover image")
    action.add_argument("--text", required=True, help="File whose bytes are embedded")
    action.add_argument("--out", required=True, help="Stego image to write")

    action = baseline_parsers.add_parser("lsb-decode", parents=[common], help="Read bytes back from sample LSBs")
    action.add_argument("--stego", required=True, help="Stego image")
    action.add_argument("--out", help="File to write, standard output when omitted")

    action = baseline_parsers.add_parser("table3", parents=[common], help="Pixels spent per character")
    action.add_argument("--cover", help="Cover image for a measured comparison")
    action.add_argument("--text", help="Text file embedded by both methods for the measured comparison")

    return parser

def fmt(value):
    """ Right-aligned 16-column rendering of a report value
    """
    if (value == None):
        return f"{'n/a':>16s}"
    if (isinstance(value, bool)):
        return f"{str(value):>16s}"
    if (isinstance(value, int)):
        return f"{value:16d}"
    if (isinstance(value, float)):
        if (math.isinf(value)):
            return f"{'inf' if value > 0 else '-inf':>16s}"
        return f"{value:16.6f}"
    return f"{str(value):>16s}"

def info_block(title, rows):
    """ Dashed report block with one 'Key = value' line per row

        :param string title: Block title
        :param list rows: (key, value) pairs
    """
    block = textwrap.dedent(f"""\
    {"-" * 68}
    {title:>43s}
    {"-" * 68}
    """)
    block += "".join([f"  {key:<25s}= {fmt(value)}\n" for key, value in rows])
    return block

def banner():
    return textwrap.dedent(f"""\
    {"-" * 68}

    {f"PyQSteg version {version}":>43s}

    {" " * 4}Quinary text-in-image steganography with bounded
    {" " * 4}per-channel perturbations in {{-2, -1, 0, 1, 2}}

    {"-" * 68}
    """)

def read_text(path):
    """ UTF-8 text with line endings kept as written
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            return f.read()
    except UnicodeDecodeError as e_message:
        error_message = "Text file is not valid UTF-8!"
        error_vars = f"path = {path}, reason = {e_message}"
        raise IoError (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path)
    except OSError as e_message:
        error_message = "Failed to read text file!"
        error_vars = f"path = {path}, reason = {e_message}"
        raise IoError (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path)

def read_bytes(path):
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as e_message:
        error_message = "Failed to read file!"
        error_vars = f"path = {path}, reason = {e_message}"
        raise IoError (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path)

def write_file(path, data, binary=False):
    """ Write text as UTF-8 without newline translation, or raw bytes
    """
    try:
        if (binary):
            with open(path, "wb") as f:
                f.write(data)
        else:
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(data)
    except OSError as e_message:
        error_message = "Failed to write file!"
        error_vars = f"path = {path}, reason = {e_message}"
        raise IoError (f"( {call_name()} ) {error_message} ( {error_vars} )", path=path)

def load_cover(path, force_gray=False):
    cover = load_image(path)
    if (force_gray):
        cover = to_grayscale(cover)
    return cover

def codec_for(cover):
    """ Grayscale codec for single-channel covers, RGB codec otherwise
    """
    if (cover.channels == 1):
        return Grayscale()
    return RGB()

def image_info(img):
    return {"width" : img.width, "height" : img.height, "channels" : img.channels}

def metrics_rows(metrics):
    return [("MAE", metrics.mae), ("MSE", metrics.mse), ("SNR (dB)", metrics.snr), \
        ("PSNR (dB)", metrics.psnr), ("SSIM", metrics.ssim), ("CER", metrics.cer), ("WER", metrics.wer)]

def embed_rows(embed):
    return [("Total Pixels", embed.total_pixels), ("Payload Symbols", embed.payload_count), \
        ("Pixels Used", embed.pixels_used), ("Pixels Skipped", embed.pixels_skipped), \
        ("Pixels Unused", embed.pixels_unused), ("Utilization (%)", f"{embed.utilization_pct:.4f}")]

def cmd_encode(args):
    raw = read_text(args.text)
    normalized, log = normalize_text(raw, strict=not args.lossy)
    symbols = tokenize(normalized)

    cover = load_cover(args.cover, args.force_gray)
    codec = codec_for(cover)
    stego, embed = codec.encode(cover, symbols)
    save_image(stego, args.out)

    metrics = evaluate(cover, stego)
    doc = {"command" : "encode", "codec" : codec.codec_type, "image" : image_info(cover), \
        "capacity" : codec.capacity(cover)}
    doc.update(embed.to_dict())
    doc.update(metrics.to_dict())
    doc["normalization"] = log.to_dict()

    if (args.report != None):
        write_file(args.report, json.dumps(doc, indent=2) + "\n")

    rows = [("Codec", codec.codec_type), ("Width", cover.width), ("Height", cover.height), \
        ("Capacity (symbols)", doc["capacity"])] + embed_rows(embed) + metrics_rows(metrics) \
        + [("Substitutions", len(log.substitutions)), ("Replaced Characters", len(log.rejected))]
    return doc, info_block("Embedding Information", rows)

def cmd_decode(args):
    cover = load_cover(args.cover, args.force_gray)
    stego = load_image(args.stego)
    codec = codec_for(cover)
    symbols, embed = codec.inspect(cover, stego)
    text = detokenize(symbols)

    doc = {"command" : "decode", "codec" : codec.codec_type}
    doc.update(embed.to_dict())
    block = info_block("Decoding Information", [("Codec", codec.codec_type)] + embed_rows(embed))

    if (args.out != None):
        write_file(args.out, text)
    else:
        doc["text"] = text
        block += "\n" + text
    return doc, block

def cmd_metrics(args):
    cover = load_cover(args.cover, args.force_gray)
    stego = load_image(args.stego)

    reference = None
    hypothesis = None
    if (args.reference_text != None):
        # Reference is compared in the form encode would have embedded
        reference, _ = normalize_text(read_text(args.reference_text), strict=False)
        hypothesis = detokenize(codec_for(cover).decode(cover, stego))

    metrics = evaluate(cover, stego, reference, hypothesis)
    doc = {"command" : "metrics", "image" : image_info(cover)}
    doc.update(metrics.to_dict())
    return doc, info_block("Quality Metrics", metrics_rows(metrics))

def cmd_analyze(args):
    cover = load_cover(args.cover, args.force_gray)
    stego = load_image(args.stego)
    codec = codec_for(cover)
    _, embed = codec.inspect(cover, stego)

    metrics = evaluate(cover, stego)
    artifacts = collect(cover, stego, metrics, embed)
    written = emit_report(artifacts, args.outdir)

    doc = {"command" : "analyze", "codec" : codec.codec_type, "outdir" : args.outdir, "files" : written}
    rows = [("Codec", codec.codec_type), ("Output Directory", args.outdir), ("Files Written", len(written)), \
        ("Perturbed Pixels", artifacts.heat.nonzero)] + embed_rows(embed)
    block = info_block("Analysis Information", rows)
    if (args.verbosity >= 2):
        block += "".join([f"    {os.path.join(args.outdir, filename)}\n" for filename in written])
    return doc, block

def cmd_capacity(args):
    cover = load_cover(args.cover, args.force_gray)
    codec = codec_for(cover)
    mask = codec.usable_mask(cover)
    nsym = codec.capacity(cover)

    doc = {"command" : "capacity", "codec" : codec.codec_type, "image" : image_info(cover), \
        "usable_pixels" : mask.count, "capacity" : nsym}
    rows = [("Codec", codec.codec_type), ("Total Pixels", cover.npixels), ("Usable Pixels", mask.count), \
        ("Capacity (symbols)", nsym)]
    return doc, info_block("Capacity Information", rows)

def cmd_codebook(args):
    cb = build_codebook()
    table = cb.dump_csv()
    if (args.out != None):
        write_file(args.out, table)

    doc = {"command" : "codebook", "symbols" : [{"symbol" : sym.label, "triplet" : [int(d) for d in cb.forward[sym]], \
        "index" : cb.forward[sym].index} for sym in cb.symbols]}
    block = info_block("Codebook", [("Symbols", cb.nsym), ("Shelved Combinations", ncombinations - cb.nsym)])
    if (args.out == None):
        block += "\n" + table
    return doc, block

def cmd_baseline(args):
    if (args.action == "lsb-encode"):
        cover = load_image(args.cover)
        text = read_bytes(args.text)
        stego = lsb_encode(cover, text)
        save_image(stego, args.out)

        pixels, samples = modified_counts(cover, stego)
        span_pixels, span_samples = lsb_footprint(cover, len(text))
        metrics = evaluate(cover, stego)
        doc = {"command" : "baseline lsb-encode", "image" : image_info(cover), "bytes" : len(text), \
            "capacity" : lsb_capacity(cover), "pixels_spanned" : span_pixels, "samples_spanned" : span_samples, \
            "pixels_modified" : pixels, "samples_modified" : samples}
        doc.update(metrics.to_dict())
        rows = [("Message Bytes", len(text)), ("Capacity (bytes)", doc["capacity"]), \
            ("Pixels Spanned", span_pixels), ("Samples Spanned", span_samples), \
            ("Pixels Modified", pixels), ("Samples Modified", samples)] + metrics_rows(metrics)
        return doc, info_block("LSB Embedding Information", rows)

    if (args.action == "lsb-decode"):
        stego = load_image(args.stego)
        data = lsb_decode(stego)
        doc = {"command" : "baseline lsb-decode", "bytes" : len(data)}
        block = info_block("LSB Decoding Information", [("Message Bytes", len(data))])
        if (args.out != None):
            write_file(args.out, data, binary=True)
        else:
            doc["text"] = data.decode("utf-8", errors="replace")
            block += "\n" + doc["text"]
        return doc, block

    # table3
    table = [{"method" : profile.method, "gray" : pixels_per_character(key, 1), \
        "rgb" : pixels_per_character(key, 3)} for key, profile in method_profiles.items()]
    doc = {"command" : "baseline table3", "methods" : table}
    rows = []
    for row in table:
        rows.append((f"{row['method']} (Grayscale)", row["gray"]))
        rows.append((f"{row['method']} (RGB)", row["rgb"]))
    block = info_block("Pixels per Character", rows)

    if (args.cover != None and args.text != None):
        cover = load_image(args.cover)
        raw = read_text(args.text)
        normalized, _ = normalize_text(raw, strict=False)

        codec = codec_for(cover)
        stego, _ = codec.encode(cover, tokenize(normalized))
        quinary_pixels, quinary_samples = modified_counts(cover, stego)

        lsb_stego = lsb_encode(cover, normalized.encode("utf-8"))
        lsb_pixels, lsb_samples = modified_counts(cover, lsb_stego)
        span_pixels, span_samples = lsb_footprint(cover, len(normalized.encode("utf-8")))

        doc["measured"] = {"characters" : len(normalized), "codec" : codec.codec_type, \
            "quinary_pixels_modified" : quinary_pixels, "quinary_samples_modified" : quinary_samples, \
            "lsb_pixels_spanned" : span_pixels, "lsb_samples_spanned" : span_samples, \
            "lsb_pixels_modified" : lsb_pixels, "lsb_samples_modified" : lsb_samples}
        block += info_block("Measured Pixel Usage", [("Characters", len(normalized)), \
            ("Quinary Pixels Modified", quinary_pixels), ("Quinary Samples Modified", quinary_samples), \
            ("LSB Pixels Spanned", span_pixels), ("LSB Samples Spanned", span_samples), \
            ("LSB Pixels Modified", lsb_pixels), ("LSB Samples Modified", lsb_samples)])
    elif (args.cover != None or args.text != None):
        error_message = "Measured comparison needs both --cover and --text!"
        error_vars = f"cover = {args.cover}, text = {args.text}"
        raise UsageError (f"( {call_name()} ) {error_message} ( {error_vars} )")

    return doc, block

commands = {
    "encode" : cmd_encode,
    "decode" : cmd_decode,
    "metrics" : cmd_metrics,
    "analyze" : cmd_analyze,
    "capacity" : cmd_capacity,
    "codebook" : cmd_codebook,
    "baseline" : cmd_baseline,
}

def run(argv=None):
    """ Parse argv, dispatch one subcommand and return its exit code

        :param list argv: Command line arguments without the program name
    """
    argv = sys.argv[1:] if argv == None else list(argv)
    as_json = "--json" in argv
    verbosity = 0

    try:
        args = build_parser().parse_args(argv)
        as_json = args.json
        verbosity = args.verbosity
        if (verbosity >= 1 and not as_json):
            print (banner(), flush=True)
        doc, block = commands[args.command](args)
    except StegoError as error:
        if (as_json):
            print (json.dumps({"error" : error.code, "detail" : str(error)}), flush=True)
        else:
            print (f"{error.code}: {error}", file=sys.stderr, flush=True)
        return error.exit_code
    except SystemExit as e_exit:
        # --help and --version leave through argparse's exit
        return e_exit.code if isinstance(e_exit.code, int) else 0

    if (as_json):
        print (json.dumps(doc, indent=2), flush=True)
    else:
        print (block, flush=True)
    return 0

def main():
    sys.exit(run())


if (__name__ == "__main__"):
    main()
