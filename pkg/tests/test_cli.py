import json, os
import numpy as np
import pytest

from cli import run, build_parser
from conftest import flat_cover
from imaging import RasterImage, save_image, load_image
from synthetic_cover import synthetic_scene


@pytest.fixture
def workdir(tmp_path):
    cover = str(tmp_path / "cover.png")
    save_image(synthetic_scene(64, 48, seed=2), cover)
    text = tmp_path / "message.txt"
    text.write_text("Meet me at 7:30 PM.\n\nBring $20, \"please\".", encoding="utf-8")
    return tmp_path

def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)

def paths(workdir, *names):
    return [str(workdir / name) for name in names]


def test_encode_decode_pipeline(workdir, capsys):
    cover, text, stego, report, decoded = paths(workdir, "cover.png", "message.txt", "stego.png", "r.json", "out.txt")
    assert run(["encode", "--cover", cover, "--text", text, "--out", stego, "--report", report]) == 0
    out = capsys.readouterr().out
    assert "Embedding Information" in out
    assert "Payload Symbols" in out

    with open(report, encoding="utf-8") as f:
        doc = json.load(f)
    assert doc["payload_count"] == 41
    assert doc["codec"] == "RGB"
    assert doc["pixels_used"] + doc["pixels_skipped"] + doc["pixels_unused"] == 64 * 48

    assert run(["decode", "--cover", cover, "--stego", stego, "--out", decoded]) == 0
    with open(decoded, "rb") as f:
        assert f.read() == (workdir / "message.txt").read_bytes()

    code, doc = run_json(capsys, ["metrics", "--cover", cover, "--stego", stego, "--reference-text", text, "--json"])
    assert code == 0
    assert doc["cer"] == 0. and doc["wer"] == 0.
    assert doc["psnr_db"] > 50.
    assert doc["ssim"] > 0.99

def test_json_before_or_after_command(workdir, capsys):
    cover, = paths(workdir, "cover.png")
    code, doc = run_json(capsys, ["--json", "capacity", "--cover", cover])
    assert code == 0
    assert doc["capacity"] == 64 * 48 - 1
    code, doc = run_json(capsys, ["capacity", "--cover", cover, "--json"])
    assert doc["usable_pixels"] == 64 * 48

def test_capacity_mid_gray(tmp_path, capsys):
    cover = str(tmp_path / "gray.png")
    save_image(flat_cover(512, 512), cover)
    assert run(["capacity", "--cover", cover]) == 0
    assert "262143" in capsys.readouterr().out

def test_decode_cover_as_stego(workdir, capsys):
    cover, out = paths(workdir, "cover.png", "t.txt")
    assert run(["decode", "--cover", cover, "--stego", cover, "--out", out]) == 4
    assert not os.path.exists(out)
    code, doc = run_json(capsys, ["decode", "--cover", cover, "--stego", cover, "--json"])
    assert code == 4
    assert doc["error"] == "MissingTerminator"
    assert "terminator" in doc["detail"]

@pytest.mark.parametrize("argv", [
    [],
    ["encode"],
    ["encode", "--cover", "c.png", "--text", "t.txt"],
    ["transcode"],
    ["capacity", "--cover", "c.png", "--verbosity", "5"],
    ["baseline"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 64
    assert run(argv + ["--json"]) == 64
    err = capsys.readouterr()
    assert "UsageError" in err.err
    assert json.loads(err.out.strip().splitlines()[-1])["error"] == "UsageError"

def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == 0
    assert "encode" in capsys.readouterr().out

def test_capacity_exceeded(tmp_path, capsys):
    cover = str(tmp_path / "tiny.png")
    save_image(flat_cover(3, 3), cover)
    text = tmp_path / "long.txt"
    text.write_text("x" * 9, encoding="utf-8")
    code, doc = run_json(capsys, ["encode", "--cover", cover, "--text", str(text), "--out", str(tmp_path / "s.png"), \
        "--json"])
    assert code == 2
    assert doc["error"] == "CapacityExceeded"
    assert not os.path.exists(tmp_path / "s.png")

def test_unmappable_and_lossy(workdir, capsys):
    cover, stego, decoded = paths(workdir, "cover.png", "s.png", "d.txt")
    text = workdir / "accent.txt"
    text.write_text("café “ok”", encoding="utf-8")
    assert run(["encode", "--cover", cover, "--text", str(text), "--out", stego]) == 3

    code, doc = run_json(capsys, ["encode", "--cover", cover, "--text", str(text), "--out", stego, "--lossy", "--json"])
    assert code == 0
    assert doc["normalization"]["rejected"] == [[3, "é"]]
    assert len(doc["normalization"]["substitutions"]) == 2
    assert run(["decode", "--cover", cover, "--stego", stego, "--out", decoded]) == 0
    with open(decoded, encoding="utf-8", newline="") as f:
        assert f.read() == 'caf? "ok"'

def test_crlf_text(workdir, capsys):
    cover, stego = paths(workdir, "cover.png", "s.png")
    text = workdir / "crlf.txt"
    text.write_bytes(b"one\r\ntwo\r\n\r\nthree")
    assert run(["encode", "--cover", cover, "--text", str(text), "--out", stego]) == 0
    code, doc = run_json(capsys, ["decode", "--cover", cover, "--stego", stego, "--json"])
    assert doc["text"] == "one\ntwo\n\nthree"
    code, doc = run_json(capsys, ["metrics", "--cover", cover, "--stego", stego, "--reference-text", str(text), \
        "--json"])
    assert doc["cer"] == 0.

def test_format_errors(tmp_path, workdir):
    from PIL import Image
    jpeg = str(tmp_path / "cover.jpg")
    Image.new("RGB", (16, 16), (90, 90, 90)).save(jpeg, format="JPEG")
    text, = paths(workdir, "message.txt")
    assert run(["encode", "--cover", jpeg, "--text", text, "--out", str(tmp_path / "s.png")]) == 5
    assert run(["capacity", "--cover", str(tmp_path / "missing.png")]) == 5
    cover, = paths(workdir, "cover.png")
    assert run(["encode", "--cover", cover, "--text", text, "--out", str(tmp_path / "s.jpg")]) == 5
    assert run(["encode", "--cover", cover, "--text", str(tmp_path / "none.txt"), "--out", str(tmp_path / "s.png")]) == 5

def test_force_gray(workdir, capsys):
    cover, text, stego = paths(workdir, "cover.png", "message.txt", "gray.png")
    code, doc = run_json(capsys, ["encode", "--cover", cover, "--text", text, "--out", stego, "--force-gray", "--json"])
    assert code == 0
    assert doc["codec"] == "Grayscale"
    assert doc["pixels_used"] == 3 * doc["payload_count"]
    assert load_image(stego).channels == 1

    code, doc = run_json(capsys, ["decode", "--cover", cover, "--stego", stego, "--force-gray", "--json"])
    assert doc["text"] == (workdir / "message.txt").read_text(encoding="utf-8")
    # Without conversion the RGB cover does not match the grayscale stego
    assert run(["decode", "--cover", cover, "--stego", stego]) == 4

def test_analyze(workdir, capsys):
    cover, text, stego = paths(workdir, "cover.png", "message.txt", "stego.png")
    assert run(["encode", "--cover", cover, "--text", text, "--out", stego]) == 0
    outdir = str(workdir / "analysis")
    capsys.readouterr()
    assert run(["analyze", "--cover", cover, "--stego", stego, "--outdir", outdir, "--verbosity", "2"]) == 0
    out = capsys.readouterr().out
    assert "PyQSteg version" in out
    assert os.path.join(outdir, "report.json") in out
    assert len(os.listdir(outdir)) == 9
    with open(os.path.join(outdir, "report.json"), encoding="utf-8") as f:
        assert json.load(f)["payload_count"] == 41

def test_analyze_tampered_stego(workdir, capsys):
    cover, text, stego = paths(workdir, "cover.png", "message.txt", "stego.png")
    assert run(["encode", "--cover", cover, "--text", text, "--out", stego]) == 0
    samples = load_image(stego).pixels.copy()
    value = int(samples[-1, -1, 0])
    samples[-1, -1, 0] = value + 3 if (value < 128) else value - 3
    tampered = str(workdir / "tampered.png")
    save_image(RasterImage(samples), tampered)

    outdir = str(workdir / "analysis")
    capsys.readouterr()
    code, doc = run_json(capsys, ["analyze", "--cover", cover, "--stego", tampered, "--outdir", outdir, "--json"])
    assert code == 4
    assert doc["error"] == "DeltaOutOfRange"
    assert not os.path.exists(outdir)

def test_baseline_rejects_nul(tmp_path, capsys):
    cover = str(tmp_path / "cover.png")
    save_image(flat_cover(20, 1, channels=1), cover)
    data = tmp_path / "data.bin"
    data.write_bytes(b"a\x00b")
    stego = str(tmp_path / "lsb.png")
    code, doc = run_json(capsys, ["baseline", "lsb-encode", "--cover", cover, "--text", str(data), "--out", stego, \
        "--json"])
    assert code == 3
    assert doc["error"] == "ReservedSymbol"
    assert not os.path.exists(stego)

def test_codebook(tmp_path, capsys):
    out = str(tmp_path / "codebook.csv")
    assert run(["codebook", "--out", out]) == 0
    with open(out, encoding="utf-8", newline="") as f:
        lines = f.read().split("\n")
    assert lines[0] == "symbol,dr,dg,db,index"
    assert len(lines) == 100
    code, doc = run_json(capsys, ["codebook", "--json"])
    assert len(doc["symbols"]) == 98
    assert doc["symbols"][-1] == {"symbol" : "NUL", "triplet" : [1, 2, 0], "index" : 97}

def test_baseline(tmp_path, capsys):
    cover = str(tmp_path / "cover.png")
    save_image(flat_cover(20, 1, channels=1), cover)
    data = tmp_path / "data.bin"
    data.write_bytes(b"A")
    stego = str(tmp_path / "lsb.png")
    assert run(["baseline", "lsb-encode", "--cover", cover, "--text", str(data), "--out", stego]) == 0
    assert load_image(stego).samples[:8].tolist() == [128, 129, 128, 128, 128, 128, 128, 129]

    out = str(tmp_path / "back.bin")
    assert run(["baseline", "lsb-decode", "--stego", stego, "--out", out]) == 0
    with open(out, "rb") as f:
        assert f.read() == b"A"
    assert run(["baseline", "lsb-decode", "--stego", cover]) == 0

    capsys.readouterr()
    code, doc = run_json(capsys, ["baseline", "table3", "--json"])
    assert code == 0
    assert doc["methods"] == [{"method" : "LSB", "gray" : 8, "rgb" : 3}, {"method" : "MSB", "gray" : 8, "rgb" : 3}, \
        {"method" : "Proposed", "gray" : 3, "rgb" : 1}]
    assert run(["baseline", "table3", "--cover", cover]) == 64

def test_table3_measured(workdir, capsys):
    cover, text = paths(workdir, "cover.png", "message.txt")
    code, doc = run_json(capsys, ["baseline", "table3", "--cover", cover, "--text", text, "--json"])
    measured = doc["measured"]
    assert measured["characters"] == 41
    assert measured["quinary_pixels_modified"] <= 41
    assert measured["lsb_samples_spanned"] == 8 * 42

def test_parser_defaults():
    args = build_parser().parse_args(["capacity", "--cover", "c.png"])
    assert args.json == False
    assert args.verbosity == 0
    assert args.force_gray == False

def test_output_is_deterministic(workdir, capsys):
    cover, text = paths(workdir, "cover.png", "message.txt")
    outputs = []
    for name in ["a.png", "b.png"]:
        run(["encode", "--cover", cover, "--text", text, "--out", str(workdir / name), "--json"])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    assert np.array_equal(load_image(str(workdir / "a.png")).pixels, load_image(str(workdir / "b.png")).pixels)
