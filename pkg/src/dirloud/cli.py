"""Command line front end: ``dirloud map|compare|batch|synth``."""
from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from pathlib import Path

from . import synth
from .distortion import dld, map_difference, pearson
from .errors import DegenerateInput, DirloudError, UsageError
from .export import fmt, write_map_csv, write_pgm
from .pipeline import AnalysisConfig, analyze
from .signal_io import ENCODINGS, align_pair, load_stereo_wav, write_stereo_wav

MANIFEST_COLUMNS = ("item_id", "ref_path", "sut_path")


def parse_bands(text: str) -> tuple:
    text = text.strip()
    if text == "all":
        return tuple(range(20))
    try:
        if ".." in text:
            lo, hi = (int(v) for v in text.split(".."))
            return tuple(range(lo, hi + 1))
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse band range {text!r} (expected LO..HI)") from None


_CONFIG_KEYS = {
    "directions": ("directions", int),
    "xi": ("xi", float),
    "bands": ("bands", parse_bands),
    "fmin": ("f_min", float),
    "f_min": ("f_min", float),
    "block": ("block", int),
    "hop": ("hop", int),
    "any_rate": ("allow_any_rate", lambda v: v.strip().lower() in ("1", "true", "yes", "on")),
}


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: cannot parse {line!r}")
        name, conv = _CONFIG_KEYS[key]
        try:
            out[name] = conv(value.strip())
        except ValueError as exc:
            raise UsageError(f"{path}:{n}: {exc}") from None
    return out


def build_config(args) -> AnalysisConfig:
    """Defaults, overridden by the config file, overridden by flags."""
    values = {}
    if args.config:
        values.update(read_config_file(args.config))
    flags = {"directions": args.directions, "xi": args.xi, "bands": args.bands,
             "f_min": args.fmin, "block": args.block, "hop": args.hop}
    values.update({k: v for k, v in flags.items() if v is not None})
    if args.any_rate:
        values["allow_any_rate"] = True
    try:
        config = AnalysisConfig().replace(**values)
        # StftConfig/DirectionBank validate on construction
        _ = (config.stft, config.bank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return config


def _analysis_options(p):
    g = p.add_argument_group("analysis")
    g.add_argument("--config", help="key=value configuration file")
    g.add_argument("--directions", type=int, metavar="J", help="panning directions (22)")
    g.add_argument("--xi", type=float, metavar="XI", help="direction window width (0.006)")
    g.add_argument("--bands", type=parse_bands, metavar="LO..HI",
                   help="ERB band subset, inclusive, or 'all' (7..19)")
    g.add_argument("--fmin", type=float, metavar="HZ", help="lowest ERB band edge (0)")
    g.add_argument("--block", type=int, metavar="N", help="STFT block size (1024)")
    g.add_argument("--hop", type=int, metavar="N", help="STFT hop (512)")
    g.add_argument("--any-rate", action="store_true", help="accept sample rates other than 48 kHz")
    g.add_argument("--jobs", type=int, default=1, metavar="N", help="worker count")


def _load(path, config):
    return load_stereo_wav(path, allow_any_rate=config.allow_any_rate)


def cmd_map(args) -> int:
    config = build_config(args)
    dmap = analyze(_load(args.input, config), config)
    write_map_csv(args.out, dmap)
    if args.pgm:
        write_pgm(args.pgm, dmap)
    return 0


def _maps_for_pair(ref_path, sut_path, config, jobs=1):
    ref, sut = align_pair(_load(ref_path, config), _load(sut_path, config))
    if jobs > 1:
        with ThreadPoolExecutor(2) as pool:
            return tuple(pool.map(lambda b: analyze(b, config), (ref, sut)))
    return analyze(ref, config), analyze(sut, config)


def cmd_compare(args) -> int:
    config = build_config(args)
    map_ref, map_sut = _maps_for_pair(args.ref, args.sut, config, args.jobs)
    report = dld(map_ref, map_sut)
    text = report.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.diff_csv or args.pgm:
        diff = map_difference(map_ref, map_sut)
        if args.diff_csv:
            write_map_csv(args.diff_csv, diff)
        if args.pgm:
            write_pgm(args.pgm, diff)
    return 0


def read_manifest(path):
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames or []
        missing = [c for c in MANIFEST_COLUMNS if c not in header]
        if missing:
            raise UsageError(f"{path}: manifest lacks columns {missing}")
        rows = list(reader)
    ids = [r["item_id"] for r in rows]
    if len(set(ids)) != len(ids):
        raise UsageError(f"{path}: duplicate item_id values")
    for r in rows:
        if not r["ref_path"] or not r["sut_path"]:
            raise UsageError(f"{path}: item {r['item_id']!r} has an empty path")
    extra = [c for c in header if c not in MANIFEST_COLUMNS]
    return rows, extra


def _batch_item(job):
    """Runs in a worker; returns ``(dld, frames, error, exit_code)``."""
    ref_path, sut_path, config = job
    try:
        map_ref, map_sut = _maps_for_pair(ref_path, sut_path, config)
        report = dld(map_ref, map_sut)
        return report.dld, report.frames, "", 0
    except DirloudError as exc:
        return None, None, f"{type(exc).__name__}: {exc}", exc.exit_code
    except OSError as exc:
        return None, None, f"{type(exc).__name__}: {exc}", 3


def _correlations(rows, results, extra):
    summary = []
    ok = [i for i, r in enumerate(results) if r[2] == ""]
    for col in extra:
        try:
            scores = [float(rows[i][col]) for i in ok]
        except (TypeError, ValueError):
            continue
        dlds = [results[i][0] for i in ok]
        try:
            r = fmt(pearson(dlds, scores))
        except DegenerateInput:
            r = ""
        summary.append((col, r, len(ok)))
    return summary


def cmd_batch(args) -> int:
    config = build_config(args)
    rows, extra = read_manifest(args.manifest)
    base = Path(args.manifest).resolve().parent
    jobs = [(base / r["ref_path"], base / r["sut_path"], config) for r in rows]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_batch_item, jobs))
    else:
        results = [_batch_item(j) for j in jobs]

    if args.strict:
        for row, res in zip(rows, results):
            if res[2]:
                print(f"dirloud: item {row['item_id']}: {res[2]}", file=sys.stderr)
                return res[3]

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["item_id", "dld", "frames", *extra, "error"])
    for row, (value, frames, error, _) in zip(rows, results):
        writer.writerow([row["item_id"], "" if value is None else fmt(value),
                         "" if frames is None else frames,
                         *(row[c] for c in extra), error])
    summary = _correlations(rows, results, extra)
    if summary:
        writer.writerow([])
        writer.writerow(["summary_column", "pearson_r", "n_items"])
        writer.writerows(summary)
    text = out.getvalue()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_synth(args) -> int:
    if args.gains:
        law = synth.PanLaw(*args.gains)
    else:
        law = synth.PanLaw.from_index(args.pan)
    if args.kind == "noise":
        buf = synth.panned_noise(law, args.duration, args.rate, args.seed, args.amplitude)
    elif args.kind == "sine":
        buf = synth.panned_sine(law, args.freq, args.duration, args.rate, args.amplitude)
    else:
        buf = synth.silence(args.duration, args.rate)
    if args.collapse is not None:
        buf = synth.pan_collapse(buf, args.collapse, args.interval or None)
    if args.crosstalk is not None:
        buf = synth.crosstalk(buf, args.crosstalk)
    write_stereo_wav(args.output, buf, args.encoding)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirloud",
        description="Directional loudness maps and directional loudness distortion (DLD).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map", help="directional loudness map of one stereo WAV")
    p.add_argument("input")
    p.add_argument("--out", "-o", required=True, help="CSV output path")
    p.add_argument("--pgm", help="also write an 8-bit PGM image")
    _analysis_options(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("compare", help="DLD report (JSON) for a REF/SUT pair")
    p.add_argument("ref")
    p.add_argument("sut")
    p.add_argument("--out", "-o", help="write JSON here instead of standard output")
    p.add_argument("--diff-csv", help="write the |REF - SUT| map as CSV")
    p.add_argument("--pgm", help="write the |REF - SUT| map as PGM")
    _analysis_options(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("batch", help="DLD for every pair in a CSV manifest")
    p.add_argument("manifest", help="CSV with item_id,ref_path,sut_path[,score columns...]")
    p.add_argument("--out", "-o", help="report CSV path (default: standard output)")
    p.add_argument("--strict", action="store_true", help="abort on the first failing item")
    _analysis_options(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("synth", help="write a synthetic panned test signal")
    p.add_argument("output")
    p.add_argument("--kind", choices=("noise", "sine", "silence"), default="noise")
    pan = p.add_mutually_exclusive_group()
    pan.add_argument("--pan", type=float, default=-1.0, help="panning index in [-1, 1]")
    pan.add_argument("--gains", type=float, nargs=2, metavar=("GL", "GR"))
    p.add_argument("--duration", type=float, default=1.0)
    p.add_argument("--rate", type=int, default=48000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--freq", type=float, default=1000.0)
    p.add_argument("--amplitude", type=float, default=0.25)
    p.add_argument("--collapse", type=float, metavar="ALPHA", help="pan collapse severity")
    p.add_argument("--interval", type=float, nargs=2, action="append", metavar=("T0", "T1"),
                   help="collapse interval in seconds (repeatable; default whole signal)")
    p.add_argument("--crosstalk", type=float, metavar="BETA")
    p.add_argument("--encoding", choices=sorted(ENCODINGS), default="pcm16")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DirloudError as exc:
        print(f"dirloud: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"dirloud: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"dirloud: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"dirloud: internal error: {exc!r}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
