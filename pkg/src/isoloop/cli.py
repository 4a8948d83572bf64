"""Command-line front end.

Subcommands: generate, extract, transport, certify, paper.  Outputs are
deterministic (sorted JSON keys, no timestamps); exit codes are 1 for usage
errors, 2 for validation errors, 3 for word-cap overflow.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .braidextract import BraidWord, extract_word, subdivide
from .configspace import (
    as_fraction,
    centroid,
    gen_cascade,
    gen_rotation,
    gen_translation,
    load_trajectory,
    save_trajectory,
    validate_config,
    validity_report,
)
from .errors import IsoloopError, WordOverflow
from .geomoracle import (
    carry_factor,
    carry_steps,
    polyline_from_word,
    round_polyline,
)
from .loopalgebra import parse_class, round_loop, certify
from .svgrender import render_frame, save_frames
from .transport import cascade_experiment, stretch_profile, transport

EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_OVERFLOW = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _parse_points(text):
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        x, y = chunk.split(",")
        pts.append((as_fraction(x.strip()), as_fraction(y.strip())))
    return validate_config(pts)


def _parse_range(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    k = int(text)
    return range(k, k + 1)


def _write_json(data, path):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _initial_class(args, n):
    if args.round:
        j, k = args.round
        return round_loop(j, k, n)
    if args.klass:
        return parse_class(n, args.klass)
    raise ValueError("give an initial class: --round J K or --class 'letters'")


def cmd_generate(args):
    modes = [args.cascade is not None, args.rotate is not None or args.turns is not None,
             args.translate is not None]
    if sum(modes) != 1:
        raise ValueError("choose exactly one of --cascade, --rotate/--turns, --translate")
    if args.cascade is not None:
        traj = gen_cascade(args.cascade, args.steps)
    else:
        if not args.points:
            raise ValueError("rigid motions need --points 'x,y;x,y;...'")
        config = _parse_points(args.points)
        if args.translate is not None:
            dx, dy = args.translate.split(",")
            traj = gen_translation(config, (dx.strip(), dy.strip()), args.steps)
        else:
            if args.turns is not None:
                turns = as_fraction(args.turns)
            else:
                turns = Fraction(args.rotate) / (2 * Fraction(math.pi))
            center = (
                _parse_points(args.center).points[0]
                if args.center
                else centroid(config)
            )
            traj = gen_rotation(config, center, turns, args.steps)
    save_trajectory(traj, args.out, args.format)
    print(f"wrote {args.out} ({traj.n} points, {traj.steps} steps)")
    print(validity_report(traj).summary())
    return 0


def cmd_extract(args):
    traj = load_trajectory(args.traj)
    word, margins = extract_word(traj)
    print(margins.summary())
    if args.out:
        if args.format == "text":
            with open(args.out, "w") as fh:
                fh.write(word.format() + "\n")
        else:
            _write_json({"n": word.n, "word": list(word.letters)}, args.out)
        print(f"wrote {args.out} ({len(word)} letters)")
    else:
        print(word.format() or "(empty word)")
    return 0


def cmd_transport(args):
    traj = load_trajectory(args.traj)
    if args.subdivide:
        traj = subdivide(traj, args.subdivide)
    c0 = _initial_class(args, traj.n)
    record = transport(traj, c0, cap=args.word_cap)
    series, peak = stretch_profile(record)
    report = {
        "experiment": "transport",
        "n": traj.n,
        "initial_class": list(c0.word),
        "final_class": list(record.final_class.word),
        "word": list(record.word.letters),
        "profile": [[float(t), float(d)] for t, d in series],
        "peak": str(float(peak)),
        "peak_exact": str(peak),
    }
    if args.out:
        _write_json(report, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(report, indent=1, sort_keys=True))
    if args.svg:
        factor = carry_factor(traj)
        fine = subdivide(traj, factor) if factor > 1 else traj
        if c0.word and all(
            c0.word[i] + 1 == c0.word[i + 1] for i in range(len(c0.word) - 1)
        ):
            loop = round_polyline(fine.initial(), c0.word[0], c0.word[-1])
        else:
            loop = polyline_from_word(c0.word, fine.initial())
        frames = [render_frame(fine.initial(), loop)]
        for k, carried in carry_steps(loop, fine):
            frames.append(render_frame(fine.samples[k + 1][1], carried))
        paths = save_frames(frames, args.svg)
        print(f"wrote {len(paths)} frames to {args.svg}")
    return 0


def cmd_certify(args):
    traj = load_trajectory(args.traj)
    c = _initial_class(args, traj.n)
    t = as_fraction(args.time)
    config = min(traj.samples, key=lambda s: abs(s[0] - t))[1]
    cert = certify(c, config)
    data = cert.to_json_dict()
    if args.out:
        _write_json(data, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(data, indent=1, sort_keys=True))
    return 0


def cmd_paper(args):
    rows = []
    for n in _parse_range(args.n):
        report = cascade_experiment(n, args.steps, cap=args.word_cap)
        rows.append(report)
    width = max(len("certified"), *(len(r["certified_exact"]) for r in rows))
    print(f"{'n':>3}  {'certified':>{width}}  {'target':>8}  result")
    for r in rows:
        print(
            f"{r['n']:>3}  {r['certified_exact']:>{width}}  "
            f"{r['paper_bound_exact']:>8}  {'pass' if r['pass'] else 'FAIL'}"
        )
    if args.out:
        if args.format == "csv":
            with open(args.out, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(
                    ["n", "certified", "certified_exact", "paper_bound",
                     "paper_bound_exact", "pass"]
                )
                for r in rows:
                    writer.writerow(
                        [r["n"], r["certified"], r["certified_exact"],
                         r["paper_bound"], r["paper_bound_exact"], r["pass"]]
                    )
        else:
            _write_json(rows, args.out)
        print(f"wrote {args.out}")
    return 0 if all(r["pass"] for r in rows) else EXIT_VALIDATION


def build_parser():
    parser = _Parser(prog="isoloop", description=__doc__)
    parser.add_argument("--version", action="version", version=f"isoloop {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a trajectory file")
    p.add_argument("--cascade", type=int, metavar="N",
                   help="built-in stretch family on n points")
    p.add_argument("--rotate", type=float, metavar="RADIANS",
                   help="rigid rotation angle in radians")
    p.add_argument("--turns", metavar="TURNS",
                   help="rigid rotation angle in turns (rational, exact)")
    p.add_argument("--translate", metavar="DX,DY", help="rigid translation")
    p.add_argument("--center", metavar="X,Y", help="rotation center (default centroid)")
    p.add_argument("--points", metavar="PTS", help="base configuration 'x,y;x,y;...'")
    p.add_argument("--steps", type=int, default=16,
                   help="samples per orbit / per motion (default 16)")
    p.add_argument("--out", required=True, help="output trajectory path")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("extract", help="extract the braid word of a trajectory")
    p.add_argument("--traj", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("transport", help="transport a loop class along a trajectory")
    p.add_argument("--traj", required=True)
    p.add_argument("--round", type=int, nargs=2, metavar=("J", "K"),
                   help="initial class: round loop about punctures J..K")
    p.add_argument("--class", dest="klass", metavar="WORD",
                   help="initial class as letters, e.g. '1 2 -1'")
    p.add_argument("--subdivide", type=int, metavar="K")
    p.add_argument("--word-cap", type=int, default=None)
    p.add_argument("--svg", metavar="DIR", help="render per-sample frames")
    p.add_argument("--out")
    p.set_defaults(func=cmd_transport)

    p = sub.add_parser("certify", help="certificate of a class over a sampled config")
    p.add_argument("--traj", required=True)
    p.add_argument("--round", type=int, nargs=2, metavar=("J", "K"))
    p.add_argument("--class", dest="klass", metavar="WORD")
    p.add_argument("--time", default="0", help="sample time (nearest sample is used)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("paper", help="run the stretch experiment over a range of n")
    p.add_argument("--n", required=True, metavar="A..B", help="e.g. 3..12")
    p.add_argument("--steps", type=int, default=16)
    p.add_argument("--word-cap", type=int, default=None)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_paper)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WordOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IsoloopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
