"""Command-line entry point: ``patchlift <command> [options]``.

Exit codes: 0 success, 1 usage or validation error, 2 I/O error.
"""
from __future__ import annotations

import argparse
import sys
import time

from .bench import METHODS_1D, METHODS_2D, BenchRecord, format_table, run_bench, run_method
from .core import NlmParams, ValidationError
from .io import ImageFormatError, read_pgm, read_signal_csv, write_pgm, write_signal_csv
from .kernel import compute_banded_kernel, kernel_to_csv_rows
from .metrics import MetricReport, add_awgn
from .ops import OpCounter


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text):
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError(f"expected positive integers: {text!r}")
    return vals


def _nonneg_int_list(text):
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not vals or any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"expected nonnegative integers: {text!r}")
    return vals


def _add_nlm_flags(sp):
    sp.add_argument("--search", type=int, default=10, help="search radius S (default 10)")
    sp.add_argument("--patch", type=int, default=3, help="patch radius K (default 3)")
    sp.add_argument("--h", type=float, required=True, help="smoothing parameter h")


def _cmd_denoise(args):
    img = read_pgm(args.input)
    p = NlmParams(args.search, args.patch, args.h)
    counter = OpCounter()
    t0 = time.perf_counter()
    out = run_method(args.method, img, p, args.threads, counter)
    elapsed = max(time.perf_counter() - t0, 1e-9)
    write_pgm(out, args.output)
    print(BenchRecord(args.method, max(img.shape), p, elapsed, counter))
    return 0


def _cmd_denoise1d(args):
    f = read_signal_csv(args.input)
    p = NlmParams(args.search, args.patch, args.h)
    counter = OpCounter()
    t0 = time.perf_counter()
    out = run_method(f"nlm1d-{args.method}", f, p, 1, counter)
    elapsed = max(time.perf_counter() - t0, 1e-9)
    write_signal_csv(out, args.output)
    print(BenchRecord(f"nlm1d-{args.method}", f.size, p, elapsed, counter))
    return 0


def _cmd_kernel(args):
    f = read_signal_csv(args.input)
    kern = compute_banded_kernel(f, args.search, args.patch)
    lines = ["i,j,value"] + [f"{i},{j},{v:.12g}" for i, j, v in kernel_to_csv_rows(kern)]
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_noise(args):
    img = read_pgm(args.input)
    write_pgm(add_awgn(img, args.sigma, args.seed), args.output)
    return 0


def _cmd_metrics(args):
    print(MetricReport.compare(read_pgm(args.ref), read_pgm(args.test)))
    return 0


def _cmd_bench(args):
    methods = args.methods or (
        ["nlm2d", "snlm"] if args.mode == "2d" else list(METHODS_1D))
    allowed = METHODS_2D if args.mode == "2d" else METHODS_1D
    bad = [m for m in methods if m not in allowed]
    if bad:
        raise UsageError(f"methods {bad} not available in {args.mode} mode; choose from {allowed}")
    records = run_bench(args.sizes, args.search, args.patch, methods, args.trials,
                        args.seed, args.mode, args.h, args.threads)
    print(format_table(records, args.mode))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="patchlift", description="PatchLift NLM denoising tools")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("denoise", help="denoise a PGM image")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--method", choices=METHODS_2D, default="snlm")
    _add_nlm_flags(sp)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=_cmd_denoise)

    sp = sub.add_parser("denoise1d", help="denoise a one-column CSV signal")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--method", choices=("naive", "patchlift"), default="patchlift")
    _add_nlm_flags(sp)
    sp.set_defaults(func=_cmd_denoise1d)

    sp = sub.add_parser("kernel", help="dump the banded kernel of a CSV signal")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output")
    sp.add_argument("--search", type=int, default=10)
    sp.add_argument("--patch", type=int, default=3)
    sp.set_defaults(func=_cmd_kernel)

    sp = sub.add_parser("noise", help="add seeded Gaussian noise to a PGM image")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_noise)

    sp = sub.add_parser("metrics", help="compare two PGM images")
    sp.add_argument("--ref", required=True)
    sp.add_argument("--test", required=True)
    sp.set_defaults(func=_cmd_metrics)

    sp = sub.add_parser("bench", help="time the filters on random inputs")
    sp.add_argument("--mode", choices=("2d", "1d"), default="2d")
    sp.add_argument("--sizes", type=_int_list, default=[64, 128, 256])
    sp.add_argument("--search", type=int, default=10)
    sp.add_argument("--patch", type=_nonneg_int_list, default=[3],
                    help="patch radius, or a comma-separated sweep")
    sp.add_argument("--methods", type=lambda s: [m for m in s.split(",") if m])
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--h", type=float, default=30.0)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"patchlift: validation error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ImageFormatError) as exc:
        print(f"patchlift: I/O error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"patchlift: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
