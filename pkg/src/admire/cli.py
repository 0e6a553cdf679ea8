"""Command line front end: correct, baseline, simulate, evaluate, bench."""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .adaptive import AdmireParams, admire_pipeline
from .dct_denoise import DenoiseParams
from .metrics import evaluate
from .mire import ORIENTATIONS, MireParams, tv_line
from .pgm import read_pgm, write_pgm
from .simulate import apply_nu, make_nu_field
from .tvline_baseline import tv_baseline

BENCH_COLUMNS = ["image", "method", "rmse", "rmse_ci", "tv_before", "tv_after", "s_histogram", "wall_ms"]


class UsageError(ValueError):
    pass


@dataclass
class SimParams:
    seed: int = 1
    alpha: float = 0.1
    beta: float = 10.0
    gamma: float = 10.0
    noise_sigma: float = 0.0


@dataclass
class RunConfig:
    command: str
    inputs: list
    output: Optional[Path] = None
    admire: AdmireParams = field(default_factory=lambda: AdmireParams(denoise_enabled=False))
    sim: SimParams = field(default_factory=SimParams)
    seeds: list = field(default_factory=lambda: list(range(1, 11)))
    orientation: str = "columns"
    report_format: str = "text"
    s_map: Optional[Path] = None


def s_histogram(selection) -> str:
    values, counts = np.unique(np.asarray(selection), return_counts=True)
    return ";".join(f"{v:g}:{c}" for v, c in zip(values, counts))


def _format(pairs, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([k for k, _ in pairs])
        w.writerow([v for _, v in pairs])
        return buf.getvalue()
    return "".join(f"{k}: {v}\n" for k, v in pairs)


def _admire_header(p: AdmireParams):
    d = p.denoise
    return [
        ("orientation", p.mire.orientation),
        ("s_step", p.mire.s_step),
        ("s_max", p.mire.s_max),
        ("patch", p.patch_size),
        ("stride", p.stride),
        ("denoise", "on" if p.denoise_enabled else "off"),
        ("ti", d.T_i if p.denoise_enabled else ""),
        ("tj", d.T_j if p.denoise_enabled else ""),
    ]


def _check_inputs(config: RunConfig, count: int):
    if len(config.inputs) < count:
        raise UsageError(f"{config.command} needs {count} input file(s)")
    for p in config.inputs:
        if not Path(p).is_file():
            raise FileNotFoundError(f"input not found: {p}")


def _cmd_correct(config: RunConfig):
    _check_inputs(config, 1)
    img = read_pgm(config.inputs[0])
    out, sel = admire_pipeline(img, config.admire, return_selection=True)
    write_pgm(out, config.output)
    if config.s_map is not None:
        np.savetxt(config.s_map, sel, fmt="%g", delimiter=",")
    pairs = [("command", "correct"), ("input", config.inputs[0]), ("output", config.output)]
    pairs += _admire_header(config.admire)
    pairs += [
        ("s_histogram", s_histogram(sel)),
        ("s_nonzero_patches", int(np.count_nonzero(sel))),
        ("tv_before", tv_line(img, config.admire.mire.orientation)),
        ("tv_after", tv_line(out, config.admire.mire.orientation)),
    ]
    return pairs


def _cmd_baseline(config: RunConfig):
    _check_inputs(config, 1)
    img = read_pgm(config.inputs[0])
    out, off = tv_baseline(img, config.orientation, return_offsets=True)
    write_pgm(out, config.output)
    return [
        ("command", "baseline"),
        ("input", config.inputs[0]),
        ("output", config.output),
        ("orientation", config.orientation),
        ("mean_shift", off.mean_shift),
        ("clipped", off.clipped),
        ("tv_before", tv_line(img, config.orientation)),
        ("tv_after", tv_line(out, config.orientation)),
    ]


def simulate_image(img, sim: SimParams, orientation: str = "columns"):
    work = img.T if orientation == "rows" else img
    nu = make_nu_field(work.shape[1], sim.seed, sim.alpha, sim.beta, sim.gamma)
    out = apply_nu(work, nu, sim.noise_sigma, seed=sim.seed)
    return out.T.copy() if orientation == "rows" else out


def _cmd_simulate(config: RunConfig):
    _check_inputs(config, 1)
    img = read_pgm(config.inputs[0])
    s = config.sim
    write_pgm(simulate_image(img, s, config.orientation), config.output)
    return [
        ("command", "simulate"),
        ("input", config.inputs[0]),
        ("output", config.output),
        ("orientation", config.orientation),
        ("seed", s.seed),
        ("alpha", s.alpha),
        ("beta", s.beta),
        ("gamma", s.gamma),
        ("noise_sigma", s.noise_sigma),
    ]


def _cmd_evaluate(config: RunConfig):
    _check_inputs(config, 2)
    truth, test = read_pgm(config.inputs[0]), read_pgm(config.inputs[1])
    rep = evaluate(truth, test, config.orientation)
    return [
        ("command", "evaluate"),
        ("truth", config.inputs[0]),
        ("test", config.inputs[1]),
        ("orientation", config.orientation),
        ("rmse", f"{rep.rmse:.6f}"),
        ("rmse_ci", f"{rep.rmse_ci:.6f}"),
        ("tv_before", rep.tv_before),
        ("tv_after", rep.tv_after),
    ]


def bench_rows(images: dict, config: RunConfig):
    """Simulate, correct and score every (image, seed) pair.

    ``images`` maps a name to a clean uint8 array. Yields dicts keyed by
    :data:`BENCH_COLUMNS`.
    """
    orient = config.admire.mire.orientation
    for name, clean in images.items():
        for seed in config.seeds:
            sim = SimParams(seed, config.sim.alpha, config.sim.beta, config.sim.gamma, config.sim.noise_sigma)
            corrupted = simulate_image(clean, sim, orient)
            tv0 = tv_line(corrupted, orient)
            runs = [("corrupted", lambda: (corrupted, None))]
            runs.append(("admire", lambda: admire_pipeline(corrupted, config.admire, return_selection=True)))
            runs.append(("baseline", lambda: (tv_baseline(corrupted, orient), None)))
            for method, fn in runs:
                t0 = time.perf_counter()
                out, sel = fn()
                wall = (time.perf_counter() - t0) * 1000.0
                rep = evaluate(clean, out, orient)
                yield {
                    "image": f"{name}#seed={seed}",
                    "method": method,
                    "rmse": f"{rep.rmse:.6f}",
                    "rmse_ci": f"{rep.rmse_ci:.6f}",
                    "tv_before": tv0,
                    "tv_after": rep.tv_after,
                    "s_histogram": "" if sel is None else s_histogram(sel),
                    "wall_ms": f"{wall:.1f}",
                }


def _cmd_bench(config: RunConfig):
    _check_inputs(config, 1)
    images = {Path(p).stem: read_pgm(p) for p in config.inputs}
    buf = io.StringIO()
    s = config.sim
    buf.write(
        f"# alpha={s.alpha} beta={s.beta} gamma={s.gamma} noise_sigma={s.noise_sigma} "
        f"seeds={','.join(map(str, config.seeds))} "
        + " ".join(f"{k}={v}" for k, v in _admire_header(config.admire))
        + "\n"
    )
    w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in bench_rows(images, config):
        w.writerow(row)
    if config.output is not None:
        Path(config.output).write_text(buf.getvalue())
    return buf.getvalue()


COMMANDS = {
    "correct": _cmd_correct,
    "baseline": _cmd_baseline,
    "simulate": _cmd_simulate,
    "evaluate": _cmd_evaluate,
}


def run(config: RunConfig):
    """Execute one command; returns ``(exit_status, report_text)``."""
    if config.command == "bench":
        return 0, _cmd_bench(config)
    if config.command not in COMMANDS:
        raise UsageError(f"unknown command {config.command!r}")
    if config.command != "evaluate" and config.output is None:
        raise UsageError("missing output path")
    pairs = COMMANDS[config.command](config)
    return 0, _format(pairs, config.report_format)


def parse_seeds(text: str):
    seeds = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        else:
            seeds.append(int(part))
    return seeds


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="admire", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--orientation", choices=ORIENTATIONS, default="columns")
        p.add_argument("--format", dest="report_format", choices=("text", "csv"), default="text")

    def admire_flags(p):
        p.add_argument("--no-denoise", action="store_true")
        p.add_argument("--s-step", type=float, default=0.5)
        p.add_argument("--s-max", type=float, default=8.0)
        p.add_argument("--patch", type=int, default=8)
        p.add_argument("--stride", type=int, default=4)
        p.add_argument("--ti", type=float)
        p.add_argument("--tj", type=float)

    def sim_flags(p):
        p.add_argument("--alpha", type=float, default=0.1)
        p.add_argument("--beta", type=float, default=10.0)
        p.add_argument("--gamma", type=float, default=10.0)
        p.add_argument("--noise-sigma", type=float, default=0.0)

    p = sub.add_parser("correct", help="run the ADMIRE chain")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--s-map", help="write the per-patch s selection as CSV")
    admire_flags(p)
    common(p)

    p = sub.add_parser("baseline", help="TV column-offset baseline")
    p.add_argument("input")
    p.add_argument("output")
    common(p)

    p = sub.add_parser("simulate", help="corrupt an image with a random NU field")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--seed", type=int, default=1)
    sim_flags(p)
    common(p)

    p = sub.add_parser("evaluate", help="compare a test image against the truth")
    p.add_argument("truth")
    p.add_argument("test")
    common(p)

    p = sub.add_parser("bench", help="simulated-NU benchmark, CSV report")
    p.add_argument("images", nargs="+")
    p.add_argument("--seeds", default="1-10")
    p.add_argument("-o", "--output", help="also write the CSV here")
    admire_flags(p)
    sim_flags(p)
    common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cmd = ns.command
    orientation = ns.orientation
    config = RunConfig(command=cmd, inputs=[], orientation=orientation, report_format=ns.report_format)
    if cmd == "evaluate":
        config.inputs = [ns.truth, ns.test]
    elif cmd == "bench":
        config.inputs = list(ns.images)
        config.output = Path(ns.output) if ns.output else None
        config.seeds = parse_seeds(ns.seeds)
    else:
        config.inputs = [ns.input]
        config.output = Path(ns.output)
    if cmd in ("correct", "bench"):
        enabled = not ns.no_denoise
        denoise = None
        if ns.ti is not None or ns.tj is not None:
            if ns.ti is None or ns.tj is None:
                raise UsageError("--ti and --tj must be given together")
            denoise = DenoiseParams(ns.ti, ns.tj, ns.patch, orientation)
        elif cmd == "bench":
            enabled = False
        if enabled and denoise is None:
            raise UsageError("denoising needs --ti and --tj (or pass --no-denoise)")
        config.admire = AdmireParams(
            mire=MireParams(orientation=orientation, s_step=ns.s_step, s_max=ns.s_max),
            patch_size=ns.patch,
            stride=ns.stride,
            denoise=denoise,
            denoise_enabled=enabled,
        )
        if cmd == "correct" and ns.s_map:
            config.s_map = Path(ns.s_map)
    if cmd in ("simulate", "bench"):
        config.sim = SimParams(
            seed=getattr(ns, "seed", 1),
            alpha=ns.alpha,
            beta=ns.beta,
            gamma=ns.gamma,
            noise_sigma=ns.noise_sigma,
        )
    return config


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        status, report = run(config_from_args(ns))
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: not_found: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: invalid: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(report)
    return status


if __name__ == "__main__":
    sys.exit(main())
