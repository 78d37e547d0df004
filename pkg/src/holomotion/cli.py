"""Command line: ``holomotion sample | verify | figure``.

Exit codes: 0 PASS, 2 FAIL, 3 INCONCLUSIVE, 64 usage or parameter-range error.
Every output is a deterministic function of the arguments.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import hausdorff, julia, metric, motion, render, symbolic
from . import report as rp
from .errors import BudgetExceeded, HolomotionError

EXIT = {rp.PASS: 0, rp.FAIL: 2, rp.INCONCLUSIVE: 3}
EX_USAGE = 64

DEFAULT_PX = (800, 600)
FIG1_TOP_C = [k / 20 for k in range(6)]
FIG1_BOTTOM_SAMPLES = 128
FIG1_BOTTOM_DEPTH = 6
FIG2_MU = [4.0, 4.1, 4.3, 4.6, 5.0]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as FAIL
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """The parsed command line; two equal configs produce byte-identical output."""

    command: str
    claim: str | None = None
    family: str = "q"
    depth: int | None = None
    tol: float | None = None
    out: str | None = None
    format: str = "csv"
    view: tuple | None = None
    px: tuple = DEFAULT_PX
    params: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        own = {f for f in cls.__dataclass_fields__ if f != "params"}
        kw = {k: v for k, v in vars(args).items() if k in own}
        rest = {k: v for k, v in vars(args).items() if k not in own and k != "func"}
        return cls(params=rest, **kw)

    def validate(self):
        if self.depth is not None and self.depth < 0:
            raise UsageError("depth must be >= 0")
        if self.tol is not None and self.tol < 0:
            raise UsageError("tol must be >= 0")


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _view(text: str) -> tuple:
    v = _floats(text)
    if len(v) != 4 or v[0] >= v[1] or v[2] >= v[3]:
        raise argparse.ArgumentTypeError("view must be xmin,xmax,ymin,ymax with min < max")
    return tuple(v)


def _px(text: str) -> tuple:
    try:
        w, h = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("px must be W,H") from None
    if w <= 0 or h <= 0:
        raise argparse.ArgumentTypeError("px must be positive")
    return w, h


# sampling

def cloud_for(family: str, value: float, depth: int) -> julia.PointCloud:
    if family == "q":
        return julia.sample_inverse_iteration(value, depth)
    if value >= 4:
        return julia.real_pullback(value, depth)
    return hausdorff.logistic_cloud(value, depth)


def _write(out: str | None, data: bytes | str):
    raw = data.encode("utf-8") if isinstance(data, str) else data
    if out is None or out == "-":
        sys.stdout.buffer.write(raw)
        sys.stdout.flush()
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_bytes(raw)


def encode_cloud(cloud: julia.PointCloud, fmt: str, view=None, px=DEFAULT_PX) -> bytes:
    if fmt == "csv":
        return cloud.to_csv().encode()
    if fmt == "json":
        return (cloud.to_json() + "\n").encode()
    view = view or render.default_view(cloud.points)
    if fmt == "ppm":
        return render.ppm_bytes(render.pixels(cloud.points, view, px))
    if fmt == "svg":
        return render.svg_text(cloud.points, view, px).encode()
    raise UsageError(f"unknown format {fmt}")


def cmd_sample(args) -> int:
    value = args.c if args.family == "q" else args.mu
    if value is None:
        raise UsageError("--c is required for family q" if args.family == "q"
                         else "--mu is required for family f")
    if args.escape_time:
        if args.family != "q" or args.format != "ppm":
            raise UsageError("--escape-time needs --family q --format ppm")
        view = args.view or (-2.0, 2.0, -1.5, 1.5)
        counts = julia.escape_raster(value, view, args.px, args.max_iter)
        _write(args.out, render.escape_ppm(counts, args.max_iter))
        return 0
    cloud = cloud_for(args.family, value, args.depth)
    _write(args.out, encode_cloud(cloud, args.format, args.view, args.px))
    return 0


# verification

def _run_claim(args) -> rp.Report:
    claim = args.claim
    if claim == "thm12":
        c = _one(args.c, 0.2)
        return motion.verify_thm12(c, julia.sample_inverse_iteration(c, _d(args.depth, 12)),
                                   _d(args.tol, 1e-9))
    if claim == "thm13":
        mus = args.mu or [4.1, 4.01, 4.001, 4.0001]
        return motion.verify_thm13_grid(mus, _d(args.depth, 14), args.factor)
    if claim == "corollary":
        return hausdorff.verify_corollary(_one(args.c, 0.0), _d(args.depth, 16), _d(args.tol, 0.01))
    if claim == "holder14":
        grid = args.c or [0.0, 0.1, 0.2, 0.24]
        words = [args.word] if args.word is not None else list(motion.all_words(args.max_depth))
        reps = [motion.verify_holder_14(w, grid, _d(args.tol, 1e-9)) for w in words]
        return rp.combine("holder14", reps, {"c_grid": grid, "words": len(words)},
                          {"tol": _d(args.tol, 1e-9)})
    if claim == "prop_delta":
        mu = _one(args.mu, 4.0)
        z = args.z[0] if args.z else 1 - 1 / mu
        delta = args.delta if args.delta is not None else min(z, 1 - z)
        return motion.verify_bounded_orbit_prop(mu, z, delta, _d(args.tol, 1e-12))
    if claim == "remark22":
        return hausdorff.verify_remark22(_one(args.mu, 1.5), _d(args.depth, 14), _d(args.tol, 0.01))
    if claim == "expansion":
        mu = _one(args.mu, 4.0)
        return metric.verify_expansion(mu, julia.real_pullback(mu, _d(args.depth, 14)).points)
    if claim == "koenigs":
        return metric.verify_koenigs(_one(args.mu, 4.0), args.z or [0.01, 0.05, 0.09],
                                     _d(args.tol, 1e-8))
    if claim == "kneading":
        return symbolic.verify_kneading(args.n)
    raise UsageError(f"unknown claim {claim}")


def _d(value, default):
    return default if value is None else value


def _one(values, default):
    if not values:
        return default
    if len(values) != 1:
        raise UsageError("expected a single value")
    return values[0]


def cmd_verify(args) -> int:
    rep = _run_claim(args)
    _write(args.out, rep.to_json())
    return EXIT[rep.verdict]


# figures

def fig1_top(out: Path, depth: int, px) -> list[Path]:
    view = (-1.9, 1.9, -1.3, 1.3)
    files = []
    for k, c in enumerate(FIG1_TOP_C):
        cloud = julia.sample_inverse_iteration(c, depth)
        for ext in ("csv", "ppm"):
            p = out / f"fig1_top_k{k}.{ext}"
            p.write_bytes(encode_cloud(cloud, ext, view, px))
            files.append(p)
    return files


def fig1_bottom_rows(depth: int = FIG1_BOTTOM_DEPTH, samples: int = FIG1_BOTTOM_SAMPLES):
    cs = np.linspace(0.0, 0.25, samples)
    for w in motion.all_words(depth):
        label = "".join("+" if s > 0 else "-" for s in w) or "beta"
        for c in cs:
            z = motion.track_prefixed(float(c), w)
            yield label, float(c), z


def fig1_bottom(out: Path) -> list[Path]:
    p = out / "fig1_bottom.csv"
    lines = ["word,c,re,im"]
    lines += [f"{w},{c:.15g},{z.real:.15g},{z.imag:.15g}" for w, c, z in fig1_bottom_rows()]
    p.write_text("\n".join(lines) + "\n")
    return [p]


def fig2(out: Path, depth: int, px) -> list[Path]:
    files = []
    view = (-0.05, 1.05, -0.05, 0.05)
    for mu in FIG2_MU:
        cloud = julia.real_pullback(mu, depth)
        stem = f"fig2_mu{mu:.1f}"
        for ext in ("csv", "ppm"):
            p = out / f"{stem}.{ext}"
            p.write_bytes(encode_cloud(cloud, ext, view, px))
            files.append(p)
    return files


def cmd_figure(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.which == "fig1_top":
        files = fig1_top(out, _d(args.depth, 12), args.px)
    elif args.which == "fig1_bottom":
        files = fig1_bottom(out)
    else:
        files = fig2(out, _d(args.depth, 12), (args.px[0], max(8, args.px[1] // 10)))
    for f in files:
        print(f)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="holomotion", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sample", help="write a Julia set sample")
    s.add_argument("--family", choices=["q", "f"], default="q")
    s.add_argument("--c", type=float)
    s.add_argument("--mu", type=float)
    s.add_argument("--depth", type=int, default=12)
    s.add_argument("--format", choices=["csv", "json", "ppm", "svg"], default="csv")
    s.add_argument("--out", help="output file (default stdout)")
    s.add_argument("--view", type=_view, help="xmin,xmax,ymin,ymax (default: cloud bounds)")
    s.add_argument("--px", type=_px, default=DEFAULT_PX, help="W,H (default 800,600)")
    s.add_argument("--escape-time", action="store_true", help="escape-time raster instead")
    s.add_argument("--max-iter", type=int, default=200)
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", help="check one claim and print a JSON report")
    v.add_argument("claim", choices=["thm12", "thm13", "corollary", "holder14", "prop_delta",
                                     "remark22", "expansion", "koenigs", "kneading"])
    v.add_argument("--c", type=_floats, help="c value (or grid for holder14)")
    v.add_argument("--mu", type=_floats, help="mu value (or grid for thm13)")
    v.add_argument("--z", type=_floats)
    v.add_argument("--delta", type=float)
    v.add_argument("--depth", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--factor", type=float, default=4.0)
    v.add_argument("--word", help="branch word such as '+-+' (holder14)")
    v.add_argument("--max-depth", type=int, default=6)
    v.add_argument("--n", type=int, default=64)
    v.add_argument("--out", help="report file (default stdout)")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("figure", help="write figure data")
    f.add_argument("which", choices=["fig1_top", "fig1_bottom", "fig2"])
    f.add_argument("--out", required=True, help="output directory")
    f.add_argument("--depth", type=int)
    f.add_argument("--px", type=_px, default=DEFAULT_PX)
    f.set_defaults(func=cmd_figure)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        RunConfig.from_args(args).validate()
        return args.func(args)
    except (UsageError, BudgetExceeded, ValueError) as exc:
        print(f"holomotion: {exc}", file=sys.stderr)
        return EX_USAGE
    except HolomotionError as exc:
        print(f"holomotion: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
