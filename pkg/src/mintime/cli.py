"""Command-line entry point: ``mintime eval|project|subdiff|enlarge|verify|plot``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import io, oracle, plot, verify
from .geometry.rational import INF, UnsupportedDimension, fmt, vec
from .scenes import FIXTURES, fixture
from .subdiff import RegimeError, subdiff, subdiff_outset_via_enlargement
from .timefn import EmptyProjection, enlargement, minimal_time, projection_set

WHICH = ("basic", "singular", "frechet-eps", "one-sided", "one-sided-singular")


def _point(text: str) -> tuple:
    try:
        return vec(Fraction(p.strip()) for p in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a comma-separated list of rationals: {text!r}") from None


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mintime", description="Exact minimal time functions and their subdifferentials.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, point=True):
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--scene", help="scene JSON file")
        src.add_argument("--fixture", choices=FIXTURES, help="built-in scene")
        if point:
            sp.add_argument("--point", type=_point, help="query point, e.g. 1/2,1/2 (default: the scene's points)")
        sp.add_argument("--out", help="write the report here instead of stdout")

    common(sub.add_parser("eval", help="minimal time, gauge at the witness and witness data"))
    common(sub.add_parser("project", help="generalized projection onto the target"))
    sp = sub.add_parser("subdiff", help="subdifferential sets with exactness flags")
    common(sp)
    sp.add_argument("--which", choices=WHICH, default="basic")
    sp.add_argument("--eps", type=_rat, default=Fraction(0))
    sp = sub.add_parser("enlarge", help="target enlargement {T <= r}")
    common(sp, point=False)
    sp.add_argument("--r", type=_rat, required=True, dest="r")
    sp = sub.add_parser("verify", help="run verification suites (exit status 1 on any failure)")
    common(sp, point=False)
    sp.add_argument("--suite", default="all", help="comma-separated suites, 'all', or '' for none")
    sp.add_argument("--eps", type=_rat, action="append", help="eps levels for the eps suites (repeatable)")
    sp.add_argument("--eta", type=_rat, default=verify.ETA)
    sp.add_argument("--random", type=int, default=0, help="also run on this many random scenes")
    sp.add_argument("--kind", choices=("polyhedral", "convex", "two-box"), default="polyhedral")
    sp.add_argument("--seed", type=int, default=0)
    sp = sub.add_parser("plot", help="SVG figure of a planar scene")
    common(sp)
    sp.add_argument("--what", default=",".join(plot.OVERLAYS), help="comma-separated overlays: " + ", ".join(plot.OVERLAYS))
    return p


def _load(args):
    if args.scene:
        return io.load_scene(args.scene)
    return fixture(args.fixture or "segment-box")


def _points(args, scene):
    if getattr(args, "point", None) is not None:
        if len(args.point) != scene.dim:
            raise ValueError(f"point has {len(args.point)} coordinates, scene is in R^{scene.dim}")
        return [args.point]
    return [vec(p) for p in scene.points]


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args, scene) -> dict:
    results = []
    for x in _points(args, scene):
        t = scene.T(x)
        entry = {"point": x, "T": t}
        if not scene.closed_form and t != INF:
            _, wit = minimal_time(scene.dynamics, scene.target, x)
            if wit is not None:
                entry["witness"] = {"w": wit.w, "piece": wit.piece, "q": wit.q, "lambda": wit.lam}
                entry["gauge_at_witness"] = scene.dynamics.gauge(tuple(a - b for a, b in zip(wit.w, x)))
            entry["support_samples"] = {
                ",".join(fmt(c) for c in e): scene.dynamics.support(e) for e in _unit_vectors(scene.dim)
            }
        results.append(entry)
    return io.make_report("eval", scene.name, results)


def _unit_vectors(n):
    out = []
    for i in range(n):
        for s in (1, -1):
            e = [0] * n
            e[i] = s
            out.append(tuple(e))
    return out


def cmd_project(args, scene) -> dict:
    if scene.closed_form:
        raise ValueError("projections are computed for polyhedral scenes")
    results = []
    for x in _points(args, scene):
        try:
            proj = projection_set(scene.dynamics, scene.target, x)
        except EmptyProjection as exc:
            results.append({"point": x, "T": INF, "projection": None, "note": str(exc)})
            continue
        results.append({
            "point": x,
            "T": proj.witness.t,
            "projection": proj.pieces,
            "singleton": proj.is_singleton(),
            "witness": proj.witness.w,
        })
    return io.make_report("project", scene.name, results)


def cmd_subdiff(args, scene) -> dict:
    results = []
    for x in _points(args, scene):
        if args.which == "frechet-eps":
            v = oracle.sampled_frechet_subdiff(scene, x, args.eps)
            results.append({
                "point": x, "which": "frechet-eps", "eps": args.eps, "exactness": "sampled",
                "members": v.members(), "uncertain": v.uncertain(),
            })
            continue
        if scene.closed_form:
            raise ValueError("set-valued subdifferentials are polyhedral only for polyhedral scenes; use --which frechet-eps")
        lipschitz = None
        if args.which.startswith("one-sided"):
            lipschitz = oracle.calmness_probe(scene, x).lipschitz
        res = subdiff(scene.dynamics, scene.target, x, args.which, lipschitz=lipschitz)
        results.append({
            "point": x, "which": args.which, "set": res.set, "exactness": res.exactness,
            "source": res.source, "hypotheses": res.hypotheses,
        })
    return io.make_report("subdiff", scene.name, results)


def cmd_enlarge(args, scene) -> dict:
    if scene.closed_form:
        raise ValueError("enlargements are polyhedral only for polyhedral scenes")
    target = enlargement(scene.dynamics, scene.target, args.r)
    return io.make_report("enlarge", scene.name, [{"r": args.r, "pieces": [P.describe() for P in target.pieces]}])


def cmd_verify(args, scene_list) -> tuple[dict, int]:
    ctx = verify.Context(eta=args.eta)
    if args.eps:
        ctx.eps_levels = tuple(args.eps)
    rep = verify.run(scene_list, args.suite, ctx)
    results = [c.to_dict() for c in rep.checks]
    report = io.make_report("verify", ",".join(s.name for s in scene_list), results, failed=len(rep.failed))
    report["summary"] = io.encode(rep.summary())
    return report, 0 if rep.passed else 1


def cmd_plot(args, scene) -> str:
    what = [w for w in args.what.split(",") if w]
    pts = _points(args, scene)
    return plot.render(scene, what, pts[0] if pts and args.point is not None else None)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            if args.scene or args.fixture:
                scenes = [_load(args)]
            else:
                scenes = verify.fixture_scenes()
            if args.random:
                scenes += verify.random_scenes(args.kind, args.random, args.seed)
            report, code = cmd_verify(args, scenes)
            _emit(args, io.dumps_report(report))
            s = report["summary"]
            print(f"{s['checks']} checks, {s['failed']} failed", file=sys.stderr)
            return code
        scene = _load(args)
        if args.command == "plot":
            _emit(args, cmd_plot(args, scene))
            return 0
        handler = {"eval": cmd_eval, "project": cmd_project, "subdiff": cmd_subdiff, "enlarge": cmd_enlarge}[args.command]
        _emit(args, io.dumps_report(handler(args, scene)))
        return 0
    except io.SceneParseError as exc:
        print(f"error: scene: {exc}", file=sys.stderr)
        return 2
    except (RegimeError, EmptyProjection, UnsupportedDimension, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
