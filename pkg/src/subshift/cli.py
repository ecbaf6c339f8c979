"""Command line front end: ``subshift query ...`` and ``subshift verify ...``.

Exit codes: 0 success, 1 a verification suite found a counterexample,
2 bad input or configuration.
"""

from __future__ import annotations

import argparse
import sys

from . import ideals, orbit
from .algebra import parse_element
from .errors import NotAField, SubshiftError
from .presets import PRESETS, preset
from .representation import apply, parse_vector
from .rings import parse_ring
from .shift import load_presentation
from .verify import FIELD_SUITES, SUITES, ConfigError, RunConfig, line_path, run_suite

QUERIES = ("lang", "member", "set", "mul", "act", "equiv", "transport", "linepaths", "psi", "psiinv")


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the same flags appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", metavar="PATH", help="presentation document (JSON)")
    common.add_argument("--preset", choices=sorted(PRESETS), help="built-in presentation")
    common.add_argument("--ring", help="int, rat or gf:p (default int)")
    common.add_argument("--bound", type=_positive, help="point description size and word length bound")
    common.add_argument("--word-bound", type=_positive, help="word length bound for relation checks")
    common.add_argument("--ray-cap", type=_positive, help="largest ray index enumerated")
    common.add_argument("--trials", type=_positive, help="number of seeded samples")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--line", metavar="POINT", help="line path for psi queries and suites")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="subshift", description="Subshift algebras: normal forms, representations, line-path ideals.", parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", parents=[common], help="evaluate one query")
    q.add_argument("kind", choices=QUERIES)
    q.add_argument("args", nargs="*")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite_name", nargs="?", metavar="SUITE", help=f"one of {', '.join(SUITES)}, or all")
    v.add_argument("--suite", dest="suite_flag", help="same as the positional SUITE")
    return parser


def _config(ns) -> RunConfig:
    path = getattr(ns, "config", None)
    name = getattr(ns, "preset", None)
    if path and name:
        raise ConfigError("give --config or --preset, not both")
    if path:
        pres = load_presentation(path)
    elif name:
        pres = preset(name)
    else:
        raise ConfigError("no presentation: use --config PATH or --preset NAME")
    cfg = RunConfig(pres, parse_ring(getattr(ns, "ring", "int")))
    for attr in ("bound", "word_bound", "ray_cap", "trials", "seed"):
        if hasattr(ns, attr):
            setattr(cfg, attr, getattr(ns, attr))
    if hasattr(ns, "line"):
        cfg.line = pres.parse_point(ns.line)
    return cfg


def _need(args, n, usage):
    if len(args) != n:
        raise ConfigError(f"usage: query {usage}")
    return args


def run_query(kind: str, args: list, cfg: RunConfig) -> str:
    pres, ring = cfg.pres, cfg.ring
    if kind == "lang":
        (n,) = _need(args, 1, "lang N")
        bound = cfg.ray_cap if pres.kind == "graph-ray" else None
        return " ".join(pres.format_word(w, "ω") for w in pres.enumerate_language(int(n), index_bound=bound))
    if kind == "member":
        x, A = _need(args, 2, "member POINT SET")
        return "true" if pres.parse_point(x) in pres.sets.parse(A) else "false"
    if kind == "set":
        (A,) = _need(args, 1, "set EXPR")
        return str(pres.sets.parse(A))
    if kind == "mul":
        if not args:
            raise ConfigError("usage: query mul ELEMENT [ELEMENT ...]")
        out = parse_element(args[0], pres, ring)
        for text in args[1:]:
            out = out * parse_element(text, pres, ring)
        return str(out)
    if kind == "act":
        a, v = _need(args, 2, "act ELEMENT VECTOR")
        return str(apply(parse_element(a, pres, ring), parse_vector(v, pres, ring)))
    if kind == "equiv":
        x, y = (pres.parse_point(t) for t in _need(args, 2, "equiv POINT POINT"))
        w = orbit.decide_equiv(x, y)
        if w is None:
            return "inequivalent"
        fw = lambda u: pres.format_word(u, "ω")  # noqa: E731
        return f"n={w.n} m={w.m} c={fw(w.c)} d={fw(w.d)} xi={pres.format_point(w.xi)}"
    if kind == "transport":
        y, z = (pres.parse_point(t) for t in _need(args, 2, "transport POINT POINT"))
        return str(orbit.transporter(y, z, pres, ring))
    if kind == "linepaths":
        _need(args, 0, "linepaths")
        found = ideals.line_paths(pres, cfg.bound, cfg.ray_cap)
        return " ".join(str(L) for L in found) or "none"
    if kind == "psi":
        (v,) = _need(args, 1, "psi VECTOR")
        L = line_path(cfg)
        return ideals.format_ideal_element(ideals.psi(parse_vector(v, pres, ring), L), L)
    if kind == "psiinv":
        (e,) = _need(args, 1, "psiinv ELEMENT")
        L = line_path(cfg)
        return str(ideals.psi_inverse(parse_element(e, pres, ring), L))
    raise ConfigError(f"unknown query {kind!r}")


def run_verify(names: list, cfg: RunConfig, out) -> int:
    status = 0
    for name in names:
        if name in FIELD_SUITES and not cfg.ring.is_field:
            raise NotAField(
                f"suite {name} replays a proof that assumes 'If R is a field'; "
                f"ring {cfg.ring.name} is not a field (use --ring rat or --ring gf:p)"
            )
        report = run_suite(name, cfg)
        print(report, file=out)
        if not report.ok:
            status = 1
    return status


def run_all(cfg: RunConfig, out) -> int:
    """Every suite that applies; the rest are listed as skipped with the reason."""
    status = 0
    for name in SUITES:
        if name in FIELD_SUITES and not cfg.ring.is_field:
            print(f"{name}: skipped (needs a field ring)", file=out)
            continue
        try:
            status = max(status, run_verify([name], cfg, out))
        except ConfigError as exc:
            print(f"{name}: skipped ({exc})", file=out)
    return status


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config(ns)
        if ns.command == "query":
            print(run_query(ns.kind, ns.args, cfg))
            return 0
        name = getattr(ns, "suite_flag", None) or ns.suite_name
        if not name:
            raise ConfigError("choose a suite: " + ", ".join(SUITES))
        if name != "all":
            return run_verify([name], cfg, sys.stdout)
        return run_all(cfg, sys.stdout)
    except (SubshiftError, ValueError, KeyError) as exc:
        print(f"subshift: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
