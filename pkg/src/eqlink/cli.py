"""Command-line interface.

Verbs:

* ``spaces``         list available presentations (built-in and from configs)
* ``compute``        orbit-map images of linking classes on chosen cycles
* ``check``          surjectivity verdict for one bundle instance
* ``scan``           sweep a parameter grid and report the division locus
* ``generic-check``  rank bound for a finite generic collection of divisors
* ``divisor-check``  transfer identity between a space and an invariant divisor
* ``export``         re-render a saved report document (JSON or LaTeX)
* ``selftest``       run the built-in consistency battery

Exit codes: 0 success, 2 parse error (arguments or polynomial/config text),
3 validation failure, 4 hypothesis violated (including bundles without
spanned one-jets), 5 class outside the expected ideal.  Set
``EQLINK_CACHE_DIR`` to persist Groebner bases between runs; the cache only
affects timing, never results.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__, report
from .algebra import PolyParseError
from .division import (
    InsufficientSampleError,
    check_surjectivity,
    generic_rank_check,
    scan_bundles,
)
from .orbitmap import (
    HypothesisError,
    NotInIdealError,
    discriminant_degree,
    divisor_transfer_check,
    orbit_class,
    restricted_cycle,
)
from .spaces import (
    BUILTIN_FAMILIES,
    PresentationError,
    SpacePresentation,
    builtin_space,
    load_presentation,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_HYPOTHESIS = 4
EXIT_NOT_IN_IDEAL = 5

_FAMILY_PARAMS = {
    "pn": ("n",),
    "odd-quadric": ("n",),
    "even-quadric": ("n",),
    "gr": ("k", "n"),
}

_FAMILY_HELP = {
    "pn": "projective space of dimension n",
    "odd-quadric": "smooth quadric of dimension 2n+1",
    "even-quadric": "smooth quadric of dimension 2n",
    "gr": "Grassmannian of k-planes in n-space",
}


def _parse_int_range(text: str) -> list[int]:
    """Accept ``4``, ``2..6`` (inclusive), or ``2,3,5``."""
    values: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo_text, hi_text = chunk.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {chunk!r}")
            values.extend(range(lo, hi + 1))
        else:
            values.append(int(chunk))
    if not values:
        raise argparse.ArgumentTypeError(f"no values in {text!r}")
    return values


def _add_space_args(parser, suffix: str = "") -> None:
    tag = f"-{suffix}" if suffix else ""
    group = parser.add_argument_group(f"space{' ' + suffix.upper() if suffix else ''} selection")
    group.add_argument(f"--space{tag}", choices=sorted(BUILTIN_FAMILIES), help="built-in family")
    group.add_argument(f"--n{tag}", type=int, help="family size parameter n")
    group.add_argument(f"--k{tag}", type=int, help="family size parameter k (gr only)")
    group.add_argument(f"--config{tag}", help="path to a presentation config (TOML)")


def _resolve_space(args, order: str, suffix: str = "") -> SpacePresentation:
    tag = f"_{suffix}" if suffix else ""
    family = getattr(args, f"space{tag}", None)
    config = getattr(args, f"config{tag}", None)
    if config:
        return load_presentation(config, order=order)
    if not family:
        raise PresentationError(f"no space given: pass --space{tag.replace('_', '-')} or --config{tag.replace('_', '-')}")
    params = {}
    for name in _FAMILY_PARAMS[family]:
        value = getattr(args, f"{name}{tag}", None)
        if value is None:
            raise PresentationError(f"family {family!r} needs --{name}{tag.replace('_', '-')}")
        params[name] = value
    return builtin_space(family, order=order, **params)


def _space_label(space: SpacePresentation) -> str:
    return space.name


def _bundle_params(args, bundle) -> dict:
    params = {}
    extra = dict(kv.split("=", 1) for kv in (args.param or []))
    for name in bundle.parameters:
        if name == "d" and args.d is not None:
            values = _parse_int_range(args.d)
            if len(values) != 1:
                raise PresentationError("this verb takes a single --d value, not a range")
            params[name] = values[0]
        elif name in extra:
            params[name] = int(extra.pop(name))
        else:
            raise PresentationError(f"bundle {bundle.name!r} needs parameter {name!r}")
    if extra:
        raise PresentationError(f"unknown bundle parameters: {sorted(extra)}")
    return params


def _emit(doc: dict, args) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "latex":
        text = report.to_latex(doc)
    else:
        text = report.dump(doc)
    output = getattr(args, "output", None)
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verb implementations
# ---------------------------------------------------------------------------


def _cmd_spaces(args) -> int:
    start = time.perf_counter()
    results = [
        {
            "family": family,
            "description": _FAMILY_HELP[family],
            "parameters": list(_FAMILY_PARAMS[family]),
        }
        for family in sorted(BUILTIN_FAMILIES)
    ]
    diagnostics: list = []
    space_hash = None
    if args.config:
        space = load_presentation(args.config, order=args.order)
        space_hash = space.content_hash()
        results.append(
            {
                "name": space.name,
                "config": args.config,
                "dim": space.dim_X,
                "group": space.group.name,
                "cycles": [c.name for c in space.homology_basis],
                "bundles": sorted(b.name for b in space.bundles),
                "hash": space_hash,
            }
        )
    doc = report.document(
        {"verb": "spaces", "config": args.config, "order": args.order},
        space_hash,
        results,
        diagnostics,
        time.perf_counter() - start,
    )
    _emit(doc, args)
    return EXIT_OK


def _cmd_compute(args) -> int:
    start = time.perf_counter()
    space = _resolve_space(args, args.order)
    bundle = space.bundle(args.bundle)
    params = _bundle_params(args, bundle)
    if args.cycle == "all":
        cycles = [c.name for c in space.homology_basis]
        lenient = True
    else:
        cycles = [name.strip() for name in args.cycle.split(",")]
        lenient = False
    results: list = []
    diagnostics: list = []
    for name in cycles:
        cycle = space.cycle(name)
        try:
            res = orbit_class(space, bundle, params, cycle)
        except HypothesisError as exc:
            if not lenient:
                raise
            diagnostics.append(f"{name}: {exc}")
            results.append({"cycle": name, "skipped": str(exc)})
            continue
        disc = discriminant_degree(space, bundle, params, cycle)
        results.append(report.orbit_result_entry(res, disc))
    request = {
        "verb": "compute",
        "space_label": _space_label(space),
        "bundle": args.bundle,
        "params": {k: v for k, v in sorted(params.items())},
        "cycle": args.cycle,
        "order": args.order,
    }
    doc = report.document(request, space.content_hash(), results, diagnostics, time.perf_counter() - start)
    _emit(doc, args)
    return EXIT_OK


def _cmd_check(args) -> int:
    start = time.perf_counter()
    space = _resolve_space(args, args.order)
    bundle = space.bundle(args.bundle)
    params = _bundle_params(args, bundle)
    verdict = check_surjectivity(space, bundle, params)
    request = {
        "verb": "check",
        "space_label": _space_label(space),
        "bundle": args.bundle,
        "params": {k: v for k, v in sorted(params.items())},
        "order": args.order,
    }
    doc = report.document(
        request,
        space.content_hash(),
        [report.verdict_entry(verdict)],
        list(verdict.diagnostics),
        time.perf_counter() - start,
    )
    _emit(doc, args)
    return EXIT_OK


def _cmd_scan(args) -> int:
    start = time.perf_counter()
    space = _resolve_space(args, args.order)
    bundle = space.bundle(args.bundle)
    ranges = {}
    extra = dict(kv.split("=", 1) for kv in (args.param or []))
    for name in bundle.parameters:
        if name == "d" and args.d is not None:
            ranges[name] = _parse_int_range(args.d)
        elif name in extra:
            ranges[name] = _parse_int_range(extra.pop(name))
        else:
            raise PresentationError(f"bundle {bundle.name!r} needs a range for parameter {name!r}")
    if extra:
        raise PresentationError(f"unknown bundle parameters: {sorted(extra)}")
    rep = scan_bundles(space, args.bundle, ranges, jobs=args.jobs)
    request = {
        "verb": "scan",
        "space_label": _space_label(space),
        "bundle": args.bundle,
        "ranges": {k: v for k, v in sorted(ranges.items())},
        "order": args.order,
        "jobs": args.jobs,
    }
    doc = report.document(
        request,
        space.content_hash(),
        [report.scan_entry(rep)],
        list(rep.diagnostics),
        time.perf_counter() - start,
    )
    _emit(doc, args)
    return EXIT_OK


def _default_sample(space: SpacePresentation) -> list:
    """Deterministic fallback sample: small multiples and sums of the
    degree-2 standard monomials of the symmetry presentation."""
    basis = [
        space.borel_ring.ring.from_terms({mono: Fraction(1)})
        for mono in space.borel_ring.standard_monomials(2)
    ]
    sample = []
    for vec in basis:
        for scale in (1, 2, 3):
            sample.append(vec * scale)
    for left, right in zip(basis, basis[1:]):
        sample.append(left + right)
    return sample


def _cmd_generic_check(args) -> int:
    start = time.perf_counter()
    space = _resolve_space(args, args.order)
    if args.points:
        sample = [space.borel_ring.ring.parse(text) for text in args.points.split(";") if text.strip()]
    else:
        sample = _default_sample(space)
    rep = generic_rank_check(space, sample)
    request = {
        "verb": "generic-check",
        "space_label": _space_label(space),
        "points": [str(p) for p in sample],
        "order": args.order,
    }
    doc = report.document(
        request,
        space.content_hash(),
        [report.generic_entry(rep)],
        [],
        time.perf_counter() - start,
    )
    _emit(doc, args)
    return EXIT_OK


def _cmd_divisor_check(args) -> int:
    start = time.perf_counter()
    space_x = _resolve_space(args, args.order)
    space_y = _resolve_space(args, args.order, suffix="y")
    bundle = space_x.bundle(args.bundle)
    params = _bundle_params(args, bundle)
    r = Fraction(args.r)
    cycle_x = space_x.cycle(args.cycle)
    if args.cycle_y:
        cycle_y = space_y.cycle(args.cycle_y)
    else:
        cycle_y = restricted_cycle(space_x, space_y, cycle_x)
    check = divisor_transfer_check(
        space_x,
        space_y,
        args.bundle,
        params,
        cycle_x,
        cycle_y,
        r,
    )
    request = {
        "verb": "divisor-check",
        "space_label": _space_label(space_x),
        "divisor_label": _space_label(space_y),
        "bundle": args.bundle,
        "params": {k: v for k, v in sorted(params.items())},
        "cycle": args.cycle,
        "cycle_y": args.cycle_y,
        "r": str(r),
        "order": args.order,
    }
    doc = report.document(
        request,
        space_x.content_hash(),
        [report.transfer_entry(check)],
        [],
        time.perf_counter() - start,
    )
    _emit(doc, args)
    return EXIT_OK


def _cmd_export(args) -> int:
    if args.input:
        with open(args.input, encoding="utf-8") as handle:
            doc = json.load(handle)
    else:
        doc = json.load(sys.stdin)
    _emit(doc, args)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .spaces import even_quadric, odd_quadric, projective_space, validate_presentation

    start = time.perf_counter()
    checks: list[tuple[str, bool, str]] = []

    def run(name, fn):
        try:
            fn()
            checks.append((name, True, ""))
        except Exception as exc:  # pragma: no cover - failure path
            checks.append((name, False, f"{type(exc).__name__}: {exc}"))

    def expect_valid(space):
        problems = validate_presentation(space)
        if problems:
            raise PresentationError("; ".join(problems))

    run("validate P2", lambda: expect_valid(projective_space(2)))
    run("validate P3", lambda: expect_valid(projective_space(3)))
    run("validate odd quadric dim 3", lambda: expect_valid(odd_quadric(1)))
    run("validate even quadric dim 4", lambda: expect_valid(even_quadric(2)))

    def check_p2_values():
        space = projective_space(2)
        bundle = space.bundle("O")
        for k, source, coeff in ((1, "c2", -6), (0, "c3", -9)):
            res = orbit_class(space, bundle, {"d": 3}, f"P_{k}")
            sym = space.group.primitive(source)
            if res.value.coefficient(sym) != coeff or len(res.value.terms) != 1:
                raise AssertionError(f"P_{k}: got {res.value}")

    run("orbit classes on P2, O(3)", check_p2_values)

    def check_routes():
        from .charclass import jet_euler, jet_euler_projective_roots

        space = projective_space(2)
        bundle = space.bundle("O")
        for d in (2, 3):
            lhs = jet_euler(space, bundle, {"d": d}).value
            rhs = jet_euler_projective_roots(space, bundle, {"d": d})
            if space.borel_ring.normal_form(lhs - rhs).terms:
                raise AssertionError(f"d={d}: routes disagree")

    run("jet Euler route comparison on P2", check_routes)

    def check_division():
        space = projective_space(2)
        verdict = check_surjectivity(space, space.bundle("O"), {"d": 2})
        if verdict.surjective or 3 not in verdict.failures:
            raise AssertionError("expected degree-3 failure at d=2")
        verdict = check_surjectivity(space, space.bundle("O"), {"d": 3})
        if not verdict.surjective:
            raise AssertionError("expected surjectivity at d=3")

    run("division check on P2", check_division)

    results = [
        {"name": name, "ok": ok, **({"error": err} if err else {})}
        for name, ok, err in checks
    ]
    doc = report.document(
        {"verb": "selftest"},
        None,
        results,
        [],
        time.perf_counter() - start,
    )
    _emit(doc, args)
    for name, ok, _ in checks:
        print(("PASS" if ok else "FAIL") + f" {name}", file=sys.stderr)
    return EXIT_OK if all(ok for _, ok, _ in checks) else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqlink",
        description="Exact orbit-map computations for discriminant linking classes.",
        epilog="Set EQLINK_CACHE_DIR to persist Groebner caches across runs.",
    )
    parser.add_argument("--version", action="version", version=f"eqlink {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, cycles=False, d_help="bundle degree parameter d"):
        _add_space_args(p)
        p.add_argument("--bundle", default="O", help="bundle name from the presentation (default: O)")
        p.add_argument("--d", help=d_help)
        p.add_argument("--param", action="append", metavar="NAME=VALUE", help="extra bundle parameter")
        if cycles:
            p.add_argument("--cycle", default="all", help="cycle name, comma list, or 'all'")
        p.add_argument("--order", default="grevlex", choices=("grevlex", "lex"), help="monomial order")
        p.add_argument("--format", default="json", choices=("json", "latex"), help="output format")
        p.add_argument("--output", help="write the document here instead of stdout")

    p = sub.add_parser("spaces", help="list presentations")
    p.add_argument("--config", help="also load and list this presentation config")
    p.add_argument("--order", default="grevlex", choices=("grevlex", "lex"))
    p.add_argument("--format", default="json", choices=("json",))
    p.add_argument("--output")
    p.set_defaults(func=_cmd_spaces)

    p = sub.add_parser("compute", help="orbit-map images on cycles")
    common(p, cycles=True)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("check", help="surjectivity verdict for one bundle instance")
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("scan", help="sweep bundle parameters, report the division locus")
    common(p, d_help="degree range, e.g. 2..6 or 2,3,5")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("generic-check", help="rank bound for a finite divisor collection")
    _add_space_args(p)
    p.add_argument("--points", help="semicolon-separated first Chern classes, e.g. 'b1; 2*b1'")
    p.add_argument("--order", default="grevlex", choices=("grevlex", "lex"))
    p.add_argument("--format", default="json", choices=("json",))
    p.add_argument("--output")
    p.set_defaults(func=_cmd_generic_check)

    p = sub.add_parser("divisor-check", help="transfer identity against an invariant divisor")
    _add_space_args(p)
    _add_space_args(p, suffix="y")
    p.add_argument("--bundle", default="O")
    p.add_argument("--d", help="bundle degree parameter d")
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--cycle", required=True, help="cycle on the ambient space")
    p.add_argument("--cycle-y", help="cycle on the divisor (default: restrict --cycle)")
    p.add_argument("--r", required=True, help="restriction ratio, e.g. 2/3")
    p.add_argument("--order", default="grevlex", choices=("grevlex", "lex"))
    p.add_argument("--format", default="json", choices=("json",))
    p.add_argument("--output")
    p.set_defaults(func=_cmd_divisor_check)

    p = sub.add_parser("export", help="re-render a saved report document")
    p.add_argument("--input", help="document path (default: stdin)")
    p.add_argument("--format", default="latex", choices=("json", "latex"))
    p.add_argument("--output")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("selftest", help="run the built-in consistency battery")
    p.add_argument("--format", default="json", choices=("json",))
    p.add_argument("--output")
    p.set_defaults(func=_cmd_selftest)

    return parser


def _caused_by_parse_error(exc: BaseException) -> bool:
    seen = exc
    while seen is not None:
        if isinstance(seen, PolyParseError):
            return True
        seen = seen.__cause__ or seen.__context__
    return False


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotInIdealError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_IN_IDEAL
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except PolyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, KeyError, OSError) as exc:
        if _caused_by_parse_error(exc):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
