"""Command-line interface.

Verbs: sort, match, preimage, verify, census, builtin, render.  Exit codes:
0 for success (including a passing verification), 1 for a failing
verification, 2 for usage and parse errors.  Output is buffered and written
once, so worker count never interleaves it.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import InvalidInputError, UnsupportedFormatError
from .fixtures import FIXTURE_NAMES, FIXTURE_TARGETS
from .formats import (
    detect_format,
    format_pattern,
    parse_pattern,
    parse_pattern_list,
    render_grid,
)
from .oracle import builtin_basis, census, verify_preimage
from .patterns import occurrences
from .permutation import OPERATOR_IDS, Permutation, sort_power
from .preimage import (
    MarkedBasis,
    candidate_outcomes,
    expand_basis,
    prune_basis,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permpat",
        description="Permutation patterns, single-pass sorting, and sorting-preimage bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sort", help="apply sorting passes to a permutation")
    p.add_argument("--op", choices=OPERATOR_IDS, required=True)
    p.add_argument("--passes", type=int, default=1, metavar="K")
    p.add_argument("perm")

    p = sub.add_parser("match", help="find occurrences of a pattern")
    p.add_argument("perm")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pattern", metavar="FILE", help="file holding the pattern")
    src.add_argument("--inline", metavar="SPEC", help="pattern given directly")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="print the occurrence count (default)")
    mode.add_argument("--list", action="store_true", help="print the position list of each occurrence")

    p = sub.add_parser("preimage", help="stack-sort preimage basis of a pattern's avoidance class")
    p.add_argument("pattern")
    p.add_argument("--expand", action="store_true", help="expand marks into mesh patterns")
    p.add_argument("--prune", type=int, metavar="N", help="drop implied patterns, checked up to length N")
    p.add_argument("--show-rejected", action="store_true", help="also list rejected candidates")

    p = sub.add_parser("verify", help="compare a candidate basis against a sorting preimage")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME", choices=FIXTURE_NAMES)
    src.add_argument("--pattern", metavar="P", help="image pattern to avoid after sorting")
    p.add_argument("--basis", metavar="FILE", help="candidate basis file (with --pattern)")
    p.add_argument("--op", choices=OPERATOR_IDS)
    p.add_argument("--passes", type=int, metavar="K")
    p.add_argument("--upto", type=int, required=True, metavar="N")
    p.add_argument("--jobs", type=int, default=1, metavar="J")

    p = sub.add_parser("census", help="count sorted permutations per length")
    p.add_argument("--op", choices=OPERATOR_IDS, required=True)
    p.add_argument("--passes", type=int, required=True, metavar="K")
    p.add_argument("--upto", type=int, required=True, metavar="N")
    p.add_argument("--jobs", type=int, default=1, metavar="J")

    p = sub.add_parser("builtin", help="print a built-in basis")
    p.add_argument("name", choices=FIXTURE_NAMES)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("render", help="draw a pattern as a grid")
    p.add_argument("pattern", nargs="?")
    p.add_argument("--file", metavar="FILE")
    p.add_argument("--unicode", action="store_true", help="use filled glyphs")

    return parser


def _parse_inline(spec: str):
    return parse_pattern(spec, detect_format(spec))


def _patterns_from_file(path: str):
    return parse_pattern_list(Path(path).read_text())


def _format_any(pat) -> str:
    try:
        return format_pattern(pat, "line")
    except UnsupportedFormatError:
        return format_pattern(pat, "json")


def _cmd_sort(args) -> tuple[list[str], int]:
    pi = Permutation.from_text(args.perm)
    return [sort_power(args.op, args.passes, pi).to_text()], 0


def _cmd_match(args) -> tuple[list[str], int]:
    pi = Permutation.from_text(args.perm)
    if args.inline is not None:
        pat = _parse_inline(args.inline)
    else:
        found = _patterns_from_file(args.pattern)
        if len(found) != 1:
            raise InvalidInputError(f"expected exactly one pattern in {args.pattern}, found {len(found)}")
        pat = found[0]
    occs = occurrences(pi, pat)
    if args.list:
        return ["(" + ",".join(str(a) for a in occ.alpha) + ")" for occ in occs], 0
    return [str(len(occs))], 0


def _cmd_preimage(args) -> tuple[list[str], int]:
    pat = _parse_inline(args.pattern)
    if pat.kind != "classical":
        raise InvalidInputError(f"preimage needs a classical pattern, got {pat.kind}")
    lines: list[str] = []
    outcomes = candidate_outcomes(pat.perm)
    if args.show_rejected:
        for lam, outcome in outcomes:
            if outcome is None:
                lines.append(f"# rejected: {lam.to_text()}")
    basis = MarkedBasis.from_patterns(
        outcome.to_pattern() for _, outcome in outcomes if outcome is not None
    )
    if args.expand:
        basis = MarkedBasis.from_patterns(expand_basis(basis))
    if args.prune is not None:
        basis = prune_basis(basis, args.prune)
    lines.extend(_format_any(p) for p in basis)
    if args.prune is not None:
        lines.append(f"# pruned: verified up to n={basis.verified_upto}")
    return lines, 0


def _cmd_verify(args) -> tuple[list[str], int]:
    if args.builtin is not None:
        if args.basis is not None:
            raise InvalidInputError("--basis only combines with --pattern")
        op, passes, image = FIXTURE_TARGETS[args.builtin]
        candidate = builtin_basis(args.builtin)
        op = args.op or op
        passes = args.passes if args.passes is not None else passes
    else:
        if args.basis is None:
            raise InvalidInputError("--pattern requires --basis FILE")
        image = (_parse_inline(args.pattern),)
        candidate = _patterns_from_file(args.basis)
        op = args.op or "stack"
        passes = args.passes if args.passes is not None else 1
    report = verify_preimage(image, candidate, op, passes, args.upto, jobs=args.jobs)
    return report.to_text().splitlines(), 0 if report.passed else 1


def _cmd_census(args) -> tuple[list[str], int]:
    lines = []
    for n in range(1, args.upto + 1):
        lines.append(f"{n} {census(args.op, args.passes, n, jobs=args.jobs)}")
    return lines, 0


def _cmd_builtin(args) -> tuple[list[str], int]:
    basis = builtin_basis(args.name)
    if args.json:
        return ["[" + ",".join(format_pattern(p, "json") for p in basis) + "]"], 0
    return [_format_any(p) for p in basis], 0


def _cmd_render(args) -> tuple[list[str], int]:
    if (args.pattern is None) == (args.file is None):
        raise InvalidInputError("render needs a pattern argument or --file, not both")
    if args.pattern is not None:
        pat = _parse_inline(args.pattern)
    else:
        found = _patterns_from_file(args.file)
        if len(found) != 1:
            raise InvalidInputError(f"expected exactly one pattern in {args.file}, found {len(found)}")
        pat = found[0]
    return render_grid(pat, unicode_glyphs=args.unicode).splitlines(), 0


_COMMANDS = {
    "sort": _cmd_sort,
    "match": _cmd_match,
    "preimage": _cmd_preimage,
    "verify": _cmd_verify,
    "census": _cmd_census,
    "builtin": _cmd_builtin,
    "render": _cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        lines, code = _COMMANDS[args.command](args)
    except (InvalidInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if lines:
        print("\n".join(lines))
    return code


def run() -> None:
    sys.exit(main(sys.argv[1:]))
