"""External pattern formats: a compact line format, JSON, and a grid
renderer.

Line format (classical, mesh and marked patterns):

    PERM
    PERM | shade: (c,r),(c,r),...
    PERM | shade: ... | mark: {(c,r),...} >= N | mark: ...

Sections may appear in any order on input; output is canonical (shading
first, then marks in canonical order).  Decorated and barred patterns only
round-trip through JSON, whose object shape is::

    {"kind": ..., "perm": [..], "shade": [[c,r],..],
     "marks": [{"boxes": [[c,r],..], "min": N}, ..],
     "decor": [{"boxes": [[c,r],..], "avoid": {..}}, ..], "bars": [..]}

with every array sorted canonically and no floating point anywhere.
"""

from __future__ import annotations

import json
import re

from .errors import (
    InvalidInputError,
    PatternSyntaxError,
    UnsupportedFormatError,
)
from .patterns import (
    Box,
    Decoration,
    Mark,
    Pattern,
    barred,
    classical,
    decorated,
    marked,
    mesh,
)
from .permutation import Permutation

FORMATS = ("line", "json")

_BOX_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def _parse_boxes(text: str, offset: int) -> tuple[Box, ...]:
    s = text.strip()
    if not s:
        return ()
    pos = 0
    boxes = []
    while pos < len(s):
        m = _BOX_RE.match(s, pos)
        if not m:
            raise PatternSyntaxError("expected a box '(col,row)'", offset + pos)
        boxes.append(Box(int(m.group(1)), int(m.group(2))))
        pos = m.end()
        if pos < len(s):
            if s[pos] != ",":
                raise PatternSyntaxError("expected ',' between boxes", offset + pos)
            pos += 1
            while pos < len(s) and s[pos] == " ":
                pos += 1
    return tuple(boxes)


def _parse_line(text: str) -> Pattern:
    sections = text.split("|")
    offset = 0
    perm_text = sections[0]
    try:
        perm = Permutation.from_text(perm_text)
    except InvalidInputError as exc:
        raise PatternSyntaxError(str(exc), offset) from None
    shade: tuple[Box, ...] = ()
    shade_seen = False
    marks: list[Mark] = []
    offset += len(perm_text) + 1
    for section in sections[1:]:
        body = section.strip()
        if body.startswith("shade:"):
            if shade_seen:
                raise PatternSyntaxError("duplicate shade section", offset)
            shade_seen = True
            shade = _parse_boxes(body[len("shade:") :], offset)
        elif body.startswith("mark:"):
            rest = body[len("mark:") :].strip()
            m = re.fullmatch(r"\{(.*)\}\s*>=\s*(\d+)", rest)
            if not m:
                raise PatternSyntaxError("expected 'mark: {(c,r),...} >= N'", offset)
            boxes = _parse_boxes(m.group(1), offset)
            if not boxes:
                raise PatternSyntaxError("mark region is empty", offset)
            marks.append(Mark(boxes, int(m.group(2))))
        else:
            raise PatternSyntaxError(f"unknown section {body.split(':')[0]!r}", offset)
        offset += len(section) + 1
    if marks:
        return marked(perm, shade, marks)
    if shade_seen:
        return mesh(perm, shade)
    return classical(perm)


def _pattern_to_obj(pat: Pattern) -> dict:
    return {
        "kind": pat.kind,
        "perm": list(pat.perm.values),
        "shade": [[b.col, b.row] for b in pat.shade],
        "marks": [
            {"boxes": [[b.col, b.row] for b in m.region], "min": m.min_count} for m in pat.marks
        ],
        "decor": [
            {"boxes": [[b.col, b.row] for b in d.region], "avoid": _pattern_to_obj(d.avoid)}
            for d in pat.decorations
        ],
        "bars": list(pat.barred_positions),
    }


def _pattern_from_obj(obj) -> Pattern:
    if not isinstance(obj, dict):
        raise PatternSyntaxError("pattern JSON must be an object")
    try:
        kind = obj["kind"]
        perm = Permutation(tuple(obj["perm"]))
        shade = tuple(Box(c, r) for c, r in obj.get("shade", ()))
        marks = tuple(Mark(tuple(Box(c, r) for c, r in m["boxes"]), m.get("min", 1)) for m in obj.get("marks", ()))
        decor = tuple(
            Decoration(tuple(Box(c, r) for c, r in d["boxes"]), _pattern_from_obj(d["avoid"]))
            for d in obj.get("decor", ())
        )
        bars = tuple(obj.get("bars", ()))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise PatternSyntaxError(f"malformed pattern JSON: {exc}") from None
    return Pattern(kind, perm, shade, marks, decor, bars)


def parse_pattern(text: str, fmt: str = "line") -> Pattern:
    """Parse a pattern from its line or JSON form.

    >>> parse_pattern("3241 | shade: (1,4)").kind
    'mesh'
    """
    if fmt not in FORMATS:
        raise UnsupportedFormatError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    s = text.strip()
    if not s:
        raise PatternSyntaxError("empty pattern text")
    if fmt == "json":
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise PatternSyntaxError(f"invalid JSON: {exc.msg}", exc.pos) from None
        return _pattern_from_obj(obj)
    return _parse_line(s)


def detect_format(text: str) -> str:
    """'json' if the text looks like a JSON object, else 'line'."""
    return "json" if text.lstrip().startswith("{") else "line"


def parse_pattern_list(text: str) -> list[Pattern]:
    """Parse several patterns: either a JSON array of pattern objects, or
    one pattern per line (line or JSON form, auto-detected), skipping blank
    lines and ``#`` comments."""
    body = text.strip()
    if not body:
        return []
    if body.startswith("["):
        try:
            items = json.loads(body)
        except json.JSONDecodeError as exc:
            raise PatternSyntaxError(f"invalid JSON: {exc.msg}", exc.pos) from None
        if not isinstance(items, list):
            raise PatternSyntaxError("expected a JSON array of patterns")
        return [_pattern_from_obj(item) for item in items]
    out = []
    for line in body.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        out.append(parse_pattern(s, detect_format(s)))
    return out


def format_pattern(pat: Pattern, fmt: str = "line") -> str:
    """Canonical text for a pattern; parsing it back yields an equal
    pattern.  Decorated and barred patterns require the JSON format.

    >>> format_pattern(mesh("3241", {(1, 4)}))
    '3241 | shade: (1,4)'
    """
    if fmt not in FORMATS:
        raise UnsupportedFormatError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if fmt == "json":
        return json.dumps(_pattern_to_obj(pat), separators=(",", ":"))
    if pat.kind not in ("classical", "mesh", "marked"):
        raise UnsupportedFormatError(
            f"{pat.kind} patterns have no line form; use the json format"
        )
    parts = [pat.perm.to_text()]
    if pat.kind != "classical" and (pat.shade or pat.kind == "mesh"):
        parts.append("shade: " + ",".join(f"({b.col},{b.row})" for b in pat.shade))
    for m in pat.marks:
        boxes = ",".join(f"({b.col},{b.row})" for b in m.region)
        parts.append(f"mark: {{{boxes}}} >= {m.min_count}")
    return " | ".join(parts)


def _avoid_footnote(pat: Pattern) -> str:
    if pat.kind == "classical":
        return pat.perm.to_text()
    return format_pattern(pat, "json")


def render_grid(pat: Pattern, unicode_glyphs: bool = False) -> str:
    """Draw a pattern as a (2k+1) x (2k+1) character grid, bottom-left box
    at the bottom left.  Points are ``*`` (``o`` at barred positions),
    shaded boxes ``#``, marked boxes show their region's minimum count, and
    decorated boxes show ``#`` for empty regions (avoiding 1) or ``d`` with
    a footnote naming the avoided pattern.  Every grid line is exactly
    2k+1 characters wide; footnote lines follow the grid.
    """
    k = len(pat.perm)
    if k > 20:
        raise InvalidInputError(f"pattern of length {k} is too large to render (limit 20)")
    size = 2 * k + 1
    grid = [[" "] * size for _ in range(size)]

    def box_cell(b: Box) -> tuple[int, int]:
        return 2 * (k - b.row), 2 * b.col

    def point_cell(position: int, value: int) -> tuple[int, int]:
        return 2 * (k - value) + 1, 2 * position - 1

    for col in range(k + 1):
        for row in range(k + 1):
            r, c = box_cell(Box(col, row))
            grid[r][c] = "."
    for b in pat.shade:
        r, c = box_cell(b)
        grid[r][c] = "#"
    for m in pat.marks:
        glyph = str(m.min_count) if m.min_count <= 9 else "+"
        for b in m.region:
            r, c = box_cell(b)
            grid[r][c] = glyph
    footnotes = []
    for d in pat.decorations:
        empty = d.avoid.kind == "classical" and len(d.avoid.perm) == 1
        glyph = "#" if empty else "d"
        for b in d.region:
            r, c = box_cell(b)
            grid[r][c] = glyph
        if not empty:
            region = ",".join(f"({b.col},{b.row})" for b in d.region)
            footnotes.append(f"d: {region} avoids {_avoid_footnote(d.avoid)}")
    bars = set(pat.barred_positions)
    for position, value in enumerate(pat.perm.values, 1):
        r, c = point_cell(position, value)
        grid[r][c] = "o" if position in bars else "*"
    if bars:
        footnotes.append("o: barred position " + ",".join(str(b) for b in sorted(bars)))

    if unicode_glyphs:
        swap = {".": "·", "*": "●", "#": "█", "o": "○"}
        grid = [[swap.get(ch, ch) for ch in row] for row in grid]
    lines = ["".join(row) for row in grid]
    return "\n".join(lines + footnotes)
