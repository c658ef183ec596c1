"""Pattern types and the occurrence engine.

Five pattern kinds share one type:

* ``classical``  -- an order pattern, nothing else;
* ``mesh``       -- classical plus shaded boxes that must stay empty;
* ``marked``     -- mesh plus marked regions that must hold enough points;
* ``barred``     -- classical with barred letters; an occurrence of the
                    unbarred part counts only if it extends to no occurrence
                    of the whole pattern;
* ``decorated``  -- classical plus regions whose contents must avoid a
                    further pattern.  A shaded box is the special case of a
                    region avoiding the pattern 1, so decorated patterns
                    carry no shading of their own.

Boxes are addressed by their lower-left corner: box (i, j) of a pattern of
length k is the unit square with corners (i, j) and (i+1, j+1), with (0, 0)
at the bottom left of the grid, so both coordinates range over 0..k.

An occurrence of a length-k pattern in a permutation of length n is a pair
of order-preserving injections alpha (columns) and beta (rows) from 1..k
into 1..n under which the pattern's point diagram lands on points of the
permutation.  Box (i, j) then instantiates to the rectangle

    [alpha(i)+1, alpha(i+1)-1] x [beta(j)+1, beta(j+1)-1]

with alpha(0) = beta(0) = 0 and alpha(k+1) = beta(k+1) = n+1.
"""

from __future__ import annotations

import functools
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from .errors import InvalidInputError, UnsupportedPatternError
from .permutation import Permutation, Values, _standardize


class Box(NamedTuple):
    col: int
    row: int


BoxLike = Union[Box, tuple[int, int]]
Region = tuple[Box, ...]


def as_boxes(boxes: Iterable[BoxLike]) -> Region:
    """Normalize a collection of (col, row) pairs to a sorted tuple of boxes."""
    return tuple(sorted({Box(int(c), int(r)) for c, r in boxes}))


def _check_boxes(boxes: Iterable[Box], k: int, what: str) -> None:
    for b in boxes:
        if not (0 <= b.col <= k and 0 <= b.row <= k):
            raise InvalidInputError(f"{what} box {tuple(b)} outside grid 0..{k}")


@dataclass(frozen=True)
class Mark:
    """A region (nonempty set of boxes) required to hold at least
    ``min_count`` points of the host permutation."""

    region: Region
    min_count: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "region", as_boxes(self.region))
        if not self.region:
            raise InvalidInputError("mark region is empty")
        if self.min_count < 1:
            raise InvalidInputError(f"mark min_count must be >= 1, got {self.min_count}")

    def sort_key(self) -> tuple:
        return (self.region, self.min_count)


@dataclass(frozen=True)
class Decoration:
    """A region whose contents, read as a subpermutation, must avoid
    ``avoid``.  Only classical and decorated avoid-patterns are accepted;
    the geometry of shaded or marked boxes inside a scattered region is not
    defined here."""

    region: Region
    avoid: "Pattern"

    def __post_init__(self) -> None:
        object.__setattr__(self, "region", as_boxes(self.region))
        if not self.region:
            raise InvalidInputError("decoration region is empty")
        if self.avoid.kind not in ("classical", "decorated"):
            raise UnsupportedPatternError(
                f"decoration avoid-pattern must be classical or decorated, got {self.avoid.kind}"
            )

    def sort_key(self) -> tuple:
        return (self.region, pattern_sort_key(self.avoid))


KINDS = ("classical", "mesh", "marked", "barred", "decorated")
_KIND_RANK = {kind: rank for rank, kind in enumerate(KINDS)}


@dataclass(frozen=True)
class Pattern:
    """A pattern of one of the five kinds.

    Construction normalizes every component (sorted, deduplicated tuples),
    so two patterns are syntactically equal exactly when they compare equal;
    :func:`canonicalize` is the identity on well-formed patterns.
    """

    kind: str
    perm: Permutation
    shade: Region = ()
    marks: tuple[Mark, ...] = ()
    decorations: tuple[Decoration, ...] = ()
    barred_positions: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown pattern kind {self.kind!r}")
        k = len(self.perm)
        shade = as_boxes(self.shade)
        _check_boxes(shade, k, "shaded")
        marks = tuple(sorted(set(self.marks), key=Mark.sort_key))
        decorations = tuple(sorted(set(self.decorations), key=Decoration.sort_key))
        bars = tuple(sorted(set(int(b) for b in self.barred_positions)))
        object.__setattr__(self, "shade", shade)
        object.__setattr__(self, "marks", marks)
        object.__setattr__(self, "decorations", decorations)
        object.__setattr__(self, "barred_positions", bars)

        if self.kind == "classical":
            if shade or marks or decorations or bars:
                raise InvalidInputError("classical patterns carry no shading, marks, decorations or bars")
        elif self.kind == "mesh":
            if marks or decorations or bars:
                raise InvalidInputError("mesh patterns carry only shading")
        elif self.kind == "marked":
            if decorations or bars:
                raise InvalidInputError("marked patterns carry only shading and marks")
            shade_set = set(shade)
            for m in marks:
                _check_boxes(m.region, k, "marked")
                if shade_set.intersection(m.region):
                    raise InvalidInputError(f"mark region {m.region} overlaps the shading")
        elif self.kind == "barred":
            if shade or marks or decorations:
                raise InvalidInputError("barred patterns carry only barred positions")
            if not bars:
                raise InvalidInputError("barred pattern without barred positions")
            for b in bars:
                if not 1 <= b <= k:
                    raise InvalidInputError(f"barred position {b} outside 1..{k}")
        else:  # decorated
            if shade or marks or bars:
                raise InvalidInputError("decorated patterns carry only decorations")
            for d in decorations:
                _check_boxes(d.region, k, "decorated")

    def __len__(self) -> int:
        return len(self.perm)


PermLike = Union[Permutation, str, Sequence[int]]


def _as_perm(perm: PermLike) -> Permutation:
    if isinstance(perm, Permutation):
        return perm
    if isinstance(perm, str):
        return Permutation.from_text(perm)
    return Permutation(tuple(perm))


def classical(perm: PermLike) -> Pattern:
    """A classical pattern.

    >>> classical("231").perm.values
    (2, 3, 1)
    """
    return Pattern("classical", _as_perm(perm))


def mesh(perm: PermLike, shade: Iterable[BoxLike] = ()) -> Pattern:
    """A mesh pattern with the given shaded boxes."""
    return Pattern("mesh", _as_perm(perm), shade=as_boxes(shade))


def _as_mark(item) -> Mark:
    if isinstance(item, Mark):
        return item
    if (
        isinstance(item, tuple)
        and len(item) == 2
        and isinstance(item[1], int)
        and not isinstance(item[0], int)
    ):
        return Mark(as_boxes(item[0]), item[1])
    return Mark(as_boxes(item))


def marked(perm: PermLike, shade: Iterable[BoxLike] = (), marks: Iterable = ()) -> Pattern:
    """A marked mesh pattern.  Each element of ``marks`` may be a
    :class:`Mark`, a bare region, or a ``(region, min_count)`` pair.

    >>> p = marked("21", marks=[{(1, 2)}])
    >>> p.marks[0].region
    (Box(col=1, row=2),)
    """
    return Pattern("marked", _as_perm(perm), shade=as_boxes(shade), marks=tuple(_as_mark(m) for m in marks))


def _as_decoration(item) -> Decoration:
    if isinstance(item, Decoration):
        return item
    region, avoid = item
    if not isinstance(avoid, Pattern):
        avoid = classical(avoid)
    return Decoration(as_boxes(region), avoid)


def decorated(perm: PermLike, decorations: Iterable) -> Pattern:
    """A decorated pattern.  Each element of ``decorations`` may be a
    :class:`Decoration` or a ``(region, avoid)`` pair, where ``avoid`` is a
    pattern or anything :func:`classical` accepts."""
    return Pattern("decorated", _as_perm(perm), decorations=tuple(_as_decoration(d) for d in decorations))


def barred(perm: PermLike, positions: Iterable[int]) -> Pattern:
    """A barred pattern; ``positions`` are the 1-based barred positions."""
    return Pattern("barred", _as_perm(perm), barred_positions=tuple(positions))


def canonicalize(pat: Pattern) -> Pattern:
    """Rebuild a pattern in canonical component order.  Construction already
    normalizes, so this is idempotent and mostly useful as documentation."""
    return Pattern(pat.kind, pat.perm, pat.shade, pat.marks, pat.decorations, pat.barred_positions)


def pattern_sort_key(pat: Pattern) -> tuple:
    """A total order on patterns: by length, underlying permutation, kind,
    then components.  Used wherever a deterministic pattern order is needed."""
    return (
        len(pat.perm),
        pat.perm.values,
        _KIND_RANK[pat.kind],
        pat.shade,
        tuple(m.sort_key() for m in pat.marks),
        tuple(d.sort_key() for d in pat.decorations),
        pat.barred_positions,
    )


class Rect(NamedTuple):
    """A closed axis-aligned rectangle of grid cells, possibly empty."""

    col_lo: int
    col_hi: int
    row_lo: int
    row_hi: int

    @property
    def is_empty(self) -> bool:
        return self.col_lo > self.col_hi or self.row_lo > self.row_hi


@dataclass(frozen=True, order=True)
class Occurrence:
    """An occurrence: ``alpha`` are the 1-based chosen positions, ``beta``
    the chosen values in increasing order, and ``omega`` the chosen points
    as (position, value) pairs ordered by position.  Occurrences compare by
    ``alpha``, the order in which the engine reports them."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    omega: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            seq = getattr(self, name)
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise InvalidInputError(f"occurrence {name} must be strictly increasing")
        if len(self.alpha) != len(self.beta) or len(self.alpha) != len(self.omega):
            raise InvalidInputError("occurrence alpha, beta and omega must have equal length")
        if tuple(p for p, _ in self.omega) != self.alpha or \
                tuple(sorted(v for _, v in self.omega)) != self.beta:
            raise InvalidInputError("occurrence omega inconsistent with alpha and beta")

    @classmethod
    def from_columns(cls, values: Sequence[int], cols: Sequence[int]) -> "Occurrence":
        """Build from 0-based column indices into ``values``."""
        alpha = tuple(c + 1 for c in cols)
        picked = tuple(values[c] for c in cols)
        return cls(alpha, tuple(sorted(picked)), tuple(zip(alpha, picked)))


def box_rectangle(occ: Occurrence, box: BoxLike, n: int) -> Rect:
    """Instantiate a box of the pattern grid as a rectangle in the host
    permutation's grid, for a host of length ``n``.

    >>> occ = Occurrence.from_columns((5, 2, 6, 4, 1, 3), (1, 2, 5))
    >>> box_rectangle(occ, (2, 2), 6)
    Rect(col_lo=4, col_hi=5, row_lo=4, row_hi=5)
    """
    b = Box(*box)
    k = len(occ.alpha)
    if not (0 <= b.col <= k and 0 <= b.row <= k):
        raise InvalidInputError(f"box {tuple(b)} outside grid 0..{k}")
    a = (0,) + occ.alpha + (n + 1,)
    r = (0,) + occ.beta + (n + 1,)
    return Rect(a[b.col] + 1, a[b.col + 1] - 1, r[b.row] + 1, r[b.row + 1] - 1)


class Diagram:
    """A host permutation's point set, with a lazily built two-dimensional
    prefix-count table giving rectangle point counts in constant time."""

    __slots__ = ("values", "n", "_prefix")

    def __init__(self, values: Sequence[int]):
        self.values: Values = tuple(values)
        self.n = len(self.values)
        self._prefix: list[list[int]] | None = None

    def prefix(self) -> list[list[int]]:
        """prefix()[i][j] counts points (x, y) with x <= i and y <= j."""
        if self._prefix is None:
            n = self.n
            rows = [[0] * (n + 1)]
            for v in self.values:
                prev = rows[-1]
                rows.append(prev[:v] + [c + 1 for c in prev[v:]])
            self._prefix = rows
        return self._prefix

    def count(self, rect: Rect) -> int:
        """Number of permutation points inside a rectangle."""
        if rect.is_empty:
            return 0
        p = self.prefix()
        return (
            p[rect.col_hi][rect.row_hi]
            - p[rect.col_lo - 1][rect.row_hi]
            - p[rect.col_hi][rect.row_lo - 1]
            + p[rect.col_lo - 1][rect.row_lo - 1]
        )

    def points_in(self, rects: Iterable[Rect]) -> list[tuple[int, int]]:
        """Points inside the union of rectangles, ordered by position."""
        pts: dict[int, int] = {}
        for rect in rects:
            if rect.is_empty:
                continue
            for c in range(rect.col_lo, rect.col_hi + 1):
                v = self.values[c - 1]
                if rect.row_lo <= v <= rect.row_hi:
                    pts[c] = v
        return sorted(pts.items())


class Matcher:
    """Occurrence search for one fixed pattern, reusable across hosts.

    ``column_sets`` yields the 0-based chosen columns of each occurrence in
    lexicographic order; ``contains`` short-circuits on the first hit.  For
    barred patterns the skeleton is the unbarred part and extendability is
    tested directly against the full pattern, point by point.
    """

    def __init__(self, pat: Pattern):
        self.pattern = pat
        if pat.kind == "barred":
            if len(pat.barred_positions) != 1:
                raise UnsupportedPatternError(
                    f"occurrence search supports exactly one bar, got {len(pat.barred_positions)}"
                )
            full = pat.perm.values
            bar = pat.barred_positions[0]
            self._full = full
            self._bar0 = bar - 1
            self._sub = Matcher(classical(_standardize([v for i, v in enumerate(full, 1) if i != bar])))
            self._k = len(full) - 1
            return
        pv = pat.perm.values
        k = len(pv)
        self._k = k
        # Insertion rank of each pattern letter among the letters before it;
        # matching these ranks step by step is order-isomorphism.
        self._ranks = tuple(sum(1 for s in range(t) if pv[s] < pv[t]) for t in range(k))
        self._shade = pat.shade
        self._marks = tuple((m.region, m.min_count) for m in pat.marks)
        self._decors = tuple((d.region, Matcher(d.avoid)) for d in pat.decorations)
        self._plain = not (self._shade or self._marks or self._decors)

    # -- skeleton search ---------------------------------------------------

    def _skeletons(self, values: Values) -> Iterator[tuple[int, ...]]:
        k = self._k
        n = len(values)
        if k == 0:
            yield ()
            return
        if k > n:
            return
        ranks = self._ranks
        cols: list[int] = []
        chosen: list[int] = []

        def extend(start: int) -> Iterator[tuple[int, ...]]:
            t = len(cols)
            for x in range(start, n - (k - t) + 1):
                v = values[x]
                idx = bisect_left(chosen, v)
                if idx == ranks[t]:
                    cols.append(x)
                    chosen.insert(idx, v)
                    if t + 1 == k:
                        yield tuple(cols)
                    else:
                        yield from extend(x + 1)
                    cols.pop()
                    del chosen[idx]

        yield from extend(0)

    # -- constraints -------------------------------------------------------

    def _grid(self, diag: Diagram, cols: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        n = diag.n
        a = (0,) + tuple(c + 1 for c in cols) + (n + 1,)
        r = (0,) + tuple(sorted(diag.values[c] for c in cols)) + (n + 1,)
        return a, r

    def constraints_ok(self, diag: Diagram, cols: Sequence[int]) -> bool:
        """Shading, marks and decorations for one skeleton, assumed valid."""
        if self._plain:
            return True
        a, r = self._grid(diag, cols)
        for box in self._shade:
            if diag.count(Rect(a[box.col] + 1, a[box.col + 1] - 1, r[box.row] + 1, r[box.row + 1] - 1)):
                return False
        for region, need in self._marks:
            total = 0
            for box in region:
                total += diag.count(
                    Rect(a[box.col] + 1, a[box.col + 1] - 1, r[box.row] + 1, r[box.row + 1] - 1)
                )
                if total >= need:
                    break
            if total < need:
                return False
        for region, sub in self._decors:
            rects = [
                Rect(a[box.col] + 1, a[box.col + 1] - 1, r[box.row] + 1, r[box.row + 1] - 1)
                for box in region
            ]
            inside = _standardize([v for _, v in diag.points_in(rects)])
            if sub.contains(Diagram(inside)):
                return False
        return True

    # -- barred extendability ---------------------------------------------

    def _bar_extendable(self, values: Values, cols: tuple[int, ...]) -> bool:
        b0 = self._bar0
        lo = cols[b0 - 1] + 1 if b0 > 0 else 0
        hi = cols[b0] if b0 < len(cols) else len(values)
        picked = [values[c] for c in cols]
        for x in range(lo, hi):
            extended = picked[:b0] + [values[x]] + picked[b0:]
            if _standardize(extended) == self._full:
                return True
        return False

    # -- public search -----------------------------------------------------

    def column_sets(self, diag: Diagram) -> Iterator[tuple[int, ...]]:
        if self.pattern.kind == "barred":
            for cols in self._sub._skeletons(diag.values):
                if not self._bar_extendable(diag.values, cols):
                    yield cols
            return
        for cols in self._skeletons(diag.values):
            if self.constraints_ok(diag, cols):
                yield cols

    def contains(self, diag: Diagram) -> bool:
        return next(self.column_sets(diag), None) is not None


@functools.lru_cache(maxsize=1024)
def _matcher(pat: Pattern) -> Matcher:
    return Matcher(pat)


def occurrences(pi: Permutation, pat: Pattern) -> list[Occurrence]:
    """All occurrences of ``pat`` in ``pi``, ordered lexicographically by
    ``alpha``.  For barred patterns the reported occurrences are those of the
    standardized unbarred part.

    >>> [o.alpha for o in occurrences(Permutation.from_text("526413"), classical("132"))]
    [(2, 3, 4), (2, 3, 6), (2, 4, 6)]
    """
    diag = Diagram(pi.values)
    return [Occurrence.from_columns(diag.values, cols) for cols in _matcher(pat).column_sets(diag)]


def contains(pi: Permutation, pat: Pattern) -> bool:
    """Whether ``pi`` contains at least one occurrence of ``pat``."""
    return _matcher(pat).contains(Diagram(pi.values))


def avoids(pi: Permutation, pat: Pattern) -> bool:
    return not contains(pi, pat)


def barred_to_mesh(pat: Pattern) -> Pattern:
    """Convert a single-bar pattern to its equivalent mesh pattern: drop the
    barred letter and shade the box it vacated.

    >>> p = barred_to_mesh(barred("35241", [2]))
    >>> p.perm.to_text(), p.shade
    ('3241', (Box(col=1, row=4),))
    """
    if pat.kind != "barred":
        raise InvalidInputError(f"expected a barred pattern, got {pat.kind}")
    if len(pat.barred_positions) != 1:
        raise UnsupportedPatternError(
            f"mesh conversion needs exactly one bar, got {len(pat.barred_positions)}"
        )
    bar = pat.barred_positions[0]
    value = pat.perm.values[bar - 1]
    rest = _standardize([v for i, v in enumerate(pat.perm.values, 1) if i != bar])
    return mesh(rest, {(bar - 1, value - 1)})
