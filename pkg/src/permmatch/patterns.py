"""The six pattern classes and the mesh form they all reduce to.

Shading uses grid coordinates: column ``x`` is the gap between the x-th and
(x+1)-th matched positions, row ``y`` the gap between the y-th and (y+1)-th
smallest matched values.  Index 0 and k are the outer gaps, bounded by the
sentinels position 0 / n+1 and value 0 / n+1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from . import perm as P
from .perm import DominanceGrid, Permutation, build_grid, parse_permutation, rectangle_count


class PatternError(ValueError):
    pass


class PatternSyntaxError(PatternError):
    pass


class ShadingOutOfRange(PatternError):
    pass


class NotClosedUnderInverse(PatternError):
    """Inverse of a pattern whose class has no inverse (vincular, consecutive)."""


def _as_perm(p) -> Permutation:
    return p if isinstance(p, Permutation) else Permutation(tuple(p))


def _check_indices(name: str, idx: Iterable[int], k: int) -> frozenset[int]:
    out = frozenset(idx)
    for i in out:
        if not 0 <= i <= k:
            raise ShadingOutOfRange(f"{name} index {i} outside [0, {k}]")
    return out


@dataclass(frozen=True)
class MeshPattern:
    perm: Permutation
    cells: frozenset = field(default_factory=frozenset)

    kind = "mesh"

    def __post_init__(self) -> None:
        perm = _as_perm(self.perm)
        object.__setattr__(self, "perm", perm)
        k = len(perm)
        cells = frozenset((int(x), int(y)) for x, y in self.cells)
        for x, y in cells:
            if not (0 <= x <= k and 0 <= y <= k):
                raise ShadingOutOfRange(f"cell ({x},{y}) outside [0,{k}]x[0,{k}]")
        object.__setattr__(self, "cells", cells)

    def __len__(self) -> int:
        return len(self.perm)

    def to_mesh(self) -> "MeshPattern":
        return self


Mesh = MeshPattern


@dataclass(frozen=True)
class Classical:
    perm: Permutation

    kind = "classical"

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", _as_perm(self.perm))

    def __len__(self) -> int:
        return len(self.perm)

    def to_mesh(self) -> MeshPattern:
        return MeshPattern(self.perm, frozenset())


@dataclass(frozen=True)
class Vincular:
    perm: Permutation
    cols: frozenset = field(default_factory=frozenset)

    kind = "vincular"

    def __post_init__(self) -> None:
        perm = _as_perm(self.perm)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "cols", _check_indices("column", self.cols, len(perm)))

    def __len__(self) -> int:
        return len(self.perm)

    def to_mesh(self) -> MeshPattern:
        k = len(self.perm)
        return MeshPattern(self.perm, frozenset((c, y) for c in self.cols for y in range(k + 1)))


@dataclass(frozen=True)
class Bivincular:
    perm: Permutation
    cols: frozenset = field(default_factory=frozenset)
    rows: frozenset = field(default_factory=frozenset)

    kind = "bivincular"

    def __post_init__(self) -> None:
        perm = _as_perm(self.perm)
        object.__setattr__(self, "perm", perm)
        k = len(perm)
        object.__setattr__(self, "cols", _check_indices("column", self.cols, k))
        object.__setattr__(self, "rows", _check_indices("row", self.rows, k))

    def __len__(self) -> int:
        return len(self.perm)

    def to_mesh(self) -> MeshPattern:
        k = len(self.perm)
        span = range(k + 1)
        cells = {(c, y) for c in self.cols for y in span}
        cells |= {(x, r) for r in self.rows for x in span}
        return MeshPattern(self.perm, frozenset(cells))


@dataclass(frozen=True)
class Boxed:
    perm: Permutation

    kind = "boxed"

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", _as_perm(self.perm))

    def __len__(self) -> int:
        return len(self.perm)

    def to_mesh(self) -> MeshPattern:
        inner = range(1, len(self.perm))
        return MeshPattern(self.perm, frozenset((x, y) for x in inner for y in inner))


@dataclass(frozen=True)
class Consecutive:
    perm: Permutation

    kind = "consecutive"

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", _as_perm(self.perm))

    def __len__(self) -> int:
        return len(self.perm)

    @property
    def cols(self) -> frozenset:
        return frozenset(range(1, len(self.perm)))

    def to_mesh(self) -> MeshPattern:
        k = len(self.perm)
        return MeshPattern(self.perm, frozenset((c, y) for c in range(1, k) for y in range(k + 1)))


Pattern = Union[Classical, Vincular, Bivincular, MeshPattern, Boxed, Consecutive]

KINDS = ("classical", "vincular", "bivincular", "mesh", "boxed", "consecutive")


def to_mesh(p: Pattern) -> MeshPattern:
    return p.to_mesh()


def cols_stat(p: Pattern) -> int:
    return len(getattr(p, "cols", ()))


def rows_stat(p: Pattern) -> int:
    return len(getattr(p, "rows", ()))


def cells_stat(p: Pattern) -> int:
    return len(p.to_mesh().cells)


# -- text grammar -----------------------------------------------------------

_ALLOWED = {
    "classical": set(),
    "vincular": {"cols"},
    "bivincular": {"cols", "rows"},
    "mesh": {"cells"},
    "boxed": set(),
    "consecutive": set(),
}
_CELL_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
_CELLS_RE = re.compile(r"\(\s*-?\d+\s*,\s*-?\d+\s*\)(?:\s*,\s*\(\s*-?\d+\s*,\s*-?\d+\s*\))*")


def parse_pattern(line: str) -> Pattern:
    """Parse ``<kind>: perm=...; cols=...; rows=...; cells=...``.

    >>> parse_pattern("vincular: perm=1 3 2; cols=1")
    Vincular(perm=Permutation(values=(1, 3, 2)), cols=frozenset({1}))
    """
    head, sep, rest = line.strip().partition(":")
    kind = head.strip()
    if not sep or kind not in _ALLOWED:
        raise PatternSyntaxError(f"expected '<kind>: perm=...' with kind in {KINDS}, got {line!r}")
    fields: dict[str, str] = {}
    order = ["perm", "cols", "rows", "cells"]
    last = -1
    for part in rest.split(";"):
        part = part.strip()
        if not part:
            raise PatternSyntaxError(f"empty field in {line!r}")
        key, eq, value = part.partition("=")
        key = key.strip()
        if not eq or key not in order:
            raise PatternSyntaxError(f"bad field {part!r}")
        if key in fields:
            raise PatternSyntaxError(f"duplicate field {key!r}")
        if order.index(key) < last:
            raise PatternSyntaxError(f"field {key!r} out of order")
        last = order.index(key)
        fields[key] = value.strip()
    if "perm" not in fields:
        raise PatternSyntaxError("missing perm=")
    extra = set(fields) - {"perm"} - _ALLOWED[kind]
    if extra:
        raise PatternSyntaxError(f"{kind} pattern does not take {sorted(extra)}")
    try:
        perm = parse_permutation(fields["perm"])
    except P.PermutationError as exc:
        raise PatternSyntaxError(f"bad perm: {exc}") from None
    cols = _parse_ints(fields.get("cols"))
    rows = _parse_ints(fields.get("rows"))
    if kind == "classical":
        return Classical(perm)
    if kind == "vincular":
        return Vincular(perm, cols)
    if kind == "bivincular":
        return Bivincular(perm, cols, rows)
    if kind == "boxed":
        return Boxed(perm)
    if kind == "consecutive":
        return Consecutive(perm)
    return MeshPattern(perm, _parse_cells(fields.get("cells")))


def _parse_ints(s: str | None) -> frozenset[int]:
    if s is None:
        return frozenset()
    try:
        return frozenset(int(x, 10) for x in s.split(","))
    except ValueError:
        raise PatternSyntaxError(f"bad index list {s!r}") from None


def _parse_cells(s: str | None) -> frozenset:
    if s is None:
        return frozenset()
    if not _CELLS_RE.fullmatch(s):
        raise PatternSyntaxError(f"bad cell list {s!r}")
    return frozenset((int(x), int(y)) for x, y in _CELL_RE.findall(s))


def print_pattern(p: Pattern) -> str:
    parts = [f"{p.kind}: perm={p.perm}"]
    if isinstance(p, (Vincular, Bivincular)) and p.cols:
        parts.append("cols=" + ",".join(map(str, sorted(p.cols))))
    if isinstance(p, Bivincular) and p.rows:
        parts.append("rows=" + ",".join(map(str, sorted(p.rows))))
    if isinstance(p, MeshPattern) and p.cells:
        parts.append("cells=" + ",".join(f"({x},{y})" for x, y in sorted(p.cells)))
    return "; ".join(parts)


# -- occurrence predicate ---------------------------------------------------

def is_occurrence(
    m: MeshPattern,
    t: Permutation,
    positions: Sequence[int],
    grid: DominanceGrid | None = None,
) -> bool:
    """Whether ``t`` restricted to ``positions`` is an occurrence of ``m``."""
    k, n = len(m.perm), len(t)
    if len(positions) != k:
        raise ValueError(f"expected {k} positions, got {len(positions)}")
    prev = 0
    for i in positions:
        if not prev < i <= n:
            raise ValueError(f"positions must be strictly increasing within [1,{n}]: {tuple(positions)}")
        prev = i
    tv = t.values
    matched = [tv[i - 1] for i in positions]
    # order isomorphism: sorting positions by pattern value must sort text values
    pv = m.perm.values
    by_value = [0] * k
    for j, v in enumerate(pv):
        by_value[v - 1] = matched[j]
    for a, b in zip(by_value, by_value[1:]):
        if a >= b:
            return False
    if not m.cells:
        return True
    if grid is None:
        grid = build_grid(t)
    cols = [0, *positions, n + 1]
    vals = [0, *by_value, n + 1]
    for x, y in m.cells:
        if rectangle_count(grid, cols[x], cols[x + 1], vals[y], vals[y + 1]):
            return False
    return True


# -- symmetries -------------------------------------------------------------

def pattern_reverse(p: Pattern) -> Pattern:
    k = len(p.perm)
    q = P.reverse(p.perm)
    if isinstance(p, Classical):
        return Classical(q)
    if isinstance(p, Vincular):
        return Vincular(q, frozenset(k - c for c in p.cols))
    if isinstance(p, Bivincular):
        return Bivincular(q, frozenset(k - c for c in p.cols), p.rows)
    if isinstance(p, Boxed):
        return Boxed(q)
    if isinstance(p, Consecutive):
        return Consecutive(q)
    return MeshPattern(q, frozenset((k - x, y) for x, y in p.cells))


def pattern_complement(p: Pattern) -> Pattern:
    k = len(p.perm)
    q = P.complement(p.perm)
    if isinstance(p, Classical):
        return Classical(q)
    if isinstance(p, Vincular):
        return Vincular(q, p.cols)
    if isinstance(p, Bivincular):
        return Bivincular(q, p.cols, frozenset(k - r for r in p.rows))
    if isinstance(p, Boxed):
        return Boxed(q)
    if isinstance(p, Consecutive):
        return Consecutive(q)
    return MeshPattern(q, frozenset((x, k - y) for x, y in p.cells))


def pattern_inverse(p: Pattern, promote: bool = False) -> Pattern:
    """Inverse of a pattern; columns and rows swap roles.

    Vincular and consecutive patterns with shaded columns are not closed under
    inverse; pass ``promote=True`` to get the bivincular result instead.
    """
    q = P.inverse(p.perm)
    if isinstance(p, Classical):
        return Classical(q)
    if isinstance(p, Boxed):
        return Boxed(q)
    if isinstance(p, MeshPattern):
        return MeshPattern(q, frozenset((y, x) for x, y in p.cells))
    if isinstance(p, Bivincular):
        return Bivincular(q, p.rows, p.cols)
    cols = p.cols
    if not cols:
        return Vincular(q) if isinstance(p, Vincular) else Consecutive(q)
    if not promote:
        raise NotClosedUnderInverse(f"inverse of a {p.kind} pattern with shaded columns is bivincular, not {p.kind}")
    return Bivincular(q, frozenset(), cols)
