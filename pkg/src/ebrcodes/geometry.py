"""Lines of an array, affine re-indexings, and recovery of erased lines.

An :class:`IndexMap` ``(a, b, c, e)`` builds a new array
``b[u, v] = c[<a u + b v>, <c u + e v>]``. A well-chosen map turns lines of
one slope into columns while keeping every other parity slope of the code
inside the code, so erased lines become erased columns that the ordinary
column decoder handles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import INF, CodeArray, as_code_array, line_cells
from .errors import BadParameters, SingularMap, TooManyErasures, UnsupportedRegime

__all__ = ["INF", "LineId", "IndexMap", "line_cells", "apply_map", "slope_image",
           "slope_to_column_map", "erase_lines", "recover_lines", "proven_regime"]


@dataclass(frozen=True)
class LineId:
    """A line of finite slope through ``(anchor, 0)``, or column ``anchor``
    when ``slope`` is :data:`INF`."""

    slope: object
    anchor: int

    def cells(self, p: int):
        return line_cells(self.slope, self.anchor, p)


@dataclass(frozen=True)
class IndexMap:
    a: int
    b: int
    c: int
    e: int

    def __post_init__(self):
        for name in ("a", "b", "c", "e"):
            object.__setattr__(self, name, int(getattr(self, name)))

    def det(self, p: int) -> int:
        return (self.a * self.e - self.b * self.c) % p

    def check(self, p: int):
        if self.det(p) == 0:
            raise SingularMap(f"{self} is not invertible mod {p}")

    def source(self, u, v, p: int):
        """Cell of the original array that lands at ``(u, v)``."""
        return (self.a * u + self.b * v) % p, (self.c * u + self.e * v) % p

    def inverse(self, p: int) -> "IndexMap":
        self.check(p)
        di = pow(self.det(p), -1, p)
        return IndexMap(self.e * di % p, -self.b * di % p,
                        -self.c * di % p, self.a * di % p)


IDENTITY = IndexMap(1, 0, 0, 1)
TRANSPOSE = IndexMap(0, 1, 1, 0)


def _gather(p: int, m: IndexMap):
    u, v = np.indices((p, p))
    return m.source(u, v, p)


def apply_map(arr, m: IndexMap):
    """Re-index a ``p x p`` array (or a :class:`CodeArray`, mask included)."""
    if isinstance(arr, CodeArray):
        p = arr.shape[0]
        m.check(p)
        su, sv = _gather(p, m)
        return CodeArray(arr.symbols[..., su, sv], arr.erased[su, sv])
    arr = np.asarray(arr)
    p = arr.shape[-1]
    if arr.shape[-2] != p:
        raise BadParameters("index maps act on square p x p arrays")
    m.check(p)
    su, sv = _gather(p, m)
    return arr[..., su, sv]


def slope_image(m: IndexMap, slope, p: int):
    """Slope that lines of ``slope`` in the original array have after the map.

    A line ``x + s y = const`` of the original becomes
    ``(a + s c) u + (b + s e) v = const`` in the mapped array.
    """
    m.check(p)
    if slope == INF:
        return INF if m.c % p == 0 else m.e * pow(m.c, -1, p) % p
    den = (m.a + slope * m.c) % p
    if den == 0:
        return INF
    return (m.b + slope * m.e) * pow(den, -1, p) % p


def proven_regime(p: int, r: int) -> bool:
    return r in (1, 2, 3, p - 2, p - 1)


def _candidates(p: int, r: int, j: int):
    if r <= 2 and j == 0:
        yield TRANSPOSE
    if r in (2, 3) and j == 1:
        yield IndexMap(-1, 0, 1, 1)
    if r == 3 and j == 0:
        yield IndexMap(0, 2, 1, 0)
    if r == 3 and j == 2:
        yield IndexMap(-2, -2, 1, 2)
    if r == p - 2:
        yield IndexMap(-j, 3 * j + 2, 1, j)
    if r == p - 1:
        yield IndexMap(-j, j + 1, 1, 0)


def slope_to_column_map(p: int, r: int, slope) -> IndexMap:
    """Map sending slope-``slope`` lines to columns while permuting the parity
    slopes ``{INF, 0, .., r-1}`` among themselves.

    Raises :class:`UnsupportedRegime` when no such map is known.
    """
    if slope == INF:
        return IDENTITY
    if not 0 <= slope < r:
        raise BadParameters(f"slope {slope} is not a parity slope of r={r}")
    allowed = {INF, *range(r)}
    for m in _candidates(p, r, slope):
        m = IndexMap(m.a % p, m.b % p, m.c % p, m.e % p)
        if m.det(p) == 0:
            continue
        images = {slope_image(m, s, p) for s in allowed}
        if images == allowed and slope_image(m, slope, p) == INF:
            return m
    raise UnsupportedRegime(
        f"no line-to-column map known for p={p}, r={r}, slope {slope}")


def erase_lines(arr, lines) -> CodeArray:
    arr = as_code_array(arr)
    p = arr.shape[0]
    return arr.erase_cells([cell for line in lines for cell in line.cells(p)])


def recover_lines(arr, lines, code) -> np.ndarray:
    """Recover up to ``r`` erased lines sharing one slope in EBR(p, r, q, 1).

    Other erasures already marked in ``arr`` are repaired along the way,
    as long as the mapped array stays decodable.
    """
    lines = list(lines)
    if code.g != (1,) or getattr(code, "kind", None) != "EBR":
        raise BadParameters("line recovery needs an EBR(p, r, q, 1) code")
    p, r = code.p, code.r
    slopes = {line.slope for line in lines}
    if len(slopes) > 1:
        raise BadParameters("all erased lines must share one slope")
    if len(lines) > r:
        raise TooManyErasures(f"{len(lines)} lines exceed r={r}")
    arr = erase_lines(arr, lines)
    if not lines:
        return code.repair(arr)
    m = slope_to_column_map(p, r, slopes.pop())
    mapped = apply_map(arr, m)
    return apply_map(code.repair(mapped), m.inverse(p))
