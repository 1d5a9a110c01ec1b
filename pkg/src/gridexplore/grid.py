"""Anonymous rectangular grid topology.

Nodes are (x, y) integer pairs with x in [0, j) along the long side and
y in [0, i) along the short side.  Two nodes are adjacent iff their
Manhattan distance is 1.  The symmetry group is represented by three
boolean generators (flip_x, flip_y, transpose), applied transpose-first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Coord = tuple[int, int]


class InvalidDimension(ValueError):
    pass


class BoundsError(ValueError):
    pass


class NoBorderline(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class GridDims:
    """Normalized grid dimensions: i rows (short side), j columns, i <= j."""

    i: int
    j: int

    @property
    def n(self) -> int:
        return self.i * self.j

    def in_bounds(self, v: Coord) -> bool:
        x, y = v
        return 0 <= x < self.j and 0 <= y < self.i

    def nodes(self) -> list[Coord]:
        """All nodes in row-major order: y ascending, then x ascending."""
        return [(x, y) for y in range(self.i) for x in range(self.j)]

    def __str__(self) -> str:
        return f"{self.i}x{self.j}"


def make_grid(a: int, b: int) -> GridDims:
    if a < 1 or b < 1:
        raise InvalidDimension(f"grid sides must be positive, got ({a},{b})")
    return GridDims(i=min(a, b), j=max(a, b))


def parse_grid(text: str) -> GridDims:
    """Parse the textual form "IxJ" (case-insensitive separator)."""
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise InvalidDimension(f"bad grid syntax: {text!r}")
    try:
        a, b = (int(p) for p in parts)
    except ValueError as e:
        raise InvalidDimension(f"bad grid syntax: {text!r}") from e
    return make_grid(a, b)


def neighbors(grid: GridDims, v: Coord) -> list[Coord]:
    if not grid.in_bounds(v):
        raise BoundsError(f"{v} out of bounds for {grid}")
    x, y = v
    out = []
    for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        w = (x + dx, y + dy)
        if grid.in_bounds(w):
            out.append(w)
    return out


def degree(grid: GridDims, v: Coord) -> int:
    return len(neighbors(grid, v))


def dist(grid: GridDims, u: Coord, v: Coord) -> int:
    if not grid.in_bounds(u) or not grid.in_bounds(v):
        raise BoundsError(f"{u} or {v} out of bounds for {grid}")
    return abs(u[0] - v[0]) + abs(u[1] - v[1])


def corners(grid: GridDims) -> frozenset[Coord]:
    """Nodes of minimum degree."""
    if grid.n == 1:
        return frozenset({(0, 0)})
    if grid.i == 1:
        return frozenset({(0, 0), (grid.j - 1, 0)})
    return frozenset(
        {(0, 0), (grid.j - 1, 0), (0, grid.i - 1), (grid.j - 1, grid.i - 1)}
    )


def borderlines(grid: GridDims) -> list[tuple[Coord, ...]]:
    """Boundary chains listed corner-to-corner.

    For a chain grid the whole node line is the one borderline.  For
    i > 1 there are four: two rows of length j and two columns of
    length i.
    """
    if grid.n == 1:
        raise NoBorderline("a 1x1 grid has no borderline")
    if grid.i == 1:
        return [tuple((x, 0) for x in range(grid.j))]
    rows = [tuple((x, y) for x in range(grid.j)) for y in (0, grid.i - 1)]
    cols = [tuple((x, y) for y in range(grid.i)) for x in (0, grid.j - 1)]
    return rows + cols


def longest_borderlines(grid: GridDims) -> list[tuple[Coord, ...]]:
    lines = borderlines(grid)
    top = max(len(b) for b in lines)
    return [b for b in lines if len(b) == top]


@dataclass(frozen=True, slots=True)
class Automorphism:
    """Grid symmetry: optional transpose (squares only), then axis flips."""

    grid: GridDims
    flip_x: bool = False
    flip_y: bool = False
    transpose: bool = False

    def __post_init__(self):
        if self.transpose and self.grid.i != self.grid.j:
            raise InvalidDimension("transpose requires a square grid")

    def apply(self, v: Coord) -> Coord:
        x, y = v
        if self.transpose:
            x, y = y, x
        if self.flip_x:
            x = self.grid.j - 1 - x
        if self.flip_y:
            y = self.grid.i - 1 - y
        return (x, y)

    def __call__(self, v: Coord) -> Coord:
        return self.apply(v)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: (self.compose(other))(v) = self(other(v))."""
        fx2, fy2 = other.flip_x, other.flip_y
        if self.transpose:
            fx2, fy2 = fy2, fx2
        return Automorphism(
            grid=self.grid,
            flip_x=self.flip_x ^ fx2,
            flip_y=self.flip_y ^ fy2,
            transpose=self.transpose ^ other.transpose,
        )

    def inverse(self) -> "Automorphism":
        if self.transpose:
            return Automorphism(
                grid=self.grid,
                flip_x=self.flip_y,
                flip_y=self.flip_x,
                transpose=True,
            )
        return self


def identity(grid: GridDims) -> Automorphism:
    return Automorphism(grid=grid)


@lru_cache(maxsize=None)
def automorphisms(grid: GridDims) -> tuple[Automorphism, ...]:
    """The full symmetry group, deduplicated by action on nodes."""
    candidates = []
    transposes = (False, True) if grid.i == grid.j else (False,)
    for t in transposes:
        for fx in (False, True):
            for fy in (False, True):
                candidates.append(
                    Automorphism(grid=grid, flip_x=fx, flip_y=fy, transpose=t)
                )
    seen: dict[tuple[Coord, ...], Automorphism] = {}
    nodes = grid.nodes()
    for f in candidates:
        action = tuple(f(v) for v in nodes)
        if action not in seen:
            seen[action] = f
    return tuple(seen.values())
