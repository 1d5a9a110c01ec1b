"""Robot configurations, observation modes, views and canonical forms.

A configuration assigns a robot count to each node.  Robots observe a
configuration either weakly (free / single / tower) or strongly (exact
counts).  A view is an observation plus the observer's own node; views
are compared only up to grid automorphism, which is what makes robots
anonymous and disoriented.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .grid import (
    Automorphism,
    Coord,
    GridDims,
    automorphisms,
    identity,
    neighbors,
)

Mode = Literal["weak", "strong"]

FREE = 0
SINGLE = 1
TOWER = 2


class NotPresent(ValueError):
    pass


class ConfigSyntaxError(ValueError):
    pass


class OrbitViolation(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Configuration:
    """Robot counts per node; nodes with zero robots are omitted."""

    grid: GridDims
    counts: tuple[tuple[Coord, int], ...]  # sorted by coord, counts >= 1

    @staticmethod
    def of(grid: GridDims, counts: dict[Coord, int] | Iterable[Coord]) -> "Configuration":
        if not isinstance(counts, dict):
            acc: dict[Coord, int] = {}
            for v in counts:
                acc[v] = acc.get(v, 0) + 1
            counts = acc
        items = tuple(sorted((v, c) for v, c in counts.items() if c > 0))
        for v, c in items:
            if not grid.in_bounds(v):
                raise ConfigSyntaxError(f"{v} out of bounds for {grid}")
        if not items:
            raise ConfigSyntaxError("a configuration needs at least one robot")
        return Configuration(grid=grid, counts=items)

    @property
    def k(self) -> int:
        return sum(c for _, c in self.counts)

    def count_at(self, v: Coord) -> int:
        for w, c in self.counts:
            if w == v:
                return c
        return 0

    def occupied(self) -> frozenset[Coord]:
        return frozenset(v for v, _ in self.counts)

    def singles(self) -> frozenset[Coord]:
        return frozenset(v for v, c in self.counts if c == 1)

    def towers(self) -> frozenset[Coord]:
        return frozenset(v for v, c in self.counts if c >= 2)

    def is_towerless(self) -> bool:
        return all(c == 1 for _, c in self.counts)

    def apply(self, f: Automorphism) -> "Configuration":
        return Configuration(
            grid=self.grid, counts=tuple(sorted((f(v), c) for v, c in self.counts))
        )

    def label_seq(self, mode: Mode = "strong") -> tuple[int, ...]:
        """Row-major sequence of labels, used for canonical ordering."""
        m = dict(self.counts)
        if mode == "weak":
            return tuple(min(m.get(v, 0), 2) for v in self.grid.nodes())
        return tuple(m.get(v, 0) for v in self.grid.nodes())


def observe(c: Configuration, mode: Mode) -> dict[Coord, int]:
    """Labels per node: exact counts (strong) or thresholded at 2 (weak)."""
    m = dict(c.counts)
    if mode == "weak":
        return {v: min(m.get(v, 0), 2) for v in c.grid.nodes()}
    return {v: m.get(v, 0) for v in c.grid.nodes()}


@dataclass(frozen=True, slots=True)
class View:
    """One robot's observation: node labels plus its own marked node."""

    grid: GridDims
    labels: tuple[tuple[Coord, int], ...]  # sorted, nonzero labels only
    self_node: Coord
    mode: Mode

    def label_at(self, v: Coord) -> int:
        for w, c in self.labels:
            if w == v:
                return c
        return 0

    def occupied(self) -> frozenset[Coord]:
        return frozenset(v for v, _ in self.labels)

    def singles(self) -> frozenset[Coord]:
        return frozenset(v for v, c in self.labels if c == 1)

    def towers(self) -> frozenset[Coord]:
        return frozenset(v for v, c in self.labels if c >= 2)

    def apply(self, f: Automorphism) -> "View":
        return View(
            grid=self.grid,
            labels=tuple(sorted((f(v), c) for v, c in self.labels)),
            self_node=f(self.self_node),
            mode=self.mode,
        )

    def key(self) -> tuple:
        """Canonical identity: minimum over the symmetry group."""
        return min(self.apply(f)._raw_key() for f in automorphisms(self.grid))

    def _raw_key(self) -> tuple:
        return (self.labels, self.self_node)

    def same_as(self, other: "View") -> bool:
        return self.mode == other.mode and self.key() == other.key()

    def stabilizer(self) -> list[Automorphism]:
        """All automorphisms fixing both the labels and the self mark."""
        mine = self._raw_key()
        return [f for f in automorphisms(self.grid) if self.apply(f)._raw_key() == mine]


def view_of(c: Configuration, at: Coord, mode: Mode) -> View:
    if c.count_at(at) < 1:
        raise NotPresent(f"no robot at {at}")
    labels = observe(c, mode)
    return View(
        grid=c.grid,
        labels=tuple(sorted((v, n) for v, n in labels.items() if n > 0)),
        self_node=at,
        mode=mode,
    )


@dataclass(frozen=True, slots=True)
class CanonicalForm:
    representative: Configuration
    witness: Automorphism  # witness(input) = representative


def canonical_form(c: Configuration) -> CanonicalForm:
    """Lexicographic minimum over the group by row-major label sequence."""
    best = None
    best_f = identity(c.grid)
    for f in automorphisms(c.grid):
        img = c.apply(f)
        key = img.label_seq("strong")
        if best is None or key < best[0]:
            best = (key, img)
            best_f = f
    assert best is not None
    return CanonicalForm(representative=best[1], witness=best_f)


def indistinguishable(a: Configuration, b: Configuration) -> bool:
    return canonical_form(a).representative == canonical_form(b).representative


def decision_orbit(v: View, targets: frozenset[Coord]) -> frozenset[Coord]:
    """Validate a move-choice set against the view's symmetries.

    A nonempty set is accepted iff every target is adjacent to the
    observer and the set is closed under every automorphism fixing the
    view.  The empty set means Stay and is always valid.
    """
    if not targets:
        return targets
    adj = set(neighbors(v.grid, v.self_node))
    for t in targets:
        if t not in adj:
            raise OrbitViolation(f"target {t} not adjacent to observer {v.self_node}")
    for f in v.stabilizer():
        mapped = frozenset(f(t) for t in targets)
        if mapped != targets:
            raise OrbitViolation(
                f"targets {sorted(targets)} not closed under view stabilizer"
            )
    return targets


def parse_config(grid: GridDims, text: str) -> Configuration:
    """Parse "x,y[:count]" atoms separated by semicolons."""
    counts: dict[Coord, int] = {}
    for atom in text.split(";"):
        atom = atom.strip()
        if not atom:
            continue
        body, _, cnt = atom.partition(":")
        try:
            xs, ys = body.split(",")
            v = (int(xs), int(ys))
            c = int(cnt) if cnt else 1
        except ValueError as e:
            raise ConfigSyntaxError(f"bad configuration atom: {atom!r}") from e
        if c < 1:
            raise ConfigSyntaxError(f"count must be positive in {atom!r}")
        if not grid.in_bounds(v):
            raise ConfigSyntaxError(f"{v} out of bounds for {grid}")
        counts[v] = counts.get(v, 0) + c
    if not counts:
        raise ConfigSyntaxError("empty configuration")
    return Configuration.of(grid, counts)


def format_config(c: Configuration) -> str:
    parts = []
    for (x, y), n in c.counts:
        parts.append(f"{x},{y}" if n == 1 else f"{x},{y}:{n}")
    return ";".join(parts)
