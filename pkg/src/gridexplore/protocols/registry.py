"""Maps (grid, robot count) to the protocol that covers that instance."""

from __future__ import annotations

from ..engine import STAY, Decision
from ..grid import GridDims
from .five33 import five33
from .general3 import general3
from .grid23 import grid23


class UnsupportedInstance(ValueError):
    pass


def stay(view) -> Decision:
    return STAY


_BY_NAME = {
    "grid23": grid23,
    "five33": five33,
    "general3": general3,
    "stay": stay,
}


def protocol_names() -> list[str]:
    return sorted(_BY_NAME)


def get_protocol(grid: GridDims, k: int, name: str | None = None):
    """Return the protocol for the instance, validating the known bounds.

    With an explicit name, the instance must still fit the protocol's
    own preconditions.
    """
    if name is not None and name not in _BY_NAME:
        raise UnsupportedInstance(f"unknown protocol {name!r}")
    if k == grid.n and name in (None, "stay"):
        return stay
    dims = (grid.i, grid.j)
    if dims == (2, 3) and k == 3 and name in (None, "grid23"):
        return grid23
    if dims == (3, 3) and k == 5 and name in (None, "five33"):
        return five33
    if grid.j > 3 and k == 3 and name in (None, "general3"):
        return general3
    raise UnsupportedInstance(
        f"no protocol for grid {grid} with {k} robots"
        + (f" under name {name!r}" if name else "")
        + ": supported instances are (2,3) with 3, (3,3) with 5, "
        "long-side>3 with 3, and k equal to the node count"
    )
