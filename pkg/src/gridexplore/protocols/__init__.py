from .base import Snapshot, closed_moves, protocol_from_rule, snapshot_of
from .five33 import five33
from .general3 import classify_setup, general3, snake_order
from .grid23 import grid23
from .registry import UnsupportedInstance, get_protocol, protocol_names
