"""Collectives: monoids of contributions with coassociative return distribution."""

from .core import (
    Collective,
    PolynomialInterface,
    aggregate,
    aggregate_all,
    distribute,
    distribute_all,
    distribute_all_right,
    interface_of,
    is_valid_return,
    neutral,
)
from .laws import LAW_IDS, LawConfig, LawReport, check_all
from .values import FrozenMap, Multiset, Seq, Tagged, left, right

__version__ = "0.1.0"
