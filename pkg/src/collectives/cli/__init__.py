"""Command-line front end and the collective expression language."""

from .expr import Call, ListLit, Param, SetLit, parse_expr, print_expr
from .registry import CONSTRUCTORS, build, evaluate
