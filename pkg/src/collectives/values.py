"""The universal value model and its canonical JSON encoding.

Contributions and returns of every collective are built from a small set of
immutable, hashable Python values:

=============  ======================================
unit           ``None``
boolean        ``bool``
integer        ``int``
rational       :class:`fractions.Fraction`
symbol         ``str``
tuple          ``tuple``
list           :class:`Seq`
finite set     ``frozenset``
multiset       :class:`Multiset`
finite map     :class:`FrozenMap`
tagged union   :class:`Tagged` (``left`` / ``right``)
=============  ======================================

Everything is hashable so values can live inside sets and map keys.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping

from .errors import MalformedDocument

Value = Any


class Seq(tuple):
    """A list-kind value. Equal only to other ``Seq`` (never to a plain tuple)."""

    __slots__ = ()

    def __new__(cls, items: Iterable = ()):
        return super().__new__(cls, items)

    def __eq__(self, other):
        return type(other) is Seq and tuple.__eq__(self, other)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(("list", tuple(self)))

    def __getitem__(self, item):
        out = tuple.__getitem__(self, item)
        return Seq(out) if isinstance(item, slice) else out

    def __add__(self, other):
        return Seq(tuple(self) + tuple(other))

    def __repr__(self):
        return f"Seq({list(self)!r})"


class Multiset:
    """Finite map from values to strictly positive counts."""

    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Mapping | Iterable = ()):
        if isinstance(counts, Mapping):
            items = counts.items()
        else:
            acc: dict = {}
            for v in counts:
                acc[v] = acc.get(v, 0) + 1
            items = acc.items()
        clean = {}
        for v, n in items:
            if type(n) is not int or n < 0:
                raise ValueError(f"multiset count must be a natural number, got {n!r}")
            if n:
                clean[v] = n
        self._counts = clean
        self._hash = None

    def count(self, v) -> int:
        return self._counts.get(v, 0)

    def items(self):
        return self._counts.items()

    def __iter__(self) -> Iterator:
        return iter(self._counts)

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __add__(self, other: "Multiset") -> "Multiset":
        out = dict(self._counts)
        for v, n in other._counts.items():
            out[v] = out.get(v, 0) + n
        return Multiset(out)

    def __eq__(self, other):
        return isinstance(other, Multiset) and self._counts == other._counts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("multiset", frozenset(self._counts.items())))
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {n}" for k, n in sorted_values(self._counts.items()))
        return "Multiset({" + inner + "})"


class FrozenMap(Mapping):
    """Immutable, hashable finite map."""

    __slots__ = ("_d", "_hash")

    def __init__(self, items: Mapping | Iterable = ()):
        self._d = dict(items)
        self._hash = None

    def __getitem__(self, key):
        return self._d[key]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        return isinstance(other, FrozenMap) and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("map", frozenset(self._d.items())))
        return self._hash

    def __repr__(self):
        return f"FrozenMap({self._d!r})"


class Tagged:
    """Injection into a binary disjoint union."""

    __slots__ = ("tag", "value")

    def __init__(self, tag: str, value):
        if tag not in ("left", "right"):
            raise ValueError(f"tag must be 'left' or 'right', got {tag!r}")
        self.tag = tag
        self.value = value

    def __eq__(self, other):
        return isinstance(other, Tagged) and self.tag == other.tag and self.value == other.value

    def __hash__(self):
        return hash(("tagged", self.tag, self.value))

    def __repr__(self):
        return f"Tagged({self.tag!r}, {self.value!r})"


def left(v) -> Tagged:
    return Tagged("left", v)


def right(v) -> Tagged:
    return Tagged("right", v)


def is_rational(x) -> bool:
    """int or Fraction, excluding bool."""
    return (type(x) is int) or isinstance(x, Fraction)


def is_nat(x) -> bool:
    return type(x) is int and x >= 0


# ---------------------------------------------------------------- equality


def values_equal(x, y, tolerance=0) -> bool:
    """Structural equality; numeric leaves may differ by at most ``tolerance``."""
    if not tolerance:
        if type(x) is bool or type(y) is bool:
            return type(x) is type(y) and x == y
        return x == y
    if is_rational(x) and is_rational(y):
        return abs(Fraction(x) - Fraction(y)) <= tolerance
    if type(x) is not type(y) and not (isinstance(x, tuple) and isinstance(y, tuple)):
        return False
    if isinstance(x, Seq) or isinstance(y, Seq):
        if type(x) is not type(y):
            return False
    if isinstance(x, tuple):
        return len(x) == len(y) and all(values_equal(a, b, tolerance) for a, b in zip(x, y))
    if isinstance(x, Tagged):
        return x.tag == y.tag and values_equal(x.value, y.value, tolerance)
    if isinstance(x, FrozenMap):
        return x.keys() == y.keys() and all(values_equal(x[k], y[k], tolerance) for k in x)
    return x == y


# ---------------------------------------------------------------- encoding

# kind -> (python class, encode(value, enc) -> payload, decode(payload, dec) -> value)
_EXTENSIONS: dict[str, tuple[type, Callable, Callable]] = {}


def register_kind(kind: str, cls: type, encode: Callable, decode: Callable) -> None:
    """Teach the encoder about an extra value class, serialized as ``{"kind": kind, ...}``."""
    _EXTENSIONS[kind] = (cls, encode, decode)


def _canon_key(encoded) -> str:
    return json.dumps(encoded, sort_keys=True, separators=(",", ":"))


def sorted_values(values: Iterable) -> list:
    """Values in canonical order (by their canonical encoding)."""
    return sorted(values, key=lambda v: _canon_key(encode_value(v)))


def encode_value(v: Value):
    """Map a value to a JSON-compatible structure. Sets and maps are sorted."""
    if v is None or type(v) is bool or type(v) is int or type(v) is str:
        return v
    if isinstance(v, Fraction):
        # integral rationals are integers, so 1 and Fraction(1) encode alike
        if v.denominator == 1:
            return v.numerator
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, Seq):
        return {"kind": "list", "items": [encode_value(x) for x in v]}
    if isinstance(v, tuple):
        return {"kind": "tuple", "items": [encode_value(x) for x in v]}
    if isinstance(v, frozenset):
        items = [encode_value(x) for x in v]
        return {"kind": "set", "items": sorted(items, key=_canon_key)}
    if isinstance(v, Multiset):
        items = [{"value": encode_value(x), "count": n} for x, n in v.items()]
        return {"kind": "multiset", "items": sorted(items, key=lambda e: _canon_key(e["value"]))}
    if isinstance(v, FrozenMap):
        items = [[encode_value(k), encode_value(x)] for k, x in v.items()]
        return {"kind": "map", "items": sorted(items, key=lambda e: _canon_key(e[0]))}
    if isinstance(v, Tagged):
        return {"tag": v.tag, "value": encode_value(v.value)}
    for kind, (cls, enc, _) in _EXTENSIONS.items():
        if isinstance(v, cls):
            out = {"kind": kind}
            out.update(enc(v, encode_value))
            return out
    raise TypeError(f"cannot encode {type(v).__name__} value {v!r}")


def decode_value(doc, path: str = "$") -> Value:
    """Inverse of :func:`encode_value`. Raises :class:`MalformedDocument` with a JSON path."""
    if doc is None or type(doc) is bool or type(doc) is int or type(doc) is str:
        return doc
    if isinstance(doc, float):
        raise MalformedDocument("floating point numbers are not allowed; use {num, den}", path)
    if isinstance(doc, list):
        raise MalformedDocument("bare arrays are not values; use {kind, items}", path)
    if not isinstance(doc, dict):
        raise MalformedDocument(f"unexpected JSON value {doc!r}", path)
    if "num" in doc or "den" in doc:
        if set(doc) != {"num", "den"}:
            raise MalformedDocument("rational needs exactly num and den", path)
        num, den = doc["num"], doc["den"]
        if type(num) is not int or type(den) is not int or den <= 0:
            raise MalformedDocument("rational needs integer num and positive integer den", path)
        return Fraction(num, den)
    if "tag" in doc:
        if set(doc) != {"tag", "value"} or doc["tag"] not in ("left", "right"):
            raise MalformedDocument("tagged value needs tag left|right and value", path)
        return Tagged(doc["tag"], decode_value(doc["value"], path + ".value"))
    kind = doc.get("kind")
    if kind in _EXTENSIONS:
        _, _, dec = _EXTENSIONS[kind]
        try:
            return dec(doc, lambda d, p="": decode_value(d, path + p))
        except MalformedDocument:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedDocument(f"bad {kind} value: {exc}", path) from None
    items = doc.get("items")
    if not isinstance(items, list) or set(doc) != {"kind", "items"}:
        raise MalformedDocument(f"unknown or malformed value object (kind={kind!r})", path)
    if kind in ("list", "tuple", "set"):
        xs = [decode_value(x, f"{path}.items[{i}]") for i, x in enumerate(items)]
        if kind == "list":
            return Seq(xs)
        if kind == "tuple":
            return tuple(xs)
        out = frozenset(xs)
        if len(out) != len(xs):
            raise MalformedDocument("set contains duplicate elements", path)
        return out
    if kind == "multiset":
        counts = {}
        for i, e in enumerate(items):
            p = f"{path}.items[{i}]"
            if not isinstance(e, dict) or set(e) != {"value", "count"}:
                raise MalformedDocument("multiset entry needs value and count", p)
            n = e["count"]
            if type(n) is not int or n <= 0:
                raise MalformedDocument("multiset counts must be positive integers", p)
            v = decode_value(e["value"], p + ".value")
            if v in counts:
                raise MalformedDocument("duplicate multiset element", p)
            counts[v] = n
        return Multiset(counts)
    if kind == "map":
        d = {}
        for i, e in enumerate(items):
            p = f"{path}.items[{i}]"
            if not isinstance(e, list) or len(e) != 2:
                raise MalformedDocument("map entry must be a [key, value] pair", p)
            k = decode_value(e[0], p + "[0]")
            if k in d:
                raise MalformedDocument("duplicate map key", p)
            d[k] = decode_value(e[1], p + "[1]")
        return FrozenMap(d)
    raise MalformedDocument(f"unknown value kind {kind!r}", path)


def show(v: Value) -> str:
    """Compact one-line rendering for messages (canonical encoding when possible)."""
    try:
        return json.dumps(encode_value(v), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    except TypeError:
        return repr(v)


def dumps_canonical(doc) -> str:
    """Byte-stable JSON text for a document built from encoded values."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
