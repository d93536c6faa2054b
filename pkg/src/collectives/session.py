"""One round of a collective: members contribute, a return comes in, shares go out.

Sessions are immutable values; every operation returns a new session.  The
document form is canonical JSON, so a serialized session is byte-stable::

    {
      "collective": "stakeholders()",
      "members": [{"id": "alice", "contribution": 2}, ...],
      "return": 20,
      "status": "settled",
      "aggregate": 10,
      "distributed": [{"id": "alice", "return": 4}, ...]
    }

``aggregate`` and ``distributed`` are derived data.  On load they are
recomputed from the collective, the members and the return, and a document
whose stored values disagree is rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any

from .core import Collective, aggregate_all, distribute_all
from .errors import (
    DuplicateMember,
    InvalidContribution,
    InvalidReturn,
    MalformedDocument,
    WrongStatus,
)
from .values import decode_value, dumps_canonical, encode_value, show, values_equal

STATUSES = ("collecting", "aggregated", "settled")


@dataclass(frozen=True)
class Session:
    collective_expr: str
    members: tuple = ()  # ((member_id, contribution), ...)
    aggregate: Any = None
    supplied_return: Any = None
    distributed: tuple | None = None  # ((member_id, share), ...)
    status: str = "collecting"
    handle: Collective | None = field(default=None, compare=False, repr=False)

    @property
    def collective(self) -> Collective:
        if self.handle is None:
            from .cli.registry import build

            object.__setattr__(self, "handle", build(self.collective_expr))
        return self.handle

    @property
    def contributions(self) -> list:
        return [c for _, c in self.members]

    def shares(self) -> dict:
        """Member id -> distributed return (settled sessions only)."""
        if self.distributed is None:
            raise WrongStatus("session is not settled")
        return dict(self.distributed)


def new_session(expr: str) -> Session:
    """An empty session; the expression must parse to a registered collective."""
    from .cli.registry import build

    return Session(collective_expr=expr, handle=build(expr))


def _require_status(s: Session, *allowed: str) -> None:
    if s.status not in allowed:
        raise WrongStatus(f"session is {s.status}; expected {' or '.join(allowed)}")


def submit(s: Session, member: str, c) -> Session:
    _require_status(s, "collecting")
    if not isinstance(member, str) or not member:
        raise InvalidContribution(f"member id must be a nonempty symbol, got {member!r}")
    if any(m == member for m, _ in s.members):
        raise DuplicateMember(f"member {member!r} already submitted")
    C = s.collective
    if not C.is_contribution(c):
        raise InvalidContribution(f"{show(c)} is not a contribution of {C.name}")
    return replace(s, members=s.members + ((member, c),))


def close(s: Session) -> Session:
    """Stop collecting and fix the aggregate."""
    _require_status(s, "collecting")
    return replace(s, aggregate=aggregate_all(s.collective, s.contributions), status="aggregated")


def settle(s: Session, r) -> Session:
    """Split the externally supplied return ``r`` among the members, in order."""
    _require_status(s, "collecting", "aggregated")
    if s.status == "collecting":
        s = close(s)
    C = s.collective
    if not C.is_return(s.aggregate, r):
        raise InvalidReturn(f"{show(r)} is not a return on the aggregate {show(s.aggregate)} of {C.name}")
    shares = distribute_all(C, s.contributions, r)
    distributed = tuple((m, x) for (m, _), x in zip(s.members, shares))
    return replace(s, supplied_return=r, distributed=distributed, status="settled")


# ---------------------------------------------------------------- documents


def to_document(s: Session) -> dict:
    doc: dict = {
        "collective": s.collective_expr,
        "members": [{"id": m, "contribution": encode_value(c)} for m, c in s.members],
        "status": s.status,
    }
    if s.status != "collecting":
        doc["aggregate"] = encode_value(s.aggregate)
    if s.supplied_return is not None or s.status == "settled":
        doc["return"] = encode_value(s.supplied_return)
    if s.distributed is not None:
        doc["distributed"] = [{"id": m, "return": encode_value(x)} for m, x in s.distributed]
    return doc


def serialize(s: Session) -> str:
    return dumps_canonical(to_document(s))


_FIELDS = {"collective", "members", "status", "aggregate", "return", "distributed"}


def from_document(doc) -> Session:
    """Rebuild a session, replaying its members and (when settled) its return.

    A document with status ``collecting`` may carry a ``return``; it is kept
    as the supplied return without settling.
    """
    if not isinstance(doc, dict):
        raise MalformedDocument("session document must be a JSON object", "$")
    unknown = set(doc) - _FIELDS
    if unknown:
        raise MalformedDocument(f"unknown fields {sorted(unknown)}", "$")
    expr = doc.get("collective")
    if not isinstance(expr, str):
        raise MalformedDocument("collective must be an expression string", "$.collective")
    status = doc.get("status", "collecting")
    if status not in STATUSES:
        raise MalformedDocument(f"status must be one of {STATUSES}", "$.status")
    members = doc.get("members")
    if not isinstance(members, list):
        raise MalformedDocument("members must be an array", "$.members")

    s = new_session(expr)
    for i, m in enumerate(members):
        path = f"$.members[{i}]"
        if not isinstance(m, dict) or set(m) != {"id", "contribution"}:
            raise MalformedDocument("member entry needs exactly id and contribution", path)
        c = decode_value(m["contribution"], path + ".contribution")
        s = submit(s, m["id"], c)

    r = decode_value(doc["return"], "$.return") if "return" in doc else None
    if status == "collecting":
        if "aggregate" in doc or "distributed" in doc:
            raise MalformedDocument("a collecting session has no aggregate or distribution", "$")
        return replace(s, supplied_return=r)
    s = close(s)
    if "aggregate" in doc:
        stored = decode_value(doc["aggregate"], "$.aggregate")
        if not values_equal(stored, s.aggregate):
            raise MalformedDocument("stored aggregate does not match the members", "$.aggregate")
    if status == "aggregated":
        if "distributed" in doc:
            raise MalformedDocument("an aggregated session has no distribution", "$.distributed")
        return replace(s, supplied_return=r)
    if r is None:
        raise MalformedDocument("a settled session needs a return", "$.return")
    s = settle(s, r)
    if "distributed" in doc:
        stored = doc["distributed"]
        if not isinstance(stored, list) or len(stored) != len(s.members):
            raise MalformedDocument("distributed must list one entry per member", "$.distributed")
        for i, (entry, (m, x)) in enumerate(zip(stored, s.distributed)):
            path = f"$.distributed[{i}]"
            if not isinstance(entry, dict) or set(entry) != {"id", "return"} or entry["id"] != m:
                raise MalformedDocument(f"expected entry for member {m!r}", path)
            if not values_equal(decode_value(entry["return"], path + ".return"), x):
                raise MalformedDocument("stored share does not match the distribution", path)
    return s


def deserialize(text: str) -> Session:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return from_document(doc)


def run_document(text: str) -> Session:
    """Load a document and settle it if it carries a return."""
    s = deserialize(text)
    if s.status != "settled" and s.supplied_return is not None:
        s = settle(s, s.supplied_return)
    elif s.status == "collecting":
        s = close(s)
    return s


__all__ = [
    "STATUSES",
    "Session",
    "close",
    "deserialize",
    "from_document",
    "new_session",
    "run_document",
    "serialize",
    "settle",
    "submit",
    "to_document",
]
