"""Generic semantic-role graph (S2): the engine's lingua franca.

Every parsed command becomes a tree of S2Elements. Node types form a
closed set; children live in a key->list map whose keys mirror the
node types. Values are tagged lists (a node can carry an entity id, a
type name, a number, a flag, or text).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..grammar.tokens import Token

# closed node-type set
CMD_LIST = "CMD_LIST"
ACTION = "ACTION"
AGENT = "AGENT"
DIRECT_OBJECT = "DIRECT_OBJECT"
OBJECT = "OBJECT"
INDIRECT_OBJECT = "INDIRECT_OBJECT"
PREPOSITION = "PREPOSITION"
TRIGGER_RESPONSE = "TRIGGER_RESPONSE"
TRIGGER = "TRIGGER"
RESPONSE = "RESPONSE"
SEQUENCE_SIMULTANEOUS = "SEQUENCE_SIMULTANEOUS"
SEQUENCE_THEN = "SEQUENCE_THEN"
PROPERTY = "PROPERTY"
PLURAL = "PLURAL"
COUNT = "COUNT"
SPECIFIC_OR_UNSPECIFIC = "SPECIFIC_OR_UNSPECIFIC"
TIME = "TIME"
COREFERENCE = "COREFERENCE"

NOUN_ROLES = (AGENT, DIRECT_OBJECT, INDIRECT_OBJECT, OBJECT)
ACTION_KEYS = (ACTION, TRIGGER, RESPONSE, SEQUENCE_SIMULTANEOUS, SEQUENCE_THEN)

# value kinds
V_THING_INSTANCE = "THING_INSTANCE"
V_THING_TYPE = "THING_TYPE"
V_NUMERIC = "NUMERIC"
V_FLAG = "FLAG"
V_TEXT = "TEXT"

# annotations
MUST_FILL_IN_AGENT = "MUST_FILL_IN_AGENT"
UNRESOLVED_PRONOUN = "UNRESOLVED_PRONOUN"
PRONOUN = "PRONOUN"
DEICTIC = "DEICTIC"
VOCATIVE = "VOCATIVE"
RESERVED_SELF = "RESERVED_SELF"
RESERVED_VIEW = "RESERVED_VIEW"
RESERVED_THING = "RESERVED_THING"

ALL_COUNT = -1.0     # COUNT sentinel for "all"

_ids = itertools.count(1000)


def fresh_id() -> int:
    return next(_ids)


def reset_ids(start: int = 1000) -> None:
    """Reset the element id counter (deterministic dumps in tests/CLI)."""
    global _ids
    _ids = itertools.count(start)


@dataclass
class S2Element:
    node_type: str
    label: str = ""
    tag: str = ""
    type_display: str = ""
    kind: str = ""
    key: str = ""
    value: dict[str, list] = field(default_factory=dict)
    children: dict[str, list["S2Element"]] = field(default_factory=dict)
    parent: "S2Element | None" = field(default=None, repr=False)
    refers_to: "S2Element | None" = field(default=None, repr=False)
    annotations: set[str] = field(default_factory=set)
    token: Token | None = None
    feedback_ref: object = None
    elem_id: int = field(default_factory=fresh_id)

    # -- structure helpers ----------------------------------------------

    def add(self, key: str, child: "S2Element") -> "S2Element":
        child.parent = self
        self.children.setdefault(key, []).append(child)
        return child

    def get(self, key: str) -> list["S2Element"]:
        return self.children.get(key, [])

    def first(self, key: str) -> "S2Element | None":
        lst = self.children.get(key)
        return lst[0] if lst else None

    def walk(self):
        yield self
        for lst in self.children.values():
            for child in lst:
                yield from child.walk()

    def idx(self) -> int:
        if self.parent is None:
            return 0
        for lst in self.parent.children.values():
            if self in lst:
                return lst.index(self)
        return 0

    def clone(self) -> "S2Element":
        """Deep copy with fresh ids; keeps label/tag/kind/key and values."""
        dup = S2Element(
            node_type=self.node_type, label=self.label, tag=self.tag,
            type_display=self.type_display, kind=self.kind, key=self.key,
            value={k: list(v) for k, v in self.value.items()},
            annotations=set(self.annotations), token=self.token,
        )
        for key, lst in self.children.items():
            for child in lst:
                dup.add(key, child.clone())
        return dup

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "node_type": self.node_type, "label": self.label, "tag": self.tag,
            "type": self.type_display, "kind": self.kind, "key": self.key,
            "value": {k: list(v) for k, v in self.value.items()},
            "annotations": sorted(self.annotations),
            "id": self.elem_id,
            "children": {key: [c.to_dict() for c in lst]
                         for key, lst in self.children.items()},
        }
        if self.refers_to is not None:
            out["refers_to"] = self.refers_to.elem_id
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "S2Element":
        index: dict[int, "S2Element"] = {}
        pending: list[tuple["S2Element", int]] = []

        def build(rec: dict) -> "S2Element":
            el = cls(node_type=rec["node_type"], label=rec["label"],
                     tag=rec["tag"], type_display=rec["type"],
                     kind=rec["kind"], key=rec["key"],
                     value={k: list(v) for k, v in rec["value"].items()},
                     annotations=set(rec["annotations"]),
                     elem_id=rec["id"])
            index[el.elem_id] = el
            if "refers_to" in rec:
                pending.append((el, rec["refers_to"]))
            for key, lst in rec["children"].items():
                for child_rec in lst:
                    el.add(key, build(child_rec))
            return el

        root = build(data)
        for el, target in pending:
            el.refers_to = index.get(target)
        return root

    # -- noun-view helpers ------------------------------------------------

    def is_noun(self) -> bool:
        return self.node_type in NOUN_ROLES

    def is_action(self) -> bool:
        return self.node_type in (ACTION, TRIGGER, RESPONSE,
                                  SEQUENCE_SIMULTANEOUS, SEQUENCE_THEN)

    def noun_spec(self) -> "NounSpec":
        assert self.is_noun(), self.node_type
        sou = self.first(SPECIFIC_OR_UNSPECIFIC)
        count_el = self.first(COUNT)
        plural_el = self.first(PLURAL)
        adjectives = []
        constraint = None
        for prop in self.get(PROPERTY):
            if prop.kind == "HIERARCHY":
                constraint = (prop.label, prop.value.get(V_THING_TYPE, [""])[0])
            else:
                negated = prop.value.get(V_FLAG, [True])[0] is False
                adjectives.append((prop.value.get(V_TEXT, [""])[0], negated))
        reserved = None
        for ann, name in ((RESERVED_SELF, "SELF"), (RESERVED_VIEW, "VIEW"),
                          (RESERVED_THING, "THING")):
            if ann in self.annotations:
                reserved = name
        return NounSpec(
            lemma=self.label,
            adjectives=adjectives,
            specific=(sou.kind == "SPECIFIC") if sou else True,
            determiner=sou.label if sou else "",
            count=count_el.value[V_NUMERIC][0] if count_el else 1.0,
            plural=bool(plural_el.value[V_FLAG][0]) if plural_el else False,
            deictic=DEICTIC in self.annotations,
            reserved=reserved,
            numeric_filter=(self.value.get(V_NUMERIC, [None])[0]),
            hierarchy=constraint,
        )


@dataclass
class NounSpec:
    """Flat view of a noun-like element for binding."""

    lemma: str
    adjectives: list[tuple[str, bool]]   # (lemma, negated)
    specific: bool
    determiner: str
    count: float
    plural: bool
    deictic: bool
    reserved: str | None
    numeric_filter: float | None = None
    hierarchy: tuple[str, str] | None = None   # (preposition, ancestor lemma)

    @property
    def wants_all(self) -> bool:
        return self.count == ALL_COUNT

    @property
    def positive_adjectives(self) -> list[str]:
        return [a for a, neg in self.adjectives if not neg]
