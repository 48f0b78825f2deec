"""Machine-checkable production rules for S2 graphs."""

from __future__ import annotations

from ..errors import MalformedParse
from . import s2
from .s2 import S2Element

_ACTION_CHILDREN = {s2.AGENT, s2.DIRECT_OBJECT, s2.INDIRECT_OBJECT, s2.OBJECT,
                    s2.PREPOSITION, s2.PROPERTY, s2.SEQUENCE_SIMULTANEOUS,
                    s2.SEQUENCE_THEN, s2.TIME, s2.COREFERENCE,
                    s2.COUNT}          # COUNT on an action is a finite loop
_NOUN_CHILDREN = {s2.SPECIFIC_OR_UNSPECIFIC, s2.COUNT, s2.PLURAL, s2.PROPERTY}

_ALLOWED = {
    s2.CMD_LIST: {s2.CMD_LIST, s2.ACTION, s2.TRIGGER_RESPONSE},
    s2.ACTION: _ACTION_CHILDREN,
    s2.TRIGGER: _ACTION_CHILDREN,
    s2.RESPONSE: _ACTION_CHILDREN,
    s2.SEQUENCE_SIMULTANEOUS: _ACTION_CHILDREN,
    s2.SEQUENCE_THEN: _ACTION_CHILDREN,
    s2.TRIGGER_RESPONSE: {s2.TRIGGER, s2.RESPONSE},
    s2.PREPOSITION: {s2.OBJECT},
    s2.AGENT: _NOUN_CHILDREN,
    s2.DIRECT_OBJECT: _NOUN_CHILDREN,
    s2.INDIRECT_OBJECT: _NOUN_CHILDREN,
    s2.OBJECT: _NOUN_CHILDREN,
    s2.PROPERTY: {s2.PROPERTY},
    s2.TIME: {s2.PROPERTY},
    s2.SPECIFIC_OR_UNSPECIFIC: set(),
    s2.COUNT: set(),
    s2.PLURAL: set(),
    s2.COREFERENCE: set(),
}


def validate(root: S2Element, path: str = "root") -> None:
    """Raise MalformedParse when the graph breaks a production rule."""
    allowed = _ALLOWED.get(root.node_type)
    if allowed is None:
        raise MalformedParse(f"{path}: unknown node type {root.node_type!r}")
    for key, children in root.children.items():
        if key not in allowed:
            raise MalformedParse(
                f"{path}: {root.node_type} may not own {key!r} children")
        for i, child in enumerate(children):
            if child.parent is not root:
                raise MalformedParse(f"{path}.{key}[{i}]: broken parent link")
            validate(child, f"{path}.{key}[{i}]")
    if root.node_type == s2.TRIGGER_RESPONSE:
        if len(root.get(s2.TRIGGER)) != 1:
            raise MalformedParse(f"{path}: needs exactly one TRIGGER")
        if not root.get(s2.RESPONSE):
            raise MalformedParse(f"{path}: needs at least one RESPONSE")
