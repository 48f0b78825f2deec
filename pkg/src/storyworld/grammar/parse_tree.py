"""Dependency-style parse tree produced by the sentence parser."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .tokens import Token


class Relation(str, Enum):
    ROOT = "ROOT"
    SUBJECT = "SUBJECT"
    DOBJ = "DOBJ"
    IOBJ = "IOBJ"
    POBJ = "POBJ"
    PREP = "PREP"
    ADVMOD = "ADVMOD"
    AMOD = "AMOD"
    NUMMOD = "NUMMOD"
    DET = "DET"
    NEG = "NEG"
    CONJ = "CONJ"
    SEQ = "SEQ"
    CONDITION = "CONDITION"
    TIME = "TIME"


@dataclass
class ParseNode:
    token: Token
    relation: Relation
    children: list["ParseNode"] = field(default_factory=list)
    # extra parser facts the token alone cannot carry
    flags: set[str] = field(default_factory=set)

    def child(self, relation: Relation) -> "ParseNode | None":
        for c in self.children:
            if c.relation == relation:
                return c
        return None

    def children_of(self, relation: Relation) -> list["ParseNode"]:
        return [c for c in self.children if c.relation == relation]

    def add(self, node: "ParseNode") -> "ParseNode":
        self.children.append(node)
        return node

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


def dump_tree(node: ParseNode, indent: int = 0) -> str:
    """Stable indented rendering used by `parse --dump-tree` goldens."""
    flag_suffix = f" {{{','.join(sorted(node.flags))}}}" if node.flags else ""
    line = "  " * indent + (
        f"{node.relation.value}: {node.token.lemma} "
        f"[{node.token.category.value}]{flag_suffix}"
    )
    parts = [line]
    for child in node.children:
        parts.append(dump_tree(child, indent + 1))
    return "\n".join(parts)
