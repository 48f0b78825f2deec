"""World entities: labeled sketches, numbers, and text objects."""

from __future__ import annotations

from dataclasses import dataclass, field

SKETCH = "SKETCH"
NUMBER = "NUMBER"
TEXT = "TEXT"


@dataclass
class Entity:
    """A labeled world object.

    Position is the center of the entity's box. While attached to a
    parent the transform is parent-relative; static entities live in
    screen space and ignore the camera.
    """

    id: int
    kind: str = SKETCH
    noun_labels: list[str] = field(default_factory=list)
    adjective_labels: list[str] = field(default_factory=list)
    x: float = 0.0
    y: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    width: float = 40.0
    height: float = 40.0
    angle: float = 0.0
    angular_velocity: float = 0.0
    parent: int | None = None
    children: list[int] = field(default_factory=list)
    visible: bool = True
    static_flag: bool = False
    numeric_value: float = 0.0
    text_value: str = ""
    stroke_payload: object = None

    def add_noun(self, lemma: str) -> None:
        if lemma not in self.noun_labels:
            self.noun_labels.append(lemma)

    def remove_noun(self, lemma: str) -> None:
        if lemma in self.noun_labels:
            self.noun_labels.remove(lemma)

    def add_adjective(self, lemma: str) -> None:
        if lemma not in self.adjective_labels:
            self.adjective_labels.append(lemma)

    def remove_adjective(self, lemma: str) -> None:
        # drop any chain entry whose head word matches ("very fast" ~ "fast")
        self.adjective_labels[:] = [
            a for a in self.adjective_labels
            if a != lemma and a.split()[-1] != lemma
        ]

    def has_adjective(self, lemma: str) -> bool:
        return any(a == lemma or a.split()[-1] == lemma
                   for a in self.adjective_labels)


@dataclass
class Prototype:
    """A saved entity subtree; spawning yields fresh ids."""

    name: str
    root: dict            # recursive entity record (see World.save_prototype)
