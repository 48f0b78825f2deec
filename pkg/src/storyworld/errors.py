"""Engine error hierarchy.

Parsing and binding errors are usually surfaced on the staged-command
diagram rather than raised to the user; execution errors abort the
offending operation only.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""


class UnsupportedGrammar(EngineError):
    """Input sentence uses a construction outside the supported grammar."""

    def __init__(self, position: int, reason: str):
        super().__init__(f"unsupported grammar at token {position}: {reason}")
        self.position = position
        self.reason = reason


class MalformedParse(EngineError):
    """Parse tree violates a supported production."""


class UnknownVerb(EngineError):
    def __init__(self, lemma: str, suggestions: list[str] | None = None):
        super().__init__(f"unknown verb: {lemma!r}")
        self.lemma = lemma
        self.suggestions = suggestions or []


class UnresolvedPronoun(EngineError):
    """A pronoun has no antecedent; shown as an empty slot, not fatal."""


class UnknownEntity(EngineError):
    pass


class UnknownPrototype(EngineError):
    pass


class CycleError(EngineError):
    """Attach would create a cycle in the entity forest."""


class NoMatch(EngineError):
    """A specific noun phrase matched zero entities."""


class InsufficientCount(EngineError):
    def __init__(self, wanted: int, found: int):
        super().__init__(f"wanted {wanted} entities, found {found}")
        self.wanted = wanted
        self.found = found


class NoSelection(EngineError):
    """Deictic labeling requires at least one touched entity."""


class WordNotLabelable(EngineError):
    """Only nouns and adjectives can be linked as labels."""


class SlotImmutable(EngineError):
    """Binding slots cannot change after the command is confirmed."""


class MissingRole(EngineError):
    """A verb was invoked without a required semantic role."""


class MisplacedEventVerb(EngineError):
    """Event verbs (press, collide with, ...) are only valid in triggers."""


class MalformedTrigger(EngineError):
    pass


class UnknownRule(EngineError):
    pass


class UnknownScript(EngineError):
    pass


class RecursionLimit(EngineError):
    """User-defined verb expansion exceeded the depth cap."""


class RangeError(EngineError):
    pass


class UnknownEntry(EngineError):
    pass


class ScenarioError(EngineError):
    """Scenario or trace file is malformed or has a bad schema version."""
