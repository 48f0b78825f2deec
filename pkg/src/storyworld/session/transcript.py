"""Transcript: the editable, selectable record of speech input."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import RangeError


@dataclass
class Word:
    id: int
    text: str
    selected: bool = True
    segment: int = 0


@dataclass
class Transcript:
    words: list[Word] = field(default_factory=list)
    _next_id: int = 1
    _segment: int = 0

    def append(self, text: str) -> list[Word]:
        added = []
        for chunk in text.split():
            word = Word(id=self._next_id, text=chunk, segment=self._segment)
            self._next_id += 1
            self.words.append(word)
            added.append(word)
        self._segment += 1
        return added

    def clear(self) -> None:
        self.words.clear()

    def _check_range(self, start: int, end: int) -> None:
        if not (0 <= start <= end <= len(self.words)):
            raise RangeError(f"bad word range {start}:{end}")

    def select_words(self, start: int, end: int, on: bool) -> None:
        self._check_range(start, end)
        for w in self.words[start:end]:
            w.selected = on

    def edit_text(self, start: int, end: int, replacement: str) -> None:
        self._check_range(start, end)
        new_words = [Word(id=self._next_id + i, text=t, segment=self._segment)
                     for i, t in enumerate(replacement.split())]
        self._next_id += len(new_words)
        self._segment += 1
        self.words[start:end] = new_words

    def selected_words(self) -> list[Word]:
        return [w for w in self.words if w.selected]

    def selected_text(self) -> str:
        return " ".join(w.text for w in self.selected_words())

    def word_by_id(self, word_id: int) -> Word | None:
        for w in self.words:
            if w.id == word_id:
                return w
        return None

    def state(self) -> list[dict]:
        return [{"id": w.id, "text": w.text, "selected": w.selected}
                for w in self.words]
