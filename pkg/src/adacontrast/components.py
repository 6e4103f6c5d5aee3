"""Sentence components targeted by hard-negative generation.

The five kinds below are the only ones the toolkit knows about. Their
declaration order is load-bearing: importance weights are aligned to
per-component losses by this order everywhere.
"""

from __future__ import annotations

import enum

from .errors import InvalidInputError


class ComponentKind(enum.Enum):
    """A grammatical slot that a generated negative modifies."""

    VERB = "verb"
    ADJECTIVE_ADVERB = "adjective_adverb"
    SUBJECT = "subject"
    OBJECT = "object"
    NEGATED_PASSIVE = "negated_passive"

    @property
    def tag(self) -> str:
        """Lowercase tag used in files and on the command line."""
        return self.value

    @classmethod
    def from_tag(cls, tag: str) -> "ComponentKind":
        normalized = tag.strip().lower().replace("-", "_")
        # accept a few obvious spellings seen on the command line
        aliases = {
            "adj": cls.ADJECTIVE_ADVERB,
            "adjective": cls.ADJECTIVE_ADVERB,
            "adverb": cls.ADJECTIVE_ADVERB,
            "adjectiveadverb": cls.ADJECTIVE_ADVERB,
            "subj": cls.SUBJECT,
            "obj": cls.OBJECT,
            "passive": cls.NEGATED_PASSIVE,
            "negatedpassive": cls.NEGATED_PASSIVE,
        }
        if normalized in aliases:
            return aliases[normalized]
        for kind in cls:
            if kind.value == normalized:
                return kind
        raise InvalidInputError(f"unknown component tag: {tag!r}")


#: All components in their canonical (alignment) order.
ALL_COMPONENTS: tuple[ComponentKind, ...] = tuple(ComponentKind)


def ordered(components) -> list[ComponentKind]:
    """Return the given components sorted into canonical declaration order."""
    requested = set(components)
    return [c for c in ALL_COMPONENTS if c in requested]


def parse_component_list(spec: str) -> list[ComponentKind]:
    """Parse a comma-separated tag list (e.g. ``"verb,object"``) in canonical order."""
    parts = [p for p in (s.strip() for s in spec.split(",")) if p]
    if not parts:
        raise InvalidInputError("component list is empty")
    return ordered(ComponentKind.from_tag(p) for p in parts)
