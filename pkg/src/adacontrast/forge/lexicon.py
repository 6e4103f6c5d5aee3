"""Rule-based offline substitute for the LLM generator.

A lexicon maps surface words to a grammatical category and a fixed
replacement (verbs also carry a past participle). The fallback transform
swaps the first matching token, or rebuilds the sentence as a negated
passive; when a sentence has no matching token it returns the anchor with
an explicit `` [unchanged]`` suffix so callers can detect non-applicability
instead of silently passing the anchor through.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..components import ComponentKind
from ..errors import ConfigurationError, InvalidInputError

UNCHANGED_MARKER = " [unchanged]"

CATEGORIES = ("verb", "adj", "subj", "obj")

_COMPONENT_CATEGORY = {
    ComponentKind.VERB: "verb",
    ComponentKind.ADJECTIVE_ADVERB: "adj",
    ComponentKind.SUBJECT: "subj",
    ComponentKind.OBJECT: "obj",
}

_WORD = re.compile(r"\w+")
_ARTICLES = {"the", "a", "an"}


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    category: str
    replacement: str
    participle: str | None = None


class Lexicon:
    """Surface-keyed lookup table; surfaces are matched case-insensitively."""

    def __init__(self, entries: list[LexiconEntry]):
        if not entries:
            raise ConfigurationError("lexicon is empty")
        self._by_surface: dict[str, LexiconEntry] = {}
        for entry in entries:
            if entry.category not in CATEGORIES:
                raise ConfigurationError(
                    f"lexicon entry {entry.surface!r} has unknown category {entry.category!r}"
                )
            self._by_surface[entry.surface.lower()] = entry

    def lookup(self, token: str) -> LexiconEntry | None:
        return self._by_surface.get(token.lower())

    def surfaces(self, category: str) -> list[str]:
        return [e.surface for e in self._by_surface.values() if e.category == category]

    def __len__(self) -> int:
        return len(self._by_surface)

    @classmethod
    def from_records(cls, records: list[dict]) -> "Lexicon":
        entries = []
        for record in records:
            entries.append(
                LexiconEntry(
                    surface=record["surface"],
                    category=record["category"],
                    replacement=record["replacement"],
                    participle=record.get("participle"),
                )
            )
        return cls(entries)

    @classmethod
    def from_file(cls, path) -> "Lexicon":
        try:
            with open(path, "r", encoding="utf-8") as handle:
                records = [json.loads(line) for line in handle if line.strip()]
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot load lexicon from {path}: {exc}") from exc
        return cls.from_records(records)


@lru_cache(maxsize=1)
def demo_lexicon() -> Lexicon:
    """The lexicon shipped with the package (used by tests and the toy bench)."""
    text = resources.files("adacontrast.data").joinpath("demo_lexicon.jsonl").read_text(
        encoding="utf-8"
    )
    return Lexicon.from_records([json.loads(line) for line in text.splitlines() if line.strip()])


def _match_case(original: str, replacement: str) -> str:
    if original[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


def fallback_transform(anchor: str, component: ComponentKind, lexicon: Lexicon) -> str:
    """Deterministic single-token (or passive-negation) rewrite of `anchor`.

    Pure function of its arguments. Returns ``anchor + " [unchanged]"``
    when the sentence has no token the rule applies to.
    """
    if not isinstance(lexicon, Lexicon) or len(lexicon) == 0:
        raise ConfigurationError("lexicon not loaded")
    if anchor == "":
        raise InvalidInputError("anchor text is empty")

    if component is ComponentKind.NEGATED_PASSIVE:
        rebuilt = _passive_rewrite(anchor, lexicon, negated=True)
        return rebuilt if rebuilt is not None else anchor + UNCHANGED_MARKER

    category = _COMPONENT_CATEGORY[component]
    for match in _WORD.finditer(anchor):
        entry = lexicon.lookup(match.group())
        if entry is not None and entry.category == category:
            replacement = _match_case(match.group(), entry.replacement)
            return anchor[: match.start()] + replacement + anchor[match.end() :]
    return anchor + UNCHANGED_MARKER


def fallback_positive(anchor: str, lexicon: Lexicon) -> str:
    """Deterministic voice-altered restructuring (passive, not negated)."""
    if not isinstance(lexicon, Lexicon) or len(lexicon) == 0:
        raise ConfigurationError("lexicon not loaded")
    if anchor == "":
        raise InvalidInputError("anchor text is empty")
    rebuilt = _passive_rewrite(anchor, lexicon, negated=False)
    return rebuilt if rebuilt is not None else anchor + UNCHANGED_MARKER


def _passive_rewrite(anchor: str, lexicon: Lexicon, negated: bool) -> str | None:
    """subject-verb-object -> "<object> is/are (not|being) <participle> by <subject>"."""
    words = list(_WORD.finditer(anchor))
    subject_idx = verb_idx = object_idx = None
    for i, match in enumerate(words):
        entry = lexicon.lookup(match.group())
        if entry is None:
            continue
        if subject_idx is None and entry.category == "subj":
            subject_idx = i
        elif subject_idx is not None and verb_idx is None and entry.category == "verb":
            verb_idx = i
        elif verb_idx is not None and object_idx is None and entry.category == "obj":
            object_idx = i
            break
    if subject_idx is None or verb_idx is None or object_idx is None:
        return None
    participle = lexicon.lookup(words[verb_idx].group()).participle
    if not participle:
        return None

    subject_phrase = anchor[words[0].start() : words[verb_idx].start()].strip()
    object_phrase = anchor[words[verb_idx].end() : words[object_idx].end()].strip()
    if not subject_phrase or not object_phrase:
        return None

    first_subject_word = subject_phrase.split()[0]
    if first_subject_word.lower() in _ARTICLES:
        subject_phrase = first_subject_word.lower() + subject_phrase[len(first_subject_word) :]
    object_phrase = object_phrase[:1].upper() + object_phrase[1:]

    # crude but deterministic plural agreement on the object head word
    be = "are" if words[object_idx].group().lower().endswith("s") else "is"
    mode = "not" if negated else "being"
    return f"{object_phrase} {be} {mode} {participle} by {subject_phrase}."
