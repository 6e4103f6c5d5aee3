"""One-shot prompt construction for component-targeted sample generation.

Each prompt is four messages: a system instruction, one exemplar user /
assistant exchange, and the query carrying the anchor verbatim. The
per-component instruction and exemplar pair live in a catalog shipped as
package data so they can be overridden by file without touching code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..components import ComponentKind
from ..errors import ConfigurationError, InvalidInputError

POSITIVE_KEY = "positive"


@dataclass(frozen=True)
class PromptMessages:
    """The fixed one-shot message set: system, user, assistant, user."""

    system: str
    exemplar_user: str
    exemplar_assistant: str
    query_user: str

    def to_messages(self) -> list[dict]:
        """Chat-format messages in the required role order."""
        return [
            {"role": "system", "content": self.system},
            {"role": "user", "content": self.exemplar_user},
            {"role": "assistant", "content": self.exemplar_assistant},
            {"role": "user", "content": self.query_user},
        ]


class PromptCatalog:
    """Per-component prompt templates plus the voice-alteration template."""

    def __init__(self, entries: dict[str, dict]):
        for key in [c.tag for c in ComponentKind] + [POSITIVE_KEY]:
            if key not in entries:
                raise ConfigurationError(f"prompt catalog missing entry for {key!r}")
            entry = entries[key]
            for field in ("system", "exemplar_user", "exemplar_assistant"):
                if field not in entry or not isinstance(entry[field], str):
                    raise ConfigurationError(
                        f"prompt catalog entry {key!r} missing field {field!r}"
                    )
        self._entries = entries

    @classmethod
    def from_records(cls, records: list[dict]) -> "PromptCatalog":
        return cls({record["component"]: record for record in records})

    @classmethod
    def from_file(cls, path) -> "PromptCatalog":
        with open(path, "r", encoding="utf-8") as handle:
            records = [json.loads(line) for line in handle if line.strip()]
        return cls.from_records(records)

    def entry(self, key: str) -> dict:
        return self._entries[key]


@lru_cache(maxsize=1)
def default_catalog() -> PromptCatalog:
    text = resources.files("adacontrast.data").joinpath("prompt_catalog.jsonl").read_text(
        encoding="utf-8"
    )
    return PromptCatalog.from_records(
        [json.loads(line) for line in text.splitlines() if line.strip()]
    )


def build_negative_prompt(
    anchor: str, component: ComponentKind, catalog: PromptCatalog | None = None
) -> PromptMessages:
    """One-shot prompt instructing a change to one sentence component."""
    if anchor == "":
        raise InvalidInputError("anchor text is empty")
    entry = (catalog or default_catalog()).entry(component.tag)
    return PromptMessages(
        system=entry["system"],
        exemplar_user=entry["exemplar_user"],
        exemplar_assistant=entry["exemplar_assistant"],
        query_user=anchor,
    )


def build_positive_prompt(anchor: str, catalog: PromptCatalog | None = None) -> PromptMessages:
    """One-shot prompt instructing a voice-altered restructuring."""
    if anchor == "":
        raise InvalidInputError("anchor text is empty")
    entry = (catalog or default_catalog()).entry(POSITIVE_KEY)
    return PromptMessages(
        system=entry["system"],
        exemplar_user=entry["exemplar_user"],
        exemplar_assistant=entry["exemplar_assistant"],
        query_user=anchor,
    )
