"""Text and toy-video embeddings behind a backend-agnostic interface.

The deterministic toy encoder hashes each whitespace token into a seeded
pseudo-random unit vector, so every embedding is a pure function of
(text, seed, dim) with zero training dependency. Remote encoders speak the
same request/response records as the generation backends and plug into the
same call sites (hardness validation, CLI).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .errors import BackendError, InvalidInputError


# -- embedding containers -------------------------------------------------


@dataclass
class TokenMatrix:
    """Word-level embeddings: one row per token."""

    rows: np.ndarray  # (tok, dim)
    token_strings: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=np.float64)
        if self.rows.ndim != 2 or self.rows.shape[0] < 1:
            raise InvalidInputError("TokenMatrix needs at least one row")
        if not np.all(np.isfinite(self.rows)):
            raise InvalidInputError("TokenMatrix entries must be finite")

    @property
    def tok(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


@dataclass
class SentenceVector:
    """Sentence-level embedding."""

    v: np.ndarray  # (dim,)

    def __post_init__(self):
        self.v = np.asarray(self.v, dtype=np.float64)
        if self.v.ndim != 1:
            raise InvalidInputError("SentenceVector must be one-dimensional")
        if not np.all(np.isfinite(self.v)):
            raise InvalidInputError("SentenceVector entries must be finite")

    @property
    def dim(self) -> int:
        return self.v.shape[0]


@dataclass
class FrameMatrix:
    """Frame-level video embeddings: one row per frame."""

    rows: np.ndarray  # (frames, dim)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=np.float64)
        if self.rows.ndim != 2 or self.rows.shape[0] < 1:
            raise InvalidInputError("FrameMatrix needs at least one frame")
        if not np.all(np.isfinite(self.rows)):
            raise InvalidInputError("FrameMatrix entries must be finite")

    @property
    def frames(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


class EncoderBackend(Protocol):
    """Anything that can embed text at token and sentence level."""

    def embed_tokens(self, text: str) -> TokenMatrix: ...

    def embed_sentence(self, text: str) -> SentenceVector: ...


# -- deterministic toy encoder --------------------------------------------


class ToyEncoder:
    """Hash-based encoder: reproducible embeddings without any model.

    Mixing function (documented contract): a token's vector is drawn from
    ``numpy.random.default_rng(blake2b(f"{seed}:{token}"))`` as ``dim``
    standard normals, normalized to unit length. Identical tokens therefore
    always share a row, and everything is a pure function of
    (text, seed, dim).
    """

    def __init__(self, dim: int = 16, seed: int = 0):
        if dim < 1:
            raise InvalidInputError("dim must be >= 1")
        self.dim = int(dim)
        self.seed = int(seed)
        self._token_cache: dict[str, np.ndarray] = {}

    def _token_vector(self, token: str) -> np.ndarray:
        cached = self._token_cache.get(token)
        if cached is not None:
            return cached
        digest = hashlib.blake2b(
            f"{self.seed}:{token}".encode("utf-8"), digest_size=32
        ).digest()
        rng = np.random.default_rng(int.from_bytes(digest, "little"))
        v = rng.standard_normal(self.dim)
        v /= np.linalg.norm(v)
        self._token_cache[token] = v
        return v

    def embed_tokens(self, text: str) -> TokenMatrix:
        tokens = text.split()
        if not tokens:
            raise InvalidInputError("cannot embed empty text")
        rows = np.stack([self._token_vector(t) for t in tokens])
        return TokenMatrix(rows=rows, token_strings=tokens)

    def embed_sentence(self, text: str) -> SentenceVector:
        matrix = self.embed_tokens(text)
        mean = matrix.rows.mean(axis=0)
        n = np.linalg.norm(mean)
        if n < 1e-12:
            raise InvalidInputError("degenerate sentence embedding (zero mean)")
        return SentenceVector(v=mean / n)

    def embed_video(self, slots: list[str], noise_scale: float, seed: int) -> FrameMatrix:
        """Synthetic video: one frame per slot text.

        Each frame is the unit-normalized sum of the slot's token vectors
        plus seeded Gaussian noise of scale ``noise_scale``.
        """
        if not slots:
            raise InvalidInputError("slots must be non-empty")
        if noise_scale < 0:
            raise InvalidInputError("noise_scale must be >= 0")
        bases = []
        for slot in slots:
            total = self.embed_tokens(slot).rows.sum(axis=0)
            n = np.linalg.norm(total)
            if n < 1e-12:
                raise InvalidInputError(f"degenerate slot embedding: {slot!r}")
            bases.append(total / n)
        base = np.stack(bases)
        rng = np.random.default_rng(seed)
        noise = noise_scale * rng.standard_normal(base.shape)
        return FrameMatrix(rows=base + noise)


# -- remote encoder (same request/response shape as generation backends) ---


class RemoteEncoder:
    """HTTP encoder backend; ``transport`` is injectable for tests.

    Requests are JSON records ``{"text": ..., "level": "token"|"sentence"}``
    and responses ``{"vectors": [[...], ...]}`` (a single row for sentence
    level). Any transport failure or malformed response surfaces as
    :class:`BackendError`.
    """

    def __init__(self, endpoint: str, api_key: str | None = None, transport=None):
        self.endpoint = endpoint
        self.api_key = api_key
        if transport is None:
            transport = _http_post_json
        self._transport = transport

    def _request(self, text: str, level: str) -> np.ndarray:
        if not text.split():
            raise InvalidInputError("cannot embed empty text")
        try:
            response = self._transport(
                self.endpoint,
                {"text": text, "level": level},
                self.api_key,
            )
            vectors = np.asarray(response["vectors"], dtype=np.float64)
        except InvalidInputError:
            raise
        except Exception as exc:
            raise BackendError(f"encoder backend failed: {exc}") from exc
        if vectors.ndim != 2:
            raise BackendError("encoder backend returned malformed vectors")
        return vectors

    def embed_tokens(self, text: str) -> TokenMatrix:
        return TokenMatrix(rows=self._request(text, "token"), token_strings=text.split())

    def embed_sentence(self, text: str) -> SentenceVector:
        vectors = self._request(text, "sentence")
        return SentenceVector(v=vectors[0])


def _http_post_json(endpoint: str, payload: dict, api_key: str | None):
    import requests

    headers = {"Content-Type": "application/json"}
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"
    reply = requests.post(endpoint, json=payload, headers=headers, timeout=60)
    reply.raise_for_status()
    return reply.json()


# -- optional sentence-vector cache ----------------------------------------


class EmbeddingCache:
    """Line-delimited cache of sentence vectors keyed by (text, dim, seed)."""

    def __init__(self):
        self._entries: dict[tuple[str, int, int], np.ndarray] = {}

    def put(self, text: str, dim: int, seed: int, vector: np.ndarray) -> None:
        self._entries[(text, dim, seed)] = np.asarray(vector, dtype=np.float64)

    def get(self, text: str, dim: int, seed: int) -> np.ndarray | None:
        return self._entries.get((text, dim, seed))

    def __len__(self) -> int:
        return len(self._entries)

    def save(self, path) -> int:
        with open(path, "w", encoding="utf-8") as handle:
            for (text, dim, seed), vector in self._entries.items():
                record = {"text": text, "dim": dim, "seed": seed, "vector": vector.tolist()}
                handle.write(json.dumps(record) + "\n")
        return len(self._entries)

    @classmethod
    def load(cls, path) -> "EmbeddingCache":
        cache = cls()
        with open(path, "r", encoding="utf-8") as handle:
            for line in handle:
                if not line.strip():
                    continue
                record = json.loads(line)
                cache.put(record["text"], record["dim"], record["seed"], record["vector"])
        return cache
