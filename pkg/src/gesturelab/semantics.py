"""Word-phrase extraction, phrase embeddings, and phrase filtering.

Chunking is regex-over-POS-tags on the Universal tag set, longest-match
left to right, scanned independently per phrase kind so a word can sit in
an NP and an SVO but never in two NPs:

    NP:  (DET)? (ADJ)* NOUN+        (NOUN also admits PROPN)
    PP:  ADP NP
    VP:  (AUX)* VERB (PART)?
    SVO: NP VP NP, within one sentence

POS tagging is an input. ``rule_tag`` is a tiny closed-class fallback
(word lists for determiners, prepositions, auxiliaries, ...; everything
else defaults to NOUN) meant for fixtures, not real text.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from gesturelab.errors import ConfigError, SchemaError
from gesturelab.ingest import EmbeddingTable, TranscriptWord

PHRASE_KINDS = ("NP", "VP", "PP", "SVO")

_NOUN_TAGS = {"NOUN", "PROPN"}
_SENTENCE_FINAL = (".", "!", "?")


@dataclass(frozen=True)
class PhraseSpan:
    """A contiguous word phrase with its time range and embedding."""

    phrase_id: int
    kind: str
    word_range: tuple[int, int]  # inclusive word indices
    text: str
    start: float
    end: float
    occurrence_count: int = 1
    embedding: np.ndarray | None = None

    @property
    def in_vocabulary(self) -> bool:
        return self.embedding is not None


def _match_np(tags: Sequence[str], i: int, end: int) -> int:
    """Length of the longest NP starting at i (0 if none)."""
    j = i
    if j < end and tags[j] == "DET":
        j += 1
    while j < end and tags[j] == "ADJ":
        j += 1
    nouns = 0
    while j < end and tags[j] in _NOUN_TAGS:
        j += 1
        nouns += 1
    return j - i if nouns else 0


def _match_vp(tags: Sequence[str], i: int, end: int) -> int:
    j = i
    while j < end and tags[j] == "AUX":
        j += 1
    if j < end and tags[j] == "VERB":
        j += 1
    else:
        return 0
    if j < end and tags[j] == "PART":
        j += 1
    return j - i


def _match_pp(tags: Sequence[str], i: int, end: int) -> int:
    if tags[i] != "ADP":
        return 0
    np_len = _match_np(tags, i + 1, end)
    return 1 + np_len if np_len else 0


def _match_svo(tags: Sequence[str], i: int, end: int) -> int:
    a = _match_np(tags, i, end)
    if not a:
        return 0
    b = _match_vp(tags, i + a, end)
    if not b:
        return 0
    c = _match_np(tags, i + a + b, end)
    return a + b + c if c else 0


_MATCHERS = {"NP": _match_np, "VP": _match_vp, "PP": _match_pp, "SVO": _match_svo}


def sentence_spans(words: Sequence[TranscriptWord]) -> list[tuple[int, int]]:
    """Half-open sentence ranges; a word ending in . ! ? closes a sentence."""
    spans = []
    start = 0
    for i, w in enumerate(words):
        if w.text.endswith(_SENTENCE_FINAL):
            spans.append((start, i + 1))
            start = i + 1
    if start < len(words):
        spans.append((start, len(words)))
    return spans


def _span_from_range(
    phrase_id: int, kind: str, lo: int, hi: int, words: Sequence[TranscriptWord]
) -> PhraseSpan:
    return PhraseSpan(
        phrase_id=phrase_id,
        kind=kind,
        word_range=(lo, hi),
        text=" ".join(w.text for w in words[lo : hi + 1]),
        start=words[lo].start,
        end=words[hi].end,
    )


def extract_phrases(
    words: Sequence[TranscriptWord],
    annotations: Iterable[dict] | None = None,
) -> list[PhraseSpan]:
    """Extract NP/VP/PP/SVO spans, or pass through supplied annotations.

    Every word must carry a POS tag unless ``annotations`` (a list of
    ``{"kind": "NP", "words": [first, last]}`` objects) bypasses the
    chunker. Occurrence counts match on exact lowercased phrase text.
    """
    if annotations is not None:
        spans = []
        for i, ann in enumerate(annotations):
            kind = ann.get("kind")
            if kind not in PHRASE_KINDS:
                raise SchemaError(f"annotation {i}: unknown phrase kind {kind!r}")
            rng = ann.get("words")
            if not isinstance(rng, (list, tuple)) or len(rng) < 1:
                raise SchemaError(f"annotation {i}: bad word range {rng!r}")
            lo, hi = int(rng[0]), int(rng[-1])
            if not (0 <= lo <= hi < len(words)):
                raise SchemaError(f"annotation {i}: range [{lo}, {hi}] out of bounds")
            spans.append(_span_from_range(i, kind, lo, hi, words))
        return _count_occurrences(spans)

    if any(w.pos_tag is None for w in words):
        raise ConfigError(
            "transcript words are missing POS tags and no phrase annotations "
            "were supplied"
        )
    tags = [w.pos_tag for w in words]
    spans = []
    for kind in PHRASE_KINDS:
        matcher = _MATCHERS[kind]
        for s_lo, s_hi in sentence_spans(words):
            i = s_lo
            while i < s_hi:
                length = matcher(tags, i, s_hi)
                if length:
                    spans.append(_span_from_range(len(spans), kind, i, i + length - 1, words))
                    i += length
                else:
                    i += 1
    spans.sort(key=lambda s: (s.word_range[0], s.word_range[1], PHRASE_KINDS.index(s.kind)))
    spans = [replace(s, phrase_id=i) for i, s in enumerate(spans)]
    return _count_occurrences(spans)


def _count_occurrences(spans: list[PhraseSpan]) -> list[PhraseSpan]:
    counts = Counter(s.text.lower() for s in spans)
    return [replace(s, occurrence_count=counts[s.text.lower()]) for s in spans]


def phrase_embedding(span: PhraseSpan, table: EmbeddingTable) -> np.ndarray | None:
    """Mean embedding of the phrase's in-vocabulary lowercased tokens.

    Returns None when every token is out of vocabulary; such phrases are
    excluded from projection rather than failing.
    """
    vectors = []
    for token in span.text.lower().split():
        vec = table.get(token)
        if vec is not None:
            vectors.append(vec)
    if not vectors:
        return None
    return np.mean(vectors, axis=0)


def embed_phrases(
    spans: Sequence[PhraseSpan], table: EmbeddingTable
) -> list[PhraseSpan]:
    return [replace(s, embedding=phrase_embedding(s, table)) for s in spans]


def filter_phrases(
    spans: Sequence[PhraseSpan],
    time_range: tuple[float, float] | None = None,
    min_occurrence: int | None = None,
    kinds: set[str] | None = None,
) -> list[PhraseSpan]:
    """Conjunction of the supplied predicates; no predicates, no change.

    Time-range membership is judged by the span's start time, mirroring the
    relation view's range slider; ``kinds`` mirrors its legend toggles.
    """
    if time_range is not None and time_range[0] > time_range[1]:
        raise ConfigError(f"invalid time range {time_range}")
    out = []
    for s in spans:
        if time_range is not None and not (time_range[0] <= s.start <= time_range[1]):
            continue
        if min_occurrence is not None and s.occurrence_count < min_occurrence:
            continue
        if kinds is not None and s.kind not in kinds:
            continue
        out.append(s)
    return out


_CLOSED_CLASS = {
    "DET": {
        "the", "a", "an", "this", "that", "these", "those", "my", "your",
        "his", "her", "its", "our", "their", "some", "any", "each", "every", "no",
    },
    "ADP": {
        "in", "on", "at", "of", "to", "from", "with", "by", "for", "over",
        "under", "into", "onto", "about", "across", "through", "between",
        "against", "during", "without", "within", "around", "near",
    },
    "AUX": {
        "is", "are", "was", "were", "be", "been", "being", "am", "do", "does",
        "did", "have", "has", "had", "will", "would", "can", "could", "shall",
        "should", "may", "might", "must",
    },
    "PRON": {
        "i", "you", "he", "she", "it", "we", "they", "me", "him", "us", "them",
    },
    "CCONJ": {"and", "or", "but"},
    "PART": {"not"},
    "ADV": {"very", "really", "quite", "also", "now", "then", "here", "there"},
    "ADJ": {
        "red", "blue", "green", "big", "small", "large", "tiny", "good", "bad",
        "new", "old", "first", "second", "third", "main", "key", "open", "closed",
    },
    "VERB": {
        "tell", "tells", "told", "show", "shows", "showed", "move", "moves",
        "moved", "raise", "raises", "raised", "work", "works", "worked", "say",
        "says", "said", "make", "makes", "made", "go", "goes", "went", "get",
        "gets", "got", "see", "sees", "saw", "think", "thinks", "thought",
        "cross", "crosses", "crossed", "keep", "keeps", "kept", "point",
        "points", "pointed", "talk", "talks", "talked", "speak", "speaks",
        "spoke", "use", "uses", "used", "explain", "explains", "explained",
    },
}


def rule_tag(words: Sequence[TranscriptWord]) -> list[TranscriptWord]:
    """Closed-class fallback tagger: word-list lookup, default NOUN."""
    tagged = []
    for w in words:
        token = w.text.lower().rstrip(".!?,;:")
        tag = "NOUN"
        for candidate, vocabulary in _CLOSED_CLASS.items():
            if token in vocabulary:
                tag = candidate
                break
        tagged.append(replace(w, pos_tag=tag))
    return tagged
