"""Parsers for the external inputs and timestamp alignment.

Three input families are understood:

* Pose keypoints, either a consolidated document::

      {"width": 1280, "height": 720,
       "frames": [{"index": 0, "t": 0.0,
                   "people": [{"keypoints": [[x, y, c], ...25 entries]}]}]}

  or a bare JSON array of such frame objects, or a directory of per-frame
  JSON files in the common flat layout
  ``{"people": [{"pose_keypoints_2d": [x0, y0, c0, ... x24, y24, c24]}]}``
  (files are taken in sorted filename order). ``keypoints`` entries may be
  nested ``[x, y, c]`` triples or one flat 75-float list.

* Word-timestamped transcripts:
  ``[{"word": "hello", "start": 0.0, "end": 0.4, "pos": "NOUN"?}, ...]``

* Plain-text embedding tables, one ``word v1 ... vd`` line per word.

Confidence 0 marks an undetected keypoint; its coordinates are stored as 0.0
and carry no meaning.
"""

from __future__ import annotations

import json
import math
import os
from bisect import bisect_left
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from gesturelab.errors import ConfigError, ParseError, SchemaError

KEYPOINT_COUNT = 25


class Keypoint(NamedTuple):
    x: float
    y: float
    confidence: float


@dataclass(frozen=True)
class PoseFrame:
    """One video frame's detected keypoints for the selected person.

    ``keypoints`` is a (25, 3) float64 array with columns x, y, confidence.
    ``frame_size`` is (width, height) in pixels when the source declared it.
    """

    frame_index: int
    timestamp: float
    keypoints: np.ndarray
    frame_size: tuple[float, float] | None = None

    def keypoint(self, k: int) -> Keypoint:
        x, y, c = self.keypoints[k]
        return Keypoint(float(x), float(y), float(c))

    def detected(self, k: int) -> bool:
        return self.keypoints[k, 2] > 0.0


@dataclass(frozen=True)
class TranscriptWord:
    text: str
    start: float
    end: float
    pos_tag: str | None = None


@dataclass(frozen=True)
class EmbeddingTable:
    dimension: int
    entries: dict[str, np.ndarray]

    def get(self, word: str) -> np.ndarray | None:
        return self.entries.get(word)

    def __len__(self) -> int:
        return len(self.entries)


def _as_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    if hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    raise TypeError(f"unsupported source type {type(source)!r}")


def _keypoints_from_person(person: dict, frame_index: int) -> np.ndarray:
    raw = person.get("keypoints", person.get("pose_keypoints_2d"))
    if raw is None:
        raise SchemaError(f"frame {frame_index}: person has no keypoints field")
    arr = np.asarray(raw, dtype=np.float64)
    if arr.ndim == 1:
        if arr.size != KEYPOINT_COUNT * 3:
            raise SchemaError(
                f"frame {frame_index}: expected {KEYPOINT_COUNT * 3} values in "
                f"flat keypoint list, got {arr.size}"
            )
        arr = arr.reshape(KEYPOINT_COUNT, 3)
    elif arr.shape != (KEYPOINT_COUNT, 3):
        raise SchemaError(
            f"frame {frame_index}: expected {KEYPOINT_COUNT} keypoints, "
            f"got shape {arr.shape}"
        )
    if not np.isfinite(arr).all():
        raise SchemaError(f"frame {frame_index}: non-finite keypoint value")
    if ((arr[:, 2] < 0.0) | (arr[:, 2] > 1.0)).any():
        raise SchemaError(f"frame {frame_index}: confidence outside [0, 1]")
    arr = arr.copy()
    arr[arr[:, 2] == 0.0, 0:2] = 0.0  # undetected coordinates carry no meaning
    return arr


def _select_person(people: list, frame_index: int, frame_size) -> np.ndarray:
    """Pick the speaker from a multi-person frame.

    The person whose keypoint 0 is horizontally nearest to the frame center
    wins; ties go to the higher mean confidence. Without a declared frame
    size the center is approximated by the midpoint of the occupied x-span.
    """
    if not people:
        return np.zeros((KEYPOINT_COUNT, 3), dtype=np.float64)
    candidates = [_keypoints_from_person(p, frame_index) for p in people]
    if len(candidates) == 1:
        return candidates[0]
    if frame_size is not None:
        center_x = frame_size[0] / 2.0
    else:
        xs = np.concatenate([kp[kp[:, 2] > 0, 0] for kp in candidates])
        center_x = float((xs.min() + xs.max()) / 2.0) if xs.size else 0.0

    def rank(kp: np.ndarray) -> tuple[float, float]:
        if kp[0, 2] > 0:
            dist = abs(float(kp[0, 0]) - center_x)
        else:
            dist = math.inf
        return (dist, -float(kp[:, 2].mean()))

    return min(candidates, key=rank)


def _load_json(text: str, context: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{context}: {exc}") from exc


def parse_pose_frames(source, fps_hint: float | None = None) -> list[PoseFrame]:
    """Parse pose keypoints into PoseFrames sorted by frame index.

    ``source`` may be bytes/str JSON, a file-like object, or a path to a
    JSON file or to a directory of per-frame JSON files. Timestamps embedded
    in the document win; otherwise they are synthesized as
    ``frame_index / fps_hint``.
    """
    if fps_hint is not None and fps_hint <= 0:
        raise ConfigError(f"fps_hint must be positive, got {fps_hint}")

    raw_frames, frame_size = _read_raw_frames(source)
    frames: list[PoseFrame] = []
    for position, obj in enumerate(raw_frames):
        if not isinstance(obj, dict):
            raise SchemaError(f"frame {position}: expected an object")
        index = obj.get("index", position)
        if not isinstance(index, int) or index < 0:
            raise SchemaError(f"frame {position}: bad index {index!r}")
        t = obj.get("t")
        if t is None:
            if fps_hint is None:
                raise ConfigError(
                    f"frame {index} has no timestamp and no fps_hint was given"
                )
            t = index / fps_hint
        keypoints = _select_person(obj.get("people", []), index, frame_size)
        frames.append(
            PoseFrame(
                frame_index=index,
                timestamp=float(t),
                keypoints=keypoints,
                frame_size=frame_size,
            )
        )

    frames.sort(key=lambda f: f.frame_index)
    for prev, cur in zip(frames, frames[1:]):
        if cur.frame_index == prev.frame_index:
            raise SchemaError(f"duplicate frame index {cur.frame_index}")
        if cur.timestamp <= prev.timestamp:
            raise SchemaError(
                f"timestamps must strictly increase: frame {cur.frame_index} "
                f"at {cur.timestamp} after {prev.timestamp}"
            )
    return frames


def _read_raw_frames(source) -> tuple[list, tuple[float, float] | None]:
    if isinstance(source, (str, Path)) and os.path.isdir(source):
        raw = []
        names = sorted(p for p in os.listdir(source) if p.endswith(".json"))
        for position, name in enumerate(names):
            text = Path(source, name).read_text()
            doc = _load_json(text, f"frame {position} ({name})")
            doc.setdefault("index", position)
            raw.append(doc)
        return raw, None

    if isinstance(source, (str, Path)) and os.path.isfile(source):
        text = Path(source).read_text()
    else:
        text = _as_text(source)
    doc = _load_json(text, "pose document")

    if isinstance(doc, list):
        return doc, None
    if isinstance(doc, dict):
        if "frames" not in doc:
            # a single per-frame file in the flat layout
            if "people" in doc:
                return [doc], None
            raise SchemaError("pose document has no 'frames' key")
        frame_size = None
        if "width" in doc and "height" in doc:
            frame_size = (float(doc["width"]), float(doc["height"]))
        return doc["frames"], frame_size
    raise SchemaError(f"pose document must be an object or array, got {type(doc)}")


def serialize_pose_frames(frames: list[PoseFrame]) -> bytes:
    """Canonical single-document form accepted back by parse_pose_frames."""
    doc: dict = {}
    if frames and frames[0].frame_size is not None:
        doc["width"], doc["height"] = frames[0].frame_size
    doc["frames"] = [
        {
            "index": f.frame_index,
            "t": f.timestamp,
            "people": [{"keypoints": f.keypoints.tolist()}],
        }
        for f in frames
    ]
    return json.dumps(doc).encode("utf-8")


def _is_punctuation(text: str) -> bool:
    return not any(ch.isalnum() for ch in text)


def parse_transcript(source) -> list[TranscriptWord]:
    """Parse a word-timestamped transcript.

    Words come back sorted by start time with punctuation-only tokens
    dropped. Overlapping intervals or start >= end are schema violations.
    """
    doc = _load_json(_as_text(source), "transcript")
    if not isinstance(doc, list):
        raise SchemaError("transcript must be a JSON array")
    words = []
    for i, obj in enumerate(doc):
        if not isinstance(obj, dict) or "word" not in obj:
            raise SchemaError(f"transcript entry {i}: expected object with 'word'")
        try:
            text = str(obj["word"])
            start = float(obj["start"])
            end = float(obj["end"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"transcript entry {i}: {exc}") from exc
        if not (math.isfinite(start) and math.isfinite(end)):
            raise SchemaError(f"transcript entry {i}: non-finite timestamp")
        if start >= end:
            raise SchemaError(
                f"transcript entry {i} ({text!r}): start {start} >= end {end}"
            )
        if _is_punctuation(text):
            continue
        pos = obj.get("pos")
        words.append(TranscriptWord(text, start, end, str(pos) if pos else None))

    words.sort(key=lambda w: (w.start, w.end))
    for prev, cur in zip(words, words[1:]):
        if cur.start < prev.end:
            raise SchemaError(
                f"overlapping words {prev.text!r} [{prev.start}, {prev.end}) and "
                f"{cur.text!r} [{cur.start}, {cur.end})"
            )
    return words


def serialize_transcript(words: list[TranscriptWord]) -> bytes:
    doc = [
        {"word": w.text, "start": w.start, "end": w.end}
        | ({"pos": w.pos_tag} if w.pos_tag else {})
        for w in words
    ]
    return json.dumps(doc).encode("utf-8")


def load_embeddings(source) -> EmbeddingTable:
    """Load a plain-text embedding table (one ``word v1 ... vd`` per line).

    The dimension is fixed by the first line; duplicate words keep their
    first occurrence. A leading word2vec-style count header is skipped.
    """
    text = _as_text(source)
    dimension: int | None = None
    entries: dict[str, np.ndarray] = {}
    lines = text.splitlines()
    start = 0
    if lines:
        head = lines[0].split()
        if len(head) == 2 and all(tok.isdigit() for tok in head):
            start = 1
    for lineno, line in enumerate(lines[start:], start + 1):
        if not line.strip():
            continue
        parts = line.split()
        word, components = parts[0], parts[1:]
        if not components:
            raise SchemaError(f"line {lineno}: no vector components")
        try:
            vector = np.array([float(v) for v in components], dtype=np.float64)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if dimension is None:
            dimension = vector.size
        elif vector.size != dimension:
            raise SchemaError(
                f"line {lineno}: dimension {vector.size} != declared {dimension}"
            )
        if word not in entries:
            entries[word] = vector
    if dimension is None:
        raise SchemaError("embedding table is empty")
    return EmbeddingTable(dimension=dimension, entries=entries)


def serialize_embeddings(table: EmbeddingTable) -> bytes:
    lines = [
        " ".join([word] + [repr(float(v)) for v in vec])
        for word, vec in table.entries.items()
    ]
    return ("\n".join(lines) + "\n").encode("utf-8")


def align(
    frames: list[PoseFrame], words: list[TranscriptWord]
) -> list[tuple[int, int]]:
    """Map each word to the half-open range of frame indices it covers.

    A frame belongs to a word when its timestamp lies in [start, end).
    Words overlapping no frame get an empty range. Both inputs must be
    non-empty and sorted.
    """
    if not frames or not words:
        raise ConfigError("align requires non-empty frame and word sequences")
    times = [f.timestamp for f in frames]
    ranges = []
    for w in words:
        lo = bisect_left(times, w.start)
        hi = bisect_left(times, w.end)
        ranges.append((lo, hi))
    return ranges
