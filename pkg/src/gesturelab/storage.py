"""Plain-JSON persistence under a data root.

Layout::

    <root>/config.json                    service-wide analysis config
    <root>/videos/<id>/media.<ext>        raw video bytes (optional)
    <root>/videos/<id>/meta.json          {"title": ...} (optional)
    <root>/videos/<id>/bundles/bundle-<hash>.json
    <root>/videos/<id>/bundle.current     name of the live bundle file
    <root>/videos/<id>/bookmarks.json
    <root>/videos/<id>/screenshots.json

Bundle files are write-once; re-analysis writes a new hash-named file and
atomically swaps the pointer. Bookmark/screenshot writes are serialized
per video and land via temp-file + rename, so a crash never leaves a
half-written file.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path

from gesturelab.config import AnalysisConfig, load_config, save_config
from gesturelab.errors import (
    ConflictError,
    NotFoundError,
    StorageError,
    ValidationError,
)

MEDIA_EXTENSIONS = (".mp4", ".webm", ".mkv", ".mov", ".avi", ".bin")


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class VideoStore:
    """File-backed store for bundles, bookmarks, and screenshots."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, video_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(video_id, threading.Lock())

    # -- paths ------------------------------------------------------------

    def video_dir(self, video_id: str) -> Path:
        return self.root / "videos" / video_id

    def _require_video(self, video_id: str) -> Path:
        d = self.video_dir(video_id)
        if not d.is_dir():
            raise NotFoundError(f"unknown video {video_id!r}")
        return d

    def config_path(self) -> Path:
        return self.root / "config.json"

    # -- config -----------------------------------------------------------

    def load_config(self) -> AnalysisConfig:
        path = self.config_path()
        return load_config(path) if path.exists() else AnalysisConfig()

    def save_config(self, config: AnalysisConfig) -> None:
        save_config(config, self.config_path())

    # -- videos and bundles -------------------------------------------------

    def video_ids(self) -> list[str]:
        base = self.root / "videos"
        if not base.exists():
            return []
        if not base.is_dir():
            raise StorageError(f"{base} is not a directory")
        return sorted(p.name for p in base.iterdir() if p.is_dir())

    def title(self, video_id: str) -> str:
        meta = self.video_dir(video_id) / "meta.json"
        if meta.exists():
            try:
                return str(json.loads(meta.read_text()).get("title", video_id))
            except (json.JSONDecodeError, OSError):
                return video_id
        return video_id

    def bundle_pointer(self, video_id: str) -> Path:
        return self.video_dir(video_id) / "bundle.current"

    def current_bundle_path(self, video_id: str) -> Path | None:
        pointer = self.bundle_pointer(video_id)
        if not pointer.exists():
            return None
        name = pointer.read_text().strip()
        return self.video_dir(video_id) / "bundles" / name

    def save_bundle(self, video_id: str, bundle_bytes: bytes, digest: str) -> Path:
        d = self.video_dir(video_id)
        path = d / "bundles" / f"bundle-{digest}.json"
        if not path.exists():  # write-once per content hash
            _atomic_write(path, bundle_bytes)
        _atomic_write(self.bundle_pointer(video_id), (path.name + "\n").encode())
        return path

    def load_bundle_doc(self, video_id: str) -> dict:
        self._require_video(video_id)
        path = self.current_bundle_path(video_id)
        if path is None:
            raise ConflictError(f"video {video_id!r} has no analysis yet")
        try:
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise StorageError(f"bundle for {video_id!r} unreadable: {exc}") from exc

    def analysis_status(self, video_id: str) -> tuple[str, str | None]:
        """(status, diagnostic): analyzed / pending / failed."""
        path = self.current_bundle_path(video_id)
        if path is None:
            return "pending", None
        try:
            json.loads(path.read_text())
            return "analyzed", None
        except (OSError, json.JSONDecodeError) as exc:
            return "failed", str(exc)

    def list_videos(self) -> list[dict]:
        out = []
        for vid in self.video_ids():
            status, diagnostic = self.analysis_status(vid)
            duration = None
            if status == "analyzed":
                doc = json.loads(self.current_bundle_path(vid).read_text())
                duration = doc.get("video", {}).get("duration")
            entry = {
                "video_id": vid,
                "title": self.title(vid),
                "duration": duration,
                "analysis_status": status,
            }
            if diagnostic:
                entry["diagnostic"] = diagnostic
            out.append(entry)
        return out

    def media_path(self, video_id: str) -> Path | None:
        d = self._require_video(video_id)
        for ext in MEDIA_EXTENSIONS:
            candidate = d / f"media{ext}"
            if candidate.exists():
                return candidate
        return None

    # -- bookmarks ----------------------------------------------------------

    def _records(self, path: Path) -> list[dict]:
        if not path.exists():
            return []
        try:
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise StorageError(f"{path} unreadable: {exc}") from exc

    def bookmarks(self, video_id: str) -> list[dict]:
        self._require_video(video_id)
        return self._records(self.video_dir(video_id) / "bookmarks.json")

    def add_bookmark(
        self, video_id: str, kind: str, payload: dict, note: str = ""
    ) -> dict:
        doc = self.load_bundle_doc(video_id)
        self._validate_bookmark(doc, kind, payload)
        record = {
            "id": uuid.uuid4().hex,
            "video_id": video_id,
            "kind": kind,
            "payload": payload,
            "note": note,
            "created_at": _now(),
        }
        with self._lock(video_id):
            path = self.video_dir(video_id) / "bookmarks.json"
            records = self._records(path)
            records.append(record)
            _atomic_write(path, json.dumps(records, indent=1).encode())
        return record

    def delete_bookmark(self, video_id: str, bookmark_id: str) -> None:
        self._require_video(video_id)
        with self._lock(video_id):
            path = self.video_dir(video_id) / "bookmarks.json"
            records = self._records(path)
            kept = [r for r in records if r["id"] != bookmark_id]
            if len(kept) != len(records):  # deleting a ghost is a no-op
                _atomic_write(path, json.dumps(kept, indent=1).encode())

    @staticmethod
    def _validate_bookmark(doc: dict, kind: str, payload: dict) -> None:
        if kind == "gesture_segment":
            ids = {s["id"] for s in doc.get("segments", [])}
            if payload.get("segment_id") not in ids:
                raise ValidationError(
                    f"segment {payload.get('segment_id')!r} not in bundle"
                )
        elif kind == "phrase":
            ids = {p["id"] for p in doc.get("phrases", [])}
            if payload.get("phrase_id") not in ids:
                raise ValidationError(
                    f"phrase {payload.get('phrase_id')!r} not in bundle"
                )
        elif kind == "time_range":
            rng = payload.get("range")
            duration = doc.get("video", {}).get("duration", 0.0)
            if (
                not isinstance(rng, (list, tuple))
                or len(rng) != 2
                or not (0.0 <= rng[0] <= rng[1] <= duration)
            ):
                raise ValidationError(f"bad time range {rng!r}")
        else:
            raise ValidationError(f"unknown bookmark kind {kind!r}")

    # -- screenshots ----------------------------------------------------------

    def screenshots(self, video_id: str) -> list[dict]:
        self._require_video(video_id)
        return self._records(self.video_dir(video_id) / "screenshots.json")

    def add_screenshot(self, video_id: str, timestamp: float) -> dict:
        doc = self.load_bundle_doc(video_id)
        duration = doc.get("video", {}).get("duration", 0.0)
        if not (0.0 <= timestamp <= duration):
            raise ValidationError(
                f"timestamp {timestamp} outside video duration [0, {duration}]"
            )
        word = ""
        for w in doc.get("words", []):
            if w["start"] <= timestamp < w["end"]:
                word = w["text"]
                break
        record = {
            "id": uuid.uuid4().hex,
            "video_id": video_id,
            "timestamp": timestamp,
            "word": word,
            "created_at": _now(),
        }
        with self._lock(video_id):
            path = self.video_dir(video_id) / "screenshots.json"
            records = self._records(path)
            records.append(record)
            _atomic_write(path, json.dumps(records, indent=1).encode())
        return record
