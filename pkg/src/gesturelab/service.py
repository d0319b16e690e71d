"""HTTP/JSON API over a data root of analyzed videos.

Read endpoints are side-effect-free with byte-stable bodies; the bundle
response carries a strong ETag (hash of the body) and honors
If-None-Match. Media is served with Range support so the player can seek.
Annotation flags are injected at read time from the current config, so
changing thresholds never forces re-analysis.
"""

from __future__ import annotations

import hashlib
import json
import re
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from gesturelab.config import AnalysisConfig
from gesturelab.errors import (
    ConfigError,
    ConflictError,
    GestureLabError,
    NotFoundError,
    StorageError,
    ValidationError,
)
from gesturelab.storage import VideoStore

_RANGE_RE = re.compile(r"bytes=(\d*)-(\d*)$")

_MIME = {
    ".mp4": "video/mp4",
    ".webm": "video/webm",
    ".mkv": "video/x-matroska",
    ".mov": "video/quicktime",
    ".avi": "video/x-msvideo",
}

_ERROR_STATUS = [
    (NotFoundError, 404),
    (ConflictError, 409),
    (ValidationError, 422),
    (ConfigError, 422),
    (StorageError, 500),
]


def _canonical(payload) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def _with_flags(doc: dict, config: AnalysisConfig) -> dict:
    """Inject threshold flags into a bundle document, non-destructively."""
    out = dict(doc)
    out["effective_thresholds"] = {
        "variation_threshold": config.variation_threshold,
        "change_threshold": config.change_threshold,
    }
    out["word_metrics"] = [
        dict(
            m,
            high_variation_flag=m["spatial_variation"] > config.variation_threshold,
            large_change_flag=m["temporal_change"] > config.change_threshold,
        )
        for m in doc.get("word_metrics", [])
    ]
    return out


def create_app(data_root: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    store = VideoStore(data_root)
    app = FastAPI(title="gesturelab", version="0.1.0")

    @app.exception_handler(GestureLabError)
    async def domain_error(_request: Request, exc: GestureLabError):
        status = 500
        for klass, code in _ERROR_STATUS:
            if isinstance(exc, klass):
                status = code
                break
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "message": str(exc)},
        )

    @app.get("/videos")
    def list_videos():
        return store.list_videos()

    @app.get("/videos/{video_id}/bundle")
    def get_bundle(video_id: str, request: Request):
        doc = store.load_bundle_doc(video_id)
        body = _canonical(_with_flags(doc, store.load_config()))
        etag = '"' + hashlib.sha256(body).hexdigest() + '"'
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        return Response(
            content=body, media_type="application/json", headers={"ETag": etag}
        )

    @app.get("/videos/{video_id}/media")
    def get_media(video_id: str, request: Request):
        path = store.media_path(video_id)
        if path is None:
            raise NotFoundError(f"video {video_id!r} has no media file")
        data = path.read_bytes()
        size = len(data)
        mime = _MIME.get(path.suffix, "application/octet-stream")
        header = request.headers.get("range")
        common = {"Accept-Ranges": "bytes"}
        if not header:
            return Response(content=data, media_type=mime, headers=common)
        m = _RANGE_RE.match(header.strip())
        if not m or (not m.group(1) and not m.group(2)):
            return Response(status_code=416, headers=common)
        if m.group(1):
            start = int(m.group(1))
            end = int(m.group(2)) if m.group(2) else size - 1
        else:  # suffix range: last N bytes
            start = max(size - int(m.group(2)), 0)
            end = size - 1
        if start >= size or end < start:
            return Response(
                status_code=416,
                headers=common | {"Content-Range": f"bytes */{size}"},
            )
        end = min(end, size - 1)
        return Response(
            status_code=206,
            content=data[start : end + 1],
            media_type=mime,
            headers=common | {"Content-Range": f"bytes {start}-{end}/{size}"},
        )

    @app.get("/videos/{video_id}/search")
    def search(video_id: str, q: str = Query(default="")):
        doc = store.load_bundle_doc(video_id)
        from gesturelab.ingest import TranscriptWord
        from gesturelab.viewmodel import search_keyword

        words = [
            TranscriptWord(w["text"], w["start"], w["end"], w.get("pos"))
            for w in doc.get("words", [])
        ]
        return {"q": q, "word_indices": search_keyword(words, q)}

    @app.get("/videos/{video_id}/bookmarks")
    def list_bookmarks(video_id: str):
        return store.bookmarks(video_id)

    @app.post("/videos/{video_id}/bookmarks", status_code=201)
    def create_bookmark(video_id: str, body: dict):
        return store.add_bookmark(
            video_id,
            kind=body.get("kind", ""),
            payload=body.get("payload", {}),
            note=body.get("note", ""),
        )

    @app.delete("/videos/{video_id}/bookmarks/{bookmark_id}", status_code=204)
    def delete_bookmark(video_id: str, bookmark_id: str):
        store.delete_bookmark(video_id, bookmark_id)

    @app.get("/videos/{video_id}/screenshots")
    def list_screenshots(video_id: str):
        return store.screenshots(video_id)

    @app.post("/videos/{video_id}/screenshots", status_code=201)
    def create_screenshot(video_id: str, body: dict):
        if "timestamp" not in body:
            raise ValidationError("screenshot needs a timestamp")
        return store.add_screenshot(video_id, float(body["timestamp"]))

    @app.get("/config")
    def get_config():
        return store.load_config().to_dict()

    @app.put("/config")
    def put_config(body: dict):
        config = AnalysisConfig.from_dict(body)
        store.save_config(config)
        return config.to_dict()

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
