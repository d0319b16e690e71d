"""Command line entry points: analyze a video, serve the API, export artifacts."""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

import click

from gesturelab.config import load_config
from gesturelab.errors import ConfigError, GestureLabError
from gesturelab.pipeline import analyze, bundle_to_json, content_hash
from gesturelab.storage import VideoStore, _atomic_write


def _fail(exc: GestureLabError) -> None:
    diagnostic = {"error": type(exc).__name__, "message": str(exc)}
    click.echo(json.dumps(diagnostic), err=True)
    sys.exit(1)


@click.group()
def main() -> None:
    """Gesture analytics for presentation videos."""


@main.command("analyze")
@click.option("--pose", type=click.Path(path_type=Path),
              help="Pose keypoints: JSON file or directory of per-frame files.")
@click.option("--transcript", type=click.Path(path_type=Path),
              help="Word-timestamped transcript JSON.")
@click.option("--phrases", type=click.Path(path_type=Path),
              help="Optional phrase annotations JSON, bypasses the chunker.")
@click.option("--embeddings", type=click.Path(path_type=Path),
              help="Plain-text word embedding table.")
@click.option("--config", "config_path", type=click.Path(path_type=Path),
              help="Analysis config JSON; defaults apply when omitted.")
@click.option("--out", required=True, type=click.Path(path_type=Path),
              help="Video directory to write the bundle into.")
@click.option("--seed", type=int, default=None, help="Overrides the config seed.")
@click.option("--video-id", default=None, help="Defaults to the out directory name.")
@click.option("--fps", type=float, default=None,
              help="Frame rate when the pose file has no timestamps.")
@click.option("--media", type=click.Path(exists=True, path_type=Path),
              help="Raw video file to copy next to the bundle.")
@click.option("--workers", type=int, default=1, show_default=True,
              help="Threads for pairwise DTW.")
def cmd_analyze(pose, transcript, phrases, embeddings, config_path, out, seed,
                video_id, fps, media, workers):
    """Run the pipeline and write the analysis bundle."""
    try:
        for name, path in (("--pose", pose), ("--transcript", transcript)):
            if path is None:
                raise ConfigError(f"{name} is required")
            if not path.exists():
                raise ConfigError(f"{name} path does not exist: {path}")
        for name, path in (("--phrases", phrases), ("--embeddings", embeddings)):
            if path is not None and not path.exists():
                raise ConfigError(f"{name} path does not exist: {path}")
        config = load_config(config_path)

        pose_bytes = (
            pose.read_bytes() if pose.is_file() else _directory_digest(pose)
        )
        transcript_bytes = transcript.read_bytes()
        embeddings_bytes = embeddings.read_bytes() if embeddings else None
        phrases_bytes = phrases.read_bytes() if phrases else None
        annotations = json.loads(phrases_bytes) if phrases_bytes else None

        video_id = video_id or out.name
        bundle = analyze(
            pose,
            transcript_bytes,
            embeddings_source=embeddings_bytes,
            phrase_annotations=annotations,
            config=config,
            fps_hint=fps,
            video_id=video_id,
            seed=seed,
            workers=workers,
        )
        digest = content_hash(
            pose_bytes, transcript_bytes, bundle.config,
            embeddings_bytes=embeddings_bytes, phrases_bytes=phrases_bytes,
        )
        out.mkdir(parents=True, exist_ok=True)
        bundle_path = out / "bundles" / f"bundle-{digest}.json"
        bundle_path.parent.mkdir(parents=True, exist_ok=True)
        if not bundle_path.exists():  # bundle files are write-once
            _atomic_write(bundle_path, bundle_to_json(bundle))
        _atomic_write(out / "bundle.current", (bundle_path.name + "\n").encode())
        if media:
            shutil.copyfile(media, out / f"media{media.suffix.lower()}")

        summary = {
            "video_id": video_id,
            "bundle": str(bundle_path),
            "frames": bundle.video["frame_count"],
            "words": len(bundle.words),
            "phrases": len(bundle.phrases),
            "segments": len(bundle.segments),
            "diagnostics": bundle.diagnostics,
        }
        click.echo(json.dumps(summary, indent=2))
    except GestureLabError as exc:
        _fail(exc)


def _directory_digest(path: Path) -> bytes:
    import hashlib

    h = hashlib.sha256()
    for p in sorted(path.glob("*.json")):
        h.update(p.name.encode())
        h.update(p.read_bytes())
    return h.digest()


@main.command("serve")
@click.option("--data-root", envvar="GESTURELAB_DATA_ROOT", required=True,
              type=click.Path(exists=True, path_type=Path),
              help="Root directory with videos/ (env: GESTURELAB_DATA_ROOT).")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--ui-dir", type=click.Path(exists=True, path_type=Path),
              help="Optional built frontend to serve at /.")
def cmd_serve(data_root, host, port, ui_dir):
    """Serve the HTTP API until terminated."""
    import uvicorn

    from gesturelab.service import create_app

    uvicorn.run(create_app(data_root, ui_dir=ui_dir), host=host, port=port)


@main.command("export")
@click.argument("video_id")
@click.option("--what", required=True,
              type=click.Choice(["matrix", "heatmap", "transcript-csv"]))
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--data-root", envvar="GESTURELAB_DATA_ROOT", required=True,
              type=click.Path(exists=True, path_type=Path))
def cmd_export(video_id, what, out, data_root):
    """Export a bundle artifact for offline inspection."""
    try:
        store = VideoStore(data_root)
        doc = store.load_bundle_doc(video_id)
        if what == "matrix":
            matrix = doc.get("distance_matrix")
            if not matrix:
                raise GestureLabError(f"video {video_id!r} has no distance matrix")
            lines = ["segment," + ",".join(str(s) for s in matrix["segment_ids"])]
            for sid, row in zip(matrix["segment_ids"], matrix["values"]):
                lines.append(f"{sid}," + ",".join(repr(float(v)) for v in row))
            out.write_text("\n".join(lines) + "\n")
        elif what == "heatmap":
            import numpy as np

            from gesturelab.viewmodel import HeatmapGrid, heatmap_to_pgm

            h = doc["heatmap"]
            grid = HeatmapGrid(
                resolution=h["resolution"],
                cells=np.asarray(h["cells"], dtype=np.int64),
                total_samples=h["total_samples"],
            )
            out.write_bytes(heatmap_to_pgm(grid))
        else:  # transcript-csv
            lines = ["word_index,text,start,end,spatial_variation,temporal_change"]
            metrics = {m["word_index"]: m for m in doc["word_metrics"]}
            for w in doc["words"]:
                m = metrics.get(w["index"], {})
                lines.append(
                    ",".join(
                        [
                            str(w["index"]),
                            '"' + w["text"].replace('"', '""') + '"',
                            repr(w["start"]),
                            repr(w["end"]),
                            repr(m.get("spatial_variation", 0.0)),
                            repr(m.get("temporal_change", 0.0)),
                        ]
                    )
                )
            out.write_text("\n".join(lines) + "\n")
        click.echo(f"wrote {out}")
    except GestureLabError as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
