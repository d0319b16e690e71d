import json
import shutil
from pathlib import Path

import pytest
from click.testing import CliRunner

from gesturelab.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def runner():
    return CliRunner()


def analyze_args(out_dir, extra=()):
    return [
        "analyze",
        "--pose", str(FIXTURES / "pose_30s.json"),
        "--transcript", str(FIXTURES / "transcript_30s.json"),
        "--embeddings", str(FIXTURES / "embeddings_16d.txt"),
        "--fps", "25",
        "--out", str(out_dir),
        *extra,
    ]


class TestAnalyzeCommand:
    def test_writes_bundle_and_pointer(self, runner, tmp_path):
        out = tmp_path / "videos" / "talk1"
        result = runner.invoke(main, analyze_args(out))
        assert result.exit_code == 0, result.output
        summary = json.loads(result.output)
        assert summary["video_id"] == "talk1"
        assert summary["segments"] > 0
        pointer = (out / "bundle.current").read_text().strip()
        bundle_file = out / "bundles" / pointer
        assert bundle_file.exists()
        doc = json.loads(bundle_file.read_text())
        assert doc["schema_version"] == 1
        assert doc["heatmap"]["total_samples"] > 0
        assert len(doc["phrases"]) >= 1

    def test_rerun_is_byte_identical(self, runner, tmp_path):
        out = tmp_path / "videos" / "talk1"
        assert runner.invoke(main, analyze_args(out)).exit_code == 0
        pointer = (out / "bundle.current").read_text().strip()
        first = (out / "bundles" / pointer).read_bytes()
        assert runner.invoke(main, analyze_args(out)).exit_code == 0
        pointer2 = (out / "bundle.current").read_text().strip()
        assert pointer2 == pointer
        assert (out / "bundles" / pointer2).read_bytes() == first

    def test_seed_changes_bundle_name(self, runner, tmp_path):
        out = tmp_path / "videos" / "talk1"
        runner.invoke(main, analyze_args(out))
        first = (out / "bundle.current").read_text()
        runner.invoke(main, analyze_args(out, extra=["--seed", "7"]))
        second = (out / "bundle.current").read_text()
        assert first != second  # different config hash, prior bundle kept
        assert len(list((out / "bundles").glob("bundle-*.json"))) == 2

    def test_missing_transcript_is_config_error(self, runner, tmp_path):
        result = runner.invoke(
            main,
            [
                "analyze",
                "--pose", str(FIXTURES / "pose_30s.json"),
                "--fps", "25",
                "--out", str(tmp_path / "v"),
            ],
        )
        assert result.exit_code != 0
        diagnostic = json.loads(result.stderr)
        assert diagnostic["error"] == "ConfigError"
        assert "transcript" in diagnostic["message"]

    def test_media_copied(self, runner, tmp_path):
        media = tmp_path / "clip.mp4"
        media.write_bytes(b"\x00" * 64)
        out = tmp_path / "videos" / "talk1"
        result = runner.invoke(main, analyze_args(out, extra=["--media", str(media)]))
        assert result.exit_code == 0
        assert (out / "media.mp4").read_bytes() == b"\x00" * 64


@pytest.fixture
def analyzed_root(runner, tmp_path):
    root = tmp_path / "root"
    out = root / "videos" / "talk1"
    result = runner.invoke(main, analyze_args(out))
    assert result.exit_code == 0
    return root


class TestExportCommand:
    def test_matrix_csv(self, runner, analyzed_root, tmp_path):
        out = tmp_path / "matrix.csv"
        result = runner.invoke(
            main,
            ["export", "talk1", "--what", "matrix", "--out", str(out),
             "--data-root", str(analyzed_root)],
        )
        assert result.exit_code == 0, result.output
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("segment,")
        n = len(lines) - 1
        assert all(len(line.split(",")) == n + 1 for line in lines)

    def test_heatmap_pgm(self, runner, analyzed_root, tmp_path):
        out = tmp_path / "heatmap.pgm"
        result = runner.invoke(
            main,
            ["export", "talk1", "--what", "heatmap", "--out", str(out),
             "--data-root", str(analyzed_root)],
        )
        assert result.exit_code == 0
        assert out.read_bytes().startswith(b"P2\n64 64\n")

    def test_transcript_csv(self, runner, analyzed_root, tmp_path):
        out = tmp_path / "words.csv"
        result = runner.invoke(
            main,
            ["export", "talk1", "--what", "transcript-csv", "--out", str(out),
             "--data-root", str(analyzed_root)],
        )
        assert result.exit_code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "word_index,text,start,end,spatial_variation,temporal_change"
        assert len(lines) > 40

    def test_unknown_video(self, runner, analyzed_root, tmp_path):
        result = runner.invoke(
            main,
            ["export", "ghost", "--what", "matrix",
             "--out", str(tmp_path / "x.csv"), "--data-root", str(analyzed_root)],
        )
        assert result.exit_code != 0

    def test_unknown_export_kind_usage_error(self, runner, analyzed_root, tmp_path):
        result = runner.invoke(
            main,
            ["export", "talk1", "--what", "sparkline",
             "--out", str(tmp_path / "x"), "--data-root", str(analyzed_root)],
        )
        assert result.exit_code == 2  # click usage error
