"""Deterministic synthetic fixtures: a scripted speaker plus transcript.

Run as a script to (re)generate the bundled 30-second fixture files; the
functions are also imported by tests to synthesize longer videos on the
fly. Everything is seeded, so regeneration is reproducible.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

FPS = 25
WIDTH, HEIGHT = 640, 480

ORIGIN = np.array([320.0, 80.0])  # nose in pixels
BODY_SCALE = 400.0  # pixels per normalized unit

# upper-body rest pose in normalized units (y up), mirrors the typical
# at-rest stance; ankles land at ORIGIN + scale
REST = {
    0: (0.00, 0.00),
    1: (0.00, -0.15),
    2: (-0.15, -0.15),
    3: (-0.18, -0.32),
    4: (-0.14, -0.48),
    5: (0.15, -0.15),
    6: (0.18, -0.32),
    7: (0.14, -0.48),
    8: (0.00, -0.55),
    11: (-0.08, -1.00),
    14: (0.08, -1.00),
}

# one motion cycle: rest, raise both hands, spread wide, wave, close, sweep
PHASES = ("rest", "raise", "spread", "wave", "close", "sweep")
PHASE_SECONDS = 5.0

SENTENCES = [
    # (text, POS) per word; sentence-final word keeps its period
    [("the", "DET"), ("coach", "NOUN"), ("tells", "VERB"), ("a", "DET"),
     ("story.", "NOUN")],
    [("people", "NOUN"), ("raise", "VERB"), ("the", "DET"), ("hands", "NOUN"),
     ("now.", "ADV")],
    [("we", "PRON"), ("work", "VERB"), ("in", "ADP"), ("Germany.", "PROPN")],
    [("the", "DET"), ("speaker", "NOUN"), ("moves", "VERB"), ("the", "DET"),
     ("arms.", "NOUN")],
    [("pros", "NOUN"), ("and", "CCONJ"), ("cons", "NOUN"), ("matter.", "VERB")],
    [("i", "PRON"), ("tell", "VERB"), ("the", "DET"), ("idea", "NOUN"),
     ("with", "ADP"), ("open", "ADJ"), ("hands.", "NOUN")],
    [("the", "DET"), ("audience", "NOUN"), ("sees", "VERB"), ("the", "DET"),
     ("gesture.", "NOUN")],
    [("students", "NOUN"), ("tell", "VERB"), ("good", "ADJ"), ("stories.", "NOUN")],
    [("we", "PRON"), ("point", "VERB"), ("at", "ADP"), ("the", "DET"),
     ("screen.", "NOUN")],
    [("the", "DET"), ("big", "ADJ"), ("idea", "NOUN"), ("needs", "VERB"),
     ("space.", "NOUN")],
]

# a couple of tokens stay out of the embedding vocabulary on purpose
OOV_TOKENS = {"zeppelin", "screen"}


def _pose_at(t: float, rng: np.random.Generator) -> dict[int, tuple[float, float]]:
    phase = PHASES[int(t / PHASE_SECONDS) % len(PHASES)]
    u = (t % PHASE_SECONDS) / PHASE_SECONDS  # progress within the phase
    pose = {k: np.array(v, dtype=float) for k, v in REST.items()}
    if phase == "raise":
        lift = 0.55 * u
        for k in (3, 4, 6, 7):
            pose[k][1] += lift
    elif phase == "spread":
        # arms extend outward, wrists past the elbows
        for k, sign, reach in ((3, -1, 0.28), (4, -1, 0.52), (6, 1, 0.28), (7, 1, 0.52)):
            pose[k][0] += sign * reach * u
        pose[4][1] += 0.3 * u
        pose[7][1] += 0.3 * u
    elif phase == "wave":
        pose[4][0] += 0.15 * np.sin(2 * np.pi * 1.5 * t)
        pose[4][1] += 0.45 + 0.1 * np.cos(2 * np.pi * 1.5 * t)
        pose[3][1] += 0.2
    elif phase == "close":
        pose[4] = np.array([-0.04, -0.25])
        pose[7] = np.array([0.04, -0.25])
        pose[3][0] += 0.06
        pose[6][0] -= 0.06
    elif phase == "sweep":
        shift = 0.35 * np.sin(2 * np.pi * u)
        for k in (3, 4, 6, 7):
            pose[k][0] += shift
    return pose


def make_pose_doc(duration_s: float, seed: int = 11, fps: int = FPS) -> dict:
    rng = np.random.default_rng(seed)
    frames = []
    n = int(duration_s * fps)
    for i in range(n):
        t = i / fps
        pose = _pose_at(t, rng)
        keypoints = [[0.0, 0.0, 0.0] for _ in range(25)]
        for k, xy in pose.items():
            px = ORIGIN[0] + xy[0] * BODY_SCALE + rng.normal(0, 1.0)
            py = ORIGIN[1] - xy[1] * BODY_SCALE + rng.normal(0, 1.0)
            conf = float(np.round(rng.uniform(0.82, 0.99), 3))
            keypoints[k] = [round(px, 2), round(py, 2), conf]
        # occasionally drop a wrist detection to exercise gap handling
        if rng.uniform() < 0.01:
            keypoints[4] = [0.0, 0.0, 0.0]
        frames.append({"index": i, "people": [{"keypoints": keypoints}]})
    return {"width": WIDTH, "height": HEIGHT, "frames": frames}


def make_transcript(
    duration_s: float, word_seconds: float = 0.55, sentence_pause: float = 0.3
) -> list[dict]:
    words = []
    t = 0.2
    sentence = 0
    while True:
        for text, pos in SENTENCES[sentence % len(SENTENCES)]:
            end = t + word_seconds - 0.05
            if end > duration_s - 0.2:
                return words
            words.append(
                {"word": text, "start": round(t, 3), "end": round(end, 3),
                 "pos": pos}
            )
            t += word_seconds
        sentence += 1
        t += sentence_pause


def make_embeddings(transcript: list[dict], dim: int = 16, seed: int = 7) -> str:
    vocab = sorted(
        {w["word"].lower().rstrip(".!?") for w in transcript} - OOV_TOKENS
    )
    rng = np.random.default_rng(seed)
    lines = []
    for word in vocab:
        vec = rng.normal(0, 1, dim)
        lines.append(word + " " + " ".join(f"{v:.4f}" for v in vec))
    return "\n".join(lines) + "\n"


def main() -> None:
    out = Path(__file__).parent
    duration = 30.0
    pose = make_pose_doc(duration)
    transcript = make_transcript(duration)
    (out / "pose_30s.json").write_text(json.dumps(pose))
    (out / "transcript_30s.json").write_text(json.dumps(transcript))
    (out / "embeddings_16d.txt").write_text(make_embeddings(transcript))
    print(f"wrote fixtures for a {duration:.0f}s video: "
          f"{len(pose['frames'])} frames, {len(transcript)} words")


if __name__ == "__main__":
    main()
