"""Deterministic synthetic episodes for tests and demos.

Real teleoperated recordings are not bundled; this module fabricates
episode directories in the documented on-disk format with smooth,
seed-reproducible joint/EE trajectories and simple rendered frames
(an arm-like dot that tracks the trajectory in image space).
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from PIL import Image, ImageDraw

from .episode import Episode, load_episode


def synthetic_state(t: float, seed: int = 0) -> tuple[list[float], list[float]]:
    """Joint and EE vectors at phase ``t`` in [0, 1], smooth in ``t``."""
    phase = 2.0 * math.pi * t + seed * 0.7
    joints = [round(math.sin(phase + 0.5 * i) * (0.4 + 0.1 * i), 6) for i in range(7)]
    gripper = round(math.cos(phase * 2.0), 6)
    ee = [
        round(0.4 + 0.2 * math.sin(phase), 6),
        round(0.1 * math.cos(phase), 6),
        round(0.3 + 0.15 * t, 6),
        round(0.9 * math.sin(phase * 0.5), 6),
        round(0.2 * math.cos(phase * 0.5), 6),
        round(-1.1 * t, 6),
    ]
    return joints + [gripper], ee


def render_frame_image(t: float, size: tuple[int, int] = (256, 256), seed: int = 0) -> Image.Image:
    """Render a toy scene whose content varies smoothly with ``t``."""
    w, h = size
    bg = (30 + int(40 * t), 40, 60)
    im = Image.new("RGB", size, bg)
    draw = ImageDraw.Draw(im)
    draw.rectangle([0, int(h * 0.75), w, h], fill=(90, 70, 50))
    cx = int((0.15 + 0.7 * t) * w)
    cy = int((0.3 + 0.25 * math.sin(2 * math.pi * t + seed)) * h)
    r = 12
    draw.ellipse([cx - r, cy - r, cx + r, cy + r], fill=(220, 80 + int(100 * t), 60))
    draw.rectangle([int(w * 0.8), int(h * 0.6), int(w * 0.95), int(h * 0.75)], fill=(70, 120, 180))
    return im


def make_synthetic_episode(
    root: str | Path,
    episode_id: str = "synthetic",
    n_frames: int = 580,
    task_label: str = "door opening",
    image_size: tuple[int, int] = (256, 256),
    seed: int = 0,
) -> Episode:
    """Write a synthetic episode directory under ``root`` and load it back.

    The returned episode has passed full validation, so tests exercise the
    same ingestion path as real data.
    """
    episode_dir = Path(root) / episode_id
    frames_dir = episode_dir / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)

    meta = {"episode_id": episode_id, "task_label": task_label, "image_size": list(image_size)}
    (episode_dir / "meta.json").write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")

    lines = []
    denom = max(n_frames - 1, 1)
    for i in range(n_frames):
        t = i / denom
        joints, ee = synthetic_state(t, seed=seed)
        image_name = f"frames/{i:06d}.png"
        render_frame_image(t, size=image_size, seed=seed).save(episode_dir / image_name)
        lines.append(
            json.dumps(
                {"index": i, "image": image_name, "joint_state": joints, "ee_pose": ee},
                sort_keys=True,
            )
        )
    (episode_dir / "episode.jsonl").write_text("\n".join(lines) + "\n")
    return load_episode(episode_dir)
