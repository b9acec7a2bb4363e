"""Loading, validating, and stride-sampling recorded robot episodes.

An episode lives in one directory:

    <episode_dir>/
        meta.json        # {"episode_id": ..., "task_label": ..., "image_size": [W, H]}
        episode.jsonl    # one record per frame:
                         #   {"index": int, "image": "frames/000123.png",
                         #    "joint_state": [8 floats], "ee_pose": [6 floats]}
        frames/          # (or any subdirectory the "image" fields point into)

``joint_state`` holds seven arm joint angles plus one gripper-opening value;
``ee_pose`` holds x, y, z position followed by roll, pitch, yaw.
Validation is eager: ``load_episode`` rejects a malformed directory before
any prompt rendering can see it.
"""

from __future__ import annotations

import io
import json
import math
import threading
from dataclasses import dataclass, field
from pathlib import Path

from PIL import Image, UnidentifiedImageError

from .errors import DataError

JOINT_DIM = 8
EE_DIM = 6
DEFAULT_IMAGE_SIZE = (256, 256)

MANIFEST_NAME = "episode.jsonl"
META_NAME = "meta.json"


class EpisodeFormatError(DataError):
    """Manifest or meta file missing, unparsable, or structurally wrong."""


class FrameValidationError(DataError):
    """A frame record violates an arity, finiteness, or type constraint."""


class FrameOrderError(DataError):
    """Frame indices are not strictly increasing."""


class ImageRefError(DataError):
    """An image reference is missing, unreadable, or has the wrong size."""


def _check_vector(values, expected, name: str, frame_index) -> tuple[float, ...]:
    if not isinstance(values, (list, tuple)):
        raise FrameValidationError(f"frame {frame_index}: {name} must be a list")
    if len(values) != expected:
        raise FrameValidationError(
            f"frame {frame_index}: {name} has {len(values)} elements, expected {expected}"
        )
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise FrameValidationError(f"frame {frame_index}: {name} contains non-finite value {v!r}")
        out.append(float(v))
    return tuple(out)


@dataclass(frozen=True)
class Frame:
    """One timestamped observation: an image reference plus low-level state."""

    index: int
    image_ref: Path
    joint_state: tuple[float, ...]
    ee_pose: tuple[float, ...]

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 0:
            raise FrameValidationError(f"frame index must be a non-negative integer, got {self.index!r}")
        object.__setattr__(self, "image_ref", Path(self.image_ref))
        object.__setattr__(
            self, "joint_state", _check_vector(self.joint_state, JOINT_DIM, "joint_state", self.index)
        )
        object.__setattr__(self, "ee_pose", _check_vector(self.ee_pose, EE_DIM, "ee_pose", self.index))


@dataclass(frozen=True)
class Episode:
    """An ordered, validated sequence of frames."""

    episode_id: str
    frames: tuple[Frame, ...]
    task_label: str | None = None
    image_size: tuple[int, int] = DEFAULT_IMAGE_SIZE

    def __post_init__(self):
        object.__setattr__(self, "frames", tuple(self.frames))
        if not self.frames:
            raise EpisodeFormatError(f"episode {self.episode_id!r} has no frames")
        indices = [f.index for f in self.frames]
        for prev, cur in zip(indices, indices[1:]):
            if cur <= prev:
                raise FrameOrderError(
                    f"episode {self.episode_id!r}: frame index {cur} follows {prev}, "
                    "indices must be strictly increasing"
                )

    def __len__(self) -> int:
        return len(self.frames)


@dataclass(frozen=True)
class SampledSequence:
    """Frames taken at every ``stride``-th position, starting at ``offset``."""

    source_episode_id: str
    stride: int
    offset: int
    frames: tuple[Frame, ...]

    def __len__(self) -> int:
        return len(self.frames)


def load_episode(manifest_path: str | Path) -> Episode:
    """Load and validate one episode directory.

    ``manifest_path`` may be the episode directory itself or the path of its
    ``episode.jsonl``. Every frame record is checked (vector arities, finite
    values, strictly increasing indices) and every referenced image must be
    readable with the dimensions announced in ``meta.json``.

    Raises:
        EpisodeFormatError: missing or unparsable manifest/meta file.
        FrameValidationError: a record has the wrong shape or values.
        FrameOrderError: frame indices not strictly increasing.
        ImageRefError: an image is missing, unreadable, or the wrong size.
    """
    path = Path(manifest_path)
    episode_dir = path.parent if path.name == MANIFEST_NAME else path
    manifest = episode_dir / MANIFEST_NAME
    meta_path = episode_dir / META_NAME
    if not manifest.is_file():
        raise EpisodeFormatError(f"no {MANIFEST_NAME} found under {episode_dir}")
    if not meta_path.is_file():
        raise EpisodeFormatError(f"no {META_NAME} found under {episode_dir}")

    try:
        meta = json.loads(meta_path.read_text())
    except json.JSONDecodeError as exc:
        raise EpisodeFormatError(f"{meta_path}: invalid JSON ({exc})") from exc
    if not isinstance(meta, dict) or not isinstance(meta.get("episode_id"), str):
        raise EpisodeFormatError(f"{meta_path}: expected an object with a string 'episode_id'")
    episode_id = meta["episode_id"]
    task_label = meta.get("task_label")
    if task_label is not None and not isinstance(task_label, str):
        raise EpisodeFormatError(f"{meta_path}: 'task_label' must be a string or null")
    size = meta.get("image_size", list(DEFAULT_IMAGE_SIZE))
    if not (isinstance(size, (list, tuple)) and len(size) == 2 and all(isinstance(s, int) for s in size)):
        raise EpisodeFormatError(f"{meta_path}: 'image_size' must be [width, height]")
    image_size = (size[0], size[1])

    frames = []
    for lineno, line in enumerate(manifest.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise EpisodeFormatError(f"{manifest}:{lineno}: invalid JSON ({exc})") from exc
        if not isinstance(record, dict):
            raise EpisodeFormatError(f"{manifest}:{lineno}: expected an object")
        missing = {"index", "image", "joint_state", "ee_pose"} - record.keys()
        if missing:
            raise FrameValidationError(
                f"{manifest}:{lineno}: missing field(s) {sorted(missing)}"
            )
        frame = Frame(
            index=record["index"],
            image_ref=episode_dir / record["image"],
            joint_state=record["joint_state"],
            ee_pose=record["ee_pose"],
        )
        _check_image(frame.image_ref, image_size, frame.index)
        frames.append(frame)

    return Episode(episode_id=episode_id, frames=tuple(frames), task_label=task_label, image_size=image_size)


def _check_image(image_ref: Path, expected_size: tuple[int, int], frame_index: int) -> None:
    if not image_ref.is_file():
        raise ImageRefError(f"frame {frame_index}: image {image_ref} does not exist")
    try:
        with Image.open(image_ref) as im:
            size = im.size
    except (UnidentifiedImageError, OSError) as exc:
        raise ImageRefError(f"frame {frame_index}: cannot read image {image_ref} ({exc})") from exc
    if size != expected_size:
        raise ImageRefError(
            f"frame {frame_index}: image {image_ref} is {size[0]}x{size[1]}, "
            f"expected {expected_size[0]}x{expected_size[1]}"
        )


def sample_frames(episode: Episode, stride: int, offset: int = 0) -> SampledSequence:
    """Take every ``stride``-th frame of the episode, starting at ``offset``.

    Sampling is positional: positions offset, offset+stride, ... are kept,
    which for the canonical contiguous 0-based recordings coincides with the
    original frame indices. The sampled count obeys
    ``floor((N - 1 - offset) / stride) + 1`` whenever ``offset < N``.
    """
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if offset < 0 or offset >= stride:
        raise ValueError(f"offset must satisfy 0 <= offset < stride, got offset={offset} stride={stride}")
    picked = episode.frames[offset::stride]
    return SampledSequence(
        source_episode_id=episode.episode_id,
        stride=stride,
        offset=offset,
        frames=picked,
    )


@dataclass(frozen=True)
class ImagePayload:
    """A canonically re-encoded image ready to embed in a chat request."""

    data: bytes
    media_type: str


def encode_image(image_ref: str | Path, max_edge: int | None = None) -> ImagePayload:
    """Re-encode an image file to canonical lossless PNG bytes.

    The same input file always yields identical payload bytes, which makes
    the payload usable as part of a content-addressed cache key. If
    ``max_edge`` is given and the image is larger, it is downscaled so its
    longest edge equals ``max_edge`` (aspect preserved).
    """
    path = Path(image_ref)
    if not path.is_file():
        raise ImageRefError(f"image {path} does not exist")
    try:
        with Image.open(path) as im:
            im = im.convert("RGB")
            if max_edge is not None and max(im.size) > max_edge:
                scale = max_edge / max(im.size)
                new_size = (max(1, round(im.size[0] * scale)), max(1, round(im.size[1] * scale)))
                im = im.resize(new_size, Image.LANCZOS)
            buf = io.BytesIO()
            im.save(buf, format="PNG", optimize=False, compress_level=6)
    except (UnidentifiedImageError, OSError) as exc:
        raise ImageRefError(f"cannot decode image {path} ({exc})") from exc
    return ImagePayload(data=buf.getvalue(), media_type="image/png")


class ImageEncoder:
    """Caching wrapper around :func:`encode_image`.

    One encoder can be shared by all runs over the same episode (ablation
    runs reuse identical payloads); the cache key is the resolved file path.
    Thread safe.
    """

    def __init__(self, max_edge: int | None = None):
        self.max_edge = max_edge
        self._cache: dict[Path, ImagePayload] = {}
        self._lock = threading.Lock()

    def encode(self, image_ref: str | Path) -> ImagePayload:
        key = Path(image_ref).resolve()
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        payload = encode_image(key, max_edge=self.max_edge)
        with self._lock:
            self._cache.setdefault(key, payload)
        return payload
