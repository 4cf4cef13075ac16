"""Trajectory value types, corpus I/O, windowing and label utilities.

Coordinates are pixel units of the source video and are never rescaled at
ingestion. The CSV schema is `id,frame,x,y` (header required, points of one
trajectory contiguous); JSONL carries one `{"id": ..., "points": [[x, y], ...]}`
object per line.
"""

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

CSV_HEADER = ("id", "frame", "x", "y")


class CorpusFormatError(ValueError):
    """Malformed corpus file (message names the offending line)."""


@dataclass(frozen=True)
class Point2:
    """One 2-D observation in pixels."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """An ordered sequence of 2-D observations for one pedestrian.

    `points` is an immutable (tau, 2) float array; `frames` is an optional
    strictly increasing integer array of the same length.
    """

    id: str
    points: np.ndarray
    frames: np.ndarray | None = None

    def __post_init__(self):
        pts = self.points
        if not isinstance(pts, np.ndarray):
            pts = [(p.x, p.y) if isinstance(p, Point2) else tuple(p) for p in pts]
        pts = np.array(pts, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
            raise ValueError(f"trajectory {self.id!r}: need a (tau, 2) point array with tau >= 1")
        if not np.all(np.isfinite(pts)):
            raise ValueError(f"trajectory {self.id!r}: non-finite coordinates")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.frames is not None:
            fr = np.array(self.frames, dtype=np.int64)
            if fr.shape != (len(pts),):
                raise ValueError(f"trajectory {self.id!r}: frames length mismatch")
            if len(fr) > 1 and np.any(np.diff(fr) <= 0):
                raise ValueError(f"trajectory {self.id!r}: frame indices must be strictly increasing")
            fr.setflags(write=False)
            object.__setattr__(self, "frames", fr)

    def __len__(self) -> int:
        return len(self.points)

    def point(self, i: int) -> Point2:
        return Point2(float(self.points[i, 0]), float(self.points[i, 1]))


@dataclass(frozen=True)
class Window6:
    """Three successive 2-D points concatenated into one 6-vector."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != (6,) or not np.all(np.isfinite(vals)):
            raise ValueError("window must be 6 finite reals")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class Corpus:
    """A set of trajectories with unique ids."""

    trajectories: tuple[Trajectory, ...]
    source: str = ""
    _by_id: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        trajs = tuple(self.trajectories)
        object.__setattr__(self, "trajectories", trajs)
        by_id = {}
        for t in trajs:
            if t.id in by_id:
                raise ValueError(f"duplicate trajectory id {t.id!r}")
            by_id[t.id] = t
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self) -> int:
        return len(self.trajectories)

    def __iter__(self):
        return iter(self.trajectories)

    def __getitem__(self, traj_id: str) -> Trajectory:
        return self._by_id[traj_id]

    def __contains__(self, traj_id: str) -> bool:
        return traj_id in self._by_id

    def ids(self) -> list[str]:
        return [t.id for t in self.trajectories]


def window_matrix(traj: Trajectory) -> np.ndarray:
    """All length-3 windows of `traj`, stride 1, as an (tau - 2, 6) array."""
    if len(traj) < 3:
        raise ValueError(f"trajectory {traj.id!r} too short to window (tau={len(traj)})")
    pts = traj.points
    return np.hstack([pts[:-2], pts[1:-1], pts[2:]])


def windowize(traj: Trajectory) -> list[Window6]:
    """Overlapping 3-point windows; window t covers points (t, t+1, t+2)."""
    return [Window6(row) for row in window_matrix(traj)]


def segmentation_points_from_labels(labels) -> list[int]:
    """Indices i >= 1 where labels[i] != labels[i-1]. Endpoints never qualify."""
    labels = list(labels)
    if not labels:
        raise ValueError("labels must be nonempty")
    return [i for i in range(1, len(labels)) if labels[i] != labels[i - 1]]


def window_boundary_to_point_index(window_index: int) -> int:
    """A label change at window i happens at the window's centre point, i + 1."""
    return window_index + 1


def point_labels_from_window_labels(window_labels, tau: int) -> list[int]:
    """Spread per-window labels back onto the tau points (edges copy inward)."""
    wl = list(window_labels)
    if len(wl) != tau - 2:
        raise ValueError("window label count must be tau - 2")
    return [wl[min(max(i - 1, 0), len(wl) - 1)] for i in range(tau)]


def _parse_float(text: str, what: str, lineno: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise CorpusFormatError(f"line {lineno}: non-numeric {what} {text!r}") from None
    if not math.isfinite(value):
        raise CorpusFormatError(f"line {lineno}: non-finite {what} {text!r}")
    return value


def _load_csv(path) -> list[Trajectory]:
    trajectories = []
    current_id = None
    rows: list[tuple[int, float, float]] = []
    seen: set[str] = set()

    def flush():
        if current_id is None:
            return
        rows.sort(key=lambda r: r[0])
        trajectories.append(
            Trajectory(
                id=current_id,
                points=np.array([(x, y) for _, x, y in rows]),
                frames=np.array([f for f, _, _ in rows]),
            )
        )

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return []
        if tuple(h.strip() for h in header) != CSV_HEADER:
            raise CorpusFormatError(f"line 1: expected header {','.join(CSV_HEADER)!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise CorpusFormatError(f"line {lineno}: expected 4 fields, got {len(row)}")
            traj_id = row[0]
            if traj_id != current_id:
                flush()
                if traj_id in seen:
                    raise CorpusFormatError(f"line {lineno}: duplicate trajectory id {traj_id!r}")
                seen.add(traj_id)
                current_id, rows = traj_id, []
            try:
                frame = int(row[1])
            except ValueError:
                raise CorpusFormatError(f"line {lineno}: non-integer frame {row[1]!r}") from None
            rows.append((frame, _parse_float(row[2], "x", lineno), _parse_float(row[3], "y", lineno)))
        flush()
    return trajectories


def _load_jsonl(path) -> list[Trajectory]:
    trajectories = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"line {lineno}: invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict) or "id" not in obj or "points" not in obj:
                raise CorpusFormatError(f"line {lineno}: object must carry 'id' and 'points'")
            try:
                traj = Trajectory(id=str(obj["id"]), points=np.array(obj["points"], dtype=float))
            except (ValueError, TypeError) as exc:
                raise CorpusFormatError(f"line {lineno}: {exc}") from None
            trajectories.append(traj)
    return trajectories


def load_corpus(path, format: str = "csv") -> Corpus:
    """Read a trajectory corpus. `format` is 'csv' or 'jsonl'."""
    if format == "csv":
        trajs = _load_csv(path)
    elif format == "jsonl":
        trajs = _load_jsonl(path)
    else:
        raise ValueError(f"unknown corpus format {format!r}")
    return Corpus(trajectories=tuple(trajs), source=str(path))


def save_corpus(corpus: Corpus, path, format: str = "csv") -> None:
    """Write a corpus; reloading reproduces every coordinate bit-exactly."""
    if format == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for traj in corpus:
                frames = traj.frames if traj.frames is not None else range(len(traj))
                for frame, (x, y) in zip(frames, traj.points):
                    writer.writerow([traj.id, int(frame), repr(float(x)), repr(float(y))])
    elif format == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for traj in corpus:
                obj = {"id": traj.id, "points": [[float(x), float(y)] for x, y in traj.points]}
                fh.write(json.dumps(obj) + "\n")
    else:
        raise ValueError(f"unknown corpus format {format!r}")


def split_train_test(corpus: Corpus, train_fraction: float = 0.5) -> tuple[Corpus, Corpus]:
    """Deterministic split: the first floor(n * fraction) trajectories train."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train fraction must be in (0, 1)")
    cut = int(len(corpus) * train_fraction)
    return (
        Corpus(corpus.trajectories[:cut], source=corpus.source),
        Corpus(corpus.trajectories[cut:], source=corpus.source),
    )


def fold_blocks(corpus: Corpus, n_folds: int) -> list[tuple[Corpus, Corpus]]:
    """Contiguous-block cross-validation folds as (train, test) pairs."""
    if n_folds < 2 or n_folds > len(corpus):
        raise ValueError("fold count must be in [2, corpus size]")
    bounds = [round(i * len(corpus) / n_folds) for i in range(n_folds + 1)]
    folds = []
    for i in range(n_folds):
        lo, hi = bounds[i], bounds[i + 1]
        test = corpus.trajectories[lo:hi]
        train = corpus.trajectories[:lo] + corpus.trajectories[hi:]
        folds.append((Corpus(train, source=corpus.source), Corpus(test, source=corpus.source)))
    return folds
