"""Metric distance-matrix instances: loading, generation, validation, serialization.

An instance is an n x n symmetric matrix of nonnegative distances with zero
diagonal satisfying the triangle inequality (within a small absolute
tolerance, since floating-point Euclidean instances can miss exactness at
machine precision).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, MetricError, ParseError, ShapeError

EPS_TRI_DEFAULT = 1e-9

GENERATOR_KINDS = ("euclidean", "circle", "random-metric")


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric metric distances between the home venues of ``n`` teams."""

    n: int
    d: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.d, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "d", arr)

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.d, other.d)


@dataclass(frozen=True)
class MetricViolation:
    """One violated matrix invariant with witness indices."""

    kind: str  # diagonal | symmetry | negative | nonfinite | triangle
    indices: tuple[int, ...]
    detail: str


def validate_metric(dm: DistanceMatrix, eps_tri: float = EPS_TRI_DEFAULT) -> list[MetricViolation]:
    """Report every violated invariant of ``dm``; empty list means metric."""
    d = dm.d
    n = dm.n
    out: list[MetricViolation] = []
    for i in range(n):
        if d[i, i] != 0.0:
            out.append(MetricViolation("diagonal", (i,), f"d[{i}][{i}] = {d[i, i]!r} != 0"))
    for i in range(n):
        for j in range(i + 1, n):
            if not (math.isfinite(d[i, j]) and math.isfinite(d[j, i])):
                out.append(MetricViolation("nonfinite", (i, j), f"d[{i}][{j}] not finite"))
                continue
            if d[i, j] != d[j, i]:
                out.append(
                    MetricViolation(
                        "symmetry", (i, j), f"d[{i}][{j}] = {d[i, j]!r} != d[{j}][{i}] = {d[j, i]!r}"
                    )
                )
            if d[i, j] < 0.0:
                out.append(MetricViolation("negative", (i, j), f"d[{i}][{j}] = {d[i, j]!r} < 0"))
    if out:
        return out
    # Triangle inequality, vectorized over the middle vertex.
    via = d[:, :, None] + d[None, :, :]  # via[i, k, j] = d[i][k] + d[k][j]
    best = via.min(axis=1)
    bad = np.argwhere(d > best + eps_tri)
    for i, j in bad:
        k = int(np.argmin(via[i, :, j]))
        out.append(
            MetricViolation(
                "triangle",
                (int(i), int(k), int(j)),
                f"d[{i}][{j}] = {d[i, j]!r} > d[{i}][{k}] + d[{k}][{j}] = {via[i, k, j]!r}",
            )
        )
    return out


def _checked(d: np.ndarray, eps_tri: float) -> DistanceMatrix:
    n = d.shape[0]
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ShapeError(f"matrix is {d.shape}, expected square")
    if n % 2 != 0:
        raise ShapeError(f"n = {n} is odd; a perfect matching of teams requires even n")
    dm = DistanceMatrix(n, d)
    violations = validate_metric(dm, eps_tri)
    if violations:
        v = violations[0]
        raise MetricError(f"{v.kind} violation at {v.indices}: {v.detail}")
    return dm


def load_instance(content: str | bytes, fmt: str = "auto", eps_tri: float = EPS_TRI_DEFAULT) -> DistanceMatrix:
    """Parse a distance matrix from text.

    ``headered-matrix``: first line holds n, then n rows of n numbers.
    ``bare-matrix``: whitespace-separated square matrix, n inferred.
    ``auto`` accepts either (a single leading integer is read as a header).
    """
    if isinstance(content, bytes):
        content = content.decode("utf-8")
    lines = [ln for ln in content.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty input")

    def parse_row(ln: str) -> list[float]:
        try:
            return [float(tok) for tok in ln.split()]
        except ValueError as exc:
            raise ParseError(f"malformed numeric row: {ln!r}") from exc

    rows = [parse_row(ln) for ln in lines]
    headered = fmt == "headered-matrix" or fmt == "headered"
    if fmt in ("auto",) and len(rows[0]) == 1 and len(rows) > 1:
        headered = True
    if headered:
        if len(rows[0]) != 1 or rows[0][0] != int(rows[0][0]):
            raise ParseError("headered format requires a single integer on line 1")
        n = int(rows[0][0])
        rows = rows[1:]
        if len(rows) != n:
            raise ShapeError(f"header says n = {n} but {len(rows)} rows follow")
    else:
        n = len(rows)
    widths = {len(r) for r in rows}
    if widths != {n}:
        raise ShapeError(f"expected {n} columns per row, saw widths {sorted(widths)}")
    return _checked(np.array(rows, dtype=np.float64), eps_tri)


def serialize_instance(dm: DistanceMatrix, headered: bool = True) -> str:
    """Render ``dm`` as text; headered output round-trips bit-exactly."""
    lines = []
    if headered:
        lines.append(str(dm.n))
    for row in dm.d:
        lines.append(" ".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def generate_instance(kind: str, n: int, seed: int) -> DistanceMatrix:
    """Deterministic instance generator for the test corpus.

    euclidean: uniform points in the unit square, pairwise Euclidean distance.
    circle: n equally spaced points on a unit circle, chord distances.
    random-metric: uniform symmetric weights closed under shortest paths.
    """
    if n % 2 != 0 or n < 4:
        raise DomainError(f"n must be even and >= 4, got {n}")
    if kind == "euclidean":
        rng = np.random.default_rng(seed)
        pts = rng.random((n, 2))
        diff = pts[:, None, :] - pts[None, :, :]
        d = np.sqrt((diff * diff).sum(axis=-1))
        np.fill_diagonal(d, 0.0)
        # Shortest-path closure repairs eventual machine-precision triangle slack.
        d = _apsp_closure(np.minimum(d, d.T))
    elif kind == "circle":
        idx = np.arange(n)
        step = np.minimum(np.abs(idx[:, None] - idx[None, :]), n - np.abs(idx[:, None] - idx[None, :]))
        d = 2.0 * np.sin(np.pi * step / n)
        np.fill_diagonal(d, 0.0)
    elif kind == "random-metric":
        rng = np.random.default_rng(seed)
        w = rng.random((n, n))
        w = np.triu(w, 1)
        w = w + w.T
        d = _apsp_closure(w)
    else:
        raise DomainError(f"unknown generator kind {kind!r}; choose from {GENERATOR_KINDS}")
    return DistanceMatrix(n, d)


def _apsp_closure(w: np.ndarray) -> np.ndarray:
    """Floyd-Warshall closure of a symmetric weight matrix (fixed k order)."""
    d = w.copy()
    n = d.shape[0]
    for k in range(n):
        np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :], out=d)
    np.fill_diagonal(d, 0.0)
    return d
