"""Planar wheel models whose oriented segments realize the roots.

The A wheel is a regular (k+1)-gon of punctures; every oriented segment
between punctures is one root, via the potential phi(v_i) = a_1 + .. +
a_{i-1} and class(i -> j) = phi(j) - phi(i).

The D wheel is a regular (2k-2)-gon with vertices labelled counterclockwise
v_1 .. v_{k-1}, v_{-1} .. v_{-(k-1)} plus a center puncture v_0.  Opposite
boundary edges of the polygon are identified in the underlying surface, so a
chord equals its reversed antipode (same direction vector) while the two
parallel spokes through the center stay distinct.  Segment classes again
come from a potential; antipodal chords are excluded by the center puncture.

The E wheels are kept combinatorial: a label (j, m, s) stands for s times
the m-th monodromy image of the j-th projective-basis spoke, which covers
every root exactly once.

The D bracket sign has a purely planar description: orient the two summand
segments so they concatenate, take the right-hand-rule sign of their
direction vectors, and flip it when the closed triangle strictly contains
the center puncture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .lattice import LieType, make_type, projective_basis, seifert_matrix
from .liealg import n_sign
from .rootsys import Root, enumerate_roots, matrix_order, monodromy_matrix

__all__ = [
    "VertexPoint",
    "WheelModel",
    "SegmentClass",
    "build_wheel",
    "segment_class",
    "enumerate_classes",
    "d_geometric_sign",
    "rotation_angle",
    "classes_payload",
]

# Determinant guard for the planar sign tests: the smallest nonzero cross
# product among chords of the regular polygons used here (rank <= 8) is
# ~1e-1, far above double-precision noise.
_GEOM_GUARD = 1e-9


def _as_type(t: LieType | str) -> LieType:
    return t if isinstance(t, LieType) else make_type(t)


@dataclass(frozen=True)
class VertexPoint:
    label: int
    x: float
    y: float


@dataclass(frozen=True)
class WheelModel:
    lie_type: LieType
    vertices: tuple[VertexPoint, ...]
    punctures: tuple[int, ...]
    has_center: bool
    orbit_count: int = 0       # E types only
    orbit_steps: int = 0       # monodromy order on labels
    signed_orbits: bool = False


def _a_vertices(k: int) -> list[VertexPoint]:
    n = k + 1
    return [VertexPoint(i + 1, math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
            for i in range(n)]


def _d_labels(k: int) -> list[int]:
    return [m + 1 if m < k - 1 else -(m - k + 2) for m in range(2 * (k - 1))]


def _d_vertices(k: int) -> list[VertexPoint]:
    labels = _d_labels(k)
    n = 2 * (k - 1)
    pts = [VertexPoint(lab, math.cos(2 * math.pi * m / n), math.sin(2 * math.pi * m / n))
           for m, lab in enumerate(labels)]
    return pts + [VertexPoint(0, 0.0, 0.0)]


def build_wheel(t: LieType | str) -> WheelModel:
    """Planar model for A/D; orbit-label model for the E types."""
    t = _as_type(t)
    if t.family == "A":
        verts = tuple(_a_vertices(t.rank))
        return WheelModel(t, verts, tuple(v.label for v in verts), has_center=False)
    if t.family == "D":
        verts = tuple(_d_vertices(t.rank))
        return WheelModel(t, verts, tuple(v.label for v in verts), has_center=True)
    order = matrix_order(monodromy_matrix(t))
    signed = t.rank in (7, 8)  # E6 orbits already contain the negatives
    return WheelModel(t, (), (), has_center=False,
                      orbit_count=t.rank, orbit_steps=order, signed_orbits=signed)


def _a_potential(t: LieType, label: int) -> np.ndarray:
    v = np.zeros(t.rank, dtype=np.int64)
    v[: label - 1] = 1
    return v


def _d_potential(t: LieType, label: int) -> np.ndarray:
    k = t.rank
    v = np.zeros(k, dtype=np.int64)
    if label == 0:
        return v
    i = abs(label)
    v[0] = 1
    v[2:i + 1] = 1
    if label > 0:
        return v
    s = np.zeros(k, dtype=np.int64)
    s[0] = 1
    s[1] = -1
    return s - v


def segment_class(t: LieType | str, segment: Sequence[int]) -> Root:
    """Root realized by an oriented segment (A/D) or an orbit label (E)."""
    t = _as_type(t)
    if t.family == "A":
        src, dst = segment
        n = t.rank + 1
        if not (1 <= src <= n and 1 <= dst <= n) or src == dst:
            raise ValueError(f"invalid A{t.rank} segment {segment}")
        out = _a_potential(t, dst) - _a_potential(t, src)
        return tuple(int(x) for x in out)
    if t.family == "D":
        src, dst = segment
        valid = set(_d_labels(t.rank)) | {0}
        if src not in valid or dst not in valid:
            raise ValueError(f"invalid D{t.rank} vertex in {segment}")
        if src == dst:
            raise ValueError("degenerate segment")
        if src == -dst:
            raise ValueError("antipodal segments are blocked by the center puncture")
        out = _d_potential(t, dst) - _d_potential(t, src)
        return tuple(int(x) for x in out)
    j, m, s = segment
    model = build_wheel(t)
    if not (1 <= j <= t.rank and 0 <= m < model.orbit_steps and s in (1, -1)):
        raise ValueError(f"invalid E{t.rank} orbit label {segment}")
    if not model.signed_orbits and s != 1:
        raise ValueError(f"E{t.rank} orbit labels are unsigned")
    M = monodromy_matrix(t)
    v = projective_basis(t)[j - 1]
    v = np.linalg.matrix_power(M, m) @ v
    return tuple(int(x) for x in (s * v))


@dataclass(frozen=True)
class SegmentClass:
    """One root together with all the wheel segments realizing it."""

    root: Root
    segments: tuple[tuple[int, ...], ...]


def _d_segments(t: LieType) -> list[tuple[int, int]]:
    labels = [0] + _d_labels(t.rank)
    return [(a, b) for a in labels for b in labels if a != b and a != -b]


def _d_positions(t: LieType) -> dict[int, tuple[float, float]]:
    return {v.label: (v.x, v.y) for v in _d_vertices(t.rank)}


def _d_midpoint_angle(t: LieType, seg: tuple[int, int]) -> float:
    pos = _d_positions(t)
    (x1, y1), (x2, y2) = pos[seg[0]], pos[seg[1]]
    return math.atan2((y1 + y2) / 2, (x1 + x2) / 2) % (2 * math.pi)


_CLASS_CACHE: dict[str, list[SegmentClass]] = {}


def enumerate_classes(t: LieType | str) -> list[SegmentClass]:
    """Segment classes in root order; they biject with the root system."""
    t = _as_type(t)
    if t.label in _CLASS_CACHE:
        return _CLASS_CACHE[t.label]
    rs = enumerate_roots(t)
    groups: dict[Root, list[tuple[int, ...]]] = {}
    if t.family == "A":
        n = t.rank + 1
        for src in range(1, n + 1):
            for dst in range(1, n + 1):
                if src != dst:
                    groups.setdefault(segment_class(t, (src, dst)), []).append((src, dst))
    elif t.family == "D":
        for seg in _d_segments(t):
            groups.setdefault(segment_class(t, seg), []).append(seg)
        for root, segs in groups.items():
            segs.sort(key=lambda s: _d_midpoint_angle(t, s))
    else:
        model = build_wheel(t)
        signs = (1, -1) if model.signed_orbits else (1,)
        M = monodromy_matrix(t)
        Q = projective_basis(t)
        for j in range(1, t.rank + 1):
            v = Q[j - 1].copy()
            for m in range(model.orbit_steps):
                for s in signs:
                    root = tuple(int(x) for x in (s * v))
                    groups.setdefault(root, []).append((j, m, s))
                v = M @ v
    if set(groups) != set(rs.roots):
        raise RuntimeError(f"{t}: segment classes do not biject with the roots")
    out = [SegmentClass(r, tuple(groups[r])) for r in rs.roots]
    _CLASS_CACHE[t.label] = out
    return out


def _orientation(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _contains_origin(t: LieType, tri: tuple[int, int, int]) -> bool:
    if 0 in tri:
        return False  # the center is a vertex, not interior
    pos = _d_positions(t)
    pts = [pos[v] for v in tri]
    signs = []
    for i in range(3):
        s = _orientation(pts[i], pts[(i + 1) % 3], (0.0, 0.0))
        if abs(s) <= _GEOM_GUARD:
            raise RuntimeError(f"degenerate center test for triangle {tri}")
        signs.append(s > 0)
    return signs[0] == signs[1] == signs[2]


def d_geometric_sign(t: LieType | str, alpha, beta) -> int:
    """Planar bracket sign for two summable D roots.

    Picks representatives that concatenate (head of one at the tail of the
    other, in either order), takes the right-hand-rule sign of the ordered
    direction pair (alpha, beta), and negates when the triangle strictly
    contains the center.
    """
    t = _as_type(t)
    if t.family != "D":
        raise ValueError("the planar sign rule is for D types")
    rs = enumerate_roots(t)
    a = tuple(int(x) for x in alpha)
    b = tuple(int(x) for x in beta)
    total = tuple(x + y for x, y in zip(a, b))
    for r in (a, b, total):
        if r not in rs.index:
            raise ValueError(f"{r} is not a root (inputs must be summable roots)")
    classes = {c.root: c.segments for c in enumerate_classes(t)}
    pos = _d_positions(t)
    results = set()
    for ra in classes[a]:
        for rb in classes[b]:
            if ra[1] == rb[0]:
                tri = (ra[0], ra[1], rb[1])
            elif rb[1] == ra[0]:
                tri = (rb[0], rb[1], ra[1])
            else:
                continue
            va = (pos[ra[1]][0] - pos[ra[0]][0], pos[ra[1]][1] - pos[ra[0]][1])
            vb = (pos[rb[1]][0] - pos[rb[0]][0], pos[rb[1]][1] - pos[rb[0]][1])
            cross = va[0] * vb[1] - va[1] * vb[0]
            if abs(cross) <= _GEOM_GUARD:
                raise RuntimeError(f"degenerate orientation for {a}, {b}")
            eps = 1 if cross > 0 else -1
            results.add(-eps if _contains_origin(t, tri) else eps)
    if not results:
        raise RuntimeError(f"no concatenable representatives for {a}, {b}")
    if len(results) != 1:
        raise RuntimeError(f"inconsistent planar signs for {a}, {b}")
    return results.pop()


def rotation_angle(t: LieType | str) -> Fraction:
    """Wheel rotation of the monodromy, as an exact multiple of pi."""
    t = _as_type(t)
    if t.family == "A":
        raise ValueError("the A wheel is not rotated by the monodromy")
    if t.family == "D":
        return Fraction(t.rank, t.rank - 1)
    return {6: Fraction(7, 6), 7: Fraction(10, 9), 8: Fraction(16, 15)}[t.rank]


def classes_payload(t: LieType | str) -> dict:
    """JSON payload: {"type", "classes": [{"root", "segments"}]}."""
    t = _as_type(t)
    return {
        "type": t.label,
        "classes": [
            {"root": list(c.root), "segments": [list(s) for s in c.segments]}
            for c in enumerate_classes(t)
        ],
    }
