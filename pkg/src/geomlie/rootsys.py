"""Geometric root systems and the operators acting on them.

Roots are the integer vectors of squared length 2 for the pairing C = B+B^t,
generated by closing the simple basis under its own reflections.  The
monodromy operator is -c for the Coxeter element c (equivalently B^{-1}B^t),
and c itself plays the role of the monodromy composed with an orientation
reversal.  Orbit decompositions under either operator reproduce the
singularity-side orbit tables, and graph foldings project the pairing onto
automorphism orbits to produce the non-simply-laced Cartan matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._exact import inv_unimodular
from .lattice import LieType, cartan_matrix, make_type, projective_basis, seifert_matrix

__all__ = [
    "Root",
    "RootSystem",
    "OrbitDecomposition",
    "FoldingSpec",
    "FreenessError",
    "enumerate_roots",
    "reflect",
    "coxeter_matrix",
    "monodromy_matrix",
    "matrix_order",
    "sT_matrices",
    "verify_sT_identity",
    "orbit_decomposition",
    "fold",
    "classical_folding",
    "CLASSICAL_FOLDINGS",
    "rootsystem_payload",
]

Root = tuple[int, ...]


class FreenessError(RuntimeError):
    """Raised when an orbit decomposition required to be free is not."""


def _as_type(t: LieType | str) -> LieType:
    return t if isinstance(t, LieType) else make_type(t)


@dataclass(frozen=True)
class RootSystem:
    """The finite set of roots of one type, in lexicographic order."""

    lie_type: LieType
    roots: tuple[Root, ...]
    index: dict[Root, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, v) -> bool:
        return tuple(int(x) for x in v) in self.index

    @property
    def coords(self) -> np.ndarray:
        return np.array(self.roots, dtype=np.int64)


_ROOTSYS_CACHE: dict[str, RootSystem] = {}


def enumerate_roots(t: LieType | str) -> RootSystem:
    """All vectors with (v, v) = 2, by reflection closure of the simple basis."""
    t = _as_type(t)
    if t.label in _ROOTSYS_CACHE:
        return _ROOTSYS_CACHE[t.label]
    C = cartan_matrix(t)
    k = t.rank
    eye = np.eye(k, dtype=np.int64)
    seen: set[Root] = set()
    frontier: list[Root] = []
    for i in range(k):
        for v in (tuple(eye[i]), tuple(-eye[i])):
            root = tuple(int(x) for x in v)
            seen.add(root)
            frontier.append(root)
    while frontier:
        v = np.array(frontier.pop(), dtype=np.int64)
        images = v[None, :] - (C @ v)[:, None] * eye
        for row in images:
            w = tuple(int(x) for x in row)
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    roots = tuple(sorted(seen))
    if len(roots) != t.root_count:
        raise RuntimeError(f"{t}: expected {t.root_count} roots, found {len(roots)}")
    for r in roots:
        arr = np.array(r)
        if not (np.all(arr >= 0) or np.all(arr <= 0)):
            raise RuntimeError(f"{t}: root {r} has mixed signs")
    rs = RootSystem(t, roots, {r: i for i, r in enumerate(roots)})
    _ROOTSYS_CACHE[t.label] = rs
    return rs


def reflect(t: LieType | str, alpha, beta) -> Root:
    """Reflection s_alpha(beta) = beta - (alpha, beta) alpha for a root alpha."""
    t = _as_type(t)
    C = cartan_matrix(t)
    a = np.asarray(alpha, dtype=np.int64)
    b = np.asarray(beta, dtype=np.int64)
    if a.shape != (t.rank,) or b.shape != (t.rank,):
        raise ValueError("dimension mismatch")
    if int(a @ C @ a) != 2:
        raise ValueError("alpha is not a root: (alpha, alpha) != 2")
    out = b - int(a @ C @ b) * a
    return tuple(int(x) for x in out)


def _reflection_matrix(C: np.ndarray, i: int) -> np.ndarray:
    k = C.shape[0]
    R = np.eye(k, dtype=np.int64)
    R[i, :] -= C[i, :]
    return R


def coxeter_matrix(t: LieType | str) -> np.ndarray:
    """Matrix of c = s_1 ... s_k in the simple basis (columns are images)."""
    t = _as_type(t)
    C = cartan_matrix(t)
    M = np.eye(t.rank, dtype=np.int64)
    for i in range(t.rank):
        M = M @ _reflection_matrix(C, i)
    return M


def monodromy_matrix(t: LieType | str, basis: str = "simple") -> np.ndarray:
    """Monodromy operator -c, in the simple or the projective basis."""
    t = _as_type(t)
    M = -coxeter_matrix(t)
    if basis == "simple":
        return M
    if basis == "projective":
        QT = projective_basis(t).T
        return inv_unimodular(QT) @ M @ QT
    raise ValueError(f"unknown basis {basis!r}")


def matrix_order(m, cap: int = 256) -> int:
    """Smallest positive n with m^n = I."""
    arr = np.asarray(m, dtype=np.int64)
    eye = np.eye(arr.shape[0], dtype=np.int64)
    power = arr.copy()
    for n in range(1, cap + 1):
        if np.array_equal(power, eye):
            return n
        power = power @ arr
    raise RuntimeError(f"matrix order exceeds {cap}")


def sT_matrices(t: LieType | str, lam: int) -> tuple[np.ndarray, np.ndarray]:
    """Reflection matrix S_lam and Picard-Lefschetz matrix T_lam (lam is 1-based).

    S_lam = I minus the lam-th row of B + B^t inserted at row lam;
    T_lam = I minus the lam-th row of B - B^t inserted at row lam.
    """
    t = _as_type(t)
    if not 1 <= lam <= t.rank:
        raise ValueError(f"index {lam} out of range 1..{t.rank}")
    B = seifert_matrix(t)
    i = lam - 1
    S = np.eye(t.rank, dtype=np.int64)
    T = np.eye(t.rank, dtype=np.int64)
    S[i, :] -= (B + B.T)[i, :]
    T[i, :] -= (B - B.T)[i, :]
    return S, T


def verify_sT_identity(t: LieType | str) -> bool:
    """Check S_1 ... S_k == -(T_1 ... T_k) exactly."""
    t = _as_type(t)
    S = np.eye(t.rank, dtype=np.int64)
    T = np.eye(t.rank, dtype=np.int64)
    for lam in range(1, t.rank + 1):
        Sl, Tl = sT_matrices(t, lam)
        S = S @ Sl
        T = T @ Tl
    return np.array_equal(S, -T)


_OPERATORS = {"monodromy": "monodromy", "coxeter_bar": "coxeter_bar"}


@dataclass(frozen=True)
class OrbitDecomposition:
    """Partition of the root system under an operator's iteration."""

    lie_type: LieType
    operator: str
    operator_order: int
    orbits: tuple[tuple[int, ...], ...]
    root_system: RootSystem = field(repr=False)

    @property
    def is_free(self) -> bool:
        return all(len(o) == self.operator_order for o in self.orbits)

    def orbit_roots(self) -> tuple[tuple[Root, ...], ...]:
        return tuple(tuple(self.root_system.roots[i] for i in orbit) for orbit in self.orbits)

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "order": self.operator_order,
            "orbits": [list(o) for o in self.orbits],
        }


def orbit_decomposition(t: LieType | str, operator: str = "monodromy",
                        require_free: bool = True) -> OrbitDecomposition:
    """Decompose the root system into orbits of the chosen operator.

    ``operator`` is ``"monodromy"`` for -c or ``"coxeter_bar"`` for c.  With
    ``require_free`` a non-free action raises :class:`FreenessError`; the only
    such case in rank <= 8 is the A5 monodromy, whose three diameter classes
    and their negatives close up after 3 of the 6 steps.
    """
    t = _as_type(t)
    if operator not in _OPERATORS:
        raise ValueError(f"unknown operator {operator!r}")
    rs = enumerate_roots(t)
    M = monodromy_matrix(t) if operator == "monodromy" else coxeter_matrix(t)
    order = matrix_order(M)
    X = rs.coords
    images = X @ M.T  # row i is M @ roots[i]
    step = np.array([rs.index[tuple(int(x) for x in row)] for row in images])
    seen = np.zeros(len(rs), dtype=bool)
    orbits: list[tuple[int, ...]] = []
    for start in range(len(rs)):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        cur = int(step[start])
        while cur != start:
            orbit.append(cur)
            seen[cur] = True
            cur = int(step[cur])
        orbits.append(tuple(orbit))
    dec = OrbitDecomposition(t, operator, order, tuple(orbits), rs)
    if require_free and not dec.is_free:
        sizes = sorted({len(o) for o in orbits})
        raise FreenessError(
            f"{t}: {operator} action is not free (orbit sizes {sizes}, order {order})")
    return dec


@dataclass(frozen=True)
class FoldingSpec:
    """A graph automorphism of the simple basis and its target label.

    ``permutation`` maps 1-based node i to permutation[i-1]; its cycles are
    the folded orbits.  Non-involutive automorphisms are allowed (D4 -> G2
    uses a 3-cycle).
    """

    source: LieType
    permutation: tuple[int, ...]
    target_name: str = ""


def _perm_orbits(perm: tuple[int, ...]) -> list[tuple[int, ...]]:
    k = len(perm)
    seen = [False] * k
    orbits = []
    for i in range(k):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = perm[i] - 1
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = perm[j] - 1
        orbits.append(tuple(sorted(cyc)))
    return sorted(orbits)


def fold(spec: FoldingSpec) -> np.ndarray:
    """Fold the Cartan matrix along the automorphism orbits.

    The folded entry on orbit pair (A, B) is the sum of C[a][b0] over a in A
    for a fixed b0 in B; the two folding axioms (orbit members pairwise
    orthogonal, sum independent of the b0 chosen) are validated and a
    violation raises ValueError.
    """
    t = spec.source
    k = t.rank
    perm = spec.permutation
    if sorted(perm) != list(range(1, k + 1)):
        raise ValueError("permutation must be a bijection of 1..k")
    C = cartan_matrix(t)
    for i in range(k):
        for j in range(k):
            if C[perm[i] - 1, perm[j] - 1] != C[i, j]:
                raise ValueError("permutation does not preserve the pairing")
    orbits = _perm_orbits(perm)
    for orb in orbits:
        for a in orb:
            for b in orb:
                if a != b and C[a, b] != 0:
                    raise ValueError(
                        f"folding axiom violated: nodes {a + 1},{b + 1} in one orbit are adjacent")
    n = len(orbits)
    out = np.zeros((n, n), dtype=np.int64)
    for A in range(n):
        for Bi in range(n):
            sums = {int(sum(C[a, b] for a in orbits[A])) for b in orbits[Bi]}
            if len(sums) != 1:
                raise ValueError("folded entry depends on the representative; not a folding")
            out[A, Bi] = sums.pop()
    return out


def _classical_spec(name: str) -> FoldingSpec:
    name = name.upper().replace(" ", "")
    src_label, _, dst_label = name.partition(":")
    if not dst_label:
        raise ValueError("folding spec must look like 'E6:F4'")
    src = make_type(src_label)
    fam, rank = dst_label[0], int(dst_label[1:] or 0)
    if fam == "B" and src.family == "D" and src.rank == rank + 1:
        perm = [2, 1] + list(range(3, src.rank + 1))
    elif fam == "C" and src.family == "A" and src.rank == 2 * rank - 1:
        perm = [src.rank + 1 - i for i in range(1, src.rank + 1)]
    elif dst_label == "F4" and src.label == "E6":
        perm = [3, 4, 1, 2, 5, 6]
    elif dst_label == "G2" and src.label == "D4":
        perm = [2, 4, 3, 1]
    else:
        raise ValueError(f"unsupported classical folding {name!r}")
    return FoldingSpec(src, tuple(perm), dst_label)


def classical_folding(name: str) -> FoldingSpec:
    """Named folding spec: 'D5:B4', 'A5:C3', 'E6:F4' or 'D4:G2'."""
    return _classical_spec(name)


CLASSICAL_FOLDINGS = tuple(
    ["D%d:B%d" % (k + 1, k) for k in range(3, 8)]
    + ["A%d:C%d" % (2 * k - 1, k) for k in (2, 3, 4)]
    + ["E6:F4", "D4:G2"]
)


def rootsystem_payload(rs: RootSystem) -> dict:
    """JSON payload: {"type", "cartan", "roots"}."""
    C = cartan_matrix(rs.lie_type)
    return {
        "type": rs.lie_type.label,
        "cartan": [[int(x) for x in row] for row in C],
        "roots": [list(r) for r in rs.roots],
    }
