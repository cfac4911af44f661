"""The Lie algebra built from roots, variation and the Seifert data.

Basis: the k Cartan generators D_1..D_k (variation images of the simple
arcs) followed by one generator g_r per root r in lexicographic order.
Bracket rules:

* [h, h'] = 0 on the Cartan part,
* [D_i, g_b] = (a_i, b) g_b,
* [g_a, g_{-a}] = -var(a),
* [g_a, g_b] = N(a, b) g_{a+b} when a+b is a root, else 0,

with the sign N(a, b) = (-1)^(var(b) . a) read off the intersection matrix.
All structure constants are integers in {0, +-1, +-2} on the root part and
bounded by the root coordinates on the Cartan part; every table is stored
as small dense integer arrays so the verification sweeps vectorize.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._exact import det_exact, is_nonsingular, rank_exact
from .lattice import LieType, cartan_matrix, make_type, seifert_matrix
from .rootsys import RootSystem, enumerate_roots

__all__ = [
    "AlgebraElement",
    "LieAlgebra",
    "JacobiReport",
    "n_sign",
    "build",
    "bracket",
    "check_antisymmetry",
    "check_jacobi",
    "killing_form",
    "is_nondegenerate",
    "sl2_triple",
    "slk_model_check",
    "export_structure_constants",
    "load_structure_constants",
    "structure_constants_payload",
]


def _as_type(t: LieType | str) -> LieType:
    return t if isinstance(t, LieType) else make_type(t)


def n_sign(t: LieType | str, alpha, beta) -> int:
    """Bracket sign N(alpha, beta) = (-1)^(var(beta) . alpha) for two roots."""
    t = _as_type(t)
    B = seifert_matrix(t)
    C = B + B.T
    a = np.asarray(alpha, dtype=np.int64)
    b = np.asarray(beta, dtype=np.int64)
    for v in (a, b):
        if int(v @ C @ v) != 2:
            raise ValueError(f"{tuple(v)} is not a root")
    return -1 if int(b @ B @ a) % 2 else 1


@dataclass(frozen=True)
class AlgebraElement:
    """Sparse integer combination of basis elements, in canonical form."""

    terms: tuple[tuple[int, int], ...]  # (basis index, coefficient), index-sorted

    @staticmethod
    def from_dict(d: dict[int, int]) -> "AlgebraElement":
        return AlgebraElement(tuple(sorted((i, c) for i, c in d.items() if c != 0)))

    def to_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        d = self.to_dict()
        for i, c in other.terms:
            d[i] = d.get(i, 0) + c
        return AlgebraElement.from_dict(d)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(tuple((i, -c) for i, c in self.terms))

    def scaled(self, s: int) -> "AlgebraElement":
        if s == 0:
            return AlgebraElement(())
        return AlgebraElement(tuple((i, s * c) for i, c in self.terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms


ZERO = AlgebraElement(())


@dataclass(frozen=True)
class LieAlgebra:
    """Structure-constant model of the algebra of one ADE type."""

    lie_type: LieType
    root_system: RootSystem = field(repr=False)
    dimension: int
    hg: np.ndarray = field(repr=False)        # hg[i, a] = (a_i, root_a)
    neg: np.ndarray = field(repr=False)        # neg[a] = index of -root_a
    root_sum: np.ndarray = field(repr=False)   # index of root_a + root_b, or -1
    root_sign: np.ndarray = field(repr=False)  # N(root_a, root_b) on summable pairs
    pair: np.ndarray = field(repr=False)       # (root_a, root_b)

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    # -- basis helpers ----------------------------------------------------
    def cartan_gen(self, i: int) -> AlgebraElement:
        """Generator D_i = var(a_i), 1-based."""
        if not 1 <= i <= self.rank:
            raise ValueError("Cartan index out of range")
        return AlgebraElement(((i - 1, 1),))

    def root_gen(self, root) -> AlgebraElement:
        r = tuple(int(x) for x in root)
        if r not in self.root_system.index:
            raise ValueError(f"{r} is not a root")
        return AlgebraElement(((self.rank + self.root_system.index[r], 1),))

    def cartan_element(self, coords) -> AlgebraElement:
        """var of a relative cycle: integer combination of the D_i."""
        c = [int(x) for x in coords]
        if len(c) != self.rank:
            raise ValueError("dimension mismatch")
        return AlgebraElement.from_dict({i: c[i] for i in range(self.rank)})

    def basis_labels(self) -> list[str]:
        labels = [f"h{i + 1}" for i in range(self.rank)]
        labels += ["g[" + ",".join(str(x) for x in r) + "]" for r in self.root_system.roots]
        return labels

    # -- bracket ----------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> AlgebraElement:
        """Bracket of two basis elements by global index."""
        k = self.rank
        n = self.dimension
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError("basis index out of range")
        if i < k and j < k:
            return ZERO
        if i < k:
            coef = int(self.hg[i, j - k])
            return AlgebraElement(((j, coef),)) if coef else ZERO
        if j < k:
            coef = -int(self.hg[j, i - k])
            return AlgebraElement(((i, coef),)) if coef else ZERO
        a, b = i - k, j - k
        if int(self.neg[a]) == b:
            coords = self.root_system.roots[a]
            return AlgebraElement.from_dict({m: -coords[m] for m in range(k)})
        s = int(self.root_sum[a, b])
        if s >= 0:
            return AlgebraElement(((k + s, int(self.root_sign[a, b])),))
        return ZERO


def build(t: LieType | str) -> LieAlgebra:
    """Populate the full structure-constant table for one type."""
    t = _as_type(t)
    rs = enumerate_roots(t)
    B = seifert_matrix(t)
    C = B + B.T
    X = rs.coords
    n_roots = len(rs)
    neg = np.array([rs.index[tuple(int(-x) for x in X[a])] for a in range(n_roots)],
                   dtype=np.int64)
    root_sum = np.full((n_roots, n_roots), -1, dtype=np.int64)
    sums = X[:, None, :] + X[None, :, :]
    for a in range(n_roots):
        for b in range(n_roots):
            root_sum[a, b] = rs.index.get(tuple(int(x) for x in sums[a, b]), -1)
    exponent = X @ B @ X.T  # exponent[b, a] = var(root_b) . root_a
    sign = np.where(exponent.T % 2 == 0, 1, -1).astype(np.int64)
    root_sign = np.where(root_sum >= 0, sign, 0)
    return LieAlgebra(
        lie_type=t,
        root_system=rs,
        dimension=t.rank + n_roots,
        hg=C @ X.T,
        neg=neg,
        root_sum=root_sum,
        root_sign=root_sign,
        pair=X @ C @ X.T,
    )


def bracket(L: LieAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of the basis bracket table."""
    acc: dict[int, int] = {}
    for i, ci in x.terms:
        for j, cj in y.terms:
            for m, c in L.bracket_basis(i, j).terms:
                acc[m] = acc.get(m, 0) + ci * cj * c
    return AlgebraElement.from_dict(acc)


def check_antisymmetry(L: LieAlgebra) -> list[tuple[int, int]]:
    """Basis pairs where [x, y] != -[y, x]; empty on a correct table."""
    bad: list[tuple[int, int]] = []
    summable = L.root_sum >= 0
    skew = L.root_sign + L.root_sign.T
    for a, b in np.argwhere(summable & (skew != 0)):
        bad.append((L.rank + int(a), L.rank + int(b)))
    # Cartan-valued brackets: [g_a, g_{-a}] = -var(a) must negate under swap,
    # which is automatic from linearity of var; verify on coordinates.
    X = L.root_system.coords
    if not np.array_equal(X[L.neg], -X):
        bad.append((-1, -1))
    return bad


@dataclass
class JacobiReport:
    """Outcome of the exhaustive Jacobi sweep."""

    lie_type: LieType
    triples_checked: int
    violations: list[tuple[int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_jacobi(L: LieAlgebra, max_violations: int = 100_000) -> JacobiReport:
    """Exhaustive Jacobi check over every ordered basis triple.

    The sweep is organized by the number of Cartan generators in the triple
    and vectorized per case; all values come from the stored table arrays, so
    a corrupted table is caught.  Violations are reported as basis-index
    triples.
    """
    k = L.rank
    n_roots = len(L.root_system)
    X = L.root_system.coords
    hg, neg, SUM, NS, PAIR = L.hg, L.neg, L.root_sum, L.root_sign, L.pair
    violations: list[tuple[int, int, int]] = []
    checked = 0

    def record(mask: np.ndarray, to_triple) -> None:
        if not np.any(mask):
            return
        for pos in np.argwhere(mask):
            if len(violations) >= max_violations:
                return
            violations.append(to_triple(pos))

    # Case: three Cartan generators. Every bracket vanishes identically.
    checked += k ** 3

    # Case: two Cartan generators h_i, h_j and one root generator.
    # J = (hg[j,a] hg[i,a] - hg[i,a] hg[j,a]) g_a.
    for i in range(k):
        for j in range(k):
            grid = hg[j] * hg[i] - hg[i] * hg[j]
            record(grid != 0, lambda p, i=i, j=j: (i, j, k + int(p[0])))
            checked += n_roots

    # Case: one Cartan generator h_i and two root generators.
    valid = SUM >= 0
    S0 = np.where(valid, SUM, 0)
    for i in range(k):
        g = hg[i]
        grid = g[:, None] * NS - g[None, :] * NS.T - NS * np.where(valid, g[S0], 0)
        grid = np.where(valid, grid, 0)
        record(grid != 0, lambda p, i=i: (i, k + int(p[0]), k + int(p[1])))
        pairs_zero = g + g[neg]
        record(pairs_zero != 0, lambda p, i=i: (i, k + int(p[0]), k + int(neg[p[0]])))
        checked += n_roots * n_roots
    # Case: three root generators, sliced over the third index c.
    arange = np.arange(n_roots)
    is_neg_ab = neg[:, None] == arange[None, :]
    for c in range(n_roots):
        # g-component: every contribution targets g at index of (a + b + c).
        t1 = np.where(is_neg_ab, -PAIR[:, c][:, None], 0)
        m1 = valid & (SUM[S0, c] >= 0)
        t1 = t1 + np.where(m1, NS * NS[S0, c], 0)
        bneg = neg == c
        t2 = np.where(bneg[None, :], -PAIR.T, 0)
        sbc = SUM[:, c]
        vbc = sbc >= 0
        sbc0 = np.where(vbc, sbc, 0)
        m2 = vbc[None, :] & (SUM[sbc0, :] >= 0).T
        t2 = t2 + np.where(m2, NS[:, c][None, :] * NS[sbc0, :].T, 0)
        t3 = np.where((arange == neg[c])[:, None], -PAIR[c, :][None, :], 0)
        sca = SUM[c, :]
        vca = sca >= 0
        sca0 = np.where(vca, sca, 0)
        m3 = vca[:, None] & (SUM[sca0, :] >= 0)
        t3 = t3 + np.where(m3, NS[c, :][:, None] * NS[sca0, :], 0)
        total = t1 + t2 + t3
        record(total != 0, lambda p, c=c: (k + int(p[0]), k + int(p[1]), k + c))
        # Cartan component: fires only when a + b + c = 0 as vectors.
        f1 = np.where(valid & (S0 == neg[c]), NS, 0)
        f2 = np.where((sbc[None, :] == neg[:, None]) & vbc[None, :], NS[:, c][None, :], 0)
        f3 = np.where((sca[:, None] == neg[None, :]) & vca[:, None], NS[c, :][:, None], 0)
        if np.any(f1) or np.any(f2) or np.any(f3):
            bad = np.zeros_like(f1, dtype=bool)
            for d in range(k):
                G = f1 * int(X[c, d]) + f2 * X[:, d][:, None] + f3 * X[:, d][None, :]
                bad |= G != 0
            record(bad, lambda p, c=c: (k + int(p[0]), k + int(p[1]), k + c))
        checked += n_roots * n_roots
    return JacobiReport(L.lie_type, checked, violations)


def _ad_tensor(L: LieAlgebra) -> np.ndarray:
    """Dense ad-action tensor: AD[u] is the matrix of ad(basis_u)."""
    k, n = L.rank, L.dimension
    n_roots = n - k
    AD = np.zeros((n, n, n), dtype=np.int8)
    ar = np.arange(n_roots)
    AD[:k, k + ar, k + ar] = L.hg[:, ar]
    for j in range(k):
        AD[k + ar, k + ar, j] = -L.hg[j, ar]
    X = L.root_system.coords
    AD[k + ar[:, None], np.arange(k)[None, :], k + L.neg[ar][:, None]] = -X[ar]
    summable = np.argwhere(L.root_sum >= 0)
    a, b = summable[:, 0], summable[:, 1]
    AD[k + a, k + L.root_sum[a, b], k + b] = L.root_sign[a, b]
    return AD


def killing_form(L: LieAlgebra) -> np.ndarray:
    """Killing matrix K[u, v] = tr(ad u . ad v) over the canonical basis.

    The trace contraction is run through a float64 matmul; every product is
    bounded by 36 and every sum by dim * 36 << 2^53, so the result is exact
    and cast back to integers.
    """
    AD = _ad_tensor(L)
    n = L.dimension
    flat = AD.reshape(n, n * n).astype(np.float64)
    flat_t = AD.transpose(0, 2, 1).reshape(n, n * n).astype(np.float64)
    K = flat @ flat_t.T
    out = np.rint(K).astype(np.int64)
    if not np.array_equal(out, out.T):
        raise RuntimeError("Killing matrix is not symmetric")
    return out


def is_nondegenerate(L: LieAlgebra | np.ndarray) -> bool:
    """Exact nondegeneracy of the Killing form (det != 0)."""
    K = killing_form(L) if isinstance(L, LieAlgebra) else np.asarray(L)
    return is_nonsingular(K)


def sl2_triple(L: LieAlgebra, alpha) -> tuple[AlgebraElement, AlgebraElement, AlgebraElement]:
    """The triple (e, f, h) = (g_a, g_{-a}, var(a)), with its laws verified."""
    r = tuple(int(x) for x in alpha)
    e = L.root_gen(r)
    f = L.root_gen(tuple(-x for x in r))
    h = L.cartan_element(r)
    if bracket(L, h, e) != e.scaled(2):
        raise RuntimeError(f"[h, e] != 2e for alpha={r}")
    if bracket(L, h, f) != f.scaled(-2):
        raise RuntimeError(f"[h, f] != -2f for alpha={r}")
    if bracket(L, e, f) != -h:
        raise RuntimeError(f"[e, f] != -h for alpha={r}")
    return e, f, h


def _slk_image(L: LieAlgebra, idx: int) -> np.ndarray:
    """Image of a basis element in traceless (k+1) x (k+1) matrices."""
    k = L.rank
    m = np.zeros((k + 1, k + 1), dtype=np.int64)
    if idx < k:
        m[idx, idx] = 1
        m[idx + 1, idx + 1] = -1
        return m
    v = np.array(L.root_system.roots[idx - k])
    nz = np.nonzero(v)[0]
    i, j = int(nz[0]), int(nz[-1]) + 1
    if v.sum() > 0:
        m[i, j] = 1      # positive run i..j-1 -> E_{i,j}
    else:
        m[j, i] = -1     # negative run -> -E_{j,i}
    return m


def slk_model_check(k: int) -> bool:
    """Does the traceless-matrix correspondence preserve every basis bracket?

    Maps D_i to E_ii - E_{i+1,i+1}, the root with support [i, j) to E_{i,j}
    and its negative to -E_{j,i}, then compares the algebra bracket with the
    matrix commutator on all basis pairs and checks the images span.
    """
    if not 1 <= k <= 8:
        raise ValueError("k out of range 1..8")
    L = build(make_type(f"A{k}"))
    images = [_slk_image(L, idx) for idx in range(L.dimension)]
    flat = np.array([m.reshape(-1) for m in images])
    if rank_exact(flat) != L.dimension:
        return False
    for u in range(L.dimension):
        for v in range(L.dimension):
            expected = sum((c * images[m] for m, c in bracket_pairs(L, u, v)),
                           start=np.zeros((k + 1, k + 1), dtype=np.int64))
            commutator = images[u] @ images[v] - images[v] @ images[u]
            if not np.array_equal(expected, commutator):
                return False
    return True


def bracket_pairs(L: LieAlgebra, i: int, j: int) -> tuple[tuple[int, int], ...]:
    """Terms of the basis bracket [i, j] as (index, coefficient) pairs."""
    return L.bracket_basis(i, j).terms


def structure_constants_payload(L: LieAlgebra) -> dict:
    """JSON payload with only the i < j half of the table (antisymmetry implied)."""
    brackets = []
    for i in range(L.dimension):
        for j in range(i + 1, L.dimension):
            terms = L.bracket_basis(i, j).terms
            if terms:
                brackets.append({"i": i, "j": j, "terms": [[m, c] for m, c in terms]})
    return {
        "type": L.lie_type.label,
        "dimension": L.dimension,
        "basis": L.basis_labels(),
        "brackets": brackets,
    }


def export_structure_constants(L: LieAlgebra, sink, fmt: str = "json") -> None:
    """Write the structure constants deterministically as JSON or CSV."""
    payload = structure_constants_payload(L)
    own = isinstance(sink, (str, bytes))
    fh = open(sink, "w", encoding="utf-8") if own else sink
    try:
        if fmt == "json":
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")
        elif fmt == "csv":
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["i", "j", "terms"])
            for row in payload["brackets"]:
                terms = ";".join(f"{m}:{c}" for m, c in row["terms"])
                writer.writerow([row["i"], row["j"], terms])
        else:
            raise ValueError(f"unknown format {fmt!r}")
    finally:
        if own:
            fh.close()


def load_structure_constants(source) -> dict:
    """Parse a JSON export back into its payload dict."""
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8") as fh:
            return json.load(fh)
    return json.load(source)
