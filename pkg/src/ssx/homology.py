"""Integral simplicial homology via the normalized chain complex.

Chains are free abelian groups on nondegenerate simplices; a face that is
degenerate contributes zero.  Boundary matrices are reduced to Smith normal
form with exact integer arithmetic, so ranks and torsion are certified, not
floating-point estimates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .sset import FinSSet


def boundary_matrix(A: FinSSet, n: int) -> list[list[int]]:
    """The matrix of the boundary C_n -> C_{n-1} on nondegenerate simplices.

    Rows are indexed by (n-1)-simplices, columns by n-simplices.
    """
    rows = A.counts[n - 1] if n - 1 <= A.dim else 0
    cols = A.counts[n] if n <= A.dim else 0
    mat = [[0] * cols for _ in range(rows)]
    for idx in range(cols):
        sign = 1
        for w in A.faces[n][idx]:
            if not w.degens:
                mat[w.base.index][idx] += sign
            sign = -sign
    return mat


def smith_invariants(mat: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in divisibility order.

    Classical elementary-operation reduction with pivoting on the entry of
    least absolute value.  Exact integer arithmetic throughout.
    """
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    invariants: list[int] = []
    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = m[i][j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    for j in range(t, cols):
                        m[i][j] -= q * m[t][j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        dirty = True
            # clear row t
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for i in range(t, rows):
                        m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of later entries by m[t][t]
        d = abs(m[t][t])
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, cols):
                m[t][j] += m[offender][j]
            continue
        invariants.append(d)
        t += 1
        if t >= rows or t >= cols:
            break
    return invariants


@dataclass(frozen=True)
class HomologyProfile:
    """Betti numbers and torsion coefficients of H_0 .. H_D."""

    top: int
    ranks: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def group(self, n: int) -> str:
        parts = ["Z"] * self.ranks[n] + [f"Z/{d}" for d in self.torsion[n]]
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return "; ".join(f"H_{n} = {self.group(n)}" for n in range(self.top + 1))


def homology(A: FinSSet, top: int) -> HomologyProfile:
    """Integral homology H_0 .. H_top; needs simplex data through top + 1."""
    A.require_data(top + 1)
    dims = [A.counts[n] if n <= A.dim else 0 for n in range(top + 2)]
    inv: dict[int, list[int]] = {}
    for n in range(1, top + 2):
        if dims[n] == 0 or dims[n - 1] == 0:
            inv[n] = []
        else:
            inv[n] = smith_invariants(boundary_matrix(A, n))
    ranks = []
    torsion = []
    for n in range(top + 1):
        rank_dn = len(inv[n]) if n >= 1 else 0
        kernel = dims[n] - rank_dn
        rank_dn1 = len(inv[n + 1])
        ranks.append(kernel - rank_dn1)
        torsion.append(tuple(d for d in inv[n + 1] if d > 1))
    return HomologyProfile(top, tuple(ranks), tuple(torsion))
