"""Exact integer matrices: Smith normal form, kernels, Hermite bases, minors.

Everything runs on Python ints, so there is no overflow however large the
intermediate pivots grow.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotSquare

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose()
        out = [[sum(a * b for a, b in zip(self.row(i), ot.row(j))) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal(self) -> Vector:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SnfResult:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def invariants(self) -> Vector:
        return self.S.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d != 0)


def _row_axpy(rows, dst, src, q):
    """rows[dst] -= q * rows[src]"""
    r_d, r_s = rows[dst], rows[src]
    for k, x in enumerate(r_s):
        if x:
            r_d[k] -= q * x


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """U M V = S with U, V unimodular and S = diag(d_1 | d_2 | ...), d_i >= 0.

    Pivots on the smallest nonzero |entry| of the remaining block.
    """
    m, n = M.rows, M.cols
    A = M.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Vt = [[int(i == j) for j in range(n)] for i in range(n)]   # rows are columns of V

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        Vt[i], Vt[j] = Vt[j], Vt[i]

    def col_axpy(dst, src, q):
        for r in A:
            if r[src]:
                r[dst] -= q * r[src]
        _row_axpy(Vt, dst, src, q)

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        while True:
            p = A[t][t]
            stray = None
            for i in range(t + 1, m):
                x = A[i][t]
                if x:
                    q = x // p
                    _row_axpy(A, i, t, q)
                    _row_axpy(U, i, t, q)
                    if A[i][t] and (stray is None or abs(A[i][t]) < abs(A[stray][t])):
                        stray = i
            if stray is not None:
                swap_rows(t, stray)
                continue
            for j in range(t + 1, n):
                x = A[t][j]
                if x:
                    col_axpy(j, t, x // p)
                    if A[t][j] and (stray is None or abs(A[t][j]) < abs(A[t][stray])):
                        stray = j
            if stray is not None:
                swap_cols(t, stray)
                continue
            if abs(p) != 1:
                bad = next((i for i in range(t + 1, m)
                            if any(x % p for x in A[i][t + 1:])), None)
                if bad is not None:
                    # pull the offending row into the pivot row and re-reduce
                    _row_axpy(A, t, bad, -1)
                    _row_axpy(U, t, bad, -1)
                    continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    V = [list(col) for col in zip(*Vt)] if n else []
    return SnfResult(IntMatrix.from_rows(U, m), IntMatrix.from_rows(A, n),
                     IntMatrix.from_rows(V, n))


def check_snf(M: IntMatrix, res: SnfResult) -> None:
    """Assert every SnfResult postcondition; used by the test suite."""
    assert res.U @ M @ res.V == res.S
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    assert res.S.is_diagonal()
    d = res.invariants
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)


def kernel_basis(M: IntMatrix) -> list[Vector]:
    """A Z-basis of {v : M v = 0}, in Hermite form (so the output is canonical)."""
    if M.rows == 0:
        return [tuple(int(i == j) for j in range(M.cols)) for i in range(M.cols)]
    res = smith_normal_form(M)
    r = res.rank
    V = res.V
    raw = [tuple(V[i, j] for i in range(M.cols)) for j in range(r, M.cols)]
    return hermite_basis(raw)


def hermite_basis(vectors: Iterable[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Zero rows are dropped; pivots are positive and entries above each pivot are
    reduced into [0, pivot).  Two generating sets span the same lattice iff
    their Hermite bases are equal.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        zero = [r for r in rows if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for k in range(col, n):
                    r[k] -= q * piv[k]
            zero.extend(r for r in nz[1:] if not r[col])
            nz = [piv] + [r for r in nz[1:] if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        rows = [r for r in zero if any(r)]
        col += 1
    return _reduce_above(out)


def _reduce_above(rows: list[list[int]]) -> list[Vector]:
    pivots = [next(k for k, x in enumerate(r) if x) for r in rows]
    for i, (r, c) in enumerate(zip(rows, pivots)):
        for j in range(i):
            q = rows[j][c] // r[c]
            if q:
                rows[j] = [a - q * b for a, b in zip(rows[j], r)]
    return [tuple(r) for r in rows]


def in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the Z-span of ``basis``."""
    h = hermite_basis(basis)
    v = list(v)
    for r in h:
        c = next(k for k, x in enumerate(r) if x)
        if v[c] % r[c]:
            return False
        q = v[c] // r[c]
        if q:
            v = [a - q * b for a, b in zip(v, r)]
    return not any(v)


def same_lattice(a: Iterable[Sequence[int]], b: Iterable[Sequence[int]]) -> bool:
    return hermite_basis(a) == hermite_basis(b)


def det(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise NotSquare(f"{M.rows}x{M.cols} matrix has no determinant")
    n = M.rows
    if n == 0:
        return 1
    A = M.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def minor_abs_det(M: IntMatrix, drop_row: int, drop_col: int) -> int:
    if M.rows != M.cols:
        raise NotSquare(f"{M.rows}x{M.cols} matrix has no first minors")
    rows = [[x for j, x in enumerate(M.row(i)) if j != drop_col]
            for i in range(M.rows) if i != drop_row]
    return abs(det(IntMatrix.from_rows(rows, M.cols - 1)))


def rank(M: IntMatrix) -> int:
    return smith_normal_form(M).rank
