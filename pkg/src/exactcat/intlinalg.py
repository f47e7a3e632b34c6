"""Exact linear algebra over the integers and prime fields.

Everything downstream (kernels, cokernels, pushouts, homotopy solving)
reduces to the primitives in this module: Smith normal form with
unimodular transforms, Hermite bases for lattices, exact solving of
integer linear systems and congruence systems, and Gaussian elimination
modulo a prime.  All matrices are immutable grids of unbounded Python
integers; there is no floating point anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence


class DimensionMismatch(ValueError):
    """Shapes of the operands do not line up."""


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


@dataclass(frozen=True)
class IntMatrix:
    """Immutable row-major integer matrix; 0xN and Nx0 shapes are legal."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimension")
        if len(self.entries) != self.rows:
            raise DimensionMismatch("row count does not match entry grid")
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged entry grid")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return IntMatrix(len(data), cols, data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @staticmethod
    def diagonal(values: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        values = list(values)
        r = rows if rows is not None else len(values)
        c = cols if cols is not None else len(values)
        return IntMatrix(r, c, tuple(
            tuple(values[i] if i == j and i < len(values) else 0 for j in range(c))
            for i in range(r)))

    @staticmethod
    def column(values: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(values), 1, tuple((int(v),) for v in values))

    @staticmethod
    def hstack(*mats: "IntMatrix") -> "IntMatrix":
        if not mats:
            raise DimensionMismatch("hstack of nothing")
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise DimensionMismatch("hstack with differing row counts")
        data = tuple(tuple(x for m in mats for x in m.entries[i]) for i in range(rows))
        return IntMatrix(rows, sum(m.cols for m in mats), data)

    @staticmethod
    def vstack(*mats: "IntMatrix") -> "IntMatrix":
        if not mats:
            raise DimensionMismatch("vstack of nothing")
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise DimensionMismatch("vstack with differing column counts")
        data = tuple(row for m in mats for row in m.entries)
        return IntMatrix(sum(m.rows for m in mats), cols, data)

    @staticmethod
    def block_diag(*mats: "IntMatrix") -> "IntMatrix":
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        data = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                row = data[r0 + i]
                ent = m.entries[i]
                for j in range(m.cols):
                    row[c0 + j] = ent[j]
            r0 += m.rows
            c0 += m.cols
        return IntMatrix(rows, cols, tuple(tuple(r) for r in data))

    @staticmethod
    def kron(a: "IntMatrix", b: "IntMatrix") -> "IntMatrix":
        data = []
        for i in range(a.rows):
            for k in range(b.rows):
                row = []
                for j in range(a.cols):
                    aij = a.entries[i][j]
                    row.extend(aij * x for x in b.entries[k])
                data.append(tuple(row))
        return IntMatrix(a.rows * b.rows, a.cols * b.cols, tuple(data))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(-a for a in row) for row in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(k * a for a in row) for row in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"matrix product shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = other.transpose().entries
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries)
        return IntMatrix(self.rows, other.cols, data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    # -- accessors ----------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def column_at(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def take_columns(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix(self.rows, len(idx),
                         tuple(tuple(row[j] for j in idx) for row in self.entries))

    def take_rows(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix(len(idx), self.cols, tuple(self.entries[i] for i in idx))

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.entries)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def max_abs(self) -> int:
        return max((abs(a) for row in self.entries for a in row), default=0)

    def __repr__(self) -> str:  # compact, for test failure readability
        if self.rows == 0 or self.cols == 0:
            return f"IntMatrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(a) for a in row) for row in self.entries)
        return f"IntMatrix[{body}]"


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V = D with U, V unimodular and D a non-negative divisibility chain."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D.entries[i][i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)

    def check(self, a: IntMatrix) -> bool:
        return self.U @ a @ self.V == self.D


def _swap_rows(m: list[list[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: list[list[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _addmul_row(m: list[list[int]], dst: int, src: int, k: int) -> None:
    if k:
        md, ms = m[dst], m[src]
        for j in range(len(md)):
            md[j] += k * ms[j]


def _addmul_col(m: list[list[int]], dst: int, src: int, k: int) -> None:
    if k:
        for row in m:
            row[dst] += k * row[src]


def _negate_row(m: list[list[int]], i: int) -> None:
    m[i] = [-x for x in m[i]]


@lru_cache(maxsize=None)
def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Diagonalize ``a`` as U @ a @ V = D.

    Pivoting always selects the entry of smallest nonzero absolute value in
    the remaining block, which keeps the coefficient growth moderate, and
    the routine is fully deterministic so downstream presentations are
    reproducible bit for bit.
    """
    r, c = a.rows, a.cols
    d = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def pivot_search(t: int) -> Optional[tuple[int, int]]:
        best = None
        best_abs = None
        for i in range(t, r):
            di = d[i]
            for j in range(t, c):
                x = di[j]
                if x:
                    ax = abs(x)
                    if best_abs is None or ax < best_abs:
                        best, best_abs = (i, j), ax
                        if ax == 1:
                            return best
        return best

    t = 0
    limit = min(r, c)
    while t < limit:
        pos = pivot_search(t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            _swap_rows(d, t, i)
            _swap_rows(u, t, i)
        if j != t:
            _swap_cols(d, t, j)
            _swap_cols(v, t, j)
        while True:
            # Clear column t with row operations, restarting on a smaller remainder.
            restart = False
            for i in range(r):
                if i != t and d[i][t]:
                    q = d[i][t] // d[t][t]
                    _addmul_row(d, i, t, -q)
                    _addmul_row(u, i, t, -q)
                    if d[i][t]:
                        _swap_rows(d, t, i)
                        _swap_rows(u, t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(c):
                if j != t and d[t][j]:
                    q = d[t][j] // d[t][t]
                    _addmul_col(d, j, t, -q)
                    _addmul_col(v, j, t, -q)
                    if d[t][j]:
                        _swap_cols(d, t, j)
                        _swap_cols(v, t, j)
                        restart = True
                        break
            if restart:
                continue
            if all(d[i][t] == 0 for i in range(r) if i != t) and \
               all(d[t][j] == 0 for j in range(c) if j != t):
                break
        t += 1

    # Sign normalization.
    for i in range(limit):
        if d[i][i] < 0:
            _negate_row(d, i)
            _negate_row(u, i)

    # Enforce the divisibility chain d_i | d_{i+1} by 2x2 gcd repairs.
    changed = True
    while changed:
        changed = False
        for i in range(limit - 1):
            di, dj = d[i][i], d[i + 1][i + 1]
            if di and dj % di == 0:
                continue
            if di == 0 and dj == 0:
                continue
            if di == 0:
                # Zero must come last: swap the two diagonal slots.
                _swap_rows(d, i, i + 1)
                _swap_rows(u, i, i + 1)
                _swap_cols(d, i, i + 1)
                _swap_cols(v, i, i + 1)
                changed = True
                continue
            # Fold slot i+1 into slot i: col_i += col_{i+1}, then gcd dance.
            _addmul_col(d, i, i + 1, 1)
            _addmul_col(v, i, i + 1, 1)
            a_, b_ = d[i][i], d[i + 1][i]
            g, x, y = _xgcd(a_, b_)
            # Row combination (x, y; -b/g, a/g) on rows i, i+1 is unimodular.
            ai, bi = a_ // g, b_ // g
            ri, rj = d[i], d[i + 1]
            d[i] = [x * p + y * q for p, q in zip(ri, rj)]
            d[i + 1] = [-bi * p + ai * q for p, q in zip(ri, rj)]
            ri, rj = u[i], u[i + 1]
            u[i] = [x * p + y * q for p, q in zip(ri, rj)]
            u[i + 1] = [-bi * p + ai * q for p, q in zip(ri, rj)]
            # Clear the off-diagonal remainder in column i+1 / row i.
            q2 = d[i][i + 1] // d[i][i] if d[i][i] else 0
            _addmul_col(d, i + 1, i, -q2)
            _addmul_col(v, i + 1, i, -q2)
            if d[i + 1][i + 1] < 0:
                _negate_row(d, i + 1)
                _negate_row(u, i + 1)
            if d[i][i] < 0:
                _negate_row(d, i)
                _negate_row(u, i)
            changed = True

    um = IntMatrix.from_rows(u, cols=r)
    vm = IntMatrix.from_rows(v, cols=c)
    dm = IntMatrix.from_rows(d, cols=c) if r else IntMatrix.zeros(0, c)
    return SmithDecomposition(um, dm, vm)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular square matrix (U A V = I gives A^-1 = V U)."""
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices can be unimodular")
    snf = smith_normal_form(m)
    if snf.D != IntMatrix.identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return snf.V @ snf.U


@lru_cache(maxsize=None)
def column_hnf_transform(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite basis with its unimodular transform: a @ V = [H | 0].

    Unlike full Smith reduction, Hermite elimination keeps entries reduced
    modulo the pivots, which is what makes solving large assembled systems
    feasible; the kernel of ``a`` is spanned by the trailing columns of V.
    """
    n, c = a.rows, a.cols
    cols = [list(a.column_at(j)) for j in range(c)]
    vcols = [[1 if i == j else 0 for i in range(c)] for j in range(c)]
    fixed = 0
    for r in range(n):
        while True:
            live = [j for j in range(fixed, c) if cols[j][r]]
            if len(live) <= 1:
                break
            live.sort(key=lambda j: (abs(cols[j][r]), j))
            j0 = live[0]
            for j in live[1:]:
                q = cols[j][r] // cols[j0][r]
                if q:
                    cols[j] = [x - q * y for x, y in zip(cols[j], cols[j0])]
                    vcols[j] = [x - q * y for x, y in zip(vcols[j], vcols[j0])]
        live = [j for j in range(fixed, c) if cols[j][r]]
        if not live:
            continue
        j0 = live[0]
        cols[fixed], cols[j0] = cols[j0], cols[fixed]
        vcols[fixed], vcols[j0] = vcols[j0], vcols[fixed]
        if cols[fixed][r] < 0:
            cols[fixed] = [-x for x in cols[fixed]]
            vcols[fixed] = [-x for x in vcols[fixed]]
        piv = cols[fixed][r]
        for j in range(fixed):
            q = cols[j][r] // piv
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[fixed])]
                vcols[j] = [x - q * y for x, y in zip(vcols[j], vcols[fixed])]
        fixed += 1
    h = IntMatrix(n, fixed, tuple(tuple(cols[j][i] for j in range(fixed)) for i in range(n)))
    v = IntMatrix(c, c, tuple(tuple(vcols[j][i] for j in range(c)) for i in range(c)))
    return h, v


@lru_cache(maxsize=None)
def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the integer kernel lattice {x : a @ x = 0}."""
    h, v = column_hnf_transform(a)
    return v.take_columns(range(h.cols, a.cols))


def column_hnf(a: IntMatrix) -> IntMatrix:
    """Canonical column Hermite basis of the lattice spanned by the columns.

    Pivots are positive, pivot rows strictly increase, and the entries of
    earlier columns in a pivot row are reduced into [0, pivot).  Zero
    columns are dropped, so the result is a canonical basis.
    """
    return column_hnf_transform(a)[0]


def saturation(a: IntMatrix) -> IntMatrix:
    """Canonical basis of the saturation {x : k x in col(a) for some k != 0}."""
    snf = smith_normal_form(a)
    rank = snf.rank
    uinv = unimodular_inverse(snf.U)
    return column_hnf(uinv.take_columns(range(rank)))


def reduce_columns_mod_lattice(m: IntMatrix, lattice_gens: IntMatrix) -> IntMatrix:
    """Canonically reduce each column of ``m`` modulo the lattice."""
    if lattice_gens.cols == 0:
        return m
    h = column_hnf(lattice_gens)
    if h.cols == 0:
        return m
    pivots = []
    for j in range(h.cols):
        for i in range(h.rows):
            if h.entries[i][j]:
                pivots.append((i, j))
                break
    cols = []
    for j in range(m.cols):
        v = list(m.column_at(j))
        for (pr, pc) in pivots:
            piv = h.entries[pr][pc]
            q = v[pr] // piv
            if q:
                for i in range(m.rows):
                    v[i] -= q * h.entries[i][pc]
        cols.append(v)
    return IntMatrix(m.rows, m.cols, tuple(tuple(c[i] for c in cols) for i in range(m.rows)))


class _Solver:
    """Cached Hermite-backed solver for A x = b over the integers.

    Hermite elimination (rather than full Smith reduction) is used here
    because it keeps coefficients reduced modulo the pivots, which matters
    for the large Kronecker-assembled systems of the homotopy and
    splitting solvers.
    """

    def __init__(self, a: IntMatrix):
        self.a = a
        self.h, self.v = column_hnf_transform(a)
        self.pivots: list[tuple[int, int]] = []
        for j in range(self.h.cols):
            for i in range(a.rows):
                if self.h.entries[i][j]:
                    self.pivots.append((i, j))
                    break

    @property
    def kernel(self) -> IntMatrix:
        return self.v.take_columns(range(self.h.cols, self.a.cols))

    def solve(self, b: Sequence[int]) -> Optional[tuple[int, ...]]:
        a = self.a
        if len(b) != a.rows:
            raise DimensionMismatch("right-hand side length mismatch")
        resid = list(b)
        y = [0] * self.h.cols
        for (r, j) in self.pivots:
            piv = self.h.entries[r][j]
            if resid[r] % piv:
                return None
            q = resid[r] // piv
            y[j] = q
            if q:
                for i in range(r, a.rows):
                    resid[i] -= q * self.h.entries[i][j]
        if any(resid):
            return None
        return tuple(sum(self.v.entries[i][k] * y[k] for k in range(self.h.cols))
                     for i in range(a.cols))

    def sample_solution(self, b: Sequence[int], rng: random.Random,
                        amplitude: int = 2) -> Optional[tuple[int, ...]]:
        x = self.solve(b)
        if x is None:
            return None
        k = self.kernel
        if k.cols == 0:
            return x
        coeffs = [rng.randint(-amplitude, amplitude) for _ in range(k.cols)]
        return tuple(x[i] + sum(k.entries[i][j] * coeffs[j] for j in range(k.cols))
                     for i in range(len(x)))


@lru_cache(maxsize=None)
def _solver(a: IntMatrix) -> _Solver:
    return _Solver(a)


def solve_integer(a: IntMatrix, b: Sequence[int] | IntMatrix) -> Optional[tuple[int, ...]]:
    """Some integer solution of a @ x = b, or None when none exists."""
    if isinstance(b, IntMatrix):
        if b.cols != 1:
            raise DimensionMismatch("right-hand side must be a column")
        b = b.column_at(0)
    return _solver(a).solve(tuple(b))


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^ambient_rank spanned by the generator columns."""

    ambient_rank: int
    generators: IntMatrix

    def __post_init__(self) -> None:
        if self.generators.rows != self.ambient_rank:
            raise DimensionMismatch("lattice generators live in the wrong ambient rank")

    @staticmethod
    def spanned_by(generators: IntMatrix) -> "Lattice":
        return Lattice(generators.rows, generators)

    def basis(self) -> IntMatrix:
        return column_hnf(self.generators)

    def rank(self) -> int:
        return self.basis().cols


def lattice_membership(v: Sequence[int] | IntMatrix, lattice: Lattice) -> bool:
    """True iff v is an integer combination of the lattice generators."""
    if isinstance(v, IntMatrix):
        if v.cols != 1:
            raise DimensionMismatch("membership expects a column vector")
        v = v.column_at(0)
    if len(v) != lattice.ambient_rank:
        raise DimensionMismatch("vector does not live in the lattice ambient")
    return solve_integer(lattice.generators, v) is not None


def lattice_contains(outer: IntMatrix, inner: IntMatrix) -> bool:
    """True iff every column of ``inner`` lies in the column lattice of ``outer``."""
    if outer.rows != inner.rows:
        raise DimensionMismatch("lattice comparison in different ambients")
    s = _solver(outer)
    return all(s.solve(inner.column_at(j)) is not None for j in range(inner.cols))


def lattice_equal(a: IntMatrix, b: IntMatrix) -> bool:
    return column_hnf(a) == column_hnf(b)


def solve_mod_lattice(a: IntMatrix, b: Sequence[int] | IntMatrix,
                      lattice: Lattice) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Solve a @ x = b modulo the lattice.

    Returns (x, y) with a @ x + G @ y = b exactly, where G generates the
    lattice, or None when no solution exists.
    """
    if isinstance(b, IntMatrix):
        if b.cols != 1:
            raise DimensionMismatch("right-hand side must be a column")
        b = b.column_at(0)
    if lattice.ambient_rank != a.rows:
        raise DimensionMismatch("lattice ambient rank must equal the row count")
    aug = IntMatrix.hstack(a, lattice.generators)
    sol = _solver(aug).solve(tuple(b))
    if sol is None:
        return None
    return sol[:a.cols], sol[a.cols:]


def preimage_basis(m: IntMatrix, lattice_gens: IntMatrix) -> IntMatrix:
    """Canonical basis of the lattice {x : m @ x in col(lattice_gens)}."""
    if m.rows != lattice_gens.rows:
        raise DimensionMismatch("preimage lattice ambient mismatch")
    k = kernel_basis(IntMatrix.hstack(m, lattice_gens))
    top = k.take_rows(range(m.cols))
    return column_hnf(top)


# -- prime-field backend ---------------------------------------------


def _check_prime(p: int) -> None:
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")


def rref_mod_p(a: IntMatrix, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p; returns (grid, pivot columns)."""
    m = [[x % p for x in row] for row in a.entries]
    pivots: list[int] = []
    r = 0
    for j in range(a.cols):
        piv = next((i for i in range(r, a.rows) if m[i][j] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][j], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(a.rows):
            if i != r and m[i][j]:
                f = m[i][j]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(j)
        r += 1
        if r == a.rows:
            break
    return m, pivots


def rank_mod_p(a: IntMatrix, p: int) -> int:
    return len(rref_mod_p(a, p)[1])


def solve_mod_p(a: IntMatrix, b: Sequence[int], p: int) -> Optional[tuple[int, ...]]:
    """Some solution of a x = b (mod p), entries lifted into [0, p)."""
    aug = IntMatrix.hstack(a, IntMatrix.column(list(b)))
    m, pivots = rref_mod_p(aug, p)
    if a.cols in pivots:
        return None
    x = [0] * a.cols
    for r, j in enumerate(pivots):
        x[j] = m[r][a.cols] % p
    return tuple(x)


def kernel_mod_p(a: IntMatrix, p: int) -> IntMatrix:
    """Integer lifts (entries in [0, p)) of a kernel basis of a mod p."""
    m, pivots = rref_mod_p(a, p)
    free = [j for j in range(a.cols) if j not in pivots]
    cols = []
    for j in free:
        v = [0] * a.cols
        v[j] = 1
        for r, pj in enumerate(pivots):
            v[pj] = (-m[r][j]) % p
        cols.append(v)
    return IntMatrix(a.cols, len(cols),
                     tuple(tuple(c[i] for c in cols) for i in range(a.cols)))


# -- linear systems in matrix unknowns --------------------------------


class MatrixEquationSystem:
    """Integer linear system whose unknowns are matrix blocks.

    Equations have the shape ``sum_k L_k @ H_{b_k} @ R_k = C`` where the
    ``H_b`` are unknown blocks, optionally modulo a lattice applied to each
    column of ``C``.  The system is vectorized columnwise
    (vec(L H R) = kron(R^T, L) vec(H)) and handed to one integer solve.
    """

    def __init__(self) -> None:
        self._blocks: dict[str, tuple[int, int]] = {}
        self._order: list[str] = []
        self._equations: list[tuple[list[tuple[str, IntMatrix, IntMatrix]], IntMatrix, Optional[IntMatrix]]] = []

    def unknown(self, name: str, rows: int, cols: int) -> None:
        if name in self._blocks:
            raise ValueError(f"duplicate unknown block {name!r}")
        self._blocks[name] = (rows, cols)
        self._order.append(name)

    def equation(self, terms: Sequence[tuple[str, IntMatrix, IntMatrix]],
                 rhs: IntMatrix, mod: Optional[IntMatrix] = None) -> None:
        for name, left, right in terms:
            br, bc = self._blocks[name]
            if left.cols != br or right.rows != bc:
                raise DimensionMismatch(f"term for block {name!r} has incompatible shapes")
            if left.rows != rhs.rows or right.cols != rhs.cols:
                raise DimensionMismatch("equation term does not match the right-hand side shape")
        if mod is not None and mod.rows != rhs.rows:
            raise DimensionMismatch("congruence lattice lives in the wrong ambient")
        self._equations.append((list(terms), rhs, mod))

    def _assemble(self) -> tuple[IntMatrix, tuple[int, ...], list[tuple[str, int, int, int]]]:
        layout: list[tuple[str, int, int, int]] = []
        offset = 0
        for name in self._order:
            r, c = self._blocks[name]
            layout.append((name, offset, r, c))
            offset += r * c
        n_unknowns = offset
        slack_cols: list[IntMatrix] = []
        rows_blocks: list[list[IntMatrix]] = []
        rhs_all: list[int] = []
        for terms, rhs, mod in self._equations:
            nrows = rhs.rows * rhs.cols
            acc: dict[str, IntMatrix] = {}
            for name, left, right in terms:
                k = IntMatrix.kron(right.transpose(), left)
                acc[name] = acc[name] + k if name in acc else k
            row_parts = []
            for name, _off, r, c in layout:
                row_parts.append(acc.get(name, IntMatrix.zeros(nrows, r * c)))
            rows_blocks.append(row_parts)
            if mod is not None and mod.cols:
                slack_cols.append(IntMatrix.kron(IntMatrix.identity(rhs.cols), mod))
            else:
                slack_cols.append(IntMatrix.zeros(nrows, 0))
            for j in range(rhs.cols):
                rhs_all.extend(rhs.entries[i][j] for i in range(rhs.rows))
        big_rows = []
        for i, parts in enumerate(rows_blocks):
            slacks = []
            for k, sc in enumerate(slack_cols):
                if k == i:
                    slacks.append(sc)
                else:
                    slacks.append(IntMatrix.zeros(parts[0].rows if parts else sc.rows, sc.cols))
            big_rows.append(IntMatrix.hstack(*(parts + slacks)) if (parts or slacks)
                            else IntMatrix.zeros(0, n_unknowns))
        big = IntMatrix.vstack(*big_rows) if big_rows else IntMatrix.zeros(0, n_unknowns)
        return big, tuple(rhs_all), layout

    def solve(self, rng: Optional[random.Random] = None,
              amplitude: int = 2) -> Optional[dict[str, IntMatrix]]:
        big, rhs, layout = self._assemble()
        solver = _solver(big)
        sol = solver.sample_solution(rhs, rng, amplitude) if rng is not None else solver.solve(rhs)
        if sol is None:
            return None
        out: dict[str, IntMatrix] = {}
        for name, off, r, c in layout:
            cols = [sol[off + j * r:off + (j + 1) * r] for j in range(c)]
            out[name] = IntMatrix(r, c, tuple(tuple(cols[j][i] for j in range(c)) for i in range(r)))
        return out
