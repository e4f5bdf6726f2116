"""Exact integer linear algebra.

Smith normal form with unimodular transforms, saturated kernel lattices,
integer lattices with exact membership tests, and finitely generated
abelian group presentations.  Everything runs on arbitrary-precision
Python integers; no floating point is used anywhere.

Dense matrices are small (presentation-sized); the sparse helpers
(`sparse_kernel_basis`, `Echelon`) carry the large boundary matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class NotASublatticeError(ValueError):
    """Raised when a claimed sublattice has a generator outside the ambient lattice."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y.

    >>> xgcd(12, 18)
    (6, -1, 1)
    >>> xgcd(0, 0)
    (0, 1, 0)
    """
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data: Iterable[Sequence[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != ncols:
                raise ValueError("cols does not match row length")
        else:
            ncols = 0 if cols is None else cols
        self.rows = len(rows)
        self.cols = ncols
        self.data = rows
        self._hash = None

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @staticmethod
    def from_cols(cols: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        cols = [tuple(c) for c in cols]
        if cols:
            nrows = len(cols[0])
            if any(len(c) != nrows for c in cols):
                raise ValueError("ragged columns")
        else:
            nrows = 0 if rows is None else rows
        return IntMatrix([[c[i] for c in cols] for i in range(nrows)], cols=len(cols))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(
            [self.data[i] + other.data[i] for i in range(self.rows)],
            cols=self.cols + other.cols,
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ot = other.transpose().data
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.data],
            cols=other.cols,
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in row] for row in self.data], cols=self.cols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in row] for row in self.data], cols=self.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.data]!r}, cols={self.cols})"


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: IntMatrix
    Uinv: IntMatrix
    D: IntMatrix
    V: IntMatrix
    Vinv: IntMatrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)


def _snf_full(mat: IntMatrix) -> SmithDecomposition:
    r, c = mat.shape
    a = [list(row) for row in mat.data]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    uinv = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]
    vinv = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for k in range(r):
            uinv[k][i], uinv[k][j] = uinv[k][j], uinv[k][i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for k in range(r):
            uinv[k][i] = -uinv[k][i]

    def row_addmul(i, j, q):
        # row_i += q * row_j, i != j; inverse transform on uinv columns
        ai, aj = a[i], a[j]
        for k in range(c):
            ai[k] += q * aj[k]
        ui, uj = u[i], u[j]
        for k in range(r):
            ui[k] += q * uj[k]
        for k in range(r):
            uinv[k][j] -= q * uinv[k][i]

    def col_addmul(i, j, q):
        # col_i += q * col_j
        for row in a:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]
        vi, vj = vinv[i], vinv[j]
        for k in range(c):
            vj[k] -= q * vi[k]

    def row_combine(t, i):
        # rows (t, i) <- (x*rt + y*ri, -(b//g)*rt + (a//g)*ri) with a = A[t][pivot], b = A[i][pivot]
        aa, bb = a[t][t], a[i][t]
        g, x, y = xgcd(aa, bb)
        p, q = aa // g, bb // g
        rt, ri = a[t], a[i]
        a[t] = [x * s + y * w for s, w in zip(rt, ri)]
        a[i] = [-q * s + p * w for s, w in zip(rt, ri)]
        rt, ri = u[t], u[i]
        u[t] = [x * s + y * w for s, w in zip(rt, ri)]
        u[i] = [-q * s + p * w for s, w in zip(rt, ri)]
        # inverse of [[x, y], [-q, p]] is [[p, -y], [q, x]]
        for k in range(r):
            ct, ci = uinv[k][t], uinv[k][i]
            uinv[k][t] = p * ct + q * ci
            uinv[k][i] = -y * ct + x * ci

    def col_combine(t, j):
        aa, bb = a[t][t], a[t][j]
        g, x, y = xgcd(aa, bb)
        p, q = aa // g, bb // g
        for row in a:
            ct, cj = row[t], row[j]
            row[t] = x * ct + y * cj
            row[j] = -q * ct + p * cj
        for row in v:
            ct, cj = row[t], row[j]
            row[t] = x * ct + y * cj
            row[j] = -q * ct + p * cj
        rt, rj = vinv[t], vinv[j]
        vinv[t] = [p * s + q * w for s, w in zip(rt, rj)]
        vinv[j] = [-y * s + x * w for s, w in zip(rt, rj)]

    t = 0
    limit = min(r, c)
    while t < limit:
        # pick the smallest-magnitude nonzero entry in the remaining block
        best = None
        for i in range(t, r):
            row = a[i]
            for j in range(t, c):
                val = row[j]
                if val:
                    m = abs(val)
                    if best is None or m < best[0]:
                        best = (m, i, j)
                        if m == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)

        while True:
            for i in range(t + 1, r):
                b = a[i][t]
                if b:
                    if b % a[t][t] == 0:
                        row_addmul(i, t, -(b // a[t][t]))
                    else:
                        row_combine(t, i)
            if any(a[t][j] for j in range(t + 1, c)):
                for j in range(t + 1, c):
                    b = a[t][j]
                    if b:
                        if b % a[t][t] == 0:
                            col_addmul(j, t, -(b // a[t][t]))
                        else:
                            col_combine(t, j)
                if any(a[i][t] for i in range(t + 1, r)):
                    continue
            # pivot must divide the rest of the block for the divisibility chain
            d = a[t][t]
            bad = None
            for i in range(t + 1, r):
                row = a[i]
                for j in range(t + 1, c):
                    if row[j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if a[t][t] < 0:
            row_negate(t)
        t += 1

    divisors = tuple(a[i][i] for i in range(limit) if a[i][i])
    return SmithDecomposition(
        U=IntMatrix(u, cols=r),
        Uinv=IntMatrix(uinv, cols=r),
        D=IntMatrix(a, cols=c),
        V=IntMatrix(v, cols=c),
        Vinv=IntMatrix(vinv, cols=c),
        divisors=divisors,
    )


def smith_normal_form(mat: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U @ mat @ V == D, U and V unimodular,
    D diagonal with a divisibility chain d1 | d2 | ... on the diagonal.

    >>> u, d, v = smith_normal_form(IntMatrix([[2, 0], [0, 3]]))
    >>> [d.data[0][0], d.data[1][1]]
    [1, 6]
    """
    s = _snf_full(mat)
    return s.U, s.D, s.V


def integer_solve(mat: IntMatrix, vec: Sequence[int]) -> Optional[tuple[int, ...]]:
    """One integer solution x of mat @ x == vec, or None if none exists."""
    s = _snf_full(mat)
    return _solve_from_snf(s, vec)


def _solve_from_snf(s: SmithDecomposition, vec: Sequence[int]) -> Optional[tuple[int, ...]]:
    r, c = s.D.shape
    if len(vec) != r:
        raise ValueError("vector length mismatch")
    w = s.U.apply(vec)
    rank = s.rank
    y = [0] * c
    for i in range(r):
        if i < rank:
            d = s.D.data[i][i]
            if w[i] % d:
                return None
            if i < c:
                y[i] = w[i] // d
        elif w[i]:
            return None
    return s.V.apply(y)


class Lattice:
    """Integer lattice given by an independent column basis inside Z^ambient.

    `basis` columns are required to be linearly independent.  Use
    `from_vectors` to build from a redundant spanning set.
    """

    def __init__(self, ambient: int, basis: IntMatrix, _checked: bool = False):
        if basis.rows != ambient:
            raise ValueError("basis rows must equal ambient dimension")
        self.ambient = ambient
        self.basis = basis
        self._snf: Optional[SmithDecomposition] = None
        if not _checked and basis.cols:
            if self._decomposition().rank != basis.cols:
                raise ValueError("basis columns are linearly dependent")

    @staticmethod
    def from_vectors(ambient: int, vectors: Iterable[Sequence[int]]) -> "Lattice":
        ech = Echelon()
        for vec in vectors:
            ech.add({i: x for i, x in enumerate(vec) if x})
        cols = [ech.vector_as_list(v, ambient) for v in ech.basis_vectors()]
        return Lattice(ambient, IntMatrix.from_cols(cols, rows=ambient), _checked=True)

    def _decomposition(self) -> SmithDecomposition:
        if self._snf is None:
            self._snf = _snf_full(self.basis)
        return self._snf

    @property
    def rank(self) -> int:
        return self.basis.cols

    def coordinates(self, vec: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Coordinates of vec in the basis, or None if vec is not in the lattice."""
        if self.basis.cols == 0:
            return () if all(x == 0 for x in vec) else None
        return _solve_from_snf(self._decomposition(), vec)

    def contains(self, vec: Sequence[int]) -> bool:
        return self.coordinates(vec) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        if other.ambient != self.ambient:
            raise ValueError("ambient dimension mismatch")
        return all(self.contains(other.basis.column(j)) for j in range(other.basis.cols))

    def same_lattice(self, other: "Lattice") -> bool:
        return self.contains_lattice(other) and other.contains_lattice(self)

    def is_saturated(self) -> bool:
        """True iff Z^ambient / lattice is torsion-free."""
        if self.basis.cols == 0:
            return True
        return all(d == 1 for d in self._decomposition().divisors)

    def saturation(self) -> "Lattice":
        """The smallest saturated lattice containing this one."""
        if self.is_saturated():
            return self
        s = self._decomposition()
        cols = [s.Uinv.column(i) for i in range(s.rank)]
        return Lattice(self.ambient, IntMatrix.from_cols(cols, rows=self.ambient), _checked=True)

    def __repr__(self):
        return f"Lattice(ambient={self.ambient}, rank={self.rank})"


def kernel_lattice(mat: IntMatrix) -> Lattice:
    """The saturated lattice {x in Z^cols : mat @ x == 0}.

    >>> kernel_lattice(IntMatrix([[2, -2]])).basis.columns()
    [(1, 1)]
    """
    s = _snf_full(mat)
    cols = [s.V.column(j) for j in range(s.rank, mat.cols)]
    return Lattice(mat.cols, IntMatrix.from_cols(cols, rows=mat.cols), _checked=True)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: Z^rank + Z/d1 + ... with d1 | d2 | ...

    >>> print(AbelianGroup(1, (2, 4)))
    Z ⊕ Z/2 ⊕ Z/4
    >>> print(AbelianGroup(0))
    0
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def n_generators(self) -> int:
        return self.rank + len(self.torsion)

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def quotient_group(outer: Lattice, inner: Lattice) -> AbelianGroup:
    """Presentation of outer/inner; raises NotASublatticeError if inner ⊄ outer.

    >>> K = Lattice(2, IntMatrix([[1, 0], [1, 3]]))
    >>> I = Lattice(2, IntMatrix([[3], [3]]))
    >>> print(quotient_group(K, I))
    Z ⊕ Z/3
    """
    if outer.ambient != inner.ambient:
        raise NotASublatticeError("ambient dimension mismatch")
    coords = []
    for j in range(inner.basis.cols):
        x = outer.coordinates(inner.basis.column(j))
        if x is None:
            raise NotASublatticeError("generator of inner lattice is not in outer lattice")
        coords.append(x)
    k = outer.rank
    rel = IntMatrix.from_cols(coords, rows=k)
    divisors = _snf_full(rel).divisors
    torsion = tuple(d for d in divisors if d > 1)
    return AbelianGroup(k - len(divisors), torsion)


# ---------------------------------------------------------------------------
# Sparse helpers: vectors are dicts {index: nonzero int}.


def vec_addmul(target: dict, source: dict, q: int) -> None:
    """target += q * source, in place, dropping zeros."""
    if not q:
        return
    for i, val in source.items():
        new = target.get(i, 0) + q * val
        if new:
            target[i] = new
        else:
            target.pop(i, None)


class Echelon:
    """Mutable column-echelon basis of an integer lattice.

    Vectors are sparse dicts.  Each basis vector has a distinct pivot
    (its smallest nonzero index); insertion keeps the span unchanged, so
    after adding a spanning set the basis generates the same lattice.
    Membership and coordinate solves are forced forward reductions.
    """

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    def __len__(self):
        return len(self.pivots)

    def add(self, vec: dict) -> None:
        v = dict(vec)
        while v:
            p = min(v)
            cur = self.pivots.get(p)
            if cur is None:
                if v[p] < 0:
                    v = {i: -x for i, x in v.items()}
                self.pivots[p] = v
                return
            a, b = cur[p], v[p]
            if b % a == 0:
                vec_addmul(v, cur, -(b // a))
            else:
                g, x, y = xgcd(a, b)
                new = {}
                for i in set(cur) | set(v):
                    s = x * cur.get(i, 0) + y * v.get(i, 0)
                    if s:
                        new[i] = s
                w = {}
                for i in set(cur) | set(v):
                    s = (a // g) * v.get(i, 0) - (b // g) * cur.get(i, 0)
                    if s:
                        w[i] = s
                self.pivots[p] = new
                v = w

    def basis_vectors(self) -> list[dict]:
        return [self.pivots[p] for p in sorted(self.pivots)]

    def pivot_rows(self) -> list[int]:
        return sorted(self.pivots)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Forward-reduce vec; returns (coeffs keyed by pivot row, remainder)."""
        v = dict(vec)
        coeffs = {}
        while v:
            p = min(v)
            cur = self.pivots.get(p)
            if cur is None or v[p] % cur[p]:
                return coeffs, v
            q = v[p] // cur[p]
            coeffs[p] = q
            vec_addmul(v, cur, -q)
        return coeffs, v

    def contains(self, vec: dict) -> bool:
        _, rem = self.reduce(vec)
        return not rem

    def solve(self, vec: dict) -> Optional[list[int]]:
        """Coefficients of vec in basis order (sorted pivots), or None."""
        coeffs, rem = self.reduce(vec)
        if rem:
            return None
        return [coeffs.get(p, 0) for p in sorted(self.pivots)]

    @staticmethod
    def vector_as_list(vec: dict, length: int) -> list[int]:
        out = [0] * length
        for i, val in vec.items():
            out[i] = val
        return out


def sparse_kernel_basis(cols: list[dict], nrows: int) -> list[dict]:
    """Basis of {x in Z^len(cols) : sum x_j * cols[j] == 0}.

    Columns are sparse dicts over row indices 0..nrows-1.  The returned
    basis spans the full integer kernel (hence a saturated lattice).
    """
    ncols = len(cols)
    work: list[Optional[dict]] = []
    row_index: dict[int, set[int]] = {}
    for j, col in enumerate(cols):
        w = dict(col)
        w[nrows + j] = 1
        work.append(w)
        for i in col:
            row_index.setdefault(i, set()).add(j)

    def touch(j, w):
        for i in w:
            if i < nrows:
                row_index.setdefault(i, set()).add(j)

    retired = [False] * ncols
    for r in range(nrows):
        live = [j for j in row_index.get(r, ()) if not retired[j] and work[j].get(r)]
        if not live:
            continue
        pivot_j = min(live, key=lambda j: (abs(work[j][r]), j))
        pv = work[pivot_j]
        for j in live:
            if j == pivot_j:
                continue
            w = work[j]
            a, b = pv[r], w[r]
            if b % a == 0:
                vec_addmul(w, pv, -(b // a))
            else:
                g, x, y = xgcd(a, b)
                new_p = {}
                for i in set(pv) | set(w):
                    s = x * pv.get(i, 0) + y * w.get(i, 0)
                    if s:
                        new_p[i] = s
                new_w = {}
                for i in set(pv) | set(w):
                    s = (a // g) * w.get(i, 0) - (b // g) * pv.get(i, 0)
                    if s:
                        new_w[i] = s
                work[pivot_j] = pv = new_p
                work[j] = w = new_w
                touch(pivot_j, pv)
            touch(j, w)
        retired[pivot_j] = True

    out = []
    for j in range(ncols):
        if retired[j]:
            continue
        w = work[j]
        if any(i < nrows for i in w):
            continue
        out.append({i - nrows: val for i, val in w.items()})
    return out


def random_unimodular(rng, n: int, steps: int = 12) -> IntMatrix:
    """Random unimodular matrix built from elementary row operations."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        q = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            m[i][k] += q * m[j][k]
    return IntMatrix(m, cols=n)
