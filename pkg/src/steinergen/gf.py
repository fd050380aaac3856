"""GF(2^m) arithmetic and linear algebra.

Field elements are plain Python ints whose binary digits are the
coefficients of a polynomial over GF(2); all arithmetic is performed
modulo a fixed irreducible polynomial of degree m.  Addition is XOR, so
every element is its own negative and u + v = 0 iff u = v.

One deterministic modulus is used per m (the smallest irreducible
polynomial of degree m when read as an integer), so that runs are
reproducible across platforms:

    m=2 : x^2 + x + 1
    m=3 : x^3 + x + 1
    m=4 : x^4 + x + 1
    m=5 : x^5 + x^2 + 1
    m=8 : x^8 + x^4 + x^3 + x + 1
    ...

The matrix utilities (rank, kernel, affine preimages) are plain Gaussian
elimination over the field.  Matrices here are tiny (at most 2k columns)
so no effort is spent on asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

MIN_M = 2
MAX_M = 31

# Smallest irreducible polynomial of each degree, as an (m+1)-bit mask.
_IRREDUCIBLE = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000000011,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000000001001,
    13: 0b10000000011011,
    14: 0b100000000100001,
    15: 0b1000000000000011,
    16: 0b10000000000101011,
}


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree up to deg(p)/2."""
    deg = p.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _poly_mod(p, q) == 0:
                return False
    return True


def find_irreducible(m: int) -> int:
    """Smallest degree-m irreducible polynomial (constant term forced to 1)."""
    for cand in range((1 << m) + 1, 1 << (m + 1), 2):
        if is_irreducible(cand):
            return cand
    raise RuntimeError(f"no irreducible polynomial of degree {m} found")  # unreachable


class FieldCtx:
    """The field with 2^m elements.

    Immutable after construction; safe to share between tasks.  All
    operations are pure functions of their arguments.
    """

    def __init__(self, m: int, modulus: int | None = None):
        if not MIN_M <= m <= MAX_M:
            raise ValueError(f"m={m} out of range [{MIN_M}, {MAX_M}]")
        if modulus is None:
            modulus = _IRREDUCIBLE[m] if m in _IRREDUCIBLE else find_irreducible(m)
        if modulus.bit_length() - 1 != m or not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#b} is not irreducible of degree {m}")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self._mul_table: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"FieldCtx(m={self.m}, modulus={self.modulus:#b})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    # -- element arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        """Field addition = bitwise XOR (characteristic 2)."""
        return a ^ b

    sub = add  # a - b = a + b in characteristic 2

    def mul(self, a: int, b: int) -> int:
        """Shift-and-reduce polynomial product modulo the field modulus."""
        r = 0
        top = 1 << self.m
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return r

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def elements(self) -> range:
        return range(self.order)

    # -- vectorized paths ---------------------------------------------------

    def mul_table(self) -> np.ndarray:
        """Dense multiplication table (m <= 8 only), built vectorized."""
        if self.m > 8:
            raise ValueError("dense table limited to m <= 8")
        if self._mul_table is None:
            q = self.order
            a = np.arange(q, dtype=np.uint32)[:, None]
            b = np.arange(q, dtype=np.uint32)[None, :]
            r = np.zeros((q, q), dtype=np.uint32)
            for bit in range(self.m):
                r ^= np.where(b & (1 << bit), a << bit, 0).astype(np.uint32)
            for bit in range(2 * self.m - 2, self.m - 1, -1):
                mask = (r >> bit) & 1
                r ^= mask * (self.modulus << (bit - self.m))
            self._mul_table = r.astype(np.uint16 if self.m <= 8 else np.uint32)
        return self._mul_table

    def mul_scalar_vec(self, s: int, arr: np.ndarray) -> np.ndarray:
        """Multiply every element of a uint array by the scalar s."""
        r = np.zeros_like(arr)
        a = np.asarray(arr).copy()
        top = np.array(1 << self.m, dtype=arr.dtype)
        mod = np.array(self.modulus, dtype=np.uint64).astype(arr.dtype)
        while s:
            if s & 1:
                r ^= a
            s >>= 1
            a = a << 1
            hit = (a & top) != 0
            a[hit] ^= mod
        return r


@lru_cache(maxsize=None)
def field_new(m: int) -> FieldCtx:
    """Field context with the canonical modulus for this m."""
    return FieldCtx(m)


def field_for(n: int, policy: str = "minimal") -> FieldCtx:
    """Pick a field large enough to embed [n] into its nonzero elements.

    policy="minimal": smallest m with 2^m > n + 1, which keeps the
    zero-sum template dense at small n.  policy="paper": smallest m with
    2n <= 2^m (then automatically 2^m <= 4n), the sizing used by the
    analysis.
    """
    if policy == "minimal":
        m = MIN_M
        while (1 << m) <= n + 1:
            m += 1
    elif policy == "paper":
        m = MIN_M
        while (1 << m) < 2 * n:
            m += 1
        if (1 << m) > 4 * n:
            raise ValueError(f"no power of two in [2n, 4n] for n={n}")
    else:
        raise ValueError(f"unknown field policy {policy!r}")
    if m > MAX_M:
        raise ValueError(f"n={n} needs m={m} > {MAX_M}")
    return field_new(m)


# -- matrices ----------------------------------------------------------------


class Matrix:
    """Dense matrix over a FieldCtx, list-of-rows of ints. Immutable by use."""

    def __init__(self, field: FieldCtx, rows: Sequence[Sequence[int]]):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, field: FieldCtx, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field: FieldCtx, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)])

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"

    def apply(self, vec: Sequence[int]) -> list[int]:
        """Matrix-vector product over the field."""
        if len(vec) != self.ncols:
            raise ValueError(f"dimension mismatch: {self.ncols} cols, vector of {len(vec)}")
        f = self.field
        out = []
        for row in self.rows:
            acc = 0
            for c, v in zip(row, vec):
                if c and v:
                    acc ^= v if c == 1 else f.mul(c, v)
            out.append(acc)
        return out

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        f = self.field
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = 0
                for t in range(self.ncols):
                    a, b = self.rows[i][t], other.rows[t][j]
                    if a and b:
                        acc ^= f.mul(a, b)
                row.append(acc)
            rows.append(row)
        return Matrix(f, rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("dimension mismatch")
        return Matrix(self.field, [a + b for a, b in zip(self.rows, other.rows)])

    def columns(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(self.field, [[r[j] for j in idx] for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for i in range(self.nrows)]
                                   for j in range(self.ncols)])


def _rref(field: FieldCtx, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [r[:] for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != 1:
            rows[r] = [field.mul(inv, v) for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [vi ^ field.mul(factor, vr) for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(M: Matrix) -> int:
    """Row rank by Gaussian elimination over the field."""
    _, pivots = _rref(M.field, M.rows)
    return len(pivots)


def kernel_basis(M: Matrix) -> list[list[int]]:
    """Basis of the right kernel; has ncols - rank(M) vectors."""
    rref, pivots = _rref(M.field, M.rows)
    free = [c for c in range(M.ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * M.ncols
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = rref[ri][fc]  # -coeff = coeff in characteristic 2
        basis.append(v)
    return basis


@dataclass(frozen=True)
class AffineSubspace:
    """A coset point + ker(M): all solutions of Mx = y."""

    point: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def size(self, field: FieldCtx) -> int:
        return field.order ** self.dim

    def enumerate(self, field: FieldCtx):
        """Yield every point (only sensible for small fields/dims)."""
        dims = self.dim
        coeffs = [0] * dims
        while True:
            p = list(self.point)
            for c, b in zip(coeffs, self.basis):
                if c:
                    p = [x ^ (v if c == 1 else field.mul(c, v)) for x, v in zip(p, b)]
            yield tuple(p)
            i = 0
            while i < dims:
                coeffs[i] += 1
                if coeffs[i] < field.order:
                    break
                coeffs[i] = 0
                i += 1
            else:
                return


def affine_preimage(M: Matrix, y: Sequence[int]) -> Optional[AffineSubspace]:
    """All x with Mx = y, as point + kernel basis; None when y is not in im(M)."""
    if len(y) != M.nrows:
        raise ValueError("dimension mismatch")
    aug = [row + [yi] for row, yi in zip(M.rows, y)]
    rref, pivots = _rref(M.field, aug)
    # inconsistent iff a pivot lands in the augmented column
    if M.ncols in pivots:
        return None
    x0 = [0] * M.ncols
    for ri, pc in enumerate(pivots):
        x0[pc] = rref[ri][M.ncols]
    return AffineSubspace(tuple(x0), tuple(tuple(v) for v in kernel_basis(M)))
