"""Exact linear algebra over prime fields and q-analogue combinatorics.

Matrices are dense numpy int64 arrays with entries reduced mod p (p prime,
small enough that products of entries never overflow int64; we only ever use
p <= 7 but anything below 2**15 is safe). Row reduction, kernels and solving
are hand-rolled modular Gaussian elimination, so every result is exact.

Also here: canonical enumeration of k-dimensional subspaces of F_p^n,
integer polynomials in a formal variable q (with Gaussian binomials via the
Pascal recurrence, no division), exact Lagrange interpolation with a held-out
validation point, and Smith normal form over Z for lattice-rank questions.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_BUDGET = 10**6


class BudgetError(RuntimeError):
    """An enumeration would exceed its admitted size; nothing was computed."""

    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what}: needs {needed} > budget {budget}")
        self.what = what
        self.needed = needed
        self.budget = budget


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a nonzero residue mod prime p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(a, p - 2, p)


class Mat:
    """Immutable dense matrix over F_p.

    Arithmetic (+, -, @, scalar *) stays in the field. Hashable, so matrices
    can key caches. ``a`` is the underlying read-only int64 array.
    """

    __slots__ = ("p", "a")

    def __init__(self, p: int, data):
        if not is_prime(p):
            raise ValueError(f"field size must be prime, got {p}")
        arr = np.asarray(data, dtype=np.int64) % p
        if arr.ndim != 2:
            raise ValueError(f"expected a 2d array, got shape {arr.shape}")
        arr.setflags(write=False)
        self.p = p
        self.a = arr

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeros(p: int, rows: int, cols: int) -> "Mat":
        return Mat(p, np.zeros((rows, cols), dtype=np.int64))

    @staticmethod
    def identity(p: int, n: int) -> "Mat":
        return Mat(p, np.eye(n, dtype=np.int64))

    @staticmethod
    def hstack(mats: Sequence["Mat"]) -> "Mat":
        p = mats[0].p
        return Mat(p, np.hstack([m.a for m in mats]))

    @staticmethod
    def vstack(mats: Sequence["Mat"]) -> "Mat":
        p = mats[0].p
        return Mat(p, np.vstack([m.a for m in mats]))

    # -- basics ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def t(self) -> "Mat":
        return Mat(self.p, self.a.T)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"Mat(p={self.p},\n{self.a})"

    def is_zero(self) -> bool:
        return not self.a.any()

    def key(self) -> bytes:
        """Canonical bytes (shape-tagged) for dict keys and ordering."""
        r, c = self.shape
        return f"{r}x{c}:".encode() + self.a.tobytes()

    # -- arithmetic --------------------------------------------------------

    def _like(self, arr) -> "Mat":
        return Mat(self.p, arr)

    def __add__(self, other: "Mat") -> "Mat":
        return self._like(self.a + other.a)

    def __sub__(self, other: "Mat") -> "Mat":
        return self._like(self.a - other.a)

    def __neg__(self) -> "Mat":
        return self._like(-self.a)

    def __mul__(self, scalar: int) -> "Mat":
        return self._like(self.a * (scalar % self.p))

    __rmul__ = __mul__

    def __matmul__(self, other: "Mat") -> "Mat":
        return self._like(self.a @ other.a)

    def kron(self, other: "Mat") -> "Mat":
        return self._like(np.kron(self.a, other.a))

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """Reduced row echelon form and the tuple of pivot columns."""
        p = self.p
        m = self.a.copy()
        rows, cols = m.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                m[[r, pr]] = m[[pr, r]]
            m[r] = (m[r] * inv_mod(int(m[r, c]), p)) % p
            for rr in range(rows):
                if rr != r and m[rr, c]:
                    m[rr] = (m[rr] - m[rr, c] * m[r]) % p
            pivots.append(c)
            r += 1
        return self._like(m), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Mat":
        """Matrix whose columns are the canonical basis of {x : self @ x = 0}."""
        R, pivots = self.rref()
        n = self.cols
        free = [j for j in range(n) if j not in pivots]
        basis = np.zeros((n, len(free)), dtype=np.int64)
        for k, j in enumerate(free):
            basis[j, k] = 1
            for r, pc in enumerate(pivots):
                basis[pc, k] = (-int(R.a[r, j])) % self.p
        return self._like(basis)

    def solve(self, rhs: "Mat") -> "Mat | None":
        """A particular X with self @ X = rhs, or None if inconsistent."""
        aug = Mat.hstack([self, rhs])
        R, pivots = aug.rref()
        n = self.cols
        if any(c >= n for c in pivots):
            return None
        x = np.zeros((n, rhs.cols), dtype=np.int64)
        for r, pc in enumerate(pivots):
            x[pc] = R.a[r, n:]
        return self._like(x)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inv(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(Mat.identity(self.p, self.rows))
        if x is None or not (self @ x == Mat.identity(self.p, self.rows)):
            raise ValueError("matrix is singular")
        return x

    def column_space_rref(self) -> "Mat":
        """Canonical column basis of the column space (transposed row-RREF)."""
        R, pivots = self.t().rref()
        return Mat(self.p, R.a[: len(pivots)].T)


def vec_row_major(m: Mat) -> Mat:
    """Flatten to a column vector in row-major order."""
    return Mat(m.p, m.a.reshape(-1, 1))


def unvec_row_major(v: Mat, rows: int, cols: int) -> Mat:
    return Mat(v.p, v.a.reshape(rows, cols))


def det_mod(a: np.ndarray, p: int) -> int:
    """Exact determinant mod p of a small integer matrix (Bareiss)."""
    n = a.shape[0]
    if n == 0:
        return 1 % p
    m = [[int(x) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return (sign * m[n - 1][n - 1]) % p


def batched_det_mod(stack: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a (C, n, n) stack of matrices with entries in
    [0, p). Vectorized closed forms for n <= 3, exact row reduction per item
    beyond that.
    """
    c, n, _ = stack.shape
    if n == 0:
        return np.full(c, 1 % p, dtype=np.int64)
    if n == 1:
        return stack[:, 0, 0] % p
    if n == 2:
        return (stack[:, 0, 0] * stack[:, 1, 1] - stack[:, 0, 1] * stack[:, 1, 0]) % p
    if n == 3:
        a = stack
        det = (
            a[:, 0, 0] * (a[:, 1, 1] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 1])
            - a[:, 0, 1] * (a[:, 1, 0] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 0])
            + a[:, 0, 2] * (a[:, 1, 0] * a[:, 2, 1] - a[:, 1, 1] * a[:, 2, 0])
        )
        return det % p
    return np.array([det_mod(stack[i], p) for i in range(c)], dtype=np.int64)


# ---------------------------------------------------------------------------
# subspace enumeration


def subspace_count(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n (Gaussian binomial at p)."""
    return q_binomial(n, k)(p)


def enumerate_subspaces(
    n: int, k: int, p: int, budget: int = DEFAULT_BUDGET
) -> Iterator[Mat]:
    """Yield every k-dimensional subspace of F_p^n exactly once.

    Each subspace appears as an n x k matrix whose columns are its canonical
    (row-reduced echelon, transposed) basis. Deterministic order: pivot
    columns lexicographic, then free entries lexicographic. Raises
    BudgetError up front if the subspace count exceeds the budget.
    """
    if k < 0 or k > n:
        return
    total = subspace_count(n, k, p)
    if total > budget:
        raise BudgetError(f"subspaces of dim {k} in F_{p}^{n}", total, budget)
    if k == 0:
        yield Mat.zeros(p, n, 0)
        return
    for pivots in itertools.combinations(range(n), k):
        free_positions = [
            (r, j)
            for r in range(k)
            for j in range(pivots[r] + 1, n)
            if j not in pivots
        ]
        base = np.zeros((k, n), dtype=np.int64)
        for r, pc in enumerate(pivots):
            base[r, pc] = 1
        for values in itertools.product(range(p), repeat=len(free_positions)):
            m = base.copy()
            for (r, j), v in zip(free_positions, values):
                m[r, j] = v
            yield Mat(p, m.T)


# ---------------------------------------------------------------------------
# integer polynomials in q


class QPoly:
    """Integer polynomial in a formal variable q, coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c: int) -> "QPoly":
        return QPoly([c])

    @staticmethod
    def monomial(deg: int, c: int = 1) -> "QPoly":
        return QPoly([0] * deg + [c])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, int):
            return QPoly([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            else:
                mono = "q" if i == 1 else f"q^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def q_int(l: int) -> QPoly:
    """[l]_q = 1 + q + ... + q^(l-1)."""
    if l < 0:
        raise ValueError("q-integer of a negative integer")
    return QPoly([1] * l)


def q_factorial(l: int) -> QPoly:
    out = QPoly.const(1)
    for i in range(1, l + 1):
        out = out * q_int(i)
    return out


def q_binomial(m: int, l: int) -> QPoly:
    """Gaussian binomial [m choose l]_q via the Pascal recurrence.

    [m l] = [m-1 l-1] + q^l [m-1 l]; integer coefficients, no division.
    """
    if l < 0 or l > m:
        return QPoly()
    row = [QPoly.const(1)]  # row for m' = 0
    for mm in range(1, m + 1):
        new = [QPoly.const(1)]
        for ll in range(1, mm):
            new.append(row[ll - 1] + QPoly.monomial(ll) * row[ll])
        new.append(QPoly.const(1))
        row = new
    return row[l]


class NonPolynomialError(ValueError):
    """Counting data admits no single integer polynomial; carries residuals."""

    def __init__(self, message: str, residuals: dict[int, int]):
        super().__init__(f"{message}; residuals {residuals}")
        self.residuals = residuals


def interpolate_integer_poly(points: Sequence[tuple[int, int]]) -> QPoly:
    """Fit an integer polynomial to (x, value) pairs, exactly.

    The fit uses every point except the one with the largest x (exact
    Lagrange interpolation over Fractions); the largest-x point is held out
    and must be reproduced, and all coefficients must be integers. Otherwise
    NonPolynomialError is raised with the held-out / non-integrality
    residuals, so a genuinely non-polynomial count fails loudly instead of
    returning a best-effort fit.
    """
    if len(points) < 2:
        raise ValueError("need at least two sample points")
    pts = sorted(points)
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate sample points")
    fit, (hx, hy) = pts[:-1], pts[-1]
    # Lagrange over the fitted points.
    coeffs = [Fraction(0)] * len(fit)
    for i, (xi, yi) in enumerate(fit):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(fit):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] += c * (-xj)
                new[k + 1] += c
            basis = new
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    bad: dict[int, int] = {}
    for k, c in enumerate(coeffs):
        if c.denominator != 1:
            bad[k] = 0
    if bad:
        raise NonPolynomialError(
            "interpolation has non-integer coefficients", {x: y for x, y in pts}
        )
    poly = QPoly([int(c) for c in coeffs])
    predicted = poly(hx)
    if predicted != hy:
        raise NonPolynomialError(
            f"held-out point x={hx} predicts {predicted}, observed {hy}",
            {hx: hy - predicted},
        )
    return poly


# ---------------------------------------------------------------------------
# integer lattice utilities


def diagonalize_integer_matrix(
    rows: Sequence[Sequence[int]],
) -> tuple[list[int], list[list[int]]]:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (diag, V) with U*A*V = diag(diag) for some unimodular U (not
    tracked) and the tracked unimodular right transform V (cols x cols).
    diag has length min(shape) and nonnegative entries; it is not normalized
    to a divisibility chain, which none of the callers need. Plain-int
    arithmetic throughout, so coefficient growth is exact.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    vcols = [[int(i == j) for i in range(n)] for j in range(n)]
    diag: list[int] = []

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        vcols[i], vcols[j] = vcols[j], vcols[i]

    def col_add(src, dst, mult):
        for r in a:
            r[dst] += mult * r[src]
        for k in range(n):
            vcols[dst][k] += mult * vcols[src][k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (
                    best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])
                ):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
        if bj != t:
            col_swap(t, bj)
        while True:
            redo = False
            for i in range(t + 1, m):
                if a[i][t]:
                    qv = a[i][t] // a[t][t]
                    a[i] = [x - qv * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:  # remainder became the smaller pivot
                        a[t], a[i] = a[i], a[t]
                        redo = True
            for j in range(t + 1, n):
                if a[t][j]:
                    qv = a[t][j] // a[t][t]
                    col_add(t, j, -qv)
                    if a[t][j]:
                        col_swap(t, j)
                        redo = True
            if not redo:
                break
        if a[t][t] < 0:
            for r in a:
                r[t] = -r[t]
            for k in range(n):
                vcols[t][k] = -vcols[t][k]
        diag.append(a[t][t])
        t += 1
    while len(diag) < min(m, n):
        diag.append(0)
    vmat = [[vcols[j][i] for j in range(n)] for i in range(n)]
    return diag, vmat


def free_rank_mod(rows: Sequence[Sequence[int]], modulus: int) -> int:
    """Free rank of the Z/modulus-span of the rows.

    Diagonalizing A by unimodular transforms turns the span into a direct
    sum of cyclic modules d_k * (Z/modulus); the summand is free exactly
    when gcd(d_k, modulus) = 1, so counting those entries gives the rank of
    a maximal free direct summand.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if not rows:
        return 0
    diag, _ = diagonalize_integer_matrix(rows)
    return sum(1 for d in diag if d != 0 and math.gcd(d, modulus) == 1)


def in_row_span_mod(
    rows: Sequence[Sequence[int]], vec: Sequence[int], modulus: int
) -> bool:
    """Whether vec lies in the Z/modulus-span of the given integer rows.

    With U*A*V = D (D diagonal, U,V unimodular), x*A ≡ vec (mod m) is
    solvable iff y*D ≡ vec*V for some y, i.e. iff gcd(d_k, m) divides
    (vec*V)_k on the diagonal positions and (vec*V)_k ≡ 0 beyond them.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    n = len(vec)
    if not rows:
        return all(c % modulus == 0 for c in vec)
    if any(len(r) != n for r in rows):
        raise ValueError("row length mismatch")
    diag, v = diagonalize_integer_matrix(rows)
    w = [sum(int(vec[j]) * v[j][k] for j in range(n)) for k in range(n)]
    for k in range(n):
        if k < len(diag) and diag[k] != 0:
            if w[k] % math.gcd(diag[k], modulus) != 0:
                return False
        elif w[k] % modulus != 0:
            return False
    return True
