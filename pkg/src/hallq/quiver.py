"""Quivers, their doubles, Euler/symmetric forms, and simple reflections.

Conventions (used consistently by every other module):

* vertices are 0-based integers 0..n-1;
* a quiver is acyclic and loop-free, arrows are (source, target) pairs;
* the double quiver lists the original arrows first (indices 0..m-1, sign
  +1) and their reversals after (indices m..2m-1, sign -1); the bar
  involution is h <-> h + m mod 2m;
* the Euler form of the path algebra is <x,y> = sum_i x_i y_i -
  sum_{arrows s->t} x_s y_t, its symmetrization (x,y) = <x,y> + <y,x> is
  both the symmetric Cartan form and the Euler form of the doubled
  (preprojective) algebra;
* the simple reflection at i is s_i(x) = x - (x, alpha_i) alpha_i.

Dimension vectors and root-lattice elements are plain tuples of ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

Vec = tuple[int, ...]


def alpha(i: int, n: int) -> Vec:
    """The i-th unit dimension vector in Z^n."""
    if not 0 <= i < n:
        raise ValueError(f"vertex {i} out of range 0..{n - 1}")
    return tuple(1 if j == i else 0 for j in range(n))


def vec_add(x: Sequence[int], y: Sequence[int]) -> Vec:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vec_sub(x: Sequence[int], y: Sequence[int]) -> Vec:
    return tuple(a - b for a, b in zip(x, y, strict=True))


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic quiver without loops."""

    n_vertices: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for s, t in self.arrows:
            if not (0 <= s < self.n_vertices and 0 <= t < self.n_vertices):
                raise ValueError(f"arrow ({s},{t}) out of vertex range")
            if s == t:
                raise ValueError(f"loop at vertex {s} not allowed")
        if self._has_cycle():
            raise ValueError("quiver must be acyclic")

    def _has_cycle(self) -> bool:
        indeg = [0] * self.n_vertices
        out: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for s, t in self.arrows:
            out[s].append(t)
            indeg[t] += 1
        queue = [v for v in range(self.n_vertices) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen != self.n_vertices

    # -- counting ----------------------------------------------------------

    def arrow_count(self, i: int, j: int) -> int:
        """Number of arrows i -> j."""
        return sum(1 for s, t in self.arrows if s == i and t == j)

    def arrows_between(self, i: int, j: int) -> int:
        """Number of arrows between i and j in either direction."""
        return self.arrow_count(i, j) + self.arrow_count(j, i)

    # -- forms -------------------------------------------------------------

    def euler_form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Euler form <x,y> of the path algebra."""
        n = self.n_vertices
        if len(x) != n or len(y) != n:
            raise ValueError("dimension vector length mismatch")
        return sum(x[i] * y[i] for i in range(n)) - sum(
            x[s] * y[t] for s, t in self.arrows
        )

    def symmetric_form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """(x,y) = <x,y> + <y,x>; also the Euler form of the doubled algebra."""
        return self.euler_form(x, y) + self.euler_form(y, x)

    def cartan_matrix(self) -> np.ndarray:
        """Symmetrized Cartan matrix C[i][j] = (alpha_i, alpha_j)."""
        n = self.n_vertices
        c = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                c[i, j] = self.symmetric_form(alpha(i, n), alpha(j, n))
        return c

    def is_dynkin(self) -> bool:
        """Whether the symmetrized Cartan matrix is positive definite.

        Checked exactly via leading principal minors over Fractions (Sylvester),
        so e.g. the Kronecker quiver (determinant 0) is correctly rejected.
        """
        c = self.cartan_matrix()
        n = self.n_vertices
        for k in range(1, n + 1):
            sub = [[Fraction(int(c[i, j])) for j in range(k)] for i in range(k)]
            if _det_fraction(sub) <= 0:
                return False
        return True

    # -- parsing -----------------------------------------------------------

    @staticmethod
    def from_text(text: str) -> "Quiver":
        """Parse the plain-text format:

        ``vertices <n>`` then ``arrow <s> <t>`` lines with 1-based vertex
        ids; ``#`` starts a comment; blank lines ignored.
        """
        n = None
        arrows: list[tuple[int, int]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "vertices" and len(parts) == 2:
                if n is not None:
                    raise ValueError(f"line {lineno}: duplicate vertices line")
                n = int(parts[1])
            elif parts[0] == "arrow" and len(parts) == 3:
                if n is None:
                    raise ValueError(f"line {lineno}: arrow before vertices")
                s, t = int(parts[1]), int(parts[2])
                if not (1 <= s <= n and 1 <= t <= n):
                    raise ValueError(f"line {lineno}: vertex id out of range 1..{n}")
                arrows.append((s - 1, t - 1))
            else:
                raise ValueError(f"line {lineno}: cannot parse {raw!r}")
        if n is None:
            raise ValueError("missing 'vertices <n>' line")
        return Quiver(n, tuple(arrows))

    @staticmethod
    def from_file(path: str) -> "Quiver":
        with open(path, "r", encoding="utf-8") as fh:
            return Quiver.from_text(fh.read())


def _det_fraction(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for j in range(c, n):
                m[r][j] -= f * m[c][j]
    return det


def kronecker_quiver() -> Quiver:
    """Two vertices, two parallel arrows 0 -> 1."""
    return Quiver(2, ((0, 1), (0, 1)))


def path_quiver(n: int) -> Quiver:
    """Linear orientation 0 -> 1 -> ... -> n-1."""
    return Quiver(n, tuple((i, i + 1) for i in range(n - 1)))


def two_arrow_star_quiver() -> Quiver:
    """Three vertices with arrows 0 -> 1 and 0 -> 2."""
    return Quiver(3, ((0, 1), (0, 2)))


class DoubleQuiver:
    """The double of a quiver: every arrow plus its reversal.

    Arrow indices 0..m-1 are the originals (sign +1), m..2m-1 the reversals
    (sign -1); ``bar`` swaps the two halves.
    """

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        m = len(quiver.arrows)
        self.m = m
        self.arrows: tuple[tuple[int, int], ...] = quiver.arrows + tuple(
            (t, s) for s, t in quiver.arrows
        )
        self._into: list[list[int]] = [[] for _ in range(quiver.n_vertices)]
        self._out: list[list[int]] = [[] for _ in range(quiver.n_vertices)]
        for h, (s, t) in enumerate(self.arrows):
            self._out[s].append(h)
            self._into[t].append(h)

    @property
    def n_vertices(self) -> int:
        return self.quiver.n_vertices

    def source(self, h: int) -> int:
        return self.arrows[h][0]

    def target(self, h: int) -> int:
        return self.arrows[h][1]

    def bar(self, h: int) -> int:
        return (h + self.m) % (2 * self.m)

    def sign(self, h: int) -> int:
        return 1 if h < self.m else -1

    def arrows_into(self, v: int) -> list[int]:
        return list(self._into[v])

    def arrows_out_of(self, v: int) -> list[int]:
        return list(self._out[v])

    def arrows_from_to(self, i: int, j: int) -> list[int]:
        """Indices of double-quiver arrows i -> j, originals first."""
        return [h for h in self._out[i] if self.target(h) == j]


# ---------------------------------------------------------------------------
# reflections and Weyl words


def reflection(quiver: Quiver, i: int, x: Sequence[int]) -> Vec:
    """s_i(x) = x - (x, alpha_i) alpha_i."""
    n = quiver.n_vertices
    c = quiver.symmetric_form(x, alpha(i, n))
    return tuple(x[j] - (c if j == i else 0) for j in range(n))


def reflection_matrix(quiver: Quiver, i: int) -> np.ndarray:
    """Integer matrix of s_i acting on column dimension vectors."""
    n = quiver.n_vertices
    cols = [reflection(quiver, i, alpha(j, n)) for j in range(n)]
    return np.array(cols, dtype=np.int64).T


def weyl_word_matrix(quiver: Quiver, word: Sequence[int]) -> np.ndarray:
    """Matrix of s_{word[0]} s_{word[1]} ... acting on column vectors."""
    n = quiver.n_vertices
    m = np.eye(n, dtype=np.int64)
    for i in word:
        m = m @ reflection_matrix(quiver, i)
    return m


def weyl_word_apply(quiver: Quiver, word: Sequence[int], x: Sequence[int]) -> Vec:
    """Apply s_{word[0]} s_{word[1]} ... to x (rightmost letter acts first)."""
    out = tuple(x)
    for i in reversed(word):
        out = reflection(quiver, i, out)
    return out


def weyl_order_probe(quiver: Quiver, word: Sequence[int], cap: int = 24) -> int | None:
    """Order of the word's matrix, or None if it exceeds the cap.

    None is a definitive "order > cap", not a failure: the powers up to cap
    were all computed and none was the identity.
    """
    n = quiver.n_vertices
    m = weyl_word_matrix(quiver, word)
    acc = np.eye(n, dtype=np.int64)
    for k in range(1, cap + 1):
        acc = acc @ m
        if np.array_equal(acc, np.eye(n, dtype=np.int64)):
            return k
    return None
