"""Bounded and 2-periodic complexes of F_q vector spaces.

A periodic complex is a pair of spaces V0, V1 with differentials
d0: V0 -> V1 and d1: V1 -> V0 composing to zero both ways. Bounded
(cohomological) complexes compress onto periodic ones by folding all even
degrees into V0 and all odd degrees into V1, ascending, with no signs.

Tensor products: the bounded tensor uses the Koszul rule
d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy with summands ordered by
ascending first-factor degree and row-major Kronecker bases; the periodic
tensor uses the block differentials

    d0 = [[d0_V (x) 1, -1 (x) d1_N], [1 (x) d0_N, d1_V (x) 1]]
    d1 = [[d1_V (x) 1,  1 (x) d1_N], [-1 (x) d0_N, d0_V (x) 1]]

on degree-0 part (V0 (x) N0) + (V1 (x) N1) and degree-1 part
(V1 (x) N0) + (V0 (x) N1). Compression intertwines the two tensors on the
nose: ``delta_tensor_check`` verifies literal entrywise equality of the
differentials after the canonical static relabeling
(s, a) (x) (t, b) <-> (s, a, t, b) of basis vectors (an input-independent
bijection of index labels, not a solved-for isomorphism).

Also here: the internal Hom periodic complex, shift, mapping cones, and
homology dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ffla import Mat


@dataclass(frozen=True)
class BoundedComplex:
    """Spaces in consecutive degrees lo, lo+1, ...; diffs[k]: degree
    lo+k -> lo+k+1. Consecutive composites must vanish."""

    q: int
    lo: int
    dims: tuple[int, ...]
    diffs: tuple[Mat, ...]

    def __post_init__(self):
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise ValueError("need exactly one differential between consecutive degrees")
        for k, d in enumerate(self.diffs):
            if d.shape != (self.dims[k + 1], self.dims[k]):
                raise ValueError(f"differential {k} has shape {d.shape}")
            if d.p != self.q:
                raise ValueError("field size mismatch")
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                raise ValueError(f"d o d != 0 between degrees {self.lo + k} and {self.lo + k + 2}")

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    def degree_dim(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.dims[i - self.lo]
        return 0

    def diff(self, i: int) -> Mat | None:
        """Differential out of degree i, or None when out of range."""
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        return None


@dataclass(frozen=True)
class PeriodicComplex:
    q: int
    dim0: int
    dim1: int
    d0: Mat  # V0 -> V1
    d1: Mat  # V1 -> V0

    def __post_init__(self):
        if self.d0.shape != (self.dim1, self.dim0) or self.d1.shape != (
            self.dim0,
            self.dim1,
        ):
            raise ValueError("differential shapes do not match the space dimensions")
        if self.d0.p != self.q or self.d1.p != self.q:
            raise ValueError("field size mismatch")
        if not (self.d1 @ self.d0).is_zero() or not (self.d0 @ self.d1).is_zero():
            raise ValueError("differentials do not compose to zero")

    def euler_char(self) -> int:
        return self.dim0 - self.dim1

    def homology_dims(self) -> tuple[int, int]:
        h0 = (self.dim0 - self.d0.rank()) - self.d1.rank()
        h1 = (self.dim1 - self.d1.rank()) - self.d0.rank()
        return h0, h1


def _even_degrees(c: BoundedComplex) -> list[int]:
    return [i for i in range(c.lo, c.hi + 1) if i % 2 == 0]


def _odd_degrees(c: BoundedComplex) -> list[int]:
    return [i for i in range(c.lo, c.hi + 1) if i % 2 == 1]


def compress(c: BoundedComplex) -> PeriodicComplex:
    """Fold a bounded complex 2-periodically: V0 = even degrees ascending,
    V1 = odd degrees ascending, block differentials copied without signs."""
    evens, odds = _even_degrees(c), _odd_degrees(c)
    off_e = {}
    pos = 0
    for i in evens:
        off_e[i] = pos
        pos += c.degree_dim(i)
    n0 = pos
    off_o = {}
    pos = 0
    for i in odds:
        off_o[i] = pos
        pos += c.degree_dim(i)
    n1 = pos
    d0 = np.zeros((n1, n0), dtype=np.int64)
    d1 = np.zeros((n0, n1), dtype=np.int64)
    for i in range(c.lo, c.hi):
        d = c.diff(i)
        if d is None:
            continue
        if i % 2 == 0:
            d0[
                off_o[i + 1] : off_o[i + 1] + c.degree_dim(i + 1),
                off_e[i] : off_e[i] + c.degree_dim(i),
            ] = d.a
        else:
            d1[
                off_e[i + 1] : off_e[i + 1] + c.degree_dim(i + 1),
                off_o[i] : off_o[i] + c.degree_dim(i),
            ] = d.a
    return PeriodicComplex(c.q, n0, n1, Mat(c.q, d0), Mat(c.q, d1))


def tensor_bounded(c: BoundedComplex, d: BoundedComplex) -> BoundedComplex:
    """Koszul tensor product of bounded complexes.

    Degree n is the direct sum of C^s (x) D^{n-s} over ascending s, each
    summand with the row-major Kronecker basis; the differential sends
    x (x) y to dx (x) y + (-1)^s x (x) dy.
    """
    if c.q != d.q:
        raise ValueError("field size mismatch")
    q = c.q
    lo, hi = c.lo + d.lo, c.hi + d.hi

    def summands(n: int) -> list[tuple[int, int]]:
        return [
            (s, n - s)
            for s in range(c.lo, c.hi + 1)
            if d.lo <= n - s <= d.hi and c.degree_dim(s) > 0 and d.degree_dim(n - s) > 0
        ]

    def offsets(n: int) -> tuple[dict[tuple[int, int], int], int]:
        off = {}
        pos = 0
        for s, t in summands(n):
            off[(s, t)] = pos
            pos += c.degree_dim(s) * d.degree_dim(t)
        return off, pos

    dims = []
    diffs = []
    all_off = {n: offsets(n) for n in range(lo, hi + 1)}
    for n in range(lo, hi + 1):
        dims.append(all_off[n][1])
    for n in range(lo, hi):
        src_off, src_dim = all_off[n]
        dst_off, dst_dim = all_off[n + 1]
        m = np.zeros((dst_dim, src_dim), dtype=np.int64)
        for (s, t), o in src_off.items():
            w = c.degree_dim(s) * d.degree_dim(t)
            dc = c.diff(s)
            if dc is not None and (s + 1, t) in dst_off:
                block = np.kron(dc.a, np.eye(d.degree_dim(t), dtype=np.int64))
                o2 = dst_off[(s + 1, t)]
                m[o2 : o2 + block.shape[0], o : o + w] = (
                    m[o2 : o2 + block.shape[0], o : o + w] + block
                ) % q
            dd = d.diff(t)
            if dd is not None and (s, t + 1) in dst_off:
                sign = 1 if s % 2 == 0 else -1
                block = sign * np.kron(np.eye(c.degree_dim(s), dtype=np.int64), dd.a)
                o2 = dst_off[(s, t + 1)]
                m[o2 : o2 + block.shape[0], o : o + w] = (
                    m[o2 : o2 + block.shape[0], o : o + w] + block
                ) % q
        diffs.append(Mat(q, m))
    return BoundedComplex(q, lo, tuple(dims), tuple(diffs))


def tensor_periodic(v: PeriodicComplex, n: PeriodicComplex) -> PeriodicComplex:
    """Signed block tensor of periodic complexes (see module docstring)."""
    if v.q != n.q:
        raise ValueError("field size mismatch")
    q = v.q

    def eye(k):
        return np.eye(k, dtype=np.int64)

    # degree 0: (V0 x N0) + (V1 x N1); degree 1: (V1 x N0) + (V0 x N1)
    d0 = np.block(
        [
            [np.kron(v.d0.a, eye(n.dim0)), (-np.kron(eye(v.dim1), n.d1.a)) % q],
            [np.kron(eye(v.dim0), n.d0.a), np.kron(v.d1.a, eye(n.dim1))],
        ]
    )
    d1 = np.block(
        [
            [np.kron(v.d1.a, eye(n.dim0)), np.kron(eye(v.dim0), n.d1.a)],
            [(-np.kron(eye(v.dim1), n.d0.a)) % q, np.kron(v.d0.a, eye(n.dim1))],
        ]
    )
    dim0 = v.dim0 * n.dim0 + v.dim1 * n.dim1
    dim1 = v.dim1 * n.dim0 + v.dim0 * n.dim1
    return PeriodicComplex(q, dim0, dim1, Mat(q, d0), Mat(q, d1))


def _bounded_labels(c: BoundedComplex) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    ev = [(i, a) for i in _even_degrees(c) for a in range(c.degree_dim(i))]
    od = [(i, a) for i in _odd_degrees(c) for a in range(c.degree_dim(i))]
    return ev, od


def _tensor_compress_labels(
    c: BoundedComplex, d: BoundedComplex
) -> tuple[list[tuple], list[tuple]]:
    """Labels (s, a, t, b) of the compressed bounded tensor, degree 0 and 1."""
    t = tensor_bounded(c, d)
    out0, out1 = [], []
    for n in range(t.lo, t.hi + 1):
        labels = [
            (s, a, n - s, b)
            for s in range(c.lo, c.hi + 1)
            if d.lo <= n - s <= d.hi
            and c.degree_dim(s) > 0
            and d.degree_dim(n - s) > 0
            for a in range(c.degree_dim(s))
            for b in range(d.degree_dim(n - s))
        ]
        (out0 if n % 2 == 0 else out1).extend(labels)
    return out0, out1


def _periodic_tensor_labels(
    c: BoundedComplex, d: BoundedComplex
) -> tuple[list[tuple], list[tuple]]:
    """Labels (s, a, t, b) of the tensor of the compressions."""
    cev, cod = _bounded_labels(c)
    dev, dod = _bounded_labels(d)
    deg0 = [(s, a, t, b) for (s, a) in cev for (t, b) in dev] + [
        (s, a, t, b) for (s, a) in cod for (t, b) in dod
    ]
    deg1 = [(s, a, t, b) for (s, a) in cod for (t, b) in dev] + [
        (s, a, t, b) for (s, a) in cev for (t, b) in dod
    ]
    return deg0, deg1


def delta_tensor_check(c: BoundedComplex, d: BoundedComplex) -> bool:
    """Whether compress(c (x) d) equals compress(c) (x) compress(d) as
    literal matrices under the canonical static relabeling of bases."""
    lhs = compress(tensor_bounded(c, d))
    rhs = tensor_periodic(compress(c), compress(d))
    if (lhs.dim0, lhs.dim1) != (rhs.dim0, rhs.dim1):
        return False
    l0, l1 = _tensor_compress_labels(c, d)
    r0, r1 = _periodic_tensor_labels(c, d)
    if sorted(l0) != sorted(r0) or sorted(l1) != sorted(r1):
        return False
    pos0 = {lab: k for k, lab in enumerate(l0)}
    pos1 = {lab: k for k, lab in enumerate(l1)}
    perm0 = np.array([pos0[lab] for lab in r0], dtype=np.int64)
    perm1 = np.array([pos1[lab] for lab in r1], dtype=np.int64)
    lhs_d0 = lhs.d0.a[np.ix_(perm1, perm0)] if lhs.dim0 and lhs.dim1 else lhs.d0.a
    lhs_d1 = lhs.d1.a[np.ix_(perm0, perm1)] if lhs.dim0 and lhs.dim1 else lhs.d1.a
    return bool(np.array_equal(lhs_d0, rhs.d0.a) and np.array_equal(lhs_d1, rhs.d1.a))


# ---------------------------------------------------------------------------
# internal Hom, shift, cones


def hom_complex(p: PeriodicComplex, s: PeriodicComplex) -> PeriodicComplex:
    """The periodic Hom complex: degree 0 is Hom(P0,S0) + Hom(P1,S1),
    degree 1 is Hom(P0,S1) + Hom(P1,S0);

        d0(f0, f1) = (d0_S f0 - f1 d0_P, d1_S f1 - f0 d1_P)
        d1(g0, g1) = (d1_S g0 + g1 d0_P, d0_S g1 + g0 d1_P).

    Matrices act on row-major vectorized Hom coordinates. Degree-0 homology
    is chain maps modulo homotopy.
    """
    if p.q != s.q:
        raise ValueError("field size mismatch")
    q = p.q

    def eye(k):
        return np.eye(k, dtype=np.int64)

    def left(x: Mat, src_dim: int) -> np.ndarray:
        return np.kron(x.a, eye(src_dim))

    def right(y: Mat, dst_dim: int) -> np.ndarray:
        return np.kron(eye(dst_dim), y.a.T)

    d0 = np.block(
        [
            [left(s.d0, p.dim0), (-right(p.d0, s.dim1)) % q],
            [(-right(p.d1, s.dim0)) % q, left(s.d1, p.dim1)],
        ]
    )
    d1 = np.block(
        [
            [left(s.d1, p.dim0), right(p.d0, s.dim0)],
            [right(p.d1, s.dim1), left(s.d0, p.dim1)],
        ]
    )
    dim0 = s.dim0 * p.dim0 + s.dim1 * p.dim1
    dim1 = s.dim1 * p.dim0 + s.dim0 * p.dim1
    return PeriodicComplex(q, dim0, dim1, Mat(q, d0), Mat(q, d1))


def shift(p: PeriodicComplex) -> PeriodicComplex:
    """[1]: swap the degrees and negate both differentials; an involution."""
    return PeriodicComplex(p.q, p.dim1, p.dim0, -p.d1, -p.d0)


def is_chain_map(f0: Mat, f1: Mat, p: PeriodicComplex, s: PeriodicComplex) -> bool:
    return (s.d0 @ f0 == f1 @ p.d0) and (s.d1 @ f1 == f0 @ p.d1)


def cone(f0: Mat, f1: Mat, p: PeriodicComplex, s: PeriodicComplex) -> PeriodicComplex:
    """Mapping cone of a chain map (f0, f1): p -> s.

    Degree 0 is S0 + P1, degree 1 is S1 + P0, with the standard upper
    triangular differentials (shifted p in the lower corner, with sign)."""
    if not is_chain_map(f0, f1, p, s):
        raise ValueError("not a chain map")
    q = p.q
    d0 = np.block(
        [
            [s.d0.a, f1.a],
            [np.zeros((p.dim0, s.dim0), dtype=np.int64), (-p.d1.a) % q],
        ]
    )
    d1 = np.block(
        [
            [s.d1.a, f0.a],
            [np.zeros((p.dim1, s.dim1), dtype=np.int64), (-p.d0.a) % q],
        ]
    )
    return PeriodicComplex(q, s.dim0 + p.dim1, s.dim1 + p.dim0, Mat(q, d0), Mat(q, d1))
