"""Finite-dimensional representations over F_q of a path algebra or of the
preprojective (doubled, with relations) algebra of an acyclic quiver.

A representation carries one matrix per arrow: per original arrow for the
path algebra, per double-quiver arrow for the preprojective algebra. The
matrix for an arrow s -> t has shape (dim_t, dim_s) and acts on column
vectors. Preprojective representations must satisfy, at every vertex v,

    sum over arrows a with target v of sign(a) * M_a * M_bar(a) = 0,

and must be nilpotent (the radical filtration reaches zero).

Everything downstream (Hall numbers, root-category counts, reflection
functors) is built from the primitives here: Hom spaces via intertwiner
kernels, Ext dimensions via the Euler/symmetric forms, isomorphism testing,
submodule/quotient calculus, and exhaustive-per-dimension class lists with
two independent generation routes (raw GL-orbit partition, extension
closure).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .ffla import (
    DEFAULT_BUDGET,
    BudgetError,
    Mat,
    batched_det_mod,
    enumerate_subspaces,
    subspace_count,
)
from .quiver import DoubleQuiver, Quiver, Vec, alpha, vec_sub

PATH = "path"
PREPROJECTIVE = "preprojective"

_ISO_SEED = 0xA11CE
_ISO_RANDOM_TRIES = 256


def arrow_pairs(quiver: Quiver, algebra: str) -> tuple[tuple[int, int], ...]:
    """(source, target) per map slot: Q arrows for the path algebra, double
    arrows (originals then reversals) for the preprojective algebra."""
    if algebra == PATH:
        return quiver.arrows
    if algebra == PREPROJECTIVE:
        return DoubleQuiver(quiver).arrows
    raise ValueError(f"unknown algebra tag {algebra!r}")


class Rep:
    """An immutable representation; validated on construction."""

    __slots__ = ("quiver", "algebra", "q", "dims", "maps", "_fp", "_key")

    def __init__(
        self,
        quiver: Quiver,
        algebra: str,
        q: int,
        dims: Sequence[int],
        maps: Sequence[Mat],
        _validate: bool = True,
    ):
        self.quiver = quiver
        self.algebra = algebra
        self.q = q
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        self._fp = None
        self._key = None
        if any(d < 0 for d in self.dims) or len(self.dims) != quiver.n_vertices:
            raise ValueError(f"bad dimension vector {self.dims}")
        pairs = arrow_pairs(quiver, algebra)
        if len(self.maps) != len(pairs):
            raise ValueError(
                f"expected {len(pairs)} maps for algebra {algebra!r}, got {len(self.maps)}"
            )
        for m, (s, t) in zip(self.maps, pairs):
            if m.p != q:
                raise ValueError("map field size mismatch")
            if m.shape != (self.dims[t], self.dims[s]):
                raise ValueError(
                    f"map for arrow {s}->{t} has shape {m.shape}, expected "
                    f"({self.dims[t]}, {self.dims[s]})"
                )
        if _validate and algebra == PREPROJECTIVE:
            bad = self._relation_defect()
            if bad is not None:
                raise ValueError(f"preprojective relation fails at vertex {bad}")
            if not self._is_nilpotent():
                raise ValueError("representation is not nilpotent")

    # -- structure checks ---------------------------------------------------

    def _relation_defect(self) -> int | None:
        dq = DoubleQuiver(self.quiver)
        for v in range(self.quiver.n_vertices):
            if self.dims[v] == 0:
                continue
            acc = Mat.zeros(self.q, self.dims[v], self.dims[v])
            for h in dq.arrows_into(v):
                acc = acc + dq.sign(h) * (self.maps[h] @ self.maps[dq.bar(h)])
            if not acc.is_zero():
                return v
        return None

    def _is_nilpotent(self) -> bool:
        series = self.radical_series()
        return all(d == 0 for d in series[-1])

    def arrow_pairs(self) -> tuple[tuple[int, int], ...]:
        return arrow_pairs(self.quiver, self.algebra)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    # -- invariants ----------------------------------------------------------

    def radical_series(self) -> list[Vec]:
        """Dimension vectors of rad^0 M >= rad^1 M >= ... down to zero (or to
        the stable nonzero value for a non-nilpotent candidate)."""
        n = self.quiver.n_vertices
        pairs = self.arrow_pairs()
        spaces = [Mat.identity(self.q, self.dims[v]) for v in range(n)]
        series = [self.dims]
        for _ in range(self.total_dim + 1):
            new = []
            for v in range(n):
                pieces = [
                    self.maps[h] @ spaces[s]
                    for h, (s, t) in enumerate(pairs)
                    if t == v and self.dims[v] > 0
                ]
                if pieces:
                    new.append(Mat.hstack(pieces).column_space_rref())
                else:
                    new.append(Mat.zeros(self.q, self.dims[v], 0))
            dims = tuple(m.cols for m in new)
            if dims == series[-1]:
                series.append(dims)
                break
            series.append(dims)
            spaces = new
            if all(d == 0 for d in dims):
                break
        return series

    def socle_dims(self) -> Vec:
        """dim of the socle at each vertex: vectors killed by every arrow out."""
        n = self.quiver.n_vertices
        pairs = self.arrow_pairs()
        out = []
        for v in range(n):
            pieces = [self.maps[h] for h, (s, t) in enumerate(pairs) if s == v]
            if pieces:
                out.append(self.dims[v] - Mat.vstack(pieces).rank())
            else:
                out.append(self.dims[v])
        return tuple(out)

    def fingerprint(self) -> tuple:
        """Cheap isomorphism invariant (equal for isomorphic reps)."""
        if self._fp is None:
            rs = self.radical_series()
            self._fp = (
                self.dims,
                tuple(x for vec in rs for x in vec),
                self.socle_dims(),
            )
        return self._fp

    def key(self) -> bytes:
        """Exact identity key (same bytes iff literally the same rep data)."""
        if self._key is None:
            head = f"{self.algebra}|{self.q}|{self.dims}|".encode()
            self._key = head + b"".join(m.key() for m in self.maps)
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Rep) and self.key() == other.key() and self.quiver == other.quiver

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Rep({self.algebra}, q={self.q}, dims={self.dims})"

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "quiver": {
                "vertices": self.quiver.n_vertices,
                "arrows": [list(a) for a in self.quiver.arrows],
            },
            "algebra": self.algebra,
            "q": self.q,
            "dims": list(self.dims),
            "maps": [[[int(x) for x in row] for row in m.a] for m in self.maps],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "Rep":
        quiver = Quiver(
            int(d["quiver"]["vertices"]),
            tuple((int(s), int(t)) for s, t in d["quiver"]["arrows"]),
        )
        q = int(d["q"])
        dims = [int(x) for x in d["dims"]]
        pairs = arrow_pairs(quiver, d["algebra"])
        maps = []
        for raw, (s, t) in zip(d["maps"], pairs):
            arr = np.array(raw, dtype=np.int64).reshape(dims[t], dims[s])
            maps.append(Mat(q, arr))
        return Rep(quiver, d["algebra"], q, dims, maps)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json(s: str) -> "Rep":
        return Rep.from_json_dict(json.loads(s))


# ---------------------------------------------------------------------------
# constructors


def zero_rep(quiver: Quiver, algebra: str, q: int) -> Rep:
    n = quiver.n_vertices
    pairs = arrow_pairs(quiver, algebra)
    return Rep(quiver, algebra, q, (0,) * n, [Mat.zeros(q, 0, 0) for _ in pairs])


def simple(quiver: Quiver, algebra: str, q: int, i: int) -> Rep:
    dims = alpha(i, quiver.n_vertices)
    pairs = arrow_pairs(quiver, algebra)
    maps = [Mat.zeros(q, dims[t], dims[s]) for s, t in pairs]
    return Rep(quiver, algebra, q, dims, maps)


def direct_sum(a: Rep, b: Rep) -> Rep:
    if (a.quiver, a.algebra, a.q) != (b.quiver, b.algebra, b.q):
        raise ValueError("direct sum of representations over different algebras")
    dims = tuple(x + y for x, y in zip(a.dims, b.dims))
    pairs = a.arrow_pairs()
    maps = []
    for h, (s, t) in enumerate(pairs):
        m = np.zeros((dims[t], dims[s]), dtype=np.int64)
        m[: a.dims[t], : a.dims[s]] = a.maps[h].a
        m[a.dims[t] :, a.dims[s] :] = b.maps[h].a
        maps.append(Mat(a.q, m))
    return Rep(a.quiver, a.algebra, a.q, dims, maps)


def universal_extension_rep(quiver: Quiver, q: int, j: int, i: int) -> Rep:
    """The universal extension 0 -> S_j -> E -> S_i^{(a)} -> 0, where a is
    the number of double-quiver arrows i -> j (= arrows between i and j in
    the base quiver): one copy of k at vertex i per such arrow, acting on
    the copy of k at vertex j by that arrow's coordinate projection; every
    other map (in particular every arrow out of vertex j) is zero.

    This is the image of the simple at j under the spherical twist at i, and
    the image under the reflection at i up to isomorphism; its dimension
    vector is alpha_j + a * alpha_i = s_i(alpha_j).
    """
    if i == j:
        raise ValueError("need two distinct vertices")
    dq = DoubleQuiver(quiver)
    slots = dq.arrows_from_to(i, j)
    n = quiver.n_vertices
    dims = tuple(
        (len(slots) if v == i else 0) + (1 if v == j else 0) for v in range(n)
    )
    maps = []
    for h, (s, t) in enumerate(dq.arrows):
        m = Mat.zeros(q, dims[t], dims[s])
        if s == i and t == j:
            l = slots.index(h)
            arr = np.zeros((1, dims[i]), dtype=np.int64)
            arr[0, l] = 1
            m = Mat(q, arr)
        maps.append(m)
    return Rep(quiver, PREPROJECTIVE, q, dims, maps)


# ---------------------------------------------------------------------------
# Hom and Ext


def hom_space(m: Rep, n: Rep) -> list[tuple[Mat, ...]]:
    """Basis of Hom(m, n): tuples of per-vertex matrices phi_v (n_v x m_v)
    with phi_t M_a = N_a phi_s for every arrow."""
    if (m.quiver, m.algebra, m.q) != (n.quiver, n.algebra, n.q):
        raise ValueError("Hom between representations of different algebras")
    q = m.q
    nv = m.quiver.n_vertices
    sizes = [n.dims[v] * m.dims[v] for v in range(nv)]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    pairs = m.arrow_pairs()
    rows = []
    for h, (s, t) in enumerate(pairs):
        r = n.dims[t] * m.dims[s]
        if r == 0:
            continue
        block = np.zeros((r, total), dtype=np.int64)
        left = np.kron(np.eye(n.dims[t], dtype=np.int64), m.maps[h].a.T)
        block[:, offsets[t] : offsets[t + 1]] = left
        right = np.kron(n.maps[h].a, np.eye(m.dims[s], dtype=np.int64))
        block[:, offsets[s] : offsets[s + 1]] = (
            block[:, offsets[s] : offsets[s + 1]] - right
        ) % q
        rows.append(block)
    if rows:
        system = Mat(q, np.vstack(rows))
    else:
        system = Mat.zeros(q, 0, total)
    kern = system.kernel()
    basis = []
    for k in range(kern.cols):
        v = kern.a[:, k]
        phis = tuple(
            Mat(q, v[offsets[u] : offsets[u + 1]].reshape(n.dims[u], m.dims[u]))
            for u in range(nv)
        )
        basis.append(phis)
    return basis


def hom_dim(m: Rep, n: Rep) -> int:
    return len(hom_space(m, n))


def ext_dims(m: Rep, n: Rep) -> tuple[int, int]:
    """(dim Ext^1, dim Ext^2) for the nilpotent representations built here.

    Path algebra: hereditary, Ext^2 = 0 and dim Ext^1 = dim Hom - <d_m, d_n>.
    Preprojective: 2-Calabi-Yau symmetry gives Ext^2(m,n) = Hom(n,m)* and
    dim Ext^1 = dim Hom(m,n) + dim Hom(n,m) - (d_m, d_n).
    """
    if m.algebra == PATH:
        e1 = hom_dim(m, n) - m.quiver.euler_form(m.dims, n.dims)
        return e1, 0
    h_mn = hom_dim(m, n)
    h_nm = hom_dim(n, m)
    e1 = h_mn + h_nm - m.quiver.symmetric_form(m.dims, n.dims)
    return e1, h_nm


# ---------------------------------------------------------------------------
# isomorphism testing


def _endo_stack(basis: list[tuple[Mat, ...]], nv: int) -> list[np.ndarray]:
    """Per-vertex (h, d_v, d_v') stacks of a hom basis for batched assembly."""
    stacks = []
    for v in range(nv):
        stacks.append(np.stack([b[v].a for b in basis]) if basis else None)
    return stacks


def _combo_batches(q: int, h: int, chunk: int = 4096) -> Iterator[np.ndarray]:
    it = itertools.product(range(q), repeat=h)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def find_isomorphism(m: Rep, n: Rep, budget: int = DEFAULT_BUDGET) -> tuple[Mat, ...] | None:
    """An isomorphism m -> n as per-vertex matrices, or None.

    Strategy: invariant prefilters, then a seeded random scan over the Hom
    space, then exhaustive enumeration (budget-checked, so the answer is
    never wrong: if the budget is too small the search raises instead of
    guessing).
    """
    if m.dims != n.dims:
        return None
    if m.total_dim == 0:
        return tuple(Mat.zeros(m.q, 0, 0) for _ in range(m.quiver.n_vertices))
    if m.fingerprint() != n.fingerprint():
        return None
    basis = hom_space(m, n)
    h = len(basis)
    if h == 0:
        return None
    if hom_dim(m, m) != h or hom_dim(n, n) != h:
        return None
    q = m.q
    nv = m.quiver.n_vertices
    live = [v for v in range(nv) if m.dims[v] > 0]
    stacks = _endo_stack(basis, nv)

    def check(coeffs: np.ndarray) -> tuple[Mat, ...] | None:
        # coeffs: (c, h); returns the first invertible tuple found
        mask = np.ones(len(coeffs), dtype=bool)
        mats = {}
        for v in live:
            mv = np.einsum("ch,hij->cij", coeffs, stacks[v]) % q
            mats[v] = mv
            mask &= batched_det_mod(mv % q, q) != 0
            if not mask.any():
                return None
        idx = int(np.nonzero(mask)[0][0])
        return tuple(
            Mat(q, mats[v][idx]) if v in mats else Mat.zeros(q, n.dims[v], m.dims[v])
            for v in range(nv)
        )

    rng = random.Random(_ISO_SEED)
    tries = np.array(
        [[rng.randrange(q) for _ in range(h)] for _ in range(_ISO_RANDOM_TRIES)],
        dtype=np.int64,
    )
    got = check(tries)
    if got is not None:
        return got
    if q**h > budget:
        raise BudgetError(f"isomorphism search over Hom of dim {h} at q={q}", q**h, budget)
    for block in _combo_batches(q, h):
        got = check(block)
        if got is not None:
            return got
    return None


def are_isomorphic(m: Rep, n: Rep, budget: int = DEFAULT_BUDGET) -> bool:
    return find_isomorphism(m, n, budget) is not None


def aut_count(m: Rep, budget: int = DEFAULT_BUDGET) -> int:
    """|Aut(m)| by exhaustive enumeration of the endomorphism space."""
    if m.total_dim == 0:
        return 1
    basis = hom_space(m, m)
    h = len(basis)
    q = m.q
    if q**h > budget:
        raise BudgetError(f"automorphism count over End of dim {h} at q={q}", q**h, budget)
    nv = m.quiver.n_vertices
    live = [v for v in range(nv) if m.dims[v] > 0]
    stacks = _endo_stack(basis, nv)
    count = 0
    for block in _combo_batches(q, h):
        mask = np.ones(len(block), dtype=bool)
        for v in live:
            mv = np.einsum("ch,hij->cij", block, stacks[v]) % q
            mask &= batched_det_mod(mv, q) != 0
        count += int(mask.sum())
    return count


def is_indecomposable(m: Rep, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether m is nonzero with no idempotent endomorphisms besides 0, id."""
    if m.total_dim == 0:
        return False
    basis = hom_space(m, m)
    h = len(basis)
    if h == 1:
        return True
    q = m.q
    if q**h > budget:
        raise BudgetError(f"idempotent scan over End of dim {h} at q={q}", q**h, budget)
    nv = m.quiver.n_vertices
    live = [v for v in range(nv) if m.dims[v] > 0]
    stacks = _endo_stack(basis, nv)
    idem = 0
    for block in _combo_batches(q, h):
        mask = np.ones(len(block), dtype=bool)
        for v in live:
            mv = np.einsum("ch,hij->cij", block, stacks[v]) % q
            sq = np.einsum("cij,cjk->cik", mv, mv) % q
            mask &= np.all(sq == mv, axis=(1, 2))
        idem += int(mask.sum())
    return idem == 2


# ---------------------------------------------------------------------------
# submodules and quotients


def submodules_of_dims(
    l: Rep, sub_dims: Sequence[int], budget: int = DEFAULT_BUDGET
) -> list[tuple[Mat, ...]]:
    """All arrow-stable tuples of subspaces of the given dimensions, each as
    per-vertex column-basis matrices."""
    nv = l.quiver.n_vertices
    sub_dims = tuple(sub_dims)
    if len(sub_dims) != nv or any(
        not 0 <= k <= d for k, d in zip(sub_dims, l.dims)
    ):
        return []
    total = 1
    for v in range(nv):
        total *= subspace_count(l.dims[v], sub_dims[v], l.q)
    if total > budget:
        raise BudgetError("submodule candidate enumeration", total, budget)
    per_vertex = [
        list(enumerate_subspaces(l.dims[v], sub_dims[v], l.q, budget))
        for v in range(nv)
    ]
    pairs = l.arrow_pairs()
    out = []
    for combo in itertools.product(*per_vertex):
        ok = True
        for h, (s, t) in enumerate(pairs):
            img = l.maps[h] @ combo[s]
            if img.cols and combo[t].solve(img) is None:
                ok = False
                break
        if ok:
            out.append(tuple(combo))
    return out


def sub_to_rep(l: Rep, bases: Sequence[Mat]) -> Rep:
    """The subrepresentation carried by arrow-stable subspace bases."""
    pairs = l.arrow_pairs()
    dims = tuple(b.cols for b in bases)
    maps = []
    for h, (s, t) in enumerate(pairs):
        sol = bases[t].solve(l.maps[h] @ bases[s])
        if sol is None:
            raise ValueError("subspaces are not arrow-stable")
        maps.append(sol)
    return Rep(l.quiver, l.algebra, l.q, dims, maps)


def quotient_rep(l: Rep, bases: Sequence[Mat]) -> tuple[Rep, tuple[Mat, ...]]:
    """The quotient by an arrow-stable subspace tuple, with the projections.

    Returns (quotient, projections) where projection_v maps l's vertex-v
    space onto the chosen complement coordinates.
    """
    q = l.q
    nv = l.quiver.n_vertices
    pairs = l.arrow_pairs()
    t_inv = []
    proj = []
    kdims = []
    for v in range(nv):
        b = bases[v]
        k, d = b.cols, l.dims[v]
        kdims.append(k)
        _, pivots = b.t().rref()
        complement = [j for j in range(d) if j not in pivots]
        cols = np.zeros((d, d), dtype=np.int64)
        if k:
            cols[:, :k] = b.a
        for idx, j in enumerate(complement):
            cols[j, k + idx] = 1
        t = Mat(q, cols)
        ti = t.inv()
        t_inv.append(ti)
        proj.append(Mat(q, ti.a[k:, :]))
    dims = tuple(l.dims[v] - kdims[v] for v in range(nv))
    maps = []
    for h, (s, t) in enumerate(pairs):
        full = t_inv[t] @ l.maps[h]  # rows in the new basis at the target
        block = full.a[kdims[t] :, :]  # complement rows
        # columns: action on complement representatives
        rep_cols = np.zeros((l.dims[s], dims[s]), dtype=np.int64)
        _, pivots = bases[s].t().rref()
        complement = [j for j in range(l.dims[s]) if j not in pivots]
        for idx, j in enumerate(complement):
            rep_cols[j, idx] = 1
        maps.append(Mat(q, block) @ Mat(q, rep_cols))
    quot = Rep(l.quiver, l.algebra, q, dims, maps)
    return quot, tuple(proj)


def submodules_isomorphic_to(
    l: Rep, n: Rep, budget: int = DEFAULT_BUDGET
) -> list[tuple[tuple[Mat, ...], tuple[Mat, ...]]]:
    """All submodules of l isomorphic to n, each as (bases, iso) with iso a
    per-vertex matrix tuple n -> subspace coordinates."""
    out = []
    for bases in submodules_of_dims(l, n.dims, budget):
        sub = sub_to_rep(l, bases)
        psi = find_isomorphism(n, sub, budget)
        if psi is not None:
            out.append((bases, psi))
    return out


def restrict_to_path_algebra(m: Rep) -> Rep | None:
    """Forget the reversed maps if they all vanish; None otherwise."""
    if m.algebra != PREPROJECTIVE:
        raise ValueError("restriction applies to preprojective representations")
    dq = DoubleQuiver(m.quiver)
    for h in range(dq.m, 2 * dq.m):
        if not m.maps[h].is_zero():
            return None
    return Rep(m.quiver, PATH, m.q, m.dims, m.maps[: dq.m])


# ---------------------------------------------------------------------------
# per-dimension class lists


@dataclass(frozen=True)
class Handle:
    """Identifier of an isomorphism class inside a ModuleContext."""

    dims: Vec
    index: int


class ModuleContext:
    """A (quiver, algebra tag, q) world with memoized classification.

    ``classes_of_dim`` lists one representative per isomorphism class of
    nilpotent representations of each dimension vector (deterministic order
    for a fixed context). The default generation route is extension closure;
    ``raw_classes_of_dim`` is the independent brute-force GL-orbit route and
    also reports orbit sizes.
    """

    def __init__(self, quiver: Quiver, algebra: str, q: int, budget: int = DEFAULT_BUDGET):
        if algebra not in (PATH, PREPROJECTIVE):
            raise ValueError(f"unknown algebra tag {algebra!r}")
        self.quiver = quiver
        self.algebra = algebra
        self.q = q
        self.budget = budget
        self._classes: dict[Vec, list[Rep]] = {}
        self._handles: dict[bytes, Handle] = {}

    # -- class lists ---------------------------------------------------------

    def classes_of_dim(self, dims: Sequence[int]) -> list[Rep]:
        dims = tuple(int(d) for d in dims)
        if dims not in self._classes:
            self._classes[dims] = self._closure_classes(dims)
        return self._classes[dims]

    def _closure_classes(self, dims: Vec) -> list[Rep]:
        n = self.quiver.n_vertices
        if any(d < 0 for d in dims):
            return []
        if all(d == 0 for d in dims):
            return [zero_rep(self.quiver, self.algebra, self.q)]
        classes: list[Rep] = []
        buckets: dict[tuple, list[int]] = {}

        def consider(cand: Rep):
            fp = cand.fingerprint()
            for idx in buckets.get(fp, ()):
                if find_isomorphism(cand, classes[idx], self.budget) is not None:
                    return
            buckets.setdefault(fp, []).append(len(classes))
            classes.append(cand)

        for i in range(n):
            if dims[i] == 0:
                continue
            below = vec_sub(dims, alpha(i, n))
            for m in self.classes_of_dim(below):
                for cand in self._extensions_by_socle_simple(m, i):
                    consider(cand)
        return classes

    def _extensions_by_socle_simple(self, m: Rep, i: int) -> Iterator[Rep]:
        """All block extensions 0 -> S_i -> L -> m -> 0 (corner enumeration
        over the kernel of the relation-corner condition at vertex i)."""
        q = self.q
        pairs = m.arrow_pairs()
        into_i = [h for h, (s, t) in enumerate(pairs) if t == i]
        widths = [m.dims[pairs[h][0]] for h in into_i]
        total = sum(widths)
        if self.algebra == PREPROJECTIVE:
            dq = DoubleQuiver(self.quiver)
            # corner condition: sum over arrows a into i of sign(a) c_a M_bar(a) = 0
            cols = []
            for h in into_i:
                mat = (dq.sign(h) * m.maps[dq.bar(h)].a.T) % q
                cols.append(mat)  # (m_i, m_{s(h)}) block of the condition
            if total and m.dims[i]:
                system = Mat(q, np.hstack(cols))  # (m_i, total)
                kern = system.kernel()
            else:
                kern = Mat.identity(q, total)
        else:
            kern = Mat.identity(q, total)
        kdim = kern.cols
        if q**kdim > self.budget:
            raise BudgetError("extension corner enumeration", q**kdim, self.budget)
        dims = tuple(d + (1 if v == i else 0) for v, d in enumerate(m.dims))
        for coeffs in itertools.product(range(q), repeat=kdim):
            corner = (kern.a @ np.array(coeffs, dtype=np.int64).reshape(-1, 1)) % q
            flat = corner.reshape(-1)
            maps = []
            pos = {h: o for h, o in zip(into_i, np.concatenate([[0], np.cumsum(widths)]))}
            for h, (s, t) in enumerate(pairs):
                block = np.zeros((dims[t], dims[s]), dtype=np.int64)
                shift_r = 1 if t == i else 0
                shift_c = 1 if s == i else 0
                block[shift_r:, shift_c:] = m.maps[h].a
                if t == i:
                    o = pos[h]
                    block[0, shift_c:] = flat[o : o + m.dims[s]]
                maps.append(Mat(q, block))
            yield Rep(self.quiver, self.algebra, q, dims, maps)

    def raw_classes_of_dim(self, dims: Sequence[int]) -> tuple[list[Rep], list[int]]:
        """Brute-force route: enumerate every valid matrix tuple and partition
        into GL-orbits. Returns (class representatives, orbit sizes); the
        representative of each orbit is its lexicographically least member.
        """
        dims = tuple(int(d) for d in dims)
        q = self.q
        pairs = arrow_pairs(self.quiver, self.algebra)
        shapes = [(dims[t], dims[s]) for s, t in pairs]
        entries = sum(r * c for r, c in shapes)
        if q**entries > self.budget:
            raise BudgetError("raw matrix-tuple enumeration", q**entries, self.budget)
        gens = self._gl_generators(dims)
        group_size = 1
        for v, d in enumerate(dims):
            group_size *= _gl_order(q, d)
        if group_size > 10**7:
            raise BudgetError("raw GL-orbit partition", group_size, 10**7)

        def unpack(flat: tuple[int, ...]) -> list[np.ndarray]:
            mats = []
            o = 0
            for r, c in shapes:
                mats.append(np.array(flat[o : o + r * c], dtype=np.int64).reshape(r, c))
                o += r * c
            return mats

        def pack(mats: list[np.ndarray]) -> tuple[int, ...]:
            return tuple(int(x) for m in mats for x in m.reshape(-1))

        def is_valid(mats: list[np.ndarray]) -> bool:
            try:
                Rep(self.quiver, self.algebra, q, dims, [Mat(q, m) for m in mats])
            except ValueError:
                return False
            return True

        seen: set[tuple[int, ...]] = set()
        reps: list[tuple[tuple[int, ...], int]] = []
        for flat in itertools.product(range(q), repeat=entries):
            if flat in seen:
                continue
            mats = unpack(flat)
            if not is_valid(mats):
                seen.add(flat)
                continue
            orbit = {flat}
            frontier = [mats]
            while frontier:
                cur = frontier.pop()
                for v, g, ginv in gens:
                    new = [m.copy() for m in cur]
                    for h, (s, t) in enumerate(pairs):
                        if t == v:
                            new[h] = (g @ new[h]) % q
                        if s == v:
                            new[h] = (new[h] @ ginv) % q
                    k = pack(new)
                    if k not in orbit:
                        orbit.add(k)
                        frontier.append(new)
            seen |= orbit
            reps.append((min(orbit), len(orbit)))
        reps.sort()
        out_reps = [
            Rep(self.quiver, self.algebra, q, dims, [Mat(q, m) for m in unpack(flat)])
            for flat, _ in reps
        ]
        return out_reps, [size for _, size in reps]

    def _gl_generators(self, dims: Vec) -> list[tuple[int, np.ndarray, np.ndarray]]:
        """(vertex, g, g^{-1}) generator triples for prod_v GL_{d_v}(F_q)."""
        q = self.q
        gens = []
        gamma = _primitive_root(q)
        for v, d in enumerate(dims):
            if d == 0:
                continue
            if gamma != 1:
                g = np.eye(d, dtype=np.int64)
                g[0, 0] = gamma
                gi = np.eye(d, dtype=np.int64)
                gi[0, 0] = pow(gamma, -1, q)
                gens.append((v, g, gi))
            for a in range(d):
                for b in range(d):
                    if a == b:
                        continue
                    g = np.eye(d, dtype=np.int64)
                    g[a, b] = 1
                    gi = np.eye(d, dtype=np.int64)
                    gi[a, b] = q - 1
                    gens.append((v, g, gi))
        return gens

    # -- handles -------------------------------------------------------------

    def handle_of(self, m: Rep) -> Handle:
        if (m.quiver, m.algebra, m.q) != (self.quiver, self.algebra, self.q):
            raise ValueError("representation belongs to a different context")
        k = m.key()
        if k in self._handles:
            return self._handles[k]
        classes = self.classes_of_dim(m.dims)
        for idx, c in enumerate(classes):
            if find_isomorphism(m, c, self.budget) is not None:
                h = Handle(m.dims, idx)
                self._handles[k] = h
                return h
        raise RuntimeError(
            f"class list for {m.dims} is missing this representation (bug)"
        )

    def rep_of(self, h: Handle) -> Rep:
        return self.classes_of_dim(h.dims)[h.index]

    def simple(self, i: int) -> Rep:
        return simple(self.quiver, self.algebra, self.q, i)

    def zero(self) -> Rep:
        return zero_rep(self.quiver, self.algebra, self.q)


def _gl_order(q: int, d: int) -> int:
    out = 1
    for k in range(d):
        out *= q**d - q**k
    return out


def _primitive_root(q: int) -> int:
    for g in range(2, q):
        seen = set()
        x = 1
        for _ in range(q - 1):
            x = x * g % q
            seen.add(x)
        if len(seen) == q - 1:
            return g
    return 1


# ---------------------------------------------------------------------------
# integer-matrix templates (for counting over several primes)


@dataclass(frozen=True)
class RepTemplate:
    """A representation shape with integer entries, instantiable mod any
    prime; used to count the same configuration over several fields."""

    quiver: Quiver
    algebra: str
    dims: Vec
    int_maps: tuple[tuple[tuple[int, ...], ...], ...]

    def at_prime(self, p: int) -> Rep:
        pairs = arrow_pairs(self.quiver, self.algebra)
        maps = []
        for raw, (s, t) in zip(self.int_maps, pairs):
            arr = np.array(raw, dtype=np.int64).reshape(self.dims[t], self.dims[s])
            maps.append(Mat(p, arr))
        return Rep(self.quiver, self.algebra, p, self.dims, maps)

    @staticmethod
    def from_rep(m: Rep) -> "RepTemplate":
        return RepTemplate(
            m.quiver,
            m.algebra,
            m.dims,
            tuple(tuple(tuple(int(x) for x in row) for row in mm.a) for mm in m.maps),
        )
