"""Two-periodic root-category fragment: objects, triangle counts, Lie bracket.

Objects live in the 2-periodic (shift-squared-trivial) triangulated closure of
the nilpotent module category.  The desk-scale fragment implemented here:

- ``RCModule(handle, parity)``: a module class placed in even (parity 0) or
  odd (parity 1) shift; ``RCTube(vertex, n)``: the indecomposable objects of
  the thick subcategory generated by one vertex simple, indexed by nonzero
  integers (n = 1 and n = -1 alias the simple and its shift — use the module
  form for those).
- ``triangle_count_R``: the orbit count F^L_{MN} of triangles N -> L -> M ->
  N[1] with all three corners module classes.  For the doubled algebra a
  morphism N -> L carries a degree-2 component alongside the module map, and
  each submodule orbit contributes q^(e2(N,L) - r) where r is the rank of
  composition-with-f on the degree-2 part; over the path algebra the degree-2
  part is zero and the count degenerates to the plain submodule count.
- ``LieElement`` and ``bracket``: the Lie algebra on symbols u_X (X running
  over indecomposable objects) plus lattice Cartan elements, with structure
  constants F^L_{XY} - F^L_{YX}, the same-vertex delta term, and the Cartan
  action through the symmetrised Euler form.  Coefficients live in Z/(q-1).
- ``graded_dim_nplus``: free rank per dimension vector of the span of
  iterated brackets of the u_{S_i}, realised by commutators in the Hall
  algebra (the positive part embeds there), rank over Z/(q-1) via Smith
  normal form.

Unsupported bracket pairs raise; no structure constant is ever fabricated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ffla import BudgetError, Mat, free_rank_mod
from .quiver import Quiver, alpha, vec_add
from .rep import (
    PATH,
    PREPROJECTIVE,
    Handle,
    ModuleContext,
    Rep,
    ext_dims,
    hom_space,
    hom_dim,
    is_indecomposable,
    submodules_isomorphic_to,
)

Vec = tuple[int, ...]


# -- objects ---------------------------------------------------------------------


@dataclass(frozen=True)
class RCModule:
    """A module iso-class at even (0) or odd (1) shift parity."""

    handle: Handle
    parity: int

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError(f"parity must be 0 or 1, got {self.parity}")

    def shifted(self) -> "RCModule":
        return RCModule(self.handle, 1 - self.parity)


@dataclass(frozen=True)
class RCTube:
    """Indecomposable object <n> of the one-vertex tube at ``vertex``.

    Even n are the module-side objects (class zero in K0), odd n the shifted
    ones; n = +-1 are excluded because they alias the vertex simple and its
    shift, which must be written as RCModule terms."""

    vertex: int
    n: int

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("tube index must be nonzero")
        if abs(self.n) == 1:
            raise ValueError("tube index +-1 aliases the vertex simple; use the module form")


RCObject = RCModule | RCTube


def module_obj(ctx: ModuleContext, rep: Rep, parity: int = 0) -> RCModule:
    """Wrap an indecomposable module as a root-category basis object."""
    if rep.total_dim == 0:
        raise ValueError("the zero module is not a basis object")
    if not is_indecomposable(rep, ctx.budget):
        raise ValueError("Lie basis objects must be indecomposable")
    return RCModule(ctx.handle_of(rep), parity)


def simple_obj(ctx: ModuleContext, i: int, parity: int = 0) -> RCModule:
    return RCModule(ctx.handle_of(ctx.simple(i)), parity)


def class_of(ctx: ModuleContext, obj: RCObject) -> Vec:
    """Image in the root lattice (K0 with simples at the unit vectors)."""
    n = ctx.quiver.n_vertices
    if isinstance(obj, RCModule):
        sign = 1 if obj.parity == 0 else -1
        return tuple(sign * d for d in obj.handle.dims)
    if obj.n % 2 == 0:
        return tuple(0 for _ in range(n))
    sign = 1 if obj.n > 0 else -1
    return tuple(sign * a for a in alpha(obj.vertex, n))


def sym_form_R(quiver: Quiver, x: Sequence[int], y: Sequence[int]) -> int:
    """Symmetrised Euler form on root-lattice classes."""
    return quiver.symmetric_form(x, y)


# -- triangle counts ---------------------------------------------------------------


def triangle_count_R(ctx: ModuleContext, m: Rep, n: Rep, l: Rep) -> int:
    """F^L_{MN}: orbits, under Aut(N), of morphisms N -> L in the 2-periodic
    category whose cone is M (all module classes, same parity).

    A morphism is (f0, f2) with f0 a module map and f2 a degree-2 component;
    the cone is M exactly when f0 is injective with cokernel M, the f2
    component being free.  Each Aut(N)-orbit of injections with cokernel M
    (one per submodule copy of N) splinters into q^(e2(N,L) - r(f0)) orbits,
    where r(f0) is the rank of Ext^2(N,N) -> Ext^2(N,L), g -> f0.g; by the
    2-Calabi-Yau duality that rank equals the rank of precomposition
    Hom(L,N) -> Hom(N,N).  Over the path algebra e2 = 0 and the count is the
    plain number of such submodules.  Always a nonnegative integer, and
    congruent to the submodule count mod (q-1)."""
    for rep, name in ((m, "cone"), (n, "sub")):
        if rep.total_dim and not is_indecomposable(rep, ctx.budget):
            raise ValueError(f"triangle counting requires an indecomposable {name} term")
    if vec_add(m.dims, n.dims) != tuple(l.dims):
        return 0
    q = ctx.q
    e2_nl = hom_dim(l, n) if ctx.algebra == PREPROJECTIVE else 0
    hom_ln = hom_space(l, n) if e2_nl else []
    total = 0
    for bases, psi in submodules_isomorphic_to(l, n, ctx.budget):
        if e2_nl == 0:
            total += 1
            continue
        f = tuple(b @ s for b, s in zip(bases, psi))  # N -> L with image the submodule
        rows = []
        for g in hom_ln:
            composite = [gg @ ff for gg, ff in zip(g, f)]  # N -> N
            rows.append([int(x) for comp in composite for x in comp.a.flat])
        r = Mat(q, rows).rank() if rows else 0
        if r > e2_nl:
            raise AssertionError("precomposition rank exceeded its Ext bound")
        total += q ** (e2_nl - r)
    return total


# -- Lie elements --------------------------------------------------------------------


def _require_lie_modulus(ctx: ModuleContext) -> int:
    modulus = ctx.q - 1
    if modulus < 2:
        raise ValueError("Lie coefficients live in Z/(q-1); need q >= 3")
    return modulus


class LieElement:
    """Sparse element h-part + sum of u_X terms, coefficients in Z/(q-1).

    The Cartan part is stored as a root-lattice vector (coefficients of the
    h_i attached to the vertex simples)."""

    __slots__ = ("ctx", "modulus", "h", "u")

    def __init__(self, ctx: ModuleContext, h: Sequence[int] | None = None, u: dict[RCObject, int] | None = None):
        self.ctx = ctx
        self.modulus = _require_lie_modulus(ctx)
        hv = tuple(int(x) % self.modulus for x in (h or (0,) * ctx.quiver.n_vertices))
        if len(hv) != ctx.quiver.n_vertices:
            raise ValueError("Cartan vector length must match the vertex count")
        self.h = hv
        clean: dict[RCObject, int] = {}
        for key, coeff in (u or {}).items():
            c = int(coeff) % self.modulus
            if c:
                clean[key] = c
        self.u = clean

    # -- linear structure --------------------------------------------------------

    def _peer(self, other: "LieElement") -> None:
        if self.ctx is not other.ctx:
            raise ValueError("elements belong to different contexts")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._peer(other)
        u = dict(self.u)
        for key, coeff in other.u.items():
            u[key] = u.get(key, 0) + coeff
        return LieElement(self.ctx, vec_add(self.h, other.h), u)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def scale(self, scalar: int) -> "LieElement":
        return LieElement(
            self.ctx,
            tuple(scalar * x for x in self.h),
            {key: scalar * coeff for key, coeff in self.u.items()},
        )

    def __rmul__(self, scalar: int) -> "LieElement":
        if not isinstance(scalar, int):
            return NotImplemented
        return self.scale(scalar)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieElement)
            and self.ctx is other.ctx
            and self.h == other.h
            and self.u == other.u
        )

    def __hash__(self):
        return hash((id(self.ctx), self.h, frozenset(self.u.items())))

    def is_zero(self) -> bool:
        return not self.u and not any(self.h)

    # -- presentation ---------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[str, int]]:
        """Deterministic (label, coefficient) rows: Cartan entries first."""
        rows: list[tuple[str, int]] = []
        for i, coeff in enumerate(self.h):
            if coeff:
                rows.append((f"h{i}", coeff))
        for key in sorted(self.u, key=_term_sort_key):
            rows.append((_term_text(key), self.u[key]))
        return rows

    def __repr__(self) -> str:
        rows = self.sorted_terms()
        if not rows:
            return "LieElement(0)"
        return "LieElement(" + " + ".join(f"{c}*{t}" for t, c in rows) + f" mod {self.modulus})"


def _term_sort_key(key: RCObject):
    if isinstance(key, RCModule):
        return (0, sum(key.handle.dims), key.handle.dims, key.handle.index, key.parity)
    return (1, key.vertex, key.n)


def _term_text(key: RCObject) -> str:
    if isinstance(key, RCModule):
        dims = ",".join(str(d) for d in key.handle.dims)
        return f"u[{dims}#{key.handle.index}]" + ("[1]" if key.parity else "")
    return f"u<{key.vertex}:{key.n}>"


def u_element(ctx: ModuleContext, obj: RCObject, coeff: int = 1) -> LieElement:
    if isinstance(obj, RCTube) and ctx.algebra != PREPROJECTIVE:
        raise ValueError("tube objects require the doubled algebra")
    return LieElement(ctx, None, {obj: coeff})


def u_simple(ctx: ModuleContext, i: int, parity: int = 0) -> LieElement:
    return u_element(ctx, simple_obj(ctx, i, parity))

def h_simple(ctx: ModuleContext, i: int) -> LieElement:
    return LieElement(ctx, alpha(i, ctx.quiver.n_vertices), None)


def division_degree(m: Rep, budget: int = 10**6) -> int:
    """deg of End(M)/rad over the ground field for indecomposable M (the
    d(M) normalising the delta term).  Computed by counting units of the
    local ring End(M)."""
    if not is_indecomposable(m, budget):
        raise ValueError("division degree is defined for indecomposable modules")
    basis = hom_space(m, m)
    h = len(basis)
    q = m.q
    if q**h > budget:
        raise BudgetError("endomorphism enumeration", q**h, budget)
    units = 0
    nv = m.quiver.n_vertices
    for coeffs in itertools.product(range(q), repeat=h):
        mats = []
        ok = True
        for v in range(nv):
            acc = sum((c * b[v].a for c, b in zip(coeffs, basis)), start=0 * basis[0][v].a) if h else None
            mat = Mat(q, acc) if acc is not None else Mat.identity(q, m.dims[v])
            if mat.rank() != m.dims[v]:
                ok = False
                break
            mats.append(mat)
        if ok:
            units += 1
    rad_size = q**h - units
    # |End| = q^h, |rad| = q^(h-d) for the local ring with residue field F_{q^d}
    d = 0
    while q ** (h - d) > rad_size:
        d += 1
    if q ** (h - d) != rad_size or d == 0:
        raise AssertionError("endomorphism ring unit count is not local-ring shaped")
    return d


# -- same-vertex generator pair ---------------------------------------------------------


def shifted_pair_orbit_counts(ctx: ModuleContext, i: int) -> dict[str, int]:
    """Orbit counts of Hom(S_i, S_i[2]) under two-sided composition with
    units of End(S_i), stratified by the cone of the morphism.

    A morphism is a pair (f0, f2): module component and degree-2 component;
    units are pairs (u0, u2) with u0 != 0, composing by
    (u0, u2) . (f0, f2) = (u0 f0, u0 f2 + u2 f0).  Strata: f0 != 0 (the cone
    vanishes), f0 = 0 != f2 (the cone is the length-2 tube object), zero.
    Each nonzero stratum is expected to be a single orbit; the counts feed
    the same-vertex bracket and the orbit-level product identities."""
    q = ctx.q
    s = ctx.simple(i)
    e2 = ext_dims(s, s)[1] if ctx.algebra == PREPROJECTIVE else 0
    if e2 == 0:
        return {"iso": 1, "cone": 0, "zero": 1}
    if e2 != 1:
        raise AssertionError(f"vertex simple with Ext^2 dimension {e2}")
    units = [(u0, u2) for u0 in range(1, q) for u2 in range(q)]
    seen: set[tuple[int, int]] = set()
    counts = {"iso": 0, "cone": 0, "zero": 0}
    for start in itertools.product(range(q), repeat=2):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        while stack:
            f0, f2 = stack.pop()
            for u0, u2 in units:
                for new in (
                    ((u0 * f0) % q, (u0 * f2 + u2 * f0) % q),
                    ((f0 * u0) % q, (f0 * u2 + f2 * u0) % q),
                ):
                    if new not in seen:
                        seen.add(new)
                        stack.append(new)
        stratum = "iso" if start[0] else ("cone" if start[1] else "zero")
        counts[stratum] += 1
    return counts


def _same_vertex_generator_bracket(ctx: ModuleContext, i: int) -> LieElement:
    """[u_{S_i}, u_{S_i[1]}] from the orbit model: -h_i plus the tube terms
    contributed by the nonvanishing-cone stratum (one orbit each way)."""
    counts = shifted_pair_orbit_counts(ctx, i)
    if counts["iso"] != 1 or counts["zero"] != 1:
        raise AssertionError(f"unexpected orbit structure {counts}")
    nv = ctx.quiver.n_vertices
    h = tuple(-a for a in alpha(i, nv))
    u: dict[RCObject, int] = {}
    if counts["cone"]:
        if counts["cone"] != 1:
            raise AssertionError(f"unexpected cone stratum {counts}")
        u[RCTube(i, 2)] = 1
        u[RCTube(i, -2)] = -1
    return LieElement(ctx, h, u)


# -- the bracket -------------------------------------------------------------------------


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Bilinear bracket on the supported fragment; unsupported basis pairs
    raise (never a silent zero)."""
    x._peer(y)
    ctx = x.ctx
    out = LieElement(ctx)
    # Cartan against u-terms (h against h is zero).
    for key, coeff in y.u.items():
        weight = sym_form_R(ctx.quiver, x.h, class_of(ctx, key))
        if weight:
            out = out + u_element(ctx, key, coeff * weight)
    for key, coeff in x.u.items():
        weight = sym_form_R(ctx.quiver, y.h, class_of(ctx, key))
        if weight:
            out = out + u_element(ctx, key, -coeff * weight)
    for kx, cx in x.u.items():
        for ky, cy in y.u.items():
            out = out + _basis_bracket(ctx, kx, ky).scale(cx * cy)
    return out


def _basis_bracket(ctx: ModuleContext, kx: RCObject, ky: RCObject) -> LieElement:
    if isinstance(kx, RCModule) and isinstance(ky, RCModule):
        if kx.parity == ky.parity:
            return _module_pair_bracket(ctx, kx, ky)
        return _mixed_parity_bracket(ctx, kx, ky)
    return _tube_pair_bracket(ctx, kx, ky)


def _module_pair_bracket(ctx: ModuleContext, kx: RCModule, ky: RCModule) -> LieElement:
    """Same parity: coefficients F^L_{XY} - F^L_{YX} over indecomposable L,
    parity carried along; no delta term (X and Y[1] differ in parity)."""
    if kx.handle == ky.handle:
        return LieElement(ctx)
    parity = kx.parity
    xrep = ctx.rep_of(kx.handle)
    yrep = ctx.rep_of(ky.handle)
    dims = vec_add(kx.handle.dims, ky.handle.dims)
    u: dict[RCObject, int] = {}
    for l in ctx.classes_of_dim(dims):
        if not is_indecomposable(l, ctx.budget):
            continue
        diff = triangle_count_R(ctx, xrep, yrep, l) - triangle_count_R(ctx, yrep, xrep, l)
        if diff:
            u[RCModule(ctx.handle_of(l), parity)] = diff
    return LieElement(ctx, None, u)


def _simple_vertex_of(ctx: ModuleContext, key: RCModule) -> int | None:
    dims = key.handle.dims
    if sum(dims) != 1:
        return None
    return dims.index(1)


def _mixed_parity_bracket(ctx: ModuleContext, kx: RCModule, ky: RCModule) -> LieElement:
    """Mixed parity is implemented on the generator slice (vertex simples):
    same vertex gives the delta + tube terms, distinct vertices vanish (no
    degree-2 connecting maps between distinct vertex simples)."""
    vx = _simple_vertex_of(ctx, kx)
    vy = _simple_vertex_of(ctx, ky)
    if vx is None or vy is None:
        raise ValueError(
            f"unsupported bracket pair ({_term_text(kx)}, {_term_text(ky)}): "
            "mixed-parity brackets are implemented for vertex simples only"
        )
    if vx != vy:
        return LieElement(ctx)
    base = _same_vertex_generator_bracket(ctx, vx)
    return base if kx.parity == 0 else -base


def _tube_index_of(ctx: ModuleContext, key: RCObject, vertex: int) -> int | None:
    """Tube coordinate of a basis object at ``vertex``: modules S_i, S_i[1]
    sit at +1, -1; tube objects at their index; anything else None."""
    if isinstance(key, RCTube):
        return key.n if key.vertex == vertex else None
    if _simple_vertex_of(ctx, key) != vertex:
        return None
    return 1 if key.parity == 0 else -1


def _tube_pair_bracket(ctx: ModuleContext, kx: RCObject, ky: RCObject) -> LieElement:
    from . import tube as tube_mod

    if ctx.algebra != PREPROJECTIVE:
        raise ValueError("tube objects require the doubled algebra")
    vertex = kx.vertex if isinstance(kx, RCTube) else ky.vertex  # type: ignore[union-attr]
    nx = _tube_index_of(ctx, kx, vertex)
    ny = _tube_index_of(ctx, ky, vertex)
    if nx is None or ny is None:
        raise ValueError(
            f"unsupported bracket pair ({_term_text(kx)}, {_term_text(ky)}): "
            "tube brackets need both operands in one vertex tube"
        )
    a = tube_mod.TubeElt.basis_u(vertex, ctx.q, nx)
    b = tube_mod.TubeElt.basis_u(vertex, ctx.q, ny)
    return tube_to_lie(ctx, tube_mod.tube_bracket(a, b))


def tube_to_lie(ctx: ModuleContext, elt) -> LieElement:
    """Translate a one-vertex tube element into root-category symbols
    (indices +-1 become the vertex simple and its shift)."""
    i = elt.vertex
    nv = ctx.quiver.n_vertices
    h = tuple(elt.h * a for a in alpha(i, nv))
    u: dict[RCObject, int] = {}
    for n, coeff in elt.u.items():
        if n == 1:
            u[simple_obj(ctx, i, 0)] = coeff
        elif n == -1:
            u[simple_obj(ctx, i, 1)] = coeff
        else:
            u[RCTube(i, n)] = coeff
    return LieElement(ctx, h, u)


# -- graded dimensions of the positive part ------------------------------------------------


def nplus_bracket_rows(
    quiver: Quiver, algebra: str, q: int, degree_bound: int, budget: int = 10**6
) -> dict[Vec, tuple[list[list[int]], int]]:
    """Integer coefficient rows of all left-normed bracket words in the
    generators, grouped by dimension vector, plus the ambient class count.

    The positive part embeds in the Hall algebra with the commutator
    bracket, so rows are computed there (integrally; callers reduce)."""
    from .hall import HallAlgebra

    ctx = ModuleContext(quiver, algebra, q, budget)
    hall = HallAlgebra(ctx)
    n = quiver.n_vertices
    cache: dict[tuple[int, ...], object] = {}

    def word_element(word: tuple[int, ...]):
        if word not in cache:
            if len(word) == 1:
                cache[word] = hall.generator(word[0])
            else:
                cache[word] = hall.commutator(word_element(word[:-1]), hall.generator(word[-1]))
        return cache[word]

    grouped: dict[Vec, list[list[int]]] = {}
    for length in range(1, degree_bound + 1):
        for word in itertools.product(range(n), repeat=length):
            dims = tuple(word.count(v) * 1 for v in range(n))
            dims = tuple(sum(1 for w in word if w == v) for v in range(n))
            elt = word_element(word)
            classes = ctx.classes_of_dim(dims)
            index = {ctx.handle_of(rep): pos for pos, rep in enumerate(classes)}
            row = [0] * len(classes)
            for handle, coeff in elt.terms.items():  # type: ignore[attr-defined]
                row[index[handle]] = coeff
            grouped.setdefault(dims, []).append(row)
    return {dims: (rows, len(ctx.classes_of_dim(dims))) for dims, rows in grouped.items()}


def graded_dim_nplus(quiver: Quiver, algebra: str, q: int, degree_bound: int, budget: int = 10**6) -> dict[Vec, int]:
    """Free rank over Z/(q-1), per dimension vector, of the span of iterated
    brackets of the generators u_{S_i} up to the total degree bound."""
    modulus = q - 1
    if modulus < 2:
        raise ValueError("graded ranks are over Z/(q-1); need q >= 3")
    out: dict[Vec, int] = {}
    for dims, (rows, _width) in nplus_bracket_rows(quiver, algebra, q, degree_bound, budget).items():
        out[dims] = free_rank_mod(rows, modulus)
    return out
