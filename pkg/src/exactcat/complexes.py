"""Bounded chain complexes: cones, translation, strict triangles, homotopy
solving, acyclicity certificates, homology and quasi-isomorphism tests.

Complexes are cochain-indexed (differentials raise degree) on a finite
window and are zero outside it.  Sign conventions: translation negates the
differential, and the cone of f: A -> B has degree-n component
A^{n+1} + B^n with differential (-d_A, 0; f, d_B).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .intlinalg import IntMatrix
from .kernel import (
    Analysis,
    BiproductData,
    InternalCheckError,
    MorphismHandle,
    MorphismSystem,
    ObjectHandle,
    PreconditionError,
    ShortExactSequence,
    is_short_exact,
    pushout_along_monic,
)


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Objects indexed by a finite window [lo, hi] with d^{n+1} d^n = 0."""

    model: object
    lo: int
    components: tuple[ObjectHandle, ...]
    differentials: tuple[MorphismHandle, ...]

    @property
    def hi(self) -> int:
        return self.lo + len(self.components) - 1

    @property
    def window(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def component(self, n: int) -> ObjectHandle:
        if self.lo <= n <= self.hi:
            return self.components[n - self.lo]
        return self.model.zero_object()

    def differential(self, n: int) -> MorphismHandle:
        if self.lo <= n <= self.hi - 1:
            return self.differentials[n - self.lo]
        return self.model.zero_morphism(self.component(n), self.component(n + 1))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)


def chain_complex(model, lo: int, components, differentials,
                  check: bool = True) -> ChainComplex:
    components = tuple(components)
    differentials = tuple(differentials)
    if components and len(differentials) != len(components) - 1:
        raise PreconditionError("a window of k objects carries k-1 differentials")
    x = ChainComplex(model, lo, components, differentials)
    if check:
        for n, d in zip(range(lo, x.hi), differentials):
            if d.dom != x.component(n) or d.cod != x.component(n + 1):
                raise PreconditionError(f"differential at degree {n} has wrong endpoints")
        for n in range(lo, x.hi - 1):
            if not (x.differential(n + 1) @ x.differential(n)).is_zero():
                raise PreconditionError(f"d^2 != 0 at degree {n}")
    return x


def object_as_complex(a: ObjectHandle, degree: int = 0) -> ChainComplex:
    return ChainComplex(a.model, degree, (a,), ())


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degreewise map of complexes commuting with the differentials."""

    source: ChainComplex
    target: ChainComplex
    comps: dict[int, MorphismHandle]

    @property
    def model(self):
        return self.source.model

    def component(self, n: int) -> MorphismHandle:
        if n in self.comps:
            return self.comps[n]
        return self.model.zero_morphism(self.source.component(n),
                                        self.target.component(n))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.comps) | set(other.comps)
        return chain_map(other.source, self.target,
                         {n: self.component(n) @ other.component(n) for n in degs},
                         check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.comps) | set(other.comps)
        return chain_map(self.source, self.target,
                         {n: self.component(n) + other.component(n) for n in degs},
                         check=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.comps) | set(other.comps)
        return chain_map(self.source, self.target,
                         {n: self.component(n) - other.component(n) for n in degs},
                         check=False)

    def same_as(self, other: "ChainMap") -> bool:
        degs = set(self.comps) | set(other.comps)
        return all(self.component(n).same_as(other.component(n)) for n in degs)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.comps.values())


def chain_map(source: ChainComplex, target: ChainComplex,
              comps: dict[int, MorphismHandle], check: bool = True) -> ChainMap:
    comps = {n: f for n, f in comps.items() if f.matrix.rows or f.matrix.cols}
    f = ChainMap(source, target, comps)
    if check:
        for n, g in comps.items():
            if g.dom != source.component(n) or g.cod != target.component(n):
                raise PreconditionError(f"chain map component at {n} has wrong endpoints")
        for n in range(min(source.lo, target.lo) - 1, max(source.hi, target.hi) + 1):
            lhs = target.differential(n) @ f.component(n)
            rhs = f.component(n + 1) @ source.differential(n)
            if not lhs.same_as(rhs):
                raise PreconditionError(f"chain map does not commute with d at degree {n}")
    return f


def identity_chain_map(x: ChainComplex) -> ChainMap:
    return ChainMap(x, x, {n: x.model.identity(x.component(n)) for n in x.degrees()})


def zero_chain_map(x: ChainComplex, y: ChainComplex) -> ChainMap:
    return ChainMap(x, y, {})


@dataclass(frozen=True, eq=False)
class ChainHomotopy:
    """Degree -1 data h with f = d h + h d for the associated map f."""

    source: ChainComplex
    target: ChainComplex
    comps: dict[int, MorphismHandle]   # h^n : A^n -> B^{n-1}

    def component(self, n: int) -> MorphismHandle:
        if n in self.comps:
            return self.comps[n]
        return self.source.model.zero_morphism(self.source.component(n),
                                               self.target.component(n - 1))

    def bounds(self, f: ChainMap) -> bool:
        return verify_homotopy(f, self)


def verify_homotopy(f: ChainMap, h: ChainHomotopy) -> bool:
    a, b = f.source, f.target
    for n in range(min(a.lo, b.lo) - 1, max(a.hi, b.hi) + 2):
        rhs = (b.differential(n - 1) @ h.component(n)) + \
              (h.component(n + 1) @ a.differential(n))
        if not f.component(n).same_as(rhs):
            return False
    return True


def translate(x: ChainComplex, k: int) -> ChainComplex:
    """k-fold translation: components shift by k, differential picks (-1)^k."""
    if not x.components:
        return x
    sign = -1 if k % 2 else 1
    comps = x.components
    diffs = tuple(d.model.morphism(d.dom, d.cod, d.matrix.scale(sign), check=False)
                  for d in x.differentials)
    return ChainComplex(x.model, x.lo - k, comps, diffs)


def translate_chain_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(translate(f.source, k), translate(f.target, k),
                    {n - k: g for n, g in f.comps.items()})


@dataclass(frozen=True, eq=False)
class ConeData:
    complex: ChainComplex
    parts: dict[int, BiproductData]   # cone^n = A^{n+1} + B^n


def mapping_cone_data(f: ChainMap) -> ConeData:
    a, b = f.source, f.target
    model = f.model
    lo = min(a.lo - 1, b.lo)
    hi = max(a.hi - 1, b.hi)
    parts: dict[int, BiproductData] = {}
    comps = []
    for n in range(lo, hi + 1):
        bp = model.biproduct(a.component(n + 1), b.component(n))
        parts[n] = bp
        comps.append(bp.ob)
    diffs = []
    for n in range(lo, hi):
        src, dst = parts[n], parts[n + 1]
        d = (dst.inj1 @ a.differential(n + 1).model.negate(a.differential(n + 1)) @ src.proj1) \
            + (dst.inj2 @ f.component(n + 1) @ src.proj1) \
            + (dst.inj2 @ b.differential(n) @ src.proj2)
        diffs.append(d)
    cone = chain_complex(model, lo, comps, diffs, check=True)
    return ConeData(cone, parts)


def mapping_cone(f: ChainMap) -> ChainComplex:
    return mapping_cone_data(f).complex


@dataclass(frozen=True, eq=False)
class StrictTriangle:
    """f, the cone inclusion i_f and the cone projection j_f onto the translate."""

    f: ChainMap
    inclusion: ChainMap        # B -> cone(f), components (0; 1)
    projection: ChainMap       # cone(f) -> Sigma A, components (1, 0)
    cone: ConeData


def strict_triangle(f: ChainMap) -> StrictTriangle:
    data = mapping_cone_data(f)
    cone = data.complex
    b = f.target
    inc = chain_map(b, cone,
                    {n: data.parts[n].inj2 for n in data.parts
                     if b.lo <= n <= b.hi},
                    check=True)
    sa = translate(f.source, 1)
    proj = chain_map(cone, sa,
                     {n: data.parts[n].proj1 for n in data.parts},
                     check=True)
    return StrictTriangle(f, inc, proj, data)


def find_null_homotopy(f: ChainMap, rng=None,
                       ) -> Optional[ChainHomotopy]:
    """Witness h with f = d h + h d, or None when no witness exists.

    The unknown blocks for all degrees are flattened into one integer
    congruence system and solved globally; greedy degreewise solving is
    not complete over the integers.
    """
    model = f.model
    a, b = f.source, f.target
    sys = MorphismSystem(model)
    unknowns = {}
    for n in range(min(a.lo, b.lo), max(a.hi, b.hi) + 2):
        src, dst = a.component(n), b.component(n - 1)
        if model._gens(src.payload) and model._gens(dst.payload):
            sys.unknown_morphism(f"h{n}", src, dst)
            unknowns[n] = (src, dst)
    trivially_zero = True
    for n in range(min(a.lo, b.lo), max(a.hi, b.hi) + 1):
        src, dst = a.component(n), b.component(n)
        rows, cols = model._gens(dst.payload), model._gens(src.payload)
        if rows == 0 or cols == 0:
            continue
        terms = []
        if n in unknowns:
            terms.append((f"h{n}", b.differential(n - 1).matrix,
                          IntMatrix.identity(cols)))
        if n + 1 in unknowns:
            terms.append((f"h{n + 1}", IntMatrix.identity(rows),
                          a.differential(n).matrix))
        if terms:
            trivially_zero = False
            sys.equation(terms, f.component(n).matrix, cod=dst)
        elif not f.component(n).is_zero():
            return None
    if trivially_zero:
        return ChainHomotopy(a, b, {})
    sol = sys.solve(rng=rng)
    if sol is None:
        return None
    h = ChainHomotopy(a, b, {n: sol[f"h{n}"] for n in unknowns})
    if not verify_homotopy(f, h):
        raise InternalCheckError("homotopy solver returned an invalid witness")
    return h


@dataclass(frozen=True, eq=False)
class AcyclicityCertificate:
    """Factorization data witnessing acyclicity.

    For each n the differential d^{n-1} factors as the epic
    A^{n-1} ->> Z^n followed by the monic Z^n >-> A^n, and each
    Z^n >-> A^n ->> Z^{n+1} is short exact.
    """

    complex: ChainComplex
    z_objects: dict[int, ObjectHandle]
    epics: dict[int, MorphismHandle]
    monics: dict[int, MorphismHandle]

    def z_object(self, n: int) -> ObjectHandle:
        return self.z_objects.get(n, self.complex.model.zero_object())


def is_acyclic(x: ChainComplex) -> Optional[AcyclicityCertificate]:
    """Certificate of acyclicity, or None.

    Works in any model: each differential must be admissible, and the
    image-monic of one differential with the coimage-epic of the next must
    form a short exact sequence, including at the window boundary against
    the zero padding.
    """
    model = x.model
    analyses: dict[int, Analysis] = {}
    for n in range(x.lo - 1, x.hi + 1):
        an = model.analyze(x.differential(n))
        if an is None:
            return None
        analyses[n] = an
    zobj, epics, monics = {}, {}, {}
    for n in range(x.lo, x.hi + 2):
        an = analyses[n - 1]
        zobj[n] = an.image_object
        epics[n] = an.coimage_epic
        monics[n] = an.image_monic
    for n in range(x.lo, x.hi + 1):
        if not is_short_exact(monics[n], analyses[n].coimage_epic):
            return None
    return AcyclicityCertificate(x, zobj, epics, monics)


def homology(x: ChainComplex, n: int) -> ObjectHandle:
    return _homology_data(x, n).ob


@dataclass(frozen=True, eq=False)
class HomologyData:
    ob: ObjectHandle
    cycles: IntMatrix       # columns: cycle representatives of the generators
    degree: int
    complex: ChainComplex

    def coords_of_cycle(self, v: IntMatrix) -> Optional[IntMatrix]:
        """Class coordinates of cycle columns, or None if not cycles."""
        from .intlinalg import MatrixEquationSystem
        x, n = self.complex, self.degree
        model = x.model
        denom = IntMatrix.hstack(x.differential(n - 1).matrix,
                                 x.component(n).payload.relations)
        sys = MatrixEquationSystem()
        sys.unknown("c", self.ob.payload.ngens, v.cols)
        sys.equation([("c", self.cycles, IntMatrix.identity(v.cols))], v, mod=denom)
        sol = sys.solve()
        return sol["c"] if sol is not None else None


def _homology_data(x: ChainComplex, n: int) -> HomologyData:
    model = x.model
    if model.policy != "AllKernelCokernel":
        raise PreconditionError("homology objects require an abelian-style model")
    from .intlinalg import preimage_basis
    d_out = x.differential(n)
    d_in = x.differential(n - 1)
    kbasis = model._kernel_lattice(d_out)
    denom = IntMatrix.hstack(d_in.matrix, x.component(n).payload.relations)
    rel_h = preimage_basis(kbasis, denom)
    ob, to_raw, _ = model._normalized(kbasis.cols, rel_h)
    return HomologyData(ob, kbasis @ to_raw, n, x)


def homology_induced(f: ChainMap, n: int) -> MorphismHandle:
    """The map on degree-n homology induced by a chain map."""
    model = f.model
    src = _homology_data(f.source, n)
    tgt = _homology_data(f.target, n)
    moved = f.component(n).matrix @ src.cycles
    coords = tgt.coords_of_cycle(moved)
    if coords is None:
        raise InternalCheckError("chain map does not preserve cycles")
    return model.morphism(src.ob, tgt.ob, coords, check=False)


def is_quasi_iso(f: ChainMap) -> bool:
    """Cone-acyclicity test; only valid verbatim on idempotent complete models."""
    if not f.model.idempotent_complete:
        raise PreconditionError(
            "the cone-acyclicity criterion for quasi-isomorphisms requires an "
            "idempotent complete model; the general definition (cone homotopy "
            "equivalent to an acyclic complex) is not decided by this test")
    return is_acyclic(mapping_cone(f)) is not None


@dataclass(frozen=True, eq=False)
class ConeAcyclicityResult:
    certificate: AcyclicityCertificate
    extensions: dict[int, ShortExactSequence]   # Z^n B >-> Z^n C ->> Z^{n+1} A


def check_cone_acyclic(f: ChainMap) -> ConeAcyclicityResult:
    """Cone-of-acyclics certificate built through the bicartesian Z squares.

    Requires acyclicity certificates on both endpoints; produces the
    certificate of the cone together with the extension sequences
    Z^n B >-> Z^n C ->> Z^{n+1} A relating the three Z-filtrations.
    """
    model = f.model
    cert_a = is_acyclic(f.source)
    cert_b = is_acyclic(f.target)
    if cert_a is None or cert_b is None:
        raise PreconditionError("both endpoints must be acyclic")
    data = mapping_cone_data(f)
    cone = data.complex
    lo, hi = cone.lo, cone.hi

    def ia(n):  # Z^n A >-> A^n
        return cert_a.monics.get(n) or model.zero_morphism(
            model.zero_object(), f.source.component(n))

    def ja(n):  # A^n ->> Z^{n+1} A
        return cert_a.epics.get(n + 1) or model.zero_morphism(
            f.source.component(n), model.zero_object())

    def ib(n):
        return cert_b.monics.get(n) or model.zero_morphism(
            model.zero_object(), f.target.component(n))

    def jb(n):
        return cert_b.epics.get(n + 1) or model.zero_morphism(
            f.target.component(n), model.zero_object())

    # induced maps g^n : Z^n A -> Z^n B and the pushouts Z^n C
    g = {}
    zc = {}
    kmono = {}   # Z^n B >-> Z^n C
    fprime = {}  # A^n -> Z^n C
    hsurj = {}   # Z^n C ->> Z^{n+1} A
    fsecond = {}  # Z^n C -> B^n
    extensions = {}
    for n in range(lo, hi + 2):
        gn = model.solve_right_factor(ib(n), f.component(n) @ ia(n))
        if gn is None:
            raise InternalCheckError("cycle map of the cone construction is missing")
        g[n] = gn
        po = pushout_along_monic(ia(n), gn)
        q, bp = po.cokernel_arrow, po.sum
        zc[n] = po.ob
        kmono[n] = po.monic
        fprime[n] = po.map
        h = model.solve_left_factor(q, ja(n) @ bp.proj1)
        f2 = model.solve_left_factor(q, (f.component(n) @ bp.proj1) + (ib(n) @ bp.proj2))
        if h is None or f2 is None:
            raise InternalCheckError("cone Z-square maps are missing")
        hsurj[n] = h
        fsecond[n] = f2
        extensions[n] = ShortExactSequence(kmono[n], h)
        if not model.is_short_exact(kmono[n], h):
            raise InternalCheckError("extension sequence Z^nB >-> Z^nC ->> Z^{n+1}A fails")

    zobj, epics, monics = {}, {}, {}
    for n in range(lo, hi + 2):
        zobj[n] = zc[n]
        # epic cone^{n-1} ->> Z^n C with blocks (f'^n, k^n j_B^{n-1})
        bp = data.parts.get(n - 1)
        if bp is not None:
            epics[n] = (fprime[n] @ bp.proj1) + (kmono[n] @ jb(n - 1) @ bp.proj2)
        else:
            epics[n] = model.zero_morphism(cone.component(n - 1), zc[n])
        # monic Z^n C >-> cone^n with blocks (-i_A^{n+1} h^n ; f''^n)
        bp2 = data.parts.get(n)
        if bp2 is not None:
            monics[n] = (bp2.inj1 @ model.negate(ia(n + 1) @ hsurj[n])) + \
                (bp2.inj2 @ fsecond[n])
        else:
            monics[n] = model.zero_morphism(zc[n], cone.component(n))
    cert = AcyclicityCertificate(cone, zobj, epics, monics)
    for n in range(lo, hi + 1):
        d = cone.differential(n)
        if not (monics[n + 1] @ epics[n + 1]).same_as(d):
            raise InternalCheckError("cone differential does not factor through Z^nC")
        if not model.is_short_exact(monics[n], epics[n + 1]):
            raise InternalCheckError("cone splice sequence fails")
    return ConeAcyclicityResult(cert, extensions)


def strict_triangle_section(f: ChainMap) -> Optional[ChainMap]:
    """A complex-level section of cone(f) ->> Sigma A, when one exists.

    The degreewise splittings assemble to a chain-map section exactly when
    f is null-homotopic; this solves for the section globally.
    """
    model = f.model
    tri = strict_triangle(f)
    cone, sa = tri.cone.complex, tri.projection.target
    sys = MorphismSystem(model)
    degs = [n for n in cone.degrees()
            if model._gens(sa.component(n).payload) and
            model._gens(cone.component(n).payload)]
    for n in degs:
        sys.unknown_morphism(f"s{n}", sa.component(n), cone.component(n))
        sys.equation([(f"s{n}", tri.projection.component(n).matrix,
                       IntMatrix.identity(model._gens(sa.component(n).payload)))],
                     model.identity(sa.component(n)).matrix, cod=sa.component(n))
    for n in cone.degrees():
        # chain map condition d_c s^n = s^{n+1} d_sa
        terms = []
        rows = model._gens(cone.component(n + 1).payload)
        cols = model._gens(sa.component(n).payload)
        if rows == 0 or cols == 0:
            continue
        if n in degs:
            terms.append((f"s{n}", cone.differential(n).matrix,
                          IntMatrix.identity(cols)))
        if n + 1 in degs:
            terms.append((f"s{n + 1}",
                          IntMatrix.identity(rows).scale(-1),
                          sa.differential(n).matrix))
        if terms:
            sys.equation(terms,
                         model.zero_morphism(sa.component(n),
                                             cone.component(n + 1)).matrix,
                         cod=cone.component(n + 1))
    sol = sys.solve()
    if sol is None:
        return None
    return chain_map(sa, cone, {n: sol[f"s{n}"] for n in degs}, check=True)


def factor_through_cone(f: ChainMap, g: ChainMap, h: ChainHomotopy) -> ChainMap:
    """Factor g through the cone inclusion, given a null-homotopy of g o f.

    With h witnessing g o f = d h + h d, the components (h^{n+1}, g^n)
    define a chain map cone(f) -> C with phi o i_f = g.
    """
    model = f.model
    if h.source is not f.source and h.source.window != f.source.window:
        raise PreconditionError("homotopy does not match the composite g o f")
    data = mapping_cone_data(f)
    cone = data.complex
    comps = {}
    for n, bp in data.parts.items():
        comps[n] = (h.component(n + 1) @ bp.proj1) + (g.component(n) @ bp.proj2)
    phi = chain_map(cone, g.target, comps, check=True)
    tri_inc = chain_map(g.source, cone,
                        {n: data.parts[n].inj2 for n in data.parts
                         if g.source.lo <= n <= g.source.hi}, check=False)
    if not (phi @ tri_inc).same_as(g):
        raise InternalCheckError("cone factorization does not recover g")
    return phi


# -- periodic complexes ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class PeriodicComplex:
    """A complex of period k, given by one full period of components.

    The window [0, k-1] represents the doubly infinite periodic complex;
    indices are taken cyclically.  This is the honest home of the
    idempotent counterexamples: their periodic total complexes are
    null-homotopic, while no bounded truncation is.
    """

    model: object
    components: tuple[ObjectHandle, ...]
    differentials: tuple[MorphismHandle, ...]   # d^j : comp[j] -> comp[j+1 mod k]

    def __post_init__(self):
        k = len(self.components)
        if len(self.differentials) != k:
            raise PreconditionError("a period of k objects carries k differentials")
        for j, d in enumerate(self.differentials):
            if d.dom != self.components[j] or d.cod != self.components[(j + 1) % k]:
                raise PreconditionError("periodic differential endpoints are wrong")
        for j in range(k):
            comp = self.differentials[(j + 1) % k] @ self.differentials[j]
            if not comp.is_zero():
                raise PreconditionError("periodic d^2 != 0")

    @property
    def period(self) -> int:
        return len(self.components)


def periodic_idempotent_complex(model, a: ObjectHandle, p: MorphismHandle,
                                length: int) -> PeriodicComplex:
    """... -> A --(1-p)--> A --p--> A -> ... with the given even period."""
    if length % 2:
        raise PreconditionError("idempotent periodic complexes have even period")
    if not (p @ p).same_as(p):
        raise PreconditionError("p must be idempotent")
    one = model.identity(a)
    comps = tuple(a for _ in range(length))
    diffs = tuple(p if j % 2 == 0 else one - p for j in range(length))
    return PeriodicComplex(model, comps, diffs)


def periodic_null_homotopy(x: PeriodicComplex) -> Optional[dict[int, MorphismHandle]]:
    """h^j with 1 = d^{j-1} h^j + h^{j+1} d^j cyclically, or None."""
    model = x.model
    k = x.period
    sys = MorphismSystem(model)
    for j in range(k):
        sys.unknown_morphism(f"h{j}", x.components[j], x.components[(j - 1) % k])
    for j in range(k):
        cols = model._gens(x.components[j].payload)
        rows = cols
        if cols == 0:
            continue
        sys.equation([(f"h{j}", x.differentials[(j - 1) % k].matrix,
                       IntMatrix.identity(cols)),
                      (f"h{(j + 1) % k}", IntMatrix.identity(rows),
                       x.differentials[j].matrix)],
                     model.identity(x.components[j]).matrix,
                     cod=x.components[j])
    sol = sys.solve()
    if sol is None:
        return None
    return {j: sol[f"h{j}"] for j in range(k)}


def periodic_is_acyclic(x: PeriodicComplex) -> Optional[dict[int, Analysis]]:
    """Acyclicity certificate of the periodic complex (one per period slot)."""
    model = x.model
    analyses = {}
    for j in range(x.period):
        an = model.analyze(x.differentials[j])
        if an is None:
            return None
        analyses[j] = an
    for j in range(x.period):
        prev = analyses[(j - 1) % x.period]
        if not is_short_exact(prev.image_monic, analyses[j].coimage_epic):
            return None
    return analyses
