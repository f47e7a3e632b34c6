"""Projective resolutions and classical derived functors.

Resolutions are built by the cover/kernel induction; the comparison lift
is solved degree by degree against the exactness of the target resolution;
horseshoes are filled in by lifting the quotient augmentation; and the
derived functors of tensor/hom functors are homologies of the transformed
resolution, with the long exact sequence extracted from the degreewise
split horseshoe columns by an explicit zig-zag.

Resolutions are stored cohomologically (P_n sits in degree -n) so that all
chain machinery applies verbatim; the subscript presentation used in the
result objects is the homological one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .complexes import (
    AcyclicityCertificate,
    ChainComplex,
    ChainHomotopy,
    ChainMap,
    chain_complex,
    chain_map,
    find_null_homotopy,
    homology,
    homology_induced,
    is_acyclic,
    mapping_cone,
    _homology_data,
)
from .diagrams import is_exact_pair
from .intlinalg import IntMatrix, MatrixEquationSystem, preimage_basis
from .kernel import (
    InternalCheckError,
    MorphismHandle,
    ObjectHandle,
    PreconditionError,
    ShortExactSequence,
    pullback_along_epic,
)


@dataclass(frozen=True, eq=False)
class Resolution:
    """Positive complex of projectives P_n with augmentation P_0 ->> A."""

    complex: ChainComplex          # cochain window [-length, 0]
    augmentation: MorphismHandle   # P_0 -> A
    truncated: bool = False

    @property
    def target(self) -> ObjectHandle:
        return self.augmentation.cod

    @property
    def length(self) -> int:
        return -self.complex.lo

    def component(self, n: int) -> ObjectHandle:
        return self.complex.component(-n)

    def differential(self, n: int) -> MorphismHandle:
        """d_n : P_n -> P_{n-1} (homological indexing)."""
        return self.complex.differential(-n)

    def augmented_complex(self) -> ChainComplex:
        comps = list(self.complex.components) + [self.target]
        diffs = list(self.complex.differentials) + [self.augmentation]
        return chain_complex(self.complex.model, self.complex.lo, comps, diffs,
                             check=False)


def resolution(cx: ChainComplex, augmentation: MorphismHandle,
               truncated: bool = False, check: bool = True) -> Resolution:
    res = Resolution(cx, augmentation, truncated)
    if check:
        model = cx.model
        if cx.hi != 0:
            raise PreconditionError("resolutions live in degrees <= 0")
        for n in cx.degrees():
            if not model.is_projective(cx.component(n)):
                raise PreconditionError("resolution components must be projective")
        if not truncated and is_acyclic(res.augmented_complex()) is None:
            raise PreconditionError("augmented complex is not exact")
    return res


def projective_resolution(a: ObjectHandle, max_length: int = 8,
                          cover=None) -> Resolution:
    """Inductive cover/kernel resolution; over Z it stops at length <= 2.

    ``cover`` may replace the canonical generator cover (it must return an
    admissible epic from a projective object); this is how randomized
    resolutions are produced.
    """
    model = a.model
    cover = cover or model.projective_cover_epi
    eps = cover(a)
    comps = [eps.dom]
    diffs: list[MorphismHandle] = []
    cur = eps
    truncated = False
    for _ in range(max_length):
        k = model.kernel(cur)
        if k is None:
            raise InternalCheckError("kernel of a cover is missing")
        if model.is_zero_object(k.dom):
            break
        nxt = cover(k.dom)
        diffs.append(k @ nxt)
        comps.append(nxt.dom)
        cur = nxt
    else:
        k = model.kernel(cur)
        if k is not None and not model.is_zero_object(k.dom):
            truncated = True
    lo = -(len(comps) - 1)
    cx = chain_complex(model, lo, list(reversed(comps)), list(reversed(diffs)),
                       check=True)
    return resolution(cx, eps, truncated=truncated)


def random_cover(rng: random.Random, pad_levels: int = 2, max_extra: int = 2,
                 entry_bound: int = 3):
    """A cover function adding redundant generators for a few levels."""
    state = {"level": 0}

    def cover(a: ObjectHandle) -> MorphismHandle:
        model = a.model
        base = model.projective_cover_epi(a)
        if state["level"] >= pad_levels:
            return base
        state["level"] += 1
        extra = rng.randrange(0, max_extra + 1)
        if extra == 0:
            return base
        pad = model.object(extra) if hasattr(model, "object") else None
        bp = model.biproduct(base.dom, pad)
        w = model._rand_matrix(rng, base.matrix.rows, extra, entry_bound)
        wmor = model.morphism(pad, a, w, check=False)
        return (base @ bp.proj1) + (wmor @ bp.proj2)

    return cover


def random_resolution(a: ObjectHandle, rng: random.Random,
                      max_length: int = 8) -> Resolution:
    return projective_resolution(a, max_length=max_length,
                                 cover=random_cover(rng))


def compare_lift(f: MorphismHandle, p: Resolution, q: Resolution,
                 rng: Optional[random.Random] = None) -> ChainMap:
    """Lift f: A -> B to a chain map between resolutions of A and B.

    Each degree is one lifting problem against the exactness of the target
    resolution; the optional rng picks a random point of the solution
    lattice so independently computed lifts genuinely differ.
    """
    if p.target != f.dom or q.target != f.cod:
        raise PreconditionError("resolutions do not resolve the endpoints of f")
    model = f.model
    f0 = model.solve_right_factor(q.augmentation, f @ p.augmentation, rng=rng)
    if f0 is None:
        raise InternalCheckError("augmentation lifting problem is unsolvable")
    comps = {0: f0}
    top = max(p.length, q.length)
    for n in range(1, top + 1):
        prev = comps[n - 1]
        rhs = prev @ p.differential(n)
        fn = model.solve_right_factor(q.differential(n), rhs, rng=rng)
        if fn is None:
            raise InternalCheckError(f"lifting problem at degree {n} is unsolvable")
        comps[n] = fn
    return chain_map(p.complex, q.complex,
                     {-n: g for n, g in comps.items()}, check=True)


def lift_homotopy(f1: ChainMap, f2: ChainMap) -> ChainHomotopy:
    """Homotopy between two lifts of the same morphism (always exists)."""
    h = find_null_homotopy(f1 - f2)
    if h is None:
        raise InternalCheckError("two lifts of the same morphism must be homotopic")
    return h


@dataclass(frozen=True, eq=False)
class HorseshoeResult:
    middle: Resolution
    columns: tuple[ShortExactSequence, ...]   # P'_n >-> P_n ->> P''_n per degree
    sections: tuple[MorphismHandle, ...]      # P''_n -> P_n splitting the columns
    retractions: tuple[MorphismHandle, ...]   # P_n -> P'_n splitting the monics


def horseshoe(s: ShortExactSequence, p_sub: Resolution,
              p_quot: Resolution) -> HorseshoeResult:
    """Fill in a horseshoe: resolutions of the outer terms assemble to one
    of the middle with degreewise split columns."""
    model = s.i.model
    if p_sub.target != s.sub or p_quot.target != s.quot:
        raise PreconditionError("resolutions do not match the outer terms")
    cur_ses = s
    eps_sub, eps_quot = p_sub.augmentation, p_quot.augmentation
    comps: list[ObjectHandle] = []
    cols: list[ShortExactSequence] = []
    secs: list[MorphismHandle] = []
    rets: list[MorphismHandle] = []
    eps_list: list[MorphismHandle] = []
    kernels: list[MorphismHandle] = []
    top = max(p_sub.length, p_quot.length)
    for n in range(top + 1):
        pn_sub = p_sub.component(n)
        pn_quot = p_quot.component(n)
        bp = model.biproduct(pn_sub, pn_quot)
        lift = model.solve_right_factor(cur_ses.p, eps_quot)
        if lift is None:
            raise InternalCheckError("quotient augmentation does not lift")
        eps = (cur_ses.i @ eps_sub @ bp.proj1) + (lift @ bp.proj2)
        comps.append(bp.ob)
        cols.append(ShortExactSequence(bp.inj1, bp.proj2))
        secs.append(bp.inj2)
        rets.append(bp.proj1)
        eps_list.append(eps)
        k_sub = model.kernel(eps_sub)
        k_mid = model.kernel(eps)
        k_quot = model.kernel(eps_quot)
        if k_sub is None or k_mid is None or k_quot is None:
            raise InternalCheckError("horseshoe kernels are missing")
        kernels.append(k_mid)
        if n == top:
            if not model.is_zero_object(k_mid.dom):
                raise InternalCheckError("horseshoe did not terminate exactly")
            break
        u = model.solve_right_factor(k_mid, bp.inj1 @ k_sub)
        w = model.solve_right_factor(k_quot, bp.proj2 @ k_mid)
        if u is None or w is None:
            raise InternalCheckError("kernel column of the horseshoe is missing")
        if not model.is_short_exact(u, w):
            raise InternalCheckError("kernel column of the horseshoe is not exact")
        cur_ses = ShortExactSequence(u, w)
        nxt_sub = model.solve_right_factor(k_sub, p_sub.differential(n + 1))
        nxt_quot = model.solve_right_factor(k_quot, p_quot.differential(n + 1))
        if nxt_sub is None or nxt_quot is None:
            raise InternalCheckError("resolutions do not factor over their kernels")
        eps_sub, eps_quot = nxt_sub, nxt_quot
    diffs = [kernels[n] @ eps_list[n + 1] for n in range(len(comps) - 1)]
    lo = -(len(comps) - 1)
    cx = chain_complex(model, lo, list(reversed(comps)), list(reversed(diffs)),
                       check=True)
    mid = resolution(cx, eps_list[0])
    # verify the columns commute with the three resolutions
    for n in range(len(comps) - 1):
        left = diffs[n] @ secs[n + 1]
        if not (cols[n].p @ left).same_as(p_quot.differential(n + 1)):
            raise InternalCheckError("horseshoe columns do not commute with d''")
        if not (diffs[n] @ cols[n + 1].i).same_as(cols[n].i @ p_sub.differential(n + 1)):
            raise InternalCheckError("horseshoe columns do not commute with d'")
    return HorseshoeResult(mid, tuple(cols), tuple(secs), tuple(rets))


@dataclass(frozen=True, eq=False)
class ProjectiveReplacement:
    complex: ChainComplex
    map: ChainMap                      # P -> A with acyclic cone
    certificate: AcyclicityCertificate


def projective_replacement(x: ChainComplex, max_extra: int = 8,
                           cover=None) -> ProjectiveReplacement:
    """Quasi-isomorphism from a complex of projectives onto a bounded complex.

    Built by iterated pull-backs: B_{n+1} is the pull-back of the cover
    P_n ->> B_n along the induced map from the next component, covers are
    taken at every stage, and the cone of the comparison map carries the
    B_n as its acyclicity certificate.
    """
    model = x.model
    if model.policy != "AllKernelCokernel":
        raise PreconditionError("projective replacement runs over abelian-style models")
    cover = cover or model.projective_cover_epi
    if not x.components:
        empty = chain_complex(model, 0, [], [], check=False)
        f = chain_map(empty, x, {}, check=False)
        cert = is_acyclic(mapping_cone(f))
        return ProjectiveReplacement(empty, f, cert)
    hi = x.hi
    # homological view: A_n = x.component(hi - n)
    b_cur = x.component(hi)
    p_primes: list[MorphismHandle] = []     # P_n ->> B_n
    i_primes: list[MorphismHandle] = []     # B_{n+1} -> P_n
    i_seconds: list[MorphismHandle] = []    # B_{n+1} ->> A_{n+1}
    p_second = x.differential(hi - 1)       # A_1 -> B_0
    n = 0
    limit = (x.hi - x.lo + 1) + max_extra
    while True:
        if n > limit:
            raise InternalCheckError("projective replacement did not terminate")
        p_prime = cover(b_cur)
        p_primes.append(p_prime)
        a_next = x.component(hi - n - 1)
        pb = pullback_along_epic(p_prime, p_second)
        i_primes.append(pb.map)        # B_{n+1} -> P_n
        i_seconds.append(pb.epic)      # B_{n+1} ->> A_{n+1}
        b_cur = pb.ob
        if model.is_zero_object(b_cur) and hi - n - 2 < x.lo:
            break
        # induced A_{n+2} -> B_{n+1} through the pull-back
        d_next = x.differential(hi - n - 2)   # A_{n+2} -> A_{n+1}
        cone_map = (pb.sum.inj2 @ d_next)
        p_second = model.solve_right_factor(pb.kernel_arrow, cone_map)
        if p_second is None:
            raise InternalCheckError("pull-back cone of the replacement is missing")
        n += 1
    count = len(p_primes)
    comps = [p.dom for p in p_primes]      # P_0 ... P_{count-1} homological
    diffs = [i_primes[k] @ p_primes[k + 1] for k in range(count - 1)]
    alphas = [p_primes[0]] + [i_seconds[k - 1] @ p_primes[k] for k in range(1, count)]
    lo = hi - (count - 1)
    cx = chain_complex(model, lo,
                       [comps[hi - m] for m in range(lo, hi + 1)],
                       [diffs[hi - m - 1] for m in range(lo, hi)],
                       check=True)
    alpha = chain_map(cx, x, {hi - k: alphas[k] for k in range(count)}, check=True)
    cert = is_acyclic(mapping_cone(alpha))
    if cert is None:
        raise InternalCheckError("cone of the projective replacement is not acyclic")
    return ProjectiveReplacement(cx, alpha, cert)


# -- functors ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomStructure:
    """Presentation of Hom(src, dst) with matrix generators."""

    src: ObjectHandle
    dst: ObjectHandle
    ob: ObjectHandle
    basis: IntMatrix      # (n_dst * n_src) x ngens(ob), columnwise-vec'd

    def gen_matrix(self, k: int) -> IntMatrix:
        nd = self.dst.payload.ngens
        ns = self.src.payload.ngens
        col = self.basis.column_at(k)
        return IntMatrix(nd, ns, tuple(tuple(col[j * nd + i] for j in range(ns))
                                       for i in range(nd)))

    def coords(self, vecs: IntMatrix) -> Optional[IntMatrix]:
        """Hom-object coordinates of columnwise-vec'd morphism matrices."""
        n = self.dst.payload.ngens
        nmat = IntMatrix.kron(IntMatrix.identity(self.src.payload.ngens),
                              self.dst.payload.relations)
        sys = MatrixEquationSystem()
        sys.unknown("c", self.ob.payload.ngens, vecs.cols)
        sys.equation([("c", self.basis, IntMatrix.identity(vecs.cols))], vecs,
                     mod=nmat)
        sol = sys.solve()
        return sol["c"] if sol is not None else None


def _vec(m: IntMatrix) -> IntMatrix:
    return IntMatrix(m.rows * m.cols, 1,
                     tuple((m.entries[i % m.rows][i // m.rows],)
                           for i in range(m.rows * m.cols)))


def _vec_many(ms) -> IntMatrix:
    return IntMatrix.hstack(*[_vec(m) for m in ms]) if ms else IntMatrix.zeros(0, 0)


@lru_cache(maxsize=4096)
def hom_structure(src: ObjectHandle, dst: ObjectHandle) -> HomStructure:
    model = src.model
    ns, nd = src.payload.ngens, dst.payload.ngens
    rs = src.payload.relations
    if rs.cols:
        lhs = IntMatrix.kron(rs.transpose(), IntMatrix.identity(nd))
        lat = IntMatrix.kron(IntMatrix.identity(rs.cols), dst.payload.relations)
        k = preimage_basis(lhs, lat)
    else:
        k = IntMatrix.identity(nd * ns)
    nmat = IntMatrix.kron(IntMatrix.identity(ns), dst.payload.relations)
    rel = preimage_basis(k, nmat) if k.cols else IntMatrix.zeros(0, 0)
    ob, to_raw, _ = model._normalized(k.cols, rel)
    return HomStructure(src, dst, ob, k @ to_raw)


@dataclass(frozen=True)
class FunctorSpec:
    """Additive functor on the abelian model: - (x) T, Hom(T, -), or Hom(-, T)."""

    variant: str          # "tensor" | "hom_from" | "hom_into"
    target: ObjectHandle  # T

    def __post_init__(self):
        if self.variant not in ("tensor", "hom_from", "hom_into"):
            raise PreconditionError(f"unknown functor variant {self.variant!r}")
        if self.target.model.policy != "AllKernelCokernel":
            raise PreconditionError("functor targets live in an abelian-style model")

    @property
    def contravariant(self) -> bool:
        return self.variant == "hom_into"

    @property
    def label(self) -> str:
        return {"tensor": "Tor", "hom_from": "HomFrom", "hom_into": "Ext"}[self.variant]

    def apply_object(self, a: ObjectHandle) -> ObjectHandle:
        t = self.target
        model = t.model
        if self.variant == "tensor":
            na, nt = a.payload.ngens, t.payload.ngens
            rel = IntMatrix.hstack(
                IntMatrix.kron(a.payload.relations, IntMatrix.identity(nt)),
                IntMatrix.kron(IntMatrix.identity(na), t.payload.relations))
            return model.object(na * nt, rel)
        if self.variant == "hom_from":
            return hom_structure(t, a).ob
        return hom_structure(a, t).ob

    def apply_morphism(self, f: MorphismHandle) -> MorphismHandle:
        t = self.target
        model = t.model
        if self.variant == "tensor":
            dom = self.apply_object(f.dom)
            cod = self.apply_object(f.cod)
            return model.morphism(dom, cod,
                                  IntMatrix.kron(f.matrix, IntMatrix.identity(
                                      t.payload.ngens)), check=False)
        if self.variant == "hom_from":
            hs_dom = hom_structure(t, f.dom)
            hs_cod = hom_structure(t, f.cod)
            mats = [f.matrix @ hs_dom.gen_matrix(k)
                    for k in range(hs_dom.ob.payload.ngens)]
            coords = hs_cod.coords(_pad_vecs(mats, f.cod.payload.ngens,
                                             t.payload.ngens))
            if coords is None:
                raise InternalCheckError("hom functor action is not defined")
            return model.morphism(hs_dom.ob, hs_cod.ob, coords, check=False)
        hs_dom = hom_structure(f.cod, t)   # contravariant
        hs_cod = hom_structure(f.dom, t)
        mats = [hs_dom.gen_matrix(k) @ f.matrix
                for k in range(hs_dom.ob.payload.ngens)]
        coords = hs_cod.coords(_pad_vecs(mats, t.payload.ngens,
                                         f.dom.payload.ngens))
        if coords is None:
            raise InternalCheckError("hom functor action is not defined")
        return model.morphism(hs_dom.ob, hs_cod.ob, coords, check=False)

    def apply_complex(self, x: ChainComplex) -> ChainComplex:
        model = x.model
        comps = [self.apply_object(c) for c in x.components]
        diffs = [self.apply_morphism(d) for d in x.differentials]
        if not self.contravariant:
            return chain_complex(model, x.lo, comps, diffs, check=False)
        return chain_complex(model, -x.hi, list(reversed(comps)),
                             list(reversed(diffs)), check=False)


def _pad_vecs(mats, rows, cols) -> IntMatrix:
    if mats:
        return _vec_many(mats)
    return IntMatrix.zeros(rows * cols, 0)


@dataclass(frozen=True, eq=False)
class DerivedFunctorResult:
    functor: FunctorSpec
    target: ObjectHandle
    values: dict[int, ObjectHandle]
    resolution: Resolution
    truncated: bool


def derived(functor: FunctorSpec, a: ObjectHandle, max_degree: int = 1,
            res: Optional[Resolution] = None,
            rng: Optional[random.Random] = None) -> DerivedFunctorResult:
    """Derived-functor values L_i F(a) (or Ext^i for the contravariant hom)."""
    if res is None:
        res = random_resolution(a, rng) if rng is not None else \
            projective_resolution(a)
    fp = functor.apply_complex(res.complex)
    values = {}
    for i in range(max_degree + 1):
        deg = i if functor.contravariant else -i
        values[i] = homology(fp, deg)
    return DerivedFunctorResult(functor, a, values, res, res.truncated)


@dataclass(frozen=True, eq=False)
class LongExactSequenceResult:
    functor: FunctorSpec
    sequence: ShortExactSequence
    arrows: tuple[MorphismHandle, ...]
    objects: tuple[ObjectHandle, ...]
    exact: bool


def _connecting_map(inj: ChainMap, proj: ChainMap, sections: dict[int, MorphismHandle],
                    n: int) -> MorphismHandle:
    """Zig-zag connecting morphism H^n(quot) -> H^{n+1}(sub) of a degreewise
    split short exact sequence of complexes."""
    model = inj.model
    mid = inj.target
    quot_data = _homology_data(proj.target, n)
    sub_data = _homology_data(inj.source, n + 1)
    section = sections.get(n) or model.zero_morphism(proj.target.component(n),
                                                     mid.component(n))
    lifted = section.matrix @ quot_data.cycles
    moved = mid.differential(n).matrix @ lifted
    # moved lands in the image of inj degreewise; pull it back columnwise
    sys = MatrixEquationSystem()
    sub_gens = inj.source.component(n + 1).payload.ngens
    sys.unknown("v", sub_gens, moved.cols)
    sys.equation([("v", inj.component(n + 1).matrix,
                   IntMatrix.identity(moved.cols))], moved,
                 mod=mid.component(n + 1).payload.relations)
    sol = sys.solve()
    if sol is None:
        raise InternalCheckError("zig-zag lift through the subcomplex is missing")
    coords = sub_data.coords_of_cycle(sol["v"])
    if coords is None:
        raise InternalCheckError("zig-zag image is not a cycle")
    return model.morphism(quot_data.ob, sub_data.ob, coords, check=True)


def derived_les(functor: FunctorSpec, s: ShortExactSequence,
                max_degree: int = 1) -> LongExactSequenceResult:
    """Long exact sequence of derived-functor values of a short exact sequence.

    The three resolutions come from the horseshoe, the functor is applied
    degreewise (split columns stay exact), homology is taken, and the
    connecting morphisms come from the zig-zag through the split sections.
    """
    model = s.i.model
    p_sub = projective_resolution(s.sub)
    p_quot = projective_resolution(s.quot)
    hs = horseshoe(s, p_sub, p_quot)
    p_mid = hs.middle
    f_sub = functor.apply_complex(p_sub.complex)
    f_mid = functor.apply_complex(p_mid.complex)
    f_quot = functor.apply_complex(p_quot.complex)

    def at_degree(n: int, res: Resolution) -> int:
        return n if not functor.contravariant else -n

    # degreewise maps of the transformed column sequences
    inj_comps, proj_comps, sect_comps = {}, {}, {}
    for k in range(len(hs.columns)):
        col = hs.columns[k]
        deg = -k if not functor.contravariant else k
        if not functor.contravariant:
            inj_comps[deg] = functor.apply_morphism(col.i)
            proj_comps[deg] = functor.apply_morphism(col.p)
            sect_comps[deg] = functor.apply_morphism(hs.sections[k])
        else:
            inj_comps[deg] = functor.apply_morphism(col.p)
            proj_comps[deg] = functor.apply_morphism(col.i)
            sect_comps[deg] = functor.apply_morphism(hs.retractions[k])
    if not functor.contravariant:
        sub_cx, quot_cx = f_sub, f_quot
    else:
        sub_cx, quot_cx = f_quot, f_sub
    inj = chain_map(sub_cx, f_mid, inj_comps, check=True)
    proj = chain_map(f_mid, quot_cx, proj_comps, check=True)
    for n in inj_comps:
        if not model.is_short_exact(inj_comps[n], proj_comps[n]):
            raise InternalCheckError("transformed column is not short exact")

    def value(cx: ChainComplex, i: int) -> ObjectHandle:
        return homology(cx, i if functor.contravariant else -i)

    def induced(f: ChainMap, i: int) -> MorphismHandle:
        return homology_induced(f, i if functor.contravariant else -i)

    arrows: list[MorphismHandle] = []
    objects: list[ObjectHandle] = []
    if not functor.contravariant:
        # L_k A' -> L_k A -> L_k A'' -> L_{k-1} A' -> ...
        for i in range(max_degree, -1, -1):
            if not arrows:
                objects.append(value(sub_cx, i))
            arrows.append(induced(inj, i))
            objects.append(value(f_mid, i))
            arrows.append(induced(proj, i))
            objects.append(value(quot_cx, i))
            if i > 0:
                delta = _connecting_map(inj, proj, sect_comps, -i)
                arrows.append(delta)
                objects.append(value(sub_cx, i - 1))
    else:
        # Ext^0 A'' -> Ext^0 A -> Ext^0 A' -> Ext^1 A'' -> ...
        for i in range(0, max_degree + 1):
            if not arrows:
                objects.append(value(sub_cx, i))
            arrows.append(induced(inj, i))
            objects.append(value(f_mid, i))
            arrows.append(induced(proj, i))
            objects.append(value(quot_cx, i))
            if i < max_degree:
                delta = _connecting_map(inj, proj, sect_comps, i)
                arrows.append(delta)
                objects.append(value(sub_cx, i + 1))

    # verify exactness at every joint, closing both ends with zero maps
    zero_head = model.zero_morphism(model.zero_object(), arrows[0].dom)
    zero_tail = model.zero_morphism(arrows[-1].cod, model.zero_object())
    seq = [zero_head] + arrows + [zero_tail]
    exact = all(is_exact_pair(u, v) for u, v in zip(seq, seq[1:]))
    return LongExactSequenceResult(functor, s, tuple(arrows), tuple(objects), exact)


# -- named derived functors -----------------------------------------------


def tor_values(m: int, n: int, max_degree: int = 1) -> dict[int, ObjectHandle]:
    from .models import cyclic
    f = FunctorSpec("tensor", cyclic(n))
    return derived(f, cyclic(m), max_degree=max_degree).values


def ext_values(m: int, n: int, max_degree: int = 1) -> dict[int, ObjectHandle]:
    from .models import cyclic
    f = FunctorSpec("hom_into", cyclic(n))
    return derived(f, cyclic(m), max_degree=max_degree).values
