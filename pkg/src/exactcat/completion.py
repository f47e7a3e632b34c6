"""Idempotent completion as a model transformer, plus retraction probes.

Objects of the completed model are pairs (A, p) with p idempotent; hom
sets are the sandwiched groups q Hom(A, B) p.  All computations delegate
to a *target* model through an explicit splitting of each idempotent: for
bases whose idempotents already split the target is the base itself, and
for the even-rank split model the target is the split structure on all
finitely generated free groups (every free group is a summand of an
even-rank one, so this is exactly what the completion adjoins).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .intlinalg import IntMatrix, column_hnf
from .kernel import (
    Analysis,
    ExactStructureModel,
    GenBounds,
    InternalCheckError,
    IsoInvariants,
    MorphismHandle,
    ObjectHandle,
    PreconditionError,
    ShortExactSequence,
)
from .models import PresentedModel, free_split


class KernelAbsent(PreconditionError):
    """The requested kernel does not exist in the model (a legal outcome)."""


@dataclass(frozen=True)
class CompletionObject:
    """A pair (A, p): an object of the base model with an idempotent on it."""

    base: ObjectHandle
    idem: IntMatrix


@dataclass(frozen=True, eq=False)
class SplitData:
    target: ObjectHandle       # object of the target model presenting im(p)
    monic: IntMatrix           # target gens -> host gens, m r = p
    retract: IntMatrix         # host gens -> target gens, r m = 1


class CompletedModel(ExactStructureModel):
    """The idempotent completion of a base model, with the inherited
    exact structure (direct summands of base sequences)."""

    def __init__(self, base: ExactStructureModel):
        self.base = base
        self.model_id = f"completion({base.model_id})"
        self.policy = base.policy
        self.idempotent_complete = True
        self.weakly_idempotent_complete = True
        self.target: PresentedModel = base if base.idempotent_complete else free_split()
        self._splits: dict[CompletionObject, SplitData] = {}

    # -- object layer ----------------------------------------------------

    def validate_object(self, payload: object) -> None:
        if not isinstance(payload, CompletionObject):
            raise PreconditionError("completion objects are (object, idempotent) pairs")
        self.base.validate_object(payload.base.payload)
        p = payload.idem
        n = self.base._gens(payload.base.payload)
        if p.rows != n or p.cols != n:
            raise PreconditionError("idempotent has the wrong shape")
        base_p = self.base.morphism(payload.base, payload.base, p)
        if not (base_p @ base_p).same_as(base_p):
            raise PreconditionError("the designated endomorphism is not idempotent")

    def _gens(self, payload: CompletionObject) -> int:
        return self.base._gens(payload.base.payload)

    def _rel(self, payload: CompletionObject) -> IntMatrix:
        return self.base._rel(payload.base.payload)

    def _coerce_matrix(self, dom: ObjectHandle, cod: ObjectHandle,
                       matrix: IntMatrix) -> IntMatrix:
        sandwiched = cod.payload.idem @ matrix @ dom.payload.idem
        return super()._coerce_matrix(dom, cod, sandwiched)

    def _validate_morphism_matrix(self, dom: ObjectHandle, cod: ObjectHandle,
                                  matrix: IntMatrix) -> None:
        self.base._validate_morphism_matrix(dom.payload.base, cod.payload.base, matrix)

    def pair(self, base_obj: ObjectHandle, idem: IntMatrix) -> ObjectHandle:
        return self._obj(CompletionObject(base_obj, idem))

    def embed(self, a: ObjectHandle) -> ObjectHandle:
        self.base._require_same_model(a)
        return self.pair(a, IntMatrix.identity(self.base._gens(a.payload)))

    def embed_morphism(self, f: MorphismHandle) -> MorphismHandle:
        return self.morphism(self.embed(f.dom), self.embed(f.cod), f.matrix,
                             check=False)

    def zero_object(self) -> ObjectHandle:
        z = self.base.zero_object()
        return self.pair(z, IntMatrix.zeros(0, 0))

    def identity(self, a: ObjectHandle) -> MorphismHandle:
        return self.morphism(a, a, a.payload.idem, check=False)

    def iso_invariants(self, a: ObjectHandle) -> IsoInvariants:
        return self.target.iso_invariants(self._split(a).target)

    def biproduct_payload(self, a: CompletionObject, b: CompletionObject) -> CompletionObject:
        bp = self.base.biproduct(a.base, b.base)
        idem = IntMatrix.block_diag(a.idem, b.idem)
        return CompletionObject(bp.ob, idem)

    # -- splitting through the target model --------------------------------

    def _split(self, a: ObjectHandle) -> SplitData:
        payload = a.payload
        hit = self._splits.get(payload)
        if hit is not None:
            return hit
        base, p = payload.base, payload.idem
        if self.base.idempotent_complete:
            basis = self.base._image_lattice(
                self.base.morphism(base, base, p, check=False)) \
                if self.base.object_family == "presented" else column_hnf(p)
            mono = self.base.subobject(base, basis)
            target = mono.dom
            ret = self.base.solve_right_factor(mono,
                                               self.base.morphism(base, base, p,
                                                                  check=False))
            if ret is None:
                raise InternalCheckError("idempotent image retraction is missing")
            data = SplitData(target, mono.matrix, ret.matrix)
        else:
            basis = column_hnf(p)   # saturated: idempotent images are summands
            target = self.target.object(basis.cols)
            from .intlinalg import MatrixEquationSystem
            sys = MatrixEquationSystem()
            sys.unknown("r", basis.cols, p.rows)
            sys.equation([("r", basis, IntMatrix.identity(p.cols))], p)
            sol = sys.solve()
            if sol is None:
                raise InternalCheckError("free idempotent image retraction is missing")
            data = SplitData(target, basis, sol["r"])
        self._splits[payload] = data
        return data

    def to_target(self, f: MorphismHandle) -> MorphismHandle:
        sd, sc = self._split(f.dom), self._split(f.cod)
        return self.target.morphism(sd.target, sc.target,
                                    sc.retract @ f.matrix @ sd.monic, check=False)

    def embed_target(self, t: ObjectHandle) -> tuple[ObjectHandle, SplitData]:
        """Represent a target-model object as a completion object."""
        if self.base.idempotent_complete:
            host = self.pair(t, IntMatrix.identity(self.base._gens(t.payload)))
            n = self.base._gens(t.payload)
            data = SplitData(t, IntMatrix.identity(n), IntMatrix.identity(n))
        else:
            r = t.payload.ngens
            host_base = self.base.object(2 * r)
            idem = IntMatrix.diagonal([1] * r, rows=2 * r, cols=2 * r)
            host = self.pair(host_base, idem)
            mono = IntMatrix.vstack(IntMatrix.identity(r), IntMatrix.zeros(r, r))
            ret = IntMatrix.hstack(IntMatrix.identity(r), IntMatrix.zeros(r, r))
            data = SplitData(t, mono, ret)
        self._splits[host.payload] = data
        return host, data

    def from_target(self, g: MorphismHandle, dom: ObjectHandle,
                    cod: ObjectHandle) -> MorphismHandle:
        sd, sc = self._split(dom), self._split(cod)
        if g.dom != sd.target or g.cod != sc.target:
            raise PreconditionError("target morphism does not match the splittings")
        return self.morphism(dom, cod, sc.monic @ g.matrix @ sd.retract, check=False)

    # -- structure ----------------------------------------------------------

    def kernel(self, f: MorphismHandle) -> Optional[MorphismHandle]:
        k = self.target.kernel(self.to_target(f))
        if k is None:
            return None
        kobj, _ = self.embed_target(k.dom)
        return self.from_target(k, kobj, f.dom)

    def cokernel(self, f: MorphismHandle) -> Optional[MorphismHandle]:
        c = self.target.cokernel(self.to_target(f))
        if c is None:
            return None
        cobj, _ = self.embed_target(c.cod)
        return self.from_target(c, f.cod, cobj)

    def analyze(self, f: MorphismHandle) -> Optional[Analysis]:
        an = self.target.analyze(self.to_target(f))
        if an is None:
            return None
        kobj, _ = self.embed_target(an.kernel_arrow.dom)
        iobj, _ = self.embed_target(an.image_monic.dom)
        cobj, _ = self.embed_target(an.cokernel_arrow.cod)
        return Analysis(
            self.from_target(an.kernel_arrow, kobj, f.dom),
            self.from_target(an.coimage_epic, f.dom, iobj),
            self.from_target(an.image_monic, iobj, f.cod),
            self.from_target(an.cokernel_arrow, f.cod, cobj),
        )

    def is_admissible_monic(self, f: MorphismHandle) -> bool:
        return self.target.is_admissible_monic(self.to_target(f))

    def is_admissible_epic(self, f: MorphismHandle) -> bool:
        return self.target.is_admissible_epic(self.to_target(f))

    def is_short_exact(self, i: MorphismHandle, p: MorphismHandle) -> bool:
        if i.cod != p.dom:
            return False
        return self.target.is_short_exact(self.to_target(i), self.to_target(p))

    def is_iso(self, f: MorphismHandle) -> bool:
        return self.target.is_iso(self.to_target(f))

    def is_projective(self, a: ObjectHandle) -> bool:
        return self.target.is_projective(self._split(a).target)

    def projective_cover_epi(self, a: ObjectHandle) -> MorphismHandle:
        cover = self.target.projective_cover_epi(self._split(a).target)
        pobj, _ = self.embed_target(cover.dom)
        return self.from_target(cover, pobj, a)

    # -- generators -----------------------------------------------------------

    def _rand_matrix(self, rng: random.Random, rows: int, cols: int, bound: int):
        return self.base._rand_matrix(rng, rows, cols, bound)

    def random_object(self, rng: random.Random, bounds: GenBounds) -> ObjectHandle:
        if self.base.object_family == "free":
            host = self.base.random_object(rng, bounds)
            p = self.base.random_idempotent(rng, host)
            return self.pair(host, p.matrix)
        a = self.base.random_object(rng, bounds)
        b = self.base.random_object(rng, bounds)
        bp = self.base.biproduct(a, b)
        t, tinv = self.base._random_shear_pair(rng, bp)
        proj = (bp.inj1 @ bp.proj1)
        idem = t.matrix @ proj.matrix @ tinv.matrix
        return self.pair(bp.ob, idem)

    def random_morphism(self, rng: random.Random, a: ObjectHandle,
                        b: ObjectHandle) -> MorphismHandle:
        raw = self.base.random_morphism(rng, a.payload.base, b.payload.base)
        return self.morphism(a, b, raw.matrix, check=False)

    def random_ses(self, rng: random.Random, bounds: GenBounds) -> ShortExactSequence:
        s = self.target.random_ses(rng, bounds)
        sub, _ = self.embed_target(s.sub)
        mid, _ = self.embed_target(s.mid)
        quot, _ = self.embed_target(s.quot)
        return ShortExactSequence(self.from_target(s.i, sub, mid),
                                  self.from_target(s.p, mid, quot))

    def random_admissible(self, rng: random.Random, bounds: GenBounds) -> MorphismHandle:
        f = self.target.random_admissible(rng, bounds)
        dom, _ = self.embed_target(f.dom)
        cod, _ = self.embed_target(f.cod)
        return self.from_target(f, dom, cod)

    def random_admissible_monic_from(self, rng: random.Random, a: ObjectHandle,
                                     bounds: GenBounds) -> MorphismHandle:
        i = self.target.random_admissible_monic_from(rng, self._split(a).target, bounds)
        cod, _ = self.embed_target(i.cod)
        return self.from_target(i, a, cod)

    def random_admissible_epic_onto(self, rng: random.Random, b: ObjectHandle,
                                    bounds: GenBounds) -> MorphismHandle:
        e = self.target.random_admissible_epic_onto(rng, self._split(b).target, bounds)
        dom, _ = self.embed_target(e.dom)
        return self.from_target(e, dom, b)

    def random_automorphism(self, rng: random.Random, a: ObjectHandle) -> MorphismHandle:
        u = self.target.random_automorphism(rng, self._split(a).target)
        return self.from_target(u, a, a)

    def random_idempotent(self, rng: random.Random, a: ObjectHandle) -> MorphismHandle:
        if getattr(self.target, "object_family", None) == "free":
            q = self.target.random_idempotent(rng, self._split(a).target)
            return self.from_target(q, a, a)
        raise PreconditionError("random idempotents on a fixed object need a free target; "
                                "use random_split_pair instead")

    def random_split_pair(self, rng: random.Random,
                          bounds: GenBounds) -> tuple[ObjectHandle, MorphismHandle]:
        """A random completion object with a random idempotent on it."""
        x = self.random_object(rng, bounds)
        y = self.random_object(rng, bounds)
        bp = self.biproduct(x, y)
        f = self.random_morphism(rng, y, x)
        g = self.random_morphism(rng, x, y)
        one = self.identity(bp.ob)
        upper = one + (bp.inj1 @ f @ bp.proj2)
        lower = one + (bp.inj2 @ g @ bp.proj1)
        upper_inv = one - (bp.inj1 @ f @ bp.proj2)
        lower_inv = one - (bp.inj2 @ g @ bp.proj1)
        t = upper @ lower
        tinv = lower_inv @ upper_inv
        q = t @ bp.inj1 @ bp.proj1 @ tinv
        return bp.ob, q


@lru_cache(maxsize=None)
def complete(model: ExactStructureModel) -> CompletedModel:
    """The idempotent completion of a model, as a model."""
    return CompletedModel(model)


@dataclass(frozen=True, eq=False)
class SplitIdempotentResult:
    """Decomposition X = K + I splitting an idempotent, with witnesses.

    The four arrows satisfy l k = 1_K, j i = 1_I and k l + i j = 1_X, and
    conjugating the idempotent by the induced isomorphism X = K + I gives
    the block projection (0 0; 0 1).
    """

    kernel_part: ObjectHandle
    image_part: ObjectHandle
    k: MorphismHandle   # K -> X
    l: MorphismHandle   # X -> K
    i: MorphismHandle   # I -> X
    j: MorphismHandle   # X -> I


def split_idempotent(x: ObjectHandle, q: MorphismHandle) -> SplitIdempotentResult:
    """Split an idempotent on a completion object explicitly."""
    model = x.model
    if not isinstance(model, CompletedModel):
        raise PreconditionError("split_idempotent operates on completion objects")
    if q.dom != x or q.cod != x:
        raise PreconditionError("the idempotent must be an endomorphism of x")
    if not (q @ q).same_as(q):
        raise PreconditionError("the given endomorphism is not idempotent")
    one = model.identity(x)
    comp = one - q
    kpart = model.pair(x.payload.base, comp.matrix)
    ipart = model.pair(x.payload.base, q.matrix)
    k = model.morphism(kpart, x, comp.matrix, check=False)
    l = model.morphism(x, kpart, comp.matrix, check=False)
    i = model.morphism(ipart, x, q.matrix, check=False)
    j = model.morphism(x, ipart, q.matrix, check=False)
    if not (l @ k).same_as(model.identity(kpart)):
        raise InternalCheckError("l k != 1 in the idempotent splitting")
    if not (j @ i).same_as(model.identity(ipart)):
        raise InternalCheckError("j i != 1 in the idempotent splitting")
    if not ((k @ l) + (i @ j)).same_as(one):
        raise InternalCheckError("k l + i j != 1 in the idempotent splitting")
    return SplitIdempotentResult(kpart, ipart, k, l, i, j)


@dataclass(frozen=True, eq=False)
class ExtendedFunctor:
    """Extension of an additive functor to the completions: (A, p) -> (F A, F p)."""

    inner: object   # anything with apply_object / apply_morphism
    source: CompletedModel
    dest: CompletedModel

    def apply_object(self, a: ObjectHandle) -> ObjectHandle:
        payload = a.payload
        fp = self.inner.apply_morphism(
            self.source.base.morphism(payload.base, payload.base, payload.idem,
                                      check=False))
        if fp.dom != fp.cod:
            raise PreconditionError("functor image of an endomorphism must be an endo")
        if not (fp @ fp).same_as(fp):
            raise PreconditionError(
                "functor image of an idempotent is not idempotent; "
                "the functor is not additive/functorial")
        return self.dest.pair(fp.dom, fp.matrix)

    def apply_morphism(self, f: MorphismHandle) -> MorphismHandle:
        base_f = self.source.base.morphism(f.dom.payload.base, f.cod.payload.base,
                                           f.matrix, check=False)
        ff = self.inner.apply_morphism(base_f)
        dom = self.apply_object(f.dom)
        cod = self.apply_object(f.cod)
        if getattr(self.inner, "contravariant", False):
            dom, cod = cod, dom
        return self.dest.morphism(dom, cod, ff.matrix, check=False)


def extend_functor(functor, source: CompletedModel,
                   dest: CompletedModel) -> ExtendedFunctor:
    """Extend an additive functor of the base models to the completions."""
    return ExtendedFunctor(functor, source, dest)


class IdentityFunctor:
    """Identity functor of a base model (for extension-law checks)."""

    contravariant = False

    def apply_object(self, a: ObjectHandle) -> ObjectHandle:
        return a

    def apply_morphism(self, f: MorphismHandle) -> MorphismHandle:
        return f


class ComposedFunctor:
    """Composite G o F of two covariant functors."""

    contravariant = False

    def __init__(self, g, f):
        self.g, self.f = g, f

    def apply_object(self, a: ObjectHandle) -> ObjectHandle:
        return self.g.apply_object(self.f.apply_object(a))

    def apply_morphism(self, m: MorphismHandle) -> MorphismHandle:
        return self.g.apply_morphism(self.f.apply_morphism(m))


@dataclass(frozen=True, eq=False)
class RetractionSplitting:
    """Rem-style splitting data of a retraction with a kernel."""

    kernel_arrow: MorphismHandle     # k : A >-> B
    complement: MorphismHandle       # t : B -> A
    retraction: MorphismHandle       # r : B ->> C
    section: MorphismHandle          # s : C -> B
    forward: MorphismHandle          # (k s) : A + C -> B
    backward: MorphismHandle         # (t; r) : B -> A + C


def retraction_kernel_probe(r: MorphismHandle, s: MorphismHandle) -> RetractionSplitting:
    """Split B as A + C from a retraction r with section s, via the kernel.

    Requires r s = 1 and a kernel of r in the model; produces t with the
    four identities t k = 1, t s = 0, r s = 1, k t + s r = 1.  A missing
    kernel raises KernelAbsent: the model is not weakly idempotent
    complete at this instance.
    """
    model = r.model
    if not (r @ s).same_as(model.identity(r.cod)):
        raise PreconditionError("r s = 1 fails: not a retraction/section pair")
    k = model.kernel(r)
    if k is None:
        raise KernelAbsent("the retraction has no kernel in this model")
    one_b = model.identity(r.dom)
    t = model.solve_right_factor(k, one_b - (s @ r))
    if t is None:
        raise InternalCheckError("complement of the retraction kernel is missing")
    if not (t @ k).same_as(model.identity(k.dom)):
        raise InternalCheckError("t k != 1 in the retraction splitting")
    if not (t @ s).is_zero():
        raise InternalCheckError("t s != 0 in the retraction splitting")
    if not ((k @ t) + (s @ r)).same_as(one_b):
        raise InternalCheckError("k t + s r != 1 in the retraction splitting")
    bp = model.biproduct(k.dom, r.cod)
    forward = (k @ bp.proj1) + (s @ bp.proj2)
    backward = (bp.inj1 @ t) + (bp.inj2 @ r)
    if not (backward @ forward).same_as(model.identity(bp.ob)):
        raise InternalCheckError("retraction splitting is not an isomorphism")
    if not (forward @ backward).same_as(one_b):
        raise InternalCheckError("retraction splitting is not an isomorphism")
    return RetractionSplitting(k, t, r, s, forward, backward)
