"""Concrete model categories over finitely presented abelian groups.

Objects are presentations (generator count + integer relation matrix) and
arrows are matrices on generators, well-defined modulo the relation
lattices.  Six exact structures are provided on top of this single
representation:

* ``fgab()``            - all kernel-cokernel pairs (an abelian category),
* ``vect_model(p)``     - finite-dimensional spaces over F_p (abelian),
* ``fgab_split()``      - split exact structure on presented groups,
* ``free_exact()``      - f.g. free groups, sequences exact in the ambient
                          abelian category,
* ``free_split()``      - f.g. free groups with the split structure,
* ``even_rank_split()`` - even-rank free groups with the split structure
                          (weakly idempotent complete, not idempotent
                          complete).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .intlinalg import (
    IntMatrix,
    column_hnf,
    kernel_mod_p,
    lattice_contains,
    lattice_equal,
    preimage_basis,
    saturation,
    smith_normal_form,
    unimodular_inverse,
    _check_prime,
)
from .kernel import (
    Analysis,
    ExactStructureModel,
    GenBounds,
    IsoInvariants,
    MorphismHandle,
    MorphismSystem,
    ObjectHandle,
    PreconditionError,
    ShortExactSequence,
)


@dataclass(frozen=True)
class PresentedObject:
    """Cokernel presentation: Z^ngens modulo the column lattice of ``relations``."""

    ngens: int
    relations: IntMatrix

    def __post_init__(self) -> None:
        if self.relations.rows != self.ngens:
            raise ValueError("relation matrix must have one row per generator")


@lru_cache(maxsize=None)
def normalize_presentation(payload: PresentedObject) -> tuple[PresentedObject, IntMatrix, IntMatrix]:
    """Canonical (Smith-reduced) presentation plus the change of generators.

    Returns (canonical, to_raw, from_raw) where from_raw @ to_raw is the
    identity on the canonical generators and to_raw @ from_raw is the
    identity modulo the raw relation lattice.  Canonical presentations list
    torsion generators first (ascending divisibility) and free generators
    last, with a diagonal relation matrix.
    """
    n, rel = payload.ngens, payload.relations
    snf = smith_normal_form(rel)
    m = min(rel.rows, rel.cols)
    diag = [snf.D.entries[i][i] if i < m else 0 for i in range(n)]
    kept = [i for i in range(n) if diag[i] != 1]
    torsion = [diag[i] for i in kept if diag[i] > 1]
    sel = IntMatrix(len(kept), n,
                    tuple(tuple(1 if j == i else 0 for j in range(n)) for i in kept))
    from_raw = sel @ snf.U
    to_raw = unimodular_inverse(snf.U) @ sel.transpose()
    new_rel = IntMatrix(len(kept), len(torsion), tuple(
        tuple(torsion[j] if i == j else 0 for j in range(len(torsion)))
        for i in range(len(kept))))
    return PresentedObject(len(kept), new_rel), to_raw, from_raw


@lru_cache(maxsize=None)
def _invariants_of(payload: PresentedObject) -> IsoInvariants:
    canon, _, _ = normalize_presentation(payload)
    torsion = tuple(canon.relations.entries[i][i] for i in range(canon.relations.cols))
    return IsoInvariants(canon.ngens - len(torsion), torsion)


class PresentedModel(ExactStructureModel):
    """Shared machinery for all presented-group models."""

    object_family = "presented"  # or "free"

    # -- object layer ---------------------------------------------------

    def validate_object(self, payload: object) -> None:
        if not isinstance(payload, PresentedObject):
            raise PreconditionError(f"{self.model_id} expects presented objects")

    def _gens(self, payload: PresentedObject) -> int:
        return payload.ngens

    def _rel(self, payload: PresentedObject) -> IntMatrix:
        return payload.relations

    def object(self, ngens: int, relations: Optional[IntMatrix] = None) -> ObjectHandle:
        if relations is None:
            relations = IntMatrix.zeros(ngens, 0)
        return self._obj(PresentedObject(ngens, relations))

    def zero_object(self) -> ObjectHandle:
        return self.object(0)

    def iso_invariants(self, a: ObjectHandle) -> IsoInvariants:
        return _invariants_of(a.payload)

    def identity(self, a: ObjectHandle) -> MorphismHandle:
        return self.morphism(a, a, IntMatrix.identity(a.payload.ngens), check=False)

    def biproduct_payload(self, a: PresentedObject, b: PresentedObject) -> PresentedObject:
        return PresentedObject(a.ngens + b.ngens,
                               IntMatrix.block_diag(a.relations, b.relations))

    def _validate_morphism_matrix(self, dom: ObjectHandle, cod: ObjectHandle,
                                  matrix: IntMatrix) -> None:
        # matrix must carry the domain relation lattice into the codomain one
        moved = matrix @ dom.payload.relations
        if not lattice_contains(cod.payload.relations, moved):
            raise PreconditionError("matrix does not respect the relation lattices")

    # -- ambient lattice helpers (overridable backends) -------------------

    def _preimage(self, m: IntMatrix, rel_cod: IntMatrix) -> IntMatrix:
        """Basis of {x : m x in col(rel_cod)}."""
        return preimage_basis(m, rel_cod)

    def _kernel_lattice(self, f: MorphismHandle) -> IntMatrix:
        return self._preimage(f.matrix, f.cod.payload.relations)

    def _image_lattice(self, f: MorphismHandle) -> IntMatrix:
        return column_hnf(IntMatrix.hstack(f.matrix, f.cod.payload.relations))

    def _is_injective(self, f: MorphismHandle) -> bool:
        return lattice_equal(self._kernel_lattice(f), f.dom.payload.relations)

    def _is_surjective(self, f: MorphismHandle) -> bool:
        return lattice_contains(
            IntMatrix.hstack(f.matrix, f.cod.payload.relations),
            IntMatrix.identity(f.cod.payload.ngens))

    # -- subobjects and quotients ----------------------------------------

    def _normalized(self, ngens: int, relations: IntMatrix) -> tuple[ObjectHandle, IntMatrix, IntMatrix]:
        canon, to_raw, from_raw = normalize_presentation(PresentedObject(ngens, relations))
        return self._obj(canon), to_raw, from_raw

    def subobject(self, a: ObjectHandle, lattice_basis: IntMatrix) -> MorphismHandle:
        """Monic from the subgroup spanned by the basis columns into a."""
        rel = self._preimage(lattice_basis, a.payload.relations)
        k, to_raw, _ = self._normalized(lattice_basis.cols, rel)
        return self.morphism(k, a, lattice_basis @ to_raw, check=False)

    def quotient_by(self, a: ObjectHandle, cols: IntMatrix) -> MorphismHandle:
        """Epic from a onto a / (columns + relations), Smith-canonical."""
        rel = IntMatrix.hstack(cols, a.payload.relations)
        if self.object_family == "free":
            rel = saturation(rel)
        c, _, from_raw = self._normalized(a.payload.ngens, rel)
        return self.morphism(a, c, from_raw, check=False)

    # -- kernels, cokernels, analysis --------------------------------------

    def kernel(self, f: MorphismHandle) -> Optional[MorphismHandle]:
        try:
            return self.subobject(f.dom, self._kernel_lattice(f))
        except PreconditionError:
            return None

    def cokernel(self, f: MorphismHandle) -> Optional[MorphismHandle]:
        try:
            return self.quotient_by(f.cod, f.matrix)
        except PreconditionError:
            return None

    def analyze(self, f: MorphismHandle) -> Optional[Analysis]:
        if self.policy == "AllKernelCokernel":
            return self._analyze_ambient(f)
        if self.policy == "ExactInAmbient":
            im = column_hnf(f.matrix)
            if saturation(f.matrix) != im:
                return None
            return self._analyze_ambient(f)
        return self._analyze_split(f)

    def _analyze_ambient(self, f: MorphismHandle) -> Optional[Analysis]:
        k = self.kernel(f)
        c = self.cokernel(f)
        if k is None or c is None:
            return None
        if self.object_family == "presented":
            im_basis = self._image_lattice(f)
        else:
            im_basis = column_hnf(f.matrix)
        try:
            m = self.subobject(f.cod, im_basis)
        except PreconditionError:
            return None
        e = self.solve_right_factor(m, f)
        if e is None:
            return None
        return Analysis(k, e, m, c)

    def _analyze_split(self, f: MorphismHandle) -> Optional[Analysis]:
        # f factors split-epic-then-split-monic iff f is regular
        # (f g f = f for some morphism g) and the idempotents g f, f g
        # split in the model; the analysis falls out of the splitting data.
        sys = MorphismSystem(self)
        sys.unknown_morphism("g", f.cod, f.dom)
        sys.equation([("g", f.matrix, f.matrix)], f.matrix, cod=f.cod)
        sol = sys.solve()
        if sol is None:
            return None
        g = sol["g"]
        u = g @ f            # idempotent on dom
        w = f @ g            # idempotent on cod
        one_dom = self.identity(f.dom)
        one_cod = self.identity(f.cod)
        k = self._idempotent_image_monic(u.dom, one_dom - u)
        m = self._idempotent_image_monic(w.cod, w)
        if k is None or m is None:
            return None
        e = self.solve_right_factor(m, f)
        c_monic = self._idempotent_image_monic(w.cod, one_cod - w)
        if e is None or c_monic is None:
            return None
        # retraction onto the complement-image presents the cokernel
        c = self.solve_right_factor(c_monic, one_cod - w)
        if c is None:
            return None
        return Analysis(k, e, m, c)

    def _idempotent_image_monic(self, a: ObjectHandle,
                                w: MorphismHandle) -> Optional[MorphismHandle]:
        """Monic from the image of the idempotent w on a, if it is an object."""
        if self.object_family == "free":
            basis = column_hnf(w.matrix)
        else:
            basis = self._image_lattice(w)
        try:
            return self.subobject(a, basis)
        except PreconditionError:
            return None

    # -- admissibility -----------------------------------------------------

    def is_iso(self, f: MorphismHandle) -> bool:
        # bijective homomorphisms of finitely presented groups are invertible
        return self._is_injective(f) and self._is_surjective(f)

    def is_admissible_monic(self, f: MorphismHandle) -> bool:
        if self.policy == "AllKernelCokernel":
            return self._is_injective(f)
        if self.policy == "ExactInAmbient":
            return self._is_injective(f) and \
                all(d == 1 for d in smith_normal_form(f.matrix).invariant_factors)
        # split policies: a left inverse must exist
        sys = MorphismSystem(self)
        sys.unknown_morphism("s", f.cod, f.dom)
        sys.equation([("s", IntMatrix.identity(f.matrix.cols), f.matrix)],
                     self.identity(f.dom).matrix, cod=f.dom)
        return sys.solve() is not None

    def is_admissible_epic(self, f: MorphismHandle) -> bool:
        if self.policy in ("AllKernelCokernel", "ExactInAmbient"):
            return self._is_surjective(f)
        sys = MorphismSystem(self)
        sys.unknown_morphism("t", f.cod, f.dom)
        sys.equation([("t", f.matrix, IntMatrix.identity(f.matrix.rows))],
                     self.identity(f.cod).matrix, cod=f.cod)
        return sys.solve() is not None

    def is_short_exact(self, i: MorphismHandle, p: MorphismHandle) -> bool:
        if i.cod != p.dom:
            return False
        if not (p @ i).is_zero():
            return False
        if self.policy in ("AllKernelCokernel", "ExactInAmbient"):
            return self._is_injective(i) and self._is_surjective(p) and \
                lattice_equal(self._kernel_lattice(p), self._image_lattice(i))
        # split policies: one witness pair (s, t) with s i = 1, p t = 1,
        # i s + t p = 1 decides exactness
        na = i.matrix.cols
        nb = i.matrix.rows
        nc = p.matrix.rows
        sys = MorphismSystem(self)
        sys.unknown_morphism("s", i.cod, i.dom)
        sys.unknown_morphism("t", p.cod, p.dom)
        sys.equation([("s", IntMatrix.identity(na), i.matrix)],
                     IntMatrix.identity(na), cod=i.dom)
        sys.equation([("t", p.matrix, IntMatrix.identity(nc))],
                     IntMatrix.identity(nc), cod=p.cod)
        sys.equation([("s", i.matrix, IntMatrix.identity(nb)),
                      ("t", IntMatrix.identity(nb), p.matrix)],
                     IntMatrix.identity(nb), cod=i.cod)
        return sys.solve() is not None

    # -- projectivity --------------------------------------------------------

    def is_projective(self, a: ObjectHandle) -> bool:
        if self.policy == "AllKernelCokernel" and self.object_family == "presented" \
                and not isinstance(self, VectModel):
            return not self.iso_invariants(a).torsion_factors
        return True

    def projective_cover_epi(self, a: ObjectHandle) -> MorphismHandle:
        n = a.payload.ngens
        if self.policy == "AllKernelCokernel" and not isinstance(self, VectModel) \
                and self.object_family == "presented":
            p = self.object(n)
        elif isinstance(self, VectModel):
            p = self.object(n, IntMatrix.diagonal([self.p] * n))
        else:
            p = a
        return self.morphism(p, a, IntMatrix.identity(n), check=False)

    # -- random generators ----------------------------------------------------

    def _rand_matrix(self, rng: random.Random, rows: int, cols: int, bound: int) -> IntMatrix:
        return IntMatrix.from_rows(
            [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)],
            cols=cols)

    def random_object(self, rng: random.Random, bounds: GenBounds) -> ObjectHandle:
        if self.object_family == "free":
            r = rng.randrange(0, bounds.max_gens + 1)
            if self.policy == "EvenRankSplit":
                r = 2 * rng.randrange(0, bounds.max_gens // 2 + 1)
            return self.object(r)
        n = rng.randrange(0, bounds.max_gens + 1)
        r = rng.randrange(0, bounds.max_gens + 1)
        return self.object(n, self._rand_matrix(rng, n, r, bounds.max_rel_entry))

    @lru_cache(maxsize=4096)
    def _hom_basis(self, a: PresentedObject, b: PresentedObject) -> IntMatrix:
        """Columns are vectorized generators of Hom(a, b) inside matrix space."""
        na, nb = a.ngens, b.ngens
        ra = a.relations.cols
        lhs = IntMatrix.kron(a.relations.transpose(), IntMatrix.identity(nb))
        lat = IntMatrix.kron(IntMatrix.identity(ra), b.relations)
        return preimage_basis(lhs, lat) if ra else IntMatrix.identity(na * nb)

    def random_morphism(self, rng: random.Random, a: ObjectHandle,
                        b: ObjectHandle) -> MorphismHandle:
        na, nb = a.payload.ngens, b.payload.ngens
        if na == 0 or nb == 0:
            return self.zero_morphism(a, b)
        if self.object_family == "free":
            return self.morphism(a, b, self._rand_matrix(rng, nb, na, 3), check=False)
        basis = self._hom_basis(a.payload, b.payload)
        vec = [0] * (na * nb)
        for j in range(basis.cols):
            c = rng.randint(-2, 2)
            if c:
                for i in range(na * nb):
                    vec[i] += c * basis.entries[i][j]
        m = IntMatrix(nb, na, tuple(tuple(vec[j * nb + i] for j in range(na))
                                    for i in range(nb)))
        return self.morphism(a, b, m, check=False)

    def random_automorphism(self, rng: random.Random, a: ObjectHandle) -> MorphismHandle:
        n = a.payload.ngens
        if n == 0:
            return self.identity(a)
        if self.object_family == "free":
            m = IntMatrix.identity(n)
            for _ in range(rng.randrange(1, 2 * n + 2)):
                i, j = rng.randrange(n), rng.randrange(n)
                if i == j:
                    continue
                e = IntMatrix.from_rows(
                    [[1 if r == c else (rng.choice([-2, -1, 1, 2]) if (r, c) == (i, j) else 0)
                      for c in range(n)] for r in range(n)])
                m = m @ e
            return self.morphism(a, a, m, check=False)
        one = self.identity(a)
        for _ in range(6):
            h = self.random_morphism(rng, a, a)
            cand = one + h
            if self.is_iso(cand):
                return cand
        return one

    def _conjugated_split_ses(self, rng: random.Random, a: ObjectHandle,
                              c: ObjectHandle) -> ShortExactSequence:
        bp = self.biproduct(a, c)
        t, tinv = self._random_shear_pair(rng, bp)
        return ShortExactSequence(t @ bp.inj1, bp.proj2 @ tinv)

    def random_ses(self, rng: random.Random, bounds: GenBounds) -> ShortExactSequence:
        if self.policy in ("SplitOnly", "EvenRankSplit"):
            a = self.random_object(rng, bounds)
            c = self.random_object(rng, bounds)
            return self._conjugated_split_ses(rng, a, c)
        if self.policy == "ExactInAmbient":
            b = self.random_object(rng, bounds)
            cols = self._rand_matrix(rng, b.payload.ngens,
                                     rng.randrange(0, bounds.max_gens + 1), 3)
            i = self.subobject(b, saturation(cols))
            p = self.cokernel(i)
            return ShortExactSequence(i, p)
        b = self.random_object(rng, bounds)
        extra = self._rand_matrix(rng, b.payload.ngens,
                                  rng.randrange(0, bounds.max_gens + 1), 3)
        sub = column_hnf(IntMatrix.hstack(extra, b.payload.relations))
        i = self.subobject(b, sub)
        p = self.cokernel(i)
        return ShortExactSequence(i, p)

    def random_admissible(self, rng: random.Random, bounds: GenBounds) -> MorphismHandle:
        if self.policy == "AllKernelCokernel":
            a = self.random_object(rng, bounds)
            b = self.random_object(rng, bounds)
            return self.random_morphism(rng, a, b)
        w = self.random_object(rng, bounds)
        e = self.random_admissible_epic_onto(rng, w, bounds)
        m = self.random_admissible_monic_from(rng, w, bounds)
        return m @ e

    @property
    def _split_generators(self) -> bool:
        """Generators that stay in the model by building split data."""
        return self.object_family == "free" or self.policy == "SplitOnly" \
            or isinstance(self, VectModel)

    def random_admissible_monic_from(self, rng: random.Random, a: ObjectHandle,
                                     bounds: GenBounds) -> MorphismHandle:
        r = rng.randrange(0, bounds.max_gens + 1)
        if self.policy == "EvenRankSplit":
            r = 2 * rng.randrange(0, bounds.max_gens // 2 + 1)
        if self._split_generators:
            ext = self.object(r) if self.object_family == "free" else \
                self.random_object(rng, bounds)
            bp = self.biproduct(a, ext)
            t, _ = self._random_shear_pair(rng, bp)
            return t @ bp.inj1
        # presented abelian model: a general (not necessarily split) monic
        n = a.payload.ngens
        u = self._rand_matrix(rng, n, r, 2)
        v = IntMatrix.from_rows(
            [[rng.choice([1, 1, 2, 3]) if i == j else (rng.randint(-2, 2) if i < j else 0)
              for j in range(r)] for i in range(r)], cols=r)
        rel = IntMatrix.vstack(
            IntMatrix.hstack(a.payload.relations, u),
            IntMatrix.hstack(IntMatrix.zeros(r, a.payload.relations.cols), v))
        x = self.object(n + r, rel)
        inj = IntMatrix.vstack(IntMatrix.identity(n), IntMatrix.zeros(r, n))
        return self.morphism(a, x, inj, check=False)

    def random_admissible_epic_onto(self, rng: random.Random, b: ObjectHandle,
                                    bounds: GenBounds) -> MorphismHandle:
        r = rng.randrange(0, bounds.max_gens + 1)
        if self.policy == "EvenRankSplit":
            r = 2 * rng.randrange(0, bounds.max_gens // 2 + 1)
        if self._split_generators:
            ext = self.object(r) if self.object_family == "free" else \
                self.random_object(rng, bounds)
            bp = self.biproduct(b, ext)
            _, tinv = self._random_shear_pair(rng, bp)
            w = self.random_morphism(rng, ext, b)
            p = bp.proj1 + (w @ bp.proj2)
            return p @ tinv
        # presented abelian model: quotient of free(n) + R by part of the
        # kernel of the candidate epic [I | w].  The kernel of [I | w]
        # modulo rel(b) is generated by the structured columns below, so no
        # Hermite pass (and no entry blowup) is needed.
        n = b.payload.ngens
        rel = b.payload.relations
        w = self._rand_matrix(rng, n, r, 2)
        phat = IntMatrix.hstack(IntMatrix.identity(n), w)
        gens = IntMatrix.vstack(
            IntMatrix.hstack(-w, rel),
            IntMatrix.block_diag(IntMatrix.identity(r),
                                 IntMatrix.zeros(0, rel.cols)))
        take = [j for j in range(gens.cols) if rng.random() < 0.6]
        x = self.object(n + r, gens.take_columns(take))
        return self.morphism(x, b, phat, check=False)

    def random_idempotent(self, rng: random.Random, a: ObjectHandle) -> MorphismHandle:
        if self.object_family != "free":
            raise PreconditionError("random idempotents are generated on free models")
        n = a.payload.ngens
        k = rng.randrange(0, n + 1)
        proj = IntMatrix.diagonal([1] * k, rows=n, cols=n)
        t = self.random_automorphism(rng, a)
        return self.morphism(a, a, t.matrix @ proj @ unimodular_inverse(t.matrix),
                             check=False)


class FgabModel(PresentedModel):
    """Finitely generated abelian groups with all kernel-cokernel pairs."""

    model_id = "fgab"
    policy = "AllKernelCokernel"
    idempotent_complete = True
    weakly_idempotent_complete = True


class FgabSplitModel(PresentedModel):
    """Presented abelian groups with the split exact structure."""

    model_id = "fgab_split"
    policy = "SplitOnly"
    idempotent_complete = True
    weakly_idempotent_complete = True


class VectModel(PresentedModel):
    """Finite-dimensional vector spaces over the prime field F_p.

    Objects reuse the presented-group grid with relations p * I; solving is
    routed through Gaussian elimination modulo p.
    """

    policy = "AllKernelCokernel"
    idempotent_complete = True
    weakly_idempotent_complete = True

    def __init__(self, p: int):
        try:
            _check_prime(p)
        except ValueError as exc:
            raise PreconditionError(str(exc)) from exc
        self.p = p
        self.model_id = f"vect({p})"

    def validate_object(self, payload: object) -> None:
        super().validate_object(payload)
        inv = _invariants_of(payload)
        if inv.free_rank or any(t != self.p for t in inv.torsion_factors):
            raise PreconditionError(f"object is not an F_{self.p} vector space")

    def object(self, ngens: int, relations: Optional[IntMatrix] = None) -> ObjectHandle:
        if relations is None:
            relations = IntMatrix.diagonal([self.p] * ngens)
        return self._obj(PresentedObject(ngens, relations))

    def _preimage(self, m: IntMatrix, rel_cod: IntMatrix) -> IntMatrix:
        k = kernel_mod_p(m, self.p)
        pid = IntMatrix.diagonal([self.p] * m.cols)
        return column_hnf(IntMatrix.hstack(k, pid))

    def random_object(self, rng: random.Random, bounds: GenBounds) -> ObjectHandle:
        return self.object(rng.randrange(0, bounds.max_gens + 1))


class FreeExactModel(PresentedModel):
    """F.g. free abelian groups; exact structure = exact in ambient abelian groups."""

    model_id = "free_exact"
    policy = "ExactInAmbient"
    object_family = "free"
    idempotent_complete = True
    weakly_idempotent_complete = True

    def validate_object(self, payload: object) -> None:
        super().validate_object(payload)
        if payload.relations.cols != 0:
            raise PreconditionError(f"{self.model_id} objects are free (no relations)")


class FreeSplitModel(FreeExactModel):
    """F.g. free abelian groups with the split exact structure."""

    model_id = "free_split"
    policy = "SplitOnly"


class EvenRankSplitModel(FreeSplitModel):
    """Even-rank free groups, split structure: WIC but not idempotent complete."""

    model_id = "even_rank_split"
    policy = "EvenRankSplit"
    idempotent_complete = False
    weakly_idempotent_complete = True

    def validate_object(self, payload: object) -> None:
        super().validate_object(payload)
        if payload.ngens % 2:
            raise PreconditionError("even_rank_split objects have even rank")


@lru_cache(maxsize=None)
def fgab() -> FgabModel:
    return FgabModel()


@lru_cache(maxsize=None)
def fgab_split() -> FgabSplitModel:
    return FgabSplitModel()


@lru_cache(maxsize=None)
def vect_model(p: int) -> VectModel:
    return VectModel(p)


@lru_cache(maxsize=None)
def free_exact() -> FreeExactModel:
    return FreeExactModel()


@lru_cache(maxsize=None)
def free_split() -> FreeSplitModel:
    return FreeSplitModel()


@lru_cache(maxsize=None)
def even_rank_split() -> EvenRankSplitModel:
    return EvenRankSplitModel()


# -- object builders ----------------------------------------------------


def fgab_object(ngens: int, relations=None, model: Optional[PresentedModel] = None) -> ObjectHandle:
    m = model if model is not None else fgab()
    if relations is None:
        rel = IntMatrix.zeros(ngens, 0)
    elif isinstance(relations, IntMatrix):
        rel = relations
    else:
        rel = IntMatrix.from_rows(relations, cols=len(relations[0]) if relations else 0)
        if rel.rows != ngens:
            raise PreconditionError("relation rows must equal the generator count")
    return m.object(ngens, rel)


def cyclic(n: int, model: Optional[PresentedModel] = None) -> ObjectHandle:
    """Z/n; by convention cyclic(0) is Z (single zero relation)."""
    if n < 0:
        raise PreconditionError("cyclic takes a non-negative modulus")
    return fgab_object(1, [[n]], model=model)


def free(r: int, model: Optional[PresentedModel] = None) -> ObjectHandle:
    if r < 0:
        raise PreconditionError("free rank must be non-negative")
    m = model if model is not None else fgab()
    return m.object(r)


def vect(dim: int, p: int) -> ObjectHandle:
    return vect_model(p).object(dim)


# -- model-level convenience wrappers -------------------------------------


def iso_invariants(a: ObjectHandle) -> IsoInvariants:
    return a.model.iso_invariants(a)


def is_projective(a: ObjectHandle) -> bool:
    return a.model.is_projective(a)


def projective_cover_epi(a: ObjectHandle) -> MorphismHandle:
    return a.model.projective_cover_epi(a)


def random_object(rng: random.Random, bounds: GenBounds,
                  model: ExactStructureModel) -> ObjectHandle:
    return model.random_object(rng, bounds)


def random_morphism(rng: random.Random, a: ObjectHandle, b: ObjectHandle) -> MorphismHandle:
    return a.model.random_morphism(rng, a, b)


def random_ses(rng: random.Random, bounds: GenBounds,
               model: ExactStructureModel) -> ShortExactSequence:
    return model.random_ses(rng, bounds)


def random_admissible(rng: random.Random, bounds: GenBounds,
                      model: ExactStructureModel) -> MorphismHandle:
    return model.random_admissible(rng, bounds)
