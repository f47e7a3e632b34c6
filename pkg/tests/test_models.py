import random

import pytest

from exactcat.intlinalg import IntMatrix
from exactcat.kernel import GenBounds, PreconditionError
from exactcat.models import (
    cyclic,
    even_rank_split,
    fgab,
    fgab_object,
    fgab_split,
    free,
    free_exact,
    free_split,
    is_projective,
    iso_invariants,
    projective_cover_epi,
    vect,
    vect_model,
)

B = GenBounds()


def test_object_builders():
    z6 = cyclic(6)
    inv = iso_invariants(z6)
    assert inv.free_rank == 0 and inv.torsion_factors == (6,)

    f2 = free(2)
    inv = iso_invariants(f2)
    assert inv.free_rank == 2 and inv.torsion_factors == ()

    a = fgab_object(2, [[2], [4]])
    inv = iso_invariants(a)
    assert inv.free_rank == 1 and inv.torsion_factors == (2,)

    assert iso_invariants(cyclic(0)) == iso_invariants(free(1))
    assert iso_invariants(cyclic(1)).torsion_factors == ()


def test_iso_invariants_examples():
    m = fgab()
    # Z/2 + Z/3 has invariant factor chain (6)
    a = fgab_object(2, [[2, 0], [0, 3]])
    assert iso_invariants(a).torsion_factors == (6,)
    assert iso_invariants(m.zero_object()) == iso_invariants(fgab_object(0))
    b = fgab_object(2, [[2], [0]])
    assert iso_invariants(b).free_rank == 1
    assert iso_invariants(b).torsion_factors == (2,)


def test_invariants_stable_under_presentation_change():
    rng = random.Random(0)
    m = fgab()
    for _ in range(40):
        a = m.random_object(rng, B)
        rel = a.payload.relations
        if rel.cols == 0:
            continue
        # augment relations by integer combinations of existing relators
        combos = []
        for _ in range(rng.randrange(1, 3)):
            c = [rng.randint(-2, 2) for _ in range(rel.cols)]
            combos.append([sum(rel.entries[i][j] * c[j] for j in range(rel.cols))
                           for i in range(rel.rows)])
        aug = IntMatrix.hstack(rel, IntMatrix.from_rows(combos, cols=rel.rows).transpose()
                               if combos else IntMatrix.zeros(rel.rows, 0))
        b = m.object(a.payload.ngens, aug)
        assert iso_invariants(a) == iso_invariants(b)


def test_vect_objects():
    v = vect(3, 5)
    assert iso_invariants(v).torsion_factors == (5, 5, 5)
    with pytest.raises(PreconditionError):
        vect_model(4)
    with pytest.raises(PreconditionError):
        # Z/2 + Z is not an F_2 space
        vect_model(2).object(2, IntMatrix.from_rows([[2], [0]]))


def test_well_definedness():
    m = fgab()
    z4, z2 = cyclic(4), cyclic(2)
    # quotient map Z/4 -> Z/2 is fine
    m.morphism(z4, z2, IntMatrix.from_rows([[1]]))
    # there is no nonzero hom Z/2 -> Z/4 sending the generator to a generator
    with pytest.raises(PreconditionError):
        m.morphism(z2, z4, IntMatrix.from_rows([[1]]))
    # multiplication by 2 is a well-defined hom Z/2 -> Z/4
    m.morphism(z2, z4, IntMatrix.from_rows([[2]]))


def test_morphism_equality_mod_relations():
    m = fgab()
    z, z2 = cyclic(0), cyclic(2)
    f = m.morphism(z, z2, IntMatrix.from_rows([[1]]))
    g = m.morphism(z, z2, IntMatrix.from_rows([[3]]))
    assert f.same_as(g)
    assert not f.same_as(m.zero_morphism(z, z2))


def test_composition_preserves_well_definedness():
    rng = random.Random(1)
    m = fgab()
    for _ in range(30):
        a = m.random_object(rng, B)
        b = m.random_object(rng, B)
        c = m.random_object(rng, B)
        f = m.random_morphism(rng, a, b)
        g = m.random_morphism(rng, b, c)
        h = g @ f
        # re-validate explicitly
        m.morphism(a, c, h.matrix)


def test_projectivity():
    assert is_projective(free(3))
    assert not is_projective(cyclic(4))
    assert is_projective(fgab_object(2, [[0], [0]]))
    # split structures: everything is projective
    ms = fgab_split()
    assert ms.is_projective(ms.object(1, IntMatrix.from_rows([[4]])))
    me = even_rank_split()
    assert me.is_projective(me.object(2))


def test_projectivity_lifting_oracle():
    # is_projective agrees with the lifting property against admissible epics.
    rng = random.Random(2)
    m = fgab()
    for _ in range(25):
        a = m.random_object(rng, B)
        e = m.random_admissible_epic_onto(rng, m.random_object(rng, B), B)
        g = m.random_morphism(rng, a, e.cod)
        lift = m.solve_right_factor(e, g)
        if is_projective(a):
            assert lift is not None
        if lift is not None:
            assert (e @ lift).same_as(g)
    # and cyclic(4) concretely fails a lift: Z ->> Z/4 against id: Z/4 -> Z/4
    z4 = cyclic(4)
    cover = projective_cover_epi(z4)
    assert m.solve_right_factor(cover, m.identity(z4)) is None


def test_projective_cover():
    z4 = cyclic(4)
    e = projective_cover_epi(z4)
    assert iso_invariants(e.dom).free_rank == 1
    assert e.model.is_admissible_epic(e)
    f2 = free(2)
    e2 = projective_cover_epi(f2)
    assert e2.model.is_iso(e2)
    a = fgab_object(2, [[0], [2]])
    e3 = projective_cover_epi(a)
    assert iso_invariants(e3.dom).free_rank == 2
    assert e3.model.is_admissible_epic(e3)


@pytest.mark.parametrize("model", [fgab(), fgab_split(), vect_model(3),
                                   free_exact(), free_split(), even_rank_split()])
def test_random_ses_is_short_exact(model):
    rng = random.Random(42)
    for _ in range(60):
        s = model.random_ses(rng, B)
        assert model.is_short_exact(s.i, s.p), (model.model_id, s)


@pytest.mark.parametrize("model", [fgab(), fgab_split(), free_exact(), even_rank_split()])
def test_random_admissible_has_analysis(model):
    rng = random.Random(43)
    for _ in range(40):
        f = model.random_admissible(rng, B)
        an = model.analyze(f)
        assert an is not None
        assert (an.image_monic @ an.coimage_epic).same_as(f)


def test_degenerate_bounds():
    rng = random.Random(44)
    m = fgab()
    small = GenBounds(max_gens=1, max_rel_entry=9, max_entry=9)
    for _ in range(20):
        a = m.random_object(rng, small)
        assert a.payload.ngens <= 1
    z6 = cyclic(6)
    zero_entries = m.random_morphism(random.Random(1), m.zero_object(), z6)
    assert zero_entries.is_zero()


def test_random_morphism_well_defined():
    rng = random.Random(45)
    m = fgab()
    for _ in range(40):
        a = m.random_object(rng, B)
        b = m.random_object(rng, B)
        f = m.random_morphism(rng, a, b)
        m.morphism(a, b, f.matrix)  # re-check well-definedness


def test_even_rank_split_validators():
    me = even_rank_split()
    with pytest.raises(PreconditionError):
        me.object(3)
    with pytest.raises(PreconditionError):
        free_exact().object(1, IntMatrix.from_rows([[2]]))


def test_split_exactness_agrees_with_ambient_free():
    # on free split models the witness-based exactness test coincides with
    # the ambient kernel-equals-image characterization
    rng = random.Random(50)
    fe = free_exact()
    fs = free_split()
    me = even_rank_split()
    for _ in range(25):
        s = fs.random_ses(rng, B)
        # witness-exact implies ambient-exact
        assert fe.is_short_exact(
            fe.morphism(fe.object(s.i.dom.payload.ngens),
                        fe.object(s.i.cod.payload.ngens), s.i.matrix),
            fe.morphism(fe.object(s.p.dom.payload.ngens),
                        fe.object(s.p.cod.payload.ngens), s.p.matrix))
        # ambient-exact free sequences are split in turn
        t = fe.random_ses(rng, B)
        assert fs.is_short_exact(
            fs.morphism(fs.object(t.i.dom.payload.ngens),
                        fs.object(t.i.cod.payload.ngens), t.i.matrix),
            fs.morphism(fs.object(t.p.dom.payload.ngens),
                        fs.object(t.p.cod.payload.ngens), t.p.matrix))
        # and with even ranks they land in the even-rank structure
        if all(x.payload.ngens % 2 == 0 for x in (t.sub, t.mid, t.quot)):
            assert me.is_short_exact(
                me.morphism(me.object(t.i.dom.payload.ngens),
                            me.object(t.i.cod.payload.ngens), t.i.matrix),
                me.morphism(me.object(t.p.dom.payload.ngens),
                            me.object(t.p.cod.payload.ngens), t.p.matrix))


def test_analysis_factorization_unique_up_to_iso():
    # two epic-monic factorizations of the same arrow are linked by a
    # unique isomorphism commuting with both triangles
    rng = random.Random(51)
    m = fgab()
    for _ in range(15):
        a = m.random_object(rng, B)
        b = m.random_object(rng, B)
        f = m.random_morphism(rng, a, b)
        an1 = m.analyze(f)
        u = m.random_automorphism(rng, a)
        an2 = m.analyze(f @ u)   # same image subobject, different coimage path
        comp = m.solve_right_factor(an2.image_monic, an1.image_monic)
        assert comp is not None and m.is_iso(comp)
        assert (an2.image_monic @ comp).same_as(an1.image_monic)
