import random

import pytest

from exactcat.intlinalg import IntMatrix
from exactcat.kernel import (
    GenBounds,
    NotAdmissible,
    analyze,
    biproduct,
    cokernel,
    is_admissible_epic,
    is_admissible_monic,
    is_short_exact,
    kernel,
    pullback_along_epic,
    pushout_along_monic,
)
from exactcat.models import (
    cyclic,
    even_rank_split,
    fgab,
    free,
    free_split,
    iso_invariants,
)

B = GenBounds()
M = fgab()


def mor(dom, cod, rows):
    return dom.model.morphism(dom, cod, IntMatrix.from_rows(rows, cols=dom.payload.ngens))


def test_split_inclusion_projection_is_short_exact():
    a, b = cyclic(6), free(1)
    bp = biproduct(a, b)
    assert is_short_exact(bp.inj1, bp.proj2)
    assert is_short_exact(bp.inj2, bp.proj1)


def test_identity_to_zero_is_short_exact():
    a = cyclic(4)
    z = M.zero_object()
    i = M.identity(a)
    p = M.zero_morphism(a, z)
    assert is_short_exact(i, p)
    assert is_short_exact(M.zero_morphism(z, a), M.identity(a))


def test_times_two_identity_not_short_exact():
    z = cyclic(0)
    two = mor(z, z, [[2]])
    one = M.identity(z)
    # the cokernel of x2 is Z/2, not Z, so (x2, id) is not a pair
    assert not is_short_exact(two, one)


def test_admissibility_basics():
    z = cyclic(0)
    two = mor(z, z, [[2]])
    assert is_admissible_monic(M.identity(z))
    assert is_admissible_epic(M.identity(z))
    assert is_admissible_monic(two)
    assert not is_admissible_epic(two)


def test_even_rank_split_idempotent_neither():
    me = even_rank_split()
    z2 = me.object(2)
    e = me.morphism(z2, z2, IntMatrix.diagonal([1, 0]))
    assert not me.is_admissible_monic(e)
    assert not me.is_admissible_epic(e)
    assert me.analyze(e) is None
    assert me.kernel(e) is None
    assert me.cokernel(e) is None


def test_kernel_cokernel_abelian():
    z = cyclic(0)
    two = mor(z, z, [[2]])
    k = kernel(two)
    assert iso_invariants(k.dom).free_rank == 0
    assert iso_invariants(k.dom).torsion_factors == ()
    c = cokernel(two)
    assert iso_invariants(c.cod).torsion_factors == (2,)
    assert M.is_admissible_epic(c)


def test_analyze_times_two_abelian():
    z = cyclic(0)
    two = mor(z, z, [[2]])
    an = analyze(two)
    assert an is not None
    # kernel 0, coimage Z, image 2Z (free rank 1), cokernel Z/2
    assert iso_invariants(an.kernel_object).free_rank == 0
    assert iso_invariants(an.image_object).free_rank == 1
    assert iso_invariants(an.cokernel_object).torsion_factors == (2,)
    assert (an.image_monic @ an.coimage_epic).same_as(two)
    assert is_short_exact(an.kernel_arrow, an.coimage_epic)
    assert is_short_exact(an.image_monic, an.cokernel_arrow)


def test_analyze_zero_morphism():
    a, b = cyclic(4), cyclic(6)
    z = M.zero_morphism(a, b)
    an = analyze(z)
    assert an is not None
    assert M.is_iso(an.kernel_arrow)
    assert iso_invariants(an.image_object).torsion_factors == ()
    assert M.is_iso(an.cokernel_arrow)


def test_analyze_times_two_not_admissible_in_free_split():
    mf = free_split()
    z = mf.object(1)
    two = mf.morphism(z, z, IntMatrix.from_rows([[2]]))
    assert mf.analyze(two) is None
    # exhaustive rank argument: a factorization Z ->> W >-> Z has W of rank
    # 0 or 1; rank 0 composes to 0, rank 1 forces both arrows invertible,
    # so the composite is a unit, never multiplication by 2.
    for w_rank, units in [(0, [0]), (1, [1, -1])]:
        for e in units:
            for m_ in units:
                assert e * m_ != 2


def test_pushout_times2_times3():
    # pushout of x2: Z >-> Z along x3: Z -> Z is Z with f' = x3, i' = x2
    z = cyclic(0)
    two = mor(z, z, [[2]])
    three = mor(z, z, [[3]])
    po = pushout_along_monic(two, three)
    assert iso_invariants(po.ob) == iso_invariants(z)
    assert (po.map @ two).same_as(po.monic @ three)
    # Smith-canonical cokernel of the column (2, -3): the sequence
    # Z >-> Z^2 ->> Z is short exact (checked by hand below)
    col = po.column
    assert is_short_exact(col, po.cokernel_arrow)
    # brute-force kernel check of the cokernel arrow (q kills exactly Z(2,-3))
    q = po.cokernel_arrow.matrix
    assert q.rows == 1
    a, b = q.entries[0]
    # q @ (2, -3) = 0 and gcd(a, b) = 1
    assert 2 * a - 3 * b == 0
    import math
    assert math.gcd(a, b) == 1


def test_pushout_along_identity():
    rng = random.Random(1)
    for _ in range(10):
        s = M.random_ses(rng, B)
        i = s.i
        po = pushout_along_monic(i, M.identity(i.dom))
        assert iso_invariants(po.ob) == iso_invariants(i.cod)
        assert M.is_iso(po.map)


def test_pushout_into_zero():
    # i = (1 0)^T : Z >-> Z^2, f = 0 : Z -> 0 gives B' = Z and f' = (0 1)
    z, z2 = free(1), free(2)
    i = mor(z, z2, [[1], [0]])
    f = M.zero_morphism(z, M.zero_object())
    po = pushout_along_monic(i, f)
    assert iso_invariants(po.ob).free_rank == 1
    assert iso_invariants(po.ob).torsion_factors == ()
    # f' kills the first generator
    assert (po.map @ i).is_zero()


def test_pushout_requires_admissible_monic():
    z = cyclic(0)
    notmono = mor(z, z, [[0]])
    with pytest.raises(NotAdmissible):
        pushout_along_monic(notmono, M.identity(z))


def test_pullback_quotient_along_zero():
    # p: Z ->> Z/2, g: 0 -> Z/2 pulls back to the kernel 2Z
    z, z2 = cyclic(0), cyclic(2)
    p = mor(z, z2, [[1]])
    g = M.zero_morphism(M.zero_object(), z2)
    pb = pullback_along_epic(p, g)
    assert iso_invariants(pb.ob).free_rank == 1
    # the map into Z is multiplication by 2 up to sign
    assert pb.map.matrix.entries[0][0] in (2, -2)


def test_pullback_along_identity():
    rng = random.Random(2)
    for _ in range(10):
        s = M.random_ses(rng, B)
        pb = pullback_along_epic(s.p, M.identity(s.p.cod))
        assert iso_invariants(pb.ob) == iso_invariants(s.p.dom)
        assert M.is_iso(pb.map)


def test_pullback_proj_along_times3():
    # p = (0 1): Z^2 ->> Z, g = x3: Z -> Z gives A' of rank 2
    z2, z = free(2), free(1)
    p = mor(z2, z, [[0, 1]])
    g = mor(z, z, [[3]])
    pb = pullback_along_epic(p, g)
    assert iso_invariants(pb.ob).free_rank == 2
    assert (p @ pb.map).same_as(g @ pb.epic)
    # universal property against sampled cones
    rng = random.Random(3)
    for _ in range(10):
        x = M.random_object(rng, B)
        w0 = M.random_morphism(rng, x, pb.ob)
        u = pb.map @ w0
        v = pb.epic @ w0
        # solve for w with map w = u and epic w = v; must recover w0
        sysu = M.solve_right_factor(pb.kernel_arrow,
                                    (pb.sum.inj1 @ u) + (pb.sum.inj2 @ v))
        assert sysu is not None
        assert sysu.same_as(w0)


def test_biproduct_identities_and_examples():
    a, b = cyclic(2), cyclic(3)
    bp = biproduct(a, b)
    one = M.identity(bp.ob)
    assert (bp.proj1 @ bp.inj1).same_as(M.identity(a))
    assert (bp.proj2 @ bp.inj2).same_as(M.identity(b))
    assert (bp.proj1 @ bp.inj2).is_zero()
    assert ((bp.inj1 @ bp.proj1) + (bp.inj2 @ bp.proj2)).same_as(one)
    assert iso_invariants(bp.ob).torsion_factors == (6,)

    z = M.zero_object()
    bp0 = biproduct(z, b)
    assert iso_invariants(bp0.ob) == iso_invariants(b)

    zf = free(1)
    bp1 = biproduct(zf, a)
    inv = iso_invariants(bp1.ob)
    assert inv.free_rank == 1 and inv.torsion_factors == (2,)


def test_pushout_bicartesian_prop():
    # for computed pushouts: the square commutes, the two-term sequence is
    # short exact, and the square has the pullback property against cones
    rng = random.Random(4)
    for _ in range(15):
        s = M.random_ses(rng, B)
        i = s.i
        f = M.random_morphism(rng, i.dom, M.random_object(rng, B))
        po = pushout_along_monic(i, f)
        assert (po.map @ i).same_as(po.monic @ f)
        assert is_short_exact(po.column, po.cokernel_arrow)
        # pullback property of the square: cones (u: X -> B, v: X -> A')
        # with f' u = i' v factor uniquely through A
        x = M.random_object(rng, B)
        w0 = M.random_morphism(rng, x, i.dom)
        u, v = i @ w0, f @ w0
        col = po.column
        w = M.solve_right_factor(col, (po.sum.inj1 @ u) - (po.sum.inj2 @ v))
        assert w is not None and w.same_as(w0)
        # uniqueness: the column arrow is monic
        assert M._is_injective(col)


def test_analysis_in_fgab_always_exists():
    rng = random.Random(5)
    for _ in range(25):
        a = M.random_object(rng, B)
        b = M.random_object(rng, B)
        f = M.random_morphism(rng, a, b)
        an = analyze(f)
        assert an is not None
        assert (an.image_monic @ an.coimage_epic).same_as(f)
        assert is_short_exact(an.kernel_arrow, an.coimage_epic)
        assert is_short_exact(an.image_monic, an.cokernel_arrow)


def test_e1_closure_composition():
    rng = random.Random(6)
    for model in (fgab(), even_rank_split()):
        for _ in range(12):
            a = model.random_object(rng, B)
            i1 = model.random_admissible_monic_from(rng, a, B)
            i2 = model.random_admissible_monic_from(rng, i1.cod, B)
            assert model.is_admissible_monic(i2 @ i1)
            e1 = model.random_admissible_epic_onto(rng, a, B)
            e2 = model.random_admissible_epic_onto(rng, e1.dom, B)
            assert model.is_admissible_epic(e1 @ e2)


def test_pushout_pullback_error_paths():
    import pytest
    from exactcat.kernel import ComposabilityError
    z = cyclic(0)
    z4 = cyclic(4)
    two = mor(z, z, [[2]])
    f_on_other = M.identity(z4)
    with pytest.raises(ComposabilityError):
        pushout_along_monic(two, f_on_other)
    with pytest.raises(NotAdmissible):
        pullback_along_epic(two, M.identity(z))
