"""Acceptance suite: every criterion at its stated size and tolerance.

Each test prints one `[PASS] ...` line (visible with `pytest -s` or in the
captured output); a failed assertion marks the criterion red.
"""

import json
import math
import random
import time

from exactcat.cli import cmd_ext, cmd_tor
from exactcat.completion import complete
from exactcat.complexes import (
    chain_complex,
    find_null_homotopy,
    identity_chain_map,
    is_acyclic,
    mapping_cone,
    object_as_complex,
    periodic_idempotent_complex,
    periodic_is_acyclic,
    periodic_null_homotopy,
)
from exactcat.diagrams import check_snake_naturality, random_ses_morphism, snake, ses_morphism
from exactcat.intlinalg import IntMatrix
from exactcat.kernel import GenBounds, MorphismSystem, ShortExactSequence
from exactcat.laws import (
    LawConfig,
    check_axioms,
    check_cancellation,
    check_five,
    check_heller,
    check_obscure,
    check_pullback_monic,
    check_summands,
)
from exactcat.models import even_rank_split, fgab, iso_invariants
from exactcat.resolutions import (
    FunctorSpec,
    compare_lift,
    derived,
    horseshoe,
    lift_homotopy,
    projective_replacement,
    projective_resolution,
    random_resolution,
)

M = fgab()
BOUNDS = GenBounds(max_gens=4, max_rel_entry=9, max_entry=9)


def announce(name, detail=""):
    print(f"[PASS] {name}" + (f": {detail}" if detail else ""))


def invs(obj):
    inv = iso_invariants(obj)
    return (inv.free_rank, inv.torsion_factors)


def test_criterion_axiom_suite():
    """Six law suites, 500 seeded iterations each on FGAb, zero failures,
    under 60 seconds of wall time in total."""
    cfg = LawConfig(seed=0, iterations=500, bounds=BOUNDS)
    checks = [
        ("axioms", check_axioms),
        ("obscure", check_obscure),
        ("pullback_monic", check_pullback_monic),
        ("summands", check_summands),
        ("five", check_five),
        ("cancellation", check_cancellation),
    ]
    t0 = time.perf_counter()
    reports = [(name, fn(M, cfg)) for name, fn in checks]
    elapsed = time.perf_counter() - t0
    for name, rep in reports:
        assert rep.passed, f"{name} failed: {rep.to_json()[:1500]}"
    assert elapsed < 60.0, f"axiom suite took {elapsed:.1f}s (budget 60s)"
    announce("axiom suite",
             f"6 suites x 500 iterations in {elapsed:.1f}s, zero failures")


def brute_tor1_order(m, n):
    """Order of the kernel of multiplication by m on the explicit group
    {0..n-1}; kernels of maps of finite cyclic groups are cyclic."""
    return sum(1 for x in range(n) if (m * x) % n == 0)


def brute_ext1_order(m, n):
    """Number of cosets of the image of multiplication by m on {0..n-1}."""
    image = {(m * x) % n for x in range(n)}
    return n // len(image)


def test_criterion_gcd_oracle():
    """cmd_ext/cmd_tor agree with the finite-cyclic brute-force oracle on
    all 121 pairs 2 <= m, n <= 12 (exact invariant-factor match)."""
    cases = 0
    for m in range(2, 13):
        for n in range(2, 13):
            expected_order = math.gcd(m, n)
            assert brute_tor1_order(m, n) == expected_order
            assert brute_ext1_order(m, n) == expected_order
            expect = [] if expected_order == 1 else [expected_order]
            ext_rep, code_e = cmd_ext(m, n, 1)
            tor_rep, code_t = cmd_tor(m, n, 1)
            assert code_e == 0 and code_t == 0
            assert ext_rep["invariant_factors"] == \
                {"free_rank": 0, "torsion": expect}, (m, n)
            assert tor_rep["invariant_factors"] == \
                {"free_rank": 0, "torsion": expect}, (m, n)
            cases += 1
    assert cases == 121
    announce("gcd oracle", "121 Ext/Tor values match the brute-force oracle")


def _extend_ses_morphism(rng, m):
    from exactcat.intlinalg import column_hnf
    model = m.source.i.model
    src = m.target
    x = model.random_object(rng, BOUNDS)
    b = model.random_morphism(rng, src.mid, x)
    carried = b.matrix @ src.i.matrix
    extra = model._rand_matrix(rng, x.payload.ngens, 2, 2)
    sub = column_hnf(IntMatrix.hstack(carried, extra, x.payload.relations))
    j = model.subobject(x, sub)
    p2 = model.cokernel(j)
    tgt = ShortExactSequence(j, p2)
    a = model.solve_right_factor(j, b @ src.i)
    c = model.solve_left_factor(src.p, p2 @ b)
    return ses_morphism(src, tgt, a, b, c, check=False)


def test_criterion_snake():
    """200 generated ses-morphisms produce exact six-term sequences (the
    four interior joints are verified inside snake()); 100 generated
    morphisms of snake inputs satisfy delta-naturality.  Zero failures."""
    rng = random.Random(100)
    for _ in range(200):
        m = random_ses_morphism(rng, M, BOUNDS)
        snake(m)   # raises on any failed exactness joint
    rng = random.Random(101)
    for _ in range(100):
        m = random_ses_morphism(rng, M, BOUNDS)
        n = _extend_ses_morphism(rng, m)
        assert check_snake_naturality(m, n)
    announce("snake lemma", "200 six-term sequences, 100 naturality squares")


def test_criterion_comparison():
    """200 generated (f, P, Q): the lift exists and two independently
    computed lifts are homotopic.  Zero failures."""
    rng = random.Random(200)
    for _ in range(200):
        a = M.random_object(rng, BOUNDS)
        b = M.random_object(rng, BOUNDS)
        f = M.random_morphism(rng, a, b)
        p = random_resolution(a, rng)
        q = random_resolution(b, rng)
        l1 = compare_lift(f, p, q, rng=rng)
        l2 = compare_lift(f, p, q, rng=rng)
        lift_homotopy(l1, l2)   # raises when no homotopy exists
    announce("comparison theorem", "200 lifts with homotopy uniqueness")


def test_criterion_horseshoe():
    """100 generated horseshoes fill in to verified resolutions with
    degreewise split columns.  Zero failures."""
    rng = random.Random(300)
    for _ in range(100):
        s = M.random_ses(rng, BOUNDS)
        hs = horseshoe(s, projective_resolution(s.sub),
                       projective_resolution(s.quot))
        assert is_acyclic(hs.middle.augmented_complex()) is not None
        for k, col in enumerate(hs.columns):
            assert M.is_short_exact(col.i, col.p)
            assert (col.p @ hs.sections[k]).same_as(M.identity(col.p.cod))
    announce("horseshoe", "100 filled horseshoes with split columns")


def _random_bounded_complex(rng, max_len=4):
    length = rng.randrange(1, max_len + 1)
    comps = [M.random_object(rng, GenBounds(max_gens=3)) for _ in range(length)]
    diffs = []
    for k in range(length - 1):
        target = comps[k + 1]
        if not diffs:
            diffs.append(M.random_morphism(rng, comps[k], target))
            continue
        prev = diffs[-1]
        sys = MorphismSystem(M)
        sys.unknown_morphism("g", prev.cod, target)
        sys.equation([("g", IntMatrix.identity(target.payload.ngens),
                       prev.matrix)],
                     M.zero_morphism(prev.dom, target).matrix, cod=target)
        sol = sys.solve(rng=rng, amplitude=2)
        diffs.append(sol["g"] if sol else M.zero_morphism(comps[k], target))
    return chain_complex(M, 0, comps, diffs)


def test_criterion_projective_replacement():
    """100 generated right-bounded complexes (window length <= 4) give a
    comparison map whose cone carries an acyclicity certificate."""
    rng = random.Random(400)
    for _ in range(100):
        x = _random_bounded_complex(rng)
        rep = projective_replacement(x)
        assert rep.certificate is not None
        assert is_acyclic(mapping_cone(rep.map)) is not None
    announce("projective replacement", "100 certified acyclic cones")


def _null_homotopic_complex(rng):
    pieces = []
    for _ in range(2):
        a = object_as_complex(M.random_object(rng, GenBounds(max_gens=2)),
                              degree=rng.randrange(0, 2))
        pieces.append(mapping_cone(identity_chain_map(a)))
    lo = min(c.lo for c in pieces)
    hi = max(c.hi for c in pieces)
    comps, diffs, bps = [], [], []
    for n in range(lo, hi + 1):
        bp = M.biproduct(pieces[0].component(n), pieces[1].component(n))
        bps.append(bp)
        comps.append(bp.ob)
    for n in range(lo, hi):
        b0, b1 = bps[n - lo], bps[n + 1 - lo]
        diffs.append((b1.inj1 @ pieces[0].differential(n) @ b0.proj1) +
                     (b1.inj2 @ pieces[1].differential(n) @ b0.proj2))
    return chain_complex(M, lo, comps, diffs)


def test_criterion_dichotomy():
    """Null-homotopic vs acyclic: 100 generated null-homotopic complexes
    over FGAb are certified acyclic; the rank-one idempotent periodic
    complex (period 6) over the even-rank split model is certified
    null-homotopic and NOT acyclic; after completion it is acyclic."""
    rng = random.Random(500)
    for _ in range(100):
        x = _null_homotopic_complex(rng)
        assert find_null_homotopy(identity_chain_map(x)) is not None
        assert is_acyclic(x) is not None
    base = even_rank_split()
    host = base.object(2)
    p = base.morphism(host, host, IntMatrix.diagonal([1, 0]))
    periodic = periodic_idempotent_complex(base, host, p, 6)
    assert periodic_null_homotopy(periodic) is not None
    assert periodic_is_acyclic(periodic) is None
    comp = complete(base)
    chost = comp.embed(host)
    cp = comp.morphism(chost, chost, p.matrix)
    cperiodic = periodic_idempotent_complex(comp, chost, cp, 6)
    assert periodic_null_homotopy(cperiodic) is not None
    assert periodic_is_acyclic(cperiodic) is not None
    announce("null-homotopic/acyclic dichotomy",
             "100 complexes over FGAb; periodic witness flips after completion")


def test_criterion_heller():
    """All four Heller axioms pass 300 iterations on FGAb and on the
    completion of the even-rank split model."""
    cfg = LawConfig(seed=600, iterations=300, bounds=BOUNDS)
    for model in (M, complete(even_rank_split())):
        rep = check_heller(model, cfg)
        assert rep.passed, rep.to_json()[:1500]
        assert len(rep.sub_reports) == 4
        for sub in rep.sub_reports:
            assert sub.instances_run >= 300
    announce("Heller axioms", "4 axioms x 300 iterations x 2 models")


def test_criterion_resolution_independence():
    """50 objects: two independently seeded resolutions give identical
    invariants of the degree-0 and degree-1 derived values of - (x) Z/6."""
    from exactcat.models import cyclic
    functor = FunctorSpec("tensor", cyclic(6))
    rng = random.Random(700)
    for _ in range(50):
        a = M.random_object(rng, BOUNDS)
        r1 = random_resolution(a, random.Random(rng.randrange(10 ** 9)))
        r2 = random_resolution(a, random.Random(rng.randrange(10 ** 9)))
        d1 = derived(functor, a, max_degree=1, res=r1)
        d2 = derived(functor, a, max_degree=1, res=r2)
        assert invs(d1.values[0]) == invs(d2.values[0]), invs(a)
        assert invs(d1.values[1]) == invs(d2.values[1]), invs(a)
    announce("resolution independence", "50 objects, L0/L1 invariants agree")


def test_criterion_determinism():
    """Identical seed and configuration give byte-identical JSON reports."""
    cfg = LawConfig(seed=800, iterations=25, bounds=BOUNDS)
    for fn, model in ((check_axioms, M), (check_heller, M),
                      (check_summands, even_rank_split())):
        r1, r2 = fn(model, cfg), fn(model, cfg)
        assert r1.to_json() == r2.to_json()
        json.loads(r1.to_json())   # well-formed
    announce("determinism", "byte-identical reports across repeated runs")
