"""Randomized single-case checkers shared by the unit and acceptance suites.

Each ``case_*`` function draws one random instance from the supplied RNG
and asserts the law under test with exact equality.  The acceptance suite
runs them at the full prescribed counts; unit tests run smaller smoke
counts.
"""

from __future__ import annotations

import random

from protex import (
    MAG_ONE,
    MAG_ZERO,
    Magnitude,
    ShortExactSequence,
    WeightedModuleCategory,
    WeightedSpace,
    basis_vector,
    biproduct,
    bounded_map,
    chain_colimit,
    classify_morphism,
    cokernel,
    compose,
    coproduct_product_comparison,
    free_cover,
    identity_between,
    identity_map,
    kernel,
    norm,
    operator_norm,
    orthogonalize,
    pullback,
    pushout,
    quotient_norm,
    rescale,
    validate_ses,
    vector,
)
from protex.constructions import (
    factor_through_cokernel,
    factor_through_kernel,
    inverse_map,
    is_iso_nonexpanding,
)
from protex.randgen import (
    random_bounded_map,
    random_isometric_auto,
    random_magnitude,
    random_nonexpanding_map,
    random_space,
    random_strict_epi,
    random_strict_mono,
    random_vector,
)
from protex.scalars import PAdicRationals
from protex.spaces import Vector, add_vectors, scale_vector, zero_vector


def random_field(rng: random.Random) -> PAdicRationals:
    return PAdicRationals(rng.choice([2, 3]))


def _category(field) -> WeightedModuleCategory:
    return WeightedModuleCategory(field)


# -- stability theorems ------------------------------------------------------


def case_pullback_of_strict_epi(rng: random.Random) -> None:
    field = random_field(rng)
    f = random_strict_epi(field, rng, max_dim=3, allow_null=True)
    L = random_space(field, rng, max_dim=3, allow_null=True)
    g = random_nonexpanding_map(L, f.codomain, rng)
    square = pullback(f, g)
    assert classify_morphism(square.p2).strict_epi


def case_pushout_of_strict_mono(rng: random.Random) -> None:
    field = random_field(rng)
    i = random_strict_mono(field, rng, max_dim=3, allow_null=True)
    L = random_space(field, rng, max_dim=3, allow_null=True)
    g = random_nonexpanding_map(i.domain, L, rng)
    square = pushout(i, g)
    assert classify_morphism(square.j2).strict_mono


def case_strict_epi_composition(rng: random.Random) -> None:
    field = random_field(rng)
    f = random_strict_epi(field, rng, max_dim=3, allow_null=True)
    N = f.codomain
    gens = [random_vector(N, rng) for _ in range(rng.randint(0, N.dim))]
    _, g = cokernel(orthogonalize(N, gens).inclusion())
    gf = compose(g, f)
    assert classify_morphism(gf).strict_epi


def case_strict_mono_composition(rng: random.Random) -> None:
    field = random_field(rng)
    i = random_strict_mono(field, rng, max_dim=3, allow_null=True)
    M = i.codomain
    W = random_space(field, rng, max_dim=2, allow_null=True)
    bp = biproduct([M, W])
    j = compose(random_isometric_auto(bp.space, rng), bp.injections[0])
    assert classify_morphism(j).strict_mono
    assert classify_morphism(compose(j, i)).strict_mono


def case_epi_cancellation(rng: random.Random) -> None:
    # g o f strict epi forces g strict epi, with f not an epi in general
    field = random_field(rng)
    s = random_strict_epi(field, rng, max_dim=3, allow_null=True)
    X, Z = s.domain, s.codomain
    W = random_space(field, rng, max_dim=2, allow_null=True)
    bp = biproduct([X, W])
    f = bp.injections[0]
    t = random_nonexpanding_map(W, Z, rng)
    rows = [list(a) + list(b) for a, b in zip(s.matrix, t.matrix)]
    g = bounded_map(bp.space, Z, rows)
    assert compose(g, f) == s
    assert classify_morphism(g).strict_epi


def case_mono_cancellation(rng: random.Random) -> None:
    # g o f strict mono forces f strict mono
    field = random_field(rng)
    m = random_strict_mono(field, rng, max_dim=3, allow_null=True)
    X, Y = m.domain, m.codomain
    W = random_space(field, rng, max_dim=2, allow_null=True)
    bp = biproduct([Y, W])
    t = random_nonexpanding_map(X, W, rng)
    rows = [list(r) for r in m.matrix] + [list(r) for r in t.matrix]
    f = bounded_map(X, bp.space, rows)
    g = bp.projections[0]
    assert compose(g, f) == m
    assert classify_morphism(f).strict_mono


# -- kernel and cokernel comparisons ----------------------------------------


def case_pullback_kernel_comparison(rng: random.Random) -> None:
    field = random_field(rng)
    Z = random_space(field, rng, max_dim=3, allow_null=True)
    X = random_space(field, rng, max_dim=3, allow_null=True)
    Y = random_space(field, rng, max_dim=3, allow_null=True)
    f = random_nonexpanding_map(X, Z, rng)
    g = random_nonexpanding_map(Y, Z, rng)
    square = pullback(f, g)
    _, k2 = kernel(square.p2)  # kernel of the base change of f
    comp = compose(square.p1, k2)
    _, kf = kernel(f)
    v = factor_through_kernel(kf, comp)
    assert v is not None and is_iso_nonexpanding(v)


def case_bicartesian_mixed_square(rng: random.Random) -> None:
    field = random_field(rng)
    B = random_space(field, rng, max_dim=3, allow_null=True)
    gens = [random_vector(B, rng) for _ in range(rng.randint(0, B.dim))]
    i = orthogonalize(B, gens).inclusion()  # admissible mono A -> B
    W = random_space(field, rng, max_dim=2, allow_null=True)
    bp = biproduct([B, W])
    f = compose(bp.projections[0], random_isometric_auto(bp.space, rng))
    assert classify_morphism(f).strict_epi
    _, c = cokernel(i)
    e = compose(c, f)
    _, i_prime = kernel(e)
    f_prime = factor_through_kernel(i, compose(f, i_prime))
    assert f_prime is not None
    # the square is a pullback ...
    canonical = pullback(i, f)
    u = canonical.mediate(f_prime, i_prime)
    assert u is not None and is_iso_nonexpanding(u)
    # ... and also a pushout
    po = pushout(f_prime, i_prime)
    m = po.mediate(i, f)
    assert m is not None and is_iso_nonexpanding(m)
    assert classify_morphism(i_prime).strict_mono
    assert classify_morphism(f_prime).strict_epi


def case_cokernel_of_composite(rng: random.Random) -> None:
    field = random_field(rng)
    i = random_strict_mono(field, rng, max_dim=3, allow_null=True)
    M = i.codomain
    W = random_space(field, rng, max_dim=2, allow_null=True)
    bp = biproduct([M, W])
    j = compose(random_isometric_auto(bp.space, rng), bp.injections[0])
    f, g = i, j
    _, qf = cokernel(f)
    _, qgf = cokernel(compose(g, f))
    _, qg = cokernel(g)
    a = factor_through_cokernel(qf, compose(qgf, g))
    b = factor_through_cokernel(qgf, qg)
    assert a is not None and b is not None
    verdict = validate_ses(_category(field), ShortExactSequence(a, b))
    assert verdict.ok, verdict.failing_clause


def case_strict_mono_epi_is_iso(rng: random.Random) -> None:
    field = random_field(rng)
    sp = random_space(field, rng, max_dim=4, allow_null=True)
    f = random_isometric_auto(sp, rng)
    record = classify_morphism(f)
    assert record.strict_mono and record.epi
    assert record.iso
    # opportunistic direction on arbitrary maps
    g = random_nonexpanding_map(
        random_space(field, rng, max_dim=3, allow_null=True),
        random_space(field, rng, max_dim=3, allow_null=True),
        rng,
    )
    rec = classify_morphism(g)
    if rec.strict_mono and rec.epi:
        assert rec.iso


def case_strict_epi_zero_kernel_is_iso(rng: random.Random) -> None:
    field = random_field(rng)
    e = random_strict_epi(field, rng, max_dim=3, allow_null=True)
    K, _ = kernel(e)
    if K.dim == 0:
        assert classify_morphism(e).iso
    iso = random_isometric_auto(random_space(field, rng, max_dim=3, allow_null=True), rng)
    K2, _ = kernel(iso)
    assert K2.dim == 0
    assert classify_morphism(iso).strict_epi and classify_morphism(iso).iso


def case_image_replacement_sequence(rng: random.Random) -> None:
    # bounded, not necessarily non-expanding kernel-cokernel pairs are
    # isomorphic to the image inclusion followed by the quotient projection
    field = random_field(rng)
    Y = random_space(field, rng, max_dim=3, allow_null=True)
    gens = [random_vector(Y, rng) for _ in range(rng.randint(0, Y.dim))]
    incl = orthogonalize(Y, gens).inclusion()
    X = rescale(incl.domain, random_magnitude(rng)) if incl.domain.dim else incl.domain
    f = bounded_map(X, Y, incl.rows())
    Q, q_f = cokernel(f)
    eps = random_magnitude(rng)
    g = compose(identity_between(Q, rescale(Q, eps)), q_f) if Q.dim else q_f

    a = factor_through_kernel(incl, f)  # X -> Im(f)
    assert a is not None and inverse_map(a) is not None
    c = factor_through_cokernel(g, q_f)  # cod(g) -> Y/Im(f)
    assert c is not None and inverse_map(c) is not None
    assert compose(incl, a) == f
    assert compose(c, g) == q_f
    assert operator_norm(identity_map(Y)) <= MAG_ONE
    verdict = validate_ses(_category(field), ShortExactSequence(incl, q_f))
    assert verdict.ok, verdict.failing_clause


# -- norms, covers, colimits -------------------------------------------------


def case_rescaling_adjunction(rng: random.Random) -> None:
    field = random_field(rng)
    M = random_space(field, rng, max_dim=3)
    N = random_space(field, rng, max_dim=3)
    delta = random_magnitude(rng)
    g = random_bounded_map(M, N, rng)
    rescaled = bounded_map(rescale(M, delta), N, g.rows())
    assert (operator_norm(g) <= delta) == (operator_norm(rescaled) <= MAG_ONE)


def case_free_cover(rng: random.Random) -> None:
    field = random_field(rng)
    M = random_space(field, rng, max_dim=3, allow_null=True)
    spanning = [basis_vector(M, i) for i in range(M.dim)]
    spanning += [random_vector(M, rng) for _ in range(rng.randint(0, 2))]
    rng.shuffle(spanning)
    cover = free_cover(M, spanning)
    assert operator_norm(cover) <= MAG_ONE
    assert classify_morphism(cover).strict_epi


def case_chain_colimit_norms(rng: random.Random) -> None:
    field = random_field(rng)
    spaces = [random_space(field, rng, max_dim=3, allow_null=True, min_dim=1)]
    maps = []
    for _ in range(rng.randint(1, 3)):
        nxt = random_space(field, rng, max_dim=3, allow_null=True)
        maps.append(random_nonexpanding_map(spaces[-1], nxt, rng))
        spaces.append(nxt)
    col = chain_colimit(maps)
    for i, stage in enumerate(col.stages):
        for j in range(stage.dim):
            v = basis_vector(stage, j)
            assert col.colimit_norm(i, v) == norm(col.cocone[i].apply(v))
        v = random_vector(stage, rng)
        assert col.colimit_norm(i, v) == norm(col.cocone[i].apply(v))


def case_ortho_certificate_sampled(rng: random.Random, samples: int = 25) -> None:
    field = random_field(rng)
    sp = random_space(field, rng, max_dim=4, allow_null=True)
    gens = [random_vector(sp, rng) for _ in range(rng.randint(0, sp.dim + 1))]
    ob = orthogonalize(sp, gens)
    rows = ob.vectors + ob.null_vectors
    if not rows:
        return
    for _ in range(samples):
        coeffs = [field.random_element(rng) for _ in rows]
        combo = zero_vector(sp)
        expected = MAG_ZERO
        for a, w in zip(coeffs, rows):
            combo = add_vectors(combo, scale_vector(a, w))
            term = field.abs_value(a) * norm(w)
            if term > expected:
                expected = term
        assert norm(combo) == expected


def case_quotient_order_reversal(rng: random.Random) -> None:
    field = random_field(rng)
    sp = random_space(field, rng, max_dim=3, allow_null=True)
    gens = [random_vector(sp, rng) for _ in range(rng.randint(0, 3))]
    m = random_vector(sp, rng)
    a = quotient_norm(orthogonalize(sp, gens), m)
    b = quotient_norm(orthogonalize(sp, list(reversed(gens))), m)
    assert a == b


def case_biproduct_comparison(rng: random.Random) -> None:
    field = random_field(rng)
    parts = [
        random_space(field, rng, max_dim=2, allow_null=True)
        for _ in range(rng.randint(1, 3))
    ]
    bp = biproduct(parts)
    comparison = coproduct_product_comparison(bp)
    assert comparison == identity_map(bp.space)
    assert classify_morphism(comparison).iso
