"""Acceptance criteria, one test per criterion, exact equality throughout.

Each test prints a single ``ACCEPTANCE <n> ... PASS/FAIL`` line (visible
with ``pytest -s``); failures also fail the test itself.
"""

import itertools
import random
import time
import zlib

import pytest

import proptools
from protex import (
    MAG_ONE,
    MAG_ZERO,
    Magnitude,
    FinPointedSet,
    FinWeightedVec,
    GeneratingSet,
    PrimeField,
    WeightedSpace,
    audit_axioms,
    audit_obscure,
    basis_vector,
    biproduct,
    bounded_map,
    classify_morphism,
    classify_strictness,
    coproduct_product_comparison,
    counterexample_suite,
    free_cover,
    identity_map,
    norm,
    operator_norm,
    orthogonalize,
    quotient_norm,
    special_preenvelope,
    vector,
)
from protex.category import admissible_monos, is_injective_object
from protex.pointed_sets import is_strict_epi_map, is_strict_mono_map
from protex.randgen import random_space, random_vector
from protex.scalars import PAdicRationals
from protex.spaces import Vector, add_vectors, scale_vector, zero_vector

F2 = PrimeField(2)
E0, E1, E2 = MAG_ONE, Magnitude.of(1), Magnitude.of(2)
FULL_WEIGHTS = (E0, E1, E2)


def report(number: int, name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number}: {name} ... {status}{suffix}")
    assert ok, f"criterion {number} failed: {name} {suffix}"


def run_cases(case_fn, count: int, seed: int) -> int:
    rng = random.Random(seed)
    violations = 0
    for _ in range(count):
        try:
            case_fn(rng)
        except AssertionError:
            violations += 1
    return violations


def test_criterion_1_pointed_strictness_agreement():
    start = time.time()
    C = FinPointedSet(max_size=4)
    scanned = 0
    mismatches = 0
    for X in C.objects():
        for Y in C.objects():
            for f in C.morphisms(X, Y):
                scanned += 1
                generic = classify_strictness(C, f)
                if generic.strict_mono != is_strict_mono_map(f):
                    mismatches += 1
                elif generic.strict_epi != is_strict_epi_map(f):
                    mismatches += 1
    elapsed = time.time() - start
    report(
        1,
        "pointed-set strictness closed form vs kernel-cokernel",
        mismatches == 0 and elapsed < 60,
        f"{scanned} maps, {mismatches} mismatches, {elapsed:.1f}s",
    )


def test_criterion_2_counterexamples_replay():
    rep = counterexample_suite()
    verdicts = {e.axiom: e.verdict for e in rep.entries}
    ok = (
        verdicts.get("pullback_projection_not_strict") == "pass"
        and verdicts.get("right_obscure_failure") == "pass"
        and verdicts.get("left_obscure_holds") == "pass"
    )
    report(2, "paper counterexamples replay with asserted verdicts", ok, str(verdicts))


def test_criterion_3_exhaustive_audits():
    start = time.time()
    C = FinWeightedVec(F2, FULL_WEIGHTS, max_dim=2)
    axioms = audit_axioms(C, total=True)
    obscure = audit_obscure(C)
    elapsed = time.time() - start
    ok = axioms.passed and obscure.passed and elapsed < 300
    detail = (
        f"{len(axioms.entries) + len(obscure.entries)} axioms exhaustive, {elapsed:.1f}s"
    )
    report(3, "proto-exact + totality + obscure audits on the bounded instance", ok, detail)


@pytest.mark.parametrize(
    "item, case",
    [
        ("pullbacks of strict epis", proptools.case_pullback_of_strict_epi),
        ("pushouts of strict monos", proptools.case_pushout_of_strict_mono),
        ("strict epis compose", proptools.case_strict_epi_composition),
        ("strict monos compose", proptools.case_strict_mono_composition),
        ("epi cancellation", proptools.case_epi_cancellation),
        ("mono cancellation", proptools.case_mono_cancellation),
    ],
    ids=["pb-epi", "po-mono", "epi-comp", "mono-comp", "epi-cancel", "mono-cancel"],
)
def test_criterion_4_stability_theorems(item, case):
    violations = run_cases(case, 1000, seed=zlib.crc32(item.encode()))
    report(4, f"stability: {item} (1000 instances)", violations == 0, f"{violations} violations")


@pytest.mark.parametrize(
    "item, case",
    [
        ("kernel comparison across pullbacks", proptools.case_pullback_kernel_comparison),
        ("mixed squares are bicartesian", proptools.case_bicartesian_mixed_square),
        ("cokernel sequence of a composite", proptools.case_cokernel_of_composite),
        ("admissible mono + epi is iso", proptools.case_strict_mono_epi_is_iso),
        ("admissible epi with zero kernel is iso", proptools.case_strict_epi_zero_kernel_is_iso),
    ],
    ids=["pullker", "bicartesian", "coker-comp", "mono-epi-iso", "epi-ker0-iso"],
)
def test_criterion_5_comparison_propositions(item, case):
    violations = run_cases(case, 1000, seed=zlib.crc32(item.encode()))
    report(5, f"{item} (1000 instances)", violations == 0, f"{violations} violations")


def test_criterion_6_quotient_norm_oracle():
    # exhaustive: every coset of every subspace of every space of dim <= 3
    C = FinWeightedVec(F2, FULL_WEIGHTS, max_dim=3)
    compared = 0
    mismatches = 0
    for space in C.objects():
        for gens in C.subspaces(space):
            basis = orthogonalize(space, list(gens))
            for m in C.vectors(space):
                compared += 1
                if quotient_norm(basis, m) != C.brute_quotient_norm(list(gens), m):
                    mismatches += 1
    reversal_violations = run_cases(proptools.case_quotient_order_reversal, 1000, seed=606)
    ok = mismatches == 0 and reversal_violations == 0
    report(
        6,
        "quotient norm equals coset minimum (exhaustive) and ignores generator order",
        ok,
        f"{compared} cosets, {mismatches} mismatches, {reversal_violations} order flips",
    )


def test_criterion_7_orthogonality_certificates():
    # structural certificate checks run in the OrthoBasis constructor, so
    # every basis produced anywhere in the suite is verified; here bases are
    # built explicitly and the max formula is sampled at 1000 tuples each
    rng = random.Random(707)
    bases = 0
    sampled = 0
    failures = 0
    for _ in range(20):
        field = proptools.random_field(rng)
        sp = random_space(field, rng, 4, allow_null=True)
        gens = [random_vector(sp, rng) for _ in range(rng.randint(1, sp.dim + 1))]
        ob = orthogonalize(sp, gens)  # constructor validates the certificate
        bases += 1
        rows = ob.vectors + ob.null_vectors
        if not rows:
            continue
        for _ in range(1000):
            sampled += 1
            coeffs = [field.random_element(rng) for _ in rows]
            combo = zero_vector(sp)
            expected = MAG_ZERO
            for a, w in zip(coeffs, rows):
                combo = add_vectors(combo, scale_vector(a, w))
                expected = max(expected, field.abs_value(a) * norm(w))
            if norm(combo) != expected:
                failures += 1
    report(
        7,
        "orthogonality certificates: structural + sampled max formula",
        failures == 0,
        f"{bases} bases, {sampled} samples, {failures} failures",
    )


def test_criterion_8_rescaling_adjunction():
    # exhaustive enumeration over the bounded universe
    C = FinWeightedVec(F2, (E0, E1), max_dim=2)
    objs = C.objects()
    mismatch = 0
    checked = 0
    for M in objs:
        for N in objs:
            for delta in (Magnitude.of(-1), E0, E1):
                rescaled = WeightedSpace(F2, tuple(w * delta for w in M.weights))
                for entries in itertools.product(range(2), repeat=M.dim * N.dim):
                    rows = [
                        list(entries[i * M.dim : (i + 1) * M.dim]) for i in range(N.dim)
                    ]
                    checked += 1
                    as_scaled = operator_norm(bounded_map(rescaled, N, rows, check=False))
                    as_plain = operator_norm(bounded_map(M, N, rows, check=False))
                    if (as_scaled <= MAG_ONE) != (as_plain <= delta):
                        mismatch += 1
    random_violations = run_cases(proptools.case_rescaling_adjunction, 1000, seed=808)
    ok = mismatch == 0 and random_violations == 0
    report(
        8,
        "rescaling adjunction: exhaustive + 1000 random instances",
        ok,
        f"{checked} exhaustive maps, {mismatch} + {random_violations} violations",
    )


def test_criterion_9_free_covers():
    violations = run_cases(proptools.case_free_cover, 100, seed=909)
    # explicit semi-normed coverage: modules with null directions
    rng = random.Random(910)
    nulls = 0
    for _ in range(25):
        field = proptools.random_field(rng)
        sp = random_space(field, rng, 3, allow_null=True, min_dim=1)
        if not sp.null_indices:
            sp = WeightedSpace(field, sp.weights + (MAG_ZERO,))
        nulls += 1
        spanning = [basis_vector(sp, i) for i in range(sp.dim)]
        spanning += [random_vector(sp, rng)]
        rng.shuffle(spanning)
        cover = free_cover(sp, spanning)
        if not classify_morphism(cover).strict_epi:
            violations += 1
    report(
        9,
        "free covers classify as strict epis (100 modules + null-direction cases)",
        violations == 0,
        f"{violations} violations, {nulls} semi-normed cases",
    )


def test_criterion_10_colimit_norm_formula():
    violations = run_cases(proptools.case_chain_colimit_norms, 100, seed=1010)
    report(
        10,
        "chain colimit norms: inf formula equals last-stage norm (100 chains)",
        violations == 0,
        f"{violations} violations",
    )


def test_criterion_11_factorization_engine():
    C = FinWeightedVec(F2, FULL_WEIGHTS, max_dim=2)
    G = GeneratingSet.of(C, "all-admissible-monos", admissible_monos(C))
    failures = []
    for X in C.objects():
        res = special_preenvelope(C, X, G, fuel=100)
        if not res.mono_admissible:
            failures.append((X, "left leg not admissible"))
        if not res.codomain_orthogonal:
            failures.append((X, "codomain failed the lifting sweep"))
        if not is_injective_object(C, res.envelope.codomain).ok:
            failures.append((X, "codomain not injective"))
        if not res.certificate.replay(C, G):
            failures.append((X, "replay mismatch"))
    report(
        11,
        "special preenvelopes on the whole bounded universe with replay",
        not failures,
        f"{len(C.objects())} objects, generators={len(G.generators)}, failures={failures}",
    )


def test_criterion_12_coproduct_product_comparison():
    C = FinWeightedVec(F2, FULL_WEIGHTS, max_dim=2)
    objs = C.objects()
    bad = 0
    built = 0
    for X in objs:
        for Y in objs:
            bp = biproduct([X, Y])
            built += 1
            if coproduct_product_comparison(bp) != identity_map(bp.space):
                bad += 1
    random_violations = run_cases(proptools.case_biproduct_comparison, 100, seed=1212)
    ok = bad == 0 and random_violations == 0
    report(
        12,
        "coproduct-to-product comparison is the identity on all biproducts",
        ok,
        f"{built} exhaustive + 100 random, {bad + random_violations} violations",
    )
