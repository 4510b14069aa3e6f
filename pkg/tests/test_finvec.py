import pytest

from protex import (
    MAG_ONE,
    MAG_ZERO,
    Magnitude,
    FinWeightedVec,
    PrimeField,
    WeightedSpace,
    classify_morphism,
    norm,
    operator_norm,
    quotient_norm,
    orthogonalize,
    rank_one,
    vector,
)
from protex.errors import BudgetExceeded, InvariantViolation
from protex.scalars import PAdicRationals

F2 = PrimeField(2)
E0, E1, E2 = MAG_ONE, Magnitude.of(1), Magnitude.of(2)


class TestEnumeration:
    def test_objects_are_canonical(self):
        C = FinWeightedVec(F2, (E0, E1), max_dim=2)
        objs = C.objects()
        assert len(objs) == 1 + 2 + 3
        assert all(tuple(sorted(o.weights, reverse=True)) == o.weights for o in objs)

    def test_requires_prime_field_and_weights(self):
        with pytest.raises(InvariantViolation):
            FinWeightedVec(PAdicRationals(2), (E0,), max_dim=1)
        with pytest.raises(InvariantViolation):
            FinWeightedVec(F2, (), max_dim=1)

    def test_hom_set_counts(self):
        C = FinWeightedVec(F2, (E0, E1), max_dim=2)
        low, high = rank_one(F2, E0), rank_one(F2, E1)
        # scalars of norm at most g^0 into weight g^1: only zero
        assert len(C.morphisms(low, high)) == 1
        # the other direction admits both scalars
        assert len(C.morphisms(high, low)) == 2
        X = WeightedSpace(F2, (E1, E0))
        assert len(C.morphisms(X, X)) == 2 * 4  # columns: 2 then 4 options

    def test_all_maps_are_valid_morphisms(self):
        C = FinWeightedVec(F2, (E0, E1), max_dim=2)
        for X in C.objects():
            for Y in C.objects():
                maps = C.morphisms(X, Y)
                assert len(set(maps)) == len(maps)
                for f in maps:
                    assert operator_norm(f) <= MAG_ONE

    def test_budget(self):
        C = FinWeightedVec(F2, (E0,), max_dim=2, hom_budget=3)
        X = WeightedSpace(F2, (E0, E0))
        with pytest.raises(BudgetExceeded):
            C.morphisms(X, X)


class TestBruteQuotient:
    def test_trivial_cases(self):
        C = FinWeightedVec(F2, (E0, E1), max_dim=2)
        X = WeightedSpace(F2, (E0, E0))
        m = vector(X, (1, 0))
        assert C.brute_quotient_norm([], m) == norm(m)
        assert C.brute_quotient_norm([m], m) == MAG_ZERO

    def test_worked_example(self):
        C = FinWeightedVec(F2, (E0, E1), max_dim=2)
        X = WeightedSpace(F2, (E0, E0))
        assert C.brute_quotient_norm([vector(X, (1, 1))], vector(X, (1, 0))) == E0

    def test_matches_algorithm_on_dim3(self):
        C = FinWeightedVec(F2, (E0, E1, E2), max_dim=3)
        space = WeightedSpace(F2, (E2, E1, E0))
        for gens in C.subspaces(space):
            basis = orthogonalize(space, list(gens))
            for m in C.vectors(space):
                assert quotient_norm(basis, m) == C.brute_quotient_norm(list(gens), m)


class TestSemiNormedInstance:
    def test_zero_weights_supported(self):
        C = FinWeightedVec(F2, (E0, MAG_ZERO), max_dim=2)
        objs = C.objects()
        assert any(MAG_ZERO in o.weights for o in objs)
        for X in objs:
            for Y in objs:
                for f in C.morphisms(X, Y):
                    record = classify_morphism(f)  # must not raise
                    if record.iso:
                        assert record.strict_mono and record.strict_epi
