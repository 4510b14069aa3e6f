import itertools
import random
from fractions import Fraction

from protex import PAdicRationals, PrimeField
from protex import linalg


def brute_rank_f2(rows):
    # oracle: dimension of the row span by enumerating all combinations
    F = PrimeField(2)
    n = len(rows[0]) if rows else 0
    span = set()
    for coeffs in itertools.product([0, 1], repeat=len(rows)):
        v = tuple(
            sum(c * r[j] for c, r in zip(coeffs, rows)) % 2 for j in range(n)
        )
        span.add(v)
    size = len(span)
    rank = 0
    while 2**rank < size:
        rank += 1
    return rank


def test_rank_against_brute_force():
    F = PrimeField(2)
    rng = random.Random(11)
    for _ in range(200):
        m, n = rng.randint(0, 3), rng.randint(1, 4)
        rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(m)]
        assert linalg.rank(F, rows) == brute_rank_f2(rows)


def test_solve_and_nullspace_rationals():
    F = PAdicRationals(2)
    rng = random.Random(5)
    for _ in range(300):
        m, n = rng.randint(0, 4), rng.randint(0, 4)
        a = [[F.random_element(rng) for _ in range(n)] for _ in range(m)]
        x = [F.random_element(rng) for _ in range(n)]
        b = linalg.mat_vec(F, a, x)
        sol = linalg.solve(F, a, b)
        assert sol is not None
        assert linalg.mat_vec(F, a, sol) == b
        for v in linalg.nullspace(F, a, ncols=n):
            assert all(e == 0 for e in linalg.mat_vec(F, a, v))
        # nullspace dimension = n - rank
        assert len(linalg.nullspace(F, a, ncols=n)) == n - linalg.rank(F, a)


def test_solve_detects_inconsistency():
    F = PrimeField(3)
    a = [[1, 0], [1, 0]]
    assert linalg.solve(F, a, [1, 2]) is None
    assert linalg.solve(F, a, [2, 2]) is not None


def test_inverse():
    F = PAdicRationals(3)
    rng = random.Random(9)
    found = 0
    for _ in range(200):
        n = rng.randint(0, 3)
        a = [[F.random_element(rng) for _ in range(n)] for _ in range(n)]
        inv = linalg.inverse(F, a)
        if inv is None:
            assert linalg.rank(F, a) < n
            continue
        found += 1
        ident = linalg.identity(F, n)
        assert linalg.mat_mul(F, a, inv) == ident
        assert linalg.mat_mul(F, inv, a) == ident
    assert found > 50


def test_empty_shapes():
    F = PrimeField(2)
    assert linalg.rank(F, []) == 0
    assert linalg.nullspace(F, []) == []
    assert len(linalg.nullspace(F, [], ncols=3)) == 3
    assert linalg.inverse(F, []) == []
    assert linalg.solve_matrix(F, [], []) == []
    assert linalg.mat_vec(F, [], []) == []
