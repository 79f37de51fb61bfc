import itertools
from fractions import Fraction

import pytest

from cilines.errors import ParameterPresent
from cilines.exactmatrix import ExactMatrix, det, kernel_basis, rank_exact
from cilines.fields import RATIONALS, prime_field
from cilines.params import ParamRing

from conftest import random_scalar


def matrix_of_ints(ring, rows):
    return ExactMatrix.from_rows(
        ring, [[ring.const(v) for v in row] for row in rows]
    )


def cofactor_det(ring, grid):
    """Independent determinant for the certificate cross-check."""
    n = len(grid)
    if n == 0:
        return ring.one()
    acc = ring.zero()
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = ring.one()
        for i in range(n):
            term = term * grid[i][perm[i]]
        acc = acc + (term if sign > 0 else -term)
    return acc


def gaussian_rank_oracle(field, rows):
    """Plain fraction Gaussian elimination, independent of the library."""
    grid = [list(r) for r in rows]
    if not grid:
        return 0
    m, n = len(grid), len(grid[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if not field.is_zero(grid[i][col])), None)
        if piv is None:
            continue
        grid[rank], grid[piv] = grid[piv], grid[rank]
        inv = field.inv(grid[rank][col])
        grid[rank] = [field.mul(x, inv) for x in grid[rank]]
        for i in range(m):
            if i != rank and not field.is_zero(grid[i][col]):
                f = grid[i][col]
                grid[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(grid[i], grid[rank])]
        rank += 1
    return rank


def test_identity_over_f5():
    ring = ParamRing(prime_field(5), ())
    res = rank_exact(ExactMatrix.identity(ring, 3))
    assert (res.rank, res.certificate) == (3, ring.one())


def test_2x2_with_parameters():
    ring = ParamRing(RATIONALS, ("c1", "c2"))
    c1, c2 = ring.var("c1"), ring.var("c2")
    m = ExactMatrix.from_rows(ring, [[c1, ring.const(-1)], [c2, ring.zero()]])
    res = rank_exact(m)
    assert res.rank == 2
    assert res.certificate in (c2, -c2)  # the 2x2 determinant, up to sign


def test_rank3_of_the_4_6_matrix_at_origin():
    # rows (c1,-1,0,0), (c2,0,-1,0), (c3,0,0,-1), 0, 0
    ring = ParamRing(RATIONALS, ("c1", "c2", "c3"))
    c = [ring.var(f"c{j}") for j in (1, 2, 3)]
    z, o = ring.zero(), ring.const(-1)
    m = ExactMatrix.from_rows(
        ring,
        [
            [c[0], o, z, z],
            [c[1], z, o, z],
            [c[2], z, z, o],
            [z, z, z, z],
            [z, z, z, z],
        ],
    )
    assert rank_exact(m).rank == 3


def test_empty_matrix():
    ring = ParamRing(RATIONALS, ())
    res = rank_exact(ExactMatrix(ring, 0, 0, ()))
    assert (res.rank, res.certificate) == (0, ring.one())


def test_certificate_is_the_pivot_minor(rng):
    ring = ParamRing(RATIONALS, ("c1", "c2"))
    for _ in range(25):
        rows = [[random_scalar(rng, ring, 1, 2) for _ in range(4)] for _ in range(3)]
        m = ExactMatrix.from_rows(ring, rows)
        res = rank_exact(m)
        if res.rank == 0:
            continue
        sub = m.submatrix(res.pivot_rows, res.pivot_cols)
        expect = cofactor_det(ring, sub.to_lists())
        assert res.certificate == expect
        assert not res.certificate.is_zero


def test_det_matches_cofactor(rng):
    ring = ParamRing(prime_field(7), ("c1",))
    for _ in range(25):
        rows = [[random_scalar(rng, ring, 1, 2) for _ in range(3)] for _ in range(3)]
        m = ExactMatrix.from_rows(ring, rows)
        assert det(m) == cofactor_det(ring, rows)


def test_rank_invariance_under_permutation_and_scaling(rng):
    ring = ParamRing(RATIONALS, ("c1", "c2"))
    for _ in range(15):
        rows = [[random_scalar(rng, ring, 1, 2) for _ in range(4)] for _ in range(4)]
        base = rank_exact(ExactMatrix.from_rows(ring, rows)).rank
        perm = list(range(4))
        rng.shuffle(perm)
        permuted = [rows[i] for i in perm]
        cols = list(range(4))
        rng.shuffle(cols)
        permuted = [[row[j] for j in cols] for row in permuted]
        assert rank_exact(ExactMatrix.from_rows(ring, permuted)).rank == base
        scaled = [
            [x * ring.const(rng.randint(1, 9)) for x in row] if i == 0 else row
            for i, row in enumerate(rows)
        ]
        assert rank_exact(ExactMatrix.from_rows(ring, scaled)).rank == base


def test_rank_against_gaussian_oracle(rng):
    field = prime_field(11)
    ring = ParamRing(field, ())
    for _ in range(30):
        raw = [[field.make(rng.randint(-9, 9)) for _ in range(5)] for _ in range(4)]
        m = matrix_of_ints(ring, raw)
        assert rank_exact(m).rank == gaussian_rank_oracle(field, raw)


def test_rank_plus_kernel_is_cols(rng):
    field = RATIONALS
    ring = ParamRing(field, ())
    for _ in range(20):
        raw = [[field.make(rng.randint(-4, 4)) for _ in range(5)] for _ in range(3)]
        m = matrix_of_ints(ring, raw)
        assert rank_exact(m).rank + len(kernel_basis(m)) == 5


def test_kernel_examples():
    ring = ParamRing(RATIONALS, ())
    assert kernel_basis(ExactMatrix.identity(ring, 2)) == []
    m = matrix_of_ints(ring, [[1, 0]])
    assert kernel_basis(m) == [(Fraction(0), Fraction(1))]


def test_kernel_vectors_annihilate(rng):
    field = prime_field(5)
    ring = ParamRing(field, ())
    for _ in range(10):
        raw = [[field.make(rng.randint(0, 4)) for _ in range(6)] for _ in range(3)]
        m = matrix_of_ints(ring, raw)
        for vec in kernel_basis(m):
            for i in range(3):
                acc = field.zero
                for j in range(6):
                    acc = field.add(acc, field.mul(raw[i][j], vec[j]))
                assert field.is_zero(acc)


def test_kernel_rejects_parameters():
    ring = ParamRing(RATIONALS, ("c1",))
    m = ExactMatrix.from_rows(ring, [[ring.var("c1"), ring.one()]])
    with pytest.raises(ParameterPresent):
        kernel_basis(m)


def test_schwartz_zippel_specialization(rng):
    """Specializing the parameters outside the certificate's zero set
    preserves the rank (20 points over a large prime field)."""
    big = prime_field(1_000_003)
    ring = ParamRing(RATIONALS, ("c1", "c2"))
    rows = [[random_scalar(rng, ring, 2, 3) for _ in range(4)] for _ in range(3)]
    m = ExactMatrix.from_rows(ring, rows)
    res = rank_exact(m)
    checked = 0
    while checked < 20:
        point = {"c1": rng.randrange(big.p), "c2": rng.randrange(big.p)}
        cert_val = big.make(res.certificate.evaluate({k: Fraction(v) for k, v in point.items()}))
        if big.is_zero(cert_val):
            continue
        raw = [
            [big.make(e.evaluate({k: Fraction(v) for k, v in point.items()})) for e in row]
            for row in rows
        ]
        assert gaussian_rank_oracle(big, raw) == res.rank
        checked += 1
