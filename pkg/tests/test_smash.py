from itertools import product

import pytest

from kotoric.smash import module_generator_images, smash_rank_two_ways


def rational_rank(m: int, degree: int, n: int) -> int:
    """Reduced KO rank from rational cohomology: cells of the smash sit in
    degrees 2 * sum(b), 1 <= b_i <= 2n, and contribute when 2 * sum(b) is
    congruent to degree mod 4."""
    if degree % 2:
        return 0
    return sum(1 for b in product(range(1, 2 * n + 1), repeat=m) if (2 * sum(b) - degree) % 4 == 0)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("degree", range(0, -8, -1))
def test_counts_agree_with_rational_oracle(m, degree):
    first, second = smash_rank_two_ways(m, degree, 2)
    assert first == second == rational_rank(m, degree, 2)


@pytest.mark.parametrize("m, n, expected", [(1, 1, 1), (1, 3, 3), (2, 1, 2), (2, 3, 18)])
def test_other_windows(m, n, expected):
    assert smash_rank_two_ways(m, 0, n) == (expected, expected)
    assert smash_rank_two_ways(m, 4, n) == (expected, expected)


def test_degenerate():
    assert smash_rank_two_ways(2, 0, 0) == (0, 0)
    assert smash_rank_two_ways(2, -3, 2) == (0, 0)
    with pytest.raises(ValueError):
        smash_rank_two_ways(0, 0, 1)
    with pytest.raises(ValueError):
        smash_rank_two_ways(1, 0, -1)


def test_generator_images_nonzero():
    gens = module_generator_images(2, 0, 1)
    assert gens and all(not g.is_zero() for g in gens)
