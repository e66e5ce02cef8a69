import math

import numpy as np
import pytest

from chebdiff2d import build_cross, cardinality, underline


def brute_force(n, gamma, r):
    """Direct enumeration of the defining inequalities on the enclosing box."""
    out = set()
    for k in range(r, n + 1):
        out.add((k, 0))
        for j in range(1, n + 1):
            if k * float(j) ** gamma <= n * (1 + 1e-12):
                out.add((k, j))
    return out


def test_underline():
    assert underline(0) == 1
    assert underline(1) == 1
    assert underline(7) == 7


def test_example_gamma_one():
    cross = build_cross(4, 1.0, 1)
    expected = {(k, 0) for k in range(1, 5)} | {(k, 1) for k in range(1, 5)}
    expected |= {(1, 2), (2, 2), (1, 3), (1, 4)}
    assert set(cross) == expected
    assert len(cross) == 12


def test_example_level_equals_order():
    cross = build_cross(2, 1.0, 2)
    assert set(cross) == {(2, 0), (2, 1)}
    assert cardinality(3, 2.5, 3) == 2  # only (r, 0) and (r, 1) fit


def test_example_gamma_two():
    cross = build_cross(4, 2.0, 1)
    expected = ({(k, 0) for k in range(1, 5)} | {(k, 1) for k in range(1, 5)}
                | {(1, 2)})
    assert set(cross) == expected
    assert cardinality(4, 2.0, 1) == 9


def test_invalid_parameters():
    with pytest.raises(ValueError):
        build_cross(1, 1.0, 2)  # n < r
    with pytest.raises(ValueError):
        build_cross(4, 0.9, 1)
    with pytest.raises(ValueError):
        build_cross(4, 1.0, 0)


def test_enumeration_order_is_lexicographic():
    cross = build_cross(9, 1.3, 2)
    indices = list(cross)
    assert indices == sorted(indices)


def test_membership_matches_enumeration_fuzz(rng):
    for _ in range(300):
        r = int(rng.integers(1, 4))
        n = int(rng.integers(r, 60))
        gamma = float(rng.uniform(1.0, 3.5))
        cross = build_cross(n, gamma, r)
        expected = brute_force(n, gamma, r)
        assert set(cross) == expected
        assert len(cross) == len(expected)
        # spot membership probes, including out-of-range indices
        for _ in range(30):
            k = int(rng.integers(0, n + 3))
            j = int(rng.integers(0, n + 3))
            assert ((k, j) in cross) == ((k, j) in expected)


def test_monotone_in_level_and_shape(rng):
    for _ in range(50):
        r = int(rng.integers(1, 3))
        n = int(rng.integers(r, 40))
        gamma = float(rng.uniform(1.0, 2.5))
        base = set(build_cross(n, gamma, r))
        assert base <= set(build_cross(n + 1, gamma, r))
        assert set(build_cross(n, gamma + 0.7, r)) <= base


def test_cardinality_avoids_materialization():
    # big level: counting must stay cheap and agree with the j-column sums
    n = 200_000
    count = cardinality(n, 1.0, 1)
    assert count == sum(n // k + 1 for k in range(1, n + 1))


@pytest.mark.parametrize("gamma,normalizer", [
    (2.0, lambda n: n),
    (1.0, lambda n: n * math.log(n)),
])
def test_cardinality_growth_bracket(gamma, normalizer):
    ratios = [cardinality(2**e, gamma, 1) / normalizer(2**e)
              for e in range(10, 18)]
    assert max(ratios) / min(ratios) < 4.0


def test_j_bound_attained_at_first_column():
    cross = build_cross(50, 1.5, 2)
    assert cross.j_bound == cross.j_max(2)
    assert all(j <= cross.j_bound for _, j in cross)
