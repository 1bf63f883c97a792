import pytest

from digitfract import CubeBlocks, DigitSystem, Periodic


@pytest.fixture
def sys2():
    return DigitSystem(2, (0,))


@pytest.fixture
def sys3():
    return DigitSystem(3, (0, 2))


@pytest.fixture
def odds():
    return Periodic(2, [1])


@pytest.fixture
def cube():
    return CubeBlocks()


def recursive_strings(base, digits, in_set, depth):
    """Independent generator of all admissible digit strings."""
    if depth == 0:
        return [()]
    shorter = recursive_strings(base, digits, in_set, depth - 1)
    alphabet = list(range(base)) if in_set(depth) else list(digits)
    return [s + (d,) for s in shorter for d in alphabet]


def direct_transform(system, positions, depth, m):
    """Independent oracle: transform of the depth-N atomic measure.

    Sums exp(-2 pi i m x) over the enumerated left endpoints, with the
    angle reduced exactly in integer arithmetic first.
    """
    import cmath
    import math

    from digitfract import enumerate_approximation

    approx = enumerate_approximation(system, positions, depth)
    scale = system.base**depth
    total = complex(0.0, 0.0)
    for num in approx.numerators:
        r = (m * num) % scale
        total += cmath.exp(complex(0.0, -2.0 * math.pi * (r / scale)))
    return total / approx.count
