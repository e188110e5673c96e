import random

import pytest

from cwquot.intpoly import IntPolynomial


@pytest.fixture
def rng():
    return random.Random(20240601)


def poly(*coeffs: int) -> IntPolynomial:
    """Coefficients lowest degree first."""
    return IntPolynomial(coeffs)


@pytest.fixture
def nprng():
    import numpy as np

    return np.random.default_rng(20240601)
