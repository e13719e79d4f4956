import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from missgen.modmath import prime_context  # noqa: E402


@pytest.fixture
def ctx31():
    return prime_context(31)


@pytest.fixture
def ctx43():
    return prime_context(43)


def odd_primes(upto):
    from oracles import trial_is_prime

    return [p for p in range(3, upto + 1, 2) if trial_is_prime(p)]


def p3_primes(upto):
    from oracles import trial_factor

    return [p for p in odd_primes(upto) if len(trial_factor(p - 1)) == 3]
