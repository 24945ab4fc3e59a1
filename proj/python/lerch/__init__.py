"""Fermat, Wilson and Lerch quotients, Bernoulli numbers, congruence checks and prime search."""

from functools import lru_cache

from ._core import (
    Engine,
    LerchError,
    bernoulli,
    bernoulli_numbers,
    fermat_quotient,
    fermat_quotient_sum_exact,
    fermat_quotient_sum,
    lerch_residue,
    registry,
    sieve,
    wilson_quotient,
    wilson_quotient_exact,
)


@lru_cache(maxsize=None)
def default_engine(p_exact=499):
    return Engine(p_exact)


def check(id, p, method="auto", m=None):
    return default_engine().check(id, p, method, m)


def check_all(p):
    return default_engine().check_all(p)


def classify(p):
    return default_engine().classify(p)


def search(lo, hi, **options):
    return default_engine().search(lo, hi, **options)
