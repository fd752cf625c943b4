"""Shared strategies and corpus builders.

Two kinds of randomness live here and stay separate: hypothesis
strategies for the property tests, and seeded random.Random corpora for
the acceptance suite (which needs a deterministic count of cases, not
shrinkable examples).  Both build frames the same way: finite products
of unipotent matrices, so the determinant is 1 by construction rather
than by solving anything.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bryantlab.series import GaussianRational, LaurentMatrix, LaurentPoly

# ---------------------------------------------------------------------------
# hypothesis strategies

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=9),
)

gaussian_rationals = st.builds(GaussianRational, small_fractions, small_fractions)


def laurent_polys(min_exp: int = -5, max_exp: int = 5,
                  max_terms: int = 4) -> st.SearchStrategy[LaurentPoly]:
    return st.dictionaries(
        st.integers(min_value=min_exp, max_value=max_exp),
        gaussian_rationals, max_size=max_terms,
    ).map(LaurentPoly)


def laurent_matrices(**kw) -> st.SearchStrategy[LaurentMatrix]:
    p = laurent_polys(**kw)
    return st.builds(LaurentMatrix, p, p, p, p)


def trace_free_matrices(**kw) -> st.SearchStrategy[LaurentMatrix]:
    p = laurent_polys(**kw)
    return st.builds(lambda a, b, c: LaurentMatrix(a, b, c, -a), p, p, p)


def special_frames(max_factors: int = 3) -> st.SearchStrategy[LaurentMatrix]:
    """Products of unipotent matrices times diag(z^k, z^-k): det = 1 exactly."""
    factor = st.tuples(st.booleans(), laurent_polys(min_exp=-2, max_exp=2, max_terms=3))

    def build(factors, k):
        m = LaurentMatrix.diagonal(LaurentPoly.monomial(k, 1),
                                   LaurentPoly.monomial(-k, 1))
        for upper, p in factors:
            one = LaurentPoly.one()
            u = (LaurentMatrix(one, p, LaurentPoly.zero(), one) if upper
                 else LaurentMatrix(one, LaurentPoly.zero(), p, one))
            m = m @ u
        return m

    return st.builds(build, st.lists(factor, min_size=1, max_size=max_factors),
                     st.integers(min_value=-2, max_value=2))


# ---------------------------------------------------------------------------
# seeded corpora for the acceptance suite

def seeded_fraction(rng: random.Random, span: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def seeded_coeff(rng: random.Random) -> GaussianRational:
    return GaussianRational(seeded_fraction(rng), seeded_fraction(rng))


def seeded_poly(rng: random.Random, min_exp: int, max_exp: int,
                max_terms: int = 3, allow_zero: bool = True) -> LaurentPoly:
    lo = 0 if allow_zero else 1
    terms = {}
    for _ in range(rng.randint(lo, max_terms)):
        terms[rng.randint(min_exp, max_exp)] = seeded_coeff(rng)
    return LaurentPoly(terms)


def seeded_trace_free(rng: random.Random) -> LaurentMatrix:
    a = seeded_poly(rng, -3, 3)
    b = seeded_poly(rng, -3, 3)
    c = seeded_poly(rng, -3, 3)
    return LaurentMatrix(a, b, c, -a)


def seeded_null_matrix(rng: random.Random) -> LaurentMatrix:
    # rank-one: rows proportional to (q, -p) scaled by p resp. q
    p = seeded_poly(rng, -2, 2, allow_zero=False)
    q = seeded_poly(rng, -2, 2, allow_zero=False)
    return LaurentMatrix(p * q, -(p * p), q * q, -(p * q))


def seeded_special_frame(rng: random.Random, factors: int = 3) -> LaurentMatrix:
    k = rng.randint(-2, 2)
    m = LaurentMatrix.diagonal(LaurentPoly.monomial(k, 1),
                               LaurentPoly.monomial(-k, 1))
    one = LaurentPoly.one()
    for i in range(rng.randint(1, factors)):
        p = seeded_poly(rng, -2, 2, allow_zero=False)
        if (i + rng.randint(0, 1)) % 2:
            m = m @ LaurentMatrix(one, p, LaurentPoly.zero(), one)
        else:
            m = m @ LaurentMatrix(one, LaurentPoly.zero(), p, one)
    return m


def seeded_frame_of_order(rng: random.Random, lo: int = 1, hi: int = 4) -> LaurentMatrix:
    """Rejection-sample special frames until the pole order lands in [lo, hi]."""
    while True:
        m = seeded_special_frame(rng)
        if lo <= m.max_pole_order() <= hi:
            return m


# ---------------------------------------------------------------------------
# file fixtures

@pytest.fixture
def write_json(tmp_path):
    def _write(name: str, payload) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)
    return _write


@pytest.fixture
def frame_file(write_json):
    def _write(name: str, matrix: LaurentMatrix, domain=None) -> str:
        data = {"matrix": matrix.to_json()}
        if domain is not None:
            data["domain"] = domain
        return write_json(name, data)
    return _write
