"""Parabolic stability arithmetic and the dimension bounds.

Everything here is exact integer/rational bookkeeping, so the oracles
are hand-computed values and the properties are one-line identities.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bryantlab.errors import EmptyCandidateList
from bryantlab.parabolic import (BoundsReport, MarkedPoint, ParabolicData,
                                 SubbundleCandidate, bounds_csv, bounds_table,
                                 existence_bounds, parabolic_degree,
                                 riemann_roch_counts, stability_verdict)


def data_of(genus, *weights):
    points = tuple(MarkedPoint(label=f"p{i}", weight=w)
                   for i, w in enumerate(weights))
    return ParabolicData(genus=genus, points=points)


class TestParabolicDegree:
    def test_no_points_is_plain_degree(self):
        d = data_of(0)
        c = SubbundleCandidate(degree=3, matches=())
        assert parabolic_degree(d, c) == 3

    def test_mixed_matches(self):
        d = data_of(0, Fraction(1, 4), Fraction(1, 3))
        c = SubbundleCandidate(degree=0, matches=(True, False))
        assert parabolic_degree(d, c) == Fraction(-1, 24)

    def test_all_matches(self):
        d = data_of(1, Fraction(1, 2), Fraction(1, 2))
        c = SubbundleCandidate(degree=0, matches=(True, True))
        assert parabolic_degree(d, c) == Fraction(1, 2)

    def test_match_length_checked(self):
        d = data_of(0, Fraction(1, 2))
        with pytest.raises(ValueError):
            parabolic_degree(d, SubbundleCandidate(degree=0, matches=()))

    @given(st.integers(-5, 5),
           st.lists(st.fractions(min_value=Fraction(1, 20),
                                 max_value=Fraction(19, 20),
                                 max_denominator=20),
                    min_size=1, max_size=4),
           st.data())
    @settings(max_examples=100)
    def test_flipping_one_match_adds_the_weight(self, deg, weights, draw):
        d = data_of(0, *weights)
        matches = tuple(draw.draw(st.booleans()) for _ in weights)
        i = draw.draw(st.integers(0, len(weights) - 1))
        flipped = tuple((not m) if j == i else m for j, m in enumerate(matches))
        a = parabolic_degree(d, SubbundleCandidate(deg, matches))
        b = parabolic_degree(d, SubbundleCandidate(deg, flipped))
        assert abs(b - a) == weights[i]


class TestValidation:
    def test_weight_range(self):
        with pytest.raises(ValueError):
            MarkedPoint(label="p", weight=Fraction(0))
        with pytest.raises(ValueError):
            MarkedPoint(label="p", weight=Fraction(1))
        with pytest.raises(ValueError):
            MarkedPoint(label="p", weight=Fraction(3, 2))

    def test_weight_from_string(self):
        assert MarkedPoint(label="p", weight="2/3").weight == Fraction(2, 3)

    def test_duplicate_labels(self):
        p = MarkedPoint(label="p", weight=Fraction(1, 2))
        with pytest.raises(ValueError):
            ParabolicData(genus=0, points=(p, p))

    def test_negative_genus(self):
        with pytest.raises(ValueError):
            ParabolicData(genus=-1, points=())

    def test_weight_sum(self):
        d = data_of(0, Fraction(1, 4), Fraction(1, 3))
        assert d.weight_sum == Fraction(7, 12)
        assert d.point_count == 2


class TestStability:
    def test_stable(self):
        rep = stability_verdict(data_of(0),
                                [SubbundleCandidate(degree=-1, matches=())])
        assert rep.verdict == "stable" and rep.stable
        assert rep.margins == (Fraction(1),)
        assert rep.witness is None

    def test_semistable(self):
        rep = stability_verdict(data_of(0),
                                [SubbundleCandidate(degree=-1, matches=()),
                                 SubbundleCandidate(degree=0, matches=())])
        assert rep.verdict == "semistable" and not rep.stable
        assert rep.witness == 1

    def test_unstable_first_witness(self):
        d = data_of(0, Fraction(1, 2))
        rep = stability_verdict(d, [
            SubbundleCandidate(degree=-1, matches=(False,)),
            SubbundleCandidate(degree=2, matches=(False,)),
            SubbundleCandidate(degree=3, matches=(True,)),
        ])
        assert rep.verdict == "unstable"
        assert rep.witness == 1
        assert rep.margins[1] == Fraction(-7, 4)

    def test_weights_can_rescue_stability(self):
        # deg 0 subbundle off the flag: par = -α/2 < 0
        d = data_of(0, Fraction(1, 2))
        rep = stability_verdict(d, [SubbundleCandidate(degree=0, matches=(False,))])
        assert rep.stable
        # same candidate through the flag: par = +α/2
        rep2 = stability_verdict(d, [SubbundleCandidate(degree=0, matches=(True,))])
        assert rep2.verdict == "unstable"

    def test_no_points_is_usual_stability(self):
        rep = stability_verdict(data_of(2), [
            SubbundleCandidate(degree=k, matches=()) for k in (-3, -2, -1)])
        assert rep.stable
        assert rep.margins == (Fraction(3), Fraction(2), Fraction(1))

    def test_empty_candidates(self):
        with pytest.raises(EmptyCandidateList):
            stability_verdict(data_of(0), [])

    def test_json(self):
        rep = stability_verdict(data_of(0),
                                [SubbundleCandidate(degree=-1, matches=())])
        assert rep.to_json() == {"verdict": "stable", "margins": [[1, 1]],
                                 "witness": None}


class TestRiemannRoch:
    def test_genus_two(self):
        c = riemann_roch_counts(2, 6, 0)
        assert (c.h0_L, c.h0_L2, c.h0_EndL) == (5, 11, 10)
        assert c.h1_vanishes and c.globally_generated

    def test_genus_zero_trivial(self):
        c = riemann_roch_counts(0, 0, 0)
        assert (c.h0_L, c.h0_L2, c.h0_EndL) == (1, 1, 2)
        assert c.h1_vanishes and c.globally_generated

    def test_genus_one_with_points(self):
        c = riemann_roch_counts(1, 2, 2)
        assert (c.h0_L, c.h0_L2, c.h0_EndL) == (2, 4, 4)
        assert c.h0_EndL == 2 * c.h0_L
        assert c.h1_vanishes
        assert not c.globally_generated

    def test_special_range_rejected(self):
        with pytest.raises(ValueError):
            riemann_roch_counts(2, 2, 0)

    def test_weight_sum_loosens_thresholds(self):
        # four points of any weight vs. the same four at full strength
        worst = riemann_roch_counts(1, 2, 4)
        light = riemann_roch_counts(1, 2, 4, weight_sum=Fraction(1))
        assert not worst.h1_vanishes
        assert light.h1_vanishes

    def test_json_keys(self):
        data = riemann_roch_counts(0, 1, 0).to_json()
        assert set(data) == {"h0_L", "h0_L2", "h0_EndL", "h1_vanishes",
                             "globally_generated"}


class TestExistenceBounds:
    def test_rational_three_ends(self):
        b = existence_bounds(0, 3, 3)
        assert b.required_d == 0 and b.hypothesis_met
        assert b.dim_grassmannian == 12 and b.dim_quot == 3
        assert b.dim_family_lower == 13 and b.dim_special_lower == 9
        assert b.rank_r == 6
        assert b.dim_moduli_lower == 3

    def test_genus_one(self):
        b = existence_bounds(1, 8, 1)
        assert b.required_d == 5 and b.hypothesis_met
        assert b.rank_r == 17
        assert b.dim_moduli_lower == 3

    def test_genus_two_below_threshold(self):
        b = existence_bounds(2, 5, 0)
        assert b.required_d == 11 and not b.hypothesis_met
        assert b.dim_moduli_lower == -6

    def test_negative_inputs(self):
        with pytest.raises(ValueError):
            existence_bounds(-1, 0, 0)
        with pytest.raises(ValueError):
            existence_bounds(0, 0, -1)

    @given(st.integers(0, 3), st.integers(0, 30), st.integers(0, 5))
    @settings(max_examples=200)
    def test_met_hypothesis_gives_nonnegative_moduli(self, g, d, dp):
        b = existence_bounds(g, d, dp)
        assert b.dim_moduli_lower == d - b.required_d
        if b.hypothesis_met:
            assert b.dim_moduli_lower >= 0

    def test_table_and_csv(self):
        rows = [(0, 3, 3), (1, 8, 1)]
        reports = bounds_table(rows)
        assert len(reports) == 2 and all(isinstance(r, BoundsReport)
                                         for r in reports)
        text = bounds_csv(reports)
        lines = text.strip().split("\n")
        assert lines[0].startswith("genus,degree,point_count,required_d")
        assert len(lines) == 3
        assert lines[1].split(",")[:4] == ["0", "3", "3", "0"]
        assert lines[1].split(",")[-1] == "True"
