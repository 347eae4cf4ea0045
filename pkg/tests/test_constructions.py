from fractions import Fraction

import pytest

from repfn.constructions import (
    half_period_doubling,
    shift_family_report,
    shifted_doubling,
    sidon_set,
)
from repfn.profiles import rep_profile
from repfn.singer import singer_set


class TestShiftedDoubling:
    def test_p2_shape(self):
        a = shifted_doubling(2, 0)
        assert a.group.order == 14
        assert a.card == 6
        assert rep_profile(a).max_rep <= 4

    def test_p3_all_shifts(self):
        for l in range(13):
            a = shifted_doubling(3, l)
            assert a.group.order == 26
            assert a.card == 8
            assert rep_profile(a).max_rep <= 4

    def test_shift_out_of_range(self):
        with pytest.raises(ValueError):
            shifted_doubling(2, 7)
        with pytest.raises(ValueError):
            shifted_doubling(2, -1)

    def test_even_odd_split_decomposition(self):
        # Counts decompose through the base set: even targets split into the
        # two doubled translates, odd targets are cross terms counted twice.
        for p in (2, 3):
            base = singer_set(p)
            n = base.n
            rb = rep_profile(base.subset).counts
            for l in range(n):
                s = 2 * l + 1
                counts = rep_profile(shifted_doubling(p, l)).counts
                for g in range(2 * n):
                    if g % 2 == 0:
                        h = g // 2
                        want = rb[h % n] + rb[(h - s) % n]
                    else:
                        want = 2 * rb[((g - s) % (2 * n)) // 2 % n]
                    assert counts[g] == want


class TestSidonSet:
    def test_two_rep_class_size(self):
        for p, want in ((2, 3), (3, 6), (5, 15)):
            a = sidon_set(p)
            spec = rep_profile(a).spectrum()
            m = a.group.order
            assert spec.max_rep <= 2
            assert spec[2] == (m - 1) // 2 == want

    def test_same_elements_as_difference_set(self):
        assert sidon_set(3).elements() == singer_set(3).elements


class TestHalfPeriodDoubling:
    def test_four_rep_class_size(self):
        for p, want in ((2, 6), (3, 12), (5, 30)):
            a = half_period_doubling(p)
            spec = rep_profile(a).spectrum()
            m = a.group.order
            assert spec.max_rep <= 4
            assert spec[4] == m // 2 - 1 == want

    def test_p2_pinned_set(self):
        assert half_period_doubling(2).elements() == [0, 2, 6, 7, 9, 13]


class TestShiftFamilyReport:
    def test_p2_exact_values(self):
        rep = shift_family_report(2)
        assert rep.m == 14
        assert rep.x_odd == 1
        assert len(rep.per_l) == 7
        assert rep.avg_even == Fraction(1, 7)
        assert rep.best_l == 0
        assert rep.best_stat.x_even == 0
        assert rep.best_s0 == 1

    def test_p3_exact_values(self):
        rep = shift_family_report(3)
        assert rep.x_odd == 3
        assert sum(s.x_even for s in rep.per_l) == 9
        assert rep.best_l == 2
        assert rep.best_s0 == 3

    def test_p5_exact_values(self):
        rep = shift_family_report(5)
        assert rep.x_odd == 10
        assert sum(s.x_even for s in rep.per_l) == 100
        assert rep.avg_even == Fraction(100, 31)
        assert rep.best_l == 0
        assert rep.best_s0 == 12

    def test_invariants(self):
        for p in (2, 3, 5):
            rep = shift_family_report(p)
            expected_odd = (p * p - p) // 2
            assert all(s.x_odd == expected_odd for s in rep.per_l)
            assert all(s.s0 == s.x_odd + s.x_even for s in rep.per_l)
            assert all(s.max_rep <= 4 for s in rep.per_l)
            assert rep.best_stat.x_even <= rep.avg_even
            assert 8 * rep.best_s0 < 3 * rep.m

    def test_best_l_matches_direct_spectrum(self):
        rep = shift_family_report(3)
        a = shifted_doubling(3, rep.best_l)
        s0 = sum(1 for c in rep_profile(a).counts if c == 0)
        assert s0 == rep.best_s0

    def test_per_l_counts_match_direct_scan(self):
        rep = shift_family_report(2)
        for stat in rep.per_l:
            counts = rep_profile(shifted_doubling(2, stat.l)).counts
            assert sum(1 for c in counts if c == 0) == stat.s0
