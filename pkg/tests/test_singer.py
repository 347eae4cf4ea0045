import pytest

from repfn.profiles import rep_diff_profile, rep_profile
from repfn.singer import (
    DEFAULT_PRIME_BOUND,
    field_ctx_build,
    field_mul,
    field_pow,
    is_prime,
    singer_set,
)


class TestPrimality:
    def test_small_values(self):
        primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 997}
        for n in range(-3, 40):
            assert is_prime(n) == (n in primes)
        assert is_prime(997)
        assert not is_prime(999)


class TestFieldCtx:
    def test_p2_modulus_is_smallest_irreducible(self):
        ctx = field_ctx_build(2)
        # x^3 + x + 1, stored in ascending degree with leading 1
        assert ctx.modulus == (1, 1, 0, 1)

    def test_p2_reduction_example(self):
        ctx = field_ctx_build(2)
        assert field_mul(ctx, (0, 1, 0), (0, 0, 1)) == (1, 1, 0)

    def test_identity_and_zero(self):
        for p in (2, 3, 5):
            ctx = field_ctx_build(p)
            u = (1, 2 % p, 1)
            assert field_mul(ctx, u, (1, 0, 0)) == u
            assert field_mul(ctx, u, (0, 0, 0)) == (0, 0, 0)

    def test_modulus_has_no_root(self):
        for p in (2, 3, 5, 7):
            c, b, a, lead = field_ctx_build(p).modulus
            assert lead == 1
            for t in range(p):
                assert (t**3 + a * t**2 + b * t + c) % p != 0

    def test_primitive_element_order(self):
        for p in (2, 3, 5):
            ctx = field_ctx_build(p)
            q = p**3 - 1
            assert field_pow(ctx, ctx.primitive, q) == (1, 0, 0)
            seen = set()
            u = (1, 0, 0)
            for _ in range(q):
                seen.add(u)
                u = field_mul(ctx, u, ctx.primitive)
            assert len(seen) == q

    def test_rejects_nonprime(self):
        with pytest.raises(ValueError):
            field_ctx_build(4)
        with pytest.raises(ValueError):
            field_ctx_build(1)


class TestSingerSet:
    def test_defining_property(self):
        for p in (2, 3, 5, 7):
            pds = singer_set(p)
            n = p * p + p + 1
            assert pds.n == n
            assert pds.subset.card == p + 1
            diff = rep_diff_profile(pds.subset)
            assert diff.counts[0] == p + 1
            assert all(c == 1 for c in diff.counts[1:])

    def test_pinned_small_sets(self):
        assert singer_set(2).elements == [0, 1, 3]
        assert singer_set(3).elements == [0, 1, 3, 9]

    def test_deterministic(self):
        assert singer_set(5).elements == singer_set(5).elements

    def test_sum_side_spectrum(self):
        for p in (2, 3, 5):
            pds = singer_set(p)
            spec = rep_profile(pds.subset).spectrum()
            assert spec.max_rep <= 2
            assert spec[2] == (p + 1) * p // 2
            assert spec[1] == p + 1

    def test_rejects_nonprime_and_over_bound(self):
        with pytest.raises(ValueError):
            singer_set(6)
        with pytest.raises(ValueError):
            singer_set(1009, prime_bound=DEFAULT_PRIME_BOUND)

    def test_custom_bound_enforced(self):
        with pytest.raises(ValueError):
            singer_set(13, prime_bound=12)

    def test_medium_prime(self):
        pds = singer_set(29)
        assert pds.subset.card == 30
