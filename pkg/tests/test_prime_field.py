import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markoff.prime_field import (
    FieldElement,
    UnsupportedModulusError,
    inv_mod,
    inverse_array,
    is_prime,
    legendre,
    primes_in_range,
    require_prime,
    sqrt_array,
    sqrt_mod,
    sqrt_table,
    xgcd,
)

PRIMES_TO_100 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
ODD_PRIMES_TO_101 = PRIMES_TO_100[1:] + [101]


class TestIsPrime:
    def test_small_examples(self):
        assert is_prime(7)
        assert not is_prime(1)
        assert not is_prime(0)
        assert not is_prime(-5)
        assert is_prime(2)

    def test_3489_is_composite(self):
        # trial division oracle: 3489 = 3 * 1163
        assert 3489 == 3 * 1163
        assert not is_prime(3489)

    def test_matches_hardcoded_list_to_100(self):
        assert [n for n in range(2, 101) if is_prime(n)] == PRIMES_TO_100

    def test_matches_trial_division_to_2000(self):
        def trial(n):
            if n < 2:
                return False
            d = 2
            while d * d <= n:
                if n % d == 0:
                    return False
                d += 1
            return True

        for n in range(2000):
            assert is_prime(n) == trial(n), n

    def test_carmichael_numbers_rejected(self):
        for n in (561, 1105, 1729, 2465, 2821, 6601):
            assert not is_prime(n)

    def test_large_64bit_values(self):
        assert is_prime(2**61 - 1)  # Mersenne prime
        assert not is_prime(2**62 - 1)
        assert is_prime(18446744073709551557)  # largest prime below 2**64
        assert not is_prime(18446744073709551555)


class TestRequirePrime:
    def test_passes_primes(self):
        assert require_prime(101) == 101

    def test_rejects_composites(self):
        with pytest.raises(ValueError, match="not prime"):
            require_prime(100)


class TestPrimesInRange:
    def test_rounds_inward(self):
        assert primes_in_range(14, 16) == []
        assert primes_in_range(4, 19) == [5, 7, 11, 13, 17, 19]

    def test_includes_two_and_three(self):
        assert primes_in_range(2, 3) == [2, 3]
        assert primes_in_range(1, 2) == [2]

    def test_full_range(self):
        assert primes_in_range(2, 100) == PRIMES_TO_100


class TestInverse:
    def test_examples(self):
        assert inv_mod(3, 5) == 2
        assert inv_mod(2, 7) == 4
        for p in (5, 7, 97):
            assert inv_mod(1, p) == 1

    def test_zero_raises(self):
        with pytest.raises(ZeroDivisionError, match="inverse of zero"):
            inv_mod(0, 7)

    def test_involution_and_product_exhaustive(self):
        for p in PRIMES_TO_100 + [101]:
            for a in range(1, p):
                inv = inv_mod(a, p)
                assert a * inv % p == 1
                assert inv_mod(inv, p) == a

    def test_xgcd_identity(self):
        for a, b in [(12, 18), (35, 64), (1, 1), (0, 5), (97, 101)]:
            g, s, t = xgcd(a, b)
            assert s * a + t * b == g


class TestLegendre:
    def test_examples(self):
        assert legendre(4, 7) == 1
        assert legendre(0, 11) == 0
        # squares mod 7 are {1, 2, 4}; 3 is not among them
        assert sorted({a * a % 7 for a in range(1, 7)}) == [1, 2, 4]
        assert legendre(3, 7) == -1

    def test_against_square_enumeration(self):
        for p in ODD_PRIMES_TO_101:
            squares = {a * a % p for a in range(1, p)}
            for a in range(p):
                expect = 0 if a == 0 else (1 if a in squares else -1)
                assert legendre(a, p) == expect

    def test_multiplicative_exhaustive(self):
        for p in ODD_PRIMES_TO_101:
            for a in range(1, p):
                for b in range(1, p):
                    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)

    def test_p2(self):
        assert legendre(0, 2) == 0
        assert legendre(1, 2) == 1


class TestSqrt:
    def test_examples(self):
        assert sqrt_mod(4, 7) == (2, 5)
        assert sqrt_mod(0, 11) == (0, 0)
        assert sqrt_mod(3, 7) is None

    def test_p2_unsupported(self):
        with pytest.raises(UnsupportedModulusError):
            sqrt_mod(1, 2)
        with pytest.raises(UnsupportedModulusError):
            sqrt_table(2)

    def test_roots_square_back_exhaustive(self):
        for p in ODD_PRIMES_TO_101:
            for a in range(p):
                roots = sqrt_mod(a, p)
                if legendre(a, p) == -1:
                    assert roots is None
                else:
                    r, s = roots
                    assert r * r % p == a
                    assert s * s % p == a
                    assert r == min(r, p - r)  # principal first

    def test_tonelli_handles_1_mod_4_primes(self):
        # p % 4 == 1 exercises the full Tonelli-Shanks loop
        for p in (13, 17, 29, 73, 97):
            for a in range(p):
                roots = sqrt_mod(a, p)
                if roots is not None:
                    assert roots[0] ** 2 % p == a


class TestSqrtTable:
    def test_example_p5(self):
        assert sqrt_table(5) == {0: 0, 1: 1, 4: 2}

    def test_example_p3(self):
        assert sqrt_table(3) == {0: 0, 1: 1}

    def test_size_p13(self):
        assert len(sqrt_table(13)) == 7  # (13-1)/2 + 1

    def test_agrees_with_sqrt_mod_exhaustive(self):
        for p in ODD_PRIMES_TO_101:
            table = sqrt_table(p)
            assert len(table) == (p - 1) // 2 + 1
            arr = sqrt_array(p)
            for a in range(p):
                roots = sqrt_mod(a, p)
                if roots is None:
                    assert a not in table
                    assert arr[a] == -1
                else:
                    assert table[a] == roots[0]
                    assert arr[a] == roots[0]


class TestInverseArray:
    def test_matches_inv_mod(self):
        for p in ODD_PRIMES_TO_101:
            arr = inverse_array(p)
            assert arr[0] == 0
            for a in range(1, p):
                assert int(arr[a]) == inv_mod(a, p)


primes_strategy = st.sampled_from(ODD_PRIMES_TO_101)


class TestFieldElement:
    def test_canonicalizes(self):
        assert FieldElement(12, 5).residue == 2
        assert FieldElement(-1, 7).residue == 6

    def test_rejects_composite_modulus(self):
        with pytest.raises(ValueError):
            FieldElement(1, 6)

    def test_mismatched_moduli(self):
        with pytest.raises(ValueError, match="mismatched moduli"):
            FieldElement(1, 5) + FieldElement(1, 7)

    def test_int_coercion(self):
        a = FieldElement(3, 5)
        assert (a + 4).residue == 2
        assert (2 * a).residue == 1
        assert (1 / a).residue == 2

    def test_inverse_and_sqrt(self):
        a = FieldElement(3, 5)
        assert a.inverse() == FieldElement(2, 5)
        assert FieldElement(4, 7).sqrt() == (FieldElement(2, 7), FieldElement(5, 7))
        assert FieldElement(3, 7).sqrt() is None
        with pytest.raises(ZeroDivisionError):
            FieldElement(0, 5).inverse()

    @given(p=primes_strategy, a=st.integers(), b=st.integers())
    @settings(deadline=None)
    def test_commutativity_and_range(self, p, a, b):
        x, y = FieldElement(a, p), FieldElement(b, p)
        assert x + y == y + x
        assert x * y == y * x
        for value in (x + y, x * y, x - y, -x):
            assert 0 <= value.residue < p

    @given(p=primes_strategy, a=st.integers(), b=st.integers(), c=st.integers())
    @settings(deadline=None)
    def test_ring_identities(self, p, a, b, c):
        x, y, z = (FieldElement(v, p) for v in (a, b, c))
        assert x * (y + z) == x * y + x * z
        assert (x * y) * z == x * (y * z)

    @given(p=primes_strategy, a=st.integers())
    @settings(deadline=None)
    def test_inverse_roundtrip(self, p, a):
        x = FieldElement(a, p)
        if x.residue != 0:
            assert (x * x.inverse()).residue == 1
            assert x.inverse().inverse() == x

    @given(p=primes_strategy, a=st.integers(), b=st.integers())
    @settings(deadline=None)
    def test_legendre_multiplicative(self, p, a, b):
        x, y = FieldElement(a, p), FieldElement(b, p)
        if x.residue and y.residue:
            assert (x * y).legendre() == x.legendre() * y.legendre()
