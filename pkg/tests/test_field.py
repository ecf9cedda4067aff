import itertools
import random

import pytest

from nilkex.errors import ParameterError
from nilkex.field import (
    FieldElement,
    FieldSpec,
    GroupParams,
    Polynomial,
    ff_pow,
    is_prime,
    make_field,
    mult_order,
    param_search,
    root_of_unity,
)


def naive_irreducible(coeffs, s):
    """Trial division by every lower-degree polynomial over F_s.

    Independent of the library's own irreducibility test: plain long
    division over integer lists.  Only usable for tiny s**deg.
    """
    deg = len(coeffs) - 1
    if deg < 1:
        return False

    def divides(d, f):
        rem = list(f)
        dd = len(d) - 1
        lead_inv = pow(d[-1], -1, s)
        while len(rem) - 1 >= dd and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            factor = rem[-1] * lead_inv % s
            shift = len(rem) - 1 - dd
            for k, c in enumerate(d):
                rem[shift + k] = (rem[shift + k] - factor * c) % s
        return not any(rem)

    for low_deg in range(1, deg // 2 + 1):
        for tail in range(s**low_deg):
            d = []
            v = tail
            for _ in range(low_deg):
                d.append(v % s)
                v //= s
            d.append(1)
            if divides(d, coeffs):
                return False
    return True


def first_irreducible_lex(s, r):
    """Smallest monic degree-r irreducible over F_s, comparing the
    constant-first coefficient tuples lexicographically."""
    for low in itertools.product(range(s), repeat=r):
        coeffs = list(low) + [1]
        if naive_irreducible(coeffs, s):
            return tuple(coeffs)
    raise AssertionError("no irreducible found")


def test_is_prime_small_values():
    primes = {2, 3, 5, 7, 11, 13, 101, 607}
    for n in range(-3, 110):
        assert is_prime(n) == (n in primes or n in {17, 19, 23, 29, 31, 37, 41, 43,
                                                    47, 53, 59, 61, 67, 71, 73, 79,
                                                    83, 89, 97, 103, 107, 109})
    assert is_prime(7919)
    assert not is_prime(7917)


def test_make_field_prime_and_extension():
    f7 = make_field(7, 1)
    assert f7.q == 7
    assert f7.modulus[-1] == 1
    f343 = make_field(7, 3)
    assert f343.q == 343
    assert f343.modulus == (1, 0, 1, 1)


def test_field_modulus_matches_independent_lex_search():
    # the canonical modulus is the lex-least monic irreducible
    for s, r in ((7, 2), (7, 3), (3, 2), (5, 3), (11, 2)):
        assert make_field(s, r).modulus == first_irreducible_lex(s, r)


def test_make_field_rejects_bad_input():
    with pytest.raises(ParameterError):
        make_field(6, 2)
    with pytest.raises(ParameterError):
        make_field(7, 0)


def test_field_spec_rejects_reducible_modulus():
    with pytest.raises(ParameterError):
        FieldSpec(7, 2, (0, 0, 1))  # x^2
    with pytest.raises(ParameterError):
        FieldSpec(7, 2, (6, 0, 1))  # x^2 + 6 = (x - 1)(x + 1)


def test_field_spec_json_round_trip():
    spec = make_field(7, 3)
    obj = spec.to_json()
    assert obj["s"] == "7"
    assert obj["r"] == 3
    assert FieldSpec.from_json(obj) == spec


def test_prime_field_arithmetic_matches_ints():
    spec = make_field(101, 1)
    rng = random.Random(7)
    for _ in range(300):
        a = rng.randrange(101)
        b = rng.randrange(101)
        x = FieldElement(spec, a)
        y = FieldElement(spec, b)
        assert (x + y).coeffs == ((a + b) % 101,)
        assert (x - y).coeffs == ((a - b) % 101,)
        assert (x * y).coeffs == ((a * b) % 101,)
        if b:
            assert (x / y).coeffs == ((a * pow(b, -1, 101)) % 101,)


def test_field_axioms_on_extension_samples():
    spec = make_field(7, 3)
    rng = random.Random(11)
    elems = [FieldElement(spec, [rng.randrange(7) for _ in range(3)]) for _ in range(24)]
    one = spec.one()
    zero = spec.zero()
    for x in elems:
        assert x + zero == x
        assert x * one == x
        assert x - x == zero
        if x != zero:
            assert x * x.inverse() == one
    for x in elems[:10]:
        for y in elems[:10]:
            assert x + y == y + x
            assert x * y == y * x
            for z in elems[:5]:
                assert (x + y) * z == x * z + y * z
                assert (x * y) * z == x * (y * z)


def test_fermat_property_whole_field():
    # x**q = x for every element of F_49
    spec = make_field(7, 2)
    for x in spec.elements():
        assert ff_pow(x, 49) == x


def test_inverse_of_zero_raises():
    spec = make_field(7, 1)
    with pytest.raises(ZeroDivisionError):
        spec.zero().inverse()


def test_ff_pow_matches_repeated_multiplication():
    spec = make_field(5, 2)
    rng = random.Random(3)
    for _ in range(40):
        x = FieldElement(spec, [rng.randrange(5), rng.randrange(5)])
        acc = spec.one()
        for e in range(9):
            assert ff_pow(x, e) == acc
            acc = acc * x


def test_mult_order_divides_group_order_and_is_minimal():
    spec = make_field(7, 2)
    for x in spec.elements():
        if x == spec.zero():
            continue
        d = mult_order(x)
        assert 48 % d == 0
        assert ff_pow(x, d) == spec.one()
        for e in range(1, d):
            assert ff_pow(x, e) != spec.one()


def test_root_of_unity_goldens():
    f7 = make_field(7, 1)
    z3 = root_of_unity(f7, 3)
    assert z3.coeffs == (2,)
    assert mult_order(z3) == 3
    f343 = make_field(7, 3)
    z = root_of_unity(f343, 9)
    assert mult_order(z) == 9
    assert z.coeffs == (1, 0, 4)
    # order-9 elements cube to order-3 elements
    assert mult_order(ff_pow(z, 3)) == 3


def test_root_of_unity_rejects_non_divisor():
    f7 = make_field(7, 1)
    with pytest.raises(ParameterError):
        root_of_unity(f7, 4)  # 4 does not divide 6


def test_root_of_unity_canonical_choice_is_lex_least():
    # among all order-3 elements of F_7 (2 and 4), the lex-least is 2
    f7 = make_field(7, 1)
    candidates = [x for x in f7.elements() if x != f7.zero() and mult_order(x) == 3]
    assert root_of_unity(f7, 3) == min(candidates, key=lambda e: e.coeffs)


def test_param_search_goldens():
    g3 = param_search(3)
    assert (g3.p, g3.s, g3.r, g3.i) == (3, 7, 1, 2)
    assert g3.zeta_p.coeffs == (2,)
    assert g3.q == 7
    g5 = param_search(5)
    assert (g5.s, g5.r, g5.i) == (11, 1, 2)
    assert g5.zeta_p.coeffs == (3,)
    g7 = param_search(7)
    assert (g7.s, g7.r, g7.i) == (29, 1, 4)
    assert g7.zeta_p.coeffs == (7,)
    g101 = param_search(101)
    assert g101.s == 607
    assert g101.r == 1


def test_param_search_consistency_brute():
    # independent re-derivation: s is the least prime with p | s - 1
    # such that some i in [1, p) has s == (p+1)**i mod p**2 ... the
    # found q must satisfy q ≡ 1 mod p and q ≡ (p+1)^i mod p^2
    for p in (3, 5, 7, 13):
        g = param_search(p)
        assert g.q % p == 1
        assert pow(p + 1, g.i, p * p) == g.q % (p * p)
        assert 1 <= g.i < p
        assert mult_order(g.zeta_p) == p
        # no smaller prime field or extension of the same prime works
        for s in range(2, g.s):
            if not is_prime(s):
                continue
            ok = False
            for r in range(1, g.r + 1):
                q = s**r
                if q % p != 1:
                    continue
                for i in range(1, p):
                    if pow(p + 1, i, p * p) == q % (p * p):
                        ok = True
            assert not ok, f"param_search missed smaller field for p={p}"


def test_param_search_rejects_non_prime():
    with pytest.raises(ParameterError):
        param_search(9)
    with pytest.raises(ParameterError):
        param_search(2)


def test_param_search_exhausts_bound():
    from nilkex.errors import SearchExhaustedError

    with pytest.raises(SearchExhaustedError):
        param_search(101, search_bound=500)


def test_group_params_json_round_trip():
    g = param_search(3)
    obj = g.to_json()
    assert obj == {"s": 7, "r": 1, "i": 2, "zeta_p": [2]}
    back = GroupParams.from_json(obj, 3)
    assert back == g


def test_group_params_derived_quantities():
    g = param_search(3)
    assert g.m_root == 9
    assert g.n_rep == 3
    assert g.k == 4
    assert g.q == 7
    # q is congruent to k^i mod m_root, the realizability condition
    assert g.q % g.m_root == pow(g.k, g.i, g.m_root)


def test_polynomial_arithmetic():
    spec = make_field(7, 1)
    f = Polynomial(spec, [1, 2, 1])  # (x+1)^2
    g = Polynomial(spec, [6, 1])     # x - 1
    assert (f * g).coeffs == tuple(FieldElement(spec, c) for c in (6, 6, 1, 1))
    assert (f + g).coeffs == tuple(FieldElement(spec, c) for c in (0, 3, 1))
    assert f.degree == 2
    assert f.is_monic()
    h = Polynomial(spec, [5, 0, 0, 1])  # x^3 - 2
    x = FieldElement(spec, 3)
    assert h(x) == FieldElement(spec, (27 - 2) % 7)


def test_polynomial_power_matches_repeated_product():
    spec = make_field(7, 1)
    f = Polynomial(spec, [5, 0, 0, 1])
    acc = Polynomial(spec, [1])
    for e in range(4):
        assert f**e == acc
        acc = acc * f
