import random

import pytest

from nilkex.errors import InternalCheckError, ParameterError, SizeGuardError
from nilkex.oracle import (
    NormalForm,
    PresentationParams,
    check_class2_identities,
    exponent_semigroup_brute,
    nf_commutator,
    nf_mul,
    nf_pow,
    validate_exponent,
)


def test_presentation_params_defaults():
    pp = PresentationParams(3, 3)
    assert pp.t == 4
    assert pp.t_inv == 7
    assert pp.a_order == 9
    assert pp.group_order == 27
    assert pp.exponent == 9
    pp5 = PresentationParams(5, 3)
    assert pp5.t == 6
    assert pp5.group_order == 125


def test_presentation_params_rejections():
    with pytest.raises(ParameterError):
        PresentationParams(4, 3)
    with pytest.raises(ParameterError):
        PresentationParams(3, 2)
    with pytest.raises(ParameterError):
        PresentationParams(3, 3, t=3)  # not a unit mod 9


def test_presentation_params_immutable_and_hashable():
    pp = PresentationParams(3, 3)
    with pytest.raises(AttributeError):
        pp.t = 5
    assert pp == PresentationParams(3, 3)
    assert hash(pp) == hash(PresentationParams(3, 3))
    assert pp != PresentationParams(3, 3, t=1)


def test_collection_goldens():
    pp = PresentationParams(3, 3)
    a = NormalForm(pp, 1, 0)
    c = NormalForm(pp, 0, 1)
    assert (a * c).i == 1 and (a * c).j == 1
    assert (c * a).i == 7 and (c * a).j == 1
    k = nf_commutator(a, c, pp)
    assert (k.i, k.j) == (3, 0)
    assert (a.inverse().i, a.inverse().j) == (8, 0)
    cube = nf_pow(a * c, 3, pp)
    assert (cube.i, cube.j) == (3, 0)


def test_normal_form_range_reduction():
    pp = PresentationParams(3, 3)
    assert NormalForm(pp, 10, 4) == NormalForm(pp, 1, 1)
    assert NormalForm(pp, -1, -1) == NormalForm(pp, 8, 2)


def test_group_laws_exhaustive_order_27():
    pp = PresentationParams(3, 3)
    elems = list(pp.elements())
    assert len(elems) == 27
    ident = pp.identity()
    for u in elems:
        assert u * ident == u
        assert ident * u == u
        assert u * u.inverse() == ident
        assert u.inverse() * u == ident
    for u in elems:
        for v in elems:
            for w in elems[::5]:
                assert (u * v) * w == u * (v * w)


def test_group_laws_sampled_order_3125():
    pp = PresentationParams(5, 5)
    assert pp.group_order == 3125
    rng = random.Random(17)
    ident = pp.identity()
    for _ in range(200):
        u = NormalForm(pp, rng.randrange(pp.a_order), rng.randrange(5))
        v = NormalForm(pp, rng.randrange(pp.a_order), rng.randrange(5))
        w = NormalForm(pp, rng.randrange(pp.a_order), rng.randrange(5))
        assert (u * v) * w == u * (v * w)
        assert u * u.inverse() == ident
        assert nf_pow(u, pp.exponent, pp) == ident


def test_defining_relations_hold():
    for p, n in ((3, 3), (5, 3), (3, 4), (7, 3)):
        pp = PresentationParams(p, n)
        a = NormalForm(pp, 1, 0)
        c = NormalForm(pp, 0, 1)
        ident = pp.identity()
        assert nf_pow(a, pp.a_order, pp) == ident
        assert nf_pow(c, p, pp) == ident
        assert c.inverse() * a * c == nf_pow(a, pp.t, pp)


def test_nf_pow_matches_repeated_multiplication():
    pp = PresentationParams(3, 4)
    rng = random.Random(23)
    for _ in range(30):
        u = NormalForm(pp, rng.randrange(27), rng.randrange(3))
        acc = pp.identity()
        for e in range(12):
            assert nf_pow(u, e, pp) == acc
            acc = acc * u


def test_nf_pow_negative_exponent():
    pp = PresentationParams(3, 3)
    u = NormalForm(pp, 5, 2)
    assert nf_pow(u, -1, pp) == u.inverse()
    assert nf_pow(u, -3, pp) == nf_pow(u.inverse(), 3, pp)


def test_commutator_is_central_and_bilinear():
    pp = PresentationParams(3, 3)
    elems = list(pp.elements())
    for u in elems[::4]:
        for v in elems[::4]:
            k = nf_commutator(u, v, pp)
            # central
            for w in elems[::7]:
                assert k * w == w * k
            # bilinear in the exponent
            for n in range(5):
                assert nf_pow(k, n, pp) == nf_commutator(nf_pow(u, n, pp), v, pp)
                assert nf_pow(k, n, pp) == nf_commutator(u, nf_pow(v, n, pp), pp)


def test_mismatched_presentations_rejected():
    pp = PresentationParams(3, 3)
    other = PresentationParams(5, 3)
    u = NormalForm(pp, 1, 0)
    v = NormalForm(other, 1, 0)
    with pytest.raises(ParameterError):
        nf_mul(u, v, pp)
    with pytest.raises(ParameterError):
        nf_mul(u, u, other)


def test_identity_check_passes_small_groups():
    r3 = check_class2_identities(PresentationParams(3, 3), 27)
    assert r3.passed
    assert not r3.sampled
    assert r3.counterexample is None
    assert r3.triples_checked == 27 * 27 * 27
    r5 = check_class2_identities(PresentationParams(5, 3), 10)
    assert r5.passed
    assert r5.triples_checked == 125 * 125 * 10


def test_identity_check_catches_corrupted_inverse_table():
    # t_inv = 2 has multiplicative order 6 mod 9, not 3, so j -> t_inv^j
    # is no longer a homomorphism and the collection law breaks; the
    # checker must produce a counterexample.  (t_inv = 4 would NOT do:
    # 4 has order 3, which just builds an isomorphic group.)
    pp = PresentationParams(3, 3, t_inv=2)  # true t_inv is 7
    report = check_class2_identities(pp, 9)
    assert not report.passed
    assert report.counterexample is not None
    assert report.counterexample["identity"]


def test_order_p_t_inv_override_still_a_group():
    # 4**3 = 64 = 1 mod 9: overriding t_inv with another order-3 unit
    # yields a genuine (isomorphic) group, so the identities hold
    pp = PresentationParams(3, 3, t_inv=4)
    assert check_class2_identities(pp, 9).passed


def test_identity_check_guard_and_sampling():
    big = PresentationParams(3, 7)
    with pytest.raises(SizeGuardError):
        check_class2_identities(big, big.exponent)
    sampled = check_class2_identities(big, big.exponent, sample_seed=5)
    assert sampled.passed
    assert sampled.sampled
    assert sampled.triples_checked == 20000
    # same seed, same verdict; sampling is deterministic
    again = check_class2_identities(big, big.exponent, sample_seed=5)
    assert again.triples_checked == sampled.triples_checked


def test_semigroup_shape_mod3():
    shape = exponent_semigroup_brute(PresentationParams(3, 3))
    assert shape.modulus_exponent == 1
    assert shape.raw_set == (0, 1, 3, 4, 6, 7)


def test_semigroup_shape_mod5():
    shape = exponent_semigroup_brute(PresentationParams(5, 3))
    assert shape.modulus_exponent == 1
    assert shape.raw_set == tuple(n for n in range(25) if n % 5 in (0, 1))


def test_semigroup_shape_abelian_degenerate():
    shape = exponent_semigroup_brute(PresentationParams(3, 3, t=1))
    assert shape.modulus_exponent == 0
    assert shape.raw_set == tuple(range(9))


def test_semigroup_shape_against_direct_recount():
    # independent recount with nf_mul/nf_pow instead of the module's
    # internal enumeration
    pp = PresentationParams(3, 3)
    shape = exponent_semigroup_brute(pp)
    elems = list(pp.elements())
    members = []
    for n in range(pp.exponent):
        if all(nf_pow(x * y, n, pp) == nf_pow(x, n, pp) * nf_pow(y, n, pp)
               for x in elems for y in elems):
            members.append(n)
    assert shape.raw_set == tuple(members)


def test_semigroup_guard():
    with pytest.raises(SizeGuardError):
        exponent_semigroup_brute(PresentationParams(11, 4))


def test_semigroup_json():
    shape = exponent_semigroup_brute(PresentationParams(3, 3))
    assert shape.to_json() == {"modulus_exponent": 1, "raw_set": [0, 1, 3, 4, 6, 7]}


def test_validate_exponent_coprime_policy():
    shape = exponent_semigroup_brute(PresentationParams(3, 3))
    assert validate_exponent(2, 3, shape) == (True, None)
    assert validate_exponent(5, 3, shape)[0]
    assert not validate_exponent(6, 3, shape)[0]
    assert not validate_exponent(3, 3, shape)[0]
    assert not validate_exponent(0, 3, shape)[0]
    assert not validate_exponent(-2, 3, shape)[0]
    # without a shape the coprime policy still works
    assert validate_exponent(2, 3, None) == (True, None)


def test_validate_exponent_strict_policy():
    shape = exponent_semigroup_brute(PresentationParams(3, 3))
    accepted, reason = validate_exponent(4, 3, shape, "strict")
    assert not accepted
    assert reason
    assert validate_exponent(5, 3, shape, "strict")[0]
    assert validate_exponent(2, 3, shape, "strict")[0]
    assert not validate_exponent(7, 3, shape, "strict")[0]  # 7 = 1 mod 3
    with pytest.raises(ParameterError):
        validate_exponent(2, 3, None, "strict")


def test_validate_exponent_unknown_policy():
    with pytest.raises(ParameterError):
        validate_exponent(2, 3, None, "lenient")


def test_corrupted_t_inv_breaks_fit_detection():
    # with a broken collection law the raw set loses the two-residue
    # shape and the fit must fail loudly rather than report a bogus
    # exponent, or at minimum disagree with the healthy shape
    pp = PresentationParams(3, 3, t_inv=2)
    try:
        shape = exponent_semigroup_brute(pp)
    except InternalCheckError:
        return
    assert shape.raw_set != (0, 1, 3, 4, 6, 7)
