"""Matrix representations of the modular group of order p**3,
G = <a, c | a^{p^2} = c^p = 1, c^-1 a c = a^q>, over F_q with
q = 1 (mod p), q != 1 (mod p^2).

Two constructions are provided and cross-checked against each other:

* build_sigma gives the p x p form over the base field F_q itself:
  sigma(a) is the companion-type matrix of x^p - zeta_p and sigma(c)
  is diagonal.  Conjugating the companion matrix by diag(w^j) scales
  its subdiagonal by w^-1, while sigma(a)^q = zeta_p^i * sigma(a)
  (q = 1 + i*p mod p^2 and sigma(a)^p = zeta_p * I), so the relation
  c^-1 a c = a^q forces w = zeta_p^(p-i).  For p = 3 this is the
  familiar diag(1, zeta_p, zeta_p^2).

* build_rho_extension gives the induced form over the degree-p
  extension F_{q^p}: rho(a) diagonal on the Frobenius orbit of a
  primitive p^2-th root zeta, rho(c) a p-cycle.  conjugation_check
  verifies realizability over the base field by conjugating with the
  Vandermonde matrix of the orbit and testing that every entry lands
  in the embedded copy of F_q.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InternalCheckError,
    NilkexError,
    ParameterError,
    SizeGuardError,
)
from .field import (
    FieldElement,
    FieldSpec,
    GroupParams,
    Polynomial,
    _field_generator,
    ff_pow,
    is_prime,
    make_field,
)
from .matgroup import (
    SquareMatrix,
    char_poly,
    commutator,
    element_order,
    kronecker,
    mat_inv,
    mat_mul,
    mat_pow,
)

__all__ = [
    "Representation",
    "RelationReport",
    "TensorReport",
    "build_sigma",
    "verify_relations",
    "build_rho_extension",
    "conjugation_check",
    "tensor_analysis",
    "word_image",
]

_RELATION_CHECKS = ("a_order", "c_order", "conjugation", "commutator_order", "centrality")


@dataclass(frozen=True)
class Representation:
    params: GroupParams
    sigma_a: SquareMatrix
    sigma_c: SquareMatrix

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "sigma_a": self.sigma_a.to_json(),
            "sigma_c": self.sigma_c.to_json(),
        }


@dataclass(frozen=True)
class RelationReport:
    """Outcome of the five defining-relation checks.

    witnesses carries the commutator matrix plus, for any failed
    check, the offending values (JSON-ready).
    """

    a_order: bool
    c_order: bool
    conjugation: bool
    commutator_order: bool
    centrality: bool
    witnesses: dict

    @property
    def all_pass(self) -> bool:
        return all(getattr(self, name) for name in _RELATION_CHECKS)

    def to_json(self) -> dict:
        out = {name: getattr(self, name) for name in _RELATION_CHECKS}
        out["all_pass"] = self.all_pass
        out["witnesses"] = self.witnesses
        return out


def _validate_params(params: GroupParams):
    if params.p < 3 or not is_prime(params.p):
        raise ParameterError(f"p = {params.p} is not an odd prime")
    if not 1 <= params.i < params.p:
        raise ParameterError(f"i = {params.i} outside [1, p)")
    if params.zeta_p.spec != params.spec:
        raise ParameterError("zeta_p does not belong to the parameter field")
    if params.q % params.p != 1:
        raise ParameterError(f"q = {params.q} is not 1 mod p")


def build_sigma(params: GroupParams) -> Representation:
    """The p x p matrix form over F_q: a companion-type generator of
    order p**2 and a diagonal generator of order p."""
    _validate_params(params)
    p, spec, zeta = params.p, params.spec, params.zeta_p
    zero, one = spec.zero(), spec.one()
    rows_a = [[zero] * p for _ in range(p)]
    rows_a[0][p - 1] = zeta
    for k in range(1, p):
        rows_a[k][k - 1] = one
    w = ff_pow(zeta, (p - params.i) % p)
    rows_c = [
        [ff_pow(w, j) if j == k else zero for j in range(p)] for k in range(p)
    ]
    return Representation(
        params=params,
        sigma_a=SquareMatrix(spec, p, rows_a),
        sigma_c=SquareMatrix(spec, p, rows_c),
    )


def verify_relations(rep: Representation) -> RelationReport:
    """Check the defining relations a^{p^2} = I, c^p = I,
    c^-1 a c = a^q, plus centrality and order p of [a, c].

    Failures are reported, never raised, so deliberately corrupted
    representations can be inspected.
    """
    p, q = rep.params.p, rep.params.q
    a, c = rep.sigma_a, rep.sigma_c
    results = {}
    witnesses = {}

    def run(name, check):
        try:
            ok, witness = check()
        except NilkexError as exc:
            ok, witness = False, {"error": str(exc)}
        results[name] = ok
        if witness is not None:
            witnesses[name] = witness

    def a_order():
        d = element_order(a, p * p)
        return d == p * p, None if d == p * p else {"order": d}

    def c_order():
        d = element_order(c, p)
        return d == p, None if d == p else {"order": d}

    def conjugation():
        lhs = mat_mul(mat_mul(mat_inv(c), a), c)
        rhs = mat_pow(a, q)
        ok = lhs == rhs
        return ok, None if ok else {"conjugate": lhs.to_json(), "a_power": rhs.to_json()}

    def commutator_order():
        k = commutator(a, c)
        witnesses["commutator"] = k.to_json()
        ok = k.is_scalar() and not k.is_identity() and element_order(k, p) == p
        return ok, None

    def centrality():
        k = commutator(a, c)
        ok = mat_mul(k, a) == mat_mul(a, k) and mat_mul(k, c) == mat_mul(c, k)
        return ok, None

    run("a_order", a_order)
    run("c_order", c_order)
    run("conjugation", conjugation)
    run("commutator_order", commutator_order)
    run("centrality", centrality)
    return RelationReport(witnesses=witnesses, **results)


def build_rho_extension(params: GroupParams):
    """The induced representation over F_{q^p}: rho(a) diagonal on the
    Frobenius orbit of a primitive p^2-th root, rho(c) a p-cycle.

    Returns (rho_a, rho_c, extension_spec).
    """
    _validate_params(params)
    if params.r != 1:
        raise ParameterError("extension build requires a prime base field (r = 1)")
    p, q = params.p, params.q
    ext = make_field(params.s, p)
    order = p * p
    if (ext.q - 1) % order != 0:
        raise InternalCheckError(
            f"{order} does not divide |F_{ext.q}^*|; parameter search is broken"
        )
    embedded = FieldElement(ext, params.zeta_p.coeffs[0])
    g = _field_generator(ext)
    h = ff_pow(g, (ext.q - 1) // order)
    zeta = None
    for k in range(1, order):
        if k % p == 0:
            continue
        z = ff_pow(h, k)
        if ff_pow(z, p) == embedded and (zeta is None or z.coeffs < zeta.coeffs):
            zeta = z
    if zeta is None:
        raise InternalCheckError("no p^2-th root lifting zeta_p; zeta_p has wrong order")
    zero, one = ext.zero(), ext.one()
    nodes = [ff_pow(zeta, pow(q, j, order)) for j in range(p)]
    rows_a = [[nodes[k] if j == k else zero for j in range(p)] for k in range(p)]
    rows_c = [
        [one if k == (j + 1) % p else zero for j in range(p)] for k in range(p)
    ]
    return (
        SquareMatrix(ext, p, rows_a),
        SquareMatrix(ext, p, rows_c),
        ext,
    )


def conjugation_check(params: GroupParams, rho_a: SquareMatrix) -> bool:
    """Realizability over the base field: conjugate the diagonal rho(a)
    by the Vandermonde matrix of its entries and test that the result
    has every entry inside the embedded F_q."""
    p = params.p
    if rho_a.n != p:
        raise ParameterError(f"expected a {p} x {p} matrix")
    ext = rho_a.spec
    zero = ext.zero()
    for row in range(p):
        for col in range(p):
            if row != col and rho_a.entry(row, col) != zero:
                raise ParameterError("rho(a) must be diagonal")
    nodes = [rho_a.entry(j, j) for j in range(p)]
    if len({n.coeffs for n in nodes}) != p:
        raise ParameterError("diagonal entries must be distinct (Vandermonde nodes)")
    vand = SquareMatrix(
        ext, p, [[ff_pow(nodes[k], j) for j in range(p)] for k in range(p)]
    )
    conj = mat_mul(mat_mul(mat_inv(vand), rho_a), vand)
    return all(
        not any(conj.entry(row, col).coeffs[1:])
        for row in range(p)
        for col in range(p)
    )


@dataclass(frozen=True)
class TensorReport:
    """Characteristic polynomials of the three tensor squares, each
    against the eigenvalue-product pattern (x^p - const)^p, plus the
    irreducibility of x^p - zeta_p over the base field.

    aa_equals_ac_pattern records whether char(a (x) a) coincides with
    the (x^p - zeta_p)^p polynomial of a (x) c; the honest value is
    (x^p - zeta_p^2)^p, so this flag is normally False.
    """

    char_aa: Polynomial
    char_ac: Polynomial
    char_cc: Polynomial
    expected_aa: Polynomial
    expected_ac: Polynomial
    expected_cc: Polynomial
    aa_matches_product_formula: bool
    ac_matches_product_formula: bool
    cc_matches_product_formula: bool
    aa_equals_ac_pattern: bool
    irreducible: bool

    def to_json(self) -> dict:
        return {
            "char_aa": self.char_aa.to_json(),
            "char_ac": self.char_ac.to_json(),
            "char_cc": self.char_cc.to_json(),
            "expected_aa": self.expected_aa.to_json(),
            "expected_ac": self.expected_ac.to_json(),
            "expected_cc": self.expected_cc.to_json(),
            "aa_matches_product_formula": self.aa_matches_product_formula,
            "ac_matches_product_formula": self.ac_matches_product_formula,
            "cc_matches_product_formula": self.cc_matches_product_formula,
            "aa_equals_ac_pattern": self.aa_equals_ac_pattern,
            "irreducible": self.irreducible,
        }


def _binomial_power(spec: FieldSpec, p: int, const: FieldElement) -> Polynomial:
    """(x^p - const)^p, expanded."""
    base = Polynomial(spec, [-const] + [0] * (p - 1) + [1])
    return base**p


def tensor_analysis(rep: Representation) -> TensorReport:
    """Brute-force characteristic polynomials of sigma(a) (x) sigma(a),
    sigma(a) (x) sigma(c), sigma(c) (x) sigma(c)."""
    params = rep.params
    p, spec, zeta = params.p, params.spec, params.zeta_p
    if p > 7:
        raise SizeGuardError(
            f"tensor analysis runs char_poly on p^2 x p^2 matrices; p = {p} > 7"
        )
    char_aa = char_poly(kronecker(rep.sigma_a, rep.sigma_a))
    char_ac = char_poly(kronecker(rep.sigma_a, rep.sigma_c))
    char_cc = char_poly(kronecker(rep.sigma_c, rep.sigma_c))
    expected_aa = _binomial_power(spec, p, zeta * zeta)
    expected_ac = _binomial_power(spec, p, zeta)
    expected_cc = _binomial_power(spec, p, spec.one())
    return TensorReport(
        char_aa=char_aa,
        char_ac=char_ac,
        char_cc=char_cc,
        expected_aa=expected_aa,
        expected_ac=expected_ac,
        expected_cc=expected_cc,
        aa_matches_product_formula=char_aa == expected_aa,
        ac_matches_product_formula=char_ac == expected_ac,
        cc_matches_product_formula=char_cc == expected_cc,
        aa_equals_ac_pattern=char_aa == expected_ac,
        irreducible=ff_pow(zeta, (params.q - 1) // p) != spec.one(),
    )


def word_image(rep: Representation, a_exp: int, b_exp: int) -> SquareMatrix:
    """Image of the normal form a^i b^j under the representation,
    recovering sigma(b) as sigma(c) raised to the inverse of i mod p."""
    i_inv = pow(rep.params.i, -1, rep.params.p)
    sigma_b = mat_pow(rep.sigma_c, i_inv)
    return mat_mul(mat_pow(rep.sigma_a, a_exp), mat_pow(sigma_b, b_exp))
