"""Matrix-free ground truth for the modular group family
Mod_n(p) = <a, b | a^{p^{n-1}} = b^p = 1, b^-1 a b = a^t>,
t = 1 + p^{n-2}: every element has a unique normal form a^i b^j,
and multiplication collects b past a using b^j a = a^{t_inv^j} b^j.

Collection is O(1) per product, exact for any exponent size, and
shares no code with the matrix path, which is what makes the
cross-validation tests meaningful.  This module also hosts the
exhaustive class-2 identity checker ([x,y]^n = [x^n,y] = [x,y^n] and
(xy)^n = x^n y^n [y,x]^(n(n-1)/2)) and the brute-force computation of
the exponent semigroup {n : (xy)^n = x^n y^n for all x, y}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .errors import InternalCheckError, ParameterError, SizeGuardError
from .field import is_prime

__all__ = [
    "PresentationParams",
    "NormalForm",
    "IdentityReport",
    "SemigroupShape",
    "nf_mul",
    "nf_pow",
    "nf_commutator",
    "check_class2_identities",
    "exponent_semigroup_brute",
    "validate_exponent",
    "POLICIES",
]

POLICIES = ("coprime-only", "strict")

# Exhaustive identity checking is refused above this many (x, y, n) triples.
PAIR_EXPONENT_GUARD = 1_000_000
# exponent_semigroup_brute is refused above this group order.
SEMIGROUP_ORDER_GUARD = 10_000

_SAMPLE_TRIPLES = 20_000


def _raw_mul(x, y, a_order, p, t_inv_pows):
    # (i1, j1) * (i2, j2) = (i1 + i2 * t_inv**j1, j1 + j2)
    return (x[0] + y[0] * t_inv_pows[x[1]]) % a_order, (x[1] + y[1]) % p


class PresentationParams:
    """Constants of one presentation: the prime p, the index n (the
    group has order p**n), the conjugation exponent t and its inverse
    mod p**(n-1).

    t defaults to 1 + p**(n-2) and may be overridden (t = 1 gives the
    abelian degenerate used to exercise the semigroup analysis); t_inv
    may be overridden independently, which deliberately breaks the
    group law, for mutation tests of the identity checker.
    """

    __slots__ = ("p", "n", "t", "t_inv", "a_order", "t_inv_pows")

    def __init__(self, p: int, n: int, t: int | None = None, t_inv: int | None = None):
        if p < 3 or not is_prime(p):
            raise ParameterError(f"p = {p} is not an odd prime")
        if n < 3:
            raise ParameterError(f"presentation index n = {n} must be >= 3")
        a_order = p ** (n - 1)
        if t is None:
            t = (1 + p ** (n - 2)) % a_order
        t %= a_order
        if gcd(t, a_order) != 1:
            raise ParameterError(f"conjugation exponent t = {t} is not a unit")
        if t_inv is None:
            t_inv = pow(t, -1, a_order)
        t_inv %= a_order
        self.p = p
        self.n = n
        self.t = t
        self.t_inv = t_inv
        self.a_order = a_order
        self.t_inv_pows = tuple(pow(t_inv, j, a_order) for j in range(p))

    def __setattr__(self, name, value):
        if name in self.__slots__ and hasattr(self, "t_inv_pows"):
            raise AttributeError("PresentationParams is immutable")
        object.__setattr__(self, name, value)

    @property
    def group_order(self) -> int:
        return self.p**self.n

    @property
    def exponent(self) -> int:
        """exp(G) = p**(n-1), the order of the generator a."""
        return self.a_order

    def identity(self) -> "NormalForm":
        return NormalForm(self, 0, 0)

    def element(self, i: int, j: int) -> "NormalForm":
        return NormalForm(self, i, j)

    def elements(self):
        """All p**n normal forms, a-exponent major."""
        for i in range(self.a_order):
            for j in range(self.p):
                yield NormalForm(self, i, j)

    def __eq__(self, other):
        if not isinstance(other, PresentationParams):
            return NotImplemented
        return (self.p, self.n, self.t, self.t_inv) == (
            other.p,
            other.n,
            other.t,
            other.t_inv,
        )

    def __hash__(self):
        return hash((self.p, self.n, self.t, self.t_inv))

    def __repr__(self):
        return f"PresentationParams(p={self.p}, n={self.n}, t={self.t})"

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "t": self.t}


class NormalForm:
    """The element a^i b^j, 0 <= i < p**(n-1), 0 <= j < p."""

    __slots__ = ("pp", "i", "j")

    def __init__(self, pp: PresentationParams, i: int, j: int):
        object.__setattr__(self, "pp", pp)
        object.__setattr__(self, "i", i % pp.a_order)
        object.__setattr__(self, "j", j % pp.p)

    def __setattr__(self, name, value):
        raise AttributeError("NormalForm is immutable")

    def __mul__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        if other.pp != self.pp:
            raise ParameterError("normal forms from different presentations")
        pp = self.pp
        i, j = _raw_mul(
            (self.i, self.j), (other.i, other.j), pp.a_order, pp.p, pp.t_inv_pows
        )
        return NormalForm(pp, i, j)

    def inverse(self) -> "NormalForm":
        # solve (i', j') * (i, j) = identity for i' given j' = -j
        pp = self.pp
        jn = (-self.j) % pp.p
        return NormalForm(pp, -self.i * pp.t_inv_pows[jn], jn)

    def __pow__(self, e: int):
        return nf_pow(self, e, self.pp)

    def is_identity(self) -> bool:
        return self.i == 0 and self.j == 0

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.pp == other.pp and self.i == other.i and self.j == other.j

    def __hash__(self):
        return hash((self.i, self.j, self.pp.p, self.pp.n))

    def __repr__(self):
        return f"NormalForm(i={self.i}, j={self.j})"

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j}


def _check_pp(u: NormalForm, v: NormalForm | None, pp: PresentationParams):
    if u.pp != pp or (v is not None and v.pp != pp):
        raise ParameterError("normal form does not belong to the given presentation")


def nf_mul(u: NormalForm, v: NormalForm, pp: PresentationParams) -> NormalForm:
    """Collected product u * v."""
    _check_pp(u, v, pp)
    return u * v


def nf_pow(u: NormalForm, e: int, pp: PresentationParams) -> NormalForm:
    """u**e by repeated squaring; negative exponents invert first."""
    _check_pp(u, None, pp)
    if e < 0:
        u = u.inverse()
        e = -e
    result = pp.identity()
    base = u
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def nf_commutator(u: NormalForm, v: NormalForm, pp: PresentationParams) -> NormalForm:
    """[u, v] = u**-1 v**-1 u v."""
    _check_pp(u, v, pp)
    return u.inverse() * v.inverse() * u * v


@dataclass(frozen=True)
class IdentityReport:
    passed: bool
    triples_checked: int
    sampled: bool
    counterexample: dict | None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "triples_checked": self.triples_checked,
            "sampled": self.sampled,
            "counterexample": self.counterexample,
        }


def check_class2_identities(
    pp: PresentationParams,
    exponent_range: int,
    sample_seed: int | None = None,
) -> IdentityReport:
    """Verify, for pairs (x, y) and exponents 0 <= n < exponent_range,
    the two class-2 identities

        [x, y]^n = [x^n, y] = [x, y^n]
        (xy)^n   = x^n y^n [y, x]^(n(n-1)/2)

    Exhaustive when pairs * exponent_range fits the guard; above the
    guard a seeded sample of triples is used if sample_seed is given,
    otherwise the check is refused.
    """
    order = pp.group_order
    total = order * order * exponent_range
    a_order, p, tpows = pp.a_order, pp.p, pp.t_inv_pows

    def mul(x, y):
        return _raw_mul(x, y, a_order, p, tpows)

    def inv(x):
        jn = (-x[1]) % p
        return (-x[0] * tpows[jn]) % a_order, jn

    def pw(x, e):
        r, b = (0, 0), x
        while e:
            if e & 1:
                r = mul(r, b)
            e >>= 1
            if e:
                b = mul(b, b)
        return r

    def comm(x, y):
        return mul(mul(mul(inv(x), inv(y)), x), y)

    def examine(x, y, n, tab_n, tab_tri):
        xn, yn = tab_n[x], tab_n[y]
        k = comm(x, y)
        kn = tab_n[k]
        if kn != comm(xn, y):
            return {"identity": "[x,y]^n = [x^n,y]", "x": x, "y": y, "n": n}
        if kn != comm(x, yn):
            return {"identity": "[x,y]^n = [x,y^n]", "x": x, "y": y, "n": n}
        lhs = tab_n[mul(x, y)]
        rhs = mul(mul(xn, yn), tab_tri[comm(y, x)])
        if lhs != rhs:
            return {"identity": "(xy)^n = x^n y^n [y,x]^(n(n-1)/2)", "x": x, "y": y, "n": n}
        return None

    def report(counter, count, sampled):
        if counter is not None:
            counter = {
                "identity": counter["identity"],
                "x": {"i": counter["x"][0], "j": counter["x"][1]},
                "y": {"i": counter["y"][0], "j": counter["y"][1]},
                "n": counter["n"],
            }
        return IdentityReport(
            passed=counter is None,
            triples_checked=count,
            sampled=sampled,
            counterexample=counter,
        )

    elements = [(i, j) for i in range(a_order) for j in range(p)]

    if total > PAIR_EXPONENT_GUARD:
        if sample_seed is None:
            raise SizeGuardError(
                f"{total} pair-exponent triples exceed the guard of "
                f"{PAIR_EXPONENT_GUARD}; pass a sample seed to check a sample"
            )
        rng = random.Random(sample_seed)
        count = 0
        for _ in range(_SAMPLE_TRIPLES):
            x = elements[rng.randrange(order)]
            y = elements[rng.randrange(order)]
            n = rng.randrange(exponent_range)
            tab_n = {g: pw(g, n) for g in (x, y, comm(x, y), mul(x, y))}
            tab_tri = {comm(y, x): pw(comm(y, x), n * (n - 1) // 2)}
            count += 1
            counter = examine(x, y, n, tab_n, tab_tri)
            if counter is not None:
                return report(counter, count, True)
        return report(None, count, True)

    count = 0
    for n in range(exponent_range):
        tab_n = {g: pw(g, n) for g in elements}
        tri = n * (n - 1) // 2
        tab_tri = {g: pw(g, tri) for g in elements}
        for x in elements:
            for y in elements:
                count += 1
                counter = examine(x, y, n, tab_n, tab_tri)
                if counter is not None:
                    return report(counter, count, False)
    return report(None, count, False)


@dataclass(frozen=True)
class SemigroupShape:
    """The set E(G) = {n : (xy)^n = x^n y^n for all x, y}, reduced mod
    exp(G), together with the exponent e such that E(G) is exactly the
    union of 0 and 1 residues mod p**e."""

    modulus_exponent: int
    raw_set: tuple

    def to_json(self) -> dict:
        return {
            "modulus_exponent": self.modulus_exponent,
            "raw_set": list(self.raw_set),
        }


def exponent_semigroup_brute(pp: PresentationParams) -> SemigroupShape:
    """Compute E(G) by checking every pair, then fit the two-residue
    shape.  The shape must fit for these groups; a failed fit raises,
    since it can only mean the collection arithmetic is broken."""
    order = pp.group_order
    if order > SEMIGROUP_ORDER_GUARD:
        raise SizeGuardError(
            f"group order {order} exceeds the exhaustive guard of "
            f"{SEMIGROUP_ORDER_GUARD}"
        )
    a_order, p, tpows = pp.a_order, pp.p, pp.t_inv_pows

    def mul(x, y):
        return _raw_mul(x, y, a_order, p, tpows)

    def pw(x, e):
        r, b = (0, 0), x
        while e:
            if e & 1:
                r = mul(r, b)
            e >>= 1
            if e:
                b = mul(b, b)
        return r

    elements = [(i, j) for i in range(a_order) for j in range(p)]
    period = pp.exponent
    raw = []
    for n in range(period):
        tab = {g: pw(g, n) for g in elements}
        if all(
            mul(tab[x], tab[y]) == tab[mul(x, y)] for x in elements for y in elements
        ):
            raw.append(n)

    raw_set = tuple(raw)
    e_exp = 0
    while p**e_exp <= period:
        modulus = p**e_exp
        expected = tuple(
            m for m in range(period) if m % modulus in (0, 1 % modulus)
        )
        if expected == raw_set:
            return SemigroupShape(modulus_exponent=e_exp, raw_set=raw_set)
        e_exp += 1
    raise InternalCheckError(
        f"exponent semigroup {raw} does not fit the two-residue shape; "
        "the collection arithmetic is broken"
    )


def validate_exponent(
    alpha: int, p: int, shape: SemigroupShape | None, policy: str = "coprime-only"
):
    """Decide whether a private exponent is usable.

    Returns (accepted, reason); reason is None on acceptance.  The
    coprime-only policy rejects multiples of p.  The strict policy
    additionally rejects exponents inside the semigroup shape, where
    powering is a homomorphism and the broadcast leaks structure.
    """
    if policy not in POLICIES:
        raise ParameterError(f"unknown policy {policy!r}; choose from {POLICIES}")
    if alpha < 1:
        return False, f"exponent {alpha} is not positive"
    if gcd(alpha, p) != 1:
        return False, f"exponent {alpha} shares a factor with p = {p}"
    if policy == "strict":
        if shape is None:
            raise ParameterError("strict policy requires a semigroup shape")
        modulus = p**shape.modulus_exponent
        if alpha % modulus in (0, 1 % modulus):
            return False, (
                f"exponent {alpha} lies in the exponent semigroup "
                f"(residue {alpha % modulus} mod {modulus})"
            )
    return True, None
