"""Arithmetic in prime fields F_s and extensions F_{s^r}, plus the
parameter search that fixes a matrix representation of the modular
group of order p**3.

Field elements are polynomial residues modulo a fixed monic irreducible
polynomial over F_s, stored as coefficient tuples of length exactly r
with the constant term first, so (3, 0, 5) means 3 + 5*t**2.  Every
value here is immutable and hashable, and every search (moduli, roots
of unity, primes) breaks ties lexicographically on coefficient tuples,
so repeated runs produce identical output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import ParameterError, SearchExhaustedError, ShapeError

__all__ = [
    "FieldSpec",
    "FieldElement",
    "Polynomial",
    "GroupParams",
    "is_prime",
    "make_field",
    "ff_pow",
    "mult_order",
    "root_of_unity",
    "param_search",
]

# Strong-pseudoprime bases making Miller-Rabin exact below 3.3e24,
# far beyond anything the desk-scale searches touch.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d = n - 1
    twos = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(twos - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as ((prime, exponent), ...)."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return tuple(factors)


# ---------------------------------------------------------------------------
# Low-level polynomial helpers on raw coefficient tuples (constant term
# first, trailing zeros stripped).  These exist below FieldSpec so the
# irreducibility search can run before any field object is built.

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmulmod(a, b, f, s):
    # product of a and b reduced mod the monic polynomial f, all over F_s
    if not a or not b:
        return ()
    conv = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                conv[i + j] += x * y
    deg_f = len(f) - 1
    for d in range(len(conv) - 1, deg_f - 1, -1):
        c = conv[d] % s
        if c:
            for k in range(deg_f):
                conv[d - deg_f + k] -= c * f[k]
        conv[d] = 0
    return _ptrim(v % s for v in conv[:deg_f])


def _ppowmod(a, e, f, s):
    result = (1,)
    base = a
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, s)
        base = _pmulmod(base, base, f, s)
        e >>= 1
    return result


def _pgcd(a, b, s):
    a, b = list(_ptrim(a)), list(_ptrim(b))
    while b:
        inv = pow(b[-1], -1, s)
        b = [(x * inv) % s for x in b]
        r = a
        while len(r) >= len(b):
            c = r[-1]
            shift = len(r) - len(b)
            for k in range(len(b)):
                r[shift + k] = (r[shift + k] - c * b[k]) % s
            r = list(_ptrim(r))
            if not r:
                break
        a, b = b, r
    return _ptrim(a)


def _is_irreducible(f, s):
    """Rabin's test for a monic polynomial f over F_s."""
    r = len(f) - 1
    if r == 1:
        return True
    t = (0, 1)
    if _ppowmod(t, s**r, f, s) != t:
        return False
    for d, _ in _factorize(r):
        w = _ppowmod(t, s ** (r // d), f, s)
        diff = _ptrim(
            (w[k] if k < len(w) else 0) - (t[k] if k < len(t) else 0)
            for k in range(max(len(w), len(t)))
        )
        diff = tuple(v % s for v in diff)
        if len(_pgcd(f, diff, s)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_q with q = s**r.

    modulus is the monic irreducible defining polynomial, as a
    coefficient tuple of length r + 1 with constant term first.
    """

    s: int
    r: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if self.s < 3 or self.s % 2 == 0 or not is_prime(self.s):
            raise ParameterError(f"characteristic {self.s} is not an odd prime")
        if self.r < 1:
            raise ParameterError(f"extension degree {self.r} must be >= 1")
        mod = tuple(int(c) % self.s for c in self.modulus)
        if len(mod) != self.r + 1 or mod[-1] != 1:
            raise ParameterError("modulus must be monic of degree r")
        object.__setattr__(self, "modulus", mod)
        if not _is_irreducible(mod, self.s):
            raise ParameterError(f"modulus {list(mod)} is reducible over F_{self.s}")

    @property
    def q(self) -> int:
        return self.s**self.r

    def element(self, value) -> "FieldElement":
        return FieldElement(self, value)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        """All q elements, in ascending coefficient-lexicographic order."""
        for coeffs in itertools.product(range(self.s), repeat=self.r):
            yield FieldElement(self, coeffs)

    def to_json(self) -> dict:
        return {"s": str(self.s), "r": self.r, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        try:
            return cls(int(obj["s"]), int(obj["r"]), tuple(obj["modulus"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed field spec: {exc}") from exc

    def __repr__(self):
        return f"FieldSpec(F_{self.q})" if self.r > 1 else f"FieldSpec(F_{self.s})"


@lru_cache(maxsize=None)
def _reduction_rows(spec: FieldSpec) -> tuple[tuple[int, ...], ...]:
    """t**d mod modulus for d in [r, 2r-2], each padded to length r."""
    rows = []
    for d in range(spec.r, 2 * spec.r - 1):
        row = _ppowmod((0, 1), d, spec.modulus, spec.s)
        rows.append(tuple(row[k] if k < len(row) else 0 for k in range(spec.r)))
    return tuple(rows)


class FieldElement:
    """An element of F_{s^r}: r residues mod s, constant term first."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, value):
        if isinstance(value, FieldElement):
            if value.spec != spec:
                raise ShapeError("element belongs to a different field")
            coeffs = value.coeffs
        elif isinstance(value, int):
            coeffs = (value % spec.s,) + (0,) * (spec.r - 1)
        else:
            raw = [int(c) % spec.s for c in value]
            if len(raw) > spec.r:
                raise ParameterError(
                    f"{len(raw)} coefficients for an extension of degree {spec.r}"
                )
            coeffs = tuple(raw + [0] * (spec.r - len(raw)))
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ShapeError("mixed-field arithmetic")
            return other
        if isinstance(other, int):
            return FieldElement(self.spec, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        s = self.spec.s
        return FieldElement(
            self.spec, tuple((a + b) % s for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        s = self.spec.s
        return FieldElement(self.spec, tuple((-a) % s for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        s = self.spec.s
        return FieldElement(
            self.spec, tuple((a - b) % s for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        spec = self.spec
        s = spec.s
        if spec.r == 1:
            return FieldElement(spec, ((self.coeffs[0] * o.coeffs[0]) % s,))
        conv = [0] * (2 * spec.r - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    conv[i + j] += x * y
        out = conv[: spec.r]
        for d, row in enumerate(_reduction_rows(spec), start=spec.r):
            c = conv[d]
            if c:
                out = [v + c * rv for v, rv in zip(out, row)]
        return FieldElement(spec, tuple(v % s for v in out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        return ff_pow(self, e)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return ff_pow(self, self.spec.q - 2)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = FieldElement(self.spec, other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.spec.s, self.spec.r))

    def __repr__(self):
        return f"FieldElement({list(self.coeffs)} in F_{self.spec.q})"

    def to_json(self) -> list:
        return list(self.coeffs)


def ff_pow(x: FieldElement, e: int) -> FieldElement:
    """x**e by square and multiply; e may be any integer (negative
    exponents invert first and therefore require x != 0)."""
    if e < 0:
        x = x.inverse()
        e = -e
    result = x.spec.one()
    base = x
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def mult_order(x: FieldElement) -> int:
    """Order of x in the multiplicative group F_q^*."""
    if x.is_zero():
        raise ParameterError("zero has no multiplicative order")
    d = x.spec.q - 1
    for prime, _ in _factorize(d):
        while d % prime == 0 and ff_pow(x, d // prime) == 1:
            d //= prime
    return d


@lru_cache(maxsize=None)
def _field_generator(spec: FieldSpec) -> FieldElement:
    """Lexicographically first generator of F_q^*."""
    target = spec.q - 1
    for x in spec.elements():
        if not x.is_zero() and mult_order(x) == target:
            return x
    raise ParameterError(f"no generator found in F_{spec.q}")  # unreachable


def root_of_unity(spec: FieldSpec, d: int) -> FieldElement:
    """The coefficient-lexicographically smallest element of
    multiplicative order exactly d."""
    if d < 1:
        raise ParameterError(f"root order {d} must be positive")
    if (spec.q - 1) % d != 0:
        raise ParameterError(f"no element of order {d} in F_{spec.q}")
    g = _field_generator(spec)
    step = (spec.q - 1) // d
    candidates = (
        ff_pow(g, step * k) for k in range(1, d + 1) if gcd(k, d) == 1
    )
    return min(candidates, key=lambda x: x.coeffs)


def make_field(s: int, r: int) -> FieldSpec:
    """F_{s^r} with the lexicographically smallest monic irreducible
    modulus of degree r, so the same (s, r) always names the same field."""
    if s % 2 == 0 or not is_prime(s):
        raise ParameterError(f"{s} is not an odd prime")
    if r < 1:
        raise ParameterError(f"extension degree {r} must be >= 1")
    if r == 1:
        return FieldSpec(s, 1, (0, 1))
    for tail in itertools.product(range(s), repeat=r):
        candidate = tail + (1,)
        if _is_irreducible(candidate, s):
            return FieldSpec(s, r, candidate)
    raise ParameterError(f"no irreducible polynomial of degree {r} over F_{s}")


@dataclass(frozen=True)
class GroupParams:
    """Everything needed to realize the modular group of order p**3 as
    p x p matrices over F_q: the base field, the exponent i with
    q = (p+1)**i mod p**2, and a primitive p-th root of unity zeta_p
    (the corner entry of the companion generator)."""

    p: int
    spec: FieldSpec
    i: int
    zeta_p: FieldElement

    @property
    def s(self) -> int:
        return self.spec.s

    @property
    def r(self) -> int:
        return self.spec.r

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def m_root(self) -> int:
        """Order of the generator a (and of the root zeta in the extension)."""
        return self.p * self.p

    @property
    def n_rep(self) -> int:
        """Order of the generator b; also the matrix dimension."""
        return self.p

    @property
    def k(self) -> int:
        return self.p + 1

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "r": self.r,
            "i": self.i,
            "zeta_p": self.zeta_p.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict, p: int) -> "GroupParams":
        try:
            spec = make_field(int(obj["s"]), int(obj["r"]))
            return cls(p, spec, int(obj["i"]), FieldElement(spec, obj["zeta_p"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed group params: {exc}") from exc


def param_search(p: int, search_bound: int = 1_000_000) -> GroupParams:
    """Smallest odd prime q = s with q = 1 mod p but q != 1 mod p**2,
    which makes the degree-p representation realizable over F_q, plus
    the matching exponent i and canonical root of unity."""
    if p % 2 == 0 or not is_prime(p):
        raise ParameterError(f"{p} is not an odd prime")
    if search_bound < p:
        raise ParameterError(f"search bound {search_bound} is below p = {p}")
    p2 = p * p
    s = None
    for candidate in range(3, search_bound + 1, 2):
        if candidate % p == 1 and candidate % p2 != 1 and is_prime(candidate):
            s = candidate
            break
    if s is None:
        raise SearchExhaustedError(
            f"no admissible prime below {search_bound} for p = {p}"
        )
    for i in range(1, p):
        if pow(p + 1, i, p2) == s % p2:
            break
    else:
        raise ParameterError(f"q = {s} is not a power of {p + 1} mod {p2}")
    spec = make_field(s, 1)
    return GroupParams(p=p, spec=spec, i=i, zeta_p=root_of_unity(spec, p))


class Polynomial:
    """A polynomial over a fixed field, coefficients constant term
    first with trailing zeros stripped (the zero polynomial has no
    coefficients and degree -1)."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs=()):
        elems = [FieldElement(spec, c) for c in coeffs]
        while elems and elems[-1].is_zero():
            elems.pop()
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coeffs", tuple(elems))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other):
        if not isinstance(other, Polynomial) or other.spec != self.spec:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.spec.zero()
        return Polynomial(
            self.spec,
            [
                (self.coeffs[k] if k < len(self.coeffs) else zero)
                + (other.coeffs[k] if k < len(other.coeffs) else zero)
                for k in range(n)
            ],
        )

    def __neg__(self):
        return Polynomial(self.spec, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Polynomial) or other.spec != self.spec:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = FieldElement(self.spec, other)
            return Polynomial(self.spec, [a * c for a in self.coeffs])
        if not isinstance(other, Polynomial) or other.spec != self.spec:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.spec)
        zero = self.spec.zero()
        conv = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    conv[i + j] = conv[i + j] + a * b
        return Polynomial(self.spec, conv)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ParameterError("negative polynomial powers are not defined")
        result = Polynomial(self.spec, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.spec.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, tuple(c.coeffs for c in self.coeffs)))

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            lead = "" if d and c == 1 else (
                str(c.coeffs[0]) if self.spec.r == 1 else str(list(c.coeffs))
            )
            terms.append(lead + ("" if d == 0 else f"*x^{d}" if lead else f"x^{d}"))
        return "Polynomial(" + " + ".join(reversed(terms)) + ")"

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]
