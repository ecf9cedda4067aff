"""The desk-scale adversary.

Everything here consumes only public data.  The pivotal weakness is
center reduction: from a broadcast x^alpha anyone can compute
[x^alpha, y] = [x, y]^alpha, converting a discrete logarithm in the
matrix group into one in the cyclic center of order p, where
baby-step giant-step finishes in about 2*sqrt(p) multiplications.
Recovering gamma mod p from [x, y]^gamma and combining it with
[x, y]^(alpha*beta) = [x^alpha, y^beta] reconstructs the shared key
exactly, which is the concrete demonstration that these parameters
offer no security at this scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import SearchExhaustedError, SizeGuardError
from .protocol import Transcript

__all__ = [
    "DlpInstance",
    "DlpResult",
    "KeyRecoveryReport",
    "dlp_exhaustive",
    "dlp_bsgs",
    "reduce_to_center",
    "cdh_note",
    "semigroup_search",
]

DLP_ORDER_GUARD = 1_000_000
BSGS_TABLE_GUARD = 1_000_000


@dataclass(frozen=True)
class DlpInstance:
    """Find e with g**e = h, given the order of <g>."""

    g: object
    h: object
    order: int


@dataclass(frozen=True)
class DlpResult:
    exponent: int | None
    group_ops: int

    @property
    def found(self) -> bool:
        return self.exponent is not None


def dlp_exhaustive(inst: DlpInstance) -> DlpResult:
    """Walk g^0, g^1, ... and compare; the baseline oracle."""
    if inst.order > DLP_ORDER_GUARD:
        raise SizeGuardError(
            f"order {inst.order} exceeds the exhaustive guard {DLP_ORDER_GUARD}"
        )
    current = inst.g**0
    ops = 0
    for e in range(inst.order):
        if current == inst.h:
            return DlpResult(exponent=e, group_ops=ops)
        current = current * inst.g
        ops += 1
    return DlpResult(exponent=None, group_ops=ops)


def dlp_bsgs(inst: DlpInstance) -> DlpResult:
    """Baby-step giant-step; at most about 2*sqrt(order) group
    multiplications and the same number of table entries."""
    m = isqrt(inst.order - 1) + 1 if inst.order > 1 else 1
    if m > BSGS_TABLE_GUARD:
        raise SizeGuardError(f"BSGS table of {m} entries exceeds the memory guard")
    ops = 0
    table = {}
    current = inst.g**0
    for j in range(m):
        if current not in table:
            table[current] = j
        current = current * inst.g
        ops += 1
    # current is now g**m; step the target down by g**-m each round
    giant_step = current.inverse()
    ops += 1
    gamma = inst.h
    for i in range((inst.order - 1) // m + 1):
        j = table.get(gamma)
        if j is not None:
            return DlpResult(exponent=i * m + j, group_ops=ops)
        gamma = gamma * giant_step
        ops += 1
    return DlpResult(exponent=None, group_ops=ops)


def reduce_to_center(x_pow, y):
    """[x^alpha, y] = [x, y]^alpha: moves the exponent onto the
    order-p center, where the DLP is tiny."""
    return x_pow.inverse() * y.inverse() * x_pow * y


@dataclass(frozen=True)
class KeyRecoveryReport:
    recovered_key: object
    matches: bool
    group_ops: int
    method: str

    def to_json(self) -> dict:
        return {
            "recovered_key": self.recovered_key.to_json(),
            "matches": self.matches,
            "group_ops": self.group_ops,
            "method": self.method,
        }


def cdh_note(transcript: Transcript, solver: str = "bsgs") -> KeyRecoveryReport:
    """Reconstruct the shared key from broadcasts alone.

    [x^alpha, y^beta] gives [x, y]^(alpha*beta); a center DLP on
    [x, y^gamma] = [x, y]^gamma recovers gamma mod p, which is all of
    gamma that the key depends on.  group_ops counts the DLP work.
    """
    cast_a, cast_b, cast_c = transcript.broadcasts
    base = transcript.base
    key_ab = reduce_to_center(cast_a.x_pow, cast_b.y_pow)
    key_c = reduce_to_center(base.x, cast_c.y_pow)
    center_gen = reduce_to_center(base.x, base.y)
    instance = DlpInstance(g=center_gen, h=key_c, order=transcript.params.p)
    solve = {"bsgs": dlp_bsgs, "exhaustive": dlp_exhaustive}[solver]
    result = solve(instance)
    if not result.found:
        raise SearchExhaustedError(
            "no exponent solves the center DLP; transcript is not a protocol run"
        )
    recovered = key_ab**result.exponent
    return KeyRecoveryReport(
        recovered_key=recovered,
        matches=recovered == transcript.shared_key,
        group_ops=result.group_ops,
        method=f"center-reduction+{solver}",
    )


def semigroup_search(key_public, target, shape, p: int, bound: int):
    """Scan the exponents n = a*p**e and a*p**e + 1 (the two-residue
    shape of the exponent semigroup) for one with key_public**n =
    target; returns the exponent or None once past the bound."""
    modulus = p**shape.modulus_exponent
    a = 1
    while a * modulus <= bound:
        for n in (a * modulus, a * modulus + 1):
            if n <= bound and key_public**n == target:
                return n
        a += 1
    return None
