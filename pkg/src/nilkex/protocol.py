"""One-round tripartite key exchange on a group of nilpotency class 2.

Each party holds a private exponent and broadcasts (x^alpha, y^alpha)
for the shared public pair (x, y).  Because commutators with central
commutator subgroup are bilinear ([u^m, v] = [u, v]^m = [u, v^m]),
party A can combine B's x-power with C's y-power:

    [x^beta, y^gamma]^alpha = [x, y]^(alpha*beta*gamma)

and symmetrically for B and C, so all three land on the same key.

Group elements are duck-typed: anything with *, **, .inverse(), == and
an is_identity() works, so the same code simulates the protocol on
matrices and on normal forms, and the two runs can be compared through
the representation map.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import ParameterError, ProtocolError, SearchExhaustedError
from .field import FieldElement, GroupParams, make_field
from .matgroup import SquareMatrix, commutator, element_order
from .oracle import NormalForm, PresentationParams, SemigroupShape, validate_exponent
from .representation import Representation

__all__ = [
    "PublicBase",
    "PrivateKey",
    "Broadcast",
    "Transcript",
    "default_base",
    "keygen",
    "publish",
    "derive_key",
    "run_tripartite",
]

log = logging.getLogger(__name__)


def _commutator(u, v):
    # generic [u, v] for any group element type
    return u.inverse() * v.inverse() * u * v


@dataclass(frozen=True)
class PublicBase:
    """The session's public pair; [x, y] must be nontrivial or every
    derived key collapses to the identity."""

    x: object
    y: object
    params: object

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json()}


@dataclass(frozen=True)
class PrivateKey:
    owner: str
    alpha: int


@dataclass(frozen=True)
class Broadcast:
    owner: str
    x_pow: object
    y_pow: object

    def to_json(self) -> dict:
        return {
            "party": self.owner,
            "x_pow": self.x_pow.to_json(),
            "y_pow": self.y_pow.to_json(),
        }


@dataclass(frozen=True)
class Transcript:
    """Everything public about one protocol run.  Private exponents
    are deliberately absent; the attack harness consumes this type."""

    params: object
    base: PublicBase
    broadcasts: tuple
    derived_keys: tuple
    agreed: bool
    shared_key: object

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "base": self.base.to_json(),
            "broadcasts": [b.to_json() for b in self.broadcasts],
            "keys": [k.to_json() for k in self.derived_keys],
            "agreed": self.agreed,
            "shared_key": self.shared_key.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Transcript":
        try:
            params_obj = obj["params"]
            if "zeta_p" in params_obj:
                spec = make_field(int(params_obj["s"]), int(params_obj["r"]))
                elem = lambda o: SquareMatrix.from_json(o, spec)
                x = elem(obj["base"]["x"])
                params = GroupParams(
                    p=x.n,
                    spec=spec,
                    i=int(params_obj["i"]),
                    zeta_p=FieldElement(spec, params_obj["zeta_p"]),
                )
            elif "t" in params_obj:
                params = PresentationParams(
                    int(params_obj["p"]), int(params_obj["n"]), t=int(params_obj["t"])
                )
                elem = lambda o: NormalForm(params, int(o["i"]), int(o["j"]))
                x = elem(obj["base"]["x"])
            else:
                raise ParameterError("unrecognized transcript params")
            broadcasts = tuple(
                Broadcast(b["party"], elem(b["x_pow"]), elem(b["y_pow"]))
                for b in obj["broadcasts"]
            )
            if len(broadcasts) != 3:
                raise ParameterError(f"expected 3 broadcasts, got {len(broadcasts)}")
            return cls(
                params=params,
                base=PublicBase(x=x, y=elem(obj["base"]["y"]), params=params),
                broadcasts=broadcasts,
                derived_keys=tuple(elem(k) for k in obj["keys"]),
                agreed=bool(obj["agreed"]),
                shared_key=elem(obj["shared_key"]),
            )
        except ParameterError:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ParameterError(f"malformed transcript: {exc}") from exc


def default_base(rep: Representation) -> PublicBase:
    """The canonical public pair (sigma(a), sigma(c)): its commutator
    generates the whole center, giving the largest possible key space."""
    x, y = rep.sigma_a, rep.sigma_c
    p = rep.params.p
    k = commutator(x, y)
    if k.is_identity():
        raise ProtocolError("base pair commutes; shared keys would be trivial")
    if element_order(k, p * p) != p:
        raise ProtocolError(f"base commutator must have order {p}")
    return PublicBase(x=x, y=y, params=rep.params)


def keygen(
    params,
    shape: SemigroupShape | None,
    policy: str,
    candidate_stream,
    owner: str = "party",
) -> PrivateKey:
    """First candidate exponent the policy accepts.  Deterministic
    given the stream; feed a seeded generator or an explicit list."""
    p = params.p
    bound = p * p
    for alpha in candidate_stream:
        if not 2 <= alpha < bound:
            log.debug("candidate %d outside [2, %d); skipped", alpha, bound)
            continue
        accepted, reason = validate_exponent(alpha, p, shape, policy)
        if accepted:
            if policy == "coprime-only" and shape is not None:
                modulus = p**shape.modulus_exponent
                if alpha % modulus in (0, 1 % modulus):
                    log.warning(
                        "exponent %d lies in the exponent semigroup; "
                        "powering by it is a homomorphism (strict policy rejects this)",
                        alpha,
                    )
            return PrivateKey(owner=owner, alpha=alpha)
        log.debug("candidate %d rejected: %s", alpha, reason)
    raise SearchExhaustedError(
        f"candidate stream exhausted without an acceptable exponent for {owner}"
    )


def publish(base: PublicBase, key: PrivateKey) -> Broadcast:
    """The party's public message (x^alpha, y^alpha)."""
    return Broadcast(
        owner=key.owner,
        x_pow=base.x**key.alpha,
        y_pow=base.y**key.alpha,
    )


def derive_key(received_x_pow, received_y_pow, own: PrivateKey):
    """[received_x_pow, received_y_pow]^alpha: one party's view of the
    shared key, from the two other parties' broadcasts."""
    return _commutator(received_x_pow, received_y_pow) ** own.alpha


def run_tripartite(params, base: PublicBase, alphas) -> Transcript:
    """Simulate one full exchange with exponents (alpha, beta, gamma).

    A combines B's x-power with C's y-power, B combines A's x-power
    with C's y-power, C combines A's x-power with B's y-power.  The
    run asserts all three keys equal [x, y]^(alpha*beta*gamma); a
    disagreement raises with the transcript attached, since it can
    only mean broken arithmetic.
    """
    alphas = tuple(alphas)
    if len(alphas) != 3:
        raise ParameterError(f"need exactly 3 exponents, got {len(alphas)}")
    keys = [PrivateKey(owner, alpha) for owner, alpha in zip("ABC", alphas)]
    cast_a, cast_b, cast_c = (publish(base, k) for k in keys)
    derived = (
        derive_key(cast_b.x_pow, cast_c.y_pow, keys[0]),
        derive_key(cast_a.x_pow, cast_c.y_pow, keys[1]),
        derive_key(cast_a.x_pow, cast_b.y_pow, keys[2]),
    )
    expected = _commutator(base.x, base.y) ** (alphas[0] * alphas[1] * alphas[2])
    agreed = all(k == expected for k in derived)
    transcript = Transcript(
        params=params,
        base=base,
        broadcasts=(cast_a, cast_b, cast_c),
        derived_keys=derived,
        agreed=agreed,
        shared_key=derived[0],
    )
    if not agreed:
        raise ProtocolError("derived keys disagree", transcript=transcript)
    return transcript
