"""Certified membership in the classes of the stupid weight structure."""
from __future__ import annotations

from dataclasses import dataclass

from ..addcat import CategorySpec
from ..errors import UnsupportedRing
from ..complexes import (
    Complex,
    EquivalenceCertificate,
    minimal_model,
    pad_to_spec,
    same_complex,
    shift,
    shift_certificate,
)
from .truncation import required_range, support_within

SIDES = ("w<=", "w>=", "w=")


@dataclass(frozen=True)
class WeightClassQuery:
    side: str
    level: int
    complex: Complex

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")


@dataclass
class MembershipCertificate:
    """``equivalence: representative -> queried complex``.

    For ``w=`` the representative is a single-degree complex when one
    exists.  Otherwise it lies in the ``w>=`` range and ``companion``
    carries a ``w<=`` representative of the same complex.
    """

    side: str
    level: int
    representative: Complex
    equivalence: EquivalenceCertificate
    companion: "MembershipCertificate | None" = None

    def verify(self, M: Complex | None = None, spec: CategorySpec | None = None) -> bool:
        rep = self.representative
        target = self.equivalence.target
        if M is not None and not same_complex(target, M):
            return False
        if not same_complex(self.equivalence.source, rep) or not self.equivalence.verify():
            return False
        if spec is not None and not all(spec.base().contains(t) or t.size == 0 for t in rep.terms):
            return False
        if self.side == "w=" and self.companion is not None:
            lo, hi = required_range("w>=", self.level)
            return (support_within(rep, lo, hi) and self.companion.side == "w<="
                    and self.companion.verify(target, spec))
        lo, hi = required_range(self.side, self.level)
        return support_within(rep, lo, hi)


def _in_spec(M: Complex, spec: CategorySpec) -> bool:
    base = spec.base()
    return all(base.contains(t) or t.size == 0 for t in M.terms)


def _certify_level0(M: Complex, side: str, spec: CategorySpec, model=None):
    """Level-0 certificate for ``w<=`` or ``w>=`` (no ``w=``)."""
    lo, hi = required_range(side, 0)
    if support_within(M, lo, hi) and _in_spec(M, spec):
        return MembershipCertificate(side, 0, M, EquivalenceCertificate.identity(M))
    H, cert = model if model is not None else minimal_model(M)
    if not support_within(H, lo, hi):
        return None
    if side == "w<=":
        window = (0, max(M.max_degree if M.terms else 0, 0) + 1)
    else:
        window = (min(M.min_degree if M.terms else 0, 0) - 1, 0)
    padded = pad_to_spec(H, spec, window)
    if padded is None:
        return None
    P, to_h = padded
    return MembershipCertificate(side, 0, P, to_h.then(cert.inverse()))


def weight_membership(q: WeightClassQuery, spec: CategorySpec | None = None) -> MembershipCertificate | None:
    """Certificate that ``q.complex`` lies in the queried class, or ``None``.

    Level ``n`` is answered by shifting: ``M`` is in the level-``n`` class iff
    ``M[-n]`` is in the level-0 class.
    """
    M = q.complex
    spec = M.spec if spec is None else spec
    if not M.ring.is_field_like:
        raise UnsupportedRing(f"weight membership over {M.ring} is refused")
    n = q.level
    N = shift(M, -n)
    cert = _membership_level0(N, q.side, spec)
    if cert is None or n == 0:
        return cert
    return _shift_cert(cert, n)


def _shift_cert(c: MembershipCertificate, n: int) -> MembershipCertificate:
    return MembershipCertificate(
        c.side, c.level + n, shift(c.representative, n), shift_certificate(c.equivalence, n),
        None if c.companion is None else _shift_cert(c.companion, n))


def _membership_level0(N: Complex, side: str, spec: CategorySpec):
    if side != "w=":
        return _certify_level0(N, side, spec)
    model = minimal_model(N)
    ge = _certify_level0(N, "w>=", spec, model)
    if ge is None:
        return None
    le = _certify_level0(N, "w<=", spec, model)
    if le is None:
        return None
    for c in (ge, le):
        if support_within(c.representative, 0, 0):
            return MembershipCertificate("w=", 0, c.representative, c.equivalence)
    H, cert = model
    single = pad_to_spec(H, spec, (0, 0))
    if single is not None:
        P, to_h = single
        return MembershipCertificate("w=", 0, P, to_h.then(cert.inverse()))
    return MembershipCertificate("w=", 0, ge.representative, ge.equivalence, le)


def is_member(M: Complex, side: str, level: int = 0, spec: CategorySpec | None = None) -> bool:
    return weight_membership(WeightClassQuery(side, level, M), spec) is not None
