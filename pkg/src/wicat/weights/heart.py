"""The heart of the stupid weight structure and the weak idempotent completion.

A heart complex ``P`` with ``P ~ Z[0]`` gives ``X (+) Z = Y`` with
``X = (+) P^odd`` and ``Y = (+) P^even``: the cone of ``P -> Z[0]`` is
contractible, and ``d + h`` is an isomorphism from its even part onto its odd part.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..addcat import CategorySpec, KarMorphism, KarObject, WkarWitness, direct_sum, is_isomorphic, wkar_witness
from ..complexes import (
    ChainMap,
    Complex,
    EquivalenceCertificate,
    cone,
    is_contractible,
    minimal_model,
    resolve_wkar_object,
    zero_homotopy,
)
from ..errors import CertificateInvalid, CrossCheckFailure
from ..exactlin import ExactMatrix, block_diag
from .membership import MembershipCertificate, WeightClassQuery, weight_membership


@dataclass
class HeartExtraction:
    """``Z`` with its weak-completion witness, read off a heart complex."""

    obj: KarObject
    witness: WkarWitness
    membership: MembershipCertificate
    to_object: EquivalenceCertificate  # representative -> Z[0]

    def verify(self, spec: CategorySpec) -> bool:
        return (self.witness.obj == self.obj and self.witness.verify(spec)
                and self.membership.verify(None, spec) and self.to_object.verify())


@dataclass
class HeartRealization:
    """A heart complex ``R`` of base objects equivalent to ``Z[0]``."""

    obj: KarObject
    witness: WkarWitness
    complex: Complex
    resolution: EquivalenceCertificate  # R -> Z[0]
    membership: MembershipCertificate

    def verify(self, spec: CategorySpec) -> bool:
        return (self.witness.verify(spec) and self.resolution.verify()
                and self.complex.in_spec(spec.base())
                and self.membership.verify(self.complex, spec))


def _concentrated(spec: CategorySpec, Z: KarObject) -> Complex:
    return Complex.concentrated(spec.kar(), Z, 0)


def heart_to_wkar(M: Complex, spec: CategorySpec | None = None,
                  membership: MembershipCertificate | None = None) -> HeartExtraction:
    """The degree-0 homology object of a heart complex, placed in the weak completion."""
    spec = M.spec if spec is None else spec
    if membership is None:
        membership = weight_membership(WeightClassQuery("w=", 0, M), spec)
        if membership is None:
            raise CertificateInvalid("complex is not in the heart")
    if membership.side != "w=" or membership.level != 0 or not membership.verify(M, spec):
        raise CertificateInvalid("heart membership certificate does not verify")
    P = membership.representative
    H, to_h = minimal_model(M)
    sup = H.support()
    if sup is not None and sup != (0, 0):
        raise CertificateInvalid("homology outside degree 0")
    Z = H.term(0)
    ZC = _concentrated(spec, Z)
    e = membership.equivalence.then(to_h)
    u = ChainMap(P, ZC, {0: e.u[0]})
    v = ChainMap(ZC, P, {0: e.v[0]})
    to_z = EquivalenceCertificate(u, v, e.h_source, zero_homotopy(ZC, ZC))
    if not to_z.verify():
        raise CertificateInvalid("equivalence with the homology object does not verify")
    witness = _parity_witness(P, Z, u, spec)
    if not witness.verify(spec):
        raise CrossCheckFailure("parity isomorphism does not verify")
    return HeartExtraction(Z, witness, membership, to_z)


def _parity_witness(P: Complex, Z: KarObject, u: ChainMap, spec: CategorySpec) -> WkarWitness:
    C = cone(u)
    h = is_contractible(C)
    if h is None:
        raise CrossCheckFailure("cone of an equivalence is not contractible")
    ring = C.ring
    degs = list(C.degrees)
    off, n = {}, 0
    for i in degs:
        off[i] = n
        n += C.term(i).size
    T = [[ring.zero] * n for _ in range(n)]
    for i in degs:
        for j, m in ((i + 1, C.d(i)), (i - 1, h[i])):
            if j not in off:
                continue
            for r in range(m.rows):
                row = T[off[j] + r]
                for c, x in enumerate(m.data[r]):
                    row[off[i] + c] = x
    T = ExactMatrix(ring, n, n, T)
    idem = block_diag([C.term(i).idem for i in degs], ring)
    # T^2 = idem + h^2 and h^2 is nilpotent, so T^{-1} = T (idem - h^2 + h^4 - ...)
    h2 = T @ T - idem
    series, power = idem, idem
    while True:
        power = -(power @ h2)
        if power.is_zero():
            break
        series = series + power
    Tinv = T @ series
    even = [i for i in degs if i % 2 == 0]
    odd = [i for i in degs if i % 2]
    # even part of C: C^i = P^{i+1} (+) Z[0]^i; reorder to (+) P^odd then Z
    p_idx, z_idx = [], []
    for i in even:
        a = P.term(i + 1).size
        p_idx += range(off[i], off[i] + a)
        if i == 0:
            z_idx = list(range(off[i] + a, off[i] + a + Z.size))
    y_idx = [off[i] + k for i in odd for k in range(C.term(i).size)]
    X = KarObject.free(ring, len(p_idx))
    Y = KarObject.free(ring, len(y_idx))
    XZ = direct_sum(X, Z)
    cols = p_idx + z_idx
    iso = KarMorphism(XZ, Y, T.submatrix(y_idx, cols))
    inv = KarMorphism(Y, XZ, Tinv.submatrix(cols, y_idx))
    return WkarWitness(Z, X, Y, iso, inv)


def wkar_to_heart(Z: KarObject, spec: CategorySpec) -> HeartRealization | None:
    """A two-term complex of base objects equivalent to ``Z[0]``, or ``None`` outside the weak completion."""
    w = wkar_witness(Z, spec)
    if w is None:
        return None
    R, res = resolve_wkar_object(w, spec)
    mem = weight_membership(WeightClassQuery("w=", 0, R), spec)
    if mem is None:
        raise CrossCheckFailure("resolution of a weak completion object is not in the heart")
    return HeartRealization(Z, w, R, res, mem)


@dataclass
class HeartRoundTrip:
    """Both directions of the heart equivalence applied to one object."""

    obj: KarObject
    realization: HeartRealization | None
    extraction: HeartExtraction | None
    there: KarMorphism | None
    back: KarMorphism | None

    @property
    def ok(self) -> bool:
        return self.realization is not None and self.there is not None

    def verify(self, spec: CategorySpec) -> bool:
        if not self.ok:
            return False
        return (self.realization.verify(spec) and self.extraction.verify(spec)
                and self.there.source == self.obj and self.there.target == self.extraction.obj
                and (self.back @ self.there).is_identity() and (self.there @ self.back).is_identity())


def heart_roundtrip(Z: KarObject, spec: CategorySpec) -> HeartRoundTrip:
    """``Z -> R -> Z'`` together with an isomorphism ``Z = Z'``."""
    real = wkar_to_heart(Z, spec)
    if real is None:
        return HeartRoundTrip(Z, None, None, None, None)
    ext = heart_to_wkar(real.complex, spec, real.membership)
    iso = is_isomorphic(Z, ext.obj)
    if iso is None:
        raise CrossCheckFailure(f"heart round trip changed the class of {Z!r}")
    return HeartRoundTrip(Z, real, ext, *iso)


def complex_roundtrip(M: Complex, spec: CategorySpec | None = None) -> tuple[HeartRealization, EquivalenceCertificate]:
    """``M -> Z -> R`` with a certificate ``M ~ R``."""
    spec = M.spec if spec is None else spec
    ext = heart_to_wkar(M, spec)
    real = wkar_to_heart(ext.obj, spec)
    if real is None:
        raise CrossCheckFailure("extracted object has no weak completion witness")
    # M -> P -> Z[0] -> R
    cert = ext.membership.equivalence.inverse().then(ext.to_object).then(real.resolution.inverse())
    if not cert.verify():
        raise CertificateInvalid("round-trip equivalence does not verify")
    return real, cert
