"""Minimal models over fields, padding into a rank-restricted spec, 2-term resolutions."""
from __future__ import annotations

from ..addcat import CategorySpec, KarObject
from ..addcat.witness import WkarWitness
from ..errors import CertificateInvalid, UnsupportedRing, WitnessInvalid
from ..exactlin import ExactMatrix, hstack, inverse, kernel, rank_factor, rref, vstack
from .core import (
    ChainMap,
    Complex,
    EquivalenceCertificate,
    Homotopy,
    direct_sum_complex,
    disk,
    zero_homotopy,
)
from .homotopy import freeify


def _reduce_free(F: Complex):
    """Split a free complex over a field as ``B (+) H (+) C`` degree by degree.

    Returns ``(h_ranks, u, v, s)`` as dicts of matrices with ``u v = id``
    and ``id - v u = d s + s d``.
    """
    ring = F.ring
    u, v, s, ranks = {}, {}, {}, {}
    prev_c = None
    for i in F.degrees:
        n = F.term(i).size
        if prev_c is not None and prev_c.cols:
            B = F.d(i - 1) @ prev_c
        else:
            B = ExactMatrix.zero(ring, n, 0)
        Z = kernel(F.d(i)) if F.term(i + 1).size else ExactMatrix.identity(ring, n)
        _, piv = rref(hstack([B, Z], ring, n))
        H = Z.submatrix(range(n), [c - B.cols for c in piv if c >= B.cols])
        BH = hstack([B, H], ring, n)
        _, piv = rref(hstack([BH, ExactMatrix.identity(ring, n)], ring, n))
        C = ExactMatrix.identity(ring, n).submatrix(range(n), [c - BH.cols for c in piv if c >= BH.cols])
        G = hstack([BH, C], ring, n)
        Gi = inverse(G) if n else G
        b, h = B.cols, H.cols
        ranks[i] = h
        u[i] = Gi.block(b, b + h, 0, n)
        v[i] = H
        if prev_c is not None and b:
            s[i] = prev_c @ Gi.block(0, b, 0, n)
        prev_c = C
    return ranks, u, v, s


def minimal_model(M: Complex) -> tuple[Complex, EquivalenceCertificate]:
    """``(H, cert)`` with zero differentials and ``cert: M -> H``."""
    ring = M.ring
    if not ring.is_field_like:
        raise UnsupportedRing(f"minimal models need field coefficients, not {ring}")
    if not M.terms:
        return M, EquivalenceCertificate.identity(M)
    if ring.kind != "product":
        F, u0, v0 = freeify(M)
        ranks, u, v, s = _reduce_free(F)
        terms = tuple(KarObject.free(ring, ranks[i]) for i in M.degrees)
    else:
        parts = []
        for k in range(ring.factor_count):
            Fk, _, _ = freeify(M.component(k))
            parts.append(_reduce_free(Fk))
        F, u0, v0 = freeify(M)
        ranks, u, v, s = {}, {}, {}, {}
        for i in M.degrees:
            mr = tuple(p[0][i] for p in parts)
            top = max(mr)
            ranks[i] = mr
            n = F.term(i).size
            # factor k of F is the free model of factor k, padded by zeros
            u[i] = ExactMatrix.from_components(ring, [_pad(p[1][i], top, n) for p in parts])
            v[i] = ExactMatrix.from_components(ring, [_pad(p[2][i], n, top) for p in parts])
            if any(i in p[3] for p in parts):
                m = F.term(i - 1).size
                s[i] = ExactMatrix.from_components(ring, [
                    _pad(p[3][i], m, n) if i in p[3] else ExactMatrix.zero(f, m, n)
                    for p, f in zip(parts, ring.factors)])
        terms = tuple(KarObject.standard(ring, ranks[i]) for i in M.degrees)
    zeros = tuple(ExactMatrix.zero(ring, terms[k + 1].size, terms[k].size) for k in range(len(terms) - 1))
    H = Complex(M.spec, M.min_degree, terms, zeros)
    uH = ChainMap(M, H, {i: u[i] @ u0[i] for i in M.degrees})
    vH = ChainMap(H, M, {i: v0[i] @ v[i] for i in M.degrees})
    hM = Homotopy(M, M, {i: v0[i - 1] @ m @ u0[i] for i, m in s.items()})
    cert = EquivalenceCertificate(uH, vH, hM, zero_homotopy(H, H))
    if not cert.verify():
        raise CertificateInvalid("minimal model certificate does not verify")
    return H, cert


def _pad(m: ExactMatrix, rows: int, cols: int) -> ExactMatrix:
    """Extend by zeros to ``rows x cols`` (bottom and right)."""
    wide = hstack([m, ExactMatrix.zero(m.ring, m.rows, cols - m.cols)], m.ring, m.rows)
    return vstack([wide, ExactMatrix.zero(m.ring, rows - m.rows, cols)], m.ring, cols)


# -- padding -----------------------------------------------------------------


def plan_padding(ranks: dict, spec: CategorySpec, window: tuple[int, int]) -> list | None:
    """Greedy list of ``(e, j)``: an identity cone on the multirank ``e`` in degrees ``(j, j + 1)``.

    ``ranks`` maps degrees to multiranks.  A first upward pass makes every
    term's multirank constant by cones on non-free objects (only needed over
    products of fields).  A second upward pass fixes ranks that are not
    allowed with the smallest positive ``a`` making every touched degree
    allowed, preferring the pair that ends at the offending degree.
    """
    lo, hi = window
    k = spec.ring.factor_count
    t = {i: list(ranks.get(i, (0,) * k)) for i in range(lo, hi + 1)}
    pads = []
    for i in range(lo, hi + 1):
        top = max(t[i])
        if min(t[i]) == top:
            continue
        if i == hi:
            return None
        e = tuple(top - x for x in t[i])
        for deg in (i, i + 1):
            t[deg] = [x + y for x, y in zip(t[deg], e)]
        pads.append((e, i))
    c = {i: t[i][0] for i in t}
    cap = spec.bound + spec.max_generator + 1
    for i in range(lo, hi + 1):
        if spec.allows_rank(c[i]):
            continue
        done = False
        for j in (i - 1, i):
            if j < lo or j + 1 > hi:
                continue
            for a in range(1, cap + 1):
                ok = spec.allows_rank(c[i] + a)
                if j < i:
                    ok = ok and spec.allows_rank(c[j] + a)
                if ok:
                    c[j] += a
                    c[j + 1] += a
                    pads.append(((a,) * k, j))
                    done = True
                    break
            if done:
                break
        if not done:
            return None
    return pads


def pad_to_spec(H: Complex, spec: CategorySpec, window: tuple[int, int]):
    """``(P, cert: P -> H)`` with ``P`` a complex of spec objects supported in ``window``.

    ``None`` when the window cannot absorb the padding or homology lies
    outside it.
    """
    lo, hi = window
    ring = H.ring
    Ht = H.trim()
    if Ht.terms and (Ht.min_degree < lo or Ht.max_degree > hi):
        return None
    if any(not d.is_zero() for d in H.diffs):
        raise ValueError("pad_to_spec expects zero differentials")
    ranks = {i: Ht.term(i).multirank for i in Ht.degrees}
    pads = plan_padding(ranks, spec, window)
    if pads is None:
        return None
    base = spec.base()
    if not Ht.terms and not pads:
        Z = Complex.zero(base)
        return Z, EquivalenceCertificate.from_iso(ChainMap(Z, H, {}), ChainMap(H, Z, {}))
    objs = [(KarObject.standard(ring, e), j) for e, j in pads]
    disks = [disk(E, j, base) for E, j in objs]
    H_in = Ht.reindexed(lo, hi).with_spec(base)
    P = direct_sum_complex(*disks, H_in).with_spec(base).reindexed(lo, hi)
    # u: P -> H projects onto the last block, v includes it, s contracts the cones
    u, v, s = {}, {}, {}
    for i in P.degrees:
        p_h = H_in.term(i).idem
        pad = P.term(i).size - p_h.rows
        u[i] = hstack([ExactMatrix.zero(ring, p_h.rows, pad), p_h], ring, p_h.rows)
        v[i] = vstack([ExactMatrix.zero(ring, pad, p_h.cols), p_h], ring, p_h.cols)
        s[i] = _pad_homotopy(ring, objs, P, i)
    if any(not t.is_free for t in P.terms):
        P, u, v, s = _make_free(P, u, v, s)
    P = P.trim()
    keep = set(P.degrees)
    uP = ChainMap(P, H, {i: m for i, m in u.items() if i in keep})
    vP = ChainMap(H, P, {i: m for i, m in v.items() if i in keep})
    hP = Homotopy(P, P, {i: m for i, m in s.items() if i in keep and i - 1 in keep})
    cert = EquivalenceCertificate(uP, vP, hP, zero_homotopy(H, H))
    if not cert.verify():
        raise CertificateInvalid("padding certificate does not verify")
    return P, cert


def _pad_homotopy(ring, objs, P: Complex, i: int) -> ExactMatrix:
    """Component ``P^i -> P^{i-1}`` contracting the cone summands (they come first)."""
    rows = P.term(i - 1).size
    cols = P.term(i).size
    data = [[ring.zero] * cols for _ in range(rows)]
    off: dict[int, int] = {}
    for E, j in objs:
        for deg in (j, j + 1):
            off.setdefault(deg, 0)
        if j + 1 == i:
            p = E.idem if (j + 1) % 2 == 0 else -E.idem
            r0, c0 = off[j], off[j + 1]
            for x in range(E.size):
                for y in range(E.size):
                    data[r0 + x][c0 + y] = p.data[x][y]
        off[j] += E.size
        off[j + 1] += E.size
    return ExactMatrix(ring, rows, cols, data)


def _make_free(P: Complex, u: dict, v: dict, s: dict):
    """Conjugate standard-idempotent terms of constant rank to free ones."""
    ring = P.ring
    a_s, b_s, terms = {}, {}, []
    for i in P.degrees:
        t = P.term(i)
        if t.is_free:
            a_s[i] = b_s[i] = t.idem
            terms.append(t)
            continue
        a, b, _ = rank_factor(t.idem)
        a_s[i], b_s[i] = a, b
        terms.append(KarObject.free(ring, a.cols))
    diffs = tuple(b_s[i + 1] @ P.d(i) @ a_s[i] for i in list(P.degrees)[:-1])
    Q = Complex(P.spec, P.min_degree, tuple(terms), diffs)
    u2 = {i: m @ a_s[i] for i, m in u.items()}
    v2 = {i: b_s[i] @ m for i, m in v.items()}
    s2 = {i: b_s[i - 1] @ m @ a_s[i] for i, m in s.items() if i - 1 in b_s}
    return Q, u2, v2, s2


# -- 2-term resolutions of weak completion objects ---------------------------------


def resolve_wkar_object(w: WkarWitness, spec: CategorySpec) -> tuple[Complex, EquivalenceCertificate]:
    """``[X -> Y]`` in degrees (-1, 0), equivalent to ``Z[0]`` in the idempotent completion."""
    if not w.verify(spec.wkar()):
        raise WitnessInvalid("weak completion witness does not verify")
    ring = spec.ring
    X, Y, Z = w.x, w.y, w.obj
    nx = X.size
    iso, inv = w.iso.matrix, w.inverse.matrix
    base = spec.base()
    d = iso.block(0, Y.size, 0, nx) @ X.idem
    R = Complex(base, -1, (X, Y), (d,)).trim()
    ZC = Complex.concentrated(spec.kar(), Z, 0)
    u = ChainMap(R, ZC, {0: inv.block(nx, nx + Z.size, 0, Y.size)})
    v = ChainMap(ZC, R, {0: iso.block(0, Y.size, nx, nx + Z.size)})
    h = Homotopy(R, R, {0: inv.block(0, nx, 0, Y.size)})
    cert = EquivalenceCertificate(u, v, h, zero_homotopy(ZC, ZC))
    if not cert.verify():
        raise CertificateInvalid("resolution certificate does not verify")
    return R, cert
