"""JSON documents for objects, complexes and certificates, and offline re-verification.

Every certificate document carries a ``kind`` and enough raw matrices to be
checked without redoing the search that produced it.
"""
from __future__ import annotations

from .addcat import CategorySpec, KarMorphism, KarObject, WkarWitness
from .addcat.witness import Complement, _ambient_complement
from .complexes import ChainMap, Complex, EquivalenceCertificate, Homotopy, cone, identity_map, same_complex
from .complexes.splitting import FailureWitness, Splitting
from .errors import DocumentError, WicatError
from .exactlin import ExactMatrix, RingDescriptor
from .weights.heart import HeartExtraction, HeartRealization, HeartRoundTrip
from .weights.membership import MembershipCertificate
from .weights.truncation import WeightDecomposition

# -- encoding ----------------------------------------------------------------


def obj_doc(o: KarObject):
    return o.size if o.is_free else o.to_json()


def mor_doc(f: KarMorphism) -> dict:
    return {"source": obj_doc(f.source), "target": obj_doc(f.target), "matrix": f.matrix.to_json()}


def complex_doc(M: Complex) -> dict:
    return {
        "spec": M.spec.to_json(),
        "min_degree": M.min_degree,
        "terms": [obj_doc(t) for t in M.terms],
        "diffs": [d.to_json() for d in M.diffs],
    }


def _comps_doc(comps) -> dict:
    return {str(i): m.to_json() for i, m in sorted(comps.items())}


def map_doc(f: ChainMap) -> dict:
    return {"source": complex_doc(f.source), "target": complex_doc(f.target), "comps": _comps_doc(f.comps)}


def homotopy_doc(h: Homotopy) -> dict:
    return {"source": complex_doc(h.source), "target": complex_doc(h.target), "comps": _comps_doc(h.comps)}


def equivalence_doc(c: EquivalenceCertificate) -> dict:
    return {"kind": "equivalence", "u": map_doc(c.u), "v": map_doc(c.v),
            "h_source": homotopy_doc(c.h_source), "h_target": homotopy_doc(c.h_target)}


def witness_doc(w: WkarWitness, spec: CategorySpec) -> dict:
    return {"kind": "wkar_witness", "spec": spec.to_json(), "obj": obj_doc(w.obj), "x": obj_doc(w.x),
            "y": obj_doc(w.y), "iso": mor_doc(w.iso), "inverse": mor_doc(w.inverse),
            "search_bound": w.search_bound}


def complement_doc(i: KarMorphism, p: KarMorphism, c: Complement, spec: CategorySpec) -> dict:
    return {"kind": "complement", "spec": spec.to_json(), "mono": mor_doc(i), "retraction": mor_doc(p),
            "complement": obj_doc(c.complement), "iso": mor_doc(c.iso), "inverse": mor_doc(c.inverse)}


def no_complement_doc(i: KarMorphism, p: KarMorphism, complement: KarObject, reason: str,
                      spec: CategorySpec) -> dict:
    return {"kind": "no_complement", "spec": spec.to_json(), "mono": mor_doc(i), "retraction": mor_doc(p),
            "complement": obj_doc(complement), "multirank": list(complement.multirank), "reason": reason}


def splitting_doc(s: Splitting) -> dict:
    return {"kind": "splitting", "summands": [[obj_doc(N), m] for N, m in s.summands],
            "source": complex_doc(s.source), "target": complex_doc(s.target),
            "u": map_doc(s.u), "v": map_doc(s.v)}


def failure_doc(f: FailureWitness, spec: CategorySpec) -> dict:
    return {"kind": "failure_witness", "spec": spec.to_json(), "degree": f.degree,
            "complement": obj_doc(f.complement), "multirank": list(f.complement.multirank),
            "reason": f.reason, "mono": mor_doc(f.mono), "retraction": mor_doc(f.retraction)}


def contraction_doc(M: Complex, h: Homotopy) -> dict:
    return {"kind": "contracting_homotopy", "complex": complex_doc(M), "homotopy": homotopy_doc(h)}


def membership_doc(c: MembershipCertificate, M: Complex, spec: CategorySpec) -> dict:
    return {"kind": "membership", "spec": spec.to_json(), "side": c.side, "level": c.level,
            "complex": complex_doc(M), "representative": complex_doc(c.representative),
            "equivalence": equivalence_doc(c.equivalence),
            "companion": None if c.companion is None else membership_doc(c.companion, M, spec)}


def decomposition_doc(w: WeightDecomposition) -> dict:
    return {"kind": "weight_decomposition", "level": w.level, "complex": complex_doc(w.M),
            "L": complex_doc(w.L), "R": complex_doc(w.R), "incl": map_doc(w.incl), "proj": map_doc(w.proj),
            "connecting": map_doc(w.connecting), "to_cone": map_doc(w.to_cone),
            "from_cone": map_doc(w.from_cone), "cone_homotopy": homotopy_doc(w.cone_homotopy)}


def roundtrip_doc(rt: HeartRoundTrip, spec: CategorySpec) -> dict:
    r, e = rt.realization, rt.extraction
    return {
        "kind": "heart_roundtrip", "spec": spec.to_json(), "obj": obj_doc(rt.obj),
        "realization": {"witness": witness_doc(r.witness, spec), "complex": complex_doc(r.complex),
                        "resolution": equivalence_doc(r.resolution),
                        "membership": membership_doc(r.membership, r.complex, spec)},
        "extraction": {"obj": obj_doc(e.obj), "witness": witness_doc(e.witness, spec),
                       "membership": membership_doc(e.membership, r.complex, spec),
                       "to_object": equivalence_doc(e.to_object)},
        "there": mor_doc(rt.there), "back": mor_doc(rt.back),
    }


# -- decoding ----------------------------------------------------------------


def _get(doc, key, path):
    if not isinstance(doc, dict):
        raise DocumentError(path, "expected an object")
    if key not in doc:
        raise DocumentError(f"{path}.{key}", "missing field")
    return doc[key]


def _wrap(path, fn, *args):
    try:
        return fn(*args)
    except DocumentError:
        raise
    except (WicatError, ValueError, TypeError, KeyError, IndexError) as e:
        raise DocumentError(path, str(e)) from None


def parse_ring(doc, path="ring") -> RingDescriptor:
    return _wrap(path, RingDescriptor.from_json, doc)


def parse_spec(doc, path="spec") -> CategorySpec:
    return _wrap(path, CategorySpec.from_json, doc)


def parse_matrix(ring, doc, path) -> ExactMatrix:
    return _wrap(path, ExactMatrix.from_json, ring, doc)


def parse_obj(ring, doc, path) -> KarObject:
    return _wrap(path, KarObject.from_json, ring, doc)


def parse_mor(ring, doc, path) -> KarMorphism:
    s = parse_obj(ring, _get(doc, "source", path), f"{path}.source")
    t = parse_obj(ring, _get(doc, "target", path), f"{path}.target")
    m = parse_matrix(ring, _get(doc, "matrix", path), f"{path}.matrix")
    return _wrap(path, KarMorphism, s, t, m)


def parse_complex(doc, path="complex", spec: CategorySpec | None = None) -> Complex:
    if spec is None or (isinstance(doc, dict) and "spec" in doc):
        spec = parse_spec(_get(doc, "spec", path), f"{path}.spec")
    ring = spec.ring
    terms = _get(doc, "terms", path)
    diffs = doc.get("diffs", [])
    if not isinstance(terms, list) or not isinstance(diffs, list):
        raise DocumentError(path, "terms and diffs must be lists")
    objs = tuple(parse_obj(ring, t, f"{path}.terms[{k}]") for k, t in enumerate(terms))
    mats = tuple(parse_matrix(ring, d, f"{path}.diffs[{k}]") for k, d in enumerate(diffs))
    if len(mats) != max(len(objs) - 1, 0):
        raise DocumentError(f"{path}.diffs", f"{len(objs)} terms need {max(len(objs) - 1, 0)} differentials")
    for k, m in enumerate(mats):
        want = (objs[k + 1].size, objs[k].size)
        if m.shape != want:
            raise DocumentError(f"{path}.diffs[{k}]", f"shape {m.shape}, expected {want}")
    lo = _get(doc, "min_degree", path)
    if not isinstance(lo, int):
        raise DocumentError(f"{path}.min_degree", "expected an integer")
    return _wrap(path, Complex, spec, lo, objs, mats)


def _parse_comps(ring, doc, path) -> dict:
    comps = _get(doc, "comps", path)
    if not isinstance(comps, dict):
        raise DocumentError(f"{path}.comps", "expected an object keyed by degree")
    return {int(k): parse_matrix(ring, v, f"{path}.comps.{k}") for k, v in comps.items()}


def parse_map(doc, path) -> ChainMap:
    S = parse_complex(_get(doc, "source", path), f"{path}.source")
    T = parse_complex(_get(doc, "target", path), f"{path}.target")
    return _wrap(path, ChainMap, S, T, _parse_comps(S.ring, doc, path))


def parse_homotopy(doc, path) -> Homotopy:
    S = parse_complex(_get(doc, "source", path), f"{path}.source")
    T = parse_complex(_get(doc, "target", path), f"{path}.target")
    return _wrap(path, Homotopy, S, T, _parse_comps(S.ring, doc, path))


def parse_equivalence(doc, path) -> EquivalenceCertificate:
    return EquivalenceCertificate(
        parse_map(_get(doc, "u", path), f"{path}.u"), parse_map(_get(doc, "v", path), f"{path}.v"),
        parse_homotopy(_get(doc, "h_source", path), f"{path}.h_source"),
        parse_homotopy(_get(doc, "h_target", path), f"{path}.h_target"))


def parse_witness(doc, path) -> tuple[WkarWitness, CategorySpec]:
    spec = parse_spec(_get(doc, "spec", path), f"{path}.spec")
    r = spec.ring
    w = WkarWitness(parse_obj(r, _get(doc, "obj", path), f"{path}.obj"),
                    parse_obj(r, _get(doc, "x", path), f"{path}.x"),
                    parse_obj(r, _get(doc, "y", path), f"{path}.y"),
                    parse_mor(r, _get(doc, "iso", path), f"{path}.iso"),
                    parse_mor(r, _get(doc, "inverse", path), f"{path}.inverse"),
                    doc.get("search_bound"))
    return w, spec


def parse_membership(doc, path) -> tuple[MembershipCertificate, Complex, CategorySpec]:
    spec = parse_spec(_get(doc, "spec", path), f"{path}.spec")
    comp = doc.get("companion")
    c = MembershipCertificate(
        _get(doc, "side", path), _get(doc, "level", path),
        parse_complex(_get(doc, "representative", path), f"{path}.representative"),
        parse_equivalence(_get(doc, "equivalence", path), f"{path}.equivalence"),
        None if comp is None else parse_membership(comp, f"{path}.companion")[0])
    return c, parse_complex(_get(doc, "complex", path), f"{path}.complex"), spec


# -- verification ------------------------------------------------------------


def _verify_complement(doc, path) -> bool:
    spec = parse_spec(_get(doc, "spec", path), f"{path}.spec")
    r = spec.ring
    i = parse_mor(r, _get(doc, "mono", path), f"{path}.mono")
    p = parse_mor(r, _get(doc, "retraction", path), f"{path}.retraction")
    Z = parse_obj(r, _get(doc, "complement", path), f"{path}.complement")
    c = Complement(Z, parse_mor(r, _get(doc, "iso", path), f"{path}.iso"),
                   parse_mor(r, _get(doc, "inverse", path), f"{path}.inverse"))
    return (p @ i).is_identity() and c.verify(i) and (spec.contains(Z) or Z.size == 0)


def _verify_no_complement(doc, path) -> bool:
    spec = parse_spec(_get(doc, "spec", path), f"{path}.spec")
    r = spec.ring
    i = parse_mor(r, _get(doc, "mono", path), f"{path}.mono")
    p = parse_mor(r, _get(doc, "retraction", path), f"{path}.retraction")
    if not (p @ i).is_identity():
        return False
    Z, iso, inv = _ambient_complement(i, p)
    if list(Z.multirank) != list(doc.get("multirank", Z.multirank)):
        return False
    # every complement is isomorphic to Z, so it suffices that Z's class is not allowed
    if spec.layer == "base":
        c = Z.constant_rank
        return c is None or not spec.allows_rank(c)
    if spec.layer == "wkar":
        return not spec.in_wkar_by_rank(Z.multirank)
    return False


def _verify_failure(doc, path) -> bool:
    spec = parse_spec(_get(doc, "spec", path), f"{path}.spec")
    r = spec.ring
    f = FailureWitness(_get(doc, "degree", path), parse_obj(r, _get(doc, "complement", path), f"{path}.complement"),
                       doc.get("reason", ""), parse_mor(r, _get(doc, "mono", path), f"{path}.mono"),
                       parse_mor(r, _get(doc, "retraction", path), f"{path}.retraction"))
    c = f.complement.constant_rank
    outside = c is None or not spec.allows_rank(c)
    return f.verify() and outside


def _verify_splitting(doc, path) -> bool:
    S = parse_complex(_get(doc, "target", path), f"{path}.target")
    summands = [(parse_obj(S.ring, N, f"{path}.summands[{k}]"), int(m))
                for k, (N, m) in enumerate(_get(doc, "summands", path))]
    s = Splitting(summands, parse_complex(_get(doc, "source", path), f"{path}.source"), S,
                  parse_map(_get(doc, "u", path), f"{path}.u"), parse_map(_get(doc, "v", path), f"{path}.v"))
    return s.verify()


def _verify_contraction(doc, path) -> bool:
    M = parse_complex(_get(doc, "complex", path), f"{path}.complex")
    h = parse_homotopy(_get(doc, "homotopy", path), f"{path}.homotopy")
    return h.witnesses(identity_map(M)) and same_complex(h.source, M)


def _verify_membership(doc, path) -> bool:
    c, M, spec = parse_membership(doc, path)
    return c.verify(M, spec)


def _verify_decomposition(doc, path) -> bool:
    w = WeightDecomposition(
        _get(doc, "level", path), parse_complex(_get(doc, "complex", path), f"{path}.complex"),
        parse_complex(_get(doc, "L", path), f"{path}.L"), parse_complex(_get(doc, "R", path), f"{path}.R"),
        *(parse_map(_get(doc, k, path), f"{path}.{k}") for k in ("incl", "proj", "connecting", "to_cone",
                                                                  "from_cone")),
        parse_homotopy(_get(doc, "cone_homotopy", path), f"{path}.cone_homotopy"))
    ok = w.verify() and same_complex(w.incl.source, w.L) and same_complex(w.incl.target, w.M)
    return ok and same_complex(w.to_cone.target, cone(w.incl))


def _verify_roundtrip(doc, path) -> bool:
    spec = parse_spec(_get(doc, "spec", path), f"{path}.spec")
    r = spec.ring
    rd, ed = _get(doc, "realization", path), _get(doc, "extraction", path)
    rw, _ = parse_witness(_get(rd, "witness", f"{path}.realization"), f"{path}.realization.witness")
    R = parse_complex(_get(rd, "complex", f"{path}.realization"), f"{path}.realization.complex")
    rm, _, _ = parse_membership(_get(rd, "membership", f"{path}.realization"), f"{path}.realization.membership")
    real = HeartRealization(rw.obj, rw, R, parse_equivalence(_get(rd, "resolution", f"{path}.realization"),
                                                              f"{path}.realization.resolution"), rm)
    ew, _ = parse_witness(_get(ed, "witness", f"{path}.extraction"), f"{path}.extraction.witness")
    em, _, _ = parse_membership(_get(ed, "membership", f"{path}.extraction"), f"{path}.extraction.membership")
    ext = HeartExtraction(parse_obj(r, _get(ed, "obj", f"{path}.extraction"), f"{path}.extraction.obj"), ew, em,
                          parse_equivalence(_get(ed, "to_object", f"{path}.extraction"),
                                            f"{path}.extraction.to_object"))
    Z = parse_obj(r, _get(doc, "obj", path), f"{path}.obj")
    rt = HeartRoundTrip(Z, real, ext, parse_mor(r, _get(doc, "there", path), f"{path}.there"),
                        parse_mor(r, _get(doc, "back", path), f"{path}.back"))
    return (rt.verify(spec) and rw.obj == Z and same_complex(real.resolution.source, R)
            and same_complex(ext.membership.equivalence.target, R))


def _verify_equivalence(doc, path) -> bool:
    return parse_equivalence(doc, path).verify()


def _verify_witness(doc, path) -> bool:
    w, spec = parse_witness(doc, path)
    return w.verify(spec)


def _verify_non_split_idempotent(doc, path) -> bool:
    spec = parse_spec(_get(doc, "spec", path), f"{path}.spec")
    e = parse_obj(spec.ring, _get(doc, "object", path), f"{path}.object")
    if not spec.base().contains(KarObject.free(spec.ring, e.size)):
        return False
    c = e.constant_rank
    if spec.layer == "base":
        return c is None or not spec.allows_rank(c)
    if spec.layer == "wkar":
        return not spec.in_wkar_by_rank(e.multirank)
    return False


VERIFIERS = {
    "complement": _verify_complement,
    "no_complement": _verify_no_complement,
    "failure_witness": _verify_failure,
    "splitting": _verify_splitting,
    "contracting_homotopy": _verify_contraction,
    "membership": _verify_membership,
    "weight_decomposition": _verify_decomposition,
    "heart_roundtrip": _verify_roundtrip,
    "equivalence": _verify_equivalence,
    "wkar_witness": _verify_witness,
    "non_split_idempotent": _verify_non_split_idempotent,
}


def verify_certificate(doc, path: str = "certificate") -> bool:
    """Re-check a certificate document from its embedded matrices alone."""
    kind = _get(doc, "kind", path)
    fn = VERIFIERS.get(kind)
    if fn is None:
        raise DocumentError(f"{path}.kind", f"unknown certificate kind {kind!r}")
    try:
        return bool(fn(doc, path))
    except DocumentError:
        raise
    except WicatError as e:
        raise DocumentError(path, str(e)) from None


__all__ = [
    "VERIFIERS", "complement_doc", "complex_doc", "contraction_doc", "decomposition_doc", "equivalence_doc",
    "failure_doc", "homotopy_doc", "map_doc", "membership_doc", "mor_doc", "no_complement_doc", "obj_doc",
    "parse_complex", "parse_equivalence", "parse_map", "parse_matrix", "parse_mor", "parse_obj", "parse_ring",
    "parse_spec", "roundtrip_doc", "splitting_doc", "verify_certificate", "witness_doc",
]
