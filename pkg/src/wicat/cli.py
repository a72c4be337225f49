"""Command-line interface: JSON in, JSON out, certificates re-verifiable offline.

Exit codes: 0 success (or true with a certificate), 1 certified negative,
2 input error, 3 internal cross-check failure.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import certificates as C
from .addcat import (
    CategorySpec,
    RingHom,
    complement_split_mono,
    is_idempotent_complete,
    is_weakly_idempotent_complete,
    kar_functor,
    preserves_wkar,
    standard_split_mono,
    wkar_witness,
)
from .addcat.witness import default_search_bound
from .complexes import hom_mod_homotopy, homology_ranks, is_contractible
from .complexes.generate import random_complex
from .complexes.splitting import FailureWitness, split_contractible
from .errors import (
    CrossCheckFailure,
    DocumentError,
    NotContractible,
    SplitMonoNoComplement,
    UnstablePresentation,
    WicatError,
)
from .k0 import k0_induced_map, k0_presentation, wkar_k0_crosscheck
from .weights import (
    WeightClassQuery,
    heart_roundtrip,
    is_connective,
    stupid_truncate,
    verify_axioms,
    weight_membership,
)

OK, NEGATIVE, INPUT_ERROR, CROSSCHECK = 0, 1, 2, 3


class Context:
    def __init__(self, args, doc):
        self.args = args
        self.doc = doc if doc is not None else {}

    @property
    def seed(self) -> int:
        return self.args.seed

    def field(self, key, default=None):
        if not isinstance(self.doc, dict):
            raise DocumentError("$", "expected a JSON object")
        return self.doc.get(key, default)

    def require(self, key):
        v = self.field(key)
        if v is None:
            raise DocumentError(f"$.{key}", "missing field")
        return v

    def spec(self, key="spec") -> CategorySpec:
        if self.args.spec is not None:
            return C.parse_spec(json.loads(self.args.spec), "--spec")
        if self.field(key) is not None:
            return C.parse_spec(self.field(key), f"$.{key}")
        if self.args.ring is not None:
            return CategorySpec.full(C.parse_ring(json.loads(self.args.ring), "--ring"))
        raise DocumentError(f"$.{key}", "missing field (or pass --spec / --ring)")

    def bound(self, default: int) -> int:
        if self.args.bound is not None:
            return self.args.bound
        return int(self.field("bound", default))

    def complex(self, key="complex"):
        return C.parse_complex(self.require(key), f"$.{key}")


def _obj(ctx: Context, spec: CategorySpec, key="object"):
    return C.parse_obj(spec.ring, ctx.require(key), f"$.{key}")


# -- subcommands -------------------------------------------------------------


def cmd_complement(ctx: Context):
    spec = ctx.spec()
    if ctx.field("mono") is not None:
        i = C.parse_mor(spec.ring, ctx.require("mono"), "$.mono")
        p = C.parse_mor(spec.ring, ctx.require("retraction"), "$.retraction")
    else:
        i, p = standard_split_mono(spec, int(ctx.require("a")), int(ctx.require("b")))
    try:
        c = complement_split_mono(i, p, spec)
    except SplitMonoNoComplement as e:
        return NEGATIVE, {"has_complement": False, "complement_multirank": list(e.complement.multirank),
                          "reason": e.reason}, C.no_complement_doc(i, p, e.complement, e.reason, spec)
    return OK, {"has_complement": True, "complement": C.obj_doc(c.complement)}, C.complement_doc(i, p, c, spec)


def cmd_wkar_witness(ctx: Context):
    spec = ctx.spec()
    Z = _obj(ctx, spec)
    w = wkar_witness(Z, spec.base(), ctx.args.bound)
    if w is None:
        bound = ctx.args.bound if ctx.args.bound is not None else default_search_bound(Z, spec)
        return NEGATIVE, {"in_wkar": False, "multirank": list(Z.multirank), "search_bound": bound}, None
    return OK, {"in_wkar": True, "x": w.x.size, "y": w.y.size}, C.witness_doc(w, spec.base())


def cmd_wic_check(ctx: Context):
    spec = ctx.spec()
    bound = ctx.bound(spec.bound)
    wic = is_weakly_idempotent_complete(spec, bound, seed=ctx.seed)
    ic = is_idempotent_complete(spec, bound)
    result = {"spec": spec.to_json(), "bound": bound, "weakly_idempotent_complete": wic.complete,
              "idempotent_complete": ic.complete, "counterexample": None, "idempotent_witness": None,
              "combined_witnesses": len(wic.witnesses)}
    certs = []
    if wic.counterexample is not None:
        cx = wic.counterexample
        result["counterexample"] = {"pair": list(cx.pair), "complement_multirank": list(cx.complement.multirank)}
        certs.append(C.no_complement_doc(cx.i, cx.p, cx.complement, cx.reason, spec))
    if ic.witness is not None:
        result["idempotent_witness"] = {"size": ic.witness.size, "multirank": list(ic.witness.multirank)}
        certs.append({"kind": "non_split_idempotent", "spec": spec.to_json(), "object": C.obj_doc(ic.witness)})
    cert = certs[0] if certs else None
    if len(certs) > 1:
        result["idempotent_certificate"] = certs[1]
    return (OK if wic.complete else NEGATIVE), result, cert


def cmd_kar_map(ctx: Context):
    F = _wrap_hom(ctx.require("hom"))
    ring = F.source
    result = {"target_ring": F.target.to_json()}
    if ctx.field("object") is not None:
        Z = C.parse_obj(ring, ctx.require("object"), "$.object")
        result["object"] = C.obj_doc(kar_functor(F, Z))
        if ctx.field("spec") is not None:
            result["preserves_wkar"] = preserves_wkar(F, Z, ctx.spec())
    if ctx.field("morphisms") is not None:
        fs = [C.parse_mor(ring, d, f"$.morphisms[{k}]") for k, d in enumerate(ctx.require("morphisms"))]
        result["morphisms"] = [C.mor_doc(kar_functor(F, f)) for f in fs]
        if len(fs) == 2:
            g, f = fs
            result["functorial"] = kar_functor(F, g @ f) == kar_functor(F, g) @ kar_functor(F, f)
    return OK, result, None


def _wrap_hom(doc) -> RingHom:
    try:
        return RingHom.from_json(doc)
    except (WicatError, ValueError, KeyError, TypeError) as e:
        raise DocumentError("$.hom", str(e)) from None


def cmd_contractible(ctx: Context):
    M = ctx.complex()
    h = is_contractible(M)
    if h is None:
        result = {"contractible": False}
        if M.ring.is_field_like:
            result["homology_ranks"] = {str(i): r for i, r in sorted(homology_ranks(M).items())}
        return NEGATIVE, result, None
    return OK, {"contractible": True}, C.contraction_doc(M, h)


def cmd_split_contractible(ctx: Context):
    M = ctx.complex()
    spec = ctx.spec() if (ctx.args.spec or ctx.field("spec")) else M.spec
    try:
        s = split_contractible(M, spec)
    except NotContractible as e:
        return NEGATIVE, {"split": False, "reason": str(e)}, None
    if isinstance(s, FailureWitness):
        return NEGATIVE, {"split": False, "degree": s.degree, "complement_multirank": list(s.complement.multirank),
                          "reason": s.reason}, C.failure_doc(s, spec)
    return OK, {"split": True, "summands": [[C.obj_doc(N), m] for N, m in s.summands]}, C.splitting_doc(s)


def cmd_hom(ctx: Context):
    S = ctx.complex("source")
    T = ctx.complex("target")
    h = hom_mod_homotopy(S, T)
    dim = list(h.dimension) if isinstance(h.dimension, tuple) else h.dimension
    return OK, {"dimension": dim, "basis": [C.map_doc(f) for f in h.basis]}, None


def cmd_weight_decompose(ctx: Context):
    M = ctx.complex()
    w = stupid_truncate(M, int(ctx.field("level", 0)))
    return OK, {"L": C.complex_doc(w.L), "R": C.complex_doc(w.R)}, C.decomposition_doc(w)


def cmd_weight_member(ctx: Context):
    M = ctx.complex()
    spec = ctx.spec() if (ctx.args.spec or ctx.field("spec")) else M.spec
    side = _side(ctx.field("side", "w<="))
    level = int(ctx.field("level", 0))
    try:
        q = WeightClassQuery(side, level, M)
    except ValueError as e:
        raise DocumentError("$.side", str(e)) from None
    c = weight_membership(q, spec)
    if c is None:
        return NEGATIVE, {"member": False, "side": side, "level": level}, None
    return OK, {"member": True, "side": side, "level": level,
                "representative": C.complex_doc(c.representative)}, C.membership_doc(c, M, spec)


def _side(s: str) -> str:
    return {"w≤": "w<=", "w≥": "w>=", "w<=": "w<=", "w>=": "w>=", "w=": "w="}.get(s, s)


def cmd_verify_axioms(ctx: Context):
    spec = ctx.spec()
    n = int(ctx.field("samples", 100))
    rng = random.Random(ctx.seed)
    sample = [random_complex(spec, rng) for _ in range(n)]
    report = verify_axioms(spec, sample, triangles=int(ctx.field("triangles", 50)), seed=ctx.seed)
    return (OK if report.passed else NEGATIVE), report.to_json(), None


def cmd_heart_roundtrip(ctx: Context):
    spec = ctx.spec()
    Z = _obj(ctx, spec)
    rt = heart_roundtrip(Z, spec)
    if not rt.ok:
        return NEGATIVE, {"in_wkar": False, "multirank": list(Z.multirank)}, None
    R = rt.realization.complex
    return OK, {"in_wkar": True, "complex": C.complex_doc(R), "recovered": C.obj_doc(rt.extraction.obj),
                "witness": [rt.extraction.witness.x.size, rt.extraction.witness.y.size]}, C.roundtrip_doc(rt, spec)


def cmd_connective(ctx: Context):
    spec = ctx.spec()
    v = is_connective(spec, int(ctx.field("degree_bound", 3)), seed=ctx.seed)
    return (OK if v.connective else NEGATIVE), v.to_json(), None


def cmd_k0(ctx: Context):
    spec = ctx.spec()
    bound = ctx.bound(8)
    try:
        p = k0_presentation(spec, bound)
    except UnstablePresentation as e:
        return NEGATIVE, {"stable": False, "reason": str(e)}, None
    return OK, p.to_json(), None


def cmd_k0_map(ctx: Context):
    inner = C.parse_spec(ctx.require("inner"), "$.inner")
    outer = C.parse_spec(ctx.require("outer"), "$.outer")
    try:
        k = k0_induced_map(inner, outer, ctx.bound(8))
    except UnstablePresentation as e:
        return NEGATIVE, {"stable": False, "reason": str(e)}, None
    except ValueError as e:
        raise DocumentError("$", str(e)) from None
    return OK, k.to_json(), None


def cmd_wkar_k0_crosscheck(ctx: Context):
    spec = ctx.spec()
    r = wkar_k0_crosscheck(spec, int(ctx.field("max_size", 4)), seed=ctx.seed, bound=ctx.args.bound)
    return (OK if not r.disagreements else CROSSCHECK), r.to_json(), None


def cmd_verify_certificate(ctx: Context):
    doc = ctx.doc
    if isinstance(doc, dict) and "kind" not in doc and "certificate" in doc:
        doc = doc["certificate"]
    if doc is None:
        raise DocumentError("$.certificate", "the document carries no certificate")
    ok = C.verify_certificate(doc, "$")
    extra = []
    if isinstance(ctx.doc, dict) and isinstance(ctx.doc.get("result"), dict):
        side = ctx.doc["result"].get("idempotent_certificate")
        if side is not None:
            extra.append(C.verify_certificate(side, "$.result.idempotent_certificate"))
    ok = ok and all(extra)
    return (OK if ok else NEGATIVE), {"valid": ok, "kind": doc.get("kind")}, None


COMMANDS = {
    "complement": cmd_complement,
    "wkar-witness": cmd_wkar_witness,
    "wic-check": cmd_wic_check,
    "kar-map": cmd_kar_map,
    "contractible": cmd_contractible,
    "split-contractible": cmd_split_contractible,
    "hom": cmd_hom,
    "weight-decompose": cmd_weight_decompose,
    "weight-member": cmd_weight_member,
    "verify-axioms": cmd_verify_axioms,
    "heart-roundtrip": cmd_heart_roundtrip,
    "connective": cmd_connective,
    "k0": cmd_k0,
    "k0-map": cmd_k0_map,
    "wkar-k0-crosscheck": cmd_wkar_k0_crosscheck,
    "verify-certificate": cmd_verify_certificate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wicat", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--bound", type=int, default=None)
    parser.add_argument("--ring", default=None, help="ring as JSON, e.g. '\"Q\"' or '{\"product\": [2, 3]}'")
    parser.add_argument("--spec", default=None, help="category spec as JSON")
    parser.add_argument("--in", dest="infile", default=None, help="input JSON file (default: stdin)")
    parser.add_argument("--out", default=None, help="output JSON file (default: stdout)")
    return parser


def _read_input(args):
    if args.infile is not None:
        with open(args.infile, encoding="utf-8") as fh:
            text = fh.read()
    elif sys.stdin is not None and not sys.stdin.isatty():
        text = sys.stdin.read()
    else:
        text = ""
    if not text.strip():
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError("$", f"invalid JSON: {e}") from None


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run(argv: list[str]) -> tuple[int, dict]:
    """Run one subcommand; returns ``(exit code, output document)``."""
    args = build_parser().parse_args(argv)
    try:
        ctx = Context(args, _read_input(args))
        code, result, cert = COMMANDS[args.command](ctx)
        out = {"command": args.command, "status": _STATUS[code], "result": result, "certificate": cert}
    except DocumentError as e:
        code, out = INPUT_ERROR, {"command": args.command, "status": "input-error",
                                  "error": {"path": e.path, "message": e.message}}
    except CrossCheckFailure as e:
        code, out = CROSSCHECK, {"command": args.command, "status": "cross-check-failure",
                                 "error": {"message": str(e)}}
    except (WicatError, ValueError, json.JSONDecodeError) as e:
        code, out = INPUT_ERROR, {"command": args.command, "status": "input-error",
                                  "error": {"path": "$", "message": f"{type(e).__name__}: {e}"}}
    return code, out


_STATUS = {OK: "ok", NEGATIVE: "negative", INPUT_ERROR: "input-error", CROSSCHECK: "cross-check-failure"}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, out = run(argv)
    text = dumps(out)
    args = build_parser().parse_args(argv)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
