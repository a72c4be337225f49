import json
import subprocess
import sys

import pytest

from wicat import certificates as C
from wicat.addcat import CategorySpec, KarMorphism, KarObject, RingHom
from wicat.cli import COMMANDS, run
from wicat.complexes import Complex, cone, identity_map
from wicat.complexes.generate import retraction_complex
from wicat.exactlin import QQ, ExactMatrix, Product

F23 = Product(2, 3)
FULL_Q = CategorySpec.full(QQ)
R23 = CategorySpec.ranks(QQ, [2, 3])
PROD = CategorySpec.full(F23)


def cone_of_identity():
    return cone(identity_map(Complex.concentrated(FULL_Q, KarObject.free(QQ, 1), 0)))


def cli(tmp_path, command, doc=None, *flags):
    src = tmp_path / f"{command}.json"
    src.write_text(json.dumps(doc if doc is not None else {}), encoding="utf-8")
    code, out = run([command, "--in", str(src), *flags])
    # every emitted document survives a JSON round trip unchanged
    assert json.loads(json.dumps(out, sort_keys=True)) == out
    return code, out


def assert_certificate_accepted(tmp_path, out):
    code, res = cli(tmp_path, "verify-certificate", out)
    assert code == 0, res
    assert res["result"]["valid"]


def half():
    return KarObject.standard(F23, (1, 0), 1)


# (command, input document, extra flags, expected exit code)
CASES = [
    ("complement", {"spec": FULL_Q.to_json(), "a": 2, "b": 3}, [], 0),
    ("complement", {"spec": R23.to_json(), "a": 2, "b": 3}, [], 1),
    ("wkar-witness", {"spec": R23.to_json(), "object": 1}, [], 0),
    ("wkar-witness", {"spec": PROD.to_json(), "object": half().to_json()}, [], 1),
    ("wic-check", {"spec": PROD.to_json()}, [], 0),
    ("wic-check", {"spec": R23.to_json()}, [], 1),
    ("kar-map", {"hom": RingHom("projection", F23, 0).to_json(), "object": half().to_json(),
                 "spec": PROD.to_json()}, [], 0),
    ("contractible", {"complex": C.complex_doc(cone_of_identity())}, [], 0),
    ("contractible", {"complex": C.complex_doc(Complex.concentrated(FULL_Q, KarObject.free(QQ, 1), 0))}, [], 1),
    ("split-contractible", {"complex": C.complex_doc(retraction_complex(FULL_Q, 2, 3))}, [], 0),
    ("split-contractible", {"complex": C.complex_doc(retraction_complex(R23, 2, 3))}, [], 1),
    ("hom", {"source": C.complex_doc(Complex.concentrated(R23, KarObject.free(QQ, 2), 0)),
             "target": C.complex_doc(Complex.concentrated(R23, KarObject.free(QQ, 3), 0))}, [], 0),
    ("weight-decompose", {"complex": C.complex_doc(retraction_complex(FULL_Q, 2, 3)), "level": -1}, [], 0),
    ("weight-member", {"complex": C.complex_doc(retraction_complex(R23, 2, 3)), "side": "w=", "level": 0},
     [], 0),
    ("weight-member", {"complex": C.complex_doc(Complex.concentrated(R23, KarObject.free(QQ, 2), 1)),
                       "side": "w>=", "level": 0}, [], 1),
    ("verify-axioms", {"spec": R23.to_json(), "samples": 8, "triangles": 4}, ["--seed", "3"], 0),
    ("heart-roundtrip", {"spec": R23.to_json(), "object": 1}, [], 0),
    ("heart-roundtrip", {"spec": PROD.to_json(), "object": half().to_json()}, [], 1),
    ("connective", {"spec": R23.to_json(), "degree_bound": 2}, [], 0),
    ("k0", {"spec": R23.to_json()}, ["--bound", "12"], 0),
    ("k0", {"spec": R23.to_json()}, ["--bound", "5"], 1),
    ("k0-map", {"inner": R23.to_json(), "outer": FULL_Q.to_json()}, ["--bound", "12"], 0),
    ("wkar-k0-crosscheck", {"spec": PROD.to_json(), "max_size": 2}, [], 0),
]


def test_every_subcommand_is_exercised():
    assert {c for c, *_ in CASES} | {"verify-certificate"} == set(COMMANDS)


@pytest.mark.parametrize("command,doc,flags,expected", CASES,
                         ids=[f"{c}-{e}-{k}" for k, (c, _, _, e) in enumerate(CASES)])
def test_subcommand(tmp_path, command, doc, flags, expected):
    code, out = cli(tmp_path, command, doc, *flags)
    assert code == expected, out
    assert out["command"] == command
    assert out["status"] == {0: "ok", 1: "negative"}[code]
    if out["certificate"] is not None:
        assert_certificate_accepted(tmp_path, out)
        assert_certificate_accepted(tmp_path, out["certificate"])


def test_contractible_emits_homotopy(tmp_path):
    code, out = cli(tmp_path, "contractible", {"complex": C.complex_doc(cone_of_identity())})
    assert code == 0 and out["certificate"]["kind"] == "contracting_homotopy"


def test_split_failure_names_degree_and_complement(tmp_path):
    code, out = cli(tmp_path, "split-contractible", {"complex": C.complex_doc(retraction_complex(R23, 2, 3))})
    assert code == 1
    assert out["result"]["degree"] == 0 and out["result"]["complement_multirank"] == [1]
    assert out["certificate"]["kind"] == "failure_witness"


def test_wic_check_reports_both_verdicts(tmp_path):
    code, out = cli(tmp_path, "wic-check", {"spec": PROD.to_json()})
    r = out["result"]
    assert r["weakly_idempotent_complete"] and not r["idempotent_complete"]
    assert r["idempotent_witness"]["multirank"] == [1, 0]
    code, out = cli(tmp_path, "wic-check", {"spec": R23.to_json()})
    assert out["result"]["counterexample"]["pair"] == [2, 3]


def test_heart_roundtrip_output(tmp_path):
    code, out = cli(tmp_path, "heart-roundtrip", {"spec": R23.to_json(), "object": 1})
    assert out["result"]["complex"]["terms"] == [2, 3]
    assert out["result"]["recovered"] == 1


def test_kar_map_checks_functoriality(tmp_path):
    Z = half()
    f = KarMorphism.cut(Z, Z, ExactMatrix(F23, 1, 1, [[(1, 2)]]))
    doc = {"hom": RingHom("projection", F23, 0).to_json(), "morphisms": [C.mor_doc(f), C.mor_doc(f)]}
    code, out = cli(tmp_path, "kar-map", doc)
    assert code == 0 and out["result"]["functorial"]


def test_spec_flag_overrides_document(tmp_path):
    code, out = cli(tmp_path, "complement", {"a": 2, "b": 3}, "--spec", json.dumps(R23.to_json()))
    assert code == 1
    code, out = cli(tmp_path, "complement", {"a": 2, "b": 3}, "--ring", '"Q"')
    assert code == 0


@pytest.mark.parametrize("command,doc,path", [
    ("complement", {"spec": R23.to_json(), "a": 2}, "$.b"),
    ("contractible", {"complex": {"spec": FULL_Q.to_json(), "min_degree": 0, "terms": [1, 1],
                                  "diffs": [{"rows": 2, "cols": 1, "entries": ["1", "0"]}]}}, "$.complex.diffs[0]"),
    ("wkar-witness", {"spec": {"ring": "R", "allowed": "full", "layer": "base"}, "object": 1}, "$.spec"),
    ("verify-certificate", {"kind": "mystery"}, "$.kind"),
])
def test_input_errors_name_the_path(tmp_path, command, doc, path):
    code, out = cli(tmp_path, command, doc)
    assert code == 2
    assert out["status"] == "input-error"
    assert out["error"]["path"].startswith(path)


def test_invalid_json_is_an_input_error(tmp_path):
    src = tmp_path / "bad.json"
    src.write_text("{not json", encoding="utf-8")
    code, out = run(["k0", "--in", str(src)])
    assert code == 2 and out["error"]["path"] == "$"


def test_tampered_certificate_is_rejected(tmp_path):
    code, out = cli(tmp_path, "contractible", {"complex": C.complex_doc(cone_of_identity())})
    cert = out["certificate"]
    cert["homotopy"]["comps"] = {k: {"rows": v["rows"], "cols": v["cols"], "entries": ["0"] * len(v["entries"])}
                                 for k, v in cert["homotopy"]["comps"].items()}
    code, res = cli(tmp_path, "verify-certificate", cert)
    assert code == 1 and not res["result"]["valid"]


def test_module_entry_point(tmp_path):
    out_file = tmp_path / "out.json"
    proc = subprocess.run(
        [sys.executable, "-m", "wicat", "complement", "--ring", '"Q"', "--out", str(out_file)],
        input=json.dumps({"a": 1, "b": 4}), capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(out_file.read_text(encoding="utf-8"))
    assert doc["result"]["complement"] == 3
