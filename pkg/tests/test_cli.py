import io
import json
import subprocess
import sys

import pytest

from bilattice_duality.cli import COMMANDS, run
from bilattice_duality.core import power
from bilattice_duality.fileformat import fingerprint, serialize, to_document
from bilattice_duality.varieties import canonical


def call(*argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


@pytest.fixture
def square_file(tmp_path):
    p = tmp_path / "square.json"
    p.write_text(serialize(power(canonical("4"), 2)))
    return str(p)


def test_roundtrip_report():
    code, out = call("roundtrip", "--variety", "DB", "--canonical", "4")
    assert code == 0 and "evaluation map: isomorphism" in out


def test_free_report():
    code, out = call("free", "--variety", "DB", "1")
    assert code == 0 and "|F(1)| = 36" in out


def test_unify_type_from_file(square_file):
    code, out = call("unify-type", square_file)
    assert code == 0 and "type: omega" in out


@pytest.mark.parametrize("argv,needle", [
    (["validate", "--canonical", "4"], "valid: yes"),
    (["canonical", "4u"], "size: 4"),
    (["homs", "--canonical", "4u", "--canonical", "4u"], "homomorphisms: 3"),
    (["subalgebras", "--canonical", "4^2"], "subuniverses: 4"),
    (["congruences", "--canonical", "4^2"], "congruences: 4"),
    (["dual", "--canonical", "4u"], "points per sort: 3"),
    (["roundtrip", "--canonical", "2+*2-"], "coevaluation map: isomorphism"),
    (["piggyback", "--variety", "DB"], "omega: alpha, beta"),
    (["dismount", "--canonical", "4u"], "non-singleton classes: 2"),
    (["knowledge-dual", "--canonical", "4"], "|H(A_k)| = 2"),
    (["priestley", "--chain", "3"], "|H(L)| = 2"),
    (["prodrep", "--canonical", "4"], "truth lattice: L1 x L2^d"),
    (["bowtie", "--square"], "size: 16"),
    (["free", "--variety", "DBu", "1"], "|F(1)| = 16"),
    (["coproduct", "--canonical", "4", "--canonical", "4"], "|A + B| = 4"),
    (["unify-type", "--canonical", "4"], "type: 1"),
    (["admissible", "--canonical", "4^2"], "clauses hold: no"),
    (["embed-free", "--canonical", "4u"], "target: F(1) with 16 elements"),
    (["structural", "--canonical", "4"], "injective: yes"),
    (["iso", "--canonical", "4", "--canonical", "4"], "isomorphic: yes"),
])
def test_every_command(argv, needle):
    code, out = call(*argv)
    assert code == 0, out
    assert needle in out
    assert "fingerprint: " in out


def test_every_command_is_covered():
    covered = {"validate", "canonical", "homs", "subalgebras", "congruences", "dual", "edual",
               "roundtrip", "piggyback", "dismount", "knowledge-dual", "priestley", "prodrep",
               "bowtie", "free", "coproduct", "unify-type", "admissible", "embed-free",
               "structural", "iso"}
    assert covered == set(COMMANDS)


def test_dual_then_edual(tmp_path):
    space = tmp_path / "x.json"
    assert call("dual", "--canonical", "4^2", "-o", str(space))[0] == 0
    code, out = call("edual", "--variety", "DB", str(space))
    assert code == 0 and "|E(X)| = 16" in out


def test_json_format_and_fingerprint():
    code, out = call("iso", "--canonical", "4", "--canonical", "4", "--format", "json")
    rep = json.loads(out)
    doc = to_document(canonical("4"))
    assert rep["summary"] == ["isomorphic: yes"]
    assert len(rep["fingerprint"]) == 16
    assert rep["fingerprint"] != fingerprint(doc)        # options are hashed too


def test_output_is_deterministic():
    a = call("dismount", "--canonical", "4u", "--format", "json")
    b = call("dismount", "--canonical", "4u", "--format", "json")
    assert a == b


def test_fingerprint_depends_on_input_only(square_file, monkeypatch):
    _, from_file = call("unify-type", square_file, "--format", "json")
    _, from_name = call("unify-type", "--canonical", "4^2", "--format", "json")
    assert json.loads(from_file)["fingerprint"] == json.loads(from_name)["fingerprint"]


def test_stdin_input(monkeypatch):
    code, out = call("validate", "-", stdin=serialize(canonical("4")), monkeypatch=monkeypatch)
    assert code == 0 and "valid: yes" in out


def test_exit_code_parse_errors(monkeypatch, tmp_path):
    bad = to_document(canonical("4"))
    bad["colour"] = "red"
    assert call("validate", "-", stdin=json.dumps(bad), monkeypatch=monkeypatch)[0] == 2
    assert call("validate", str(tmp_path / "missing.json"))[0] == 2
    assert call("validate", "--canonical", "nope")[0] == 2
    assert call("no-such-command")[0] == 2
    assert call("homs", "--canonical", "4")[0] == 2
    assert call("free", "x")[0] == 2
    assert call("roundtrip", "--canonical", "4", "--variety", "XYZ")[0] == 2


def test_exit_code_validation(monkeypatch):
    doc = to_document(canonical("4"))
    doc["operations"]["neg"] = [0, 1, 2, 3]
    code, out = call("validate", "-", stdin=json.dumps(doc), monkeypatch=monkeypatch)
    assert code == 3 and "valid: no" in out
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(doc)))
    assert run(["unify-type", "-"], stdout=io.StringIO()) == 3


def test_no_validate_skips_checks(monkeypatch):
    doc = to_document(canonical("4"))
    doc["operations"]["neg"] = [0, 1, 2, 3]
    code, _ = call("homs", "-", "--canonical", "4", "--no-validate",
                   stdin=json.dumps(doc), monkeypatch=monkeypatch)
    assert code == 0


def test_exit_code_theorem_violation(monkeypatch):
    # an algebra that passes as a DB algebra only without validation: the
    # two-element lattice with identity negation, given the DB signature
    doc = {"variety": "DB", "universe": ["a", "b"],
           "operations": {"or_t": [[0, 1], [1, 1]], "and_t": [[0, 0], [0, 1]],
                          "neg": [0, 1], "0t": "a", "1t": "b", "0k": "a", "1k": "b"}}
    code, _ = call("roundtrip", "-", "--no-validate", stdin=json.dumps(doc),
                   monkeypatch=monkeypatch)
    assert code == 4


def test_exit_code_resource_guard():
    assert call("free", "6")[0] == 5
    assert call("free", "2", "--max-size", "100")[0] == 5


def test_variety_coercion():
    code, out = call("unify-type", "--canonical", "4", "--variety", "DBu")
    assert code == 0 and "|D(A)| = 3" in out
    assert call("unify-type", "--canonical", "4u", "--variety", "DB")[0] == 2


def test_random_lattice_seeded():
    a = call("bowtie", "--random-lattice", "3", "--seed", "11", "--format", "json")
    b = call("bowtie", "--random-lattice", "3", "--seed", "11", "--format", "json")
    assert a == b and a[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "bilattice_duality", "free", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "|F(0)| = 4" in res.stdout
