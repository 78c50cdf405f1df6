import json
import subprocess
import sys

import pytest

from decorel.cli import main
from decorel.sarel import BP, NATIVE, ConstraintRelation, relation_equal, to_convention

TWO_DECAYS = """
network left
  species A
  reaction d: A -> 0 rate 1
  inputs x->A
  outputs y->A
end

network right
  species A
  reaction d: A -> 0 rate 1
  inputs y->A
  outputs z->A
end

compose both = left ; right
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def equations(r):
    names = r.variable_names()
    return {p.format(names) for p in r.equations}


@pytest.fixture
def two_decays(tmp_path):
    p = tmp_path / "two.net"
    p.write_text(TWO_DECAYS)
    return str(p)


def test_blackbox_decay_json(capsys):
    code, out, _ = run(capsys, "blackbox", "decay.net", "main")
    assert code == 0
    r = ConstraintRelation.loads(out)
    assert r.internal.size == 1 and r.convention == NATIVE
    assert equations(r) == {"I_x + O_y + A", "cin_x - A", "cout_y - A"}


def test_blackbox_bp_round_trip(capsys):
    _, native, _ = run(capsys, "blackbox", "decay.net", "main")
    _, bp, _ = run(capsys, "blackbox", "decay.net", "main", "--convention", "bp")
    r_bp = ConstraintRelation.loads(bp)
    assert r_bp.convention == BP
    assert equations(r_bp) == {"-I_x + O_y + A", "cin_x - A", "cout_y - A"}
    assert relation_equal(to_convention(r_bp, NATIVE), ConstraintRelation.loads(native))


def test_blackbox_text(capsys):
    code, out, _ = run(capsys, "blackbox", "decay.net", "main", "--out", "text")
    assert code == 0 and out.startswith("relation (x | y) exists A  [native]")


def test_network_name_defaults(capsys, two_decays):
    _, named, _ = run(capsys, "blackbox", "decay.net", "main")
    code, bare, _ = run(capsys, "blackbox", "decay.net")
    assert code == 0 and bare == named
    # no network called main: the last definition (the composite) is used
    _, last, _ = run(capsys, "compose", two_decays, "both", "--out", "json")
    assert run(capsys, "compose", two_decays, "--out", "json")[1] == last


def test_compose_merges_decays(capsys, two_decays):
    code, out, _ = run(capsys, "compose", two_decays, "both", "--out", "json")
    assert code == 0
    data = json.loads(out)
    assert data["species"] == ["A"]
    assert data["inputs"] == {"x": "A"} and data["outputs"] == {"z": "A"}
    assert data["field"]["A"] == [{"coef": "-2", "monomial": [[0, 1]]}]


def test_compose_text(capsys, two_decays):
    code, out, _ = run(capsys, "compose", two_decays, "both")
    assert code == 0 and "dA/dt = -2*A" in out


def test_solve_decay(capsys, tmp_path):
    _, rel, _ = run(capsys, "blackbox", "decay.net", "main")
    p = tmp_path / "decay.json"
    p.write_text(rel)
    code, out, _ = run(capsys, "solve", str(p), "--fix", "I_x=1", "--fix", "O_y=-1")
    assert code == 0
    data = json.loads(out)
    assert data["exact"] and data["points"][0]["A"] == "0"
    assert data["nonnegative"] == [True] and data["directions"] == []


def test_solve_intro_from_nearby_seed(capsys, tmp_path):
    _, rel, _ = run(capsys, "blackbox", "intro.net", "main")
    p = tmp_path / "intro.json"
    p.write_text(rel)
    fixes = ["I_a1=-1/2", "I_a2=-1/2", "I_b=-1", "cin_a1=1", "cout_d=1"]
    seed = ["A=1.1", "B=0.9", "C=2.1", "D=1.05", "O_d=1.9"]
    argv = ["solve", str(p)] + [a for f in fixes for a in ("--fix", f)]
    argv += [a for s in seed for a in ("--seed-point", s)]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    point = json.loads(out)["points"][0]
    expected = {"A": 1, "B": 1, "C": 2, "D": 1, "O_d": 2, "cin_b": 1}
    for k, v in expected.items():
        assert abs(float(point[k]) - v) < 1e-9


def test_glued_composition_matches_monolithic(capsys):
    _, whole, _ = run(capsys, "blackbox", "intro.net", "main")
    _, glued, _ = run(capsys, "blackbox", "intro.net", "glued")
    a, b = ConstraintRelation.loads(whole), ConstraintRelation.loads(glued)
    assert equations(a) == equations(b)


def test_check_laws(capsys):
    code, out, _ = run(capsys, "check-laws", "--size", "2", "--cases", "10")
    assert code == 0
    done = out.strip().splitlines()[-1]
    passed, total = done.split()[0].split("/")
    assert passed == total


def test_selftest_single_criterion(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1")
    assert code == 0 and out.startswith("[PASS] criterion  1:")


@pytest.mark.parametrize("argv, code", [
    (["blackbox", "no-such-file.net", "main"], 1),
    (["blackbox", "decay.net", "nothing"], 1),
    (["solve", "no-such.json"], 1),
])
def test_usage_errors(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_argparse_errors_exit_with_usage_code():
    with pytest.raises(SystemExit) as info:
        main(["blackbox"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["blackbox", "decay.net", "main", "--convention", "sideways"])
    assert info.value.code == 1


def test_parse_error(capsys, tmp_path):
    p = tmp_path / "bad.net"
    p.write_text("network m\n  species A B\n  reaction r: A + -> B rate 1\nend\n")
    code, _, err = run(capsys, "compose", str(p), "m")
    assert code == 2 and "line 3, column 19" in err


def test_malformed_relation_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "solve", str(p))[0] == 2
    p.write_text("{}")
    assert run(capsys, "solve", str(p))[0] == 2


def test_inconsistent_fixing(capsys, tmp_path):
    _, rel, _ = run(capsys, "blackbox", "decay.net", "main")
    p = tmp_path / "decay.json"
    p.write_text(rel)
    code, _, err = run(capsys, "solve", str(p), "--fix", "I_x=1", "--fix", "O_y=0", "--fix", "A=5")
    assert code == 3 and "InconsistentFixing" in err


def test_bad_assignments(capsys, tmp_path):
    _, rel, _ = run(capsys, "blackbox", "decay.net", "main")
    p = tmp_path / "decay.json"
    p.write_text(rel)
    assert run(capsys, "solve", str(p), "--fix", "nope=1")[0] == 1
    assert run(capsys, "solve", str(p), "--fix", "I_x")[0] == 1
    assert run(capsys, "solve", str(p), "--fix", "I_x=abc")[0] == 1


def test_no_convergence(capsys, tmp_path):
    r = {"left": ["x"], "right": [], "internal": [], "convention": "native",
         "equations": [[{"coef": "1", "monomial": [[0, 2]]}, {"coef": "1", "monomial": []}]]}
    p = tmp_path / "none.json"
    p.write_text(json.dumps(r))
    code, _, err = run(capsys, "solve", str(p), "--starts", "2")
    assert code == 3 and "NoConvergence" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "decorel", "blackbox", "decay.net", "main", "--out", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "cin_x - A = 0" in proc.stdout
