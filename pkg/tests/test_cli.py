import hashlib
import json
import subprocess
import sys

import pytest

from qtd import __version__
from qtd.cli import main
from qtd.io import bundled

ORDER3 = str(bundled("order3_v4_q2.grp"))
PROBLEM = str(bundled("problem_3_4_3_1_q2.json"))


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def reports(out):
    return [json.loads(line) for line in out.strip().splitlines()]


@pytest.fixture()
def trivial_file(tmp_path, capsys):
    path = tmp_path / "triv.des"
    code, cap = run(capsys, "trivial", "4", "3", "2", "3")
    assert code == 0
    path.write_text(cap.out)
    return str(path)


def test_gaussian(capsys):
    code, cap = run(capsys, "gaussian", "8", "4", "2")
    assert code == 0 and cap.out.strip() == "200787"
    code, cap = run(capsys, "gaussian", "4", "2", "2", "--json")
    rep = reports(cap.out)[0]
    assert rep["outputs"]["value"] == 35 and rep["version"] == __version__
    assert rep["inputs"] == {} and "seconds" in rep["timing"]


def test_orbits_json(capsys):
    code, cap = run(capsys, "orbits", ORDER3, "-k", "1", "--json")
    rep = reports(cap.out)[0]
    assert code == 0
    assert rep["outputs"]["orbit_count"] == 5
    assert rep["outputs"]["histogram"] == {"3": 5}
    digest = hashlib.sha256(open(ORDER3, "rb").read()).hexdigest()
    assert rep["inputs"] == {ORDER3: digest}


def test_deterministic_except_timing(capsys):
    outs = []
    for _ in range(2):
        _, cap = run(capsys, "lambda", ORDER3, "--json")
        rep = reports(cap.out)[0]
        rep.pop("timing")
        outs.append(rep)
    assert outs[0] == outs[1]
    assert outs[0]["outputs"]["methods_agree"] is True


def test_check_pass_and_fail(capsys, trivial_file, tmp_path):
    code, cap = run(capsys, "check", trivial_file, ORDER3)
    assert code == 0, cap.out
    assert "cubic system: pass" in cap.out
    # drop one block: not a design any more
    lines = open(trivial_file).read().split("\n\n")
    broken = tmp_path / "broken.des"
    broken.write_text("\n\n".join(lines[:-1]) + "\n")
    code, cap = run(capsys, "check", str(broken), ORDER3, "--json")
    assert code == 1
    rep = reports(cap.out)[0]
    assert rep["outputs"]["verify_design"]["ok"] is False
    assert rep["status"] == 1


def test_check_not_automorphism(capsys, tmp_path):
    # a single 3-space is a 1-(4,3,1) design only in name; the group moves it
    d = tmp_path / "one.des"
    d.write_text("q=2 v=4 k=3 t=1 lambda=1\n1 0 0 0\n0 1 0 0\n0 0 1 0\n")
    code, cap = run(capsys, "check", str(d), ORDER3)
    assert code == 1


def test_search_lines(capsys):
    code, cap = run(capsys, "search", PROBLEM, "--json")
    assert code == 0
    lines = reports(cap.out)
    assert len(lines) == 2
    assert lines[0]["rho"] == [[3 if i == j else 1 for j in range(5)] for i in range(5)]
    assert lines[1]["outputs"]["candidate_count"] == 1


def test_search_budget_is_usage_error(capsys):
    code, cap = run(capsys, "search", PROBLEM, "--node-budget", "3")
    assert code == 2 and "node budget" in cap.err


def test_admissible(capsys, singer_group):
    code, cap = run(capsys, "admissible", str(bundled("singer_normalizer_v8_q2.grp")), "-k", "4",
                    "--lambda-max", "31", "--json")
    rep = reports(cap.out)[0]["outputs"]
    assert code == 0
    assert rep["congruence_admissible"] == [1, 10, 11, 20, 21, 30, 31]
    assert rep["modulus"] == 10


def test_admissible_needs_transitive(capsys):
    code, cap = run(capsys, "admissible", ORDER3, "-k", "3", "--lambda-max", "3")
    assert code == 1 and "not point-transitive" in cap.out


def test_problem_command_matches_bundled(capsys):
    code, cap = run(capsys, "problem", ORDER3, "-k", "3", "--lambda", "1",
                    "--block-sizes", "3", "3", "3", "3", "3")
    assert code == 0
    assert json.loads(cap.out) == json.load(open(PROBLEM))


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("q=2 v=2\ngen\n1 1\n")
    code, cap = run(capsys, "orbits", str(bad))
    assert code == 2 and "bad.grp:" in cap.err
    code, cap = run(capsys, "orbits", str(tmp_path / "nope.grp"))
    assert code == 2


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["orbits"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_corpus_command(capsys, tmp_path):
    code, cap = run(capsys, "corpus", "--v", "4", "--q", "2", "--count", "3", "--seed", "5",
                    "--out", str(tmp_path))
    assert code == 0
    files = sorted(tmp_path.glob("*.grp"))
    assert len(files) == 3
    code, cap2 = run(capsys, "corpus", "--v", "4", "--q", "2", "--count", "3", "--seed", "5",
                     "--out", str(tmp_path / "again"))
    assert [f.read_text() for f in files] == [
        f.read_text() for f in sorted((tmp_path / "again").glob("*.grp"))]


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "qtd.cli", "gaussian", "4", "1", "2"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "15"
