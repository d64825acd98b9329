import json
import subprocess
import sys

import pytest

from dotted_chords.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "2", "--filter=all")
    assert code == 0
    assert out.splitlines() == ["..", "AA", "count: 2"]
    code, out, _ = run(capsys, "enumerate", "4", "--filter=cq")
    assert out.splitlines() == ["ABAB", "count: 1"]
    code, out, _ = run(capsys, "enumerate", "4")
    assert out.splitlines()[-1] == "count: 10"


def test_enumerate_filters(capsys):
    _, out, _ = run(capsys, "enumerate", "4", "--filter=regular")
    assert "ABBA" not in out.split()
    _, out, _ = run(capsys, "enumerate", "3", "--filter=quasiplanar")
    assert "A.A" not in out.split()
    _, out, _ = run(capsys, "enumerate", "3", "--filter=connected")
    assert out.split() == ["A.A", "count:", "1"]


def test_enumerate_bad_flag(capsys):
    code, _, _ = run(capsys, "enumerate", "2", "--filter=bogus")
    assert code == 2
    code, _, _ = run(capsys, "enumerate", "99")
    assert code == 2


def test_wick(capsys):
    code, out, _ = run(capsys, "wick", "4")
    assert code == 0
    assert out.strip() == ".... - ..AA - .AA. - AA.. + AABB - ABAB"
    _, out, _ = run(capsys, "wick", "ABAB")
    assert out.strip() == "0"


def test_wick_prime(capsys):
    code, out, _ = run(capsys, "wick", "...AA.", "--prime")
    assert code == 0
    assert out.strip() == "...AA. - ..ABBA - .AABB. - AA.BB. + AABCCB - ABACCB"
    code, _, err = run(capsys, "wick", "AB.AB", "--prime")
    assert code == 3 and "quasiplanar" in err
    code, _, _ = run(capsys, "wick", "AB.AB", "--decompose")
    assert code == 3


def test_wick_json_and_decompose(capsys):
    code, out, _ = run(capsys, "wick", "2", "--format=json")
    assert json.loads(out) == {
        "terms": [{"coeff": "1", "diagram": ".."}, {"coeff": "-1", "diagram": "AA"}]
    }
    _, out, _ = run(capsys, "wick", "..", "--decompose", "--format=json")
    atoms = json.loads(out)["terms"]
    assert {"coeff": "1", "wick_of": ".."} in atoms


def test_wick_parse_error(capsys):
    code, _, err = run(capsys, "wick", "AB")
    assert code == 2 and err


@pytest.mark.parametrize(
    "identity,n", [("convolution", 8), ("projection", 10), ("product", 8), ("signs", 8),
                   ("hopf-concat", 4), ("hopf-shuffle", 5), ("closed-form", 8)]
)
def test_verify_passes(capsys, identity, n):
    code, out, _ = run(capsys, "verify", f"--identity={identity}", f"--max-degree={n}")
    assert code == 0
    assert out.startswith("PASS")


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "--identity=nope")
    assert code == 2 and "unknown identity" in err


def test_verify_failure_reports_counterexample(capsys, monkeypatch):
    from dotted_chords import identities

    monkeypatch.setitem(
        identities.SUITES, "signs",
        lambda n: [identities.Failure("signs", "AA", "planted")],
    )
    code, out, _ = run(capsys, "verify", "--identity=signs", "--max-degree=2")
    assert code == 1
    assert "AA" in out and "planted" in out


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", "ABA.BCC.", "--format=dot")
    assert code == 0
    assert out.count("[label=") == 5
    assert out.count("fillcolor=black") == 2
    _, out, _ = run(capsys, "graph", "ABA.BCC.", "--format=json")
    assert json.loads(out)["adjacency"][1] == [1, 0, 1, 0, 0]
    code, out, _ = run(capsys, "graph", "")
    assert code == 0 and out == "graph G {\n}\n"
    code, _, _ = run(capsys, "graph", "A.")
    assert code == 2


def test_fourt(capsys):
    code, out, _ = run(capsys, "fourt", "--spectators=0")
    assert code == 0
    data = json.loads(out)
    assert data["match"] is False
    assert data["witness"]["sign_flip"]["flipped_label"] == 1
    code, out, _ = run(capsys, "fourt", "--context=123AA")
    assert json.loads(out)["match"] is True
    code, _, _ = run(capsys, "fourt", "--spectators=7")
    assert code == 2
    code, _, _ = run(capsys, "fourt", "--context=1A3A2")
    assert code == 2


def test_pretty_not_in_machine_output(capsys):
    _, plain, _ = run(capsys, "graph", "ABAB", "--format=json")
    _, pretty_out, err = run(capsys, "graph", "ABAB", "--format=json", "--pretty")
    assert plain == pretty_out and "+" in err
    _, out, _ = run(capsys, "wick", "2", "--pretty")
    assert "o--o" in out


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "dotted_chords", "wick", "6", "--format=json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
    r = subprocess.run([sys.executable, "-m", "dotted_chords", "wick", "AB.AB", "--prime"],
                       capture_output=True)
    assert r.returncode == 3
