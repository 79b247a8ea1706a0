import json
import math

import pytest

from hyperturan.cli import main
from hyperturan.constructions import build_h_k, load_paper_digraph
from hyperturan.textio import format_digraph, format_hypergraph, parse_hypergraph
from hyperturan.verify import VerificationReport, VerifyConfig, verify_paper


@pytest.fixture
def h3_file(tmp_path):
    path = tmp_path / "h3.hyp"
    path.write_text(format_hypergraph(build_h_k(3)))
    return str(path)


@pytest.fixture
def dig_file(tmp_path):
    path = tmp_path / "d.dig"
    path.write_text(format_digraph(load_paper_digraph()))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_hk(capsys):
    code, out = run(capsys, "hk", "-k", "3", "--format", "text")
    assert code == 0
    assert parse_hypergraph(out) == build_h_k(3)


def test_blowup_and_density(capsys, h3_file, dig_file):
    code, out = run(capsys, "blowup", h3_file, "--mult", "1,2,2,2,2", "--digraph", dig_file)
    assert code == 0 and json.loads(out)["edges"] == 58
    code, out = run(capsys, "density", h3_file, "--weights", "1/9,2/9,2/9,2/9,2/9")
    assert json.loads(out) == {"density": "32/81"}
    code, out = run(capsys, "density", h3_file, "--weights", "1/9,2/9,2/9,2/9,2/9", "--digraph", dig_file)
    assert json.loads(out) == {"density": "46/81"}


def test_check_exit_codes(capsys, h3_file, tmp_path):
    code, out = run(capsys, "check", h3_file, "--clique", "4")
    assert code == 0 and json.loads(out)["witness"] == [2, 3, 4, 5]
    code, out = run(capsys, "check", h3_file, "--near-clique", "5")
    assert code == 1 and json.loads(out)["found"] is False
    code, out = run(capsys, "check", h3_file, "--count-cliques", "4")
    assert code == 0 and json.loads(out)["count"] == 1
    F = tmp_path / "k4.hyp"
    F.write_text("p hyp 4 3 4\ne 1 2 3\ne 1 2 4\ne 1 3 4\ne 2 3 4\n")
    code, out = run(capsys, "check", h3_file, "--subgraph", str(F))
    assert code == 0 and json.loads(out)["found"] is True


def test_turan_and_bound(capsys):
    code, out = run(capsys, "turan", "-n", "5", "-s", "4", "-k", "3", "--witnesses")
    data = json.loads(out)
    assert code == 0 and data["value"] == 7 and len(data["witnesses"]) == 1
    code, out = run(capsys, "bound", "-n", "7", "-s", "6", "-k", "4")
    assert json.loads(out) == {"bound": "98/3", "floor": 32}
    code, out = run(capsys, "turan", "-n", "10", "-s", "4", "-k", "3")
    assert code == 2 and "error" in json.loads(out)


def test_find_digraph(capsys):
    code, out = run(capsys, "find-digraph", "--base", "h3", "--weights", "1/9,2/9,2/9,2/9,2/9",
                    "--forbid", "k5minus")
    data = json.loads(out)
    assert code == 0 and data["max_density"] == "46/81"
    assert data["digraphs"][0]["digraph"].endswith(format_digraph(load_paper_digraph()))


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _ = run(capsys, "bound", "-n", "5", "-s", "4", "-k", "3", "--out", str(out))
    assert json.loads(out.read_text())["bound"] == "15/2"


def test_bad_input_reports_error(capsys, tmp_path):
    bad = tmp_path / "bad.hyp"
    bad.write_text("p hyp 4 3 2\ne 1 2 3\ne 1 2 3\n")
    assert main(["check", str(bad), "--clique", "3"]) == 2
    assert "line 3" in capsys.readouterr().err


class TestVerifyPaper:
    def test_default_all_verified(self, capsys):
        code, out = run(capsys, "verify-paper")
        data = json.loads(out)
        assert code == 0
        checkable = [c for c in data["claims"] if not c["id"].startswith("ref-")]
        assert len(checkable) == 11
        assert all(c["status"] == "verified" for c in checkable)
        assert all(c["status"] == "skipped" for c in data["claims"] if c["id"].startswith("ref-"))

    def test_roundtrip_and_determinism(self):
        a, b = verify_paper(), verify_paper()
        assert VerificationReport.from_json(a.to_json()) == a
        for r in (a, b):
            for c in r.claims:
                c.duration_s = 0.0
        assert a.to_json() == b.to_json()

    def test_unique_claim_ids(self):
        ids = [c.id for c in verify_paper().claims]
        assert len(ids) == len(set(ids))

    def test_fractions_reduced(self):
        for c in verify_paper().claims:
            for v in c.values.values():
                if isinstance(v, str) and "/" in v and v.replace("/", "").isdigit():
                    p, q = map(int, v.split("/"))
                    assert q > 1 and math.gcd(p, q) == 1

    def test_low_cap_skips(self, capsys):
        code, out = run(capsys, "verify-paper", "--turan-max-edges", "5")
        data = json.loads(out)
        status = {c["id"]: c["status"] for c in data["claims"]}
        assert status["turan-5-4-3"] == "skipped"
        assert code == 0

    def test_corrupted_digraph_fails(self, capsys, tmp_path):
        bad = tmp_path / "bad.dig"
        bad.write_text("p dig 5 2\na 2 4\na 2 5\n")  # {2,4,5} is an edge: not K_5^3- free
        code, out = run(capsys, "verify-paper", "--digraph", str(bad))
        status = {c["id"]: c["status"] for c in json.loads(out)["claims"]}
        assert status["digraph-46-81"] == "failed"
        assert code == 1
        broken = tmp_path / "broken.dig"
        broken.write_text("p dig 5 1\na 3 3\n")
        report = verify_paper(VerifyConfig(digraph_path=str(broken)))
        status = {c.id: c.status for c in report.claims}
        assert status["digraph-46-81"] == status["finite-g-free"] == "failed"
        assert report.exit_code == 1

    def test_text_rendering(self, capsys):
        code, out = run(capsys, "verify-paper", "--format", "text")
        assert "11 verified, 0 failed, 4 skipped" in out
