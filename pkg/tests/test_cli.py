import io
import json
import os

import pytest

from netoutdeg.cli import main


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.ballots"
    path.write_text("alternatives: a b c\n1: order a > b > c\n")
    return str(path)


@pytest.fixture
def tied_borda_file(tmp_path):
    path = tmp_path / "tied.ballots"
    path.write_text("alternatives: a b c\n1: order a = b > c\n")
    return str(path)


class TestWinners:
    def test_json_output(self, chain_file):
        code, out, _ = run_cli(["winners", chain_file, "--rule", "o"])
        assert code == 0
        payload = json.loads(out)
        assert payload == {
            "rule": "o",
            "winners": ["a"],
            "scores": {"a": "2", "b": "0", "c": "-2"},
        }

    def test_text_output(self, chain_file):
        code, out, _ = run_cli(["winners", chain_file, "--format", "text"])
        assert code == 0 and out.strip() == "a"

    def test_domain_violation_exit_code(self, chain_file):
        code, _, err = run_cli(["winners", chain_file, "--rule", "av"])
        assert code == 2
        assert "voter 1" in err and "dichotomous" in err

    def test_parse_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.ballots"
        bad.write_text("alternatives: a b c\n1: order a > b\n")
        code, _, err = run_cli(["winners", str(bad)])
        assert code == 1 and "line 2" in err


class TestScores:
    def test_exact_rational_strings(self, tied_borda_file):
        code, out, _ = run_cli(["scores", tied_borda_file, "--rule", "borda"])
        assert code == 0
        payload = json.loads(out)
        assert payload["scores"] == {"a": "3/2", "b": "3/2", "c": "0"}

    def test_score_figure(self, tied_borda_file, tmp_path):
        figure = tmp_path / "scores.png"
        code, _, _ = run_cli(["scores", tied_borda_file, "--rule", "borda", "--figure", str(figure)])
        assert code == 0
        assert figure.stat().st_size > 0


class TestNetwork:
    def test_csv_export(self, tmp_path):
        src = tmp_path / "p.ballots"
        src.write_text("alternatives: a b c\n1: order a > b > c\n2: order b > a > c\n")
        code, out, _ = run_cli(["network", str(src), "--emit", "csv"])
        assert code == 0
        assert out.splitlines() == [
            "from,to,capacity",
            "a,b,1",
            "a,c,2",
            "b,a,1",
            "b,c,2",
            "c,a,0",
            "c,b,0",
        ]

    def test_dot_export_skips_zero_arcs(self, chain_file):
        code, out, _ = run_cli(["network", chain_file, "--emit", "dot"])
        assert code == 0
        assert out.startswith("digraph")
        assert '"a" -> "b" [label="1"];' in out
        assert '"c" -> "a"' not in out

    def test_output_file_and_figure(self, chain_file, tmp_path):
        target = tmp_path / "net.csv"
        figure = tmp_path / "net.png"
        code, out, _ = run_cli([
            "network", chain_file, "-o", str(target), "--figure", str(figure),
        ])
        assert code == 0 and out == ""
        assert target.read_text().startswith("from,to,capacity")
        assert figure.stat().st_size > 0

    def test_fractional_capacity_formatting(self):
        from netoutdeg.cli import _network_csv
        from netoutdeg.networks import Network
        from netoutdeg.relations import default_alternatives
        from fractions import Fraction

        net = Network(default_alternatives(2), {("a", "b"): Fraction(1, 2)})
        assert "a,b,1/2" in _network_csv(net)


class TestAxiomsCommand:
    def test_clean_run_exits_zero(self):
        code, out, _ = run_cli([
            "axioms", "--rule", "o", "--domain", "order",
            "--trials", "200", "--seed", "7", "--m", "3",
        ])
        assert code == 0
        payload = json.loads(out)
        assert payload["violations"] == []
        assert payload["result"] == "no-counterexample-found"

    def test_mutant_exits_three_with_reports(self):
        code, out, _ = run_cli([
            "axioms", "--rule", "mutant:lexo", "--domain", "linear",
            "--trials", "100", "--seed", "7", "--m", "3",
        ])
        assert code == 3
        payload = json.loads(out)
        assert payload["result"] == "violated"
        assert payload["violations"]
        first = payload["violations"][0]
        assert {"axiom", "rule", "expected", "observed", "witness"} <= set(first)
        assert "alternatives: a b c" in first["witness"]["profile"]

    def test_same_seed_is_byte_identical(self):
        argv = ["axioms", "--rule", "mutant:lexo", "--domain", "linear",
                "--trials", "60", "--seed", "11", "--m", "3"]
        _, first, _ = run_cli(argv)
        _, second, _ = run_cli(argv)
        assert first == second

    def test_env_seed_fallback(self, monkeypatch):
        argv = ["axioms", "--rule", "o", "--domain", "linear", "--trials", "20", "--m", "3"]
        monkeypatch.setenv("NETOUTDEG_SEED", "123")
        _, out, _ = run_cli(argv)
        assert json.loads(out)["seed"] == 123

    def test_on_faithfulness_section(self):
        code, out, _ = run_cli([
            "axioms", "--rule", "av", "--domain", "di:1,2",
            "--trials", "50", "--seed", "2", "--m", "3",
        ])
        assert code == 0
        section = json.loads(out)["on_faithfulness"]
        assert section["status"] == "verified-constructively"
        assert section["constructions"] == ["di:1", "di:2"]

    def test_check_subset(self):
        code, out, _ = run_cli([
            "axioms", "--rule", "o", "--domain", "linear",
            "--trials", "50", "--seed", "3", "--m", "3",
            "--check", "neutrality,consistency",
        ])
        assert code == 0
        code, _, err = run_cli([
            "axioms", "--rule", "o", "--domain", "linear",
            "--trials", "50", "--seed", "3", "--m", "3", "--check", "bogus",
        ])
        assert code == 2 and "unknown axiom" in err


class TestAlgebraCommand:
    def test_rank_check(self):
        code, out, _ = run_cli(["algebra", "--m", "4", "--check", "rank"])
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert payload["computed"] == {"kernel_dim": 9, "rank": 3}

    def test_ps_span_check(self):
        code, out, _ = run_cli(["algebra", "--m", "3", "--check", "ps-span"])
        assert json.loads(out)["pass"] is True and code == 0

    def test_regular_linear(self):
        code, out, _ = run_cli(["algebra", "--m", "3", "--check", "regular:linear"])
        payload = json.loads(out)
        assert code == 0 and payload["pass"] is True
        assert payload["report"]["span"]["computed"] == "pseudo_symmetric"

    def test_regular_cycles_reports_refuted_witness(self):
        code, out, _ = run_cli(["algebra", "--m", "3", "--check", "regular:cycles"])
        payload = json.loads(out)
        assert code == 0 and payload["pass"] is True  # expected: not regular
        assert payload["report"]["regular"] is False

    def test_budget_error_is_surfaced(self):
        code, _, err = run_cli(["algebra", "--m", "6", "--check", "ps-span"])
        assert code == 2 and "gated" in err

    def test_determinism(self, chain_file):
        argv = ["algebra", "--m", "4", "--check", "regular:di:1"]
        assert run_cli(argv) == run_cli(argv)
