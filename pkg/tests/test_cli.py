import csv
import json

import pytest

from main import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


@pytest.fixture
def tm_sequence(tmp_path):
    """Directorio de secuencia TM(2,2) completo para n = 2..4"""
    out = tmp_path / "tm"
    assert main(["distribution", "--n-min", "2", "--n-max", "4", "-o", str(out), "--registry-url", ""]) == 0
    return out


class TestEnumerate:
    def test_tm_count(self, capsys):
        assert run(["enumerate", "--model", "tm", "--symbols", "2", "--states", "2", "--count"], capsys) == (0, "4096\n")

    def test_eca_count(self, capsys):
        assert run(["enumerate", "--model", "eca", "--count"], capsys) == (0, "256\n")

    def test_first_table(self, capsys):
        code, out = run(["enumerate", "--model", "tm", "--index", "0"], capsys)
        assert code == 0
        assert out.count("-> (0, LEFT, 1)") == 4

    def test_eca_table(self, capsys):
        code, out = run(["enumerate", "--model", "eca", "--index", "110"], capsys)
        assert code == 0
        assert "111 -> 0" in out
        assert "110 -> 1" in out

    def test_index_out_of_range(self, capsys):
        assert main(["enumerate", "--model", "eca", "--index", "300"]) == 1

    def test_invalid_flag(self, capsys):
        assert main(["enumerate", "--model", "lisp"]) == 1
        assert "usage" in capsys.readouterr().err


class TestDistribution:
    def test_writes_raw_and_reduced(self, tmp_path, capsys):
        out = tmp_path / "d"
        code, stdout = run(["distribution", "--n", "4", "-o", str(out), "--registry-url", ""], capsys)
        assert code == 0
        assert sorted(p.name for p in out.iterdir()) == ["n04.json", "n04.reduced.json"]
        reduced = json.loads((out / "n04.reduced.json").read_text())
        assert reduced["reduced"] is True
        assert len(reduced["entries"]) <= 6
        assert reduced["meta"]["config"]["seed"] == 0
        assert "tm(2,2) n=4" in stdout

    def test_rerun_is_byte_identical(self, tmp_path):
        args = ["distribution", "--model", "eca", "--n", "4", "--registry-url", ""]
        assert main(args + ["-o", str(tmp_path / "a")]) == 0
        assert main(args + ["-o", str(tmp_path / "b"), "--workers", "4"]) == 0
        for name in ("n04.json", "n04.reduced.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_steps_below_n(self, tmp_path, capsys):
        code = main(["distribution", "--n", "5", "--steps", "3", "-o", str(tmp_path), "--registry-url", ""])
        assert code == 1
        assert "steps" in capsys.readouterr().err
        assert list(tmp_path.iterdir()) == []

    @pytest.mark.parametrize("symbols, states, extra", [
        ("5", "5", ["--sample-size", "10"]),
        ("3", "3", ["--schedule", "all"]),
    ])
    def test_rule_space_beyond_capacity(self, tmp_path, capsys, symbols, states, extra):
        code = main(["distribution", "--symbols", symbols, "--states", states, "--n", "2",
                     "-o", str(tmp_path / "d"), "--registry-url", ""] + extra)
        assert code == 3
        assert "excede" in capsys.readouterr().err
        assert not (tmp_path / "d").exists()

    def test_config_file_and_flag_precedence(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"model": "eca", "n_min": 2, "n_max": 3, "seed": 5}))
        out = tmp_path / "seq"
        assert main(["distribution", "--config", str(config), "--seed", "6", "-o", str(out), "--registry-url", ""]) == 0
        meta = json.loads((out / "n03.json").read_text())["meta"]
        assert meta["config"]["model"] == "eca"
        assert meta["config"]["seed"] == 6
        assert (out / "convergence.csv").exists()

    def test_invalid_config_value(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"workers": 0}))
        assert main(["distribution", "--config", str(config), "-o", str(tmp_path), "--registry-url", ""]) == 1

    def test_registry_records_each_file(self, tmp_path, registry_url, capsys):
        out = tmp_path / "d"
        assert main(["distribution", "--n", "3", "-o", str(out), "--registry-url", registry_url]) == 0
        capsys.readouterr()
        code, listing = run(["runs", "--registry-url", registry_url], capsys)
        assert code == 0
        assert listing.count("distribution") == 2


class TestCompare:
    def test_self_comparison(self, tmp_path, tm_sequence, capsys):
        out = tmp_path / "cmp"
        code, _ = run(["compare", str(tm_sequence), str(tm_sequence), "-o", str(out), "--registry-url", ""], capsys)
        assert code == 0
        rows = read_csv(out / "report.csv")
        assert [r["n"] for r in rows] == ["2", "3", "4"]
        assert all(float(r["spearman"]) == pytest.approx(1.0) for r in rows)
        assert all(float(r["pearson"]) == pytest.approx(1.0) for r in rows)
        for name in ("plot_n02.csv", "rankfreq_a.csv", "rankfreq_b.csv", "report.md"):
            assert (out / name).exists()

    def test_missing_input_writes_nothing(self, tmp_path, tm_sequence):
        out = tmp_path / "cmp"
        code = main(["compare", str(tm_sequence), str(tmp_path / "missing"), "-o", str(out), "--registry-url", ""])
        assert code == 2
        assert not (out / "report.csv").exists()


class TestNaturalness:
    def test_reference_against_itself(self, tmp_path, tm_sequence, capsys):
        code, out = run(["naturalness", str(tm_sequence), str(tm_sequence), "-o", str(tmp_path), "--registry-url", ""], capsys)
        assert code == 0
        assert out.splitlines()[0] == "natural"
        assert len(read_csv(tmp_path / "evidence.csv")) == 3


class TestOtherCommands:
    def test_significance_table(self, tmp_path, capsys):
        code, _ = run(["significance-table", "--max-m", "4", "-o", str(tmp_path), "--registry-url", ""], capsys)
        assert code == 0
        rows = read_csv(tmp_path / "significance.csv")
        assert {r["m"] for r in rows} == {"2", "3", "4"}
        assert {r["tail"] for r in rows} == {"one-sided", "two-sided"}

    def test_estimate_string(self, tm_sequence, capsys):
        code, out = run(["estimate", str(tm_sequence / "n04.reduced.json"), "--string", "0000"], capsys)
        assert code == 0
        assert out.startswith("0000\t")
        assert out.rstrip().endswith("+O(1)")

    def test_estimate_unknown_string(self, tm_sequence):
        assert main(["estimate", str(tm_sequence / "n02.json"), "--string", "012"]) == 1

    def test_natural(self, tmp_path, tm_sequence, capsys):
        out = tmp_path / "nat"
        code, _ = run(["natural", str(tm_sequence), str(tm_sequence), "-o", str(out), "--registry-url", ""], capsys)
        assert code == 0
        assert (out / "n04.reduced.json").exists()

    def test_runs_without_registry(self, capsys):
        assert main(["runs", "--registry-url", ""]) == 1
