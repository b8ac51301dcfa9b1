import json

import pytest

from tsuka import Applicant, assess, default_config, save_config
from tsuka.cli import main

CFG = default_config()

MIDPOINT_FLAGS = [
    "--income", "10500000", "--loan", "102500000", "--collateral", "155000000",
]


class TestAssessCommand:
    def test_midpoint_prints_score_and_exits_3(self, capsys):
        code = main(["assess", *MIDPOINT_FLAGS])
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "score 50.00 REJECTED"
        assert code == 3

    def test_accepted_exits_0(self, capsys):
        code = main(
            ["assess", "--income", "20000000", "--loan", "5000000",
             "--collateral", "300000000"]
        )
        assert "ACCEPTED" in capsys.readouterr().out
        assert code == 0

    def test_missing_flag_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["assess", "--income", "1", "--collateral", "2"])
        assert excinfo.value.code == 2

    def test_negative_loan_is_validation_error(self, capsys):
        code = main(["assess", "--income", "1", "--loan", "-5", "--collateral", "2"])
        assert code == 2
        assert "loan_amount" in capsys.readouterr().err

    def test_json_output_parses_and_matches_library(self, capsys):
        code = main(["assess", *MIDPOINT_FLAGS, "--json"])
        assert code == 3
        body = json.loads(capsys.readouterr().out)
        direct = assess(
            Applicant(id="cli", name="", income=10_500_000, loan_amount=102_500_000,
                      collateral_value=155_000_000),
            CFG,
        )
        assert body["score"] == direct.score
        assert body["decision"] == "rejected"

    def test_trace_table_lists_every_rule(self, capsys):
        main(["assess", *MIDPOINT_FLAGS])
        out = capsys.readouterr().out
        assert out.count("IF ") == 8

    def test_config_flag_and_env(self, tmp_path, capsys, monkeypatch):
        config_path = tmp_path / "custom.json"
        from tsuka import FisConfig

        save_config(FisConfig(system=CFG.system, threshold=45.0), config_path)
        code = main(["assess", *MIDPOINT_FLAGS, "--config", str(config_path)])
        assert code == 0  # 50 >= 45 under the custom threshold
        monkeypatch.setenv("TSUKA_CONFIG", str(config_path))
        assert main(["assess", *MIDPOINT_FLAGS]) == 0


class TestBatchCommand:
    HEADER = "id,name,income,loan_amount,collateral_value\n"

    def test_clean_batch(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        src.write_text(
            self.HEADER
            + "n1,Budi,8000000,90000000,150000000\n"
            + "n2,Sari,15000000,30000000,250000000\n"
            + "n3,Joko,3000000,150000000,50000000\n",
            encoding="utf-8",
        )
        out = tmp_path / "report.csv"
        code = main(["batch", "--in", str(src), "--out", str(out)])
        assert code == 0
        assert "3 ok, 0 failed" in capsys.readouterr().out
        lines = out.read_text(encoding="utf-8").strip().split("\n")
        assert lines[0] == "id,score,decision"
        assert len(lines) == 4
        assert (tmp_path / "report.png").exists()

    def test_bad_row_exits_4_and_lists_it(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        src.write_text(self.HEADER + "n1,Bad,-3,1,1\n", encoding="utf-8")
        code = main(["batch", "--in", str(src), "--out", str(tmp_path / "r.csv")])
        captured = capsys.readouterr()
        assert code == 4
        assert "0 ok, 1 failed" in captured.out
        assert "row 1" in captured.err

    def test_missing_input_file(self, tmp_path, capsys):
        code = main(
            ["batch", "--in", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "r.csv")]
        )
        assert code == 2


class TestRulesCheck:
    def test_default_config_is_ok(self, capsys):
        assert main(["rules", "check"]) == 0
        assert capsys.readouterr().out.strip() == "OK, 8 rules"

    def test_mixed_connective_config_reports_span(self, tmp_path, capsys):
        from tsuka.store import config_to_document

        doc = config_to_document(CFG)
        doc["rules"][0] = (
            "IF penghasilan IS rendah AND pinjaman IS rendah OR jaminan IS rendah "
            "THEN kelayakan IS rendah"
        )
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code = main(["rules", "check", "--config", str(path)])
        err = capsys.readouterr().err
        assert code == 1
        assert "col" in err  # span-bearing diagnostic

    def test_empty_rules_config_fails(self, tmp_path, capsys):
        from tsuka.store import config_to_document

        doc = config_to_document(CFG)
        doc["rules"] = []
        path = tmp_path / "empty.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["rules", "check", "--config", str(path)]) == 1


class TestPlotCommand:
    def test_samples_201_points_with_terms(self, tmp_path, capsys):
        out = tmp_path / "curves.csv"
        code = main(["plot", "--variable", "pinjaman", "--out", str(out)])
        assert code == 0
        lines = out.read_text(encoding="utf-8").strip().split("\n")
        assert lines[0] == "x,rendah,tinggi"
        assert len(lines) == 202
        assert (tmp_path / "curves.png").exists()

    def test_rendah_column_non_increasing_and_complementary(self, tmp_path):
        out = tmp_path / "curves.csv"
        main(["plot", "--variable", "jaminan", "--out", str(out)])
        rows = [
            line.split(",") for line in out.read_text(encoding="utf-8").strip().split("\n")[1:]
        ]
        rendah = [float(r[1]) for r in rows]
        tinggi = [float(r[2]) for r in rows]
        assert all(a >= b for a, b in zip(rendah, rendah[1:]))
        assert all(abs(a + b - 1.0) <= 1e-6 for a, b in zip(rendah, tinggi))

    def test_unknown_variable(self, tmp_path, capsys):
        code = main(["plot", "--variable", "umur", "--out", str(tmp_path / "x.csv")])
        assert code == 2


class TestDeterminism:
    def test_assess_output_is_stable(self, capsys):
        main(["assess", *MIDPOINT_FLAGS])
        first = capsys.readouterr().out
        main(["assess", *MIDPOINT_FLAGS])
        assert capsys.readouterr().out == first
