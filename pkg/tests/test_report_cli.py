import json
from fractions import Fraction

import pytest

from negdep import (
    check_na,
    check_nltd,
    check_nrd,
    check_nsmd,
    make_pmf,
    to_json_dict,
)
from negdep.cli import main
from negdep.errors import Caps
from negdep.report import (
    Report,
    build_check_report,
    canonical_json,
    distribution_digest,
    verdict_json,
    witness_json,
)

from .conftest import TABLE1_ROWS

F = Fraction


@pytest.fixture()
def table1_file(tmp_path, table1):
    path = tmp_path / "table1.json"
    path.write_text(canonical_json(to_json_dict(table1)))
    return str(path)


@pytest.fixture()
def knockout_spec_file(tmp_path):
    spec = {
        "model": "knockout",
        "ell": 2,
        "win_prob": [["0", "1/2", "1/2", "1/2"],
                     ["1/2", "0", "1/2", "1/2"],
                     ["1/2", "1/2", "0", "1/2"],
                     ["1/2", "1/2", "1/2", "0"]],
        "draw": {"kind": "fixed", "bracket": [1, 2, 3, 4]},
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    return str(path)


class TestBuild:
    def test_build_knockout(self, knockout_spec_file, tmp_path, table1, capsys):
        out = tmp_path / "dist.json"
        assert main(["build", knockout_spec_file, "-o", str(out)]) == 0
        blob = json.loads(out.read_text())
        assert blob == to_json_dict(table1)
        assert "8 atoms" in capsys.readouterr().out

    def test_build_rejects_bad_spec(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"model": "swiss"}))
        assert main(["build", str(bad), "-o", str(tmp_path / "x.json")]) == 2

    def test_build_rejects_invalid_matrix(self, tmp_path):
        spec = {
            "model": "knockout", "ell": 1,
            "win_prob": [["0", "1/2"], ["1/3", "0"]],
            "draw": {"kind": "random"},
        }
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec))
        assert main(["build", str(path), "-o", str(path) + ".out"]) == 2

    def test_build_single_round(self, tmp_path):
        spec = {
            "model": "knockout", "ell": 1,
            "win_prob": [["0", "1/2"], ["1/2", "0"]],
            "draw": {"kind": "random"},
        }
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec))
        out = tmp_path / "dist.json"
        assert main(["build", str(path), "-o", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert len(payload["atoms"]) == 2
        assert all(atom["p"] == "1/2" for atom in payload["atoms"])

    def test_build_round_robin(self, tmp_path, round_robin3, capsys):
        from negdep import model_spec_to_json
        from tests.conftest import three_player_round_robin_spec

        spec_path = tmp_path / "rr.json"
        spec_path.write_text(json.dumps(model_spec_to_json(three_player_round_robin_spec())))
        out = tmp_path / "rr_dist.json"
        assert main(["build", str(spec_path), "-o", str(out)]) == 0
        assert json.loads(out.read_text()) == to_json_dict(round_robin3)
        assert "18 atoms" in capsys.readouterr().out

    def test_build_then_check_pipeline(self, knockout_spec_file, tmp_path):
        dist = tmp_path / "dist.json"
        report = tmp_path / "report.json"
        assert main(["build", knockout_spec_file, "-o", str(dist)]) == 0
        code = main(["check", str(dist), "--props", "na,nod,nrtd",
                     "--jobs", "1", "-o", str(report)])
        assert code == 0
        payload = json.loads(report.read_text())
        assert [c["holds"] for c in payload["checks"]] == [True, True, True]


class TestCheck:
    def test_holding_properties_exit_zero(self, table1_file):
        assert main(["check", table1_file, "--props", "na,nrtd", "--jobs", "1"]) == 0

    def test_failing_property_exit_one(self, table1_file, tmp_path):
        report_path = tmp_path / "report.json"
        code = main(["check", table1_file, "--props", "nrd",
                     "--jobs", "1", "-o", str(report_path)])
        assert code == 1
        payload = json.loads(report_path.read_text())
        check = payload["checks"][0]
        assert check["property"] == "nrd"
        assert check["holds"] is False
        w = check["witness"]
        assert w["given"] == [1]
        assert w["observed"] == [3]
        assert w["mean_low"] == ["3/4"]
        assert w["mean_high"] == ["1"]

    def test_malformed_file_exit_two(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["check", str(bad), "--props", "na"]) == 2

    def test_unknown_property_exit_two(self, table1_file):
        assert main(["check", table1_file, "--props", "banana"]) == 2

    def test_cap_exceeded_exit_two(self, table1_file):
        code = main(["check", table1_file, "--props", "nsmd",
                     "--caps", "lp_vars=10", "--jobs", "1"])
        assert code == 2

    def test_reports_byte_identical_across_runs_and_jobs(self, table1_file, tmp_path):
        blobs = []
        for run, jobs in ((1, "1"), (2, "1"), (3, "2")):
            path = tmp_path / f"report{run}.json"
            main(["check", table1_file, "--props", "nrd,nltd,nrtd",
                  "--jobs", jobs, "-o", str(path)])
            blobs.append(path.read_bytes())
        assert blobs[0] == blobs[1] == blobs[2]

    def test_timing_flag_embeds_timing(self, table1_file, tmp_path):
        path = tmp_path / "report.json"
        main(["check", table1_file, "--props", "nod", "--timing",
              "--jobs", "1", "-o", str(path)])
        assert "timing_ms" in json.loads(path.read_text())


class TestReproduceCli:
    def test_single_fixture(self, tmp_path):
        path = tmp_path / "rep.json"
        assert main(["reproduce", "ex-3.2", "--jobs", "1", "-o", str(path)]) == 0
        payload = json.loads(path.read_text())
        assert payload["fixture"] == "ex-3.2"
        assert payload["passed"] is True
        assert all(c["ok"] for c in payload["comparisons"])

    def test_unknown_fixture(self):
        assert main(["reproduce", "nope"]) == 2


class TestConjectureCli:
    def test_holds(self, capsys):
        assert main(["conjecture", "-n", "3", "--jobs", "1"]) == 0
        assert "HOLDS-ON-INSTANCE" in capsys.readouterr().out

    def test_values_flag(self):
        assert main(["conjecture", "--values", "0,0,1", "--jobs", "1"]) == 0

    def test_guard(self):
        assert main(["conjecture", "-n", "6", "--jobs", "1"]) == 2


class TestReportFormat:
    def test_digest_stable(self, table1):
        assert distribution_digest(table1) == distribution_digest(table1)
        assert distribution_digest(table1).startswith("sha256:")

    def test_round_trip(self, table1):
        verdicts = [check_nrd(table1), check_na(table1)]
        report = build_check_report(table1, verdicts, Caps(), {"props": "nrd,na"}, {})
        text = report.to_json()
        again = Report.from_json(text)
        assert again.payload == report.payload
        assert canonical_json(again.payload) == text

    def test_fraction_strings_reparse(self, table1):
        verdict = check_nltd(table1)
        blob = verdict_json(verdict)
        w = blob["witness"]
        assert F(w["mean_low"][0]) == verdict.witness.mean_low[0]
        assert F(w["mean_high"][0]) == verdict.witness.mean_high[0]
        assert F(w["violation"]["p_left"]) == verdict.witness.violation.p_left

    def test_supermodular_witness_serializes(self):
        com = make_pmf(2, [((0, 0), F(1, 2)), ((1, 1), F(1, 2))])
        verdict = check_nsmd(com)
        blob = witness_json(verdict.witness)
        assert blob["type"] == "supermodular"
        assert F(blob["gap"]) == verdict.witness.gap
        assert F(blob["left"]) > F(blob["right"])
