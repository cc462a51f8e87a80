"""Command-line contract tests: subcommands, formats, exit codes,
manifest embedding and byte reproducibility."""

import json
import math

import pytest

from ellipcert import cli

FAST = ["--grid-n", "2000"]


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEval:
    def test_k_half(self, capsys):
        code, out, _ = run(capsys, ["eval", "K", "0.5", "--format", "csv"])
        assert code == 0
        assert "1.8540746773013717" in out
        assert out.startswith("# manifest: ")

    def test_phi_near_zero(self, capsys):
        code, out, _ = run(capsys, ["eval", "phi", "1e-9", "--format", "csv"])
        assert code == 0
        val = float(out.strip().splitlines()[-1].split(",")[1])
        assert abs(val - 1.6) <= 1e-7

    def test_w_plus_near_zero(self, capsys):
        code, out, _ = run(capsys, ["eval", "w_plus", "1e-9", "--format", "csv"])
        assert code == 0
        val = float(out.strip().splitlines()[-1].split(",")[1])
        # the sqrt-cusp keeps it 1.2e-5 above the 4/3 limit at 1e-9
        assert abs(val - 4.0 / 3.0) <= 2e-5

    def test_parametrized_functions(self, capsys):
        code, out, _ = run(capsys, ["eval", "f", "--param", "a=1.47", "0.5",
                                    "--format", "csv"])
        assert code == 0
        code, out, _ = run(capsys, ["eval", "2F1", "--param", "a=0.5",
                                    "--param", "b=0.5", "--param", "c=1",
                                    "0.25", "--format", "csv"])
        assert code == 0

    def test_unknown_function_usage_error(self, capsys):
        code, _, err = run(capsys, ["eval", "Q", "0.5"])
        assert code == 2
        assert "unknown function" in err

    def test_missing_param_usage_error(self, capsys):
        code, _, err = run(capsys, ["eval", "f", "0.5"])
        assert code == 2
        assert "needs --param" in err

    def test_domain_error_reports_x(self, capsys):
        code, _, err = run(capsys, ["eval", "K", "1.5"])
        assert code == 2
        assert "1.5" in err


class TestConstants:
    def test_rows_and_provenance(self, capsys):
        code, out, _ = run(capsys, ["constants", "--format", "json", *FAST])
        assert code == 0
        doc = json.loads(out)
        rows = {r["name"]: r for r in doc["results"]}
        assert rows["a_c"]["provenance"] == "computed"
        assert abs(rows["a_c"]["value"] - 1.46156929504) <= 5e-9
        assert rows["a_c"]["x_star"] is not None
        assert rows["a_c"]["tolerance"] <= 1e-10
        assert rows["p_convex_hi"]["value"] == pytest.approx(1.280330085889911,
                                                             rel=1e-12)
        assert rows["a_recip_convex"]["value"] == pytest.approx(math.log(4.0),
                                                                rel=1e-15)
        assert rows["gamma_quarter"]["provenance"] == "embedded"
        assert rows["K_half"]["provenance"] == "computed"


class TestCertify:
    def test_logconcave_boundary_verified(self, capsys):
        code, out, _ = run(capsys, ["certify", "thm3-logconcave", "7/32", *FAST])
        assert code == 0
        assert "nonnegative" in out

    def test_logconcave_below_boundary_witness(self, capsys):
        code, out, _ = run(capsys, ["certify", "thm3-logconcave", "0.21",
                                    "--format", "json", *FAST])
        assert code == 1
        doc = json.loads(out)
        row = doc["results"][0]
        assert row["verdict"] == "mixed"
        # G(0+) = -7/32 < -0.21, so the witness sits near 0
        assert row["witness_x"] < 0.05

    def test_recip_convex_at_log4(self, capsys):
        code, _, _ = run(capsys, ["certify", "thm2-convex",
                                  "1.3862943611198906", *FAST])
        assert code == 0

    def test_unknown_theorem(self, capsys):
        code, _, err = run(capsys, ["certify", "thm9-magic", "1.0"])
        assert code == 2
        assert "unknown theorem" in err


class TestVerify:
    def test_sum_bounds_pass(self, capsys):
        code, out, _ = run(capsys, ["verify", "sum-bounds", "--a", "1.47", *FAST])
        assert code == 0
        assert "pass" in out

    def test_sum_bounds_negative_control(self, capsys):
        code, out, _ = run(capsys, ["verify", "sum-bounds", "--a", "1.3",
                                    "--format", "json", *FAST])
        assert code == 1
        doc = json.loads(out)
        assert any(r["verdict"] == "fail" and r["witness_x"] is not None
                   for r in doc["results"])

    def test_k_envelope_prints_xp(self, capsys):
        code, out, _ = run(capsys, ["verify", "k-envelope", "--p", "0.1",
                                    "--format", "json", *FAST])
        assert code == 0
        doc = json.loads(out)
        xp_rows = [r for r in doc["results"] if r["clause"] == "x_p"]
        assert len(xp_rows) == 1
        assert xp_rows[0]["witness_x"] == pytest.approx(0.99926310069907, abs=1e-8)

    def test_unknown_selector(self, capsys):
        code, _, err = run(capsys, ["verify", "everything"])
        assert code == 2
        assert "unknown selector" in err

    def test_verify_all_passes(self, capsys):
        code, out, _ = run(capsys, ["verify", "all", *FAST])
        assert code == 0
        assert "fail" not in out


class TestTable:
    def test_w_plus_table(self, capsys):
        code, out, _ = run(capsys, ["table", "w_plus", "--grid-n", "1000",
                                    "--format", "csv"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1] == "x,value"
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == 1000
        top = max(float(v) for _x, v in rows)
        assert top == pytest.approx(1.4615692950422916, abs=1e-4)

    def test_g_table_ends(self, capsys):
        code, out, _ = run(capsys, ["table", "G", "--grid-n", "1000",
                                    "--format", "csv"])
        lines = out.strip().splitlines()[2:]
        first = float(lines[0].split(",")[1])
        last = float(lines[-1].split(",")[1])
        assert first == pytest.approx(-7.0 / 32.0, abs=1e-6)
        # the approach to 0 is logarithmic; at offset 1e-9 the value is
        # still about -1/(2K) = -0.04
        assert -0.05 < last < 0.0

    def test_phi_table_monotone(self, capsys):
        code, out, _ = run(capsys, ["table", "phi", "--grid-n", "1000",
                                    "--format", "csv"])
        vals = [float(line.split(",")[1])
                for line in out.strip().splitlines()[2:]]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_geometric_spacing(self, capsys):
        code, out, _ = run(capsys, ["table", "K", "--grid-n", "50",
                                    "--spacing", "geometric", "--format", "csv"])
        xs = [float(line.split(",")[0])
              for line in out.strip().splitlines()[2:]]
        assert xs[0] == pytest.approx(1e-9, rel=1e-9)
        ratios = [b / a for a, b in zip(xs, xs[1:])]
        assert ratios[0] == pytest.approx(ratios[10], rel=1e-6)


class TestOutputContracts:
    def test_json_top_level_keys(self, capsys):
        code, out, _ = run(capsys, ["eval", "K", "0.5", "--format", "json"])
        doc = json.loads(out)
        assert set(doc) == {"manifest", "results"}
        assert doc["manifest"]["command"] == "eval"
        assert doc["manifest"]["seed"] == 0
        assert doc["manifest"]["scan"]["n"] == 10000

    def test_csv_lf_endings(self, capsys):
        _, out, _ = run(capsys, ["eval", "K", "0.5", "0.9", "--format", "csv"])
        assert "\r" not in out
        assert out.endswith("\n")

    def test_byte_reproducibility(self, capsys):
        argv = ["verify", "mean-chain", "--p", "0.5", "--seed", "3",
                "--format", "json", *FAST]
        _, out1, _ = run(capsys, argv)
        _, out2, _ = run(capsys, argv)
        assert out1 == out2

    def test_manifest_replay(self, capsys):
        argv = ["certify", "thm1-concave", "4/3", "--format", "csv", *FAST]
        _, out1, _ = run(capsys, argv)
        manifest = json.loads(out1.splitlines()[0][len("# manifest: "):])
        out2 = cli.run_from_manifest(manifest)
        assert out2 == out1

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "k.csv"
        code, out, _ = run(capsys, ["eval", "K", "0.5", "--format", "csv",
                                    "--out", str(target)])
        assert code == 0
        assert out == ""
        assert "1.8540746773013717" in target.read_text()

    def test_seventeen_digit_csv(self, capsys):
        _, out, _ = run(capsys, ["eval", "E", "0.3", "--format", "csv"])
        value = out.strip().splitlines()[-1].split(",")[1]
        assert value == format(float(value), ".17g")
        assert float(value) == pytest.approx(1.4453630644126653, rel=1e-15)
