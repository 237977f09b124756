"""Command line behavior: output text, exit codes, piping, batch configs.

Most tests drive halllab.cli.main() in process with stdin/stdout patched;
a few spawn real subprocesses where the behavior under test is genuinely
about OS pipes or the installed entry point.
"""

import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import complete_graph, cycle_graph, edgeless_graph
from halllab import __version__
from halllab.bounds import event_bound, EventParams
from halllab.codecs import emit_edge_list, parse_graph_text, save_graph
from halllab.cli import main
from halllab.generators import kneser
from halllab.invariants import DEFAULT_NODE_LIMIT
from halllab.reports import load_report, strip_timing, dumps_report
from oracles import brute_independent


@pytest.fixture
def cli(monkeypatch, capsys):
    """Run main(argv) with the given stdin text; returns (code, out, err)."""

    def run(argv, stdin_text=""):
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


@pytest.fixture
def petersen_file(tmp_path):
    path = tmp_path / "petersen.el"
    save_graph(kneser(5, 2), str(path))
    return str(path)


def c5_text():
    return emit_edge_list(cycle_graph(5))


class TestDocumentedExamples:
    """The three pipelines quoted in the module docstring / README."""

    def test_kneser_chi_f_pipe(self, cli):
        code, out, _ = cli(["gen", "kneser", "5", "2"])
        assert code == 0
        code, out, err = cli(["invariants", "--chi-f"], stdin_text=out)
        assert (code, err) == (0, "")
        assert out == "chi_f = 5/2\n"

    def test_hall_ratio_on_c5(self, cli):
        code, out, _ = cli(["invariants", "--hall-ratio"],
                           stdin_text=c5_text())
        assert code == 0
        assert out == "rho = 5/2, witness = {0,1,2,3,4}\n"

    def test_chernoff_lower_example(self, cli):
        code, out, _ = cli(["bounds", "chernoff", "--mu", "40",
                            "--delta", "0.5"])
        assert code == 0
        assert out == "bound = e^-5\n"

    def test_real_shell_pipe(self):
        # the composability claim, through actual OS pipes
        proc = subprocess.run(
            "halllab gen kneser 5 2 | halllab invariants --chi-f",
            shell=True, capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0
        assert proc.stdout == "chi_f = 5/2\n"

    def test_installed_entry_point_version(self):
        proc = subprocess.run(["halllab", "--version"],
                              capture_output=True, text=True, timeout=60)
        assert proc.returncode == 0
        assert proc.stdout.strip() == f"halllab {__version__}"

    def test_version_in_process(self, cli):
        code, out, _ = cli(["--version"])
        assert code == 0
        assert out == f"halllab {__version__}\n"


class TestGen:
    def test_kneser_emits_petersen(self, cli):
        code, out, _ = cli(["gen", "kneser", "5", "2"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "10 15"
        assert len(lines) == 16

    def test_mycielski_of_k2_is_c5(self, cli):
        code, out, _ = cli(["gen", "mycielski"],
                           stdin_text=emit_edge_list(complete_graph(2)))
        assert code == 0
        assert out.splitlines()[0] == "5 5"

    def test_mycielski_repeat_reaches_grotzsch(self, cli):
        code, out, _ = cli(["gen", "mycielski", "--repeat", "2"],
                           stdin_text=emit_edge_list(complete_graph(2)))
        assert code == 0
        assert out.splitlines()[0] == "11 20"

    def test_join_of_single_vertices(self, cli):
        code, out, _ = cli(["gen", "join", "3"], stdin_text="1 0\n")
        assert code == 0
        assert out == "3 3\n0 1\n0 2\n1 2\n"

    def test_subdivide_triangle(self, cli):
        code, out, _ = cli(["gen", "subdivide"],
                           stdin_text=emit_edge_list(complete_graph(3)))
        assert code == 0
        assert out.splitlines()[0] == "6 6"

    def test_gnp_seed_reproducible(self, cli):
        runs = [cli(["gen", "gnp", "30", "1/2", "--seed", s])
                for s in ("5", "5", "6")]
        assert all(code == 0 for code, _, _ in runs)
        assert runs[0][1] == runs[1][1]
        assert runs[0][1] != runs[2][1]

    def test_seed_env_variable_is_default(self, cli, monkeypatch):
        _, explicit, _ = cli(["gen", "gnp", "20", "1/2", "--seed", "77"])
        monkeypatch.setenv("HALLLAB_SEED", "77")
        _, from_env, _ = cli(["gen", "gnp", "20", "1/2"])
        monkeypatch.delenv("HALLLAB_SEED")
        _, from_zero, _ = cli(["gen", "gnp", "20", "1/2"])
        _, zero_explicit, _ = cli(["gen", "gnp", "20", "1/2", "--seed", "0"])
        assert from_env == explicit
        assert from_zero == zero_explicit

    def test_gnp_rejects_p_above_one(self, cli):
        code, _, err = cli(["gen", "gnp", "10", "3/2"])
        assert code == 2
        assert err.startswith("error:")

    def test_layered_shape_and_precondition_notes(self, cli):
        code, out, err = cli(["gen", "layered", "16", "1", "--seed", "3"])
        assert code == 0
        graph = parse_graph_text(out)
        assert graph.n == 16 + 8 and graph.m == 16
        notes = err.splitlines()
        assert notes and all(line.startswith("# ") for line in notes)

    def test_layered_rejects_non_power(self, cli):
        code, _, err = cli(["gen", "layered", "15", "1"])
        assert code == 2
        assert "perfect" in err

    def test_out_file_roundtrip(self, cli, tmp_path):
        path = tmp_path / "g.el"
        code, out, _ = cli(["gen", "kneser", "5", "2", "--out", str(path)])
        assert code == 0 and out == ""
        assert parse_graph_text(path.read_text()).n == 10


class TestInvariantsCommand:
    def test_default_runs_all_five_in_order(self, cli):
        code, out, _ = cli(["invariants"], stdin_text=c5_text())
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 5
        assert lines[0].startswith("alpha = 2, witness = {")
        assert lines[1] == "rho = 5/2, witness = {0,1,2,3,4}"
        assert lines[2] == "chi_f = 5/2"
        assert lines[3].startswith("clique = 2, witness = {")
        assert lines[4] == "turan = 3/2"
        witness = [int(v) for v in
                   lines[0].split("{")[1].rstrip("}").split(",")]
        assert len(witness) == 2
        assert brute_independent(cycle_graph(5).edges(), witness)

    def test_json_report_contents(self, cli, tmp_path):
        path = tmp_path / "rep.json"
        argv = ["invariants", "--chi-f", "--hall-ratio", "--json", str(path)]
        code, _, _ = cli(argv, stdin_text=c5_text())
        assert code == 0
        rep = load_report(str(path))
        assert rep["command"] == ["halllab"] + argv
        assert rep["parameters"]["which"] == ["hall-ratio", "chi-f"]
        assert rep["parameters"]["n"] == 5
        assert rep["parameters"]["node_limit"] == DEFAULT_NODE_LIMIT
        assert rep["aggregates"]["chi_f"] == "5/2"
        assert rep["aggregates"]["rho"] == "5/2"
        assert rep["aggregates"]["rho_exact"] is True
        assert rep["seed"] == {"value": 0, "key": []}

    def test_emit_certificate_then_verify(self, cli, tmp_path,
                                          petersen_file):
        cert = tmp_path / "cert.json"
        code, _, _ = cli(["invariants", "--chi-f", "--input", petersen_file,
                          "--emit-certificate", str(cert)])
        assert code == 0
        code, out, _ = cli(["verify", str(cert), "--graph", petersen_file])
        assert code == 0
        assert out == "VALID certificate (chi_f = 5/2)\n"

    def test_emit_certificate_requires_chi_f(self, cli, tmp_path):
        code, _, err = cli(["invariants", "--alpha",
                            "--emit-certificate", str(tmp_path / "c.json")],
                           stdin_text=c5_text())
        assert code == 2
        assert "error: --emit-certificate needs --chi-f" in err


class TestVerifyCommand:
    def test_tampered_certificate_rejected(self, cli, tmp_path,
                                           petersen_file):
        cert = tmp_path / "cert.json"
        cli(["invariants", "--chi-f", "--input", petersen_file,
             "--emit-certificate", str(cert)])
        payload = json.loads(cert.read_text())
        payload["value"] = "3"
        cert.write_text(json.dumps(payload))
        code, out, _ = cli(["verify", str(cert), "--graph", petersen_file])
        assert code == 2
        lines = out.splitlines()
        assert lines[0] == "INVALID certificate (chi_f = 3)"
        assert len(lines) > 1 and all(l.startswith("  ") for l in lines[1:])

    def test_witness_roundtrip(self, cli, tmp_path):
        path = tmp_path / "wit.json"
        code, _, _ = cli(["sample-hb", "--b", "2", "--a", "2", "--q", "1",
                          "--trials", "1", "--seed", "3",
                          "--emit-witness", str(path)])
        assert code == 0
        code, out, _ = cli(["verify", str(path)])
        assert code == 0
        assert out.startswith("VALID witness (2 branch + ")

    def test_certificate_needs_graph_flag(self, cli, tmp_path,
                                          petersen_file):
        cert = tmp_path / "cert.json"
        cli(["invariants", "--chi-f", "--input", petersen_file,
             "--emit-certificate", str(cert)])
        code, _, err = cli(["verify", str(cert)])
        assert code == 2
        assert "certificate verification needs --graph" in err

    def test_unrecognized_payload_type(self, cli, tmp_path):
        path = tmp_path / "odd.json"
        path.write_text('{"type": "nope"}\n')
        code, _, err = cli(["verify", str(path)])
        assert code == 2
        assert "unrecognized payload type 'nope'" in err

    def test_missing_file(self, cli, tmp_path):
        code, _, err = cli(["verify", str(tmp_path / "absent.json")])
        assert code == 2
        assert err.startswith("error:")


class TestExitCodes:
    def test_unknown_flag_is_2(self, cli):
        code, _, err = cli(["invariants", "--bogus"], stdin_text="1 0\n")
        assert code == 2
        assert "usage" in err

    def test_unknown_subcommand_is_2(self, cli):
        code, _, _ = cli(["frobnicate"])
        assert code == 2

    def test_missing_input_file_is_2(self, cli, tmp_path):
        code, _, err = cli(["invariants", "--alpha",
                            "--input", str(tmp_path / "absent.el")])
        assert code == 2
        assert err.startswith("error:")

    def test_malformed_graph_reports_line(self, cli):
        code, _, err = cli(["invariants", "--alpha"],
                           stdin_text="3 3\n0 1\n")
        assert code == 2
        assert err.startswith("error: line 1:")

    def test_budget_exhaustion_is_3(self, cli, petersen_file):
        code, _, err = cli(["invariants", "--alpha", "--node-limit", "2",
                            "--input", petersen_file])
        assert code == 3
        assert err.startswith("budget exhausted:")

    def test_broken_pipe_is_0(self):
        # reader hangs up early; the writer must not treat that as failure
        proc = subprocess.Popen(
            [sys.executable, "-m", "halllab.cli",
             "gen", "gnp", "600", "1/2", "--seed", "1"],
            stdout=subprocess.PIPE, stderr=subprocess.PIPE)
        proc.stdout.read(1024)
        proc.stdout.close()
        assert proc.wait(timeout=120) == 0
        assert proc.stderr.read() == b""
        proc.stderr.close()


class TestBoundsCommand:
    def test_chernoff_upper_string(self, cli):
        code, out, _ = cli(["bounds", "chernoff", "--mu", "40",
                            "--delta", "1", "--tail", "upper"])
        assert code == 0
        assert out == f"bound = e^{-40 / 3:g}\n"

    def test_chernoff_rejects_negative_mu(self, cli):
        code, _, err = cli(["bounds", "chernoff", "--mu", "-1",
                            "--delta", "0.5"])
        assert code == 2
        assert err.startswith("error:")

    def test_chernoff_json_report(self, cli, tmp_path):
        path = tmp_path / "b.json"
        code, _, _ = cli(["bounds", "chernoff", "--mu", "40", "--delta",
                          "0.5", "--json", str(path)])
        assert code == 0
        rep = load_report(str(path))
        assert rep["parameters"] == {"law": "chernoff", "tail": "lower",
                                     "mu": 40.0, "delta": 0.5}
        assert rep["aggregates"]["bound"]["log"] == -5.0

    def test_weight_lemma_lines(self, cli):
        code, out, _ = cli(["bounds", "weight", "--a", "4", "--q", "2",
                            "--n", "10", "--degz", "30"])
        assert code == 0
        assert out.splitlines() == [
            f"bound = e^{-0.9375:g}",
            "trivial = false",
            "hypothesis_met = false",
        ]

    def test_weight_lemma_trivial_region(self, cli):
        code, out, _ = cli(["bounds", "weight", "--a", "4", "--q", "2",
                            "--n", "10", "--degz", "20"])
        assert code == 0
        assert out.splitlines()[:2] == ["bound = e^0", "trivial = true"]

    def test_events_lines_match_library(self, cli):
        code, out, _ = cli(["bounds", "events", "--n", "65536", "--M", "2",
                            "--m", "2", "--s", "1", "--t", "4"])
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 2
        params = EventParams(65536, 2, 2, 1, 4)
        for line, kind in zip(lines, ("branch", "subdivision")):
            eb = event_bound(kind, params)
            assert line == (
                f"{kind}: full = e^{eb.full.log:g}, simplified = "
                f"e^{eb.simplified.log:g}, target = e^{eb.target.log:g}"
                f", full<=target = {str(eb.full_meets_target).lower()}"
                f", simplified<=target = "
                f"{str(eb.simplified_meets_target).lower()}")

    def test_events_invariant_violation(self, cli):
        code, _, err = cli(["bounds", "events", "--n", "65536", "--M", "2",
                            "--m", "2", "--s", "1", "--t", "3"])
        assert code == 2
        assert "4s" in err

    def test_threshold_scan_output(self, cli):
        code, out, _ = cli(["bounds", "threshold", "--M", "2",
                            "--bases", "16,32"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("base 16 (n = 16^16): ")
        assert lines[0].endswith("passes = false")
        assert lines[1].startswith("base 32 (n = 32^16): ")
        assert lines[1].endswith("passes = true")
        assert lines[2] == (f"minimal passing candidate: n = {32 ** 16} "
                            f"(base 32)")
        assert lines[3] == "monotone nonincreasing = true"
        assert lines[4] == "closed-form tail at target = 1/16384 < 1/2"


class TestExtractCommand:
    def test_success_lines(self, cli, tmp_path):
        path = tmp_path / "g.el"
        cli(["gen", "gnp", "300", "1/2", "--seed", "11", "--out", str(path)])
        code, out, _ = cli(["extract", "--a", "5", "--q", "1",
                            "--seed", "11", "--input", str(path)])
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("pair: |A| = ")
        assert lines[0].endswith("a = 5, q = 1")
        assert "peel threshold" in lines[1]

    def test_failure_is_2(self, cli):
        code, out, _ = cli(["extract", "--a", "2", "--q", "1"],
                           stdin_text=emit_edge_list(edgeless_graph(6)))
        assert code == 2
        assert out.startswith("extraction failed:")

    def test_json_verdict(self, cli, tmp_path):
        graph = tmp_path / "g.el"
        rep_path = tmp_path / "r.json"
        cli(["gen", "gnp", "300", "1/2", "--seed", "11", "--out",
             str(graph)])
        cli(["extract", "--a", "5", "--q", "1", "--seed", "11",
             "--input", str(graph), "--json", str(rep_path)])
        rep = load_report(str(rep_path))
        assert rep["verdicts"] == {"success": True}
        assert rep["aggregates"]["deterministic"] in (True, False)


class TestThm1Command:
    @pytest.fixture
    def dense_file(self, cli, tmp_path):
        path = tmp_path / "dense.el"
        cli(["gen", "gnp", "600", "1/2", "--seed", "4", "--out", str(path)])
        return str(path)

    def test_output_lines(self, cli, dense_file):
        code, out, _ = cli(["thm1", "--c", "1", "--trials", "3",
                            "--seed", "4", "--input", dense_file])
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("constants: a = 2, q = 4, "
                                   "degree threshold ")
        assert lines[1].startswith("pair: |A| = ")
        assert lines[2].endswith("/3 samples") and "certified" in lines[2]
        assert lines[3].endswith("(target > 1)")

    def test_same_seed_reports_identical(self, cli, tmp_path, dense_file):
        path = tmp_path / "rep.json"
        dumps = []
        for _ in range(2):
            code, _, _ = cli(["thm1", "--c", "1", "--trials", "3",
                              "--seed", "9", "--input", dense_file,
                              "--json", str(path)])
            assert code == 0
            dumps.append(dumps_report(strip_timing(load_report(str(path)))))
        assert dumps[0] == dumps[1]

    def test_parallel_matches_serial(self, cli, tmp_path, dense_file):
        serial = tmp_path / "s.json"
        threaded = tmp_path / "t.json"
        cli(["thm1", "--c", "1", "--trials", "4", "--seed", "2",
             "--input", dense_file, "--json", str(serial)])
        cli(["thm1", "--c", "1", "--trials", "4", "--seed", "2",
             "--parallel", "3", "--input", dense_file, "--json",
             str(threaded)])
        assert (load_report(str(serial))["trials"]
                == load_report(str(threaded))["trials"])


class TestSampleHbCommand:
    def test_default_parameter_echo(self, cli):
        code, out, _ = cli(["sample-hb", "--trials", "2", "--seed", "5"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "pair: |B| = 8, |A| = 128, a = 4, q = 16"
        assert lines[1].endswith("/2 samples (alpha_w < 256)")
        assert lines[2].startswith("best chi_f lower bound = ")

    def test_json_embeds_defaults_and_trials(self, cli, tmp_path):
        path = tmp_path / "hb.json"
        code, _, _ = cli(["sample-hb", "--trials", "2", "--seed", "5",
                          "--json", str(path)])
        assert code == 0
        rep = load_report(str(path))
        assert rep["parameters"] == {
            "kind": "sample-hb", "b": 8, "a": 4, "q": 16, "trials": 2,
            "node_limit": DEFAULT_NODE_LIMIT}
        assert [t["trial"] for t in rep["trials"]] == [0, 1]
        for rec in rep["trials"]:
            assert set(rec) == {"trial", "alpha_w", "witness_size",
                                "total_weight", "chi_f_lower", "hb_edges",
                                "certified"}
            assert rec["total_weight"] == 16 * 4 * 8

    def test_same_seed_byte_identical(self, cli, tmp_path):
        path = tmp_path / "rep.json"
        dumps = []
        for _ in range(2):
            cli(["sample-hb", "--trials", "3", "--seed", "9",
                 "--json", str(path)])
            dumps.append(dumps_report(strip_timing(load_report(str(path)))))
        assert dumps[0] == dumps[1]


class TestExperimentCommand:
    def write(self, tmp_path, text):
        path = tmp_path / "batch.cfg"
        path.write_text(text)
        return str(path)

    def test_invariants_batch_passes(self, cli, tmp_path, petersen_file):
        cfg = self.write(tmp_path, f"""
# desk-scale demo
[petersen]
kind = invariants
graph = {petersen_file}
which = chi-f,hall-ratio
expect_chi_f = 5/2
expect_rho = 5/2
""")
        code, out, _ = cli(["experiment", cfg])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "[petersen] ok"
        assert "  chi_f = 5/2" in lines
        assert "  verdict expect_chi_f: pass" in lines
        assert "  verdict expect_rho: pass" in lines
        assert lines[-1] == "summary: 1 experiments, passed = true"

    def test_failed_verdict_reported_not_fatal(self, cli, tmp_path,
                                               petersen_file):
        cfg = self.write(tmp_path, f"""
[petersen]
kind = invariants
graph = {petersen_file}
which = chi-f
expect_chi_f = 3
""")
        code, out, _ = cli(["experiment", cfg])
        assert code == 0
        assert "  verdict expect_chi_f: FAIL" in out.splitlines()
        assert out.splitlines()[-1] == "summary: 1 experiments, passed = false"

    def test_missing_graph_skips_with_exit_2(self, cli, tmp_path):
        cfg = self.write(tmp_path, f"""
[gone]
kind = invariants
graph = {tmp_path / 'absent.el'}
""")
        code, out, _ = cli(["experiment", cfg])
        assert code == 2
        lines = out.splitlines()
        assert lines[0].startswith("[gone] skipped: ")
        assert lines[0].endswith("not found")
        assert lines[-1] == "summary: 1 experiments, passed = false"

    def test_empty_config(self, cli, tmp_path):
        cfg = self.write(tmp_path, "# nothing here\n\n")
        code, out, _ = cli(["experiment", cfg])
        assert code == 0
        assert out == "summary: 0 experiments, passed = true\n"

    def test_key_outside_section_line_number(self, cli, tmp_path):
        cfg = self.write(tmp_path, "foo = 1\n")
        code, _, err = cli(["experiment", cfg])
        assert code == 2
        assert err.startswith("error: line 1: key outside any")

    def test_unknown_key_line_number(self, cli, tmp_path, petersen_file):
        cfg = self.write(tmp_path, f"[x]\nkind = extract\n"
                                   f"graph = {petersen_file}\nbogus = 1\n")
        code, _, err = cli(["experiment", cfg])
        assert code == 2
        assert err.startswith("error: line 4: key 'bogus' not understood "
                              "by kind 'extract'")

    def test_missing_kind_line_number(self, cli, tmp_path, petersen_file):
        cfg = self.write(tmp_path, f"[x]\ngraph = {petersen_file}\n")
        code, _, err = cli(["experiment", cfg])
        assert code == 2
        assert err.startswith("error: line 1: experiment [x] needs kind = "
                              "extract | invariants | sample-hb | thm1")

    def test_duplicate_section_line_number(self, cli, tmp_path):
        cfg = self.write(
            tmp_path,
            "[a]\nkind = sample-hb\ntrials = 1\nb = 2\na = 2\nq = 1\n"
            "[a]\nkind = sample-hb\n")
        code, _, err = cli(["experiment", cfg])
        assert code == 2
        assert err.startswith("error: line 7: duplicate experiment name [a]")

    def test_duplicate_key_line_number(self, cli, tmp_path):
        cfg = self.write(tmp_path, "[a]\nkind = invariants\n"
                                   "kind = invariants\n")
        code, _, err = cli(["experiment", cfg])
        assert code == 2
        assert err.startswith("error: line 3: duplicate key 'kind'")

    def test_non_assignment_line_rejected(self, cli, tmp_path):
        cfg = self.write(tmp_path, "[a]\nkind invariants\n")
        code, _, err = cli(["experiment", cfg])
        assert code == 2
        assert err.startswith("error: line 2: expected [section] or "
                              "key = value")

    def test_unknown_invariant_name(self, cli, tmp_path, petersen_file):
        cfg = self.write(tmp_path, f"[x]\nkind = invariants\n"
                                   f"graph = {petersen_file}\n"
                                   f"which = bogus\n")
        code, _, err = cli(["experiment", cfg])
        assert code == 2
        assert "unknown invariant 'bogus'" in err

    def test_sample_hb_min_max_expectations(self, cli, tmp_path):
        cfg = self.write(tmp_path, """
[hb]
kind = sample-hb
b = 4
a = 2
q = 4
trials = 5
seed = 12
expect_min_certified = 0
expect_max_certified = 5
expect_trials = 5
""")
        code, out, _ = cli(["experiment", cfg])
        assert code == 0
        lines = out.splitlines()
        assert "  verdict expect_min_certified: pass" in lines
        assert "  verdict expect_max_certified: pass" in lines
        assert "  verdict expect_trials: pass" in lines
        assert "(alpha_w < 32)" in lines[2]
        assert lines[-1] == "summary: 1 experiments, passed = true"

    def test_thm1_summary_has_certified_fraction(self, cli, tmp_path):
        dense = tmp_path / "dense.el"
        cli(["gen", "gnp", "600", "1/2", "--seed", "4", "--out",
             str(dense)])
        rep_path = tmp_path / "batch.json"
        cfg = self.write(tmp_path, f"""
[pipeline]
kind = thm1
graph = {dense}
c = 1
trials = 2
seed = 6
""")
        code, out, _ = cli(["experiment", cfg, "--json", str(rep_path)])
        assert code == 0
        payload = load_report(str(rep_path))
        (report,) = payload["reports"]
        frac = Fraction(report["aggregates"]["certified_fraction"])
        assert 0 <= frac <= 1
        assert payload["summary"]["experiments"][0]["status"] == "ok"

    def test_section_seed_overrides_base_seed(self, cli, tmp_path):
        cfg = self.write(tmp_path, """
[hb]
kind = sample-hb
b = 4
a = 2
q = 4
trials = 3
seed = 12
""")
        stripped = []
        for base, name in (("1", "r1.json"), ("2", "r2.json")):
            path = tmp_path / name
            code, _, _ = cli(["experiment", cfg, "--seed", base,
                              "--json", str(path)])
            assert code == 0
            payload = load_report(str(path))
            stripped.append([strip_timing(r) for r in payload["reports"]])
        assert stripped[0] == stripped[1]
