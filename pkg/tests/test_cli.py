import io
import json
import pathlib
import random
import subprocess
import sys

import pytest

from bsdh_toric import cli, fuzz, schema

HERE = pathlib.Path(__file__).parent
GOLDEN = [("classify_b2_21", "classify"), ("mori_a4_example", "mori"), ("fan_a3_1", "fan")]


def run(argv, stdin="", monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    monkeypatch.setattr(sys, "stdout", out)
    monkeypatch.setattr(sys, "stderr", err)
    code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,command", GOLDEN)
def test_golden_outputs_are_byte_stable(name, command, monkeypatch):
    code, out, _ = run(["--command", command, "--input", str(HERE / "jobs" / f"{name}.yaml"), "--format", "json",
                        "--sorted-keys"], monkeypatch=monkeypatch)
    assert code == 0
    assert out == (HERE / "golden" / f"{name}.json").read_text()
    doc = json.loads(out)
    schema.validate(doc)


@pytest.mark.parametrize("name,command", GOLDEN)
def test_oracle_mode_agrees(name, command, monkeypatch):
    path = str(HERE / "jobs" / f"{name}.yaml")
    code, out, _ = run(["--command", command, "--input", path, "--oracle", "--sorted-keys"], monkeypatch=monkeypatch)
    assert code == 0
    doc = json.loads(out)
    schema.validate(doc)
    assert doc["oracle"]["agrees"] and doc["oracle"]["checks"]
    golden = json.loads((HERE / "golden" / f"{name}.json").read_text())
    assert doc["result"] == golden["result"]


def test_golden_contents():
    classify_doc = json.loads((HERE / "golden" / "classify_b2_21.json").read_text())["result"]
    assert classify_doc["condition_I"]["holds"] is False
    assert classify_doc["condition_II"]["holds"] is True
    assert classify_doc["weak_fano"] is True and classify_doc["fano"] is False
    mori_doc = json.loads((HERE / "golden" / "mori_a4_example.json").read_text())["result"]
    assert mori_doc["index_sets"][0]["indices"] == [1, 5, 6]
    fan_doc = json.loads((HERE / "golden" / "fan_a3_1.json").read_text())["result"]
    assert len(fan_doc["rays"]) == 2 and fan_doc["max_cones"] == 2


JOBS = {
    "matrix": {"root_system": {"family": "A", "rank": 3}, "word": [1, 2, 1]},
    "ample": {"root_system": {"family": "A", "rank": 3}, "word": [1, 1],
              "divisor": {"1+": 1, "1-": 1, "2+": 1, "2-": 1}},
    "nef": {"root_system": {"family": "A", "rank": 3}, "word": [1, 1],
            "divisor": {"1+": 1, "1-": 1, "2+": 1, "2-": 1}},
    "intersect": {"root_system": {"family": "A", "rank": 3}, "word": [1, 2, 1],
                  "options": {"walls": [["2+", "3-"]]}},
    "logfano": {"root_system": {"family": "A", "rank": 3}, "word": [1, 2], "options": {"a": [0, "1/2"]}},
    "convert": {"root_system": {"cartan": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]}, "word": [1, 1],
                "divisor": {"2-": 1}},
}


@pytest.mark.parametrize("command", sorted(JOBS))
def test_each_command_schema_valid_and_oracle(command, monkeypatch):
    job = json.dumps(JOBS[command])
    code, out, _ = run(["--command", command, "--sorted-keys"], job, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    schema.validate(doc)
    code2, out2, _ = run(["--command", command, "--sorted-keys", "--oracle"], job, monkeypatch)
    assert code2 == 0
    assert json.loads(out2)["result"] == doc["result"]


def test_command_results(monkeypatch):
    res = {c: cli.run_job(j, c)["result"] for c, j in JOBS.items()}
    assert res["ample"]["verdict"] is False and res["nef"]["verdict"] is True
    assert res["ample"]["d_values"] == [0, 2]
    assert res["intersect"]["walls"][0]["intersections"] == {"1+": 1, "1-": 1, "2+": -1, "3-": -2}
    assert res["intersect"]["walls"][0]["mori_coordinates"] == [1, 0, 0]
    assert [s["K_degree"] for s in res["intersect"]["schubert_lines"]] == [-3, -1, -2]
    assert res["logfano"]["b"] == [2, 1] and res["logfano"]["f"] == ["1/2", "5/2"] and res["logfano"]["log_fano"]
    assert res["convert"]["g"] == [-2, 1] and res["convert"]["h_table"] == [[1, 0], [-2, 1]]


def test_all_walls_option():
    doc = cli.run_job({"root_system": {"family": "A", "rank": 3}, "word": [1, 2, 1], "options": {"all_walls": True}},
                      "intersect")
    assert len(doc["result"]["walls"]) == 12
    assert all(min(w["mori_coordinates"]) >= 0 for w in doc["result"]["walls"])


@pytest.mark.parametrize("job,needle", [
    ({"root_system": {"family": "A", "rank": 3}, "word": [1, 4]}, "letter"),
    ({"root_system": {"cartan": [[2, 1], [-1, 2]]}, "word": [1]}, "off-diagonal"),
    ({"root_system": {"family": "G2", "rank": 3}, "word": [1]}, "rank"),
    ({"root_system": {"family": "A", "rank": 2}, "word": [1] * 63}, "cap"),
    ({"word": [1]}, "root_system"),
])
def test_invalid_input_exit_1(job, needle, monkeypatch):
    code, out, err = run(["--command", "classify"], json.dumps(job), monkeypatch)
    assert code == 1 and out == ""
    doc = json.loads(err)
    schema.validate(doc)
    assert doc["error"]["kind"] == "invalid_input" and needle in doc["error"]["message"]


def test_missing_divisor_and_bad_rational(monkeypatch):
    job = {"root_system": {"family": "A", "rank": 3}, "word": [1, 1]}
    assert run(["--command", "ample"], json.dumps(job), monkeypatch)[0] == 1
    job["divisor"] = {"1+": "x/2"}
    assert run(["--command", "ample"], json.dumps(job), monkeypatch)[0] == 1
    job["divisor"] = {"5+": 1}
    assert run(["--command", "ample"], json.dumps(job), monkeypatch)[0] == 1


def test_logfano_out_of_range(monkeypatch):
    job = {"root_system": {"family": "A", "rank": 3}, "word": [1, 2], "options": {"a": [1, 0]}}
    assert run(["--command", "logfano"], json.dumps(job), monkeypatch)[0] == 1


def test_oracle_length_cap(monkeypatch):
    job = {"root_system": {"family": "A", "rank": 2}, "word": [1, 2] * 9}
    code, _, err = run(["--command", "matrix", "--oracle"], json.dumps(job), monkeypatch)
    assert code == 1 and "oracle" in err


def test_internal_failure_exit_2(monkeypatch):
    from bsdh_toric import curves

    def broken(M, i, oracle=False):
        rel = real(M, i, oracle)
        if oracle and rel.gamma_rays:
            return curves.PrimitiveRelation(i, ())
        return rel

    real = curves.primitive_relation
    monkeypatch.setattr(curves, "primitive_relation", broken)
    job = {"root_system": {"family": "A", "rank": 3}, "word": [1, 2, 1]}
    code, _, err = run(["--command", "mori", "--oracle"], json.dumps(job), monkeypatch)
    assert code == 2 and json.loads(err)["error"]["kind"] == "internal_consistency"


def _random_jobs(n, seed=1):
    rng = random.Random(seed)
    commands = ["fan", "matrix", "classify", "mori", "intersect", "logfano"]
    jobs = []
    for _ in range(n):
        gcm, word, _ = fuzz.random_case(rng, max_len=6)
        jobs.append({"command": rng.choice(commands), "root_system": {"cartan": [list(r) for r in gcm.entries]},
                     "word": list(word)})
    return jobs


def test_batch_equals_independent_runs(monkeypatch):
    jobs = _random_jobs(25)
    jobs.append({"command": "classify", "root_system": {"family": "Q", "rank": 1}, "word": [1]})
    stdin = "\n".join(json.dumps(j) for j in jobs)
    code, out, _ = run(["--command", "batch", "--sorted-keys"], stdin, monkeypatch)
    assert code == 1
    lines = out.strip().split("\n")
    assert len(lines) == len(jobs)
    singles = [cli.dumps(cli.run_one(j)[1], True) for j in jobs]
    assert sorted(lines) == sorted(singles)
    for line in lines:
        schema.validate(json.loads(line))


def test_batch_yaml_documents(monkeypatch):
    stdin = (HERE / "jobs" / "classify_b2_21.yaml").read_text() + "---\n" + (HERE / "jobs" / "fan_a3_1.yaml").read_text()
    code, out, _ = run(["--command", "batch"], stdin, monkeypatch)
    assert code == 0
    assert [json.loads(ln)["command"] for ln in out.strip().split("\n")] == ["classify", "fan"]


def test_table_format(monkeypatch):
    code, out, _ = run(["--command", "mori", "--format", "table", "--input", str(HERE / "jobs" / "mori_a4_example.yaml")],
                       monkeypatch=monkeypatch)
    assert code == 0
    assert "result.index_sets[0].indices: 1 5 6" in out
    assert not out.lstrip().startswith("{")


def test_self_test(monkeypatch):
    code, out, _ = run(["--self-test", "--seed", "3", "--cases", "15"], monkeypatch=monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["seed"] == 3 and doc["cases"] == 15


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bsdh_toric", "--command", "fan", "--sorted-keys"],
                          input='{"root_system": {"family": "A", "rank": 3}, "word": [1]}',
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (HERE / "golden" / "fan_a3_1.json").read_text()


def test_command_taken_from_document_when_flag_absent(monkeypatch):
    job = {"command": "fan", "root_system": {"family": "A", "rank": 3}, "word": [1]}
    code, out, _ = run(["--sorted-keys"], json.dumps(job), monkeypatch)
    assert code == 0 and json.loads(out)["result"]["max_cones"] == 2
    del job["command"]
    code, _, err = run([], json.dumps(job), monkeypatch)
    assert code == 1 and "missing command" in err
