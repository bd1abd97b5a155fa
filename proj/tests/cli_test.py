"""End-to-end checks of the modalbench command line: exit codes and JSON shapes."""

import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

BINARY = os.environ.get("MODALBENCH", "modalbench")
SCHEMAS = os.environ.get("MODALBENCH_SCHEMAS", "schemas")


def schema(name):
    with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
        return json.load(f)


def run(*args, json_out=True):
    cmd = [BINARY] + (["--json"] if json_out else []) + list(args)
    proc = subprocess.run(cmd, capture_output=True, text=True, timeout=120)
    data = json.loads(proc.stdout) if json_out and proc.stdout.strip() else None
    return proc.returncode, data, proc


class SchemasAreWellFormed(unittest.TestCase):
    def test_all(self):
        for name in os.listdir(SCHEMAS):
            with open(os.path.join(SCHEMAS, name)) as f:
                jsonschema.Draft202012Validator.check_schema(json.load(f))


class Commands(unittest.TestCase):
    def check(self, data, name):
        jsonschema.validate(data, schema(name))

    def test_lemma(self):
        code, data, _ = run("lemma", "--n", "2")
        self.assertEqual(code, 0)
        self.check(data, "lemma")
        self.assertTrue(data["valid"])
        self.assertEqual(data["chain"]["size"], 5)
        self.assertEqual(data["valuation"]["y"], [0, 2, 4])

    def test_lemma_table(self):
        code, _, proc = run("lemma", "--n", "1", "--refl", "0,2", json_out=False)
        self.assertEqual(code, 0)
        self.assertIn("certificate: VALID", proc.stdout)

    def test_lemma_all_reflexive_subsets(self):
        code, _, _ = run("lemma", "--n", "2", "--all-refl", json_out=False)
        self.assertEqual(code, 0)

    def test_check_valid_countermodel(self):
        code, data, _ = run("check-valid", "--frame", "chain:3", "--stmt", "tpow(1) = tpow(2)")
        self.assertEqual(code, 1)
        self.check(data, "validity")
        self.assertEqual(data["verdict"], "countermodel")
        self.assertIn("countermodel", data)

    def test_check_valid_valid(self):
        code, data, _ = run("check-valid", "--frame", "chain:3:refl=0,1,2", "--stmt", "[]x -> x = T")
        self.assertEqual(code, 0)
        self.check(data, "validity")
        self.assertEqual(data["verdict"], "valid")
        self.assertEqual(data["valuations_tried"], 8)

    def test_cap_refusal(self):
        code, data, _ = run("check-valid", "--frame", "chain:9", "--stmt", "x <= tpow(1)")
        self.assertEqual(code, 3)
        self.check(data, "error")
        self.assertEqual(data["error"], "cap_exceeded")

    def test_sampling_is_inconclusive(self):
        code, data, _ = run("check-valid", "--frame", "chain:9", "--stmt", "x <= tpow(1)",
                            "--sample", "--samples", "32")
        self.assertEqual(code, 3)
        self.check(data, "validity")
        self.assertEqual(data["verdict"], "unknown")
        self.assertFalse(data["exhaustive"])

    def test_syntax_error(self):
        code, data, proc = run("check-valid", "--frame", "chain:2", "--stmt", "x & = y")
        self.assertEqual(code, 2)
        self.check(data, "error")
        self.assertIn("1:5", proc.stderr)

    def test_bad_frame(self):
        code, _, _ = run("transitivity", "--frame", '{"worlds": 2, "edges": [[0, 5]]}', "--max", "3")
        self.assertEqual(code, 2)

    def test_transitivity_discrete(self):
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
            json.dump({"worlds": 3, "edges": []}, f)
            path = f.name
        try:
            code, data, _ = run("transitivity", "--frame", path, "--max", "5")
            self.assertEqual(code, 0)
            self.check(data, "transitivity")
            self.assertEqual(data["degree"], 0)
            code, _, proc = run("transitivity", "--frame", path, "--max", "5", json_out=False)
            self.assertEqual(proc.stdout.strip(), "0")
        finally:
            os.unlink(path)

    def test_transitivity_not_found(self):
        code, data, _ = run("transitivity", "--frame", '{"worlds":4,"edges":[[0,1],[1,2],[2,3]]}', "--max", "2")
        self.assertEqual(code, 1)
        self.check(data, "transitivity")
        self.assertIsNone(data["degree"])

    def test_eval(self):
        code, data, _ = run("eval", "--frame", "chain:3", "--val", '{"x": [1]}', "--formula", "<>x")
        self.assertEqual(code, 0)
        self.check(data, "eval")
        self.assertEqual(data["worlds"], [0])

    def test_chains(self):
        code, data, _ = run("chains", "--n", "3")
        self.assertEqual(code, 0)
        self.check(data, "chains")
        self.assertEqual(len(data), 8)

    def test_fixpoint(self):
        code, data, _ = run("fixpoint", "--frame", '{"worlds":3,"edges":[[0,1],[1,2]]}',
                            "--term", "<>x | x", "--pivot", "x", "--base", "2")
        self.assertEqual(code, 0)
        self.check(data, "fixpoint")
        self.assertEqual(data["index"], 2)
        self.assertEqual(data["fixpoint"], [0, 1, 2])

    def test_fixpoint_precondition(self):
        code, data, _ = run("fixpoint", "--frame", "chain:2", "--term", "~x", "--pivot", "x", "--base", "")
        self.assertEqual(code, 1)
        self.check(data, "error")
        self.assertEqual(data["error"], "precondition")

    def test_consequence(self):
        code, data, _ = run("consequence", "--frame", "chain:2", "--frame", "chain:3",
                            "--premise", "x <= y", "--conclusion", "[]x <= y")
        self.assertEqual(code, 1)
        self.check(data, "consequence")
        self.assertFalse(data["holds"])
        code, data, _ = run("consequence", "--frame", "chain:3", "--premise", "x <= y",
                            "--conclusion", "[]x <= []y")
        self.assertEqual(code, 0)
        self.check(data, "consequence")
        self.assertFalse(data["complete"])

    def test_consequence_problem_file(self):
        problem = {"premises": ["tpow(2) <= z"], "conclusion": "tpow(1) <= z",
                   "frames": [{"worlds": 2, "edges": [[0, 1]]}]}
        code, data, _ = run("consequence", "--problem", json.dumps(problem))
        self.assertEqual(code, 0)
        self.check(data, "consequence")

    def test_stabilize(self):
        code, data, _ = run("stabilize", "--chains", "3", "--term", "[](y | [](z | x)) | x",
                            "--pivot", "x", "--max", "1")
        self.assertEqual(code, 1)
        self.check(data, "stabilize")
        self.assertEqual(data["status"], "not_found")
        code, data, _ = run("stabilize", "--chains", "4", "--term", "<>x | x", "--pivot", "x", "--max", "3")
        self.assertEqual(code, 0)
        self.check(data, "stabilize")
        self.assertEqual(data["n"], 1)

    def test_unknown_flag(self):
        code, _, _ = run("lemma", "--bogus", json_out=False)
        self.assertEqual(code, 2)


if __name__ == "__main__":
    unittest.main(argv=sys.argv[:1], verbosity=2)
