import json
import os

from tempfile import TemporaryDirectory
from unittest import TestCase, main

from click.testing import CliRunner

from sesquifield.cli import main as cli_main
from sesquifield.cli import run, run_path
from sesquifield.manifest import parse_manifest
from sesquifield.report import CONVENTIONS, EXIT_FAILED, EXIT_OK, Report
from sesquifield.util import SESQUIFIELDRC


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

SAMPLE = os.path.join(SESQUIFIELDRC, "check_nil.cfg")

POINT_MANIFEST = """[run]
command = check
expect = {expect}

[algebra]
preset = nil

[field]
components = 0, 2, 2

[delta]
delta1 = 1
delta2 = -1
"""

VARIATION_MANIFEST = """[algebra]
preset = nil

[field]
components = a, b, g

[delta]
delta1 = 1
delta2 = 1

[variation]
point = 1, 1, 1
direction = 1, 0, 0
tolerance = 1e-4
"""


def _write(dirname, name, text):
    path = os.path.join(dirname, name)
    with open(path, "w") as out:
        out.write(text)
    return path


class CliTestBase(TestCase):
    def setUp(self):
        self.runner = CliRunner()
        self._tmp = TemporaryDirectory()
        self.dirname = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def invoke(self, *args):
        return self.runner.invoke(cli_main, list(args))

    def structured(self, *args):
        r = self.invoke(*(args + ("--format", "structured")))
        return r, json.loads(r.output)


class TestCheckCommand(CliTestBase):
    def test_sample_manifest(self):
        """generic field on Nil is neither a sesqui-harmonic field nor a map"""
        r, report = self.structured("check", "-m", SAMPLE)
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(report["command"], "check")
        self.assertFalse(report["flags"]["is_sesqui_vector_field"])
        self.assertEqual(len(report["residuals"]["vertical"]), 3)
        self.assertIn("nabla_s_r", report["terms"])
        self.assertEqual(report["conventions"], CONVENTIONS)

    def test_expectation(self):
        """a failed expectation exits with 1, a met one with 0"""
        path = _write(self.dirname, "point.cfg", POINT_MANIFEST.format(expect="map"))
        r, report = self.structured("check", "-m", path)
        self.assertEqual(r.exit_code, EXIT_FAILED)
        self.assertEqual(report["exit_code"], EXIT_FAILED)
        self.assertTrue(any(n.startswith("FAILED") for n in report["notes"]))
        self.assertEqual(report["residuals"]["horizontal"], ["2", "0", "0"])

        r = self.invoke("check", "-m", path, "--expect", "vector_field")
        self.assertEqual(r.exit_code, EXIT_OK, r.output)
        self.assertIn("Residuals", r.output)

    def test_output_file(self):
        """-o writes the report instead of echoing it"""
        path = _write(self.dirname, "point.cfg", POINT_MANIFEST.format(expect="not_map"))
        outpath = os.path.join(self.dirname, "report.json")
        r = self.invoke("check", "-m", path, "-o", outpath, "--format", "structured")
        self.assertEqual(r.exit_code, 0, r.output)
        with open(outpath) as infile:
            report = json.load(infile)
        self.assertTrue(report["flags"]["is_sesqui_vector_field"])
        self.assertEqual(report["numeric"]["energy_density"], "4")

    def test_input_errors(self):
        """missing and malformed manifests exit with 2"""
        r = self.invoke("check")
        self.assertEqual(r.exit_code, 2)
        path = _write(self.dirname, "bad.cfg", "[algebra]\npreset = torus\n")
        r = self.invoke("check", "-m", path)
        self.assertEqual(r.exit_code, 2)
        self.assertIn("ERROR", r.output)

    def test_not_vector_field_expectation(self):
        """X = (0, 2, 2) with d = (1, -1) fails an expected not_vector_field"""
        path = _write(self.dirname, "point.cfg", POINT_MANIFEST.format(expect="not_vector_field"))
        r, report = self.structured("check", "-m", path)
        self.assertEqual(r.exit_code, EXIT_FAILED)
        self.assertTrue(report["flags"]["is_sesqui_vector_field"])

    def test_repeat_runs_identical(self):
        """the same manifest gives byte identical reports"""
        for format in ("structured", "human"):
            first = self.invoke("check", "-m", SAMPLE, "--format", format)
            second = self.invoke("check", "-m", SAMPLE, "--format", format)
            self.assertEqual(first.exit_code, 0, first.output)
            self.assertEqual(first.output.encode(), second.output.encode(), format)
        manifest = parse_manifest(POINT_MANIFEST.format(expect="none"))
        texts = {run(manifest)[0].render("structured") for _ in range(2)}
        self.assertEqual(len(texts), 1)


class TestDeriveOde(CliTestBase):
    def test_symbolic(self):
        """default frame is sol"""
        r, report = self.structured("derive-ode")
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(report["numeric"]["sign"], 1)
        coefficients = [c["coefficient"] for c in report["details"]["ODE coefficients"]]
        self.assertEqual(coefficients[4], "d2")
        self.assertNotIn("closed_form_verified", report["flags"])

    def test_numeric(self):
        """closed form verified for d = (1, 1)"""
        r, report = self.structured("derive-ode", "--delta1", "1", "--delta2", "1")
        self.assertEqual(r.exit_code, 0, r.output)
        coefficients = [c["coefficient"] for c in report["details"]["ODE coefficients"]]
        self.assertEqual(coefficients, ["6", "0", "-5", "0", "1"])
        self.assertTrue(report["flags"]["closed_form_verified"])

    def test_notes(self):
        """double roots and non-positive exponents are reported, not failed"""
        r, report = self.structured("derive-ode", "--delta1", "0", "--delta2", "1")
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertTrue(any("double root" in n for n in report["notes"]))
        r, report = self.structured("derive-ode", "--delta1", "-3", "--delta2", "1")
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertTrue(any("not checked" in n for n in report["notes"]))

    def test_bad_order(self):
        r = self.invoke("derive-ode", "--order", "3")
        self.assertEqual(r.exit_code, 2)


class TestNilCommands(CliTestBase):
    def test_classify(self):
        """d = (1, -1) passes and flags the disagreement with the printed system"""
        r, report = self.structured("classify-nil", "--delta1", "1", "--delta2", "-1")
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertTrue(report["flags"]["passed"])
        self.assertFalse(report["flags"]["computed_map_agrees"])
        self.assertEqual(report["numeric"]["t"], "1")
        families = {f["family"] for f in report["details"]["families"]}
        self.assertIn("circle-C1", families)
        diag = [m for m in report["details"]["map conditions"] if m["family"] == "diag-23"]
        self.assertEqual(len(diag), 1)

    def test_classify_errors(self):
        """irrational t and missing weights are input errors"""
        self.assertEqual(self.invoke("classify-nil", "--delta1", "1", "--delta2", "1").exit_code, 2)
        self.assertEqual(self.invoke("classify-nil").exit_code, 2)

    def test_verify_family(self):
        r, report = self.structured(
            "verify-family", "--family", "diag-23", "--delta1", "1", "--delta2", "-1"
        )
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(len(report["details"]["members"]), 4)
        self.assertEqual(self.invoke("verify-family", "--delta1", "1", "--delta2", "-1").exit_code, 2)
        self.assertEqual(self.invoke("verify-family", "--family", "torus").exit_code, 2)

    def test_scan_same_sign(self):
        """same sign weights leave only the zero field"""
        r, report = self.structured("scan-same-sign", "--delta1", "1", "--delta2", "2")
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertTrue(report["flags"]["zero_only"])
        r, report = self.structured("scan-same-sign", "--delta1", "1", "--delta2", "-1")
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertFalse(report["flags"]["zero_only"])
        self.assertEqual(len(report["notes"]), 1)


class TestVariationCommand(CliTestBase):
    def test_point(self):
        """the manifest point and direction"""
        path = _write(self.dirname, "variation.cfg", VARIATION_MANIFEST)
        r, report = self.structured("variation-test", "-m", path)
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertAlmostEqual(report["numeric"]["rhs"], 1.625)
        self.assertEqual(report["numeric"]["sign"], "+")
        self.assertTrue(report["flags"]["within_tolerance"])

    def test_samples(self):
        """random pairs are added to the records"""
        path = _write(self.dirname, "variation.cfg", VARIATION_MANIFEST)
        r, report = self.structured("variation-test", "-m", path, "--samples", "3", "--seed", "1")
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(len(report["details"]["variation"]), 4)
        self.assertIn("max_rel_err", report["numeric"])

    def test_needs_manifest(self):
        self.assertEqual(self.invoke("variation-test").exit_code, 2)


class TestBatch(CliTestBase):
    def test_exit_code_is_largest(self):
        """one failing expectation gives 1, an input error gives 2"""
        passing = _write(self.dirname, "pass.cfg", POINT_MANIFEST.format(expect="vector_field"))
        failing = _write(self.dirname, "fail.cfg", POINT_MANIFEST.format(expect="map"))
        broken = _write(self.dirname, "broken.cfg", "[field]\ncomponents = a\n")

        outdir = os.path.join(self.dirname, "reports")
        r = self.invoke("batch", passing, failing, "-o", outdir, "--format", "structured")
        self.assertEqual(r.exit_code, 1, r.output)
        self.assertEqual(sorted(os.listdir(outdir)), ["fail.json", "pass.json"])

        r = self.invoke("batch", passing, broken)
        self.assertEqual(r.exit_code, 2)
        self.assertIn("broken.cfg", r.output)

    def test_run_path(self):
        report, code, message = run_path(SAMPLE)
        self.assertEqual(code, 0)
        self.assertIsNone(message)
        self.assertEqual(report.command, "check")


class TestMisc(CliTestBase):
    def test_version(self):
        r = self.invoke("--version")
        self.assertEqual(r.exit_code, 0)
        self.assertIn(__version__, r.output)

    def test_exportrc(self):
        """copies the presets and sample manifest"""
        outpath = os.path.join(self.dirname, "rc")
        r = self.invoke("exportrc", "-o", outpath)
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertIn("presets.cfg", os.listdir(outpath))
        self.assertIn("check_nil.cfg", os.listdir(outpath))


class TestReport(TestCase):
    def test_assertions(self):
        """a failed assertion sets exit code 1 and leaves a note"""
        report = Report("check", {"algebra": "nil"})
        self.assertTrue(report.assert_true(True, "fine"))
        self.assertEqual(report.exit_code, EXIT_OK)
        self.assertFalse(report.assert_true(False, "broken"))
        self.assertEqual(report.exit_code, EXIT_FAILED)
        self.assertEqual(report.notes, ["FAILED: broken"])

    def test_renderings(self):
        """JSON document and tables from the same report"""
        report, code = run(parse_manifest(POINT_MANIFEST.format(expect="none")))
        self.assertEqual(code, 0)
        document = json.loads(report.render("structured"))
        self.assertEqual(document["version"], __version__)
        self.assertEqual(
            set(document),
            {
                "command",
                "version",
                "conventions",
                "inputs",
                "residuals",
                "flags",
                "terms",
                "numeric",
                "details",
                "notes",
                "exit_code",
            },
        )
        text = report.render("human")
        for title in ("Inputs", "Residuals", "Flags", "Term breakdown", "Conventions"):
            self.assertIn(title, text)


if __name__ == "__main__":
    main()
