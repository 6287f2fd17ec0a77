import os

from unittest import TestCase, main

from sesquifield.util import (
    SESQUIFIELDRC,
    EngineError,
    ExponentOverflowError,
    ManifestError,
    PolyParseError,
    StructureError,
    SymbolError,
    abspath,
    get_resource_dir,
)


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"


class TestResourceDir(TestCase):
    def setUp(self):
        self._saved = os.environ.pop("SESQUIFIELDRC", None)

    def tearDown(self):
        os.environ.pop("SESQUIFIELDRC", None)
        if self._saved is not None:
            os.environ["SESQUIFIELDRC"] = self._saved

    def test_default(self):
        """package data holds the presets"""
        path = get_resource_dir()
        self.assertTrue(os.path.exists(os.path.join(path, "presets.cfg")))
        self.assertTrue(os.path.isdir(SESQUIFIELDRC))

    def test_environment_override(self):
        """SESQUIFIELDRC replaces the package directory"""
        os.environ["SESQUIFIELDRC"] = os.path.dirname(__file__)
        self.assertEqual(get_resource_dir(), abspath(os.path.dirname(__file__)))

    def test_missing_override(self):
        os.environ["SESQUIFIELDRC"] = "_no_such_directory_"
        with self.assertRaises(ValueError):
            get_resource_dir()


class TestErrors(TestCase):
    def test_parse_error(self):
        """position is appended to the message"""
        err = PolyParseError("unknown symbol 'q'", 4)
        self.assertEqual(str(err), "unknown symbol 'q' (position 4)")
        self.assertEqual(str(PolyParseError("empty")), "empty")
        self.assertIsInstance(err, ValueError)

    def test_structure_error(self):
        err = StructureError("connection has torsion", (1, 3, 2))
        self.assertEqual(str(err), "connection has torsion at index (1, 3, 2)")
        self.assertEqual(err.index, (1, 3, 2))

    def test_manifest_error(self):
        self.assertEqual(str(ManifestError("bad", line=3, position=2)), "bad (line 3, position 2)")
        self.assertEqual(str(ManifestError("bad", line=3)), "bad (line 3)")
        self.assertEqual(str(ManifestError("bad")), "bad")

    def test_hierarchy(self):
        """errors map onto the built-in families the command line catches"""
        self.assertEqual(str(SymbolError("'x' is not a symbol")), "'x' is not a symbol")
        self.assertIsInstance(SymbolError("x"), KeyError)
        self.assertIsInstance(ExponentOverflowError("x"), ArithmeticError)
        self.assertIsInstance(EngineError("x"), RuntimeError)


if __name__ == "__main__":
    main()
