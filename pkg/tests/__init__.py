import os


os.chdir(os.path.dirname(__file__))

__all__ = [
    "test_algebra",
    "test_case_studies",
    "test_cli",
    "test_engine",
    "test_field",
    "test_frame",
    "test_manifest",
    "test_util",
]

__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"
