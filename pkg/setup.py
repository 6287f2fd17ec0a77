import pathlib
import sys

from setuptools import find_packages, setup


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__contributors__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

# Check Python version, no point installing if unsupported version inplace
if sys.version_info < (3, 7):
    py_version = ".".join(str(n) for n in sys.version_info)
    raise RuntimeError(f"Python-3.7 or greater is required, Python-{py_version} used.")


short_description = "Exact checks of interpolating sesqui-harmonic vector fields"

# This ends up displayed by the installer
readme_path = pathlib.Path(__file__).parent / "README.rst"

long_description = readme_path.read_text()

PACKAGE_DIR = "src"

setup(
    name="sesquifield",
    version=__version__,
    author="The Sesquifield Project",
    description=short_description,
    long_description=long_description,
    long_description_content_type="text/x-rst",
    platforms=["any"],
    license="BSD",
    keywords=["differential geometry", "harmonic maps", "computer algebra", "Lie groups"],
    classifiers=[
        "Development status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries :: Python Modules",
        "Operating System :: OS Independent",
    ],
    install_requires=["numpy", "sympy", "cogent3", "click"],
    entry_points={
        "console_scripts": [
            "sesquifield=sesquifield.cli:main",
        ],
    },
    packages=find_packages(where=PACKAGE_DIR),
    package_dir={"": PACKAGE_DIR},
    package_data={
        "sesquifield": [
            "data/presets.cfg",
            "data/check_nil.cfg",
        ]
    },
)
