import os


try:
    from pkg_resources import resource_filename
except ImportError:  # setuptools without pkg_resources
    from importlib.resources import files

    def resource_filename(package, name):
        return str(files(package) / name)


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"


def get_resource_dir():
    """returns path to resource directory"""
    if "SESQUIFIELDRC" in os.environ:
        path = os.environ["SESQUIFIELDRC"]
    else:
        path = resource_filename("sesquifield", "data")

    path = os.path.abspath(os.path.expanduser(path))
    if not os.path.exists(path):
        raise ValueError(f"SESQUIFIELDRC directory '{path}' does not exist")

    return path


# presets.cfg and the sample manifests live here
SESQUIFIELDRC = get_resource_dir()


def abspath(path):
    path = os.path.abspath(os.path.expanduser(path))
    return path


class SymbolError(KeyError):
    """symbol lists that differ, or a symbol with no value or image"""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ExponentOverflowError(ArithmeticError):
    pass


class PolyParseError(ValueError):
    """a malformed polynomial literal, position is a character offset"""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position

    def __str__(self):
        msg = self.args[0]
        if self.position is None:
            return msg
        return f"{msg} (position {self.position})"


class StructureError(ValueError):
    """invalid structure constants or geometric data

    index holds the offending 1-based frame indices
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index

    def __str__(self):
        msg = self.args[0]
        if self.index is None:
            return msg
        return f"{msg} at index {self.index}"


class ManifestError(ValueError):
    def __init__(self, message, line=None, position=None):
        super().__init__(message)
        self.line = line
        self.position = position

    def __str__(self):
        msg = self.args[0]
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.position is not None:
            where.append(f"position {self.position}")
        return f"{msg} ({', '.join(where)})" if where else msg


class EngineError(RuntimeError):
    """a computed result violated a structural expectation"""

    pass
