import json

from cogent3 import make_table

from sesquifield.field import ORIENTATION
from sesquifield.frame import CURVATURE_CONVENTION


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

CONVENTIONS = {
    "curvature": CURVATURE_CONVENTION,
    "orientation": ORIENTATION,
    "indices": "frame indices e1..em are 1-based",
}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2


def _cell(value):
    if isinstance(value, (list, tuple)):
        return ", ".join(_cell(v) for v in value)
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


class Report:
    """the result of one command, rendered as tables or as a JSON document"""

    def __init__(self, command, inputs=None):
        self.command = command
        self.inputs = dict(inputs or {})
        self.residuals = {}
        self.flags = {}
        self.terms = {}
        self.numeric = {}
        self.details = {}
        self.notes = []
        self.exit_code = EXIT_OK

    def __repr__(self):
        return f"Report('{self.command}', exit_code={self.exit_code})"

    def add_fields(self, target, fields):
        """fields maps name to a VectorFieldExpr"""
        for name, field in fields.items():
            target[name] = field.to_literals()

    def assert_true(self, condition, message):
        """records a failed assertion, which sets exit code 1"""
        if not condition:
            self.notes.append(f"FAILED: {message}")
            self.exit_code = EXIT_FAILED
        return condition

    def to_dict(self):
        return {
            "command": self.command,
            "version": __version__,
            "conventions": CONVENTIONS,
            "inputs": self.inputs,
            "residuals": self.residuals,
            "flags": self.flags,
            "terms": self.terms,
            "numeric": self.numeric,
            "details": self.details,
            "notes": self.notes,
            "exit_code": self.exit_code,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def _field_table(self, fields, title):
        width = max(len(v) for v in fields.values())
        header = ["name"] + [f"e{i + 1}" for i in range(width)]
        rows = [[name] + list(values) for name, values in fields.items()]
        return make_table(header=header, data=rows, title=title)

    def _mapping_table(self, mapping, title, legend=""):
        rows = [[key, _cell(value)] for key, value in mapping.items()]
        return make_table(header=["name", "value"], data=rows, title=title, legend=legend)

    def _records_table(self, records, title):
        header = list(records[0])
        rows = [[_cell(record.get(key, "")) for key in header] for record in records]
        return make_table(header=header, data=rows, title=title)

    def to_text(self):
        parts = [f"sesquifield {__version__}: {self.command}"]
        if self.inputs:
            parts.append(self._mapping_table(self.inputs, "Inputs"))
        if self.residuals:
            parts.append(self._field_table(self.residuals, "Residuals"))
        if self.flags:
            parts.append(self._mapping_table(self.flags, "Flags"))
        if self.terms:
            parts.append(self._field_table(self.terms, "Term breakdown"))
        if self.numeric:
            parts.append(self._mapping_table(self.numeric, "Numeric results"))
        for name, records in self.details.items():
            if records:
                parts.append(self._records_table(records, name))
        parts.append(
            self._mapping_table(CONVENTIONS, "Conventions", legend=f"exit code {self.exit_code}")
        )
        parts.extend(self.notes)
        return "\n\n".join(str(p) for p in parts) + "\n"

    def render(self, format="human"):
        if format == "structured":
            return self.to_json() + "\n"
        return self.to_text()
