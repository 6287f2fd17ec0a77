"""INI manifests describing one computation

A manifest names the frame algebra (a preset or explicit brackets), the field,
the weights and the command to run, e.g.

    [run]
    command = check
    expect = map

    [algebra]
    preset = nil

    [field]
    mode = left_invariant
    components = 0, 2, 2

    [delta]
    delta1 = 1
    delta2 = -1
"""
import configparser
import re

from sesquifield.algebra import PolyRing, format_rational, parse_rational
from sesquifield.engine import DEFAULT_STEP, DEFAULT_TOLERANCE, DeltaPair
from sesquifield.field import FieldCalculus, VectorFieldExpr
from sesquifield.frame import FrameAlgebra, load_preset, read_presets
from sesquifield.util import ManifestError, PolyParseError, StructureError


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

COMMANDS = (
    "check",
    "derive-ode",
    "classify-nil",
    "verify-family",
    "variation-test",
    "scan-same-sign",
)
EXPECTATIONS = ("none", "vector_field", "map", "not_vector_field", "not_map")
MODES = ("left_invariant", "jet")

_known = {
    "run": ("command", "expect", "family"),
    "algebra": ("preset", "dim", "brackets"),
    "field": ("mode", "components", "jet_direction", "jet_order"),
    "delta": ("delta1", "delta2"),
    "variation": ("point", "direction", "step", "tolerance", "samples", "seed"),
}

_jet_symbol = re.compile(r"^f\d+$")
_symbol = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _line_of(text, section, key=None):
    """1-based line of [section] or of key within it, None if absent"""
    current = None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1].strip()
            if key is None and current == section:
                return number
            continue
        if current != section or key is None or line[:1].isspace():
            continue
        name = re.split(r"[=:]", stripped, maxsplit=1)[0].strip()
        if name == key:
            return number
    return None


class Manifest:
    """validated contents of a manifest file"""

    _fields = (
        "command",
        "expect",
        "family",
        "preset",
        "dim",
        "brackets",
        "mode",
        "components",
        "jet_direction",
        "jet_order",
        "delta1",
        "delta2",
        "point",
        "direction",
        "step",
        "tolerance",
        "samples",
        "seed",
    )

    def __init__(
        self,
        command="check",
        expect="none",
        family=None,
        preset=None,
        dim=None,
        brackets=(),
        mode="left_invariant",
        components=(),
        jet_direction=None,
        jet_order=4,
        delta1=None,
        delta2=None,
        point=None,
        direction=None,
        step=DEFAULT_STEP,
        tolerance=DEFAULT_TOLERANCE,
        samples=0,
        seed=None,
    ):
        self.command = command
        self.expect = expect
        self.family = family
        self.preset = preset
        self.dim = dim
        self.brackets = tuple(
            (int(i), int(j), int(k), parse_rational(v)) for i, j, k, v in brackets
        )
        self.mode = mode
        self.components = tuple(str(c).strip() for c in components)
        self.jet_direction = jet_direction
        self.jet_order = jet_order
        self.delta1 = None if delta1 is None else parse_rational(delta1)
        self.delta2 = None if delta2 is None else parse_rational(delta2)
        self.point = None if point is None else tuple(float(x) for x in point)
        self.direction = None if direction is None else tuple(float(x) for x in direction)
        self.step = float(step)
        self.tolerance = float(tolerance)
        self.samples = int(samples)
        self.seed = seed

    def _key(self):
        return tuple(getattr(self, name) for name in self._fields)

    def __eq__(self, other):
        if not isinstance(other, Manifest):
            return NotImplemented
        return self._key() == other._key()

    def __repr__(self):
        source = f"preset={self.preset!r}" if self.preset else f"dim={self.dim}"
        return f"Manifest(command={self.command!r}, {source}, components={list(self.components)})"

    def algebra(self):
        """the FrameAlgebra, with jet derivations in jet mode"""
        if self.preset is not None:
            algebra = load_preset(self.preset)
        else:
            algebra = FrameAlgebra.from_brackets(self.dim, self.brackets)

        if self.mode == "jet":
            direction = self.jet_direction
            direction = algebra.jet_direction if direction is None else direction - 1
            algebra = algebra.with_jet(direction=direction, order=self.jet_order)
        return algebra

    def ring(self, algebra=None):
        algebra = algebra or self.algebra()
        if algebra.is_jet:
            return algebra.ring

        symbols = []
        for literal in self.components:
            for name in _symbol.findall(literal):
                if name not in symbols:
                    symbols.append(name)
        return PolyRing(symbols)

    def field(self, algebra=None):
        algebra = algebra or self.algebra()
        return VectorFieldExpr.from_literals(self.ring(algebra), self.components)

    def calculus(self):
        return FieldCalculus(self.algebra())

    def delta(self):
        if self.delta1 is None or self.delta2 is None:
            raise ManifestError("delta1 and delta2 are required for this command")
        return DeltaPair(self.delta1, self.delta2)


def _floats(text):
    return tuple(float(x) for x in text.split(",") if x.strip())


def _parse_brackets(text):
    entries = []
    for line in text.strip().splitlines():
        if not line.strip():
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 4:
            raise ValueError(f"bracket line '{line.strip()}' is not 'i, j, k, p/q'")
        entries.append((int(parts[0]), int(parts[1]), int(parts[2]), parse_rational(parts[3])))
    return entries


def parse_manifest(text):
    """returns a validated Manifest from INI text

    Raises
    ------
    ManifestError
        with the line (and character position for literals) of the problem
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as err:
        line = getattr(err, "lineno", None)
        if line is None and getattr(err, "errors", None):
            line = err.errors[0][0]
        raise ManifestError(f"malformed manifest: {err.message.splitlines()[0]}", line=line)

    for section in parser.sections():
        if section not in _known:
            raise ManifestError(f"unknown section [{section}]", line=_line_of(text, section))
        for key in parser[section]:
            if key == "metric" and section == "algebra":
                raise ManifestError(
                    "only orthonormal frames are supported, remove 'metric'",
                    line=_line_of(text, section, key),
                )
            if key not in _known[section]:
                raise ManifestError(
                    f"unknown option '{key}' in [{section}]", line=_line_of(text, section, key)
                )

    def get(section, key, convert=str, default=None):
        if not parser.has_option(section, key):
            return default
        value = parser.get(section, key)
        try:
            return convert(value)
        except (ValueError, ZeroDivisionError) as err:
            raise ManifestError(f"[{section}] {key}: {err}", line=_line_of(text, section, key))

    kwargs = dict(
        command=get("run", "command", default="check").strip(),
        expect=get("run", "expect", default="none").strip(),
        family=get("run", "family"),
        preset=get("algebra", "preset"),
        dim=get("algebra", "dim", int),
        brackets=get("algebra", "brackets", _parse_brackets, ()),
        mode=get("field", "mode", default="left_invariant").strip(),
        components=get("field", "components", lambda v: [c for c in v.split(",")], ()),
        jet_direction=get("field", "jet_direction", int),
        jet_order=get("field", "jet_order", int, 4),
        delta1=get("delta", "delta1", parse_rational),
        delta2=get("delta", "delta2", parse_rational),
        point=get("variation", "point", _floats),
        direction=get("variation", "direction", _floats),
        step=get("variation", "step", float, DEFAULT_STEP),
        tolerance=get("variation", "tolerance", float, DEFAULT_TOLERANCE),
        samples=get("variation", "samples", int, 0),
        seed=get("variation", "seed", int),
    )
    if kwargs["family"] is not None:
        kwargs["family"] = kwargs["family"].strip()
    if kwargs["preset"] is not None:
        kwargs["preset"] = kwargs["preset"].strip()
    if kwargs["components"] == [""]:
        kwargs["components"] = ()

    manifest = Manifest(**kwargs)
    validate_manifest(manifest, text)
    return manifest


def validate_manifest(manifest, text=""):
    """raises ManifestError if the manifest cannot be run"""
    def line(section, key=None):
        return _line_of(text, section, key)

    if manifest.command not in COMMANDS:
        raise ManifestError(
            f"unknown command '{manifest.command}', choose from {', '.join(COMMANDS)}",
            line=line("run", "command"),
        )
    if manifest.expect not in EXPECTATIONS:
        raise ManifestError(
            f"unknown expectation '{manifest.expect}', choose from {', '.join(EXPECTATIONS)}",
            line=line("run", "expect"),
        )
    if manifest.mode not in MODES:
        raise ManifestError(
            f"unknown mode '{manifest.mode}', choose from {', '.join(MODES)}",
            line=line("field", "mode"),
        )

    explicit = manifest.dim is not None or bool(manifest.brackets)
    if (manifest.preset is None) == (not explicit):
        raise ManifestError(
            "[algebra] needs exactly one of 'preset' or 'dim' with 'brackets'",
            line=line("algebra"),
        )
    if manifest.preset is not None and manifest.preset not in read_presets():
        raise ManifestError(f"unknown preset '{manifest.preset}'", line=line("algebra", "preset"))
    if explicit and manifest.dim is None:
        raise ManifestError("explicit brackets need 'dim'", line=line("algebra", "brackets"))

    try:
        algebra = manifest.algebra()
    except (StructureError, ValueError, IndexError) as err:
        raise ManifestError(str(err), line=line("algebra", "brackets") or line("algebra"))

    if manifest.delta1 is not None and manifest.delta2 is not None:
        if manifest.delta1 == 0 and manifest.delta2 == 0:
            raise ManifestError("delta1 and delta2 cannot both be zero", line=line("delta"))
    elif (manifest.delta1 is None) != (manifest.delta2 is None):
        raise ManifestError("give both delta1 and delta2", line=line("delta"))

    if not manifest.components:
        if manifest.command in ("check", "variation-test"):
            raise ManifestError(f"'{manifest.command}' needs [field] components", line=line("field"))
        return

    if len(manifest.components) != algebra.dim:
        raise ManifestError(
            f"field has {len(manifest.components)} components, the algebra has dimension {algebra.dim}",
            line=line("field", "components"),
        )
    if manifest.mode == "left_invariant":
        jets = [s for s in manifest.ring(algebra).symbols if _jet_symbol.match(s)]
        if jets:
            raise ManifestError(
                f"jet symbols {', '.join(jets)} used in left_invariant mode",
                line=line("field", "components"),
            )
    try:
        manifest.field(algebra)
    except PolyParseError as err:
        raise ManifestError(
            str(err), line=line("field", "components"), position=err.position
        )
    except KeyError as err:
        raise ManifestError(str(err), line=line("field", "components"))


def read_manifest(path):
    with open(path) as infile:
        return parse_manifest(infile.read())


def _join(values, fmt=str):
    return ", ".join(fmt(v) for v in values)


def format_manifest(manifest):
    """INI text that parse_manifest turns back into manifest"""
    lines = ["[run]", f"command = {manifest.command}", f"expect = {manifest.expect}"]
    if manifest.family is not None:
        lines.append(f"family = {manifest.family}")

    lines += ["", "[algebra]"]
    if manifest.preset is not None:
        lines.append(f"preset = {manifest.preset}")
    else:
        lines.append(f"dim = {manifest.dim}")
        lines.append("brackets =")
        for i, j, k, value in manifest.brackets:
            lines.append(f"    {i}, {j}, {k}, {format_rational(value)}")

    if manifest.components:
        lines += [
            "",
            "[field]",
            f"mode = {manifest.mode}",
            f"components = {_join(manifest.components)}",
            f"jet_order = {manifest.jet_order}",
        ]
        if manifest.jet_direction is not None:
            lines.append(f"jet_direction = {manifest.jet_direction}")

    if manifest.delta1 is not None:
        lines += [
            "",
            "[delta]",
            f"delta1 = {format_rational(manifest.delta1)}",
            f"delta2 = {format_rational(manifest.delta2)}",
        ]

    lines += [
        "",
        "[variation]",
        f"step = {manifest.step!r}",
        f"tolerance = {manifest.tolerance!r}",
        f"samples = {manifest.samples}",
    ]
    if manifest.point is not None:
        lines.append(f"point = {_join(manifest.point, repr)}")
    if manifest.direction is not None:
        lines.append(f"direction = {_join(manifest.direction, repr)}")
    if manifest.seed is not None:
        lines.append(f"seed = {manifest.seed}")
    return "\n".join(lines) + "\n"
