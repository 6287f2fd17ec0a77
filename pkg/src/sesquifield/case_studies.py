"""worked settings: the profile ODE on Sol and the left-invariant fields on Nil"""
import math
import warnings

from fractions import Fraction
from functools import lru_cache

from sesquifield.algebra import PolyRing, format_rational
from sesquifield.engine import DeltaPair
from sesquifield.field import (
    FieldCalculus,
    VectorFieldExpr,
    generic_field,
    left_invariant_ring,
)
from sesquifield.frame import load_preset
from sesquifield.util import EngineError


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

ODE_ORDER = 4
DELTA_RING = PolyRing(("d1", "d2"))

# the Nil systems as printed in the literature, scaled by 16
PUBLISHED_VERTICAL_SYSTEM = (
    "a*(8*d1 + d2*(4 + b^2))",
    "b*(8*d1 + d2*(4 + a^2 + g^2))",
    "g*(8*d1 + d2*(4 + b^2))",
)
PUBLISHED_HORIZONTAL_SYSTEM = (
    "b*g*(4*d1 + d2*(8 + a^2 + g^2 - 2*b^2))",
    "a*b*(4*d1 + d2*(8 + a^2 + g^2 - 2*b^2))",
)

_primes = ("", "'", "''", "'''", "''''")


def _delta_assignment(d):
    return {"d1": d.delta1, "d2": d.delta2}


class OdeOperator:
    """sum_k coefficients[k] f^(k), coefficients are polynomials in d1, d2"""

    def __init__(self, coefficients, sign=1):
        coefficients = tuple(DELTA_RING.coerce(c) for c in coefficients)
        if len(coefficients) != ODE_ORDER + 1:
            raise ValueError(f"need {ODE_ORDER + 1} coefficients, got {len(coefficients)}")
        self.coefficients = coefficients
        self.sign = sign

    def __getitem__(self, k):
        return self.coefficients[k]

    def __eq__(self, other):
        if not isinstance(other, OdeOperator):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"OdeOperator({self})"

    def __str__(self):
        pieces = []
        for k in range(ODE_ORDER, -1, -1):
            coeff = self.coefficients[k]
            if coeff.is_zero():
                continue
            pieces.append(f"({coeff})*f{_primes[k]}")
        return " + ".join(pieces) if pieces else "0"

    def to_literals(self):
        return [str(c) for c in self.coefficients]

    def substitute(self, d):
        """the operator with numeric weights"""
        assignment = _delta_assignment(d)
        return OdeOperator(
            [c.partial_substitute(assignment) for c in self.coefficients], self.sign
        )

    def characteristic_polynomial(self):
        """(c0, c2, c4) of c4 mu^2 + c2 mu + c0 with mu = lambda^2

        Raises
        ------
        ValueError
            if an odd order coefficient is nonzero
        """
        if not (self.coefficients[1].is_zero() and self.coefficients[3].is_zero()):
            raise ValueError("operator has odd order terms, not a polynomial in lambda^2")
        return self.coefficients[0], self.coefficients[2], self.coefficients[4]

    def characteristic_value(self, mu, d=None):
        """exact value of the characteristic polynomial at lambda^2 = mu"""
        c0, c2, c4 = self.characteristic_polynomial()
        mu = Fraction(mu)
        value = c4 * (mu * mu) + c2 * mu + c0
        if d is None:
            if not value.is_constant():
                raise ValueError("symbolic operator needs delta values")
            return value.constant_term()
        return value.substitute(_delta_assignment(d))


def _linear_jet_coefficients(poly, order):
    """coefficients of f0..f<order> in a form linear in the jet symbols"""
    ring = poly.ring
    jets = [ring.index(f"f{k}") for k in range(order + 1)]
    deltas = [ring.index("d1"), ring.index("d2")]
    coefficients = [dict() for _ in range(order + 1)]
    for exponents, coeff in poly.items():
        jet_part = [exponents[i] for i in jets]
        if sum(jet_part) != 1:
            raise EngineError(f"residual '{poly}' is not linear in the jet variables")
        k = jet_part.index(1)
        key = tuple(exponents[i] for i in deltas)
        coefficients[k][key] = coefficients[k].get(key, 0) + coeff
    return [type(poly)(DELTA_RING, c) for c in coefficients]


def derive_sol_ode(d=None, order=ODE_ORDER, algebra=None):
    """linear ODE for profiles f(z) making f(z) e3 sesqui-harmonic on Sol

    The returned operator equals sign times the e3 component of the vertical
    condition, with sign chosen so the f'''' coefficient has a positive d2
    part.

    Parameters
    ----------
    d : DeltaPair or None
        None keeps d1, d2 symbolic
    order : int
        jet truncation order, at least 4
    algebra : FrameAlgebra or None
        defaults to the sol preset, must have a jet_direction

    Raises
    ------
    EngineError
        if the residual does not reduce to one component linear in f0..f4
    """
    if order < ODE_ORDER:
        raise ValueError(f"jet order must be at least {ODE_ORDER}")

    algebra = algebra or load_preset("sol")
    jet = algebra.with_jet(order=order)
    ring = jet.ring
    direction = jet.jet_direction
    calc = FieldCalculus(jet)
    X = VectorFieldExpr.basis(ring, jet.dim, direction) * ring.gen("f0")
    vertical, horizontal, _ = calc.conditions(X, ring.gen("d1"), ring.gen("d2"))

    if not horizontal.is_zero():
        raise EngineError(f"horizontal residual {horizontal} does not vanish")
    for k, component in enumerate(vertical):
        if k != direction and not component.is_zero():
            raise EngineError(f"vertical residual has a nonzero e{k + 1} component")

    coefficients = _linear_jet_coefficients(vertical[direction], order)
    if any(not c.is_zero() for c in coefficients[ODE_ORDER + 1 :]):
        raise EngineError("residual involves derivatives above the fourth")
    coefficients = coefficients[: ODE_ORDER + 1]

    leading = coefficients[ODE_ORDER].substitute({"d1": 0, "d2": 1})
    sign = -1 if leading < 0 else 1
    operator = OdeOperator([c * sign for c in coefficients], sign)
    if d is not None:
        operator = operator.substitute(_as_delta(d))
    return operator


def _as_delta(d):
    return d if isinstance(d, DeltaPair) else DeltaPair(*d)


def verify_sol_solution(d, constants=(1, 1, 1, 1)):
    """True if every exponential of the closed form solution solves the ODE

    The closed form is c1 e^(rz) + c2 e^(-rz) + c3 e^(sz) + c4 e^(-sz) with
    r^2 = 2 and s^2 = (d1 + 2 d2)/d2. Roots are tested exactly on lambda^2,
    exponentials whose constant is zero are not tested.

    Raises
    ------
    ValueError
        if d2 is zero or (d1 + 2 d2)/d2 is not positive
    """
    d = _as_delta(d)
    if d.delta2 == 0:
        raise ValueError("d2 must be nonzero")
    mu = (d.delta1 + 2 * d.delta2) / d.delta2
    if mu <= 0:
        raise ValueError(
            f"(d1 + 2 d2)/d2 = {format_rational(mu)} is not positive, "
            "the closed form does not apply"
        )
    if len(constants) != 4:
        raise ValueError("need four constants")

    if mu == 2:
        warnings.warn(
            "exponent pairs coincide (lambda^2 = 2 is a double root), the closed "
            "form is not the general solution",
            RuntimeWarning,
        )

    operator = derive_sol_ode(d)
    squares = (Fraction(2), Fraction(2), mu, mu)
    return all(
        operator.characteristic_value(square) == 0
        for square, c in zip(squares, constants)
        if c
    )


class NilSystems:
    """component polynomials of the Nil conditions, scaled by 16

    vertical holds the three vertical components, horizontal the e1 and
    e3 horizontal components with the first negated.
    """

    def __init__(self, vertical, horizontal):
        self.vertical = tuple(vertical)
        self.horizontal = tuple(horizontal)

    def __eq__(self, other):
        if not isinstance(other, NilSystems):
            return NotImplemented
        return (self.vertical, self.horizontal) == (other.vertical, other.horizontal)

    def substitute(self, d):
        assignment = _delta_assignment(_as_delta(d))
        return NilSystems(
            [p.partial_substitute(assignment) for p in self.vertical],
            [p.partial_substitute(assignment) for p in self.horizontal],
        )

    def evaluate(self, point, d):
        """exact values at point = (a, b, g)"""
        d = _as_delta(d)
        assignment = dict(zip(("a", "b", "g"), point), **_delta_assignment(d))
        return (
            tuple(p.substitute(assignment) for p in self.vertical),
            tuple(p.substitute(assignment) for p in self.horizontal),
        )

    def to_dict(self):
        return {
            "vertical": [str(p) for p in self.vertical],
            "horizontal": [str(p) for p in self.horizontal],
        }


@lru_cache(maxsize=1)
def _computed_nil_systems():
    ring = left_invariant_ring(3)
    calc = FieldCalculus(load_preset("nil"))
    X = generic_field(ring, 3)
    vertical, horizontal, _ = calc.conditions(X, ring.gen("d1"), ring.gen("d2"))
    if not horizontal[1].is_zero():
        raise EngineError(f"horizontal e2 component {horizontal[1]} does not vanish")
    return NilSystems(
        [c * 16 for c in vertical], [horizontal[0] * -16, horizontal[2] * 16]
    )


def nil_systems(d=None):
    """the Nil systems computed by the engine, symbolic in d1, d2 when d is None"""
    systems = _computed_nil_systems()
    return systems if d is None else systems.substitute(d)


def published_systems(d=None):
    ring = left_invariant_ring(3)
    systems = NilSystems(
        [ring.parse(p) for p in PUBLISHED_VERTICAL_SYSTEM],
        [ring.parse(p) for p in PUBLISHED_HORIZONTAL_SYSTEM],
    )
    return systems if d is None else systems.substitute(d)


def compare_published_systems():
    """computed minus published, component by component"""
    computed, published = nil_systems(), published_systems()
    return {
        "vertical": [c - p for c, p in zip(computed.vertical, published.vertical)],
        "horizontal": [c - p for c, p in zip(computed.horizontal, published.horizontal)],
    }


def rational_sqrt(value):
    """exact square root of a nonnegative rational, None if irrational"""
    value = Fraction(value)
    if value < 0:
        return None
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        return None
    return Fraction(num, den)


def circle_parameter(d):
    """t with t^2 = -(2 d1 + d2)/d2

    Raises
    ------
    ValueError
        if d2 is zero or t^2 is not the square of a rational
    """
    d = _as_delta(d)
    if d.delta2 == 0:
        raise ValueError("d2 must be nonzero")
    t_squared = -(2 * d.delta1 + d.delta2) / d.delta2
    t = rational_sqrt(t_squared)
    if t is None:
        raise ValueError(
            f"t^2 = {format_rational(t_squared)} is not a rational square, "
            "request a different delta sample"
        )
    return t


# family templates use the parameter t; sample values for free coordinates
_T_RING = PolyRing(("t",))
_SAMPLES = (Fraction(5), Fraction(-3), Fraction(1, 2))
_HALF = "2*d1 + d2"
_CIRCLE = "d1 + d2"
_ON_B = "d2*b^2 + 4*(2*d1 + d2)"


class NilFamily:
    """a family of left-invariant fields on Nil

    delta_relation is the polynomial in d1, d2 the family needs ("half"
    families are d1 = -d2/2). map_flag_condition is the relation under which
    the published systems make every member a map.
    """

    def __init__(self, name, description, constraints, map_flag_condition, half, points):
        ring = left_invariant_ring(3)
        self.name = name
        self.description = description
        self.constraints = tuple(ring.parse(c) for c in constraints)
        self.map_flag_condition = ring.parse(map_flag_condition)
        self.half = half
        self._points = points

    def __repr__(self):
        return f"NilFamily('{self.name}')"

    def delta_for(self, d):
        """the weights at which the family is verified"""
        d = _as_delta(d)
        if self.half:
            return DeltaPair(-d.delta2 / 2, d.delta2)
        return d

    def members(self, t):
        return [tuple(Fraction(x) for x in p) for p in self._points(Fraction(t))]

    def templates(self):
        """member coordinates as polynomials in t, None for sampled families"""
        if self.half:
            return None
        t = _T_RING.gen("t")
        return [tuple(_T_RING.coerce(0) + x for x in p) for p in self._points(t)]


def _pm(value):
    return (value, -value)


NIL_FAMILIES = (
    NilFamily(
        "axis-alpha",
        "X = a e1 with d1 = -d2/2",
        ["b", "g", _HALF],
        _HALF,
        True,
        lambda t: [(s, 0, 0) for s in _SAMPLES],
    ),
    NilFamily(
        "axis-beta",
        "X = b e2 with d1 = -d2/2",
        ["a", "g", _HALF],
        _HALF,
        True,
        lambda t: [(0, s, 0) for s in _SAMPLES],
    ),
    NilFamily(
        "axis-gamma",
        "X = g e3 with d1 = -d2/2",
        ["a", "b", _HALF],
        _HALF,
        True,
        lambda t: [(0, 0, s) for s in _SAMPLES],
    ),
    NilFamily(
        "plane-13",
        "X = a e1 + g e3 with d1 = -d2/2",
        ["b", _HALF],
        _HALF,
        True,
        lambda t: [(5, 0, 7), (-3, 0, Fraction(1, 2)), (Fraction(1, 2), 0, 5)],
    ),
    NilFamily(
        "diag-23",
        "X = +-2t e2 +- 2t e3",
        ["a", _ON_B, "d2*g^2 + 4*(2*d1 + d2)"],
        _CIRCLE,
        False,
        lambda t: [(0, b, g) for b in _pm(2 * t) for g in _pm(2 * t)],
    ),
    NilFamily(
        "diag-12",
        "X = +-2t e1 +- 2t e2",
        ["g", "d2*a^2 + 4*(2*d1 + d2)", _ON_B],
        _CIRCLE,
        False,
        lambda t: [(a, b, 0) for a in _pm(2 * t) for b in _pm(2 * t)],
    ),
    NilFamily(
        "circle-C1",
        "b = 2t and a^2 + g^2 = 4t^2",
        [_ON_B, "d2*(a^2 + g^2) + 4*(2*d1 + d2)"],
        _CIRCLE,
        False,
        lambda t: [
            (2 * t, 2 * t, 0),
            (0, 2 * t, 2 * t),
            (t * Fraction(6, 5), 2 * t, t * Fraction(8, 5)),
        ],
    ),
    NilFamily(
        "circle-C2",
        "b = -2t and a^2 + g^2 = 4t^2",
        [_ON_B, "d2*(a^2 + g^2) + 4*(2*d1 + d2)"],
        _CIRCLE,
        False,
        lambda t: [
            (2 * t, -2 * t, 0),
            (0, -2 * t, 2 * t),
            (t * Fraction(6, 5), -2 * t, t * Fraction(8, 5)),
        ],
    ),
)

FAMILY_NAMES = tuple(f.name for f in NIL_FAMILIES)


def get_family(name):
    for family in NIL_FAMILIES:
        if family.name == name:
            return family
    raise KeyError(f"unknown family '{name}', choose from {', '.join(FAMILY_NAMES)}")


def _fmt(values):
    return [format_rational(v) for v in values]


class MemberResult:
    """both Nil systems evaluated at one field"""

    def __init__(self, point, d, on_family=True):
        self.point = tuple(point)
        self.delta = d
        self.on_family = on_family
        self.vertical, self.computed_horizontal = nil_systems().evaluate(point, d)
        _, self.published_horizontal = published_systems().evaluate(point, d)

    @property
    def is_vector_field(self):
        return not any(self.vertical)

    @property
    def published_map(self):
        return self.is_vector_field and not any(self.published_horizontal)

    @property
    def computed_map(self):
        return self.is_vector_field and not any(self.computed_horizontal)

    def to_dict(self):
        return {
            "point": _fmt(self.point),
            "delta": list(self.delta.to_literals()),
            "on_family": self.on_family,
            "vertical": _fmt(self.vertical),
            "published_horizontal": _fmt(self.published_horizontal),
            "computed_horizontal": _fmt(self.computed_horizontal),
            "is_vector_field": self.is_vector_field,
            "published_map": self.published_map,
            "computed_map": self.computed_map,
        }


class FamilyResult:
    def __init__(self, family, d, t, members):
        self.family = family
        self.delta = d
        self.t = t
        self.members = members
        self.map_relation_holds = not family.map_flag_condition.substitute(
            _delta_assignment(d)
        )

    @property
    def passed(self):
        """members lie on the family and solve the vertical system, and the
        horizontal system too when the map relation holds"""
        members_ok = all(m.on_family and m.is_vector_field for m in self.members)
        if not self.map_relation_holds:
            return members_ok
        return members_ok and all(m.published_map for m in self.members)

    @property
    def computed_map_agrees(self):
        return all(m.computed_map == m.published_map for m in self.members)

    def to_dict(self):
        return {
            "family": self.family.name,
            "description": self.family.description,
            "delta": list(self.delta.to_literals()),
            "t": format_rational(self.t),
            "map_relation": f"{self.family.map_flag_condition} = 0",
            "map_relation_holds": self.map_relation_holds,
            "passed": self.passed,
            "computed_map_agrees": self.computed_map_agrees,
            "members": [m.to_dict() for m in self.members],
        }


def verify_family(name, d):
    """substitutes the members of a family into both Nil systems

    Families tied to d1 = -d2/2 are verified at (-d2/2, d2), the others at d
    with t^2 = -(2 d1 + d2)/d2.
    """
    family = name if isinstance(name, NilFamily) else get_family(name)
    d = family.delta_for(d)
    t = circle_parameter(d)
    members = []
    for point in family.members(t):
        assignment = dict(zip(("a", "b", "g"), point), **_delta_assignment(d))
        on_family = not any(c.substitute(assignment) for c in family.constraints)
        members.append(MemberResult(point, d, on_family))
    return FamilyResult(family, d, t, members)


def family_map_condition(name, systems=None):
    """the horizontal system on a t-parametrised family as polynomials in d1, d2

    t^2 is eliminated with d2 t^2 = -(2 d1 + d2), clearing powers of d2.
    """
    family = name if isinstance(name, NilFamily) else get_family(name)
    templates = family.templates()
    if templates is None:
        raise ValueError(f"family '{family.name}' has no t parametrisation")

    systems = systems or nil_systems()
    ring = PolyRing(("t", "d1", "d2"))
    t = ring.gen("t")
    images = dict(zip(("a", "b", "g"), (p.compose(ring, {"t": t}) for p in templates[0])))
    results = []
    for poly in systems.horizontal:
        results.append(_eliminate_t(poly.compose(ring, images)))
    return tuple(results)


def _eliminate_t(poly):
    ring = poly.ring
    powers = {}
    for exponents, coeff in poly.items():
        t_power = exponents[0]
        if t_power % 2:
            raise EngineError(f"'{poly}' has odd powers of t")
        key = t_power // 2
        powers.setdefault(key, {})[(exponents[1], exponents[2])] = coeff

    top = max(powers, default=0)
    t_squared_num = DELTA_RING.parse("-(2*d1 + d2)")
    d2 = DELTA_RING.gen("d2")
    result = DELTA_RING.zero()
    for j, terms in powers.items():
        coeff = type(poly)(DELTA_RING, terms)
        result = result + coeff * t_squared_num ** j * d2 ** (top - j)
    return result


class ClassificationReport:
    """classification of the left-invariant fields on Nil for one weight pair"""

    def __init__(self, d, t, families, negative_control):
        self.delta = d
        self.t = t
        self.families = families
        self.negative_control = negative_control

    @property
    def passed(self):
        control_ok = self.negative_control is None or not self.negative_control.is_vector_field
        return control_ok and all(f.passed for f in self.families)

    def to_dict(self):
        return {
            "delta": list(self.delta.to_literals()),
            "t": format_rational(self.t),
            "passed": self.passed,
            "families": [f.to_dict() for f in self.families],
            "negative_control": None
            if self.negative_control is None
            else self.negative_control.to_dict(),
        }


def classify_nil(d):
    """verifies every Nil family for d, plus an off-family negative control

    Raises
    ------
    ValueError
        if -(2 d1 + d2)/d2 is not a rational square
    """
    d = _as_delta(d)
    t = circle_parameter(d)
    families = [verify_family(family, d) for family in NIL_FAMILIES]
    control = None
    if t:
        control = MemberResult((2 * t, 0, 2 * t), d, on_family=False)
    return ClassificationReport(d, t, families, control)


WITNESS_DELTA = DeltaPair(Fraction(5, 2), -1)
WITNESS_POINT = (Fraction(4), Fraction(4), Fraction(0))


def map_failure_witness(d=WITNESS_DELTA, point=WITNESS_POINT):
    """a field solving the vertical system but not the horizontal one for d1 != -d2"""
    return MemberResult(point, _as_delta(d), on_family=True)
