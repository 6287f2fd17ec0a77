"""checks, energy density and first-variation verification"""
from functools import lru_cache

import numpy

from sesquifield.algebra import PolyRing, format_rational, parse_rational
from sesquifield.field import FieldCalculus, VectorFieldExpr
from sesquifield.util import StructureError


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

DEFAULT_STEP = 1e-4
DEFAULT_TOLERANCE = 1e-6


class DeltaPair:
    """weights (d1, d2) of the energy and of the bienergy"""

    __slots__ = ("delta1", "delta2")

    def __init__(self, delta1, delta2):
        delta1, delta2 = parse_rational(delta1), parse_rational(delta2)
        if delta1 == 0 and delta2 == 0:
            raise ValueError("delta1 and delta2 cannot both be zero")
        self.delta1 = delta1
        self.delta2 = delta2

    def __repr__(self):
        return f"DeltaPair({format_rational(self.delta1)}, {format_rational(self.delta2)})"

    def __eq__(self, other):
        if not isinstance(other, DeltaPair):
            return NotImplemented
        return (self.delta1, self.delta2) == (other.delta1, other.delta2)

    def __hash__(self):
        return hash((self.delta1, self.delta2))

    def __iter__(self):
        return iter((self.delta1, self.delta2))

    @property
    def same_sign(self):
        return self.delta1 * self.delta2 > 0

    def as_floats(self):
        return float(self.delta1), float(self.delta2)

    def to_literals(self):
        return format_rational(self.delta1), format_rational(self.delta2)


class CheckReport:
    """outcome of check()

    The flags are exact zero tests of the residual polynomials.
    """

    def __init__(self, vertical_residual, horizontal_residual, term_breakdown, is_parallel):
        self.vertical_residual = vertical_residual
        self.horizontal_residual = horizontal_residual
        self.term_breakdown = term_breakdown
        self.is_parallel = is_parallel
        self.is_sesqui_vector_field = vertical_residual.is_zero()
        self.is_sesqui_map = self.is_sesqui_vector_field and horizontal_residual.is_zero()

        laplacian = term_breakdown["laplacian_x"]
        self.is_harmonic_vector_field = laplacian.is_zero()
        self.is_harmonic_map = self.is_harmonic_vector_field and term_breakdown["s_x"].is_zero()

    def __repr__(self):
        return (
            f"CheckReport(vector_field={self.is_sesqui_vector_field}, "
            f"map={self.is_sesqui_map})"
        )

    @property
    def flags(self):
        return {
            "is_sesqui_vector_field": self.is_sesqui_vector_field,
            "is_sesqui_map": self.is_sesqui_map,
            "is_harmonic_vector_field": self.is_harmonic_vector_field,
            "is_harmonic_map": self.is_harmonic_map,
            "is_parallel": self.is_parallel,
        }


def _as_delta(d):
    if isinstance(d, DeltaPair):
        return d
    return DeltaPair(*d)


def check(calc, X, d):
    """residuals and flags of X for the weights d"""
    d = _as_delta(d)
    vertical, horizontal, terms = calc.conditions(X, d.delta1, d.delta2)
    return CheckReport(vertical, horizontal, terms, calc.is_parallel(X))


def _reject_jet(calc, what):
    if calc.algebra.is_jet:
        raise ValueError(f"{what} needs a left-invariant field, the frame carries jet coefficients")


def energy_density(calc, X, d):
    """d1 m + d1 |nabla X|^2 + d2 (|S(X)|^2 + |LX|^2), L the rough Laplacian"""
    _reject_jet(calc, "energy_density")
    d = _as_delta(d)
    jac = calc.jacobian(X)
    lap = calc.rough_laplacian(X, jac)
    s = calc.s_of_x(X, jac)
    return (
        X.ring.const(d.delta1 * calc.dim)
        + jac.norm2() * d.delta1
        + (s.norm2() + lap.norm2()) * d.delta2
    )


class VariationResult:
    """central difference of the energy against <2 vertical, V>"""

    def __init__(self, lhs, rhs, step):
        self.lhs = lhs
        self.rhs = rhs
        self.step = step
        self.abs_err = abs(lhs - rhs)
        self.rel_err = self.abs_err / max(1.0, abs(rhs))
        # distance to the opposite orientation of the identity
        self.flipped_err = abs(lhs + rhs) / max(1.0, abs(rhs))

    def __repr__(self):
        return f"VariationResult(lhs={self.lhs!r}, rhs={self.rhs!r}, rel_err={self.rel_err!r})"

    @property
    def sign(self):
        """'+' if the data follow dE/dt = <2 vertical, V>, '-' for the negated form"""
        return "+" if self.rel_err <= self.flipped_err else "-"

    def to_dict(self):
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "step": self.step,
            "sign": self.sign,
        }


class _NumericDensity:
    """float evaluators for the symbolic density and vertical condition"""

    def __init__(self, calc):
        dim = calc.dim
        names = tuple(f"x{i + 1}" for i in range(dim))
        ring = PolyRing(names + ("d1", "d2"))
        X = VectorFieldExpr(ring, ring.gens()[:dim])
        d1, d2 = ring.gen("d1"), ring.gen("d2")

        jac = calc.jacobian(X)
        lap = calc.rough_laplacian(X, jac)
        s = calc.s_of_x(X, jac)
        self.energy_parts = [jac.norm2(), s.norm2() + lap.norm2()]
        self.vertical = calc.vertical_condition(X, d1, d2)
        self.dim = dim

    def energy(self, x, deltas):
        point = numpy.concatenate([x, deltas])
        d1, d2 = deltas
        first, second = (p.evaluate(point) for p in self.energy_parts)
        return d1 * self.dim + d1 * first + d2 * second

    def vertical_at(self, x, deltas):
        point = numpy.concatenate([x, deltas])
        return numpy.array([c.evaluate(point) for c in self.vertical])


@lru_cache(maxsize=8)
def _numeric_density(calc):
    return _NumericDensity(calc)


def variation_test(calc, x, v, d, step=DEFAULT_STEP):
    """compares d/dt E(X + tV) at t=0 with <2 vertical_condition(X), V>

    The energy is the density, so the algebra must be unimodular.

    Parameters
    ----------
    calc : FieldCalculus
    x, v : sequences of floats
        frame coefficients of the left-invariant fields X and V
    d : DeltaPair or pair of rational literals
    step : float
        central difference step

    Raises
    ------
    FloatingPointError
        if any intermediate value is not finite
    """
    _reject_jet(calc, "variation_test")
    if not calc.algebra.is_unimodular():
        raise StructureError("variation_test needs a unimodular algebra")
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")

    x = numpy.asarray(x, dtype=float)
    v = numpy.asarray(v, dtype=float)
    if x.shape != (calc.dim,) or v.shape != (calc.dim,):
        raise ValueError(f"X and V need {calc.dim} components")
    deltas = numpy.array(_as_delta(d).as_floats())

    numeric = _numeric_density(calc)
    plus = numeric.energy(x + step * v, deltas)
    minus = numeric.energy(x - step * v, deltas)
    lhs = (plus - minus) / (2 * step)
    rhs = float(2 * numeric.vertical_at(x, deltas) @ v)

    values = numpy.array([plus, minus, lhs, rhs])
    if not numpy.isfinite(values).all() or not numpy.isfinite(x).all():
        raise FloatingPointError("non-finite value in the variation test")

    return VariationResult(float(lhs), rhs, step)


def random_variation_suite(calc, d, samples=20, bound=2.0, step=DEFAULT_STEP, seed=None):
    """variation_test on random (X, V) pairs with entries in [-bound, bound]"""
    rng = numpy.random.default_rng(seed)
    results = []
    for _ in range(samples):
        x = rng.uniform(-bound, bound, size=calc.dim)
        v = rng.uniform(-bound, bound, size=calc.dim)
        results.append((x, v, variation_test(calc, x, v, d, step=step)))
    return results


class SignCertificate:
    """component k of the vertical condition is x_k * cofactor

    certified is True when the cofactor has a nonzero constant term and every
    other monomial has even exponents and a coefficient of the same sign, so
    the cofactor never vanishes and x_k must be zero.
    """

    def __init__(self, index, symbol, polynomial, cofactor, certified):
        self.index = index
        self.symbol = symbol
        self.polynomial = polynomial
        self.cofactor = cofactor
        self.certified = certified

    def to_dict(self):
        return {
            "component": self.index + 1,
            "variable": self.symbol,
            "polynomial": str(self.polynomial),
            "cofactor": None if self.cofactor is None else str(self.cofactor),
            "certified": self.certified,
        }


class SameSignScan:
    def __init__(self, delta, system, certificates):
        self.delta = delta
        self.system = system
        self.certificates = certificates
        self.zero_only = all(c.certified for c in certificates)

    @property
    def solution_set(self):
        if self.zero_only:
            return "only the zero field"
        return "not determined, see the raw polynomial system"


def _split_variable(poly, symbol):
    """cofactor q with poly = symbol * q, or None"""
    ring = poly.ring
    index = ring.index(symbol)
    terms = {}
    for exponents, coeff in poly.items():
        if not exponents[index]:
            return None
        lowered = list(exponents)
        lowered[index] -= 1
        terms[tuple(lowered)] = coeff
    return type(poly)(ring, terms)


def _sign_definite(cofactor):
    constant = cofactor.constant_term()
    if not constant:
        return False
    for exponents, coeff in cofactor.items():
        if not any(exponents):
            continue
        if any(e % 2 for e in exponents) or (coeff > 0) != (constant > 0):
            return False
    return True


def same_sign_scan(algebra, d, require_same_sign=True):
    """which left-invariant fields satisfy the vertical condition

    Each component of the vertical condition of the generic field is tested
    for the shape x_k * q_k with q_k sign definite; when every component has
    it the only solution is the zero field.

    Raises
    ------
    ValueError
        if the dimension is not 3, or the weights do not share a sign while
        require_same_sign is True
    """
    d = _as_delta(d)
    if algebra.dim != 3:
        raise ValueError(f"same_sign_scan needs a 3-dimensional algebra, got {algebra.dim}")
    if algebra.is_jet:
        raise ValueError("same_sign_scan needs a left-invariant field")
    if require_same_sign and not d.same_sign:
        raise ValueError(f"{d!r} does not have delta1 * delta2 > 0")

    calc = FieldCalculus(algebra)
    ring = PolyRing(("a", "b", "g"))
    X = VectorFieldExpr(ring, ring.gens())
    system = calc.vertical_condition(X, d.delta1, d.delta2)

    certificates = []
    for k, symbol in enumerate(ring.symbols):
        poly = system[k]
        cofactor = _split_variable(poly, symbol)
        certified = cofactor is not None and _sign_definite(cofactor)
        certificates.append(SignCertificate(k, symbol, poly, cofactor, certified))
    return SameSignScan(d, system, certificates)
