"""covariant calculus of vector fields in a left-invariant orthonormal frame

A field X = sum_i X^i e_i is held as a VectorFieldExpr whose coefficients are
polynomials. Coefficients are constants for left-invariant fields, or jet
polynomials when the frame algebra carries a jet derivation.

The two condition operators return the expressions whose vanishing makes X
an interpolating sesqui-harmonic vector field (vertical) and, together with
the vertical one, an interpolating sesqui-harmonic map (horizontal). The
field tau_{d1,d2}(X) is their negation.
"""
from fractions import Fraction
from itertools import product

from sesquifield.algebra import PolyRing
from sesquifield.frame import (
    connection_from_structure,
    curvature_from_connection,
)
from sesquifield.util import SymbolError


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

ORIENTATION = "residuals are the condition expressions; tau is their negation"

VERTICAL_TERMS = {
    "nabla_r_s_x": "sum_i (nabla_{e_i} R)(e_i, S(X)) X",
    "r_nabla_s_x": "sum_i R(e_i, nabla_{e_i} S(X)) X",
    "r_s_nabla_x": "sum_i R(e_i, S(X)) nabla_{e_i} X",
}

HORIZONTAL_TERMS = {
    "laplacian_s": "rough_laplacian S(X)",
    "r_x_lap_x_s": "R(X, rough_laplacian X) S(X)",
    "r_x_nabla_lap_x": "sum_i R(X, nabla_{e_i} rough_laplacian X) e_i",
    "r_nabla_x_lap_x": "sum_i R(nabla_{e_i} X, rough_laplacian X) e_i",
    "r_e_s": "sum_i R(e_i, S(X)) e_i",
    "nabla_s_r": "sum_i (nabla_{S(X)} R)(nabla_{e_i} X, X) e_i",
    "r_x_nabla_x_nabla_s": "sum_i R(X, nabla_{e_i} X) nabla_{e_i} S(X)",
    "r_x_r_e_s_x": "sum_i R(X, R(e_i, S(X)) X) e_i",
}


def left_invariant_ring(dim, names=None):
    """coefficient ring for a generic left-invariant field plus d1, d2

    names default to a, b, g for dimension 3 and x1..xm otherwise
    """
    if names is None:
        names = ("a", "b", "g") if dim == 3 else tuple(f"x{i + 1}" for i in range(dim))
    return PolyRing(tuple(names) + ("d1", "d2"))


class VectorFieldExpr:
    """X = sum_i coeffs[i] e_i with polynomial coefficients"""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = tuple(ring.coerce(c) for c in coeffs)

    @classmethod
    def from_literals(cls, ring, literals):
        return cls(ring, [ring.parse(str(text)) for text in literals])

    @classmethod
    def zero(cls, ring, dim):
        return cls(ring, [ring.zero()] * dim)

    @classmethod
    def basis(cls, ring, dim, i):
        """the frame vector e_i"""
        coeffs = [ring.zero()] * dim
        coeffs[i] = ring.one()
        return cls(ring, coeffs)

    @property
    def dim(self):
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __repr__(self):
        return f"VectorFieldExpr({self.to_literals()})"

    def __str__(self):
        return "(" + ", ".join(self.to_literals()) + ")"

    def __eq__(self, other):
        if not isinstance(other, VectorFieldExpr):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def _same(self, other):
        if not isinstance(other, VectorFieldExpr):
            raise TypeError(f"expected a VectorFieldExpr, got {type(other).__name__}")
        if other.ring != self.ring:
            raise SymbolError(
                f"symbol lists differ: {self.ring.symbols} and {other.ring.symbols}"
            )
        if other.dim != self.dim:
            raise ValueError(f"dimensions differ: {self.dim} and {other.dim}")
        return other

    def __add__(self, other):
        other = self._same(other)
        return VectorFieldExpr(self.ring, [a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        other = self._same(other)
        return VectorFieldExpr(self.ring, [a - b for a, b in zip(self, other)])

    def __neg__(self):
        return VectorFieldExpr(self.ring, [-a for a in self])

    def __mul__(self, scalar):
        if isinstance(scalar, VectorFieldExpr):
            return NotImplemented
        scalar = self.ring.coerce(scalar)
        return VectorFieldExpr(self.ring, [scalar * a for a in self])

    __rmul__ = __mul__

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def dot(self, other):
        """orthonormal frame inner product"""
        other = self._same(other)
        total = self.ring.zero()
        for a, b in zip(self, other):
            total = total + a * b
        return total

    def norm2(self):
        return self.dot(self)

    def substitute(self, assignment):
        return tuple(c.substitute(assignment) for c in self.coeffs)

    def partial_substitute(self, assignment):
        return VectorFieldExpr(
            self.ring, [c.partial_substitute(assignment) for c in self.coeffs]
        )

    def to_literals(self):
        return [str(c) for c in self.coeffs]


class FieldJacobian:
    """columns[i] is nabla_{e_i} X"""

    def __init__(self, columns):
        self.columns = tuple(columns)

    def __getitem__(self, i):
        return self.columns[i]

    def __iter__(self):
        return iter(self.columns)

    def __len__(self):
        return len(self.columns)

    def is_zero(self):
        return all(c.is_zero() for c in self.columns)

    def norm2(self):
        """|nabla X|^2 in the orthonormal frame"""
        columns = iter(self.columns)
        total = next(columns).norm2()
        for column in columns:
            total = total + column.norm2()
        return total


class TauPair:
    """horizontal and vertical parts of a field along X"""

    __slots__ = ("horizontal", "vertical")

    def __init__(self, horizontal, vertical):
        self.horizontal = horizontal
        self.vertical = vertical

    def __eq__(self, other):
        if not isinstance(other, TauPair):
            return NotImplemented
        return self.horizontal == other.horizontal and self.vertical == other.vertical

    def __iter__(self):
        return iter((self.horizontal, self.vertical))

    def __repr__(self):
        return f"TauPair(horizontal={self.horizontal}, vertical={self.vertical})"

    def is_zero(self):
        return self.horizontal.is_zero() and self.vertical.is_zero()

    def scaled(self, value):
        return TauPair(self.horizontal * value, self.vertical * value)


def _nonzero_entries(array):
    return [
        (index, array[index])
        for index in product(*(range(n) for n in array.shape))
        if array[index]
    ]


class FieldCalculus:
    """covariant derivatives, Laplacians and curvature terms over one frame"""

    def __init__(self, algebra):
        self.algebra = algebra
        self.connection = connection_from_structure(algebra)
        self.curvature_tensor = curvature_from_connection(algebra, self.connection)
        self._r_entries = _nonzero_entries(self.curvature_tensor.r)
        self._nr_entries = _nonzero_entries(
            self.curvature_tensor.derivative(self.connection)
        )
        dim = algebra.dim
        # nabla_{e_i} e_i, used by the rough Laplacian
        self._trace = [
            [(k, g) for k, g in enumerate(self.connection(i, i)) if g]
            for i in range(dim)
        ]

    def __repr__(self):
        return f"FieldCalculus({self.algebra!r})"

    @property
    def dim(self):
        return self.algebra.dim

    def _check(self, X):
        if not isinstance(X, VectorFieldExpr):
            raise TypeError(f"expected a VectorFieldExpr, got {type(X).__name__}")
        if X.dim != self.dim:
            raise ValueError(f"field has {X.dim} components, frame dimension is {self.dim}")
        if self.algebra.is_jet and X.ring != self.algebra.ring:
            raise SymbolError(
                f"field over {X.ring.symbols} used with jet ring {self.algebra.ring.symbols}"
            )
        return X

    def basis(self, ring, i):
        return VectorFieldExpr.basis(ring, self.dim, i)

    def covariant_derivative(self, i, X):
        """(nabla_{e_i} X)^k = e_i(X^k) + sum_j Gamma^k_ij X^j"""
        X = self._check(X)
        if not 0 <= i < self.dim:
            raise IndexError(f"frame index {i + 1} outside 1..{self.dim}")

        gamma = self.connection.gamma
        coeffs = []
        for k in range(self.dim):
            value = self.algebra.frame_derivative(i, X[k])
            for j in range(self.dim):
                if gamma[i, j, k]:
                    value = value + X[j] * gamma[i, j, k]
            coeffs.append(value)
        return VectorFieldExpr(X.ring, coeffs)

    def jacobian(self, X):
        return FieldJacobian([self.covariant_derivative(i, X) for i in range(self.dim)])

    def is_parallel(self, X):
        return self.jacobian(X).is_zero()

    def rough_laplacian(self, X, jacobian=None):
        """sum_i (nabla_{nabla_{e_i} e_i} X - nabla_{e_i} nabla_{e_i} X)"""
        jacobian = jacobian or self.jacobian(X)
        result = VectorFieldExpr.zero(X.ring, self.dim)
        for i in range(self.dim):
            for k, g in self._trace[i]:
                result = result + jacobian[k] * g
            result = result - self.covariant_derivative(i, jacobian[i])
        return result

    def curvature(self, U, V, W):
        """R(U, V) W, tensorial over the coefficient ring"""
        ring = U.ring
        coeffs = [ring.zero()] * self.dim
        for (i, j, k, l), value in self._r_entries:
            if U[i].is_zero() or V[j].is_zero() or W[k].is_zero():
                continue
            coeffs[l] = coeffs[l] + U[i] * V[j] * W[k] * value
        return VectorFieldExpr(ring, coeffs)

    def nabla_curvature(self, W, U, V, Z):
        """(nabla_W R)(U, V) Z, tensorial over the coefficient ring"""
        ring = U.ring
        coeffs = [ring.zero()] * self.dim
        for (a, i, j, k, l), value in self._nr_entries:
            if W[a].is_zero() or U[i].is_zero() or V[j].is_zero() or Z[k].is_zero():
                continue
            coeffs[l] = coeffs[l] + W[a] * U[i] * V[j] * Z[k] * value
        return VectorFieldExpr(ring, coeffs)

    def s_of_x(self, X, jacobian=None):
        """S(X) = sum_i R(nabla_{e_i} X, X) e_i"""
        X = self._check(X)
        jacobian = jacobian or self.jacobian(X)
        result = VectorFieldExpr.zero(X.ring, self.dim)
        for i in range(self.dim):
            result = result + self.curvature(jacobian[i], X, self.basis(X.ring, i))
        return result

    def _parts(self, X):
        X = self._check(X)
        jac = self.jacobian(X)
        lap = self.rough_laplacian(X, jac)
        s = self.s_of_x(X, jac)
        return X, jac, lap, s

    def vertical_terms(self, X):
        """the three curvature sums of the vertical condition, by name"""
        X, jac, lap, s = self._parts(X)
        return self._vertical_terms(X, jac, s)

    def _vertical_terms(self, X, jac, s):
        ring, dim = X.ring, self.dim
        terms = {name: VectorFieldExpr.zero(ring, dim) for name in VERTICAL_TERMS}
        for i in range(dim):
            e_i = self.basis(ring, i)
            nabla_s = self.covariant_derivative(i, s)
            terms["nabla_r_s_x"] += self.nabla_curvature(e_i, e_i, s, X)
            terms["r_nabla_s_x"] += self.curvature(e_i, nabla_s, X)
            terms["r_s_nabla_x"] += self.curvature(e_i, s, jac[i])
        return terms

    def horizontal_terms(self, X):
        """the eight sub-terms of the horizontal condition, by name"""
        X, jac, lap, s = self._parts(X)
        return self._horizontal_terms(X, jac, lap, s)

    def _horizontal_terms(self, X, jac, lap, s):
        ring, dim = X.ring, self.dim
        terms = {
            "laplacian_s": self.rough_laplacian(s),
            "r_x_lap_x_s": self.curvature(X, lap, s),
        }
        for name in list(HORIZONTAL_TERMS)[2:]:
            terms[name] = VectorFieldExpr.zero(ring, dim)

        for i in range(dim):
            e_i = self.basis(ring, i)
            nabla_lap = self.covariant_derivative(i, lap)
            nabla_s = self.covariant_derivative(i, s)
            terms["r_x_nabla_lap_x"] += self.curvature(X, nabla_lap, e_i)
            terms["r_nabla_x_lap_x"] += self.curvature(jac[i], lap, e_i)
            terms["r_e_s"] += self.curvature(e_i, s, e_i)
            terms["nabla_s_r"] += self.nabla_curvature(s, jac[i], X, e_i)
            terms["r_x_nabla_x_nabla_s"] += self.curvature(X, jac[i], nabla_s)
            terms["r_x_r_e_s_x"] += self.curvature(X, self.curvature(e_i, s, X), e_i)
        return terms

    def _combine_vertical(self, X, lap, terms, d1, d2):
        d1, d2 = X.ring.coerce(d1), X.ring.coerce(d2)
        curvature_sum = terms["nabla_r_s_x"] + terms["r_nabla_s_x"] + terms["r_s_nabla_x"] * 2
        return lap * d1 + (self.rough_laplacian(lap) + curvature_sum) * d2

    def _combine_horizontal(self, X, s, terms, d1, d2):
        d1, d2 = X.ring.coerce(d1), X.ring.coerce(d2)
        bracket = (
            terms["r_x_nabla_lap_x"]
            - terms["r_nabla_x_lap_x"]
            - terms["r_e_s"]
            - terms["nabla_s_r"]
            + terms["r_x_nabla_x_nabla_s"]
            - terms["r_x_r_e_s_x"]
        )
        return s * d1 + (terms["laplacian_s"] + terms["r_x_lap_x_s"] - bracket) * d2

    def vertical_condition(self, X, d1, d2):
        """d1 LX + d2 LLX + d2 sum_i [(nabla_i R)(e_i,S)X + R(e_i,nabla_i S)X + 2R(e_i,S)nabla_i X]

        L is the rough Laplacian and S = S(X). X is an interpolating
        sesqui-harmonic vector field iff the result is the zero field.
        """
        X, jac, lap, s = self._parts(X)
        return self._combine_vertical(X, lap, self._vertical_terms(X, jac, s), d1, d2)

    def horizontal_condition(self, X, d1, d2):
        """d1 S + d2 LS + d2 R(X,LX)S - d2 sum_i [R(X,nabla_i LX)e_i - R(nabla_i X,LX)e_i
        - R(e_i,S)e_i - (nabla_S R)(nabla_i X,X)e_i + R(X,nabla_i X)nabla_i S
        - R(X,R(e_i,S)X)e_i]
        """
        X, jac, lap, s = self._parts(X)
        terms = self._horizontal_terms(X, jac, lap, s)
        return self._combine_horizontal(X, s, terms, d1, d2)

    def conditions(self, X, d1, d2):
        """vertical and horizontal conditions with the named sub-terms

        Returns
        -------
        (vertical, horizontal, terms) where terms maps the names in
        VERTICAL_TERMS and HORIZONTAL_TERMS to their fields, plus the
        entries 'laplacian_x', 'bilaplacian_x' and 's_x'
        """
        X, jac, lap, s = self._parts(X)
        vterms = self._vertical_terms(X, jac, s)
        hterms = self._horizontal_terms(X, jac, lap, s)
        vertical = self._combine_vertical(X, lap, vterms, d1, d2)
        horizontal = self._combine_horizontal(X, s, hterms, d1, d2)
        terms = {
            "laplacian_x": lap,
            "bilaplacian_x": self.rough_laplacian(lap),
            "s_x": s,
        }
        terms.update(vterms)
        terms.update(hterms)
        return vertical, horizontal, terms

    def tau(self, X):
        """tension field, horizontal -S(X) and vertical -LX"""
        X, jac, lap, s = self._parts(X)
        return TauPair(-s, -lap)

    def tau_sesqui(self, X, d1, d2):
        vertical, horizontal, _ = self.conditions(X, d1, d2)
        return TauPair(-horizontal, -vertical)

    def bitension(self, X):
        return self.tau_sesqui(X, 0, 1)


def generic_field(ring, dim=None):
    """X = sum_i x_i e_i over the first dim symbols of ring"""
    dim = dim or len(ring.symbols) - 2
    return VectorFieldExpr(ring, ring.gens()[:dim])


def rational_field(ring, values):
    """a constant field with the given rational coefficients"""
    return VectorFieldExpr(ring, [ring.const(Fraction(v)) for v in values])
