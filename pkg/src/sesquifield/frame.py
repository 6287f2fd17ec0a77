"""Levi-Civita connection and curvature of left-invariant metrics

Frame indices are 0-based in this module. Error messages and manifests use
1-based indices.
"""
import configparser
import os

from fractions import Fraction
from itertools import product

import numpy

from sesquifield.algebra import Derivation, PolyRing, jet_derivation, parse_rational
from sesquifield.util import SESQUIFIELDRC, StructureError


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

CURVATURE_CONVENTION = "R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z"

_zero = Fraction(0)


def _one_based(*indices):
    return tuple(i + 1 for i in indices)


def _rational_array(shape):
    array = numpy.empty(shape, dtype=object)
    array.fill(_zero)
    return array


class FrameAlgebra:
    """a Lie algebra in an orthonormal frame

    structure[i, j, k] is c^k_ij, so [e_i, e_j] = sum_k c^k_ij e_k.
    derivations[i] gives the action of e_i on coefficient symbols, None
    meaning every coefficient is constant along e_i.
    """

    def __init__(self, structure, derivations=None, name=None, jet_direction=None):
        structure = numpy.array(structure, dtype=object)
        if structure.ndim != 3 or len(set(structure.shape)) != 1:
            raise StructureError(
                f"structure constants must have shape (m, m, m), got {structure.shape}"
            )
        dim = structure.shape[0]
        if dim < 1:
            raise StructureError("dimension must be positive")

        self.structure = _rational_array(structure.shape)
        for index in product(range(dim), repeat=3):
            self.structure[index] = parse_rational(structure[index])

        if derivations is None:
            derivations = (None,) * dim
        derivations = tuple(derivations)
        if len(derivations) != dim:
            raise StructureError(f"need {dim} derivations, got {len(derivations)}")
        rings = {d.ring for d in derivations if d is not None}
        if len(rings) > 1:
            raise StructureError("frame derivations act on different rings")

        self.derivations = derivations
        self.ring = rings.pop() if rings else None
        self.name = name
        self.jet_direction = jet_direction
        self._validate()

    def __repr__(self):
        name = f"'{self.name}', " if self.name else ""
        return f"FrameAlgebra({name}dim={self.dim})"

    @property
    def dim(self):
        return self.structure.shape[0]

    @property
    def is_jet(self):
        return self.ring is not None

    def _validate(self):
        dim = self.dim
        c = self.structure
        for i, j, k in product(range(dim), repeat=3):
            if c[i, j, k] != -c[j, i, k]:
                raise StructureError(
                    "structure constants are not antisymmetric", _one_based(i, j, k)
                )

        for i, j, l, k in product(range(dim), repeat=4):
            total = _zero
            for a, b, d in ((i, j, l), (j, l, i), (l, i, j)):
                total += sum(c[a, b, r] * c[r, d, k] for r in range(dim))
            if total:
                raise StructureError(
                    "structure constants violate the Jacobi identity",
                    _one_based(i, j, l, k),
                )

    @classmethod
    def from_brackets(cls, dim, brackets, derivations=None, name=None, jet_direction=None):
        """builds from 1-based (i, j, k, value) entries, value = <[e_i, e_j], e_k>

        The antisymmetric partner of each entry is filled in automatically.
        Conflicting entries raise a StructureError.
        """
        if dim < 1:
            raise StructureError("dimension must be positive")

        structure = _rational_array((dim, dim, dim))
        given = {}
        for entry in brackets:
            if len(entry) != 4:
                raise StructureError(f"bracket entry {entry} is not (i, j, k, value)")
            i, j, k, value = entry
            index = (int(i), int(j), int(k))
            if not all(1 <= n <= dim for n in index):
                raise StructureError("bracket index out of range", index)
            value = parse_rational(value)
            i, j, k = (n - 1 for n in index)
            if i == j and value:
                raise StructureError("[e_i, e_i] must vanish", index)

            for key, val in (((i, j, k), value), ((j, i, k), -value)):
                if key in given and given[key] != val:
                    raise StructureError(
                        "conflicting bracket entries violate antisymmetry",
                        _one_based(*key),
                    )
                given[key] = val
                structure[key] = val

        return cls(structure, derivations=derivations, name=name, jet_direction=jet_direction)

    def brackets(self):
        """non-zero 1-based (i, j, k, value) entries with i < j"""
        dim = self.dim
        return [
            (i + 1, j + 1, k + 1, self.structure[i, j, k])
            for i, j, k in product(range(dim), repeat=3)
            if i < j and self.structure[i, j, k]
        ]

    def bracket(self, i, j):
        """coefficients of [e_i, e_j]"""
        self._check_index(i, j)
        return tuple(self.structure[i, j, :])

    def is_unimodular(self):
        """True if tr(ad e_j) = 0 for every j"""
        dim = self.dim
        return all(
            sum(self.structure[j, k, k] for k in range(dim)) == 0 for j in range(dim)
        )

    def _check_index(self, *indices):
        for i in indices:
            if not 0 <= i < self.dim:
                raise IndexError(f"frame index {i + 1} outside 1..{self.dim}")

    def frame_derivative(self, i, poly):
        """e_i applied to a coefficient polynomial"""
        self._check_index(i)
        derivation = self.derivations[i]
        if derivation is None:
            return poly.ring.zero()
        return derivation(poly)

    def with_derivations(self, derivations, jet_direction=None):
        return type(self)(
            self.structure,
            derivations=derivations,
            name=self.name,
            jet_direction=jet_direction,
        )

    def with_jet(self, direction=None, order=4, prefix="f", constants=("d1", "d2")):
        """a copy whose coefficients are jets of a profile along one direction

        The coefficient ring has symbols f0..f<order> plus constants. e_direction
        acts as the total derivative, every other frame vector as zero.
        """
        direction = self.jet_direction if direction is None else direction
        if direction is None:
            raise StructureError(f"no jet direction given for {self!r}")
        self._check_index(direction)
        if order < 1:
            raise ValueError("jet order must be at least 1")

        ring = PolyRing([f"{prefix}{k}" for k in range(order + 1)] + list(constants))
        derivations = [Derivation.zero(ring)] * self.dim
        derivations[direction] = jet_derivation(ring, prefix=prefix, constants=constants)
        return self.with_derivations(derivations, jet_direction=direction)


def milnor_algebra(l1, l2, l3, name=None):
    """unimodular 3-dimensional algebra [e2,e3]=l1 e1, [e3,e1]=l2 e2, [e1,e2]=l3 e3"""
    brackets = [(2, 3, 1, l1), (3, 1, 2, l2), (1, 2, 3, l3)]
    return FrameAlgebra.from_brackets(3, brackets, name=name)


class Connection:
    """gamma[i, j, k] is Gamma^k_ij, so nabla_{e_i} e_j = sum_k Gamma^k_ij e_k"""

    def __init__(self, gamma):
        self.gamma = gamma

    @property
    def dim(self):
        return self.gamma.shape[0]

    def __call__(self, i, j):
        """coefficients of nabla_{e_i} e_j"""
        return tuple(self.gamma[i, j, :])

    def check(self, fa):
        """raises StructureError unless metric compatible and torsion free for fa"""
        dim = self.dim
        if dim != fa.dim:
            raise StructureError(f"connection of dimension {dim} used with {fa!r}")

        g = self.gamma
        for i, j, k in product(range(dim), repeat=3):
            if g[i, j, k] != -g[i, k, j]:
                raise StructureError(
                    "connection is not metric compatible", _one_based(i, j, k)
                )
            if g[i, j, k] - g[j, i, k] != fa.structure[i, j, k]:
                raise StructureError("connection has torsion", _one_based(i, j, k))
        return True


class CurvatureTensor:
    """r[i, j, k, l] is R^l_ijk, so R(e_i, e_j) e_k = sum_l R^l_ijk e_l"""

    convention = CURVATURE_CONVENTION

    def __init__(self, r):
        self.r = r
        self._derivative = None

    @property
    def dim(self):
        return self.r.shape[0]

    def __call__(self, i, j, k):
        """coefficients of R(e_i, e_j) e_k"""
        return tuple(self.r[i, j, k, :])

    def derivative(self, c):
        """curvature_derivative(c, self), kept for the last connection used"""
        if self._derivative is None or self._derivative[0] is not c:
            self._derivative = (c, curvature_derivative(c, self))
        return self._derivative[1]

    def lowered(self, i, j, k, l):
        """<R(e_i, e_j) e_k, e_l>"""
        return self.r[i, j, k, l]

    def sectional(self, i, j):
        """<R(e_i, e_j) e_j, e_i>"""
        if i == j:
            raise ValueError("sectional curvature needs two distinct directions")
        return self.r[i, j, j, i]

    def ricci(self, j, k):
        """trace of X -> R(X, e_j) e_k"""
        return sum(self.r[i, j, k, i] for i in range(self.dim))

    def scalar(self):
        return sum(self.ricci(j, j) for j in range(self.dim))

    def check(self):
        """raises StructureError if a curvature symmetry fails"""
        dim = self.dim
        r = self.r
        for i, j, k, l in product(range(dim), repeat=4):
            if r[i, j, k, l] != -r[j, i, k, l]:
                raise StructureError(
                    "curvature is not antisymmetric", _one_based(i, j, k, l)
                )
            if r[i, j, k, l] + r[j, k, i, l] + r[k, i, j, l]:
                raise StructureError(
                    "curvature violates the first Bianchi identity",
                    _one_based(i, j, k, l),
                )
            if r[i, j, k, l] != r[k, l, i, j]:
                raise StructureError(
                    "curvature lacks pair symmetry", _one_based(i, j, k, l)
                )
        return True


def connection_from_structure(fa):
    """Koszul formula in an orthonormal frame

    Gamma^k_ij = (c^k_ij - c^i_jk + c^j_ki) / 2
    """
    dim = fa.dim
    c = fa.structure
    gamma = _rational_array((dim, dim, dim))
    half = Fraction(1, 2)
    for i, j, k in product(range(dim), repeat=3):
        gamma[i, j, k] = half * (c[i, j, k] - c[j, k, i] + c[k, i, j])

    connection = Connection(gamma)
    connection.check(fa)
    return connection


def curvature_from_connection(fa, c):
    """R^l_ijk = sum_r (G^r_jk G^l_ir - G^r_ik G^l_jr) - sum_r c^r_ij G^l_rk"""
    c.check(fa)
    dim = fa.dim
    g = c.gamma
    s = fa.structure
    r = _rational_array((dim,) * 4)
    for i, j, k, l in product(range(dim), repeat=4):
        total = _zero
        for n in range(dim):
            total += g[j, k, n] * g[i, n, l] - g[i, k, n] * g[j, n, l]
            total -= s[i, j, n] * g[n, k, l]
        r[i, j, k, l] = total

    curvature = CurvatureTensor(r)
    curvature.check()
    return curvature


def curvature_derivative(c, r):
    """array nr[a, u, v, z, l], the e_l coefficient of (nabla_{e_a} R)(e_u, e_v) e_z"""
    dim = c.dim
    g = c.gamma
    rr = r.r
    nr = _rational_array((dim,) * 5)
    for a, u, v, z, l in product(range(dim), repeat=5):
        total = _zero
        for p in range(dim):
            total += rr[u, v, z, p] * g[a, p, l]
            total -= g[a, u, p] * rr[p, v, z, l]
            total -= g[a, v, p] * rr[u, p, z, l]
            total -= g[a, z, p] * rr[u, v, p, l]
        nr[a, u, v, z, l] = total
    return nr


def second_bianchi_defect(nr):
    """first (a, b, c, d) where the cyclic sum of (nabla_a R)(e_b, e_c) e_d is nonzero"""
    dim = nr.shape[0]
    for a, b, c, d in product(range(dim), repeat=4):
        for l in range(dim):
            if nr[a, b, c, d, l] + nr[b, c, a, d, l] + nr[c, a, b, d, l]:
                return _one_based(a, b, c, d)
    return None


def nabla_curvature(fa, c, r, w, u, v, z):
    """(nabla_W R)(e_u, e_v) e_z for W given by frame coefficients w

    w may be a VectorFieldExpr, giving a VectorFieldExpr of the same ring, or
    a sequence of rationals, giving a tuple of rationals.
    """
    fa._check_index(u, v, z)
    coeffs = getattr(w, "coeffs", w)
    if len(coeffs) != fa.dim:
        raise ValueError(f"expected {fa.dim} frame coefficients, got {len(coeffs)}")

    nr = r.derivative(c)
    if hasattr(w, "ring"):
        ring = w.ring
        result = [ring.zero() for _ in range(fa.dim)]
    else:
        result = [_zero] * fa.dim
    for a, wa in enumerate(coeffs):
        for l in range(fa.dim):
            if nr[a, u, v, z, l]:
                result[l] = result[l] + wa * nr[a, u, v, z, l]

    if hasattr(w, "ring"):
        return type(w)(w.ring, result)
    return tuple(result)


def _parse_brackets(text, section):
    entries = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 4:
            raise StructureError(f"[{section}] bracket line '{line}' is not 'i, j, k, p/q'")
        entries.append((int(parts[0]), int(parts[1]), int(parts[2]), parts[3]))
    return entries


def read_presets(path=None):
    """returns {name: section} from a presets config file"""
    path = path or os.path.join(SESQUIFIELDRC, "presets.cfg")
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise FileNotFoundError(f"no presets file at {path}")
    return {name: parser[name] for name in parser.sections()}


def preset_names(path=None):
    return tuple(read_presets(path))


def load_preset(name, path=None):
    """the named FrameAlgebra from presets.cfg"""
    presets = read_presets(path)
    if name not in presets:
        raise KeyError(f"unknown preset '{name}', choose from {', '.join(presets)}")

    section = presets[name]
    dim = section.getint("dim")
    brackets = _parse_brackets(section.get("brackets", ""), name)
    jet_direction = section.getint("jet_direction", fallback=None)
    if jet_direction is not None:
        jet_direction -= 1
    return FrameAlgebra.from_brackets(
        dim, brackets, name=name, jet_direction=jet_direction
    )
