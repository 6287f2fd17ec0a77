"""exact rational polynomials over a declared list of symbols

A ``Poly`` wraps an element of a sparse sympy polynomial ring over ``QQ``.
Coefficients are handed out as ``fractions.Fraction`` instances and terms are
listed in graded lexicographic order over the symbol list of the
``PolyRing``, so the canonical text of equal polynomials is identical.
"""
import keyword
import re

from fractions import Fraction
from functools import reduce

import numpy

from sympy import QQ, Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys import rings
from sympy.polys.orderings import grlex

from sesquifield.util import (
    ExponentOverflowError,
    PolyParseError,
    SymbolError,
)


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

DEFAULT_MAX_EXPONENT = 16

_rational = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_identifier = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_transformations = standard_transformations + (convert_xor,)


def parse_rational(text):
    """returns a Fraction from a 'p' or 'p/q' literal

    Parameters
    ----------
    text : str, int or Fraction
        integers and Fractions are passed through

    Raises
    ------
    ValueError
        if text is not a rational literal or has a zero denominator
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)

    match = _rational.match(str(text))
    if match is None:
        raise ValueError(f"'{text}' is not a rational literal of the form p or p/q")

    num, den = match.groups()
    den = 1 if den is None else int(den)
    if den == 0:
        raise ValueError(f"'{text}' has a zero denominator")
    return Fraction(int(num), den)


def format_rational(value):
    """canonical 'p' or 'p/q' text for a rational"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _to_qq(value):
    value = parse_rational(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(coeff):
    return Fraction(int(coeff.numerator), int(coeff.denominator))


class PolyRing:
    """the ring Q[symbols] with an exponent cap

    ``sparse`` is the underlying sympy ring, ordered graded lexicographically.
    """

    def __init__(self, symbols, max_exponent=DEFAULT_MAX_EXPONENT):
        symbols = tuple(symbols)
        if len(set(symbols)) != len(symbols):
            raise SymbolError(f"duplicated symbols in {symbols}")
        for symbol in symbols:
            if not _identifier.fullmatch(symbol) or keyword.iskeyword(symbol):
                raise SymbolError(f"'{symbol}' is not a valid symbol name")

        self.symbols = symbols
        self.max_exponent = max_exponent
        self._index = {s: i for i, s in enumerate(symbols)}
        self._zero_exp = (0,) * len(symbols)
        self._sympy_symbols = tuple(Symbol(s) for s in symbols)
        self._locals = dict(zip(symbols, self._sympy_symbols))
        self.sparse = rings.PolyRing(self._sympy_symbols, QQ, grlex)

    def __repr__(self):
        return f"PolyRing({list(self.symbols)}, max_exponent={self.max_exponent})"

    def __eq__(self, other):
        if not isinstance(other, PolyRing):
            return NotImplemented
        return self.symbols == other.symbols and self.max_exponent == other.max_exponent

    def __hash__(self):
        return hash((self.symbols, self.max_exponent))

    def __getstate__(self):
        return {"symbols": self.symbols, "max_exponent": self.max_exponent}

    def __setstate__(self, state):
        self.__init__(state["symbols"], state["max_exponent"])

    def __contains__(self, symbol):
        return symbol in self._index

    def __len__(self):
        return len(self.symbols)

    def index(self, symbol):
        try:
            return self._index[symbol]
        except KeyError:
            raise SymbolError(f"'{symbol}' is not a symbol of {self.symbols}")

    def zero(self):
        return Poly.from_sparse(self, self.sparse.zero)

    def one(self):
        return self.const(1)

    def const(self, value):
        return Poly.from_sparse(self, self.sparse.ground_new(_to_qq(value)))

    def gen(self, symbol):
        """the polynomial consisting of symbol alone"""
        return Poly.from_sparse(self, self.sparse.gens[self.index(symbol)])

    def gens(self):
        return tuple(self.gen(s) for s in self.symbols)

    def coerce(self, value):
        """returns value as a Poly of this ring

        value can be a Poly of this ring, an int, a Fraction or a polynomial
        literal
        """
        if isinstance(value, Poly):
            if value.ring != self:
                raise SymbolError(
                    f"polynomial over {value.ring.symbols} used in ring {self.symbols}"
                )
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return self.const(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into a polynomial")

    def parse(self, text):
        """parses a polynomial literal, e.g. '-1/4*b*g + a^2'

        The literal is checked token by token so a PolyParseError can point at
        the offending character, then handed to sympy's parser.
        """
        source = _explicit_source(self, text)
        try:
            expr = parse_expr(source, local_dict=self._locals, transformations=_transformations)
            sparse = self.sparse.from_expr(expr)
        except (SyntaxError, TypeError, ValueError) as err:
            raise PolyParseError(f"cannot read '{text}': {err}", position=0)
        return Poly.from_sparse(self, sparse)


class Poly:
    """an immutable multivariate polynomial with rational coefficients"""

    __slots__ = ("ring", "sparse", "_terms", "_hash")

    def __init__(self, ring, terms):
        """
        Parameters
        ----------
        ring : PolyRing
        terms : dict
            exponent tuple -> coefficient, zero coefficients are dropped
        """
        width = len(ring.symbols)
        data = {}
        for exponents, coeff in terms.items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != width:
                raise SymbolError(
                    f"exponent vector {exponents} does not match symbols {ring.symbols}"
                )
            data[exponents] = _to_qq(Fraction(coeff))
        self._bind(ring, ring.sparse.from_dict(data))

    @classmethod
    def from_sparse(cls, ring, sparse):
        """wraps an element of ring.sparse"""
        poly = cls.__new__(cls)
        poly._bind(ring, sparse)
        return poly

    def _bind(self, ring, sparse):
        for monom in sparse.itermonoms():
            if monom and max(monom) > ring.max_exponent:
                raise ExponentOverflowError(
                    f"exponent in {monom} exceeds the cap of {ring.max_exponent}"
                )
        self.ring = ring
        self.sparse = sparse
        self._terms = None
        self._hash = None

    def __getstate__(self):
        return {"ring": self.ring, "terms": self.terms}

    def __setstate__(self, state):
        Poly.__init__(self, state["ring"], state["terms"])

    @property
    def terms(self):
        """exponent tuple -> coefficient, in canonical order"""
        return dict(self.items())

    def items(self):
        if self._terms is None:
            self._terms = {
                monom: _to_fraction(coeff) for monom, coeff in self.sparse.terms(grlex)
            }
        return self._terms.items()

    def __len__(self):
        return len(self.sparse)

    def __bool__(self):
        return bool(self.sparse)

    def is_zero(self):
        return not self.sparse

    def is_constant(self):
        return all(not any(e) for e in self.sparse.itermonoms())

    def constant_term(self):
        return _to_fraction(self.sparse.get(self.ring._zero_exp, QQ.zero))

    def degree(self):
        """total degree, -1 for the zero polynomial"""
        if not self.sparse:
            return -1
        return max(sum(e) for e in self.sparse.itermonoms())

    def symbols(self):
        """names of the symbols that appear with a positive exponent"""
        used = set()
        for exponents in self.sparse.itermonoms():
            used.update(i for i, e in enumerate(exponents) if e)
        return tuple(self.ring.symbols[i] for i in sorted(used))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.sparse == other.sparse

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, tuple(self.items())))
        return self._hash

    def _other(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise SymbolError(
                    f"symbol lists differ: {self.ring.symbols} and {other.ring.symbols}"
                )
            return other
        return self.ring.coerce(other)

    def _new(self, sparse):
        return Poly.from_sparse(self.ring, sparse)

    def __add__(self, other):
        return self._new(self.sparse + self._other(other).sparse)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.sparse)

    def __sub__(self, other):
        return self._new(self.sparse - self._other(other).sparse)

    def __rsub__(self, other):
        return self._new(self._other(other).sparse - self.sparse)

    def __mul__(self, other):
        return self._new(self.sparse * self._other(other).sparse)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """division by a nonzero rational constant only"""
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise ValueError("can only divide by a nonzero constant")
            other = other.constant_term()
        other = parse_rational(other)
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return self._new(self.sparse.quo_ground(_to_qq(other)))

    def __pow__(self, power):
        if not isinstance(power, int) or power < 0:
            raise ValueError("powers must be non-negative integers")
        return self._new(self.sparse ** power)

    def scaled(self, value):
        return self * parse_rational(value)

    def substitute(self, assignment):
        """exact evaluation, assignment maps symbol to a rational

        Raises
        ------
        SymbolError
            if a symbol of the polynomial is not assigned
        """
        return self.partial_substitute(assignment, require_all=True).constant_term()

    def partial_substitute(self, assignment, require_all=False):
        """returns a Poly of the same ring with the assigned symbols replaced"""
        for symbol in assignment:
            self.ring.index(symbol)
        if require_all:
            missing = [s for s in self.symbols() if s not in assignment]
            if missing:
                raise SymbolError(f"no value assigned to {', '.join(missing)}")

        pairs = [(self.ring.index(s), _to_qq(v)) for s, v in assignment.items()]
        if not pairs:
            return self
        return self._new(self.sparse.subs(pairs))

    def compose(self, ring, images):
        """replaces symbols by polynomials of ring

        Symbols without an image must also be symbols of ring.
        """
        images = {s: ring.coerce(p) for s, p in images.items()}
        mapping = {}
        for symbol in self.symbols():
            if symbol in images:
                mapping[Symbol(symbol)] = images[symbol].sparse.as_expr()
            elif symbol not in ring:
                raise SymbolError(f"'{symbol}' has no image in {ring.symbols}")

        expr = self.sparse.as_expr().xreplace(mapping)
        return Poly.from_sparse(ring, ring.sparse.from_expr(expr))

    def as_expr(self):
        """the sympy expression of this polynomial"""
        return self.sparse.as_expr()

    def to_arrays(self):
        """exponent matrix and float coefficient vector for numeric evaluation"""
        width = len(self.ring.symbols)
        if not self.sparse:
            return numpy.zeros((0, width), dtype=int), numpy.zeros(0)
        terms = self.terms
        exps = numpy.array(list(terms), dtype=int).reshape(len(terms), width)
        coeffs = numpy.array([float(c) for c in terms.values()])
        return exps, coeffs

    def evaluate(self, point):
        """float evaluation at point, an array ordered like ring.symbols"""
        exps, coeffs = self.to_arrays()
        point = numpy.asarray(point, dtype=float)
        if not len(coeffs):
            return 0.0
        monomials = numpy.prod(point ** exps, axis=1)
        return float(monomials @ coeffs)

    def _monomial_text(self, exponents):
        parts = []
        for symbol, e in zip(self.ring.symbols, exponents):
            if e == 1:
                parts.append(symbol)
            elif e > 1:
                parts.append(f"{symbol}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.sparse:
            return "0"

        pieces = []
        for exponents, coeff in self.items():
            monomial = self._monomial_text(exponents)
            size = abs(coeff)
            if not monomial:
                body = format_rational(size)
            elif size == 1:
                body = monomial
            else:
                body = f"{format_rational(size)}*{monomial}"
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"Poly('{self}')"


class Derivation:
    """a derivation of a PolyRing, defined by its action on symbols

    The action is extended to every polynomial by linearity and the Leibniz
    rule. Symbols missing from the action are outside the domain.
    """

    def __init__(self, ring, action):
        self.ring = ring
        self.action = {}
        for symbol, image in action.items():
            ring.index(symbol)
            self.action[symbol] = ring.coerce(image)

    def __repr__(self):
        mapping = ", ".join(f"{s}->{p}" for s, p in self.action.items())
        return f"Derivation({mapping})"

    @classmethod
    def zero(cls, ring):
        """every symbol is a constant"""
        return cls(ring, {s: 0 for s in ring.symbols})

    def __call__(self, poly):
        return derive(self, poly)


def jet_derivation(ring, prefix="f", constants=()):
    """the total derivative on jet symbols prefix0..prefixN

    prefix_k maps to prefix_{k+1}; the highest jet symbol is left outside the
    domain so differentiating it is an error. Symbols in constants map to 0.
    """
    pattern = re.compile(rf"^{re.escape(prefix)}(\d+)$")
    orders = sorted(
        int(pattern.match(s).group(1)) for s in ring.symbols if pattern.match(s)
    )
    if not orders or orders != list(range(len(orders))):
        raise SymbolError(f"ring {ring.symbols} has no contiguous {prefix}0.. jet symbols")

    action = {f"{prefix}{k}": ring.gen(f"{prefix}{k + 1}") for k in orders[:-1]}
    action.update({s: 0 for s in constants})
    return Derivation(ring, action)


def poly_add(p, q):
    return p + q


def poly_mul(p, q):
    return p * q


def derive(derivation, poly):
    """applies derivation to poly, the sum of D(x) times the partial in x

    Raises
    ------
    SymbolError
        if poly involves a symbol outside the derivation's domain
    """
    if poly.ring != derivation.ring:
        raise SymbolError(
            f"symbol lists differ: {poly.ring.symbols} and {derivation.ring.symbols}"
        )

    ring = poly.ring
    result = ring.sparse.zero
    for symbol in poly.symbols():
        if symbol not in derivation.action:
            raise SymbolError(f"derivation is not defined on '{symbol}'")
        image = derivation.action[symbol]
        if image.is_zero():
            continue
        result = result + poly.sparse.diff(ring.index(symbol)) * image.sparse
    return Poly.from_sparse(ring, result)


def poly_substitute(poly, assignment):
    return poly.substitute(assignment)


def poly_sum(polys, ring):
    return reduce(lambda a, b: a + b, polys, ring.zero())


_token = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _literal_tokens(text):
    pos = 0
    while True:
        match = _token.match(text, pos)
        if match is None:
            break
        number, name, other = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            yield "num", number, start
        elif name is not None:
            yield "sym", name, start
        else:
            yield "op", other, start
        pos = match.end()
    yield "end", "", len(text)


def _explicit_source(ring, text):
    """checks a literal and returns it with every product written out

    Accepted are integers, ring symbols, parentheses, + - *, ^ followed by an
    integer, / followed by a nonzero integer, and juxtaposition as a product.

    Raises
    ------
    PolyParseError
        positioned at the first token that breaks the grammar
    ExponentOverflowError
        for a literal exponent above the ring cap
    """

    def error(message, position):
        return PolyParseError(f"{message} in '{text}'", position=position)

    tokens = list(_literal_tokens(text))
    out = []
    depth = 0
    expect_operand = True
    i = 0
    while True:
        kind, value, position = tokens[i]
        i += 1
        if expect_operand:
            if kind == "num":
                out.append(str(int(value)))
                expect_operand = False
            elif kind == "sym":
                if value not in ring:
                    raise error(f"unknown symbol '{value}'", position)
                out.append(value)
                expect_operand = False
            elif kind == "op" and value in ("(", "+", "-"):
                depth += value == "("
                out.append(value)
            elif kind == "end":
                raise error("unexpected end of literal" if out else "empty polynomial literal", position)
            else:
                raise error(f"unexpected '{value}'", position)
            continue

        if kind == "end":
            if depth:
                raise error("missing ')'", position)
            return " ".join(out)
        if kind == "op" and value in ("+", "-", "*"):
            out.append(value)
            expect_operand = True
        elif kind == "op" and value == ")":
            if not depth:
                raise error("unexpected ')'", position)
            depth -= 1
            out.append(value)
        elif kind == "op" and value in ("^", "/"):
            next_kind, number, next_position = tokens[i]
            i += 1
            if value == "^":
                if next_kind != "num":
                    raise error("exponent must be a non-negative integer", next_position)
                if int(number) > ring.max_exponent:
                    raise ExponentOverflowError(
                        f"exponent {number} exceeds the cap of {ring.max_exponent}"
                    )
            elif next_kind != "num":
                raise error("only division by an integer is supported", next_position)
            elif int(number) == 0:
                raise error("division by zero", next_position)
            out.extend((value, str(int(number))))
        elif kind in ("num", "sym") or (kind, value) == ("op", "("):
            # juxtaposition
            out.append("*")
            i -= 1
            expect_operand = True
        else:
            raise error(f"unexpected '{value}'", position)
