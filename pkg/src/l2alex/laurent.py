"""Sparse multivariate Laurent polynomials and square matrices over them.

Polynomials live in C[z_1^{±1}, ..., z_l^{±1}]: a finite map from integer
exponent vectors to complex coefficients. Coefficients are double-precision
complex with an "integer-certified" fast path: when every coefficient is a
real integer with |c| <= 2^53, ring operations are exact, and downstream
code may rely on integrality (Mahler measures of nonzero integer Laurent
polynomials are >= 1).

Conventions:
  * exponent vectors are tuples of ints; componentwise addition is the group
    law, and the canonical term order is lexicographic on exponent tuples;
  * no stored coefficient is zero: construction prunes exact zeros on the
    integer path and coefficients below 1e-15 x (max |coefficient|) on the
    float path (numerical determinants shed dust terms);
  * the involution maps sum a_v z^v to sum conj(a_v) z^{-v}; the matrix
    adjoint is the transpose with entrywise involution.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

from .errors import VariableCountMismatch

_FLOAT_PRUNE_REL = 1e-15
_INT_EXACT_LIMIT = 2.0 ** 53


def _is_exact_int(c: complex) -> bool:
    return (
        c.imag == 0.0
        and c.real == math.floor(c.real)
        and abs(c.real) <= _INT_EXACT_LIMIT
    )


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "integer_certified")

    def __init__(self, nvars: int, terms: Mapping[tuple, complex],
                 integer_certified: bool | None = None):
        if nvars < 0:
            raise ValueError("variable count must be >= 0")
        clean: dict[tuple, complex] = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise VariableCountMismatch(
                    f"exponent vector {exp} has length {len(exp)}, expected {nvars}")
            c = complex(c)
            if c != 0:
                clean[exp] = clean.get(exp, 0j) + c

        derived = all(_is_exact_int(c) for c in clean.values())
        if derived:
            clean = {e: c for e, c in clean.items() if c != 0}
        else:
            scale = max(abs(c) for c in clean.values()) if clean else 0.0
            clean = {e: c for e, c in clean.items()
                     if abs(c) >= _FLOAT_PRUNE_REL * scale and c != 0}
            derived = all(_is_exact_int(c) for c in clean.values())

        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        if integer_certified is None:
            cert = derived
        else:
            cert = bool(integer_certified) and derived
        object.__setattr__(self, "integer_certified", cert)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: complex) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def monomial(cls, nvars: int, exp: Iterable[int], c: complex = 1) -> "LaurentPoly":
        return cls(nvars, {tuple(int(e) for e in exp): c})

    @classmethod
    def variable(cls, nvars: int, j: int) -> "LaurentPoly":
        exp = [0] * nvars
        exp[j] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def from_univariate(cls, coeffs: Mapping[int, complex]) -> "LaurentPoly":
        return cls(1, {(k,): c for k, c in coeffs.items()})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[tuple]:
        return sorted(self.terms)

    def spread(self, j: int) -> int:
        """Exponent spread max - min of variable j over the support (0 if empty)."""
        if not self.terms:
            return 0
        es = [e[j] for e in self.terms]
        return max(es) - min(es)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly)
                and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if self.is_zero:
            return f"LaurentPoly({self.nvars}, 0)"
        bits = []
        for exp in self.support():
            c = self.terms[exp]
            mono = "*".join(f"z{j + 1}^{e}" for j, e in enumerate(exp) if e != 0)
            bits.append(f"({c:g}){'*' + mono if mono else ''}")
        return f"LaurentPoly({self.nvars}, {' + '.join(bits)})"

    # -- ring operations ---------------------------------------------------

    def _check_same_vars(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise VariableCountMismatch(
                f"variable counts differ: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_same_vars(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0j) + c
        return LaurentPoly(self.nvars, out,
                           self.integer_certified and other.integer_certified)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()},
                           self.integer_certified)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return LaurentPoly(self.nvars,
                               {e: c * other for e, c in self.terms.items()})
        self._check_same_vars(other)
        out: dict[tuple, complex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0j) + c1 * c2
        return LaurentPoly(self.nvars, out,
                           self.integer_certified and other.integer_certified)

    __rmul__ = __mul__

    def involution(self) -> "LaurentPoly":
        """a = sum a_v z^v  ->  a* = sum conj(a_v) z^{-v}."""
        return LaurentPoly(
            self.nvars,
            {tuple(-e for e in exp): c.conjugate() for exp, c in self.terms.items()},
            self.integer_certified)

    def evaluate(self, point: Iterable[complex]) -> complex:
        """Evaluate at a point with all coordinates nonzero."""
        pt = list(point)
        if len(pt) != self.nvars:
            raise VariableCountMismatch("point length != variable count")
        total = 0j
        for exp, c in self.terms.items():
            val = c
            for z, e in zip(pt, exp):
                val *= z ** e
            total += val
        return total

    # -- serialization -----------------------------------------------------

    def to_obj(self) -> list:
        """Canonical form: terms sorted lexicographically by exponent vector."""
        return [{"exp": list(e), "re": self.terms[e].real, "im": self.terms[e].imag}
                for e in sorted(self.terms)]

    @classmethod
    def from_obj(cls, nvars: int, obj: list) -> "LaurentPoly":
        terms = {}
        for item in obj:
            exp = tuple(int(e) for e in item["exp"])
            terms[exp] = terms.get(exp, 0j) + complex(float(item["re"]),
                                                      float(item.get("im", 0.0)))
        return cls(nvars, terms)


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Product in C[z^{±1}]; certified integer iff both factors are."""
    return a * b


def poly_involution(a: LaurentPoly) -> LaurentPoly:
    """The *-involution: conjugate coefficients, invert monomials."""
    return a.involution()


class LaurentMatrix:
    """Square matrix of Laurent polynomials sharing one variable count."""

    __slots__ = ("size", "nvars", "rows")

    def __init__(self, rows: Iterable[Iterable[LaurentPoly]], nvars: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix must be square")
        if size == 0:
            if nvars is None:
                raise ValueError("0x0 matrix needs an explicit variable count")
        else:
            counts = {p.nvars for r in rows for p in r}
            if len(counts) != 1:
                raise VariableCountMismatch(
                    f"entries disagree on variable count: {sorted(counts)}")
            inferred = counts.pop()
            if nvars is not None and nvars != inferred:
                raise VariableCountMismatch(
                    f"declared {nvars} variables, entries have {inferred}")
            nvars = inferred
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentMatrix is immutable")

    @classmethod
    def identity(cls, size: int, nvars: int) -> "LaurentMatrix":
        one = LaurentPoly.one(nvars)
        zero = LaurentPoly.zero(nvars)
        return cls([[one if i == j else zero for j in range(size)]
                    for i in range(size)], nvars=nvars)

    @property
    def integer_certified(self) -> bool:
        return all(p.integer_certified for r in self.rows for p in r)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, LaurentMatrix)
                and self.nvars == other.nvars and self.rows == other.rows)

    def __hash__(self):
        return hash((self.nvars, self.rows))

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.size != other.size or self.nvars != other.nvars:
            raise VariableCountMismatch("matrix shapes/variables incompatible")
        n = self.size
        zero = LaurentPoly.zero(self.nvars)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out, nvars=self.nvars)

    def adjoint(self) -> "LaurentMatrix":
        """Transpose with entrywise involution: (A*)_{ij} = (A_{ji})*."""
        n = self.size
        return LaurentMatrix(
            [[self.rows[j][i].involution() for j in range(n)] for i in range(n)],
            nvars=self.nvars)

    def support_union(self) -> set[tuple]:
        out: set[tuple] = set()
        for r in self.rows:
            for p in r:
                out.update(p.terms)
        return out

    def determinant(self) -> LaurentPoly:
        """Exact symbolic determinant over the Laurent polynomial ring.

        Cofactor expansion up to 4x4; fraction-free (Bareiss) elimination
        beyond that, where every division by the previous pivot is exact in
        the ring. A 0x0 matrix has determinant 1.
        """
        if self.size == 0:
            return LaurentPoly.one(self.nvars)
        if self.size <= 4:
            return _det_cofactor(self.rows, self.nvars)
        return _det_bareiss(self.rows, self.nvars)

    def to_obj(self) -> list:
        return [[p.to_obj() for p in row] for row in self.rows]

    @classmethod
    def from_obj(cls, nvars: int, obj: list) -> "LaurentMatrix":
        rows = [[LaurentPoly.from_obj(nvars, cell) for cell in row] for row in obj]
        return cls(rows, nvars=nvars) if rows else cls([], nvars=nvars)


def matrix_adjoint(a: LaurentMatrix) -> LaurentMatrix:
    return a.adjoint()


def matrix_determinant(a: LaurentMatrix) -> LaurentPoly:
    return a.determinant()


def _det_cofactor(rows, nvars: int) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = LaurentPoly.zero(nvars)
    for j in range(n):
        if rows[0][j].is_zero:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * _det_cofactor(minor, nvars)
        total = total + term if j % 2 == 0 else total - term
    return total


def _lex_leading(p: LaurentPoly) -> tuple:
    return max(p.terms)


def divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient a/b assuming the division is exact in C[z^{±1}].

    Leading-term elimination under the lexicographic order; since lex is a
    group order on Z^l, leading terms are multiplicative and the quotient's
    terms are produced one by one. Intended for Bareiss pivot divisions.
    """
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero:
        return LaurentPoly.zero(a.nvars)
    a._check_same_vars(b)
    lead_b = _lex_leading(b)
    cb = b.terms[lead_b]
    certified = a.integer_certified and b.integer_certified
    rem = dict(a.terms)
    scale = max(abs(c) for c in rem.values())
    quot: dict[tuple, complex] = {}
    budget = 16 * (len(a.terms) + len(b.terms) + 4) ** 2
    for _ in range(budget):
        if not rem:
            return LaurentPoly(a.nvars, quot, certified)
        lead_r = max(rem)
        qe = tuple(x - y for x, y in zip(lead_r, lead_b))
        qc = rem[lead_r] / cb
        quot[qe] = quot.get(qe, 0j) + qc
        for eb, vb in b.terms.items():
            e = tuple(x + y for x, y in zip(qe, eb))
            c = rem.get(e, 0j) - qc * vb
            if c == 0 or (not certified and abs(c) < 1e-13 * scale):
                rem.pop(e, None)
            else:
                rem[e] = c
    raise ArithmeticError("division did not terminate: not an exact quotient")


def _det_bareiss(rows, nvars: int) -> LaurentPoly:
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = LaurentPoly.one(nvars)
    for k in range(n - 1):
        if m[k][k].is_zero:
            for r in range(k + 1, n):
                if not m[r][k].is_zero:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero(nvars)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = divide_exact(num, prev)
            m[i][k] = LaurentPoly.zero(nvars)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det
