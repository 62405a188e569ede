"""Exact Laurent polynomials in the matrix-size symbol N.

Coefficients are rationals.  A second formal symbol ``r`` (standing for a
square root of the Dyson-type parameter alpha, so ``r**2 == alpha``) is
carried alongside N because the manifestly duality-invariant expansion
weights contain half-integer powers of alpha.  Series that never touch the
invariant normalization simply keep every r-exponent at zero.

Terms are stored as ``{(n_exp, r_exp): Fraction}`` with integer (possibly
negative) exponents and no zero coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple

Key = Tuple[int, int]


class NPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Key, Fraction] | None = None):
        self.terms: Dict[Key, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    self.terms[key] = coeff

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "NPoly":
        return NPoly()

    @staticmethod
    def const(value) -> "NPoly":
        return NPoly({(0, 0): Fraction(value)})

    @staticmethod
    def N(exp: int = 1, coeff=1) -> "NPoly":
        return NPoly({(exp, 0): Fraction(coeff)})

    @staticmethod
    def root(exp: int = 1, coeff=1) -> "NPoly":
        """The formal square root symbol r (r**2 = alpha)."""
        return NPoly({(0, exp): Fraction(coeff)})

    @staticmethod
    def monomial(n_exp: int, r_exp: int, coeff) -> "NPoly":
        return NPoly({(n_exp, r_exp): Fraction(coeff)})

    # -- ring operations ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, NPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == NPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "NPoly":
        if isinstance(other, (int, Fraction)):
            other = NPoly.const(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key, Fraction(0)) + coeff
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        result = NPoly()
        result.terms = out
        return result

    __radd__ = __add__

    def __neg__(self) -> "NPoly":
        result = NPoly()
        result.terms = {key: -coeff for key, coeff in self.terms.items()}
        return result

    def __sub__(self, other) -> "NPoly":
        if isinstance(other, (int, Fraction)):
            other = NPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "NPoly":
        return (-self) + other

    def __mul__(self, other) -> "NPoly":
        if isinstance(other, (int, Fraction)):
            other = NPoly.const(other)
        if not isinstance(other, NPoly):
            return NotImplemented
        out: Dict[Key, Fraction] = {}
        for (n1, r1), c1 in self.terms.items():
            for (n2, r2), c2 in other.terms.items():
                key = (n1 + n2, r1 + r2)
                acc = out.get(key, Fraction(0)) + c1 * c2
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        result = NPoly()
        result.terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "NPoly":
        if k < 0:
            if len(self.terms) == 1:
                ((n, r), c), = self.terms.items()
                return NPoly({(n * k, r * k): Fraction(1) / c ** (-k)})
            raise ValueError("negative power of a non-monomial")
        result = NPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- substitutions -------------------------------------------------------

    def eval_N(self, value) -> Fraction:
        """Evaluate at a rational N; requires every r-exponent to vanish."""
        value = Fraction(value)
        total = Fraction(0)
        for (n, r), coeff in self.terms.items():
            if r:
                raise ValueError("cannot evaluate: residual root symbol present")
            total += coeff * value ** n
        return total

    def scale_N(self, factor) -> "NPoly":
        """Substitute N -> factor*N for a rational factor."""
        factor = Fraction(factor)
        return NPoly({key: coeff * factor ** key[0] for key, coeff in self.terms.items()})

    def dual_transform(self) -> "NPoly":
        """Substitute r -> 1/r and N -> -r**2 N (the alpha-duality map)."""
        out: Dict[Key, Fraction] = {}
        for (n, r), coeff in self.terms.items():
            key = (n, 2 * n - r)
            acc = out.get(key, Fraction(0)) + (coeff if n % 2 == 0 else -coeff)
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        result = NPoly()
        result.terms = out
        return result

    def reduce_root(self, alpha) -> "NPoly":
        """Substitute r**2 -> alpha, leaving r-exponents in {0, 1}."""
        alpha = Fraction(alpha)
        out: Dict[Key, Fraction] = {}
        for (n, r), coeff in self.terms.items():
            q, rem = divmod(r, 2)
            key = (n, rem)
            acc = out.get(key, Fraction(0)) + coeff * alpha ** q
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        result = NPoly()
        result.terms = out
        return result

    # -- inspection ----------------------------------------------------------

    def n_exponents(self) -> Iterable[int]:
        return sorted({n for (n, _) in self.terms})

    def is_rational(self) -> bool:
        return all(key == (0, 0) for key in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError("not a constant")
        return self.terms[(0, 0)]

    def to_json(self) -> Dict[str, str]:
        """Keys are "n" for pure N-terms and "n;r" when a root power remains."""
        out = {}
        for (n, r) in sorted(self.terms):
            key = str(n) if r == 0 else "%d;%d" % (n, r)
            out[key] = str(self.terms[(n, r)])
        return out

    @staticmethod
    def from_json(data: Dict[str, str]) -> "NPoly":
        terms = {}
        for key, value in data.items():
            if ";" in key:
                n_str, r_str = key.split(";")
                terms[(int(n_str), int(r_str))] = Fraction(value)
            else:
                terms[(int(key), 0)] = Fraction(value)
        return NPoly(terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (n, r) in sorted(self.terms, reverse=True):
            coeff = self.terms[(n, r)]
            piece = str(coeff)
            if n:
                piece += "*N^%d" % n if n != 1 else "*N"
            if r:
                piece += "*r^%d" % r if r != 1 else "*r"
            parts.append(piece)
        return " + ".join(parts).replace("+ -", "- ")
