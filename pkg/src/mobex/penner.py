"""Penner-type closed forms and the substitution t_j -> -z**(j/2-1).

K(z, N, a) is the asymptotic expansion of the Vandermonde**(2a) one-matrix
integral with Penner couplings, valid for integer a >= 1; J(z, N, g) covers
the reciprocal powers 2/g.  Both are implemented from their explicit
Bernoulli four-sum forms; the graph sum plus the dualities serve as the
oracle for them.  Constant (z-independent) terms are dropped throughout,
and the closed forms contain no negative z powers.

The generalized family I(z, N, r) = K(z/(rN), N, r) for integer r and
J(z*g/N, N, g) for r = 1/g satisfies the extended duality
I(z, N, r) = I(z, -rN, 1/r).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, Tuple

from .catalog import HALF_EDGE_BUDGET, enumerate_graphs
from .errors import StructuralError, UsageError
from .npoly import NPoly
from .series import CouplingSeries


# -- Bernoulli numbers -----------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """b_n for t/(exp(t)-1) = sum b_n t**n / n!  (so b_1 = -1/2)."""
    if n < 0:
        raise UsageError("Bernoulli index must be >= 0")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    total = Fraction(0)
    for k in range(n):
        total += comb(n + 1, k) * bernoulli(k)
    return -total / (n + 1)


# -- z-series over Q[N] ----------------------------------------------------------

@dataclass
class ZSeries:
    order: int
    coeffs: Dict[int, NPoly] = field(default_factory=dict)

    def add_term(self, z_exp: int, value: NPoly) -> None:
        if z_exp < 1 or z_exp > self.order:
            return
        acc = self.coeffs.get(z_exp, NPoly.zero()) + value
        if acc:
            self.coeffs[z_exp] = acc
        else:
            self.coeffs.pop(z_exp, None)

    def coefficient(self, z_exp: int) -> NPoly:
        return self.coeffs.get(z_exp, NPoly.zero())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other: "ZSeries") -> "ZSeries":
        if self.order != other.order:
            raise UsageError("mixed z-series truncation orders")
        out = ZSeries(self.order, dict(self.coeffs))
        for m, val in other.coeffs.items():
            out.add_term(m, val)
        return out

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        return self + other.scale(-1)

    def scale(self, factor) -> "ZSeries":
        out = ZSeries(self.order)
        for m, val in self.coeffs.items():
            out.add_term(m, val * Fraction(factor))
        return out

    def scale_z(self, factor) -> "ZSeries":
        """z -> factor*z."""
        factor = Fraction(factor)
        out = ZSeries(self.order)
        for m, val in self.coeffs.items():
            out.add_term(m, val * factor ** m)
        return out

    def scale_N(self, factor) -> "ZSeries":
        """N -> factor*N."""
        out = ZSeries(self.order)
        for m, val in self.coeffs.items():
            out.add_term(m, val.scale_N(factor))
        return out

    def shift_N_per_z(self, factor) -> "ZSeries":
        """z -> factor * z / N (each z**m picks up factor**m N**-m)."""
        factor = Fraction(factor)
        out = ZSeries(self.order)
        for m, val in self.coeffs.items():
            out.add_term(m, val * NPoly.monomial(-m, 0, factor ** m))
        return out

    def truncate(self, order: int) -> "ZSeries":
        out = ZSeries(order)
        for m, val in self.coeffs.items():
            out.add_term(m, val)
        return out

    def to_json(self) -> Dict[str, Dict[str, str]]:
        return {str(m): self.coeffs[m].to_json() for m in sorted(self.coeffs)}


# -- closed forms ----------------------------------------------------------------

def K_series(order: int, alpha: int) -> ZSeries:
    """Four-sum Bernoulli form of the Vandermonde**(2*alpha) Penner expansion."""
    if not isinstance(alpha, int) or alpha < 1:
        raise UsageError("K series needs a positive integer alpha")
    if order < 1:
        raise UsageError("order must be >= 1")
    a = Fraction(alpha)
    out = ZSeries(order)
    for m in range(1, order + 1):
        if m % 2:
            g = (m + 1) // 2
            out.add_term(m, NPoly.N(1, bernoulli(2 * g) / Fraction(2 * g * (2 * g - 1))))
        out.add_term(m, NPoly.N(m, Fraction((-1) ** m, 4 * m) * a ** m))
        for q in range(m // 2 + 1):
            coeff = (Fraction((-1) ** m * factorial(m - 1)) * bernoulli(2 * q)
                     / (factorial(2 * q) * factorial(m + 1 - 2 * q)))
            out.add_term(m, NPoly.N(m + 1 - 2 * q,
                                    Fraction(1, 2) * coeff * a ** m * (a ** (1 - 2 * q) - 1)))
            for s in range((m + 1) // 2 - q + 1):
                coeff4 = (Fraction((-1) ** m * factorial(m - 1)) * bernoulli(2 * q) * bernoulli(2 * s)
                          / (factorial(2 * q) * factorial(2 * s) * factorial(m + 2 - 2 * q - 2 * s)))
                out.add_term(m, NPoly.N(m + 2 - 2 * q - 2 * s,
                                        -coeff4 * a ** (m + 1 - 2 * q)))
    return out


def J_series(order: int, gamma: int) -> ZSeries:
    """Closed form for Vandermonde power 2/gamma, positive integer gamma."""
    if not isinstance(gamma, int) or gamma < 1:
        raise UsageError("J series needs a positive integer gamma")
    if order < 1:
        raise UsageError("order must be >= 1")
    g = Fraction(gamma)
    out = ZSeries(order)
    for m in range(1, order + 1):
        zfac = g ** (-m)
        if m % 2:
            q = (m + 1) // 2
            out.add_term(m, NPoly.N(1, bernoulli(2 * q) / Fraction(2 * q * (2 * q - 1)) / g * zfac))
        out.add_term(m, NPoly.N(m, Fraction((-1) ** m, 4 * m) * zfac))
        for q in range(m // 2 + 1):
            coeff = (Fraction((-1) ** m * factorial(m - 1)) * bernoulli(2 * q)
                     / (factorial(2 * q) * factorial(m + 1 - 2 * q)))
            out.add_term(m, NPoly.N(m + 1 - 2 * q,
                                    -Fraction(1, 2) * coeff * (1 - g ** (2 * q - 1)) * zfac))
            for s in range((m + 1) // 2 - q + 1):
                coeff4 = (Fraction((-1) ** m * factorial(m - 1)) * bernoulli(2 * q) * bernoulli(2 * s)
                          / (factorial(2 * q) * factorial(2 * s) * factorial(m + 2 - 2 * q - 2 * s)))
                out.add_term(m, NPoly.N(m + 2 - 2 * q - 2 * s,
                                        -coeff4 * g ** (2 * s - 1) * zfac))
    return out


def K1_series(order: int) -> ZSeries:
    """Genus form of the alpha=1 (hermitian) Penner expansion."""
    out = ZSeries(order)
    for m in range(1, order + 1):
        for g in range((m + 1) // 2 + 1):
            n = m + 2 - 2 * g
            if n <= 0 or 2 - 2 * g - n >= 0:
                continue
            coeff = (Fraction(factorial(2 * g + n - 3) * (2 * g - 1))
                     / (factorial(2 * g) * factorial(n))) * bernoulli(2 * g)
            out.add_term(m, NPoly.N(n, coeff * (-1) ** m))
    return out


def nonorientable_remainder(order: int) -> ZSeries:
    """sum over q >= 0, n > 0, 1-2q-n < 0 of the odd-chi Bernoulli terms.

    This is the series R with K(z,N,2) = K(z,2N,1)/2 - R/2 and
    J(2z,2N,2) = J(z,2N,1)/2 + R/2.
    """
    out = ZSeries(order)
    for m in range(1, order + 1):
        for q in range(m // 2 + 1):
            n = m + 1 - 2 * q
            if n <= 0 or 1 - 2 * q - n >= 0:
                continue
            coeff = (Fraction(factorial(2 * q + n - 2)) * (Fraction(2) ** (2 * q - 1) - 1)
                     / (factorial(2 * q) * factorial(n))) * bernoulli(2 * q)
            out.add_term(m, NPoly.N(n, coeff * Fraction(2) ** n * (-1) ** m))
    return out


def K2_series(order: int) -> ZSeries:
    """alpha=2 series via the genus decomposition (hermitian half minus R/2)."""
    half_k1 = K1_series(order).scale_N(2).scale(Fraction(1, 2))
    return half_k1 - nonorientable_remainder(order).scale(Fraction(1, 2))


def I_series(order: int, r) -> ZSeries:
    """K(z/(rN), N, r) for integer r; J(z*g/N, N, g) for r = 1/g."""
    r = Fraction(r)
    if r >= 1:
        if r.denominator != 1:
            raise UsageError("r must be a positive integer or its reciprocal")
        alpha = int(r)
        return K_series(order, alpha).shift_N_per_z(Fraction(1, alpha))
    if r.numerator != 1:
        raise UsageError("r must be a positive integer or its reciprocal")
    gamma = int(1 / r)
    return J_series(order, gamma).shift_N_per_z(gamma)


def extended_duality_gap(order: int, r) -> ZSeries:
    """I(z, N, r) - I(z, -rN, 1/r); identically zero when the duality holds."""
    r = Fraction(r)
    lhs = I_series(order, r)
    rhs = I_series(order, 1 / r).scale_N(-r)
    return lhs - rhs


# -- Penner substitution on the graph sum ----------------------------------------

def penner_substitute(series: CouplingSeries) -> ZSeries:
    """t_j -> -z**(j/2-1) on a coupling series with t_1 = t_2 = 0.

    A monomial with v vertices and e edges lands on (-1)**v z**(e-v); the
    output is truncated at order D//6 since an order-m coefficient needs
    every trivalent graph with e = 3m, i.e. weighted degree 6m.
    """
    order = series.degree // 6
    out = ZSeries(order)
    for key, val in series.terms.items():
        if not key:
            continue
        if any(j < 3 for j in key):
            raise UsageError("Penner substitution requires t_1 = t_2 = 0")
        doubled = sum(key) - 2 * len(key)
        if doubled % 2:
            raise StructuralError("non-integer z exponent; monomial %r" % (key,))
        z_exp = doubled // 2
        out.add_term(z_exp, val * (-1) ** len(key))
    return out


def gse_penner_zseries(degree: int,
                       half_edge_budget: int = HALF_EDGE_BUDGET) -> ZSeries:
    """The beta=4 graph sum under the Penner substitution."""
    from .series import expand_logZ
    return penner_substitute(expand_logZ("gse-penner", degree,
                                         half_edge_budget=half_edge_budget))


def goe_penner_zseries(degree: int,
                       half_edge_budget: int = HALF_EDGE_BUDGET) -> ZSeries:
    """The beta=1 graph sum normalized onto J(z, N, 2).

    Rescaling X -> sqrt(2) X turns the quarter-strength Gaussian into the
    Penner integral's exp(-tr(X**2)/2), at the price of t_j ->
    -2**(1-j/2) z**(j/2-1); per monomial that is an extra 2**(v-e), so the
    graph side reads sum (-1)**v 2**(v-e) N**f z**(e-v) / |Aut|.  The same
    map with gamma = 2 is what cures the 2z asymmetry in the genus
    decomposition identity.
    """
    from .series import expand_logZ, rescale_couplings
    base = expand_logZ("master", degree, beta=1, include_t1=False,
                       include_t2=False, half_edge_budget=half_edge_budget)
    scaled = rescale_couplings(
        base, lambda key: NPoly.const(Fraction(2) ** (len(key) - sum(key) // 2)))
    return penner_substitute(scaled)


# -- real moduli Euler characteristics --------------------------------------------

def real_moduli_euler(q: int, n: int) -> Fraction:
    """Orbifold Euler characteristic of the real (q, n) moduli, chi = 1-2q."""
    if q < 0 or n <= 0:
        raise UsageError("need q >= 0 and n > 0")
    if 1 - 2 * q - n >= 0:
        raise UsageError("hyperbolicity requires 1 - 2q - n < 0")
    return (Fraction(1, 2) * factorial(2 * q + n - 2) * (Fraction(2) ** (2 * q - 1) - 1)
            * bernoulli(2 * q) / (factorial(2 * q) * factorial(n)))


def _penner_profiles(excess: int) -> Iterator[Tuple[int, ...]]:
    """Valence multisets with all j >= 3 and e - v = excess."""
    for v in range(1, 2 * excess + 1):
        total = 2 * (v + excess)

        def parts(budget: int, slots: int, mx: int) -> Iterator[Tuple[int, ...]]:
            if slots == 0:
                if budget == 0:
                    yield ()
                return
            for j in range(min(budget - 3 * (slots - 1), mx), 2, -1):
                for rest in parts(budget - j, slots - 1, j):
                    yield (j,) + rest

        yield from parts(total, v, total)


def real_moduli_graph_sum(q: int, n: int,
                          half_edge_budget: int = HALF_EDGE_BUDGET) -> Fraction:
    """sum of (-1)**e / |Aut| over connected non-orientable Moebius graphs
    with f = n faces and chi = 1 - 2q, all valences >= 3."""
    if q < 0 or n <= 0 or 1 - 2 * q - n >= 0:
        raise UsageError("invalid (q, n)")
    excess = 2 * q + n - 1  # e - v = f - chi
    chi = 1 - 2 * q
    total = Fraction(0)
    for profile in _penner_profiles(excess):
        for entry in enumerate_graphs(list(profile), connected_only=True,
                                      half_edge_budget=half_edge_budget):
            topo = entry.topology
            if topo.natural == -1 and topo.f == n and topo.chi == chi:
                total += Fraction((-1) ** topo.e, entry.aut_moebius)
    return total
