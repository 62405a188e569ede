"""Truncated formal power series in the couplings t_1, t_2, ... over Q[N].

A monomial is the sorted tuple of vertex valences it came from, so
t_3**2 * t_4 is (3, 3, 4); its weighted degree is the sum of entries
(deg t_n = n).  All series carry an explicit truncation degree and binary
operations refuse mixed truncations rather than silently re-truncating.

The graph-sum expansions of the free energy log Z come in several
normalizations; each is a per-class weight built from the surface data:

  master      mu(beta) * N**f                    (Gaussian -tr(X^2)/4,
                                                  vertices t_j/(2j) tr X^j)
  rescaled    mu(beta) * beta**(chi-f) * N**f    (Gaussian -beta tr(X^2)/4)
  hermitian   2 * N**f, beta = 2                 (Gaussian -tr(X^2)/2,
                                                  vertices t_j/j tr X^j)
  gse-penner  (-1)**chi * (2N)**f, beta = 4      (same exponent shape,
                                                  couplings j >= 3)
  invariant   2 (sqrt(a) N)**chi (3-a-1/a)**(1-sigma/2-chi/2)
                * (1/sqrt(a)-sqrt(a))**sigma     (Gaussian -N a tr(X^2)/2,
                                                  vertices N a t_j/j)

with mu the sprinkling invariant.  The invariant form is symbolic in the
root r = sqrt(alpha) and is the fixed point of the duality
alpha -> 1/alpha, N -> -alpha N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, Optional, Tuple

from .catalog import HALF_EDGE_BUDGET, enumerate_graphs
from .errors import UsageError
from .graphs import TopologyProfile
from .npoly import NPoly
from .sprinkle import mu_closed_form

Monomial = Tuple[int, ...]

TAGS = ("master", "rescaled", "hermitian", "gse-penner", "invariant")


@dataclass
class CouplingSeries:
    degree: int
    terms: Dict[Monomial, NPoly] = field(default_factory=dict)

    def copy(self) -> "CouplingSeries":
        return CouplingSeries(self.degree, dict(self.terms))

    def coefficient(self, monomial) -> NPoly:
        return self.terms.get(tuple(sorted(monomial)), NPoly.zero())

    def set_coefficient(self, monomial, value: NPoly) -> None:
        key = tuple(sorted(monomial))
        if sum(key) > self.degree:
            raise UsageError("monomial beyond truncation degree")
        if value:
            self.terms[key] = value
        else:
            self.terms.pop(key, None)

    def _require_same_degree(self, other: "CouplingSeries") -> None:
        if self.degree != other.degree:
            raise UsageError("mixed truncation degrees: %d vs %d"
                             % (self.degree, other.degree))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CouplingSeries):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __add__(self, other: "CouplingSeries") -> "CouplingSeries":
        self._require_same_degree(other)
        out = dict(self.terms)
        for key, val in other.terms.items():
            acc = out.get(key, NPoly.zero()) + val
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return CouplingSeries(self.degree, out)

    def __neg__(self) -> "CouplingSeries":
        return CouplingSeries(self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "CouplingSeries") -> "CouplingSeries":
        return self + (-other)

    def __mul__(self, other) -> "CouplingSeries":
        if isinstance(other, (int, Fraction, NPoly)):
            factor = other if isinstance(other, NPoly) else NPoly.const(other)
            out = {}
            for key, val in self.terms.items():
                prod = val * factor
                if prod:
                    out[key] = prod
            return CouplingSeries(self.degree, out)
        self._require_same_degree(other)
        out: Dict[Monomial, NPoly] = {}
        for k1, v1 in self.terms.items():
            w1 = sum(k1)
            for k2, v2 in other.terms.items():
                if w1 + sum(k2) > self.degree:
                    continue
                key = tuple(sorted(k1 + k2))
                acc = out.get(key, NPoly.zero()) + v1 * v2
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return CouplingSeries(self.degree, out)

    __rmul__ = __mul__

    def constant_term(self) -> NPoly:
        return self.terms.get((), NPoly.zero())

    def without_constant(self) -> "CouplingSeries":
        out = dict(self.terms)
        out.pop((), None)
        return CouplingSeries(self.degree, out)

    def exp(self) -> "CouplingSeries":
        """exp of a series with zero constant term."""
        if self.constant_term():
            raise UsageError("exp needs a zero constant term")
        one = CouplingSeries(self.degree, {(): NPoly.const(1)})
        result = one.copy()
        # Horner: 1 + x(1 + x/2 (1 + x/3 (...)))
        for k in range(self.degree, 0, -1):
            result = one + (self * result) * Fraction(1, k)
        return result

    def log(self) -> "CouplingSeries":
        """log of a series with constant term 1."""
        if self.constant_term() != NPoly.const(1):
            raise UsageError("log needs constant term 1")
        x = self.without_constant()
        result = CouplingSeries(self.degree, {})
        power = CouplingSeries(self.degree, {(): NPoly.const(1)})
        for k in range(1, self.degree + 1):
            power = power * x
            if not power.terms:
                break
            result = result + power * Fraction((-1) ** (k + 1), k)
        return result

    def map_coefficients(self, fn: Callable[[NPoly], NPoly]) -> "CouplingSeries":
        out = {}
        for key, val in self.terms.items():
            new = fn(val)
            if new:
                out[key] = new
        return CouplingSeries(self.degree, out)

    def evaluate_N(self, n_value) -> Dict[Monomial, Fraction]:
        return {key: val.eval_N(n_value) for key, val in self.terms.items()}

    def reduce_root(self, alpha) -> "CouplingSeries":
        return self.map_coefficients(lambda p: p.reduce_root(alpha))

    def to_json(self) -> list:
        out = []
        for key in sorted(self.terms):
            out.append({"monomial": list(key), "coeff": self.terms[key].to_json()})
        return out


def series_one(degree: int) -> CouplingSeries:
    return CouplingSeries(degree, {(): NPoly.const(1)})


# -- profile iteration ----------------------------------------------------------

def iter_monomials(degree: int, j_min: int = 1, j_max: Optional[int] = None,
                   allowed: Optional[Callable[[int], bool]] = None
                   ) -> Iterator[Monomial]:
    """Nonempty valence multisets of weighted degree <= degree (even totals)."""
    cap = degree if j_max is None else min(degree, j_max)

    def rec(budget: int, j: int) -> Iterator[Tuple[int, ...]]:
        if j < j_min:
            return
        yield ()
        for jj in range(j, j_min - 1, -1):
            if allowed is not None and not allowed(jj):
                continue
            if jj <= budget:
                for rest in rec(budget - jj, jj):
                    yield (jj,) + rest

    for combo in rec(degree, cap):
        if combo and sum(combo) % 2 == 0:
            yield tuple(sorted(combo))


# -- normalization weights --------------------------------------------------------

def _weight_master(topo: TopologyProfile, beta: int) -> NPoly:
    return NPoly.N(topo.f, mu_closed_form(topo, beta))


def _weight_rescaled(topo: TopologyProfile, beta: int) -> NPoly:
    coeff = Fraction(mu_closed_form(topo, beta)) * Fraction(beta) ** (topo.chi - topo.f)
    return NPoly.N(topo.f, coeff)


def _weight_hermitian(topo: TopologyProfile, beta: int) -> NPoly:
    if topo.natural != 1:
        return NPoly.zero()
    return NPoly.N(topo.f, 2)


def _weight_gse_penner(topo: TopologyProfile, beta: int) -> NPoly:
    return NPoly.N(topo.f, (-1 if topo.chi % 2 else 1) * 2 ** topo.f)


def _weight_invariant(topo: TopologyProfile, beta=None) -> NPoly:
    chi, sigma = topo.chi, topo.sigma
    expo = 1 - (sigma + chi) // 2
    base = NPoly.const(3) - NPoly.root(2) - NPoly.root(-2)
    out = NPoly.monomial(chi, chi, 2)  # 2 (sqrt(a) N)**chi
    out = out * base ** expo
    if sigma:
        out = out * (NPoly.root(-1) - NPoly.root(1)) ** sigma
    return out


_WEIGHTS = {
    "master": _weight_master,
    "rescaled": _weight_rescaled,
    "hermitian": _weight_hermitian,
    "gse-penner": _weight_gse_penner,
    "invariant": _weight_invariant,
}


def _validate_tag(tag: str, beta: Optional[int]) -> Optional[int]:
    if tag not in TAGS:
        raise UsageError("unknown normalization tag %r" % tag)
    if tag == "hermitian":
        if beta not in (None, 2):
            raise UsageError("hermitian normalization fixes beta = 2")
        return 2
    if tag == "gse-penner":
        if beta not in (None, 4):
            raise UsageError("gse-penner normalization fixes beta = 4")
        return 4
    if tag == "invariant":
        return None
    if beta not in (1, 2, 4):
        raise UsageError("tag %r needs beta in {1,2,4}" % tag)
    return beta


def expand_logZ(tag: str, degree: int, beta: Optional[int] = None,
                include_t1: bool = True, include_t2: bool = True,
                half_edge_budget: int = HALF_EDGE_BUDGET) -> CouplingSeries:
    """Connected Moebius-graph sum for log Z in the chosen normalization."""
    beta = _validate_tag(tag, beta)
    weight = _WEIGHTS[tag]
    if degree > half_edge_budget:
        raise UsageError("truncation degree %d exceeds half-edge budget %d"
                         % (degree, half_edge_budget))
    if tag == "gse-penner":
        include_t1 = include_t2 = False

    def allowed(j: int) -> bool:
        if j == 1 and not include_t1:
            return False
        if j == 2 and not include_t2:
            return False
        return True

    series = CouplingSeries(degree, {})
    for monomial in iter_monomials(degree, j_min=1, allowed=allowed):
        total = NPoly.zero()
        for entry in enumerate_graphs(list(monomial), connected_only=True,
                                      half_edge_budget=half_edge_budget):
            total = total + weight(entry.topology, beta) * Fraction(1, entry.aut_moebius)
        if total:
            series.terms[monomial] = total
    return series


def expand_Z(tag: str, degree: int, beta: Optional[int] = None,
             include_t1: bool = True, include_t2: bool = True,
             half_edge_budget: int = HALF_EDGE_BUDGET) -> CouplingSeries:
    """exp of the connected sum: the full (disconnected) graph expansion."""
    return expand_logZ(tag, degree, beta, include_t1, include_t2,
                       half_edge_budget).exp()


def apply_duality(series: CouplingSeries) -> CouplingSeries:
    """alpha -> 1/alpha together with N -> -alpha N, coefficientwise."""
    return series.map_coefficients(lambda p: p.dual_transform())


def rescale_couplings(series: CouplingSeries,
                      factor_of_monomial: Callable[[Monomial], NPoly]
                      ) -> CouplingSeries:
    """Substitute t_j -> c_j t_j, given the per-monomial product of the c_j.

    Taking the factor per monomial keeps everything rational even when the
    individual c_j carry half powers (e.g. beta**(1-j/2): the product over a
    monomial is beta**(v-e)).
    """
    out = CouplingSeries(series.degree, {})
    for key, val in series.terms.items():
        val = val * factor_of_monomial(key)
        if val:
            out.terms[key] = val
    return out
