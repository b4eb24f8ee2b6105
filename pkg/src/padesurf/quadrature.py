"""Quadrature rules on [-1, 1] at working precision.

Two families cover every integral in the package:

* ``chebyshev``  -- Gauss-Chebyshev, weight (1-t^2)^(-1/2).  Closed-form
  nodes/weights; absorbs the inverse-square-root endpoint singularities of
  1/w on the contour intervals and in the gaps exactly.
* ``legendre``   -- Gauss-Legendre, weight 1, for analytic integrands on
  cut-free segments.  Nodes by Newton iteration on P_n at the current
  precision; the exactness invariant is the self-check.

Rules are cached per (kind, order, mp.prec) so that escalated-precision
evaluations regenerate nodes instead of reusing stale ones.
"""
from __future__ import annotations

from dataclasses import dataclass

from mpmath import cos, mp, mpf, pi

_CACHE: dict = {}


@dataclass(frozen=True)
class QuadratureRule:
    kind: str                # "chebyshev" | "legendre"
    order: int
    nodes: tuple
    weights: tuple

    def integrate(self, f):
        """Sum f over the rule (weight function implied by kind)."""
        return mp.fsum(w * f(t) for t, w in zip(self.nodes, self.weights))


def make_chebyshev_rule(order: int) -> QuadratureRule:
    """Gauss-Chebyshev rule: nodes cos((2i-1)pi/2n), weights pi/n.

    Integrates t^k (1-t^2)^(-1/2) exactly for k <= 2*order-1.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    key = ("chebyshev", order, mp.prec)
    rule = _CACHE.get(key)
    if rule is None:
        n = order
        w = pi / n
        nodes = tuple(cos(mpf(2 * i - 1) * pi / (2 * n)) for i in range(1, n + 1))
        rule = QuadratureRule("chebyshev", n, nodes, tuple([w] * n))
        _CACHE[key] = rule
    return rule


def _legendre_eval(n: int, x):
    """(P_n(x), P_n'(x)) by the three-term recurrence."""
    p0, p1 = mpf(1), x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    # derivative from P_n, P_{n-1}
    dp = n * (x * p1 - p0) / (x * x - 1)
    return p1, dp


def make_legendre_rule(order: int) -> QuadratureRule:
    """Gauss-Legendre rule by Newton refinement of Chebyshev estimates."""
    if order < 1:
        raise ValueError("order must be >= 1")
    key = ("legendre", order, mp.prec)
    rule = _CACHE.get(key)
    if rule is not None:
        return rule
    n = order
    nodes, weights = [], []
    tol = mpf(2) ** (-mp.prec + 8)
    half = (n + 1) // 2
    for i in range(1, half + 1):
        x = cos(pi * (i - mpf(1) / 4) / (n + mpf(1) / 2))
        for _ in range(100):
            p, dp = _legendre_eval(n, x)
            dx = p / dp
            x = x - dx
            if abs(dx) < tol:
                break
        p, dp = _legendre_eval(n, x)
        w = 2 / ((1 - x * x) * dp * dp)
        nodes.append(x)
        weights.append(w)
    # mirror to the negative half (n odd keeps the x=0 node once)
    full_nodes = [-x for x in nodes]
    full_weights = list(weights)
    if n % 2 == 1:
        full_nodes = full_nodes[:-1]
        full_weights = full_weights[:-1]
    full_nodes += list(reversed(nodes))
    full_weights += list(reversed(weights))
    rule = QuadratureRule("legendre", n, tuple(full_nodes), tuple(full_weights))
    _CACHE[key] = rule
    return rule


def make_rule(kind: str, order: int) -> QuadratureRule:
    if kind == "chebyshev":
        return make_chebyshev_rule(order)
    if kind == "legendre":
        return make_legendre_rule(order)
    raise ValueError(f"unknown rule kind {kind!r}")


def chebyshev_moment(k: int):
    """Closed form of int_-1^1 t^k (1-t^2)^(-1/2) dt."""
    if k % 2 == 1:
        return mpf(0)
    m = k // 2
    val = pi
    for j in range(1, m + 1):
        val *= mpf(2 * j - 1) / (2 * j)
    return val


def legendre_moment(k: int):
    """Closed form of int_-1^1 t^k dt."""
    return mpf(0) if k % 2 == 1 else mpf(2) / (k + 1)


def exactness_defect(rule: QuadratureRule) -> mpf:
    """Max |rule - closed form| over monomials up to degree 2*order-1."""
    moment = chebyshev_moment if rule.kind == "chebyshev" else legendre_moment
    worst = mpf(0)
    for k in range(2 * rule.order):
        got = mp.fsum(w * t ** k for t, w in zip(rule.nodes, rule.weights))
        worst = max(worst, abs(got - moment(k)))
    return worst
