"""Polynomials with multiprecision complex coefficients.

Coefficients are stored lowest degree first.  The root finder is an
Aberth-Ehrlich simultaneous iteration started from a perturbed circle,
which copes with the clustered root patterns of Pade denominators.
"""
from __future__ import annotations

from dataclasses import dataclass

from mpmath import exp, mp, mpc, mpf, pi

from .errors import NonConvergence


def _trim(coeffs):
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class Polynomial:
    coefficients: tuple

    @staticmethod
    def from_coeffs(coeffs) -> "Polynomial":
        c = _trim([mpc(x) if not isinstance(x, (mpf, mpc)) else x for x in coeffs])
        return Polynomial(tuple(c))

    @staticmethod
    def from_roots(roots, leading=1) -> "Polynomial":
        coeffs = [mpc(leading)]
        for r in roots:
            coeffs = [mpc(0)] + coeffs
            for i in range(len(coeffs) - 1):
                coeffs[i] -= r * coeffs[i + 1]
        return Polynomial.from_coeffs(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def __call__(self, z):
        acc = mpc(0)
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Polynomial":
        c = self.coefficients
        if len(c) == 1:
            return Polynomial((mpc(0),))
        return Polynomial(tuple(k * c[k] for k in range(1, len(c))))

    def monic(self) -> "Polynomial":
        lead = self.coefficients[-1]
        if lead == 0:
            raise ValueError("zero polynomial has no monic form")
        return Polynomial(tuple(c / lead for c in self.coefficients))

    def scale(self, s) -> "Polynomial":
        return Polynomial(tuple(c * s for c in self.coefficients))

    @property
    def norm(self) -> mpf:
        return max(abs(c) for c in self.coefficients)

    def __str__(self):
        return " + ".join(f"({c})z^{k}" for k, c in enumerate(self.coefficients))


def poly_roots(p: Polynomial, tol=None, max_iter=400):
    """All roots of p with multiplicity, by Aberth simultaneous iteration.

    Stops when |p(z_i)| <= tol * ||p|| * max(1,|z_i|)^deg for every root
    (backward-error criterion); raises NonConvergence past max_iter, which
    signals that the working precision is too low for the root cluster.
    """
    coeffs = _trim(list(p.coefficients))
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("degree must be >= 1")
    if tol is None:
        tol = mpf(2) ** (-mp.prec // 2)
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    pnorm = max(abs(c) for c in monic)
    # strip exact zero roots first: they cost Aberth the most
    zero_mult = 0
    while monic[0] == 0:
        zero_mult += 1
        monic = monic[1:]
    n_eff = len(monic) - 1
    roots = [mpc(0)] * zero_mult
    if n_eff == 0:
        return roots
    pol = Polynomial(tuple(monic))
    dpol = pol.derivative()
    # Cauchy bound, perturbed-circle start
    radius = 1 + max(abs(c) for c in monic[:-1])
    zs = [radius * exp(mpc(0, 2) * pi * (k + mpf("0.3573")) / n_eff)
          * (1 + mpf(k % 7) / 701)
          for k in range(n_eff)]
    for _ in range(max_iter):
        done = True
        offsets = []
        for i, z in enumerate(zs):
            pv = pol(z)
            scale = pnorm * max(mpf(1), abs(z)) ** n_eff
            if abs(pv) > tol * scale:
                done = False
            dv = dpol(z)
            if dv == 0:
                offsets.append(mpc(0))
                zs[i] = z * (1 + mpf(1) / 1048573) + mpf(1) / 1048573
                continue
            w = pv / dv
            s = mp.fsum((1 / (z - zj) for j, zj in enumerate(zs) if j != i),
                        absolute=False)
            denom = 1 - w * s
            offsets.append(w if denom == 0 else w / denom)
        if done:
            break
        zs = [z - o for z, o in zip(zs, offsets)]
    else:
        raise NonConvergence(
            f"Aberth iteration did not settle in {max_iter} steps at prec {mp.prec}")
    return roots + sorted(zs, key=lambda z: (mp.re(z), mp.im(z)))
