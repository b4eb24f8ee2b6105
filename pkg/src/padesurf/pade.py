"""Diagonal Pade approximants from power-series moments.

The order-n pair (P, Q) is the minimal-degree solution of

    Q(z) f(z) - P(z) = O(z^(-n-1)),   deg P, deg Q <= n,  Q monic,

computed from the moment system sum_j q_j f_(j+k+1) = 0, k = 0..n-1.  The
system is solved by rank-revealing full-pivot elimination; on rank
deficiency the kernel is reduced to its minimal-degree element, which is
the unique reduced denominator.  Hankel conditioning grows exponentially
in n, so the solve runs at max(context bits, 8 n) mantissa bits.
"""
from __future__ import annotations

from dataclasses import dataclass

from mpmath import log, mp, mpc, mpf, pi, workprec

from .contour import IntervalContour, Weight, f_rho_eval, integrate_weighted
from .errors import InsufficientCoefficients, PrecisionExhausted
from .linalg import nullspace
from .poly import Polynomial, poly_roots
from .precision import GUARD_BITS, PrecisionContext, as_context

PRECISION_FACTOR = 8          # solve bits per unit order
ESCALATION_CAP = 4            # how many doublings before PrecisionExhausted


@dataclass(frozen=True)
class PowerSeries:
    """Expansion at infinity: f(z) = sum_k coefficients[k] z^(-k)."""

    coefficients: tuple

    @property
    def length(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int):
        return self.coefficients[k]

    @staticmethod
    def from_iterable(vals) -> "PowerSeries":
        return PowerSeries(tuple(mpc(v) for v in vals))

    @property
    def norm(self) -> mpf:
        return max(abs(c) for c in self.coefficients)


@dataclass(frozen=True)
class PadePair:
    n: int
    P: Polynomial
    Q: Polynomial
    diagnostics: dict

    @property
    def degenerate(self) -> bool:
        return self.Q.degree < self.n


def _minimal_null_vector(basis, zero_rtol):
    """Element of span(basis) whose highest nonzero index is minimal.

    Row elimination on reversed coordinates: the kernel of the moment map
    is { L(z) q_min(z) : deg L <= dim-1 }, so echelonizing from the top
    coefficient down isolates q_min as the last pivot row.
    """
    rows = [list(reversed(v)) for v in basis]
    ncols = len(rows[0])
    nrows = len(rows)
    scale = max(max(abs(x) for x in r) for r in rows)
    r = 0
    last = None
    for c in range(ncols):
        p = max(range(r, nrows), key=lambda i: abs(rows[i][c]), default=None)
        if p is None or abs(rows[p][c]) <= zero_rtol * scale:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c] * inv
            if f == 0:
                continue
            for cc in range(c, ncols):
                rows[i][cc] -= f * rows[r][cc]
        last = r
        r += 1
        if r == nrows:
            break
    vec = list(reversed(rows[last]))
    return vec


def _contact_coefficients(series: PowerSeries, q_coeffs):
    """Coefficients of z^(-k-1) in Q f, for k = 0 .. available-1."""
    degq = len(q_coeffs) - 1
    avail = series.length - 1 - degq
    out = []
    for k in range(avail):
        out.append(mp.fsum(q_coeffs[j] * series[j + k + 1]
                           for j in range(degq + 1)))
    return out


def pade_solve(series: PowerSeries, n: int, ctx=None) -> PadePair:
    """Minimal diagonal Pade pair of order n from the series moments."""
    ctx = as_context(ctx)
    if n < 0:
        raise ValueError("order must be >= 0")
    if series.length < 2 * n + 1:
        raise InsufficientCoefficients(
            f"order {n} needs {2 * n + 1} coefficients, got {series.length}")
    base_bits = max(ctx.bits, PRECISION_FACTOR * max(n, 1))
    fnorm = series.norm
    tol_rel = mpf(2) ** (-ctx.bits // 4)

    bits = base_bits
    for _ in range(ESCALATION_CAP):
        with workprec(bits + GUARD_BITS):
            if n == 0:
                q = [mpc(1)]
                cond = mpf(1)
                rank = 0
            else:
                a = [[series[j + k + 1] for j in range(n + 1)] for k in range(n)]
                rank_rtol = mpf(2) ** (-bits // 2)
                basis, rank = nullspace(a, rank_rtol=rank_rtol)
                if not basis:
                    bits *= 2
                    continue
                q = _minimal_null_vector(basis, rank_rtol)
            qpoly = Polynomial.from_coeffs(q).monic()
            q = list(qpoly.coefficients)
            degq = qpoly.degree
            p = [mp.fsum(q[j] * series[j - m] for j in range(m, degq + 1))
                 for m in range(degq + 1)]
            ppoly = Polynomial.from_coeffs(p)
            contact = _contact_coefficients(series, q)
            qnorm = max(abs(c) for c in q)
            thresh = tol_rel * fnorm * qnorm
            bad = [k for k in range(min(n, len(contact))) if abs(contact[k]) > thresh]
            if bad:
                bits *= 2
                continue
            achieved = n + 1
            for k in range(n, len(contact)):
                if abs(contact[k]) > thresh:
                    achieved = k + 1
                    break
            else:
                achieved = len(contact) + 1
            diag = {
                "solve_bits": bits,
                "rank": rank,
                "contact_order": achieved,
                "contact_exhausted": achieved == len(contact) + 1,
                "residual": max((abs(contact[k]) for k in range(min(n, len(contact)))),
                                default=mpf(0)),
                "condition": _hankel_condition_estimate(series, n, bits),
            }
            return PadePair(n, ppoly, qpoly, diag)
    raise PrecisionExhausted(
        f"moment system residual above tolerance after escalation to {bits} bits")


def _hankel_condition_estimate(series: PowerSeries, n: int, bits: int):
    """Pivot-ratio estimate from one elimination pass of the square system."""
    if n == 0:
        return mpf(1)
    with workprec(bits + GUARD_BITS):
        a = [[series[j + k + 1] for j in range(n)] for k in range(n)]
        piv_min = piv_max = None
        rows = [list(r) for r in a]
        for col in range(n):
            p = max(range(col, n), key=lambda r: abs(rows[r][col]))
            pivot = rows[p][col]
            if pivot == 0:
                return mpf("inf")
            rows[col], rows[p] = rows[p], rows[col]
            ap = abs(pivot)
            piv_min = ap if piv_min is None else min(piv_min, ap)
            piv_max = ap if piv_max is None else max(piv_max, ap)
            inv = 1 / pivot
            for r in range(col + 1, n):
                f = rows[r][col] * inv
                for c in range(col + 1, n):
                    rows[r][c] -= f * rows[col][c]
        return piv_max / piv_min


def linearized_error_eval(pair: PadePair, f_eval, z, ctx=None, rtol=None):
    """R_n(z) = Q_n(z) f(z) - P_n(z) with automatic precision escalation.

    The subtraction cancels roughly 2 n log2|Phi(z)| bits, so f_eval must
    accept (z, bits) and honour the requested precision; the result is
    accepted once two escalation levels agree to rtol.
    """
    ctx = as_context(ctx)
    z = mpc(z)
    if rtol is None:
        rtol = mpf(2) ** (-ctx.bits // 4)
    n = pair.n
    extra = 64 + int(2 * (n + 1) * max(mpf(1), log(2 + 2 * abs(z), 2)))
    prev = None
    for _ in range(6):
        bits = ctx.bits + extra
        with workprec(bits + GUARD_BITS):
            fz = mpc(f_eval(z, bits))
            val = pair.Q(z) * fz - pair.P(z)
        if prev is not None and abs(val - prev) <= rtol * max(abs(val), mpf(2) ** (-ctx.bits)):
            return val
        prev = val
        extra *= 2
    raise PrecisionExhausted(
        f"linearized error at {z} did not stabilize (last extra={extra} bits)")


def f_rho_evaluator(contour: IntervalContour, weight: Weight, ctx=None):
    """Point evaluator of the Cauchy transform with a (z, bits) signature."""
    ctx = as_context(ctx)

    def evaluate(z, bits=None):
        local = ctx if bits is None else PrecisionContext(max(int(bits), 128))
        return f_rho_eval(contour, weight, z, local)

    return evaluate


def orthogonality_residuals(pair: PadePair, contour: IntervalContour,
                            weight: Weight, k_max: int, ctx=None):
    """r_k = (1/2 pi i) int Q(t) t^k rho(t)/w^+(t) dt for k = 0..k_max.

    Computed by the contour's singular quadrature, independently of the
    moment system that produced Q; each residual should vanish to
    quadrature accuracy for k < deg Q.
    """
    ctx = as_context(ctx)
    if k_max < 0:
        return []
    if k_max > pair.n - 1:
        raise ValueError("k_max must be <= n-1")
    q = pair.Q
    wdeg = weight.numerator.degree + (weight.denominator.degree
                                      if weight.denominator else 0)
    order = max(64, q.degree + k_max + wdeg + 8)
    out = []
    with ctx.work(64):
        pre = 1 / (2 * pi * mpc(0, 1))
        for k in range(k_max + 1):
            val = mp.fsum(
                integrate_weighted(
                    contour, j, lambda t: q(t) * t ** k * weight.eval(t), order)
                for j in range(len(contour.intervals)))
            check = mp.fsum(
                integrate_weighted(
                    contour, j, lambda t: q(t) * t ** k * weight.eval(t), 2 * order)
                for j in range(len(contour.intervals)))
            if abs(val - check) > ctx.tolerance * max(mpf(1), abs(check)):
                order *= 2
                val = check
            out.append(pre * val)
    return out


def denominator_zeros(pair: PadePair, ctx=None):
    """Zeros of Q_n with multiplicity (Aberth iteration)."""
    ctx = as_context(ctx)
    if pair.Q.degree < 1:
        raise ValueError("deg Q must be >= 1")
    bits = max(ctx.bits, PRECISION_FACTOR * pair.n)
    with workprec(bits + GUARD_BITS):
        return poly_roots(pair.Q)
