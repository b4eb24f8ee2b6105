"""Unions of disjoint real intervals with the square-root weight w and an
analytic non-vanishing density on top.

The contour carries all branch bookkeeping for

    w(z)^2 = prod over endpoints e of (z - e),   z^(-g-1) w(z) -> 1 at inf,

realized as a product of per-interval factors sqrt(z-a)sqrt(z-b) (principal
branches) whose cuts cancel outside the interval.  Cauchy integrals against
1/w^+ are computed per interval with the Gauss-Chebyshev rule, which absorbs
the endpoint singularities exactly; evaluation points close to an interval
switch to a rectangle contour around it where the integrand is analytic.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import arg, exp, log, mp, mpc, mpf, pi, sqrt

from .errors import OnCut, QuadratureStall, WeightDomainError
from .poly import Polynomial, poly_roots
from .precision import PrecisionContext, as_context
from .quadrature import make_chebyshev_rule, make_legendre_rule


def _to_mpf(x) -> mpf:
    if isinstance(x, mpf):
        return x
    if isinstance(x, str):
        return mpf(x)
    if isinstance(x, float) or isinstance(x, int):
        return mpf(x)
    raise TypeError(f"cannot convert {x!r} to mpf")


# ---------------------------------------------------------------------------
# contour geometry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalContour:
    """Algebraic S-contour realized as strictly increasing disjoint intervals."""

    intervals: tuple

    @staticmethod
    def from_endpoints(pairs) -> "IntervalContour":
        with mp.workprec(512):
            ivals = tuple((_to_mpf(a), _to_mpf(b)) for a, b in pairs)
        prev = None
        for a, b in ivals:
            if not a < b:
                raise ValueError(f"interval [{a}, {b}] is empty or reversed")
            if prev is not None and not prev < a:
                raise ValueError("intervals must be strictly increasing and disjoint")
            prev = b
        return IntervalContour(ivals)

    @property
    def genus(self) -> int:
        return len(self.intervals) - 1

    @property
    def branch_points(self) -> tuple:
        """e_0 = a_1 < e_1 = b_1 < e_2 = a_2 < ... < e_{2g+1} = b_{g+1}."""
        pts = []
        for a, b in self.intervals:
            pts.extend((a, b))
        return tuple(pts)

    @property
    def gaps(self) -> tuple:
        """Open gaps (b_j, a_{j+1}) between consecutive intervals."""
        return tuple((self.intervals[j][1], self.intervals[j + 1][0])
                     for j in range(len(self.intervals) - 1))

    @property
    def diameter(self) -> mpf:
        return self.intervals[-1][1] - self.intervals[0][0]

    @property
    def span(self):
        return self.intervals[0][0], self.intervals[-1][1]

    def interval_of(self, x) -> int | None:
        """Index of the closed interval containing real x, else None."""
        for j, (a, b) in enumerate(self.intervals):
            if a <= x <= b:
                return j
        return None

    def gap_of(self, x) -> int | None:
        for j, (lo, hi) in enumerate(self.gaps):
            if lo < x < hi:
                return j
        return None

    def on_contour(self, z) -> bool:
        return mp.im(z) == 0 and self.interval_of(mp.re(z)) is not None

    def distance(self, z) -> mpf:
        """Distance from z to the union of intervals."""
        x, y = mp.re(z), mp.im(z)
        best = None
        for a, b in self.intervals:
            dx = mpf(0) if a <= x <= b else min(abs(x - a), abs(x - b))
            d = mp.hypot(dx, y)
            best = d if best is None else min(best, d)
        return best

    def min_gap(self, j: int) -> mpf:
        """Distance from interval j to its nearest neighbour (inf if alone)."""
        a, b = self.intervals[j]
        cands = []
        if j > 0:
            cands.append(a - self.intervals[j - 1][1])
        if j + 1 < len(self.intervals):
            cands.append(self.intervals[j + 1][0] - b)
        return min(cands) if cands else self.diameter

    def key(self) -> tuple:
        with mp.workprec(512):
            return tuple((mp.nstr(a, 40), mp.nstr(b, 40)) for a, b in self.intervals)


# ---------------------------------------------------------------------------
# square-root weight w
# ---------------------------------------------------------------------------

def w_delta_eval(contour: IntervalContour, z):
    """Branch of sqrt(prod (z-e)) analytic off the contour, ~ z^(g+1) at inf."""
    z = mpc(z)
    if contour.on_contour(z):
        raise OnCut(f"{z} lies on the contour; use w_delta_trace")
    acc = mpc(1)
    for a, b in contour.intervals:
        acc *= sqrt(z - a) * sqrt(z - b)
    return acc


def _rest_product(contour: IntervalContour, j: int, t):
    """Product of all interval factors except interval j, at a point t
    (real inside interval j, or complex near it)."""
    acc = mpc(1)
    for k, (a, b) in enumerate(contour.intervals):
        if k == j:
            continue
        acc *= sqrt(t - a) * sqrt(t - b)
    return acc


@dataclass(frozen=True)
class TracedValue:
    value_plus: mpc
    value_minus: mpc


def w_delta_trace(contour: IntervalContour, x) -> TracedValue:
    """One-sided boundary values of w on an interval interior."""
    x = mpf(x)
    j = contour.interval_of(x)
    if j is None:
        raise ValueError(f"{x} is not on the contour")
    a, b = contour.intervals[j]
    if x == a or x == b:
        return TracedValue(mpc(0), mpc(0))
    plus = mpc(0, 1) * sqrt(x - a) * sqrt(b - x) * _rest_product(contour, j, x)
    return TracedValue(plus, -plus)


def w_plus(contour: IntervalContour, j: int, t):
    """Trace of w from above at t in the interior of interval j."""
    a, b = contour.intervals[j]
    return mpc(0, 1) * sqrt(t - a) * sqrt(b - t) * _rest_product(contour, j, t)


# ---------------------------------------------------------------------------
# analytic weights
# ---------------------------------------------------------------------------

_WEIGHT_KINDS = ("polynomial", "rational", "exp-polynomial")


@dataclass(frozen=True)
class Weight:
    """Analytic non-vanishing density with a fixed smooth log branch per
    component.  The branch tables pin log(rho) along each interval so the
    Szego data is reproducible."""

    kind: str
    numerator: Polynomial
    denominator: Polynomial | None
    contour: IntervalContour
    margin: mpf
    clearance: mpf                     # min distance of zeros/poles to the contour
    log_tables: tuple = field(repr=False, default=())

    def eval(self, t):
        if self.kind == "exp-polynomial":
            return exp(self.numerator(t))
        v = self.numerator(t)
        if self.kind == "rational":
            v = v / self.denominator(t)
        return v

    __call__ = eval

    def is_one(self) -> bool:
        return (self.kind == "polynomial"
                and self.numerator.degree == 0
                and self.numerator.coefficients[0] == 1)

    def log_on_component(self, j: int, t):
        """Branch of log rho at t, continuous along interval j and continued
        to nearby complex t from the stored table."""
        if self.kind == "exp-polynomial":
            return self.numerator(t)
        xs, logs = self.log_tables[j]
        x = mp.re(t)
        a, b = self.contour.intervals[j]
        x = min(max(x, a), b)
        # nearest table abscissa
        idx = min(range(len(xs)), key=lambda i: abs(xs[i] - x))
        ref_x, ref_log = xs[idx], logs[idx]
        return _continue_log(self.eval, mpc(ref_x), ref_log, mpc(t))

    def key(self) -> tuple:
        num = tuple(mp.nstr(c, 40) for c in self.numerator.coefficients)
        den = (tuple(mp.nstr(c, 40) for c in self.denominator.coefficients)
               if self.denominator is not None else None)
        return (self.kind, num, den)


def _continue_log(f, z0, log0, z1, max_splits=16):
    """Continue log f from (z0, log0) to z1 along the straight segment."""
    steps = 1
    for _ in range(max_splits):
        val = log0
        zp = z0
        fp = f(z0)
        ok = True
        for i in range(1, steps + 1):
            zn = z0 + (z1 - z0) * mpf(i) / steps
            fn = f(zn)
            ratio = fn / fp
            if abs(arg(ratio)) > pi / 2:
                ok = False
                break
            val += log(ratio)
            zp, fp = zn, fn
        if ok:
            return val
        steps *= 2
    raise WeightDomainError("log branch continuation failed (weight winds too fast)")


def _build_log_tables(weight_eval, contour, samples=129):
    tables = []
    for a, b in contour.intervals:
        xs = [a + (b - a) * (mpf(2 * i + 1) / (2 * samples)) for i in range(samples)]
        logs = [log(weight_eval(xs[0]))]
        for i in range(1, samples):
            ratio = weight_eval(xs[i]) / weight_eval(xs[i - 1])
            if abs(arg(ratio)) > pi / 2:
                raise WeightDomainError(
                    "weight winds too fast for the branch table; refine sampling")
            logs.append(logs[-1] + log(ratio))
        tables.append((tuple(xs), tuple(logs)))
    return tuple(tables)


def make_weight(kind: str, contour: IntervalContour, coeffs, den_coeffs=None,
                margin=0.05, ctx: PrecisionContext | None = None) -> Weight:
    """Construct a weight and certify it is zero/pole free near the contour."""
    ctx = as_context(ctx)
    if kind not in _WEIGHT_KINDS:
        raise ValueError(f"weight kind must be one of {_WEIGHT_KINDS}")
    with ctx.work():
        num = Polynomial.from_coeffs([mpc(c) for c in coeffs])
        den = None
        if kind == "rational":
            if den_coeffs is None:
                raise ValueError("rational weight needs denominator coefficients")
            den = Polynomial.from_coeffs([mpc(c) for c in den_coeffs])
        elif den_coeffs is not None:
            raise ValueError(f"{kind} weight takes no denominator")
        margin = mpf(margin)
        clearance = mpf("inf")
        if kind != "exp-polynomial":
            radius = margin * contour.diameter
            for p in (num, den):
                if p is None or p.degree < 1:
                    if p is not None and p.degree == 0 and p.coefficients[0] == 0:
                        raise WeightDomainError("weight is identically zero")
                    continue
                for r in poly_roots(p):
                    d = contour.distance(r)
                    clearance = min(clearance, d)
                    if d < radius:
                        raise WeightDomainError(
                            f"weight zero/pole at {r} is {d} from the contour "
                            f"(< {radius})")
        w = Weight(kind, num, den, contour, margin, clearance)
        tables = _build_log_tables(w.eval, contour)
        return Weight(kind, num, den, contour, margin, clearance, tables)


def unit_weight(contour: IntervalContour, ctx=None) -> Weight:
    return make_weight("polynomial", contour, [1], ctx=ctx)


# ---------------------------------------------------------------------------
# per-interval quadrature against 1/w^+
# ---------------------------------------------------------------------------

def integrate_weighted(contour: IntervalContour, j: int, g, order: int):
    """int over interval j of g(t)/w^+(t) dt for analytic g.

    With t = m + r x the trace 1/w^+ contributes 1/(i r sqrt(1-x^2) rest(t)),
    so the Gauss-Chebyshev rule applies with effective integrand
    g(t)/(i rest(t)).
    """
    a, b = contour.intervals[j]
    m, r = (a + b) / 2, (b - a) / 2
    rule = make_chebyshev_rule(order)
    i_unit = mpc(0, 1)
    return mp.fsum(
        wk * g(m + r * xk) / (i_unit * _rest_product(contour, j, m + r * xk))
        for xk, wk in zip(rule.nodes, rule.weights))


def _box_geometry(contour: IntervalContour, j: int, clearance):
    """Rectangle around interval j inside the analyticity region."""
    a, b = contour.intervals[j]
    length = b - a
    h = min(contour.min_gap(j) / 2, length / 2)
    if clearance is not None and mp.isfinite(clearance):
        h = min(h, mpf("0.45") * clearance)
    dx = min(h, mpf("0.4") * contour.min_gap(j))
    return a - dx, b + dx, h


def _box_path(x0, x1, h):
    """Counterclockwise rectangle corners."""
    return [mpc(x0, -h), mpc(x1, -h), mpc(x1, h), mpc(x0, h), mpc(x0, -h)]


def _integrate_segments(f, corners, order):
    rule = make_legendre_rule(order)
    total = mpc(0)
    for z0, z1 in zip(corners[:-1], corners[1:]):
        half = (z1 - z0) / 2
        mid = (z0 + z1) / 2
        total += half * mp.fsum(wk * f(mid + half * xk)
                                for xk, wk in zip(rule.nodes, rule.weights))
    return total


def cauchy_integral_interval(contour: IntervalContour, j: int, g, z,
                             order: int, clearance=None, side=None):
    """int over interval j of g(t) / (w^+(t) (t - z)) dt, g analytic near j.

    Far from the interval this is direct Chebyshev quadrature.  Within a
    tenth of the interval length the integral is rewritten over a rectangle
    around the interval (where g/w is analytic) plus, when z lies inside the
    rectangle, the explicit residue term i pi g(z)/w(z).  ``side`` (+1/-1)
    selects the w-trace when z lies on the interval itself.
    """
    a, b = contour.intervals[j]
    length = b - a
    on_this = mp.im(z) == 0 and a <= mp.re(z) <= b
    x, y = mp.re(z), mp.im(z)
    dx_int = mpf(0) if a <= x <= b else min(abs(x - a), abs(x - b))
    dist = mp.hypot(dx_int, y)
    if not on_this and dist > length / 10:
        return integrate_weighted(contour, j, lambda t: g(t) / (t - z), order)

    if on_this and side is None:
        raise OnCut(f"{z} lies on interval {j}; pass side=+1 or -1")

    x0, x1, h = _box_geometry(contour, j, clearance)
    # keep z comfortably away from the rectangle boundary (shrinking moves
    # every wall away from z whether z sits inside or just outside)
    zin = True
    for _ in range(80):
        zin = x0 < x < x1 and -h < y < h
        edge = min(abs(y - h), abs(y + h), abs(x - x0), abs(x - x1))
        if edge > h / 5:
            break
        shrink = mpf("0.618")
        h *= shrink
        x0 = a - (a - x0) * shrink
        x1 = b + (x1 - b) * shrink
    else:
        raise QuadratureStall("could not separate z from the deformation box")

    def q(t):
        return g(t) / (w_delta_eval(contour, t) * (t - z))

    loop = _integrate_segments(q, _box_path(x0, x1, h), order)
    val = -loop / 2
    if zin:
        if on_this:
            wz = w_plus(contour, j, mp.re(z))
            if side < 0:
                wz = -wz
        else:
            wz = w_delta_eval(contour, z)
        val += mpc(0, 1) * pi * g(z) / wz
    return val


# ---------------------------------------------------------------------------
# Cauchy transform of rho / w^+
# ---------------------------------------------------------------------------

DEFAULT_MOMENT_ORDER = 64
MAX_MOMENT_ORDER = 8192


def f_rho_coefficients(contour: IntervalContour, weight: Weight, count: int,
                       ctx=None, order=DEFAULT_MOMENT_ORDER):
    """Expansion coefficients f_0..f_count of the Cauchy transform at infinity.

    f_0 = 0 and f_k = -(1/2 pi i) int t^(k-1) rho(t)/w^+(t) dt; each doubling
    of the quadrature order must leave all requested coefficients fixed to
    the context tolerance, else QuadratureStall.
    """
    ctx = as_context(ctx)
    if count < 1:
        raise ValueError("count must be >= 1")
    with ctx.work(64):
        tol = ctx.tolerance

        def batch(n):
            coeffs = [mpc(0)]
            pre = -1 / (2 * pi * mpc(0, 1))
            for k in range(1, count + 1):
                val = mp.fsum(
                    integrate_weighted(contour, j,
                                       lambda t: t ** (k - 1) * weight.eval(t), n)
                    for j in range(len(contour.intervals)))
                coeffs.append(pre * val)
            return coeffs

        cur = batch(order)
        n = order
        while n <= MAX_MOMENT_ORDER:
            n *= 2
            nxt = batch(n)
            worst = max(abs(a - b) / max(mpf(1), abs(b))
                        for a, b in zip(cur, nxt))
            cur = nxt
            if worst <= tol:
                return cur
        raise QuadratureStall(
            f"moments did not stabilize by order {MAX_MOMENT_ORDER}")


def _stabilize(make_value, order, tol, max_order=MAX_MOMENT_ORDER):
    """Run make_value at doubling orders until two agree to tol."""
    cur = make_value(order)
    n = order
    while n <= max_order:
        n *= 2
        nxt = make_value(n)
        if abs(cur - nxt) <= tol * max(mpf(1), abs(nxt)):
            return nxt
        cur = nxt
    raise QuadratureStall(f"evaluation did not stabilize by order {max_order}")


def f_rho_eval(contour: IntervalContour, weight: Weight, z, ctx=None,
               order=DEFAULT_MOMENT_ORDER):
    """Cauchy transform (1/2 pi i) int (rho/w^+)(t)/(t-z) dt at z off the contour."""
    ctx = as_context(ctx)
    z = mpc(z)
    if contour.on_contour(z):
        raise OnCut(f"{z} lies on the contour; use f_rho_trace")
    with ctx.work(64):
        pre = 1 / (2 * pi * mpc(0, 1))

        def value(n):
            return pre * mp.fsum(
                cauchy_integral_interval(contour, j, weight.eval, z, n,
                                         clearance=weight.clearance)
                for j in range(len(contour.intervals)))

        return _stabilize(value, order, ctx.tolerance)


def f_rho_trace(contour: IntervalContour, weight: Weight, x, ctx=None,
                order=DEFAULT_MOMENT_ORDER):
    """One-sided boundary values (f^+, f^-) at x interior to an interval."""
    ctx = as_context(ctx)
    x = mpf(x)
    j = contour.interval_of(x)
    if j is None:
        raise ValueError(f"{x} is not interior to the contour")
    with ctx.work(64):
        pre = 1 / (2 * pi * mpc(0, 1))
        vals = []
        for side in (+1, -1):
            def value(n, side=side):
                return pre * mp.fsum(
                    cauchy_integral_interval(contour, k, weight.eval, mpc(x), n,
                                             clearance=weight.clearance,
                                             side=side if k == j else None)
                    for k in range(len(contour.intervals)))
            vals.append(_stabilize(value, order, ctx.tolerance))
        return TracedValue(vals[0], vals[1])


def sokhotski_check(contour: IntervalContour, weight: Weight, x, ctx=None,
                    delta=None, order=DEFAULT_MOMENT_ORDER):
    """|f^+ - f^- - rho/w^+| at x, with the limits taken at x +- i delta."""
    ctx = as_context(ctx)
    x = mpf(x)
    j = contour.interval_of(x)
    if j is None:
        raise ValueError(f"{x} is not interior to the contour")
    a, b = contour.intervals[j]
    if delta is None:
        delta = (b - a) * mpf("1e-8")
    with ctx.work(64):
        up = f_rho_eval(contour, weight, mpc(x, delta), ctx, order)
        dn = f_rho_eval(contour, weight, mpc(x, -delta), ctx, order)
        target = weight.eval(x) / w_plus(contour, j, x)
        return abs(up - dn - target)
