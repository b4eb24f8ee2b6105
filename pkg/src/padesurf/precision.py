"""Working-precision contract.

Every computation in the package runs under exactly one PrecisionContext.
The context fixes the mantissa length in bits and derives the default
comparison tolerance 2^(-bits/2).  Functions that need headroom wrap their
arithmetic in ``ctx.work(extra)`` which temporarily raises the mpmath
precision; results are rounded back on exit by the caller's context.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp, mpf, workprec

# Guard bits added inside every work() block so that accumulation of
# rounding error stays below the context tolerance.
GUARD_BITS = 32

MIN_BITS = 128


@dataclass(frozen=True)
class PrecisionContext:
    """Mantissa length and derived tolerance for one experiment."""

    bits: int = 256

    def __post_init__(self):
        if self.bits < MIN_BITS:
            raise ValueError(f"mantissa_bits must be >= {MIN_BITS}, got {self.bits}")

    @property
    def tolerance(self) -> mpf:
        """Default comparison tolerance 2^(-bits/2)."""
        with workprec(self.bits):
            return mpf(2) ** (-self.bits // 2)

    @property
    def quarter_tolerance(self) -> mpf:
        """Looser tolerance 2^(-bits/4) used for residual checks."""
        with workprec(self.bits):
            return mpf(2) ** (-self.bits // 4)

    @property
    def dps(self) -> int:
        """Decimal digits carried by this context (for output formatting)."""
        return int(self.bits / 3.333) + 1

    def work(self, extra: int = 0):
        """Context manager running mpmath at bits + GUARD_BITS + extra."""
        return workprec(self.bits + GUARD_BITS + max(0, int(extra)))

    def describe(self) -> dict:
        return {"mantissa_bits": self.bits, "tolerance": str(self.tolerance)}


DEFAULT_CONTEXT = PrecisionContext(256)


def as_context(ctx) -> PrecisionContext:
    """Coerce ints / None to a PrecisionContext."""
    if ctx is None:
        return DEFAULT_CONTEXT
    if isinstance(ctx, PrecisionContext):
        return ctx
    if isinstance(ctx, int):
        return PrecisionContext(ctx)
    raise TypeError(f"cannot interpret {ctx!r} as a precision context")
