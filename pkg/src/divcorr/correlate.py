"""Correlation sums and the divisor-lattice transforms connecting them.

The two shapes of sum:

    pair form      sum_{n<=x} f(n) f(n+v)        (kind "dd" / "ff")
    product form   sum_{n<=x} f(n(n+v))          (kind "dpoly" / "fpoly")

For any multiplicative f with Chebyshev companion g they determine each
other through exact divisor sums over v; everything here is evaluated in
the spec's exact value domain (Python integers for d, sigma_k, tau).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from divcorr.arith import (
    Factorization,
    MultiplicativeSpec,
    completely_mult_value,
    divisors,
    eval_mult,
    factorize,
    mobius,
    trial_factorize,
)
from divcorr.errors import ContractError, RangeError
from divcorr.sieve import (
    DivisorTable,
    ShiftedProductTable,
    SpfTable,
    shifted_product_divisor_count,
    shifted_product_values,
)

_CHUNK = 1 << 22


@dataclass(frozen=True)
class CorrelationSum:
    """One evaluated correlation sum; value is the literal finite sum."""

    kind: str  # dd | dpoly | ff | fpoly
    x: int
    v: int
    value: int | float
    spec_name: str | None = None


def _exact_sum(a: np.ndarray) -> int:
    # chunked int64 reduction folded into an unbounded Python int; each chunk
    # of <= 2^22 terms below 2^40 stays far from int64 overflow
    total = 0
    for lo in range(0, len(a), _CHUNK):
        total += int(np.sum(a[lo : lo + _CHUNK], dtype=np.int64))
    return total


def _check_shift(v: int) -> None:
    if v < 1:
        raise RangeError("shift v must be >= 1")


def sum_dd(x: int, v: int, tables: DivisorTable) -> CorrelationSum:
    """Exact sum of d(n) d(n+v) over n <= x."""
    _check_shift(v)
    if x < 0:
        raise RangeError("x must be >= 0")
    if x > 0 and tables.limit < x + v:
        raise RangeError(f"divisor table limit {tables.limit} < {x + v}")
    d = tables.values
    total = 0
    for lo in range(1, x + 1, _CHUNK):
        hi = min(lo + _CHUNK - 1, x)
        prod = d[lo : hi + 1].astype(np.int64) * d[lo + v : hi + v + 1].astype(np.int64)
        total += int(prod.sum())
    return CorrelationSum("dd", x, v, total)


def sum_dpoly(
    x: int, v: int, tables: ShiftedProductTable | SpfTable
) -> CorrelationSum:
    """Exact sum of d(n(n+v)) over n <= x; x = 0 gives the empty sum."""
    _check_shift(v)
    if x < 0:
        raise RangeError("x must be >= 0")
    if isinstance(tables, ShiftedProductTable):
        if tables.shift != v:
            raise RangeError(f"table has shift {tables.shift}, not {v}")
        if tables.limit < x:
            raise RangeError(f"table limit {tables.limit} < {x}")
        value = _exact_sum(tables.values[1 : x + 1])
    elif isinstance(tables, SpfTable):
        if x > 0 and tables.limit < x + v:
            raise RangeError(f"spf table limit {tables.limit} < {x + v}")
        value = sum(
            shifted_product_divisor_count(n, v, tables) for n in range(1, x + 1)
        )
    else:
        raise TypeError(f"unsupported table type {type(tables).__name__}")
    return CorrelationSum("dpoly", x, v, value)


def _dpoly_prefix_sum(dtab: DivisorTable, x: int, v: int) -> int:
    """sum_{n<=x} d(n(n+v)) straight from a divisor table."""
    if x <= 0:
        return 0
    return _exact_sum(shifted_product_values(dtab, x, v)[1:])


def sum_dd_from_dpoly(x: int, v: int, tables: DivisorTable) -> CorrelationSum:
    """Assemble sum_{n<=x} d(n) d(n+v) from product-form sums over the
    divisors of v:  sum_{e|v} sum_{n<=x/e} d(n(n+v/e)).  Equals sum_dd."""
    _check_shift(v)
    value = sum(
        _dpoly_prefix_sum(tables, x // e, v // e)
        for e in divisors(trial_factorize(v))
    )
    return CorrelationSum("dd", x, v, value)


def sum_dpoly_from_dd(x: int, v: int, tables: DivisorTable) -> CorrelationSum:
    """Moebius-inverted companion:  sum_{e|v} mu(e) sum_{n<=x/e} d(n) d(n+v/e).
    Equals sum_dpoly."""
    _check_shift(v)
    value = 0
    for e in divisors(trial_factorize(v)):
        mu = mobius(trial_factorize(e))
        if mu:
            value += mu * sum_dd(x // e, v // e, tables).value
    return CorrelationSum("dpoly", x, v, value)


def _merged_factorization(n: int, v: int, spf: SpfTable) -> Factorization:
    merged = dict(factorize(n, spf).entries)
    for p, e in factorize(n + v, spf).entries:
        merged[p] = merged.get(p, 0) + e
    return Factorization(tuple(sorted(merged.items())))


def sum_correlation(
    spec: MultiplicativeSpec, x: int, v: int, spf: SpfTable
) -> CorrelationSum:
    """Exact pair-form sum of f(n) f(n+v) over n <= x."""
    _check_shift(v)
    if x <= 0:
        return CorrelationSum("ff", x, v, 0, spec_name=spec.name)
    if spf.limit < x + v:
        raise RangeError(f"spf table limit {spf.limit} < {x + v}")
    fvals = [eval_mult(spec, factorize(n, spf)) for n in range(1, x + v + 1)]
    value = sum(fvals[n - 1] * fvals[n - 1 + v] for n in range(1, x + 1))
    return CorrelationSum("ff", x, v, value, spec_name=spec.name)


def sum_shifted_product(
    spec: MultiplicativeSpec, x: int, v: int, spf: SpfTable
) -> CorrelationSum:
    """Exact product-form sum of f(n(n+v)) over n <= x, f evaluated on the
    merged factorisation of n and n+v."""
    _check_shift(v)
    if x <= 0:
        return CorrelationSum("fpoly", x, v, 0, spec_name=spec.name)
    if spf.limit < x + v:
        raise RangeError(f"spf table limit {spf.limit} < {x + v}")
    value: int | float = 0
    for n in range(1, x + 1):
        value += eval_mult(spec, _merged_factorization(n, v, spf))
    return CorrelationSum("fpoly", x, v, value, spec_name=spec.name)


DIRECTIONS = ("corr_from_poly", "poly_from_corr")


def transform_correlation(
    spec: MultiplicativeSpec, x: int, v: int, direction: str, spf: SpfTable
) -> CorrelationSum:
    """Divisor-lattice transform between the two sum shapes.

    corr_from_poly:  sum_{e|v} g(e)       * [product form at (x/e, v/e)]
    poly_from_corr:  sum_{e|v} mu(e) g(e) * [pair form at (x/e, v/e)]

    The two directions are mutually inverse; each must reproduce the direct
    sum of the other shape.
    """
    if spec.companion_g is None:
        raise ContractError(f"spec {spec.name!r} has no companion g")
    if direction not in DIRECTIONS:
        raise ContractError(f"direction must be one of {DIRECTIONS}")
    _check_shift(v)
    total: int | float = 0
    for e in divisors(trial_factorize(v)):
        if direction == "corr_from_poly":
            w = completely_mult_value(spec.companion_g, e)
            term = sum_shifted_product(spec, x // e, v // e, spf).value
        else:
            mu = mobius(trial_factorize(e))
            if mu == 0:
                continue
            w = mu * completely_mult_value(spec.companion_g, e)
            term = sum_correlation(spec, x // e, v // e, spf).value
        total += w * term
    kind = "ff" if direction == "corr_from_poly" else "fpoly"
    return CorrelationSum(kind, x, v, total, spec_name=spec.name)
