"""This module evaluates the closed formulas for distances, orbit Wiener indices and the Graovac-Pisanski
index of AT(n, p).

Two routes are offered. `w_prime_closed` sums the Wiener index of every orbit, choosing the small-n or
large-n formula orbit by orbit; it is valid for every even n >= 4 and p >= 1. `gp_table5` evaluates the
closed GP polynomial of each `Regime` row, which is only claimed on the (n, p) range that comes with the
row; outside of it the result is `NotCovered` instead of a number.

Everything is exact: plain integers where the formula is integral by construction, `Fraction` where
a polynomial has fractional coefficients, followed by an integrality assertion.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Literal, Optional, Union

from tubulene_gp.tubulene import ParameterError


class Regime(str, Enum):
    LARGE = "n > 4p+4"
    EQ_4P4 = "n = 4p+4"
    EQ_4P2 = "n = 4p+2"
    SMALL = "n <= 4p"


@dataclass(frozen=True)
class RegimeClass:
    """Row of the GP polynomial table that (n, p) falls in.

    Attributes:
        p_parity (Literal['even', 'odd']): Parity of p.
        n_mod_4 (int): 0 or 2.
        regime (Regime): Relation between n and p.
        table5_covered (bool): Whether (n, p) satisfies the side conditions of the row.
        notes (str): The side condition that applies, or why it fails.
    """

    p_parity: Literal["even", "odd"]
    n_mod_4: int
    regime: Regime
    table5_covered: bool
    notes: str = ""


@dataclass(frozen=True)
class ClosedFormResult:
    value: int
    method: Literal["table5", "orbit_summation"]
    regime: RegimeClass

    def __post_init__(self):
        assert self.value >= 0, "closed-form GP values are non-negative"


@dataclass(frozen=True)
class NotCovered:
    """Returned by `gp_table5` for (n, p) outside the claimed ranges. Not an error."""

    n: int
    p: int
    regime: RegimeClass

    @property
    def reason(self) -> str:
        return self.regime.notes


def _check_n(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 4 or n % 2:
        raise ParameterError(f"n must be an even integer >= 4, got {n!r}")
    return n


def _check_p(p: int, name: str = "p") -> int:
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise ParameterError(f"{name} must be a positive integer, got {p!r}")
    return p


def _n_is_2_mod_4(n: int) -> bool:
    return n % 4 == 2


def dist_u_V00(n: int) -> int:
    """Returns d(u, V^0_0) for u in V^0_0: the distance sum around the rim. Also equals d(v, V^1_0)."""
    _check_n(n)
    return (n * n - 2) // 2 if _n_is_2_mod_4(n) else n * n // 2


def dist_u_V1p(n: int, p: int) -> int:
    """Returns d(u, V^1_p) for u in V^0_0, the distance sum from a bottom degree-2 vertex to the top rim."""
    _check_n(n)
    _check_p(p)
    if n <= 4 * p + 4:
        return n * n // 4 + 2 * n * p + n
    return n * n // 2 + 4 * p * p + 4 * p + _n_is_2_mod_4(n)


def dist_v_V0p(n: int, p: int) -> int:
    """Returns d(v, V^0_p) for v in V^1_0."""
    _check_n(n)
    _check_p(p)
    if n <= 4 * p:
        return n * n // 4 + 2 * n * p - n
    return n * n // 2 + 4 * p * p - 4 * p + _n_is_2_mod_4(n)


def f1(n: int, p: int) -> int:
    """W(O^0) of depth p in the small-n regime ``n <= 4p + 4``."""
    _check_n(n)
    value = n * (3 * n * n // 4 + 2 * n * p + n)
    return value - n if _n_is_2_mod_4(n) else value


def f2(n: int, p: int) -> int:
    """W(O^0) of depth p in the large-n regime ``n > 4p + 4``."""
    _check_n(n)
    return n * (n * n + 4 * p * p + 4 * p)


def g1(n: int, p: int) -> int:
    """W(O^1) of depth p in the small-n regime ``n <= 4p``."""
    _check_n(n)
    value = n * (3 * n * n // 4 + 2 * n * p - n)
    return value - n if _n_is_2_mod_4(n) else value


def g2(n: int, p: int) -> int:
    """W(O^1) of depth p in the large-n regime ``n > 4p``."""
    _check_n(n)
    return n * (n * n + 4 * p * p - 4 * p)


def orbit_wiener(n: int, p_eff: int, kind: int) -> int:
    """Returns the Wiener index of the orbit ``O^kind_i`` of AT(n, p), where ``p_eff = p - 2i``.

    The orbit sits on the rims of a copy of AT(n, p_eff) that is convex in AT(n, p), so only p_eff matters.
    """
    _check_n(n)
    _check_p(p_eff, "p_eff")
    if kind == 0:
        return f1(n, p_eff) if n <= 4 * p_eff + 4 else f2(n, p_eff)
    if kind == 1:
        return g1(n, p_eff) if n <= 4 * p_eff else g2(n, p_eff)
    raise ParameterError(f"Kind must be 0 or 1, got {kind!r}")


def cycle_wiener(m: int) -> int:
    """Returns W(C_m) = m³/8 for an even cycle length m.

    The middle orbit of AT(n, 2k) induces such a cycle with m = 2n.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 4 or m % 2:
        raise ParameterError(f"Cycle length must be an even integer >= 4, got {m!r}")
    assert m**3 % 8 == 0
    return m**3 // 8


def w_prime_closed(n: int, p: int) -> int:
    """Returns W'(AT(n, p)), the sum of the orbit Wiener indices, selecting the regime orbit by orbit."""
    _check_n(n)
    _check_p(p)
    total = 0
    for p_eff in range(p, 0, -2):
        total += orbit_wiener(n, p_eff, 0) + orbit_wiener(n, p_eff, 1)
    if p % 2 == 0:
        total += cycle_wiener(2 * n)
    return total


def gp_summation(n: int, p: int) -> int:
    """Returns GP(AT(n, p)) as ``(p + 1) · W'``."""
    return (p + 1) * w_prime_closed(n, p)


def classify(n: int, p: int) -> RegimeClass:
    """Places (n, p) in its row of the GP polynomial table and decides whether the row's side conditions hold.

    Raises:
        ParameterError: If n is not an even integer >= 4 or p < 1.
    """
    _check_n(n)
    _check_p(p)
    parity: Literal["even", "odd"] = "even" if p % 2 == 0 else "odd"
    n_mod_4 = n % 4

    if n > 4 * p + 4:
        return RegimeClass(parity, n_mod_4, Regime.LARGE, True)

    if n in (4 * p + 4, 4 * p + 2):
        regime = Regime.EQ_4P4 if n == 4 * p + 4 else Regime.EQ_4P2
        least_p = 4 if parity == "even" else 3
        return RegimeClass(parity, n_mod_4, regime, p >= least_p, f"requires p >= {least_p}")

    if n_mod_4 == 0:
        least_n = 16 if parity == "even" else 12
    else:
        least_n = 14 if parity == "even" else 10
    return RegimeClass(parity, n_mod_4, Regime.SMALL, n >= least_n, f"requires n >= {least_n}")


def table5_polynomial(n: int, p: int, regime: Regime) -> Fraction:
    """Evaluates the GP polynomial of `regime` at (n, p), ignoring the row's side conditions."""
    n_, p_ = Fraction(n), Fraction(p)
    regime = Regime(regime)
    if regime is Regime.LARGE:
        inner = n_**3 * p_ + n_**3 + 4 * n_ * p_**3 / 3 + 4 * n_ * p_**2 + 8 * n_ * p_ / 3
    elif regime in (Regime.EQ_4P4, Regime.EQ_4P2):
        inner = n_**3 * p_ + 3 * n_**3 / 4 + 2 * n_**2 * p_ + n_**2 + 4 * n_ * p_**3 / 3 - 4 * n_ * p_ / 3
        if regime is Regime.EQ_4P2:
            inner -= n_
    elif n % 4 == 0:
        inner = n_**4 / 48 + 3 * n_**3 * p_ / 4 + 3 * n_**3 / 4 + n_**2 * p_**2 + 2 * n_**2 * p_ + 2 * n_**2 / 3
    else:
        inner = (
            n_**4 / 48
            + 3 * n_**3 * p_ / 4
            + 3 * n_**3 / 4
            + n_**2 * p_**2
            + 2 * n_**2 * p_
            + 11 * n_**2 / 12
            - n_ * p_
            - n_
        )
    return (p_ + 1) * inner


def gp_table5(n: int, p: int) -> Union[ClosedFormResult, NotCovered]:
    """Evaluates the GP polynomial that applies to (n, p), or returns `NotCovered` outside its claimed range."""
    regime = classify(n, p)
    if not regime.table5_covered:
        return NotCovered(n, p, regime)
    value = table5_polynomial(n, p, regime.regime)
    assert value.denominator == 1, f"GP polynomial is not integral at n={n}, p={p}: {value}"
    return ClosedFormResult(int(value), "table5", regime)


def closed_form_gp(n: int, p: int) -> ClosedFormResult:
    """Returns the closed polynomial value when (n, p) is covered, the orbit summation otherwise."""
    result = gp_table5(n, p)
    if isinstance(result, ClosedFormResult):
        return result
    return ClosedFormResult(gp_summation(n, p), "orbit_summation", result.regime)


def w_prime_by_case(n: int, p: int) -> Optional[int]:
    """Evaluates W' through the four expanded case sums for even p and 4 | n.

    (a) n > 4p + 4, (b) n = 4p + 4 with p >= 4, (c) n <= 4p with 8 | n and n >= 16,
    (d) n <= 4p with 8 | (n - 4) and n >= 20. Returns None where none of them applies.
    """
    _check_n(n)
    _check_p(p)
    if p % 2 or n % 4:
        return None

    def f2_sum(last: int) -> int:
        return sum(f2(n, 2 * i) for i in range(1, last + 1))

    def g2_sum(last: int) -> int:
        return sum(g2(n, 2 * i) for i in range(1, last + 1))

    half = p // 2
    middle = n**3
    if n > 4 * p + 4:
        return middle + f2_sum(half) + g2_sum(half)
    if n == 4 * p + 4:
        if p < 4:
            return None
        return middle + f2_sum(half - 1) + f1(n, p) + g2_sum(half)
    if n % 8 == 0 and n >= 16:
        k = n // 8
        return (
            middle
            + f2_sum(k - 1)
            + sum(f1(n, 2 * i) for i in range(k, half + 1))
            + g2_sum(k - 1)
            + sum(g1(n, 2 * i) for i in range(k, half + 1))
        )
    if n % 8 == 4 and n >= 20:
        return (
            middle
            + f2_sum((n - 12) // 8)
            + sum(f1(n, 2 * i) for i in range((n - 4) // 8, half + 1))
            + g2_sum((n - 4) // 8)
            + sum(g1(n, 2 * i) for i in range((n + 4) // 8, half + 1))
        )
    return None
