"""Closed-form upper bounds on f(n) and the edge-counting rule.

All square roots are taken in exact integer arithmetic via ``ceil_sqrt``.
"""

from __future__ import annotations

import math


class DomainTooSmall(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


def ceil_sqrt(x: int) -> int:
    if x < 0:
        raise ValueError(f"ceil_sqrt of negative {x}")
    r = math.isqrt(x)
    return r if r * r == x else r + 1


def _need(n: int, least: int = 2) -> None:
    if n < least:
        raise DomainTooSmall(f"needs argument >= {least}, got {n}")


def ub_par3(n: int) -> int:
    _need(n)
    return n + ceil_sqrt(n) + 1


def ub_square(m: int) -> tuple[int, int]:
    """f(m^2 + 1) <= m^2 + m + 2."""
    _need(m)
    return m * m + 1, m * m + m + 2


def ub_cop3(n: int) -> int:
    _need(n)
    return n + ceil_sqrt(n - 1) + 1


def thm5_applies(n: int) -> bool:
    return n >= 2 and n % 2 == 0 and ceil_sqrt(n) % 2 == 1


def ub_thm5(n: int) -> int | None:
    """n even with odd ceil(sqrt n): f(n) <= n + ceil(sqrt(n - ceil(sqrt n) + 2)) + 1, else None."""
    _need(n)
    if not thm5_applies(n):
        return None
    return n + ceil_sqrt(n - ceil_sqrt(n) + 2) + 1


def ub_unified(n: int) -> int:
    """Single-expression form of the thm5/cop3 pair.

    The correction term reads (1 + (-1)^n)(1 - (-1)^ceil(sqrt n))(ceil(sqrt n) - 3) / 4,
    which is ceil(sqrt n) - 3 when the thm5 parity condition holds and 0 otherwise.
    """
    _need(n)
    s = ceil_sqrt(n)
    sign_n = 1 if n % 2 == 0 else -1
    sign_s = 1 if s % 2 == 0 else -1
    numer = (1 + sign_n) * (1 - sign_s) * (s - 3)
    assert numer % 4 == 0
    return n + ceil_sqrt(n - numer // 4 - 1) + 1


def ub_pro2(m: int) -> tuple[int, int]:
    """m = 2 (mod 6), m >= 8: f(m^2 + 3) <= m^2 + m + 4."""
    if m < 8 or m % 6 != 2:
        raise PreconditionViolated(f"needs m = 2 (mod 6) and m >= 8, got {m}")
    return m * m + 3, m * m + m + 4


def square_root_of(n: int, offset: int) -> int | None:
    """The m >= 0 with m^2 + offset == n, if any."""
    if n - offset < 0:
        return None
    m = math.isqrt(n - offset)
    return m if m * m + offset == n else None


def min_edges(order: int, n: int) -> int:
    """Fewest edges a graph on ``order`` vertices with min degree >= order - n can have."""
    return (order * max(0, order - n) + 1) // 2


def counting_applies(n: int, order: int, ex_value: int) -> bool:
    """True when every good graph on ``order`` vertices for star n would need more than ex edges."""
    return order > n >= 1 and min_edges(order, n) > ex_value


def thm8_target(n: int, f_n: int) -> int:
    """Index whose f is at least n, when f(n) > f(n-1)."""
    return 2 * n + 1 - f_n
