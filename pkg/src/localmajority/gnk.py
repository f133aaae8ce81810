"""The lower-bound recurrence g(n, k) for k-local positive trees, and what it certifies.

For fixed k:

* g(n) = -n              for 1 <= n <= floor((k-1)/2)
* g(n) = n - k + 1       for (k+1)/2 <= n <= k   (k odd)
* g(n) = n - k + 2       for k/2 <= n <= k       (k even)
* g(n) = max(g(n-1) - 1, min_{ceil(n/3) <= j <= floor(n/2)} g(n-j) + g(j))   for n > k

Overrides replace individual values before anything that depends on them is
computed.  Everything is integer or exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

# Reference values of g(n, k) for n = 1..35 (rows) and k = 7..15 (columns).
REFERENCE_TABLE: dict[int, tuple[int, ...]] = {
    1: (-1, -1, -1, -1, -1, -1, -1, -1, -1),
    2: (-2, -2, -2, -2, -2, -2, -2, -2, -2),
    3: (-3, -3, -3, -3, -3, -3, -3, -3, -3),
    4: (-2, -2, -4, -4, -4, -4, -4, -4, -4),
    5: (-1, -1, -3, -3, -5, -5, -5, -5, -5),
    6: (0, 0, -2, -2, -4, -4, -6, -6, -6),
    7: (1, 1, -1, -1, -3, -3, -5, -5, -7),
    8: (0, 2, 0, 0, -2, -2, -4, -4, -6),
    9: (-1, 1, 1, 1, -1, -1, -3, -3, -5),
    10: (-2, 0, 0, 2, 0, 0, -2, -2, -4),
    11: (-1, -1, -1, 1, 1, 1, -1, -1, -3),
    12: (-2, 0, -2, 0, 0, 2, 0, 0, -2),
    13: (-1, 1, -3, -1, -1, 1, 1, 1, -1),
    14: (-2, 0, -2, -2, -2, 0, 0, 2, 0),
    15: (-3, -1, -3, -1, -3, -1, -1, 1, 1),
    16: (-2, 0, -2, 0, -4, -2, -2, 0, 0),
    17: (-1, -1, -3, -1, -3, -3, -3, -1, -1),
    18: (-2, 0, -4, -2, -4, -2, -4, -2, -2),
    19: (-3, 1, -3, -1, -3, -1, -5, -3, -3),
    20: (-4, 0, -4, -2, -4, -2, -4, -4, -4),
    21: (-3, -1, -3, -3, -5, -3, -5, -3, -5),
    22: (-4, -2, -2, -2, -4, -2, -4, -2, -6),
    23: (-3, -1, -3, -1, -5, -3, -5, -3, -5),
    24: (-4, 0, -4, 0, -6, -4, -6, -4, -6),
    25: (-5, -1, -5, -1, -5, -3, -5, -3, -5),
    26: (-4, -2, -6, -2, -4, -4, -6, -4, -6),
    27: (-5, -1, -5, -3, -5, -3, -7, -5, -7),
    28: (-4, -2, -6, -4, -4, -2, -6, -4, -6),
    29: (-5, -1, -5, -3, -5, -1, -7, -5, -7),
    30: (-6, -2, -6, -2, -6, -2, -6, -6, -8),
    31: (-5, -1, -7, -3, -7, -3, -5, -5, -7),
    32: (-6, -2, -6, -4, -8, -4, -6, -4, -8),
    33: (-5, -3, -7, -3, -7, -5, -5, -3, -9),
    34: (-6, -2, -6, -4, -8, -6, -6, -2, -8),
    35: (-7, -1, -7, -5, -7, -5, -7, -3, -7),
}
REFERENCE_KS = tuple(range(7, 16))

# Overrides whose justification is a claimed, not machine-checked, bound.
UNPROVEN_OVERRIDES: dict[int, dict[int, int]] = {9: {26: -4}}


def reference_value(n: int, k: int) -> int:
    return REFERENCE_TABLE[n][k - 7]


def base_value(n: int, k: int) -> int:
    """g(n, k) for 1 <= n <= k."""
    if not 1 <= n <= k:
        raise ValueError(f"base region is 1 <= n <= k, got n={n}, k={k}")
    if n <= (k - 1) // 2:
        return -n
    if k % 2:
        return n - k + 1
    return n - k + 2


@dataclass(frozen=True)
class GnkTable:
    k: int
    values: dict[int, int]
    overrides: dict[int, int] = field(default_factory=dict)

    @property
    def n_max(self) -> int:
        return max(self.values)

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def ratio(self, n: int) -> Fraction:
        return Fraction(self.values[n], n)

    @property
    def uses_unproven_overrides(self) -> bool:
        return _unproven(self.k, self.overrides)


def gnk_table(k: int, n_max: int, overrides: Mapping[int, int] | None = None) -> GnkTable:
    if k < 1 or n_max < 1:
        raise ValueError("k and n_max must be positive")
    overrides = dict(overrides or {})
    bad = [n for n in overrides if not 1 <= n <= n_max]
    if bad:
        raise ValueError(f"override positions {bad} fall outside 1..{n_max}")
    g: dict[int, int] = {}
    for n in range(1, n_max + 1):
        if n in overrides:
            g[n] = overrides[n]
        elif n <= k:
            g[n] = base_value(n, k)
        else:
            split = min(g[n - j] + g[j] for j in range(-(-n // 3), n // 2 + 1))
            g[n] = max(g[n - 1] - 1, split)
    return GnkTable(k, g, overrides)


def even_base_variant(k: int, n_max: int) -> GnkTable:
    """The recurrence with g(k, k) = 0 in place of 2, for even k."""
    if k % 2:
        raise ValueError(f"even_base_variant needs even k, got {k}")
    return gnk_table(k, max(n_max, k), {k: 0})


@dataclass(frozen=True)
class RatioCertificate:
    """Minimum of g(n, k)/n over the window [r, 3r].

    When 3r > k this slope lower-bounds every k-local positive tree with at least k edges.
    """

    k: int
    r: int
    c: Fraction
    per_n: dict[int, Fraction]
    overrides: dict[int, int]
    depends_on_unproven: bool

    def to_dict(self) -> dict:
        from .cache import fmt_rational

        return {
            "k": self.k,
            "r": self.r,
            "c": fmt_rational(self.c),
            "per_n": {str(n): fmt_rational(x) for n, x in self.per_n.items()},
            "overrides": {str(n): v for n, v in sorted(self.overrides.items())},
            "depends_on_unproven_overrides": self.depends_on_unproven,
        }


def certify_ratio_bound(k: int, r: int, overrides: Mapping[int, int] | None = None) -> RatioCertificate:
    if 3 * r <= k:
        raise ValueError(f"need 3r > k, got r={r}, k={k}")
    table = gnk_table(k, 3 * r, {n: v for n, v in (overrides or {}).items() if n <= 3 * r})
    per_n = {n: table.ratio(n) for n in range(r, 3 * r + 1)}
    return RatioCertificate(
        k, r, min(per_n.values()), per_n, dict(overrides or {}),
        depends_on_unproven=_unproven(k, overrides or {}),
    )


def _unproven(k: int, overrides: Mapping[int, int]) -> bool:
    claimed = UNPROVEN_OVERRIDES.get(k, {})
    return any(claimed.get(n) == v for n, v in overrides.items())


@dataclass(frozen=True)
class TheoremBounds:
    k: int
    family: str
    lower: Fraction
    upper: Fraction

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


NON_COLLAPSING = frozenset({1, 2, 3, 4, 5, 6, 8})


def theorem_c_bounds(k: int, family: str = "general") -> TheoremBounds:
    """Known bounds on the collapse slope for k = 7 or k >= 9.

    ``family`` is ``"general"`` (any family between trees and connected
    graphs) or ``"degree_bounded"`` (the same with maximum degree at least 3).
    """
    if k in NON_COLLAPSING or k < 1:
        raise ValueError(f"k={k} does not collapse; slope bounds exist only for k = 7 and k >= 9")
    if family not in ("general", "degree_bounded"):
        raise ValueError(f"unknown family {family!r}")
    m, res = divmod(k, 4)
    F = Fraction
    if res == 3:
        exact = F(-m, 3 * m + 2)
        lo, hi = (exact, exact) if family == "general" else (exact, F(-(2 * m - 1), 6 * m + 5))
    elif res == 2:
        exact = F(-(m - 1), 3 * m + 1)
        lo, hi = (exact, exact) if family == "general" else (exact, F(-(2 * m - 3), 6 * m + 3))
    elif res == 1:
        lo, hi = F(-(2 * m - 1), 6 * m + 1), F(-(m - 1), 3 * m + 1)
    else:
        lo, hi = F(-(2 * m - 3), 6 * m - 1), F(-(m - 2), 3 * m)
    return TheoremBounds(k, family, lo, hi)
