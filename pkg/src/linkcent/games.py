"""TU games: the symmetric game catalog, Harsanyi dividends, Shapley values.

Everything is computed in exact rational arithmetic (``fractions.Fraction``,
with plain ``int`` fast paths for integer-valued games); floats only appear
at presentation time.  Coalitions are ``int`` bitmasks over the carrier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .graph import bits

DEFAULT_EXACT_CAP = 26


class CapExceededError(ValueError):
    """Exact enumeration refused because the carrier is too large; use the
    Monte-Carlo sampler instead."""


def _exact(x) -> Fraction | int:
    """Normalize a numeric input to int (when integral) or Fraction."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, str):
        return _exact(Fraction(x))
    if isinstance(x, float):
        # decimal semantics: 0.1 means 1/10, not the binary float
        return _exact(Fraction(str(x)))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class GameFlags:
    """Discrete-difference diagnostics of a symmetric game, checked
    exhaustively up to the requested coalition size."""

    zero_normalized: bool
    superadditive: bool
    convex: bool
    smooth_nonneg: bool


class SymmetricGame:
    """A TU game whose coalition value depends only on coalition size:
    ``v(S) = f(|S|)`` with ``f(0) = 0``."""

    def __init__(self, name: str, size_value: Callable[[int], object]):
        self.name = name
        self._f = size_value
        if _exact(size_value(0)) != 0:
            raise ValueError("a characteristic function must vanish on the empty coalition")

    def f(self, s: int) -> Fraction | int:
        if s < 0:
            raise ValueError("coalition size must be nonnegative")
        return _exact(self._f(s))

    def table(self, n_max: int) -> tuple:
        """``f(0)..f(n_max)`` as exact values."""
        return tuple(self.f(s) for s in range(n_max + 1))

    def flags(self, n_max: int) -> GameFlags:
        """Compute the analytic flags by exhaustive difference checks.

        ``smooth_nonneg`` demands nonnegative forward differences of every
        order on ``{1..n_max}``, the discrete stand-in for all derivatives
        of ``f`` being nonnegative from 1 on; ``convex`` checks second
        differences from 0 on, which for symmetric games is equivalent to
        convexity of the game itself.
        """
        tab = self.table(n_max)
        zero = tab[1] == 0 if n_max >= 1 else True
        superadd = all(
            tab[s + t] >= tab[s] + tab[t]
            for s in range(1, n_max)
            for t in range(s, n_max - s + 1)
        )
        convex = all(
            tab[s + 2] - 2 * tab[s + 1] + tab[s] >= 0 for s in range(n_max - 1)
        )
        smooth = True
        diffs = list(tab[1:])
        while diffs and smooth:
            smooth = all(d >= 0 for d in diffs)
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        return GameFlags(zero, superadd, convex, smooth)

    def admissible(self, n_max: int) -> bool:
        """Zero-normalized and superadditive: the hypotheses under which the
        position measure is guaranteed nonnegative and isolated nodes score
        zero."""
        fl = self.flags(n_max)
        return fl.zero_normalized and fl.superadditive

    def __repr__(self) -> str:
        return f"SymmetricGame({self.name!r})"


# -- catalog -------------------------------------------------------------------


def messages() -> SymmetricGame:
    """Counts the ordered pairs that can exchange messages: f(s) = s(s-1)."""
    return SymmetricGame("messages", lambda s: s * (s - 1))


def overhead() -> SymmetricGame:
    """Flat cost -1 for every nonempty group; not zero-normalized."""
    return SymmetricGame("overhead", lambda s: -1 if s >= 1 else 0)


def attachment() -> SymmetricGame:
    """f(s) = 2(s-1): each group is worth twice its spanning-tree size."""
    return SymmetricGame("attachment", lambda s: 2 * (s - 1) if s >= 1 else 0)


def attachment_messages() -> SymmetricGame:
    """f(s) = s^2 + s - 2, the sum of the messages and attachment payoffs."""
    return SymmetricGame("attachment-messages", lambda s: s * s + s - 2 if s >= 1 else 0)


def conferences() -> SymmetricGame:
    """Counts subgroups of size at least two: f(s) = 2^s - s - 1."""
    return SymmetricGame("conferences", lambda s: 2**s - s - 1)


CATALOG: dict[str, Callable[[], SymmetricGame]] = {
    "messages": messages,
    "overhead": overhead,
    "attachment": attachment,
    "attachment-messages": attachment_messages,
    "conferences": conferences,
}


def custom_game(name: str, values: Sequence) -> SymmetricGame:
    """Symmetric game from a finite table ``values[s] = f(s)``."""
    tab = tuple(_exact(v) for v in values)
    if not tab or tab[0] != 0:
        raise ValueError("table must start with f(0) = 0")

    def f(s: int):
        if s >= len(tab):
            raise ValueError(f"game {name!r} only tabulated up to size {len(tab) - 1}")
        return tab[s]

    return SymmetricGame(name, f)


def game_from_json_obj(obj) -> SymmetricGame:
    """Load ``{"name": ..., "f": [f(0), f(1), ...]}``; entries may be ints,
    decimal floats or "p/q" strings."""
    try:
        name = str(obj["name"])
        values = list(obj["f"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed game object: {exc}") from exc
    return custom_game(name, values)


# -- coalition games -----------------------------------------------------------


class CoalitionGame:
    """A characteristic function over subsets of a finite carrier.

    ``value`` maps a coalition bitmask to an exact rational; it must be
    deterministic and vanish on the empty coalition.  ``labels`` names the
    carrier elements (defaults to their indices).
    """

    def __init__(self, carrier_size: int, value: Callable[[int], object], labels=None):
        self.carrier_size = carrier_size
        self._value = value
        self.labels = tuple(labels) if labels is not None else tuple(range(carrier_size))
        if len(self.labels) != carrier_size:
            raise ValueError("labels must match the carrier size")
        if _exact(value(0)) != 0:
            raise ValueError("a characteristic function must vanish on the empty coalition")
        self._table: list | None = None

    def value(self, mask: int):
        return _exact(self._value(mask))

    def table(self) -> list:
        """Values for every coalition mask, cached."""
        if self._table is None:
            self._table = [self.value(mask) for mask in range(1 << self.carrier_size)]
        return self._table

    @classmethod
    def from_table(cls, values: Sequence, labels=None) -> "CoalitionGame":
        n = (len(values) - 1).bit_length()
        if len(values) != 1 << n:
            raise ValueError("table length must be a power of two")
        tab = [_exact(v) for v in values]
        game = cls(n, lambda mask: tab[mask], labels)
        game._table = tab
        return game

    @classmethod
    def unanimity(cls, carrier_size: int, support: int) -> "CoalitionGame":
        """Worth 1 exactly on coalitions containing the support mask."""
        if support == 0:
            raise ValueError("unanimity support must be nonempty")
        return cls(carrier_size, lambda mask: 1 if mask & support == support else 0)


def mobius_transform(values: list, n: int) -> None:
    """In-place superset-signed sum: afterwards ``values[S]`` holds
    ``sum_{T<=S} (-1)^{|S|-|T|} v(T)``, i.e. every Harsanyi dividend."""
    for b in range(n):
        bit = 1 << b
        for mask in range(1 << n):
            if mask & bit:
                values[mask] -= values[mask ^ bit]


def harsanyi_dividend(game: CoalitionGame, mask: int):
    """Dividend of a single nonempty coalition by direct alternating sum."""
    if mask == 0:
        raise ValueError("the empty coalition has no dividend")
    s = mask.bit_count()
    total = 0
    sub = mask
    while True:
        term = game.value(sub)
        total += term if (s - sub.bit_count()) % 2 == 0 else -term
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return _exact(total)


def all_dividends(game: CoalitionGame, cap: int = DEFAULT_EXACT_CAP) -> list:
    if game.carrier_size > cap:
        raise CapExceededError(
            f"{game.carrier_size} players exceed the exact cap {cap}; "
            "use the Monte-Carlo sampler"
        )
    values = list(game.table())
    mobius_transform(values, game.carrier_size)
    return values


def shapley_marginal(game: CoalitionGame, cap: int = DEFAULT_EXACT_CAP) -> tuple:
    """Shapley value by the weighted marginal-contribution sum.

    Exact: all weights are integer-scaled by ``n!`` and divided out once.
    """
    n = game.carrier_size
    if n > cap:
        raise CapExceededError(
            f"{n} players exceed the exact cap {cap}; use the Monte-Carlo sampler"
        )
    tab = game.table()
    weight = [math.factorial(s) * math.factorial(n - s - 1) for s in range(n)]
    acc = [0] * n
    full = (1 << n) - 1
    for mask in range(1 << n):
        rem = full & ~mask
        if rem == 0:
            continue
        w = weight[mask.bit_count()]
        base = tab[mask]
        while rem:
            low = rem & -rem
            e = low.bit_length() - 1
            acc[e] += w * (tab[mask | low] - base)
            rem ^= low
    fact = math.factorial(n)
    return tuple(Fraction(a) / fact for a in acc)


def shapley_dividends(game: CoalitionGame, cap: int = DEFAULT_EXACT_CAP) -> tuple:
    """Shapley value as the equal split of the Harsanyi dividends:
    ``phi_i = sum over coalitions containing i of dividend / size``."""
    n = game.carrier_size
    div = all_dividends(game, cap)
    # bucket by coalition size first so each player needs one division per size
    acc = [[0] * (n + 1) for _ in range(n)]
    for mask in range(1, 1 << n):
        d = div[mask]
        if d == 0:
            continue
        s = mask.bit_count()
        for i in bits(mask):
            acc[i][s] += d
    return tuple(
        sum((Fraction(acc[i][s]) / s for s in range(1, n + 1) if acc[i][s]), Fraction(0))
        for i in range(n)
    )
