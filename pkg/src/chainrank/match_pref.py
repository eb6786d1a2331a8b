"""Match-preference relations and the deterministic chain-editing selection.

A match preference is a total priority order over matrix cells: the earlier a
cell appears, the more willing we are to change it during chain editing. The
selection picks, among all closest chain tournaments, the one whose difference
vector (cells listed in priority order) is lexicographically least, i.e. the
one that concentrates changes on high-priority cells.

The equivalent weighted formulation assigns cell (a, b) the weight
1 + 2^(-p) for its 1-based priority position p. Scaling every weight by
2^(mn) keeps the arithmetic in exact integers: the uniqueness of the weighted
optimum rests on strict inequalities between sums of distinct powers of two,
which floating point would destroy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chain_edit import min_chain_set
from .core import RankingPair, Tournament, chain_rankings, xor
from .errors import AmbiguityError, InputError, ResourceCapError

DEFAULT_BIT_BUDGET = 120

ROW_MAJOR = "row_major_lex"
COL_MAJOR = "col_major_lex"
EXPLICIT = "explicit"


@dataclass(frozen=True)
class MatchPreference:
    """Total priority order over matrix index pairs (1-based, earliest = most changeable)."""

    kind: str
    explicit: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        if self.kind not in (ROW_MAJOR, COL_MAJOR, EXPLICIT):
            raise InputError(f"unknown match-preference kind {self.kind!r}")
        if self.kind == EXPLICIT and not self.explicit:
            raise InputError("explicit match preference needs a priority list")

    @classmethod
    def row_major(cls) -> "MatchPreference":
        return cls(ROW_MAJOR)

    @classmethod
    def col_major(cls) -> "MatchPreference":
        return cls(COL_MAJOR)

    @classmethod
    def from_pairs(cls, pairs) -> "MatchPreference":
        return cls(EXPLICIT, tuple((int(a), int(b)) for a, b in pairs))

    def order(self, m: int, n: int) -> tuple[tuple[int, int], ...]:
        """The cell pairs of [m]x[n] in ascending priority order."""
        grid = [(a, b) for a in range(1, m + 1) for b in range(1, n + 1)]
        if self.kind == ROW_MAJOR:
            return tuple(grid)
        if self.kind == COL_MAJOR:
            return tuple(sorted(grid, key=lambda ab: (ab[1], ab[0])))
        if set(self.explicit) != set(grid) or len(self.explicit) != m * n:
            raise InputError(
                f"explicit match preference must list every cell of a {m}x{n} "
                "matrix exactly once"
            )
        return self.explicit

    def positions(self, m: int, n: int) -> dict[tuple[int, int], int]:
        """1-based priority position of every cell."""
        return {ab: i + 1 for i, ab in enumerate(self.order(m, n))}


def parse_order_name(name: str) -> MatchPreference:
    if name in ("row-major", "row_major", "lex"):
        return MatchPreference.row_major()
    if name in ("col-major", "col_major", "colex"):
        return MatchPreference.col_major()
    raise InputError(f"unknown match-preference order {name!r}")


def vectorize(K: Tournament, pref: MatchPreference) -> tuple[int, ...]:
    """Entries of K collected in ascending priority order."""
    return tuple(K.cell(a, b) for a, b in pref.order(K.rows, K.cols))


def select_match_pref(K: Tournament, pref: MatchPreference, cap: int | None = None) -> Tournament:
    """The unique closest chain tournament with lexicographically least difference vector."""
    members = min_chain_set(K, cap).members
    best = None
    best_vec = None
    for M in members:
        vec = vectorize(xor(K, M), pref)
        if best_vec is None or vec < best_vec:
            best, best_vec = M, vec
        elif vec == best_vec:
            # distinct matrices at equal distance always differ somewhere, so
            # their difference vectors cannot coincide
            raise AmbiguityError("two optimal chain tournaments share a difference vector")
    return best


def rank_match_pref(K: Tournament, pref: MatchPreference, cap: int | None = None) -> RankingPair:
    """Rankings of the match-preference selection."""
    return chain_rankings(select_match_pref(K, pref, cap))


def weights_for(
    pref: MatchPreference, m: int, n: int, bit_budget: int | None = None
) -> tuple[tuple[int, ...], ...]:
    """Integer cell weights whose unique weighted optimum is the match-preference selection.

    The returned weights are 2^(mn) * (1 + 2^(-p)) = 2^(mn) + 2^(mn - p) for
    the 1-based priority position p of each cell; dividing by 2^(mn) recovers
    the rational weights exactly.
    """
    budget = DEFAULT_BIT_BUDGET if bit_budget is None else bit_budget
    total = m * n
    if total > budget:
        raise ResourceCapError(
            f"{m}x{n} weights need {total}-bit precision, over the budget of {budget}"
        )
    pos = pref.positions(m, n)
    scale = 1 << total
    return tuple(
        tuple(scale + (scale >> pos[(a, b)]) for b in range(1, n + 1))
        for a in range(1, m + 1)
    )


def weight_fractions(
    pref: MatchPreference, m: int, n: int, bit_budget: int | None = None
) -> tuple[tuple[Fraction, ...], ...]:
    """The weights as exact rationals 1 + 2^(-p)."""
    scale = 1 << (m * n)
    return tuple(
        tuple(Fraction(w, scale) for w in row)
        for row in weights_for(pref, m, n, bit_budget)
    )
