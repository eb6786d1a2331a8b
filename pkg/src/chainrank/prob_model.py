"""States of the world, the binary noise channel, likelihoods and MLE search.

A state assigns numeric skill levels to both sides, constrained so that every
strict skill gap is witnessed by a player of the opposite side (otherwise two
states indistinguishable by any match outcome would differ). The deterministic
tournament of a state marks (a, b) a win exactly when a's skill reaches b's;
such tournaments are exactly the chain tournaments, and every chain tournament
is reproduced by its canonical state built from neighbourhood counts.

Observed tournaments flip each true outcome independently: a false positive
with rate alpha_plus, a false negative with rate alpha_minus. Likelihood
comparisons run in log space; zero rates short-circuit to feasibility filters
rather than evaluating log 0.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .chain_edit import all_chain_tournaments
from .core import Tournament, canonical_key, chain_rankings, has_chain_property
from .errors import InputError, NotChainError

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class StateOfWorld:
    """Skill vectors for the row and column players.

    Validated at construction: whenever one player is strictly more skilled
    than a same-side other, some opposite-side skill level lies in the gap.
    """

    x: tuple
    y: tuple

    def __post_init__(self):
        if not self.x or not self.y:
            raise InputError("a state needs at least one skill level per side")
        for xa in list(self.x) + list(self.y):
            if not isinstance(xa, (int, float)) or isinstance(xa, bool):
                raise InputError("skill levels must be numbers")
        for a, xa in enumerate(self.x, start=1):
            for a2, xa2 in enumerate(self.x, start=1):
                if xa < xa2 and not any(xa < yb <= xa2 for yb in self.y):
                    raise InputError(
                        f"rows {a} and {a2} have a skill gap no column level explains"
                    )
        for b, yb in enumerate(self.y, start=1):
            for b2, yb2 in enumerate(self.y, start=1):
                if yb < yb2 and not any(yb <= xa < yb2 for xa in self.x):
                    raise InputError(
                        f"columns {b} and {b2} have a skill gap no row level explains"
                    )


@dataclass(frozen=True)
class NoiseParams:
    """False positive and false negative rates of the observation channel."""

    alpha_plus: float
    alpha_minus: float

    def __post_init__(self):
        for rate in (self.alpha_plus, self.alpha_minus):
            if not 0.0 <= rate <= 1.0:
                raise InputError(f"noise rate {rate} outside [0, 1]")

    @classmethod
    def symmetric(cls, beta: float) -> "NoiseParams":
        return cls(beta, beta)


def k_theta(theta: StateOfWorld) -> Tournament:
    """The deterministic tournament of a state: a win wherever x_a >= y_b."""
    masks = []
    for xa in theta.x:
        mask = 0
        for b0, yb in enumerate(theta.y):
            if xa >= yb:
                mask |= 1 << b0
        masks.append(mask)
    return Tournament(len(theta.x), len(theta.y), tuple(masks))


def canonical_state(K: Tournament) -> StateOfWorld:
    """The integer-valued state reproducing a chain tournament.

    Row skill = number of rows with a neighbourhood contained in its own;
    column skill = least skill among the rows defeating it, or one past the
    row count for undefeated columns.
    """
    if not has_chain_property(K):
        raise NotChainError("canonical states exist only for chain tournaments")
    x = []
    for a0 in range(K.rows):
        mask = K.row_masks[a0]
        x.append(sum(1 for other in K.row_masks if other & mask == other))
    y = []
    for b0 in range(K.cols):
        beaten_by = K.col_masks[b0]
        if beaten_by:
            y.append(min(x[a0] for a0 in range(K.rows) if (beaten_by >> a0) & 1))
        else:
            y.append(1 + K.rows)
    return StateOfWorld(tuple(x), tuple(y))


def _mismatch_counts(K: Tournament, truth: Tournament) -> tuple[int, int, int, int]:
    """(false pos, true pos, true neg, false neg) cell counts."""
    full = (1 << K.cols) - 1
    fp = tp = tn = fn = 0
    for r, t in zip(K.row_masks, truth.row_masks):
        fp += (r & ~t).bit_count()
        tp += (r & t).bit_count()
        tn += (full & ~(r | t)).bit_count()
        fn += (t & ~r).bit_count()
    return fp, tp, tn, fn


def likelihood(K: Tournament, theta: StateOfWorld, alpha: NoiseParams) -> float:
    """Probability of observing K when the true state is theta.

    Uses the product form over rows: each row contributes one factor per
    false positive, true positive, true negative and false negative cell.
    """
    truth = k_theta(theta)
    if (K.rows, K.cols) != (truth.rows, truth.cols):
        raise InputError(
            f"state is {truth.rows}x{truth.cols} but tournament is {K.rows}x{K.cols}"
        )
    fp, tp, tn, fn = _mismatch_counts(K, truth)
    return (
        alpha.alpha_plus**fp
        * (1.0 - alpha.alpha_minus) ** tp
        * (1.0 - alpha.alpha_plus) ** tn
        * alpha.alpha_minus**fn
    )


def log_likelihood(K: Tournament, theta: StateOfWorld, alpha: NoiseParams) -> float:
    """Natural log of the likelihood; -inf when the observation is impossible."""
    truth = k_theta(theta)
    if (K.rows, K.cols) != (truth.rows, truth.cols):
        raise InputError(
            f"state is {truth.rows}x{truth.cols} but tournament is {K.rows}x{K.cols}"
        )
    counts = _mismatch_counts(K, truth)
    rates = (
        alpha.alpha_plus,
        1.0 - alpha.alpha_minus,
        1.0 - alpha.alpha_plus,
        alpha.alpha_minus,
    )
    # aggregate by rate before taking logs so that e.g. one false positive
    # plus one false negative scores bitwise-identically to two false
    # positives under a symmetric channel (exact tie detection)
    by_rate: dict[float, int] = {}
    for count, rate in zip(counts, rates):
        if count:
            by_rate[rate] = by_rate.get(rate, 0) + count
    total = 0.0
    for rate in sorted(by_rate):
        if rate == 0.0:
            return -math.inf
        total += by_rate[rate] * math.log(rate)
    return total


def mle_search(K: Tournament, alpha: NoiseParams, cap: int | None = None) -> tuple[Tournament, ...]:
    """Deterministic tournaments of the states maximising the likelihood of K.

    Every chain tournament is scored through its canonical state; states with
    the same deterministic tournament have the same likelihood, so this scan
    covers the whole state space.
    """
    best = -math.inf
    members: list[Tournament] = []
    for cand in all_chain_tournaments(K.rows, K.cols, cap):
        ll = log_likelihood(K, canonical_state(cand), alpha)
        if ll > best:
            best = ll
            members = [cand]
        elif ll == best and ll > -math.inf:
            members.append(cand)
    if not members:
        raise InputError(
            "noise rates assign probability zero to this observation under every state"
        )
    return tuple(sorted(members, key=canonical_key))


def mle_rankings(K: Tournament, alpha: NoiseParams, cap: int | None = None):
    """Ranking pairs of the MLE tournaments, in canonical member order."""
    return tuple(chain_rankings(M) for M in mle_search(K, alpha, cap))


def derive_seed(seed: int, *indices: int) -> int:
    """Mix a base seed with stream indices into an independent 64-bit seed."""
    h = seed & _MASK64
    for v in indices:
        h ^= (v + 0x9E3779B97F4A7C15) & _MASK64
        h = (h * 0xBF58476D1CE4E5B9) & _MASK64
        h ^= h >> 27
        h = (h * 0x94D049BB133111EB) & _MASK64
        h ^= h >> 31
    return h


def sample_tournament(theta: StateOfWorld, alpha: NoiseParams, seed: int) -> Tournament:
    """Draw an observed tournament from the noise channel, cell by cell."""
    rng = random.Random(seed)
    masks = []
    for xa in theta.x:
        mask = 0
        for b0, yb in enumerate(theta.y):
            p_one = (1.0 - alpha.alpha_minus) if xa >= yb else alpha.alpha_plus
            if rng.random() < p_one:
                mask |= 1 << b0
        masks.append(mask)
    return Tournament(len(theta.x), len(theta.y), tuple(masks))


def sample_state(m: int, n: int, seed: int) -> StateOfWorld:
    """Random canonical state: a random column ordering with random per-row prefixes."""
    if m < 1 or n < 1:
        raise InputError("state dimensions must be at least 1x1")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    prefixes = [0]
    acc = 0
    for c in order:
        acc |= 1 << c
        prefixes.append(acc)
    masks = tuple(prefixes[rng.randint(0, n)] for _ in range(m))
    return canonical_state(Tournament(m, n, masks))
