"""Named ranking operators and their registry.

Every operator maps a tournament to a pair of total preorders (weakest rank
first on both sides). Operators backed by exact chain editing also expose the
chain tournament they selected; the cardinality interleaving operator exposes
its greedy chain for edit-cost reporting only.

The canonical total order used wherever an arbitrary tie-break over
tournaments is needed is row-major lexicographic on cells (smaller size
first), one global reproducible convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from . import match_pref as mp
from .chain_edit import min_chain_set, monotone_min_chain
from .core import (
    RankingPair,
    Tournament,
    canonical_key,
    chain_rankings,
    dual,
    preorder_from_scores,
)
from .errors import InputError
from .interleave import ci_selection, greedy_chain_tournament, interleave

OPERATOR_NAMES = (
    "count",
    "chain-min-lex",
    "chain-min-mon",
    "chain-min-dual",
    "match-pref:<row-major|col-major|file.json>",
    "ci",
)


@dataclass(frozen=True)
class OperatorSpec:
    """A named operator; evaluate is total and deterministic within the size cap."""

    name: str
    evaluate: Callable[[Tournament], RankingPair]
    choice: Callable[[Tournament], Tournament] | None = None
    edit_chain: Callable[[Tournament], Tournament] | None = None


def _well_formed(name: str, fn: Callable[[Tournament], RankingPair]):
    def evaluate(K: Tournament) -> RankingPair:
        pair = fn(K)
        if pair.a_order.players != frozenset(range(1, K.rows + 1)):
            raise AssertionError(f"operator {name} returned a malformed A ranking")
        if pair.b_order.players != frozenset(range(1, K.cols + 1)):
            raise AssertionError(f"operator {name} returned a malformed B ranking")
        return pair

    return evaluate


def phi_count(K: Tournament) -> RankingPair:
    """Rank rows by number of wins and columns by (descending) number of losses."""
    a_order = preorder_from_scores(
        range(1, K.rows + 1), lambda a: K.row_masks[a - 1].bit_count()
    )
    b_order = preorder_from_scores(
        range(1, K.cols + 1),
        lambda b: K.col_masks[b - 1].bit_count(),
        descending=True,
    )
    return RankingPair(a_order, b_order)


def canonical_min_choice(K: Tournament, cap: int | None = None) -> Tournament:
    """The canonically least closest chain tournament."""
    return min_chain_set(K, cap).members[0]


def phi_chain_min_lex(K: Tournament, cap: int | None = None) -> RankingPair:
    return chain_rankings(canonical_min_choice(K, cap))


def phi_chain_min_mon(K: Tournament, cap: int | None = None) -> RankingPair:
    return chain_rankings(monotone_min_chain(K, cap))


def phi_ci(K: Tournament) -> RankingPair:
    pair, _ = interleave(K, ci_selection())
    return pair


def count_operator() -> OperatorSpec:
    return OperatorSpec("count", _well_formed("count", phi_count))


def chain_min_lex_operator(cap: int | None = None) -> OperatorSpec:
    choice = lambda K: canonical_min_choice(K, cap)
    return OperatorSpec(
        "chain-min-lex",
        _well_formed("chain-min-lex", lambda K: chain_rankings(choice(K))),
        choice=choice,
        edit_chain=choice,
    )


def chain_min_mon_operator(cap: int | None = None) -> OperatorSpec:
    choice = lambda K: monotone_min_chain(K, cap)
    return OperatorSpec(
        "chain-min-mon",
        _well_formed("chain-min-mon", lambda K: chain_rankings(choice(K))),
        choice=choice,
        edit_chain=choice,
    )


def match_pref_operator(pref: mp.MatchPreference, cap: int | None = None, label: str = "") -> OperatorSpec:
    name = label or "match-pref"
    choice = lambda K: mp.select_match_pref(K, pref, cap)
    return OperatorSpec(
        name,
        _well_formed(name, lambda K: chain_rankings(choice(K))),
        choice=choice,
        edit_chain=choice,
    )


def ci_operator() -> OperatorSpec:
    greedy = lambda K: greedy_chain_tournament(K, ci_selection())
    return OperatorSpec("ci", _well_formed("ci", phi_ci), edit_chain=greedy)


def dual_symmetrized(base: OperatorSpec) -> OperatorSpec:
    """Wrap a choice-function operator so duality holds.

    Exactly one of K and its dual is canonical (smaller under the global
    order). Canonical tournaments keep the base choice; the others inherit
    the dual of the base choice on their dual. The result still picks a
    closest chain tournament and its column ranking of K always equals its
    row ranking of the dual.
    """
    if base.choice is None:
        raise InputError(
            f"operator {base.name} does not expose a choice function; "
            "cannot dual-symmetrize"
        )

    def choice(K: Tournament) -> Tournament:
        if canonical_key(K) < canonical_key(dual(K)):
            return base.choice(K)
        return dual(base.choice(dual(K)))

    name = f"dual-sym({base.name})"
    return OperatorSpec(
        name,
        _well_formed(name, lambda K: chain_rankings(choice(K))),
        choice=choice,
        edit_chain=choice,
    )


def _load_explicit_pref(path: str) -> mp.MatchPreference:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            pairs = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read match-preference file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"match-preference file {path} is not valid JSON: {exc}") from exc
    if not isinstance(pairs, list) or not all(
        isinstance(p, list) and len(p) == 2 for p in pairs
    ):
        raise InputError("match-preference file must hold a JSON list of [row, col] pairs")
    return mp.MatchPreference.from_pairs(pairs)


def resolve_operator(name: str, cap: int | None = None) -> OperatorSpec:
    """Look up an operator by CLI name."""
    if name == "count":
        return count_operator()
    if name == "chain-min-lex":
        return chain_min_lex_operator(cap)
    if name == "chain-min-mon":
        return chain_min_mon_operator(cap)
    if name == "chain-min-dual":
        spec = dual_symmetrized(chain_min_lex_operator(cap))
        return OperatorSpec("chain-min-dual", spec.evaluate, spec.choice, spec.edit_chain)
    if name == "ci":
        return ci_operator()
    if name.startswith("match-pref:"):
        rest = name.split(":", 1)[1]
        if rest in ("row-major", "row_major", "lex"):
            pref = mp.MatchPreference.row_major()
        elif rest in ("col-major", "col_major", "colex"):
            pref = mp.MatchPreference.col_major()
        else:
            pref = _load_explicit_pref(rest)
        return match_pref_operator(pref, cap, label=name)
    raise InputError(
        f"unknown operator {name!r}; known operators: {', '.join(OPERATOR_NAMES)}"
    )
