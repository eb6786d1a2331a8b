"""Exact chain editing.

A chain tournament is exactly a tournament whose rows are all prefixes of a
single column ordering: nested neighbourhoods extend to a maximal chain, and
a maximal chain of column subsets is a permutation. The solver therefore
enumerates column orderings of the smaller side (working on the dual when
there are more columns than rows) and, per ordering, lets every row
independently pick a minimum-cost prefix. Every closest chain tournament
arises from some (ordering, per-row optimal prefix) combination, so
collecting the combinations of all optimal orderings, deduplicating and
filtering to the global minimum yields the complete optimum set.

The same engine handles weighted cell costs (exact integers only; no floats
ever enter an argmin) and the completion / deletion variants where edits are
restricted to additions / removals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    Tournament,
    all_tournaments,
    canonical_key,
    dual,
    hamming,
    has_chain_property,
)
from .errors import AmbiguityError, InputError, ResourceCapError

DEFAULT_ENUM_CAP = 8

_DUAL_MODE = {"edit": "edit", "complete": "delete", "delete": "complete"}


@dataclass(frozen=True)
class MinChainSet:
    """All chain tournaments at minimum (restricted) distance from a source."""

    distance: int
    members: tuple[Tournament, ...]


def _check_cap(side: int, cap: int | None) -> int:
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    if side > cap:
        raise ResourceCapError(
            f"exact search enumerates {side}! column orderings which exceeds the "
            f"cap of {cap}; raise the cap or use an interleaving operator"
        )
    return cap


def _orient(K: Tournament, weights, mode: str):
    """Put the smaller side on the columns, flipping mode/weights for the dual."""
    if K.cols <= K.rows:
        return K, weights, mode, False
    wt = None
    if weights is not None:
        wt = [[weights[a0][b0] for a0 in range(K.rows)] for b0 in range(K.cols)]
    return dual(K), wt, _DUAL_MODE[mode], True


def _feasible(mask: int, prefix: int, mode: str) -> bool:
    if mode == "complete":
        return not (mask & ~prefix)
    if mode == "delete":
        return not (prefix & ~mask)
    return True


def _weighted_cost(diff: int, wrow) -> int:
    total = 0
    while diff:
        low = diff & -diff
        total += wrow[low.bit_length() - 1]
        diff ^= low
    return total


def _row_options(mask: int, prefixes, mode: str, wrow=None):
    """Minimum cost and the argmin prefix masks for one row under one ordering."""
    best = None
    argmin: list[int] = []
    for prefix in prefixes:
        if not _feasible(mask, prefix, mode):
            continue
        diff = mask ^ prefix
        cost = _weighted_cost(diff, wrow) if wrow is not None else diff.bit_count()
        if best is None or cost < best:
            best = cost
            argmin = [prefix]
        elif cost == best:
            argmin.append(prefix)
    return best, argmin


def _search_members(K: Tournament, mode: str, weights, cap: int | None):
    """(best cost, set of optimal row-mask tuples) for the oriented matrix."""
    work, wt, work_mode, dualized = _orient(K, weights, mode)
    _check_cap(work.cols, cap)
    n = work.cols
    best_total = None
    members: set[tuple[int, ...]] = set()
    for order in itertools.permutations(range(n)):
        prefixes = [0]
        acc = 0
        for c in order:
            acc |= 1 << c
            prefixes.append(acc)
        total = 0
        per_row: list[list[int]] = []
        for a0, mask in enumerate(work.row_masks):
            wrow = wt[a0] if wt is not None else None
            cost, argmin = _row_options(mask, prefixes, work_mode, wrow)
            # completion keeps the full prefix feasible and deletion the empty
            # one, so argmin is never empty
            total += cost
            per_row.append(argmin)
            if best_total is not None and total > best_total:
                break
        else:
            if best_total is None or total < best_total:
                best_total = total
                members = set(itertools.product(*per_row))
            elif total == best_total:
                members.update(itertools.product(*per_row))
    return best_total, members, work, dualized


def _to_tournaments(members, work: Tournament, dualized: bool) -> tuple[Tournament, ...]:
    out = [Tournament(work.rows, work.cols, masks) for masks in sorted(members)]
    if dualized:
        out = [dual(M) for M in out]
    return tuple(sorted(out, key=canonical_key))


def min_chain_set(K: Tournament, cap: int | None = None) -> MinChainSet:
    """The complete set of chain tournaments closest to K in Hamming distance."""
    distance, members, work, dualized = _search_members(K, "edit", None, cap)
    return MinChainSet(distance, _to_tournaments(members, work, dualized))


def min_chain_distance(K: Tournament, cap: int | None = None) -> int:
    """Minimum Hamming distance from K to any chain tournament."""
    work, _, _, _ = _orient(K, None, "edit")
    _check_cap(work.cols, cap)
    n = work.cols
    best = None
    for order in itertools.permutations(range(n)):
        prefixes = [0]
        acc = 0
        for c in order:
            acc |= 1 << c
            prefixes.append(acc)
        total = 0
        for mask in work.row_masks:
            total += min((mask ^ p).bit_count() for p in prefixes)
            if best is not None and total >= best:
                break
        else:
            best = total
            if best == 0:
                return 0
    return best


def chain_completion(K: Tournament, cap: int | None = None) -> MinChainSet:
    """Closest chain tournaments reachable by edge additions only."""
    distance, members, work, dualized = _search_members(K, "complete", None, cap)
    return MinChainSet(distance, _to_tournaments(members, work, dualized))


def chain_deletion(K: Tournament, cap: int | None = None) -> MinChainSet:
    """Closest chain tournaments reachable by edge removals only."""
    distance, members, work, dualized = _search_members(K, "delete", None, cap)
    return MinChainSet(distance, _to_tournaments(members, work, dualized))


def _check_weights(K: Tournament, weights) -> list[list[int]]:
    rows = [list(r) for r in weights]
    if len(rows) != K.rows or any(len(r) != K.cols for r in rows):
        raise InputError("weight matrix must match the tournament dimensions")
    for r in rows:
        for w in r:
            if not isinstance(w, int) or isinstance(w, bool) or w <= 0:
                raise InputError("weights must be strictly positive integers")
    return rows


def weighted_min_chain(K: Tournament, weights, cap: int | None = None) -> Tournament:
    """The unique chain tournament minimising the weighted Hamming distance.

    Weights must be strictly positive integers so every comparison is exact.
    A tied optimum raises AmbiguityError listing the tied tournaments; weights
    built by match_pref.weights_for can never tie.
    """
    wt = _check_weights(K, weights)
    _, members, work, dualized = _search_members(K, "edit", wt, cap)
    out = _to_tournaments(members, work, dualized)
    if len(out) != 1:
        listing = "; ".join(str(M.cells) for M in out)
        raise AmbiguityError(f"weighted argmin is not unique: {listing}")
    return out[0]


def swap_rows(K: Tournament, a1: int, a2: int) -> Tournament:
    """Exchange two rows."""
    K._check_row(a1)
    K._check_row(a2)
    masks = list(K.row_masks)
    masks[a1 - 1], masks[a2 - 1] = masks[a2 - 1], masks[a1 - 1]
    return Tournament(K.rows, K.cols, tuple(masks))


def _extends_row_order(K: Tournament, M: Tournament) -> bool:
    for i in range(K.rows):
        for j in range(K.rows):
            if i == j:
                continue
            ki, kj = K.row_masks[i], K.row_masks[j]
            if ki & kj == ki and M.row_masks[i] & M.row_masks[j] != M.row_masks[i]:
                return False
    return True


def monotone_min_chain(K: Tournament, cap: int | None = None) -> Tournament:
    """The canonically least closest chain tournament whose row order extends K's.

    At least one member of the optimum set extends the neighbourhood-subset
    relation of K (successive row swaps repair any inversion without raising
    the distance), so the filter below is never empty.
    """
    qualifying = [M for M in min_chain_set(K, cap).members if _extends_row_order(K, M)]
    if not qualifying:
        raise AssertionError("no order-extending optimum exists; solver invariant broken")
    return qualifying[0]


def brute_force_min_chain(K: Tournament) -> MinChainSet:
    """Independent oracle: scan all 2^(mn) matrices for the closest chains."""
    if K.rows * K.cols > 16:
        raise ResourceCapError("brute force is limited to 16 cells")
    best = None
    members: list[Tournament] = []
    for cand in all_tournaments(K.rows, K.cols):
        if not has_chain_property(cand):
            continue
        d = hamming(K, cand)
        if best is None or d < best:
            best = d
            members = [cand]
        elif d == best:
            members.append(cand)
    return MinChainSet(best, tuple(sorted(members, key=canonical_key)))


def all_chain_tournaments(m: int, n: int, cap: int | None = None) -> tuple[Tournament, ...]:
    """Every m-by-n chain tournament, canonically ordered.

    Generated from column orderings and per-row prefixes on the smaller side,
    so the cap applies to min(m, n) exactly as for the editing search.
    """
    dualized = n > m
    rows, cols = (n, m) if dualized else (m, n)
    _check_cap(cols, cap)
    seen: set[tuple[int, ...]] = set()
    for order in itertools.permutations(range(cols)):
        prefixes = [0]
        acc = 0
        for c in order:
            acc |= 1 << c
            prefixes.append(acc)
        for combo in itertools.product(prefixes, repeat=rows):
            seen.add(combo)
    out = [Tournament(rows, cols, masks) for masks in seen]
    if dualized:
        out = [dual(M) for M in out]
    return tuple(sorted(out, key=canonical_key))
