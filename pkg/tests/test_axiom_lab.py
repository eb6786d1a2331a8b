import json

import pytest

from chainrank import RankingPair, TotalPreorder, Tournament, phi_count
from chainrank.axiom_lab import (
    ANON_COUNTEREXAMPLE,
    CHAIN_DEF_IMPOSSIBILITY,
    IIM_PAIR,
    POS_RESP_COUNTEREXAMPLE,
    Scope,
    check_anon,
    check_chain_def,
    check_chain_min,
    check_dual,
    check_iim,
    check_mon,
    check_pos_resp,
    impossibility_suite,
    recheck,
)
from chainrank.operators import (
    OperatorSpec,
    chain_min_lex_operator,
    chain_min_mon_operator,
    ci_operator,
    count_operator,
)

from helpers import EX2, TABLE1


def reversed_count_operator() -> OperatorSpec:
    """Deliberately broken fixture: ranks more wins lower."""

    def evaluate(K):
        base = phi_count(K)
        return RankingPair(
            TotalPreorder(tuple(reversed(base.a_order.ranks))),
            TotalPreorder(tuple(reversed(base.b_order.ranks))),
        )

    return OperatorSpec("rev-count", evaluate)


class TestAnon:
    def test_chain_min_lex_fails_on_diagonal(self):
        verdict = check_anon(chain_min_lex_operator(), Scope(tournaments=(ANON_COUNTEREXAMPLE,)))
        assert not verdict.holds
        assert verdict.witness["sigma"] == [2, 1]
        assert recheck(chain_min_lex_operator(), verdict)

    def test_paper_witness_also_violates(self):
        # swapping both sides maps the diagonal to itself, yet the operator
        # must order the two rows strictly
        from chainrank.axiom_lab import anon_instance_violation

        bad = anon_instance_violation(chain_min_lex_operator(), ANON_COUNTEREXAMPLE, (2, 1), (2, 1))
        assert bad is not None

    def test_ci_holds_exhaustive_2x2(self):
        verdict = check_anon(ci_operator(), Scope(exhaustive=((2, 2),)))
        assert verdict.holds
        # 16 tournaments x 2! row perms x 2! column perms
        assert verdict.checked == 64

    def test_count_holds_exhaustive_2x2(self):
        assert check_anon(count_operator(), Scope(exhaustive=((2, 2),))).holds


class TestDual:
    def test_ci_holds_small(self):
        verdict = check_dual(ci_operator(), Scope(exhaustive=((2, 2), (2, 3))))
        assert verdict.holds
        assert verdict.checked == 16 + 64

    def test_count_holds_2x2(self):
        assert check_dual(count_operator(), Scope(exhaustive=((2, 2),))).holds

    def test_chain_min_lex_verdict_recorded_and_consistent(self):
        verdict = check_dual(chain_min_lex_operator(), Scope(exhaustive=((2, 2),)))
        if not verdict.holds:
            assert recheck(chain_min_lex_operator(), verdict)


class TestIim:
    def test_chain_min_fails_on_shared_rows_pair(self):
        for spec in (chain_min_lex_operator(), chain_min_mon_operator()):
            verdict = check_iim(spec, Scope(), pairs=((IIM_PAIR[0], IIM_PAIR[1], 1, 2),))
            assert not verdict.holds

    def test_count_holds_exhaustive(self):
        verdict = check_iim(count_operator(), Scope(exhaustive=((3, 2),)))
        assert verdict.holds

    def test_ci_fails_on_shared_rows_pair(self):
        verdict = check_iim(ci_operator(), Scope(), pairs=((IIM_PAIR[0], IIM_PAIR[1], 1, 2),))
        assert not verdict.holds

    def test_non_identical_rows_rejected(self):
        from chainrank.axiom_lab import iim_instance_violates

        with pytest.raises(Exception):
            iim_instance_violates(count_operator(), IIM_PAIR[0], IIM_PAIR[1], 1, 3)

    def test_sampled_scope(self):
        scope = Scope(random_sizes=((3, 3),), random_count=60, seed=5)
        bad = check_iim(chain_min_lex_operator(), scope)
        assert not bad.holds
        assert recheck(chain_min_lex_operator(), bad)
        assert check_iim(count_operator(), scope).holds

    def test_sampled_scope_skips_single_row_sizes(self):
        scope = Scope(random_sizes=((1, 3),), random_count=10, seed=5)
        assert check_iim(count_operator(), scope).holds


class TestMon:
    def test_ci_holds_2x3(self):
        assert check_mon(ci_operator(), Scope(exhaustive=((2, 3),))).holds

    def test_chain_min_mon_holds_2x3(self):
        assert check_mon(chain_min_mon_operator(), Scope(exhaustive=((2, 3),))).holds

    def test_reversed_count_fails_with_witness(self):
        verdict = check_mon(reversed_count_operator(), Scope(exhaustive=((2, 2),)))
        assert not verdict.holds
        assert recheck(reversed_count_operator(), verdict)


class TestPosResp:
    def test_chain_min_fails_on_unique_repair_instance(self):
        verdict = check_pos_resp(
            chain_min_lex_operator(), Scope(tournaments=(POS_RESP_COUNTEREXAMPLE,))
        )
        assert not verdict.holds
        assert verdict.witness["pair"] == [1, 2]
        assert verdict.witness["cell"] == [2, 3]

    def test_count_holds_exhaustive_2x2(self):
        assert check_pos_resp(count_operator(), Scope(exhaustive=((2, 2),))).holds

    def test_ci_fails_within_search_scope(self):
        scope = Scope(exhaustive=((2, 2), (3, 2), (2, 3), (4, 2)))
        verdict = check_pos_resp(ci_operator(), scope)
        assert not verdict.holds
        assert recheck(ci_operator(), verdict)


class TestChainMinAndDef:
    def test_lex_satisfies_chain_min_by_construction(self):
        assert check_chain_min(chain_min_lex_operator(), EX2).holds

    def test_count_fails_chain_min_on_example2(self):
        verdict = check_chain_min(count_operator(), EX2)
        assert not verdict.holds
        assert recheck(count_operator(), verdict)

    def test_ci_on_table1_matches_direct_membership(self):
        from chainrank import chain_rankings, min_chain_set, phi_ci

        verdict = check_chain_min(ci_operator(), TABLE1)
        direct = phi_ci(TABLE1) in {chain_rankings(M) for M in min_chain_set(TABLE1).members}
        assert verdict.holds == direct

    def test_ci_chain_def_everywhere(self):
        assert check_chain_def(ci_operator(), EX2).holds
        assert check_chain_def(ci_operator(), TABLE1).holds

    def test_count_fails_chain_def_on_impossibility_matrix(self):
        verdict = check_chain_def(count_operator(), CHAIN_DEF_IMPOSSIBILITY)
        assert not verdict.holds
        assert verdict.witness["rank_counts"] == [3, 1]

    def test_flat_operator_chain_def(self):
        flat = OperatorSpec(
            "flat",
            lambda K: RankingPair(
                TotalPreorder.from_ranks([set(range(1, K.rows + 1))]),
                TotalPreorder.from_ranks([set(range(1, K.cols + 1))]),
            ),
        )
        assert check_chain_def(flat, EX2).holds


class TestVerdictPlumbing:
    def test_json_round_trip(self):
        verdict = check_anon(chain_min_lex_operator(), Scope(tournaments=(ANON_COUNTEREXAMPLE,)))
        data = json.loads(json.dumps(verdict.to_json()))
        assert data["axiom"] == "anon" and data["holds"] is False
        assert Tournament.from_cells(data["witness"]["tournament"]) == ANON_COUNTEREXAMPLE

    def test_deterministic(self):
        scope = Scope(exhaustive=((2, 2),))
        assert check_anon(ci_operator(), scope) == check_anon(ci_operator(), scope)

    def test_scope_descriptions(self):
        scope = Scope(exhaustive=((2, 2),), random_sizes=((3, 3),), random_count=5, seed=1)
        text = scope.describe()
        assert "exhaustive 2x2" in text and "5 seeded random" in text

    def test_random_scope_reproducible(self):
        scope = Scope(random_sizes=((3, 3),), random_count=4, seed=77)
        assert list(scope.iter_tournaments()) == list(scope.iter_tournaments())


class TestImpossibilitySuite:
    def test_suite_reproduces_expected_verdicts(self):
        report = impossibility_suite()
        assert report.ok, [f"{r.label}/{r.operator}/{r.axiom}" for r in report.failures]

    def test_ci_verdict_row(self):
        report = impossibility_suite()
        ci_rows = {
            row.axiom: row.verdict.holds for row in report.rows if row.operator == "ci"
        }
        assert ci_rows == {
            "chain-def": True,
            "anon": True,
            "dual": True,
            "mon": True,
            "iim": False,
            "pos-resp": False,
        }

    def test_every_failure_witness_revalidates(self):
        from chainrank.operators import resolve_operator

        report = impossibility_suite()
        for row in report.rows:
            if not row.verdict.holds and row.verdict.witness:
                assert recheck(resolve_operator(row.operator), row.verdict)

    def test_unique_one_edit_repairs_behind_the_iim_and_posresp_instances(self):
        from chainrank import min_chain_set

        got1 = min_chain_set(IIM_PAIR[0])
        got2 = min_chain_set(IIM_PAIR[1])
        assert got1.distance == got2.distance == 1
        assert got1.members == (Tournament.from_cells([[0, 0, 0], [0, 1, 0], [0, 1, 1]]),)
        assert got2.members == (Tournament.from_cells([[1, 0, 0], [0, 0, 0], [1, 0, 1]]),)
        got3 = min_chain_set(POS_RESP_COUNTEREXAMPLE)
        assert got3.distance == 1
        assert got3.members == (
            Tournament.from_cells([[1, 1, 1], [1, 1, 1], [0, 0, 1], [0, 0, 1]]),
        )

    def test_anon_failure_is_structural(self):
        # no optimum for the diagonal has equal rows, so every choice of
        # optimum breaks label invariance
        from chainrank import min_chain_set

        for M in min_chain_set(ANON_COUNTEREXAMPLE).members:
            assert M.row_masks[0] != M.row_masks[1]
