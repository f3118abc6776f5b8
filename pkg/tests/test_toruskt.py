import json

import pytest

from crystalk.errors import ScopeError
from crystalk.intlin import IntMatrix, inv_unimodular, random_unimodular
from crystalk.lattice import ActionClass, canonical_matrix, classify, validate_involution
from crystalk.repring import RModuleSum
from crystalk.toruskt import (
    CohomologyAction,
    FixedSetDescription,
    ScopeFlag,
    build_report,
    cohomology_invariants,
    collect_torsion_flags,
    fixed_set,
    group_cstar_k,
    hexagon_rank_sum,
    integral_k_theory,
    k_ranks_delocalized,
    kunneth_assembly,
    twisted_point_coefficient_ranks,
    twisted_ranks,
)


def lat(rows):
    return validate_involution(IntMatrix.from_rows(rows))


def split_lat(n, r):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1 if i < r else -1
    return lat(rows)


MINUS_1 = lat([[-1]])
PLUS_1 = lat([[1]])
SWAP = lat([[0, 1], [1, 0]])
PM = split_lat(2, 1)


class TestFixedSet:
    def test_point_reflection_of_circle(self):
        # solutions of 2x in Z on the circle: {0, 1/2}
        assert fixed_set(MINUS_1) == FixedSetDescription(dim=0, components=2)

    def test_swap_diagonal_circle(self):
        assert fixed_set(SWAP) == FixedSetDescription(dim=1, components=1)

    def test_trivial_action(self):
        assert fixed_set(lat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == FixedSetDescription(
            dim=3, components=1
        )

    def test_component_count_is_power_of_two(self, small_corpora):
        for corpus in small_corpora.values():
            for member in corpus.members:
                desc = fixed_set(validate_involution(member.matrix))
                assert desc.components == 2**member.invariants.b
                assert desc.dim == member.invariants.fixed_rank


class TestCohomologyInvariants:
    def test_split_reflection(self):
        assert cohomology_invariants(PM) == CohomologyAction(
            even_inv=1, odd_inv=1, even_anti=1, odd_anti=1
        )

    def test_point_reflection(self):
        assert cohomology_invariants(lat([[-1, 0], [0, -1]])) == CohomologyAction(
            even_inv=2, odd_inv=0, even_anti=0, odd_anti=2
        )

    def test_trivial_action(self):
        for n in (1, 2, 5):
            act = cohomology_invariants(lat([[1 if i == j else 0 for j in range(n)] for i in range(n)]))
            assert (act.even_inv, act.odd_inv) == (2 ** (n - 1), 2 ** (n - 1))
            assert (act.even_anti, act.odd_anti) == (0, 0)

    def test_halves_sum_correctly(self, small_corpora):
        for n, corpus in small_corpora.items():
            for member in corpus.members:
                act = cohomology_invariants(validate_involution(member.matrix))
                assert act.even_inv + act.even_anti == 2 ** (n - 1)
                assert act.odd_inv + act.odd_anti == 2 ** (n - 1)


class TestTwistedRanks:
    def test_point_coefficients(self):
        assert twisted_point_coefficient_ranks() == (1, 0)

    def test_infinite_dihedral(self):
        assert twisted_ranks(MINUS_1) == (3, 0)

    def test_trivial_circle_hexagon(self):
        # the recipe gives (1, 1) here; the enforced check is exactness
        assert twisted_ranks(PLUS_1) == (1, 1)
        assert hexagon_rank_sum(PLUS_1) == 0

    def test_hexagon_vanishes_on_corpora(self, small_corpora):
        for corpus in small_corpora.values():
            for member in corpus.members:
                assert hexagon_rank_sum(validate_involution(member.matrix)) == 0


class TestDelocalizedRanks:
    def test_split_closed_form(self):
        for n in range(2, 9):
            for r in range(1, n):
                report = k_ranks_delocalized(split_lat(n, r))
                assert report.ranks == (3 * 2 ** (n - 2), 3 * 2 ** (n - 2))

    def test_free_closed_form(self):
        for n in range(1, 9):
            report = k_ranks_delocalized(lat([[-1 if i == j else 0 for j in range(n)] for i in range(n)]))
            assert report.ranks == (3 * 2 ** (n - 1), 0)

    def test_swap(self):
        assert k_ranks_delocalized(SWAP).ranks == (2, 2)

    def test_conjugation_invariance(self, small_corpora):
        for corpus in small_corpora.values():
            by_class = {}
            for member in corpus.members:
                key = (member.invariants.a, member.invariants.b, member.invariants.c)
                ranks = k_ranks_delocalized(validate_involution(member.matrix)).ranks
                by_class.setdefault(key, set()).add(ranks)
            for key, values in by_class.items():
                assert len(values) == 1, (key, values)


class TestKunnethAssembly:
    def test_rank_two_split(self):
        report = kunneth_assembly(PM)
        assert report.ranks == (3, 3)
        assert report.scope_flag is ScopeFlag.INTEGRAL_CERTIFIED
        assert len(report.torsion_free_certificate.steps) == 5

    def test_rank_three(self):
        assert kunneth_assembly(split_lat(3, 2)).ranks == (6, 6)

    def test_step_names_in_order(self):
        names = [s.step for s in kunneth_assembly(PM).torsion_free_certificate.steps]
        assert names == [
            "decomposition",
            "localized_kunneth",
            "tor_vanishing",
            "zt_argument",
            "rank_formula",
        ]

    def test_out_of_scope(self):
        with pytest.raises(ScopeError):
            kunneth_assembly(SWAP)
        with pytest.raises(ScopeError):
            kunneth_assembly(PLUS_1)
        with pytest.raises(ScopeError):
            kunneth_assembly(MINUS_1)

    def test_certificate_is_torsion_free(self):
        for n in range(2, 7):
            for r in range(1, n):
                trace = kunneth_assembly(split_lat(n, r)).torsion_free_certificate
                flags = collect_torsion_flags(trace)
                assert flags and not any(flags)

    def test_certificate_replays_identically(self):
        first = kunneth_assembly(split_lat(4, 2))
        second = kunneth_assembly(split_lat(4, 2))
        assert first == second
        assert first.torsion_free_certificate.as_dict() == (
            second.torsion_free_certificate.as_dict()
        )

    def test_certificate_depends_only_on_invariants(self):
        p = random_unimodular(3, seed=23, steps=12)
        conj = validate_involution(
            p @ split_lat(3, 1).matrix @ inv_unimodular(p)
        )
        assert kunneth_assembly(conj) == kunneth_assembly(split_lat(3, 1))

    def test_matches_delocalized_route(self, small_corpora):
        for corpus in small_corpora.values():
            for member in corpus.members:
                l = validate_involution(member.matrix)
                if classify(l) is ActionClass.MIXED_SPLIT:
                    assert kunneth_assembly(l).ranks == k_ranks_delocalized(l).ranks


class TestIntegralKTheory:
    def test_infinite_dihedral(self):
        report = integral_k_theory(MINUS_1)
        assert report.ranks == (3, 0)
        assert report.scope_flag is ScopeFlag.INTEGRAL_CERTIFIED

    def test_split_rank_four(self):
        assert integral_k_theory(split_lat(4, 1)).ranks == (12, 12)

    def test_swap_is_rational_only(self):
        report = integral_k_theory(SWAP)
        assert report.ranks == (2, 2)
        assert report.scope_flag is ScopeFlag.RATIONAL_ONLY
        assert report.module_structure is None
        assert report.torsion_free_certificate is None

    def test_trivial_module_structure(self):
        for n in (1, 3):
            report = integral_k_theory(lat([[1 if i == j else 0 for j in range(n)] for i in range(n)]))
            assert report.module_structure == (
                RModuleSum(free=2 ** (n - 1)),
                RModuleSum(free=2 ** (n - 1)),
            )
            assert report.ranks == (2**n, 2**n)

    def test_free_module_structure(self):
        report = integral_k_theory(lat([[-1, 0], [0, -1]]))
        assert report.module_structure == (
            RModuleSum(triv=2, sign=4),
            RModuleSum(),
        )
        assert report.ranks == (6, 0)

    def test_free_class_has_no_odd_part(self, small_corpora):
        for n, corpus in small_corpora.items():
            for member in corpus.members:
                if member.invariants.b == n:
                    assert integral_k_theory(validate_involution(member.matrix)).k1 == 0


class TestGroupCstarK:
    def test_point_reflection_of_torus(self):
        report = group_cstar_k(lat([[-1, 0], [0, -1]]))
        assert report.ranks == (6, 0)

    def test_split_reflection(self):
        assert group_cstar_k(PM).ranks == (3, 3)

    def test_trivial_actions(self):
        for n in (1, 2, 4):
            report = group_cstar_k(lat([[1 if i == j else 0 for j in range(n)] for i in range(n)]))
            assert report.ranks == (2**n, 2**n)

    def test_duality_preserves_certified_ranks(self, small_corpora):
        for corpus in small_corpora.values():
            for member in corpus.members:
                l = validate_involution(member.matrix)
                torus = integral_k_theory(l)
                cstar = group_cstar_k(l)
                if torus.torsion_free_certificate is not None:
                    assert cstar.ranks == torus.ranks
                    assert cstar.scope_flag is torus.scope_flag


class TestReports:
    def test_schema_fields(self):
        report = build_report(PM)
        for key in (
            "spec_version",
            "input",
            "invariants",
            "class",
            "fixed_set",
            "ranks",
            "scope_flag",
            "certificate",
        ):
            assert key in report
        assert report["spec_version"] == "1.0"
        assert report["class"] == "MixedSplit"
        assert report["ranks"] == {"k0": 3, "k1": 3}

    def test_json_roundtrip_identity(self):
        for l in (PM, SWAP, MINUS_1, PLUS_1):
            for kind in ("torus", "cstar"):
                report = build_report(l, kind=kind)
                assert json.loads(json.dumps(report)) == report

    def test_rational_only_reports_carry_a_caveat(self):
        report = build_report(SWAP, kind="cstar")
        assert report["scope_flag"] == "RationalOnly"
        assert any("closed form" in note for note in report["notes"])

    def test_module_structure_only_for_extreme_classes(self):
        assert "module_structure" in build_report(PLUS_1)
        assert "module_structure" in build_report(MINUS_1)
        assert "module_structure" not in build_report(PM)
        assert "module_structure" not in build_report(SWAP)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            build_report(PM, kind="other")

    def test_reports_conjugation_invariant_outside_input_echo(self, small_corpora):
        for corpus in small_corpora.values():
            seen: dict[tuple[int, int, int], dict] = {}
            for member in corpus.members:
                report = build_report(validate_involution(member.matrix), kind="cstar")
                report.pop("input")
                key = (member.invariants.a, member.invariants.b, member.invariants.c)
                assert seen.setdefault(key, report) == report, key
