import itertools
import json

import pytest

from crystalk.errors import TableIntegrityError
from crystalk.repring import (
    CLASS_ORDER,
    DYADIC,
    MIN_MINUS,
    MIN_PLUS,
    PrimeSite,
    RModuleSum,
    TABLE_ENV_VAR,
    load_tables,
    localize,
    mult_one_minus_t,
    odd_minus,
    odd_plus,
    rank,
    tensor,
    tor1,
)
from crystalk.oracle import resolution_module_class

FREE = RModuleSum(free=1)
TRIV = RModuleSum(triv=1)
SIGN = RModuleSum(sign=1)
TOR = RModuleSum(tor2=1)
ZERO = RModuleSum()

BASIS = {"FreeR": FREE, "TrivZ": TRIV, "SignZ": SIGN, "TorF2": TOR}

ALL_SITES = (MIN_PLUS, MIN_MINUS, DYADIC, odd_plus(3), odd_minus(3), odd_plus(5))
GOOD_SITES = tuple(s for s in ALL_SITES if s.kind != "Dyadic")


class TestRModuleSum:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            RModuleSum(free=-1)

    def test_direct_sum(self):
        assert TRIV + SIGN + TRIV == RModuleSum(triv=2, sign=1)

    def test_str(self):
        assert str(RModuleSum(free=2, tor2=1)) == "FreeR^2 + TorF2^1"
        assert str(ZERO) == "0"


class TestPrimeSite:
    def test_odd_sites_need_odd_primes(self):
        with pytest.raises(ValueError):
            odd_plus(4)
        with pytest.raises(ValueError):
            odd_minus(2)
        with pytest.raises(ValueError):
            odd_plus(9)

    def test_minimal_sites_take_no_prime(self):
        with pytest.raises(ValueError):
            PrimeSite("MinPlus", 3)

    def test_branch_membership(self):
        assert MIN_PLUS.contains_plus_ideal and not MIN_PLUS.contains_minus_ideal
        assert DYADIC.contains_plus_ideal and DYADIC.contains_minus_ideal
        assert odd_minus(7).contains_minus_ideal

    def test_labels(self):
        assert odd_plus(3).label() == "OddPlus(3)"
        assert DYADIC.label() == "Dyadic"


class TestRank:
    def test_ring_has_rank_two(self):
        assert rank(FREE) == 2

    def test_free_factor_structure_at_codimension_one(self):
        # J^(2^0) + I^(2^1) for a one-dimensional free factor
        assert rank(RModuleSum(triv=1, sign=2)) == 3

    def test_torsion_has_rank_zero(self):
        assert rank(RModuleSum(tor2=3)) == 0


class TestTensorAndTor:
    def test_matches_resolution_verifier_everywhere(self):
        for x, y in itertools.product(CLASS_ORDER, repeat=2):
            assert tensor(BASIS[x], BASIS[y]).as_dict() == RModuleSum.from_dict(
                resolution_module_class(x, y, 0)
            ).as_dict(), (x, y)
            assert tor1(BASIS[x], BASIS[y]).as_dict() == RModuleSum.from_dict(
                resolution_module_class(x, y, 1)
            ).as_dict(), (x, y)

    def test_ring_acts_as_identity(self):
        for m in BASIS.values():
            assert tensor(FREE, m) == m

    def test_opposite_rank_one_classes_collide_in_torsion(self):
        assert tensor(TRIV, SIGN) == TOR

    def test_sign_squares_to_sign(self):
        # R/(t+1) (x) R/(t+1) = R/(t+1): t still acts by -1 on the product
        assert tensor(SIGN, SIGN) == SIGN

    def test_tor_vanishes_against_the_ring(self):
        for m in BASIS.values():
            assert tor1(FREE, m) == ZERO
            assert tor1(m, FREE) == ZERO

    def test_tor_of_trivial_with_itself(self):
        assert tor1(TRIV, TRIV) == TOR

    def test_tor_of_opposite_classes_vanishes(self):
        assert tor1(TRIV, SIGN) == ZERO

    def test_symmetry(self):
        for x, y in itertools.combinations(CLASS_ORDER, 2):
            assert tor1(BASIS[x], BASIS[y]) == tor1(BASIS[y], BASIS[x])

    def test_bilinearity(self):
        m = RModuleSum(free=2, triv=1)
        n = RModuleSum(sign=3, tor2=1)
        expected = ZERO
        for name_x, mult_x in m.as_dict().items():
            for name_y, mult_y in n.as_dict().items():
                expected = expected + tensor(BASIS[name_x], BASIS[name_y]).scale(
                    mult_x * mult_y
                )
        assert tensor(m, n) == expected


class TestLocalize:
    def test_sign_survives_on_its_branch(self):
        shape = localize(SIGN, MIN_MINUS)
        assert (shape.free_rank, shape.torsion_flag) == (1, False)

    def test_trivial_dies_on_the_opposite_branch(self):
        assert localize(TRIV, MIN_MINUS).free_rank == 0

    def test_torsion_dies_at_odd_sites(self):
        shape = localize(TOR, odd_plus(3))
        assert (shape.free_rank, shape.torsion_flag) == (0, False)

    def test_torsion_survives_only_at_the_dyadic_point(self):
        for site in ALL_SITES:
            flag = localize(TOR, site).torsion_flag
            assert flag == (site.kind == "Dyadic")

    def test_dyadic_keeps_rank_one_classes_torsion_free(self):
        for m in (TRIV, SIGN, FREE):
            shape = localize(m, DYADIC)
            assert shape.free_rank == 1
            assert not shape.torsion_flag
        assert "Z-rank 2" in localize(FREE, DYADIC).note

    def test_odd_sites_independent_of_prime(self):
        for m in BASIS.values():
            a = localize(m, odd_plus(3))
            b = localize(m, odd_plus(5))
            assert (a.free_rank, a.torsion_flag) == (b.free_rank, b.torsion_flag)

    def test_additive_over_sums(self):
        m = RModuleSum(free=2, triv=3, sign=5, tor2=7)
        for site in ALL_SITES:
            total = sum(
                m.multiplicity(name) * localize(BASIS[name], site).free_rank
                for name in CLASS_ORDER
            )
            assert localize(m, site).free_rank == total

    def test_kunneth_compatibility_at_good_sites(self):
        for x, y in itertools.product(CLASS_ORDER, repeat=2):
            for site in GOOD_SITES:
                product_rank = (
                    localize(BASIS[x], site).free_rank * localize(BASIS[y], site).free_rank
                )
                assert localize(tensor(BASIS[x], BASIS[y]), site).free_rank == product_rank, (
                    x,
                    y,
                    site.label(),
                )


class TestMultOneMinusT:
    def test_on_the_ring(self):
        split = mult_one_minus_t(FREE)
        assert split.kernel == TRIV
        assert split.image == SIGN

    def test_on_trivial(self):
        split = mult_one_minus_t(TRIV)
        assert split.kernel == TRIV
        assert split.image == ZERO

    def test_on_sign_acts_as_doubling(self):
        split = mult_one_minus_t(SIGN)
        assert split.kernel == ZERO
        assert split.image == SIGN
        assert split.image_indices == (("SignZ", 2),)

    def test_on_torsion(self):
        split = mult_one_minus_t(TOR)
        assert split.kernel == TOR
        assert split.image == ZERO

    def test_vanishes_on_trivial_components_at_plus_sites(self):
        # localized at any site containing (t - 1), the endomorphism is
        # zero on trivial-class components: its image localizes to zero
        split = mult_one_minus_t(RModuleSum(triv=4))
        for site in (MIN_PLUS, DYADIC, odd_plus(3)):
            assert localize(split.image, site).free_rank == 0
        # and the sign part of a general image dies at the plus branch
        split = mult_one_minus_t(RModuleSum(free=1, triv=2))
        assert localize(split.image, MIN_PLUS).free_rank == 0


class TestFrozenTableFile:
    def test_checksum_verified_on_load(self, tmp_path, monkeypatch):
        doc = {"spec_version": "1.0", "sha256": "0" * 64, "tables": load_tables()}
        bad = tmp_path / "tampered.json"
        bad.write_text(json.dumps(doc))
        monkeypatch.setenv(TABLE_ENV_VAR, str(bad))
        load_tables.cache_clear()
        try:
            with pytest.raises(TableIntegrityError):
                load_tables()
        finally:
            monkeypatch.delenv(TABLE_ENV_VAR)
            load_tables.cache_clear()

    def test_env_override_roundtrip(self, tmp_path, monkeypatch):
        from crystalk.oracle import render_table_file_bytes

        copy = tmp_path / "tables.json"
        copy.write_bytes(render_table_file_bytes())
        monkeypatch.setenv(TABLE_ENV_VAR, str(copy))
        load_tables.cache_clear()
        try:
            assert load_tables()["tensor"]["FreeR*FreeR"] == {"FreeR": 1}
        finally:
            monkeypatch.delenv(TABLE_ENV_VAR)
            load_tables.cache_clear()


class TestKunnethFailureAtPlusSites:
    def test_transitive_orbit_counterexample(self):
        """The plain Kunneth sequence fails at sites containing (t - 1).

        For the free transitive orbit, the equivariant theory is the
        trivial rank-1 class; the product of two orbits is two orbits.
        At the plus branch the product theory has rank 2 while tensor
        and Tor contribute 1 + 0, so no such sequence can be exact
        there.  The assembly pipeline therefore switches to the
        submodule argument on that branch.
        """
        orbit = TRIV
        product_theory = RModuleSum(triv=2)  # two free orbits
        site = MIN_PLUS
        lhs = localize(product_theory, site).free_rank
        tensor_part = localize(tensor(orbit, orbit), site).free_rank
        tor_part = localize(tor1(orbit, orbit), site).free_rank
        assert lhs == 2
        assert tensor_part + tor_part == 1
        assert lhs != tensor_part + tor_part
