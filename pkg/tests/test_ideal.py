import random
from fractions import Fraction as F

import pytest

from qflat import GODEL, LUKASIEWICZ, PRODUCT, Breakpoint, DomainError, PwFn, pwfn
from qflat.ideal import (
    NetSpec,
    check_flat,
    extract_principal,
    flat_conditions,
    frame_principal_lower,
    is_inhabited,
    k_set,
    net_ideal,
    pasted_flat,
    restrict_ideal,
    tensor_via_k,
    witness_upper_pair,
)
from qflat.order import check_lower_set, principal_lower, principal_upper, tensor
from qflat.pwfn import pointwise_min
from qflat.report import TensorWitness

from conftest import grid_tensor


def step(at_zero, tail):
    return pwfn(
        [Breakpoint(F(0), at_zero, at_zero, tail), Breakpoint(F(1), tail, tail, tail)]
    )


class TestInhabited:
    def test_full_at_zero(self):
        assert is_inhabited(step(F(1), F(3, 5))).holds

    def test_constant_below_one(self):
        rep = is_inhabited(PwFn.constant(F(9, 10)))
        assert not rep.holds
        assert rep.witness is not None

    def test_limit_only_sup_counts(self):
        f = pwfn(
            [
                Breakpoint(F(0), F(1, 2), F(1, 2), F(1, 2)),
                Breakpoint(F(1, 2), F(1), F(1, 4), F(1, 4)),
                Breakpoint(F(1), F(1, 4), F(1, 4), F(1, 4)),
            ]
        )
        rep = is_inhabited(f)
        assert rep.holds and "attained=False" in rep.detail


class TestCheckFlat:
    def test_goedel_principal(self):
        assert check_flat(GODEL, principal_lower(GODEL, F(1, 2))).holds

    def test_f2_worked_example(self, t4):
        phi = step(F(1), F(3, 5))
        rep = check_flat(t4, phi)
        assert not rep.holds and rep.rule == "F2"
        assert isinstance(rep.witness, TensorWitness)
        w = rep.witness
        assert w.joint < min(w.sep1, w.sep2)

    def test_constant_fails_f1(self, t4):
        rep = check_flat(t4, PwFn.constant(F(2, 5)))
        assert not rep.holds and rep.rule == "F1"

    def test_non_lower_set_reported_with_l_rule(self, t4):
        rep = check_flat(t4, PwFn.identity())
        assert not rep.holds and rep.rule.startswith("L")

    def test_product_principals_random(self):
        rng = random.Random(17)
        for _ in range(100):
            x0 = F(rng.randint(0, 256), 256)
            phi = principal_lower(PRODUCT, x0)
            assert check_flat(PRODUCT, phi).holds
            assert extract_principal(PRODUCT, phi) == x0

    def test_min_case_equivalence(self):
        # under min, flat iff lower set with full membership at 0
        rng = random.Random(18)
        from qflat.oracle import random_lower, random_pwfn

        for i in range(120):
            f = random_pwfn(rng) if i % 2 else random_lower(GODEL, rng)
            flat = check_flat(GODEL, f).holds
            expected = check_lower_set(GODEL, f).holds and f.eval(F(0)) == 1
            assert flat == expected

    def test_single_summand_flat_iff_principal(self):
        rng = random.Random(19)
        from qflat.oracle import random_lower

        for T in (LUKASIEWICZ, PRODUCT):
            for i in range(40):
                f = random_lower(T, rng)
                flat = check_flat(T, f).holds
                is_principal = f == principal_lower(T, f.eval(F(1)))
                assert flat == is_principal


class TestFlatConditions:
    def test_rules_evaluated_independently(self, t4):
        phi = step(F(1), F(3, 5))
        reps = flat_conditions(t4, phi)
        assert reps["F1"].holds
        assert not reps["F2"].holds
        assert not reps["F3"].holds  # the same candidate also breaks F3


class TestWitnessPair:
    def test_worked_counterexample_values(self, t4):
        phi = step(F(1), F(3, 5))
        psi1, psi2 = witness_upper_pair(t4, phi, F(3, 10))
        assert psi1 == PwFn.constant(F(3, 5))
        assert psi2 == principal_upper(t4, F(3, 10))
        meet = pointwise_min(psi1, psi2)
        assert tensor(t4, phi, meet) == (F(13, 25), True)
        assert tensor(t4, phi, psi1).value == F(3, 5)
        assert tensor(t4, phi, psi2).value == F(3, 5)
        # cross-checked by plain grid brute force
        assert grid_tensor(t4, phi, meet, 200) == F(13, 25)
        assert grid_tensor(t4, phi, psi1, 200) == F(3, 5)

    def test_flat_phi_pair_keeps_equality(self, t4):
        phi = principal_lower(t4, F(2, 5))
        psi1, psi2 = witness_upper_pair(t4, phi, F(3, 10))
        joint = tensor(t4, phi, pointwise_min(psi1, psi2)).value
        assert joint == min(tensor(t4, phi, psi1).value, tensor(t4, phi, psi2).value)

    def test_zero_point_degenerates(self, t4):
        phi = principal_lower(t4, F(2, 5))
        psi1, psi2 = witness_upper_pair(t4, phi, F(0))
        assert psi2 == PwFn.constant(F(1))
        assert (
            tensor(t4, phi, pointwise_min(psi1, psi2)) == tensor(t4, phi, psi1)
        )


class TestExtractPrincipal:
    def test_lukasiewicz_random(self):
        rng = random.Random(21)
        for _ in range(100):
            x0 = F(rng.randint(0, 360), 360)
            assert extract_principal(LUKASIEWICZ, principal_lower(LUKASIEWICZ, x0)) == x0

    def test_bottom_and_top(self):
        assert extract_principal(PRODUCT, principal_lower(PRODUCT, F(0))) == 0
        assert extract_principal(PRODUCT, PwFn.constant(F(1))) == 1

    def test_requires_basic_tnorm(self, t4):
        with pytest.raises(DomainError):
            extract_principal(t4, PwFn.constant(F(1)))

    def test_non_principal_returns_none(self):
        f = pwfn(
            [
                Breakpoint(F(0), F(1), F(1), F(1)),
                Breakpoint(F(1), F(1, 2), F(1, 2), F(1, 2)),
            ]
        )
        assert extract_principal(LUKASIEWICZ, f) is None


class TestRestrictIdeal:
    def test_top_ideal_restricts_to_frame_top(self, t4):
        sig = restrict_ideal(t4, PwFn.constant(F(1)), F(3, 10))
        assert sig == PwFn.constant(F(1, 2), F(1, 4), F(1, 2))

    def test_principal_restricts_to_frame_principal(self, t4):
        sig = restrict_ideal(t4, principal_lower(t4, F(2, 5)), F(3, 10))
        assert sig == frame_principal_lower(t4, t4.summands[0], F(2, 5))
        sig = restrict_ideal(t4, principal_lower(t4, F(3, 4)), F(7, 10))
        assert sig == frame_principal_lower(t4, t4.summands[1], F(3, 4))

    def test_restriction_coherence(self, t4, families):
        rng = random.Random(23)
        from qflat.oracle import flat_candidates

        for T in families:
            if not T.summands:
                continue
            for phi in flat_candidates(T, rng, 6):
                for s in T.summands:
                    mid = (s.lo + s.hi) / 2
                    if phi.eval(s.lo) <= s.lo:
                        continue
                    sig = restrict_ideal(T, phi, mid)
                    b = min(s.hi, phi.eval(s.hi))
                    assert sig == frame_principal_lower(T, s, b)

    def test_preconditions(self, t4):
        with pytest.raises(DomainError):
            restrict_ideal(t4, PwFn.constant(F(1)), F(1, 8))  # idempotent point
        with pytest.raises(DomainError):
            restrict_ideal(t4, principal_lower(t4, F(1, 8)), F(3, 10))  # premise fails

    def test_frame_bottom_value_is_frame_unit(self, t4):
        sig = restrict_ideal(t4, PwFn.constant(F(1)), F(7, 10))
        assert sig.eval(F(1, 2)) == F(1)


class TestNetIdeal:
    def test_goedel_open_net(self):
        net = NetSpec((F(1, 4), F(3, 8), F(7, 16)), F(1, 2), False)
        phi = net_ideal(GODEL, net)
        assert phi.eval(F(49, 100)) == 1
        assert phi.eval(F(1, 2)) == F(1, 2)
        assert phi.eval(F(3, 4)) == F(1, 2)
        assert phi != principal_lower(GODEL, F(1, 2))

    def test_attained_net_is_principal(self, t4):
        net = NetSpec((F(1, 8), F(2, 8)), F(3, 8), True)
        assert net_ideal(t4, net) == principal_lower(t4, F(3, 8))

    def test_lukasiewicz_open_net_is_principal(self):
        net = NetSpec((F(1, 4),), F(1, 2), False)
        assert net_ideal(LUKASIEWICZ, net) == principal_lower(LUKASIEWICZ, F(1, 2))

    def test_net_ideals_are_flat_lower_sets(self, families):
        rng = random.Random(25)
        for T in families:
            for _ in range(8):
                limit = F(rng.randint(1, 24), 24)
                pts = tuple(sorted({limit * F(k, 9) for k in (2, 5, 7)} - {limit}))
                attained = rng.random() < 0.5
                phi = net_ideal(T, NetSpec(pts, limit, attained))
                assert check_lower_set(T, phi).holds
                assert check_flat(T, phi).holds

    def test_validation(self):
        with pytest.raises(DomainError):
            NetSpec((), F(1, 2), False)
        with pytest.raises(DomainError):
            NetSpec((F(1, 2), F(1, 4)), F(3, 4), False)
        with pytest.raises(DomainError):
            NetSpec((F(1, 2),), F(1, 2), False)
        with pytest.raises(DomainError):
            NetSpec((F(1, 2),), F(1, 4), True)


class TestPastedFlat:
    def test_pasted_is_flat_and_not_principal(self, t4):
        s = t4.summands[0]
        phi = pasted_flat(t4, s, F(3, 8))
        assert check_flat(t4, phi).holds
        assert phi != principal_lower(t4, F(3, 8))
        assert phi.eval(F(5, 16)) == F(1, 2)  # frame top between lo and b


class TestKSet:
    def test_goedel_principal(self):
        K = k_set(GODEL, principal_lower(GODEL, F(1, 2)))
        assert K.describe() == "[0, 1/2]"

    def test_top_ideal(self, t4):
        assert k_set(t4, PwFn.constant(F(1))).describe() == "[0, 1]"

    def test_two_summand_principal(self, t4):
        K = k_set(t4, principal_lower(t4, F(1, 4)))
        assert K.describe() == "[0, 1/4]"

    def test_reduction_matches_tensor(self, t4, families):
        rng = random.Random(26)
        from qflat.oracle import flat_candidates, random_upper

        for T in families:
            for phi in flat_candidates(T, rng, 4):
                for _ in range(3):
                    psi = random_upper(T, rng)
                    assert tensor_via_k(T, phi, psi) == tensor(T, phi, psi).value

    def test_examples_cross_checked_by_grid(self, t4):
        phi = principal_lower(GODEL, F(1, 2))
        assert tensor_via_k(GODEL, phi, PwFn.identity()) == F(1, 2)
        phi = principal_lower(t4, F(1, 4))
        assert tensor_via_k(t4, phi, PwFn.constant(F(1))) == 1
        assert grid_tensor(t4, phi, PwFn.constant(F(1))) == 1
