import random
from fractions import Fraction as F

from hypothesis import given
from hypothesis import strategies as st

from qflat import GODEL, LUKASIEWICZ, PRODUCT, Breakpoint, PwFn, pwfn
from qflat.order import (
    check_lower_set,
    check_upper_set,
    d_L,
    d_R,
    principal_lower,
    principal_upper,
    tensor,
)
from qflat.pwfn import pointwise_max, pointwise_min
from qflat.report import PairWitness

from conftest import grid, grid_tensor

rats = st.fractions(min_value=0, max_value=1, max_denominator=16)


class TestCanonicalOrders:
    @given(rats)
    def test_reflexivity(self, x):
        for T in (GODEL, LUKASIEWICZ, PRODUCT):
            assert d_L(T, x, x) == 1

    def test_goedel_values(self):
        assert d_L(GODEL, F(7, 10), F(1, 2)) == F(1, 2)
        assert d_R(GODEL, F(7, 10), F(1, 2)) == 1

    def test_order_axioms_on_grid(self, t4, families):
        pts = grid(8)
        for T in families:
            pts_T = sorted(set(pts) | set(T.idempotent_levels()))
            for x in pts_T:
                assert d_L(T, x, x) == 1
                for y in pts_T:
                    for z in pts_T:
                        assert T.conj(d_L(T, y, z), d_L(T, x, y)) <= d_L(T, x, z)


class TestPrincipalSets:
    def test_goedel_principal_lower_shape(self):
        f = principal_lower(GODEL, F(1, 2))
        assert f.eval(F(1, 4)) == 1
        assert f.eval(F(1, 2)) == 1
        assert f.eval(F(1, 2), "above") == F(1, 2)
        assert f.eval(F(3, 4)) == F(1, 2)

    def test_top_principal_is_constant_one(self, t4):
        for T in (GODEL, LUKASIEWICZ, PRODUCT, t4):
            assert principal_lower(T, F(1)) == PwFn.constant(F(1))

    def test_lukasiewicz_principal_formula(self):
        f = principal_lower(LUKASIEWICZ, F(1, 2))
        rng = random.Random(1)
        for _ in range(50):
            y = F(rng.randint(0, 60), 60)
            assert f.eval(y) == min(F(1), 1 - y + F(1, 2))

    def test_principal_matches_residuum_pointwise(self, families):
        rng = random.Random(2)
        for T in families:
            for _ in range(6):
                x0 = F(rng.randint(0, 24), 24)
                low = principal_lower(T, x0)
                up = principal_upper(T, x0)
                for _ in range(40):
                    y = F(rng.randint(0, 48), 48)
                    assert low.eval(y) == T.residuum(y, x0)
                    assert up.eval(y) == T.residuum(x0, y)

    def test_principal_sets_pass_their_checks(self, families):
        rng = random.Random(3)
        for T in families:
            for _ in range(5):
                x0 = F(rng.randint(0, 20), 20)
                assert check_lower_set(T, principal_lower(T, x0)).holds
                assert check_upper_set(T, principal_upper(T, x0)).holds


class TestTensor:
    def test_unit_absorbs(self, t4):
        psi = principal_upper(t4, F(3, 10))
        one = PwFn.constant(F(1))
        assert tensor(t4, one, psi) == psi.global_sup()

    def test_goedel_principal_identity(self):
        phi = principal_lower(GODEL, F(1, 2))
        res = tensor(GODEL, phi, PwFn.identity())
        assert res == (F(1, 2), True)
        assert grid_tensor(GODEL, phi, PwFn.identity()) == F(1, 2)

    def test_step_against_constant(self, t4):
        phi = pwfn(
            [Breakpoint(F(0), F(1), F(1), F(3, 5)), Breakpoint(F(1), F(3, 5), F(3, 5), F(3, 5))]
        )
        res = tensor(t4, phi, PwFn.constant(F(3, 5)))
        assert res == (F(3, 5), True)
        assert grid_tensor(t4, phi, PwFn.constant(F(3, 5))) == F(3, 5)

    def test_tensor_dominates_samples_and_matches_grid(self, t4, families):
        rng = random.Random(4)
        for T in families:
            phi = principal_lower(T, F(rng.randint(0, 12), 12))
            psi = principal_upper(T, F(rng.randint(0, 12), 12))
            val, _ = tensor(T, phi, psi)
            for _ in range(60):
                x = F(rng.randint(0, 96), 96)
                assert T.conj(phi.eval(x), psi.eval(x)) <= val
            assert grid_tensor(T, phi, psi, 96) <= val

    def test_fractional_lower_operand(self):
        # product principal has a genuinely non-affine piece
        phi = principal_lower(PRODUCT, F(1, 3))
        val, attained = tensor(PRODUCT, phi, PwFn.identity())
        # conj(phi(x), x) = x for x <= 1/3, then (1/3/x)*x = 1/3
        assert (val, attained) == (F(1, 3), True)

    def test_min_tensor_equals_sup_of_pointwise_min(self):
        # under min the tensor must agree with an entirely separate exact
        # path: pointwise meet followed by the global supremum
        rng = random.Random(6)
        from qflat.oracle import random_lower, random_pwfn, random_upper

        for i in range(40):
            phi = random_lower(GODEL, rng) if i % 3 else random_pwfn(rng)
            psi = random_upper(GODEL, rng) if i % 2 else random_pwfn(rng)
            assert tensor(GODEL, phi, psi) == pointwise_min(phi, psi).global_sup()

    def test_constants_tensor_to_their_conjunction(self, families):
        for T in families:
            a, b = F(3, 7), F(5, 8)
            assert tensor(T, PwFn.constant(a), PwFn.constant(b)) == (T.conj(a, b), True)


class TestCheckLowerSet:
    def test_principals_hold(self, t4):
        assert check_lower_set(t4, principal_lower(t4, F(3, 10))).holds

    def test_l2_violator_under_goedel(self):
        phi = pwfn(
            [
                Breakpoint(F(0), F(3, 4), F(3, 4), F(3, 4)),
                Breakpoint(F(1, 2), F(3, 4), F(1, 2), F(1, 2)),
                Breakpoint(F(3, 4), F(1, 2), F(1, 4), F(1, 4)),
                Breakpoint(F(1), F(1, 4), F(1, 4), F(1, 4)),
            ]
        )
        rep = check_lower_set(GODEL, phi)
        assert not rep.holds and rep.rule == "L2"
        c = rep.witness.c
        assert phi.eval(c) <= c and phi.eval(c) != phi.eval(F(1))

    def test_lipschitz_violator_under_lukasiewicz(self):
        phi = pwfn(
            [
                Breakpoint(F(0), F(1), F(1), F(1)),
                Breakpoint(F(1, 2), F(0), F(0), F(0)),
                Breakpoint(F(1), F(0), F(0), F(0)),
            ]
        )
        rep = check_lower_set(LUKASIEWICZ, phi)
        assert not rep.holds and rep.rule == "L3"
        w = rep.witness
        assert isinstance(w, PairWitness) and w.lhs > w.rhs
        # witness violates the definitional inequality, recomputed from scratch
        lhs = LUKASIEWICZ.conj(phi.eval(w.a), LUKASIEWICZ.residuum(w.b, w.a))
        assert lhs > phi.eval(w.b)

    def test_l4_violator_under_goedel(self):
        phi = pwfn(
            [
                Breakpoint(F(0), F(1), F(1), F(1)),
                Breakpoint(F(1, 2), F(1), F(1), F(1, 4)),
                Breakpoint(F(1), F(1, 4), F(1, 4), F(1, 4)),
            ]
        )
        rep = check_lower_set(GODEL, phi)
        assert not rep.holds and rep.rule == "L4"
        c = rep.witness.c
        assert GODEL.is_idempotent(c) and phi.eval(c) >= c > phi.eval(F(1))

    def test_constants_are_lower_sets(self, families):
        for T in families:
            assert check_lower_set(T, PwFn.constant(F(2, 5))).holds

    def test_product_frame_ratio_violation(self, t4):
        # inside the product summand (1/2, 1): too-steep multiplicative drop
        phi = pwfn(
            [
                Breakpoint(F(0), F(1), F(1), F(1)),
                Breakpoint(F(1, 2), F(1), F(1), F(1)),
                Breakpoint(F(3, 4), F(1), F(1), F(11, 20)),
                Breakpoint(F(1), F(11, 20), F(11, 20), F(11, 20)),
            ]
        )
        rep = check_lower_set(t4, phi)
        assert not rep.holds and rep.rule == "L3"
        w = rep.witness
        lhs = t4.conj(phi.eval(w.a), t4.residuum(w.b, w.a))
        assert lhs > phi.eval(w.b)


class TestCheckUpperSet:
    def test_principals_and_constants_hold(self, t4, families):
        for T in families:
            assert check_upper_set(T, principal_upper(T, F(2, 5))).holds
            assert check_upper_set(T, PwFn.constant(F(3, 7))).holds

    def test_half_identity_violates_under_goedel(self):
        psi = pwfn(
            [Breakpoint(F(0), F(0), F(0), F(0)), Breakpoint(F(1), F(1, 2), F(1, 2), F(1, 2))]
        )
        rep = check_upper_set(GODEL, psi)
        assert not rep.holds and rep.rule == "U2"
        c = rep.witness.c
        assert psi.eval(c) < c and psi.eval(c) != psi.eval(F(1))

    def test_identity_is_upper_set(self, families):
        for T in families:
            assert check_upper_set(T, PwFn.identity()).holds

    def test_lipschitz_violation_under_lukasiewicz(self):
        psi = pwfn(
            [Breakpoint(F(0), F(0), F(0), F(0)), Breakpoint(F(1, 2), F(1), F(1), F(1)), Breakpoint(F(1), F(1), F(1), F(1))]
        )
        rep = check_upper_set(LUKASIEWICZ, psi)
        assert not rep.holds and rep.rule == "U3"
        w = rep.witness
        lhs = LUKASIEWICZ.conj(LUKASIEWICZ.residuum(w.a, w.b), psi.eval(w.a))
        assert lhs > psi.eval(w.b)

    def test_monotone_class_closure(self, families):
        rng = random.Random(8)
        from qflat.oracle import random_upper

        for T in families:
            for _ in range(6):
                f, g = random_upper(T, rng), random_upper(T, rng)
                assert check_upper_set(T, pointwise_min(f, g)).holds
                assert check_upper_set(T, pointwise_max(f, g)).holds


class TestSoundnessCompleteness:
    def test_holding_candidates_pass_definitional_grid(self, families):
        rng = random.Random(12)
        from qflat.oracle import GridSpec, falsify_lower_set, falsify_upper_set, random_lower, random_upper

        g = GridSpec(48)
        for T in families[:4]:
            for _ in range(4):
                f = random_lower(T, rng)
                if check_lower_set(T, f).holds:
                    assert falsify_lower_set(T, f, g).holds
                u = random_upper(T, rng)
                if check_upper_set(T, u).holds:
                    assert falsify_upper_set(T, u, g).holds

    def test_violations_revalidate(self, families):
        rng = random.Random(13)
        from qflat.oracle import random_pwfn, revalidate_witness

        for T in families:
            hits = 0
            for _ in range(30):
                f = random_pwfn(rng)
                rep = check_lower_set(T, f)
                if not rep.holds:
                    hits += 1
                    assert revalidate_witness(T, f, rep, lower=True)
                rep = check_upper_set(T, f)
                if not rep.holds:
                    assert revalidate_witness(T, f, rep, lower=False)
            assert hits  # random candidates do exercise the violation paths
