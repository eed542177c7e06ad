import math

import numpy as np
import pytest

from perron import matcore, perturb, solver
from generators import flip_to_cone, random_irreducible, random_nonneg
from oracles import eig_radius


class TestContinuityCertificate:
    def test_unperturbed_matrix(self):
        a = [[0.0, 1.0], [1.0, 0.0]]
        res = perturb.continuity_certificate(a, a)
        assert res.e_norm == 0.0
        assert res.bound == 0.0
        assert res.enclosure == (res.base.lo, res.base.hi)

    def test_two_cycle_corner_bump(self):
        # bump of 0.01 at the lower right corner of the symmetric 2-cycle:
        # q_star = 1/2, so the certified bound is exactly 0.02
        a = [[0.0, 1.0], [1.0, 0.0]]
        ap = [[0.0, 1.0], [1.0, 0.01]]
        res = perturb.continuity_certificate(a, ap)
        assert abs(res.q_star - 0.5) <= 1e-12
        assert abs(res.e_norm - 0.01) <= 1e-15
        assert abs(res.bound - 0.02) <= 1e-12
        # new radius is the larger root of x^2 - 0.01x - 1
        rho_prime = 0.5 * (0.01 + math.sqrt(4.0001))
        assert abs(rho_prime - 1.0) <= res.bound
        assert res.enclosure[0] <= rho_prime <= res.enclosure[1]

    def test_uniform_bump(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        ap = a + 0.001
        res = perturb.continuity_certificate(a, ap)
        assert abs(res.e_norm - 0.002) <= 1e-15
        assert res.enclosure[0] <= eig_radius(ap) <= res.enclosure[1]
        assert res.norm == "frobenius"

    def test_sound_on_random_perturbations(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 7))
            a = random_irreducible(rng, n)
            e = flip_to_cone(a, rng.uniform(-1.0, 1.0, (n, n)) * rng.uniform(0, 0.1))
            ap = a + e
            res = perturb.continuity_certificate(a, ap)
            shift = abs(eig_radius(ap) - eig_radius(a))
            assert shift <= res.bound + res.base.width + 1e-9
            assert res.enclosure[0] - 1e-9 <= eig_radius(ap) <= res.enclosure[1] + 1e-9

    def test_bound_scales_exactly_with_perturbation(self):
        a = np.array([[0.0, 1.0], [1.0, 0.0]])
        e = np.zeros((2, 2))
        e[1, 1] = 0.01
        one = perturb.continuity_certificate(a, a + e)
        two = perturb.continuity_certificate(a, a + 2.0 * e)
        assert two.e_norm == 2.0 * one.e_norm
        assert two.bound == 2.0 * one.bound

    def test_symmetric_matrix_has_matching_vectors(self):
        a = [[1.0, 2.0], [2.0, 1.0]]
        res = perturb.continuity_certificate(a, a)
        np.testing.assert_allclose(
            res.base.left_vector, res.base.right_vector, atol=1e-10
        )

    def test_rejects_reducible_base(self):
        with pytest.raises(ValueError, match="reducible"):
            perturb.continuity_certificate([[1.0, 1.0], [0.0, 2.0]], [[1.0, 1.0], [0.0, 2.0]])

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            perturb.continuity_certificate([[0.0, 1.0], [1.0, 0.0]], [[1.0]])

    def test_rejects_negative_perturbed_entry(self):
        with pytest.raises(ValueError):
            perturb.continuity_certificate([[0.0, 1.0], [1.0, 0.0]], [[0.0, 1.0], [1.0, -0.01]])


class TestSharpnessProbe:
    def test_zero_direction(self):
        rows = perturb.sharpness_probe(
            [[0.0, 1.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]], [0.5, 1.0]
        )
        for s, bound, observed in rows:
            assert bound == 0.0
            assert observed <= 1e-12

    def test_corner_direction_on_two_cycle(self):
        # rho(A + s*D) = (s + sqrt(s^2+4))/2, so the observed shift is
        # about s/2 while the bound is 2s: a slack factor of 4
        a = [[0.0, 1.0], [1.0, 0.0]]
        d = [[0.0, 0.0], [0.0, 1.0]]
        rows = perturb.sharpness_probe(a, d, [0.01])
        s, bound, observed = rows[0]
        assert abs(bound - 0.02) <= 1e-12
        exact = 0.5 * (s + math.sqrt(s * s + 4.0)) - 1.0
        assert abs(observed - exact) <= 1e-9
        assert observed <= bound

    def test_bounds_halve_exactly_with_scale(self):
        # 0.2 is exactly twice 0.1 in binary, so the certified bounds
        # inherit the exact factor of two
        rows = perturb.sharpness_probe(
            [[1.0, 2.0], [3.0, 4.0]], [[1.0, 0.0], [0.0, 1.0]], [0.2, 0.1]
        )
        assert rows[0][1] == 2.0 * rows[1][1]

    def test_bound_dominates_observed(self, rng):
        for _ in range(40):
            n = int(rng.integers(2, 6))
            a = random_irreducible(rng, n)
            d = random_nonneg(rng, n, scale=1.0)
            for s, bound, observed in perturb.sharpness_probe(a, d, [0.01, 0.05]):
                assert observed <= bound + 1e-9

    def test_rejects_negative_scale(self):
        with pytest.raises(ValueError, match="-1.0"):
            perturb.sharpness_probe(
                [[0.0, 1.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 1.0]], [-1.0]
            )

    def test_rejects_cone_violation(self):
        a = [[0.0, 1.0], [1.0, 0.0]]
        d = [[0.0, -1.0], [0.0, 0.0]]
        rows = perturb.sharpness_probe(a, d, [0.5])
        assert rows[0][2] > 0.0
        with pytest.raises(ValueError, match="2.0"):
            perturb.sharpness_probe(a, d, [2.0])

    def test_rejects_direction_shape_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            perturb.sharpness_probe([[0.0, 1.0], [1.0, 0.0]], [[1.0]], [0.1])
