"""Generators and the independent contraction oracle."""

import random
from fractions import Fraction as F

import pytest

import curvforge as cf
from curvforge.core import identity_matrix, mat_mul, mat_vec, transpose, zero_matrix


class TestRandomAct:
    def test_deterministic_per_seed(self):
        cfg = cf.GeneratorConfig(dim=4, signature=(2, 2), seed=42)
        assert cf.random_act(cfg).components == cf.random_act(cfg).components

    def test_different_seeds_differ(self):
        a = cf.random_act(cf.GeneratorConfig(dim=3, signature=(3, 0), seed=1))
        b = cf.random_act(cf.GeneratorConfig(dim=3, signature=(3, 0), seed=2))
        assert a.components != b.components

    @pytest.mark.parametrize("dim,signature", [(3, (3, 0)), (4, (1, 3)), (5, (2, 3))])
    def test_symmetries_hold_by_construction(self, dim, signature, subtests=None):
        for seed in range(3):
            r = cf.random_act(cf.GeneratorConfig(dim=dim, signature=signature, seed=seed))
            assert r.verified

    def test_no_forms_is_zero(self):
        cfg = cf.GeneratorConfig(dim=3, signature=(1, 2), seed=0, num_forms=0)
        assert cf.random_act(cfg).components == cf.zero_tensor(cf.ScalarProduct.diagonal([1, -1, -1])).components

    def test_metric_form_is_constant_curvature(self):
        g = cf.ScalarProduct.diagonal([1, 1, -1])
        assert (
            cf.tensor_from_symmetric_form(g, g.metric).components
            == cf.constant_curvature(g).components
        )

    def test_bad_signature_rejected(self):
        with pytest.raises(cf.PreconditionError):
            cf.random_act(cf.GeneratorConfig(dim=3, signature=(2, 2), seed=0))


class TestOracleContract:
    def test_hand_evaluated_component(self):
        g = cf.ScalarProduct.diagonal([1, 1, 1])
        r = cf.constant_curvature(g)
        e1, e2 = cf.vector([1, 0, 0]), cf.vector([0, 1, 0])
        # g(Y,Z)g(X,W) - g(X,Z)g(Y,W) at (X,Y,Z,W) = (e2,e1,e1,e2) is 1
        assert cf.oracle_contract(r, e2, e1, e1, e2) == 1

    def test_first_pair_antisymmetry_kills_repeats(self):
        r = cf.random_act(cf.GeneratorConfig(dim=3, signature=(3, 0), seed=4))
        rng = random.Random(0)
        for _ in range(10):
            x, z, w = (cf.random_vector(rng, 3) for _ in range(3))
            assert cf.oracle_contract(r, x, x, z, w) == 0

    def test_zero_tensor(self):
        r = cf.zero_tensor(cf.ScalarProduct.diagonal([1, -1]))
        assert cf.oracle_contract(r, cf.vector([1, 2]), cf.vector([3, 4]), cf.vector([5, 6]), cf.vector([7, 8])) == 0

    def test_agrees_with_pipeline_contraction_on_1000_quadruples(self):
        r = cf.random_act(cf.GeneratorConfig(dim=3, signature=(1, 2), seed=8))
        g = r.space
        rng = random.Random(99)
        for _ in range(1000):
            x = cf.random_vector(rng, 3)
            y = cf.random_vector(rng, 3)
            w = cf.random_vector(rng, 3)
            j = cf.jacobi_operator(r, x)
            assert g.inner(mat_vec(j, y), w) == cf.oracle_contract(r, y, x, x, w)


class TestStructureHelpers:
    def test_quaternion_triple_relations(self):
        i, j, k = cf.quaternion_structures()
        minus_id = tuple(tuple(-c for c in row) for row in identity_matrix(4))
        for m in (i, j, k):
            assert mat_mul(m, m) == minus_id
        for a, b in ((i, j), (i, k), (j, k)):
            anti = tuple(
                tuple(p + q for p, q in zip(ra, rb))
                for ra, rb in zip(mat_mul(a, b), mat_mul(b, a))
            )
            assert anti == zero_matrix(4)
        assert mat_mul(i, j) == k

    def test_standard_complex_structure(self):
        j = cf.standard_complex_structure(6)
        minus_id = tuple(tuple(-c for c in row) for row in identity_matrix(6))
        assert mat_mul(j, j) == minus_id
        with pytest.raises(cf.PreconditionError):
            cf.standard_complex_structure(5)

    def test_random_rational_orthogonal(self):
        rng = random.Random(13)
        from curvforge.testkit import random_rational_orthogonal

        q = random_rational_orthogonal(4, rng)
        assert mat_mul(transpose(q), q) == identity_matrix(4)

    @pytest.mark.parametrize("dim", [4, 6])
    def test_random_clifford_specs_validate(self, dim):
        g = cf.ScalarProduct.diagonal([1] * dim)
        for seed in range(4):
            spec = cf.random_clifford_spec(dim, seed=seed)
            cf.validate_clifford_spec(g, spec)  # must not raise
