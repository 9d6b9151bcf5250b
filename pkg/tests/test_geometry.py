import json
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from condg import (
    InputError,
    Polyhedron,
    builtin_problem,
    check_assumption_a1,
    eval_jacobian,
    is_bounded,
    load_region,
    membership,
    recession_cone,
)
from condg.geometry import A1_TOL, CONE_ZERO_TOL
from cases import box_problem, orthant_violation_problem, unit_box


def has_extreme_ray_or_line(A, tol=1e-9):
    """Independent unboundedness test for {d : A d <= 0} by enumeration.

    The cone is nontrivial iff A is rank-deficient (it contains a line) or
    some (n-1)-subset of rows defines a one-dimensional null space whose
    generator, with one of its signs, satisfies every row.
    """
    p, n = A.shape
    if p == 0 or np.linalg.matrix_rank(A) < n:
        return True
    for idx in combinations(range(p), n - 1):
        sub = A[list(idx)] if idx else np.zeros((0, n))
        if sub.shape[0] and np.linalg.matrix_rank(sub) < n - 1:
            continue
        _, _, vt = np.linalg.svd(np.vstack([sub, np.zeros((1, n))]))
        d = vt[-1]
        for s in (1.0, -1.0):
            if np.all(A @ (s * d) <= tol):
                return True
    return False


class TestRegion:
    def test_membership_examples(self):
        ex1 = builtin_problem("ex1").region
        ex2 = builtin_problem("ex2").region
        assert membership(ex1, [0.5, 0.5])
        assert not membership(ex1, [0.0, 0.0])
        assert membership(ex2, [2.0, 1.0])

    def test_membership_dimension(self):
        with pytest.raises(InputError):
            membership(unit_box(), [1.0, 2.0, 3.0])

    def test_empty_region_rejected(self):
        with pytest.raises(InputError, match="empty"):
            Polyhedron([[1.0], [-1.0]], [0.0, -1.0])

    def test_no_rows_is_whole_space(self):
        r = Polyhedron(np.zeros((0, 2)), np.zeros(0))
        assert membership(r, [1e6, -1e6])
        assert not is_bounded(recession_cone(r))

    def test_region_file(self, tmp_path):
        doc = {
            "n": 2,
            "rows": [
                {"a": [1, 0], "op": ">=", "b": 0},
                {"a": [0, 1], "op": ">=", "b": 0},
                {"a": [1, 1], "op": "=", "b": 1},
            ],
        }
        path = tmp_path / "simplex.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        region = load_region(path)
        assert region.p == 4
        assert membership(region, [0.25, 0.75])
        assert not membership(region, [0.25, 0.5])
        assert is_bounded(recession_cone(region))

    @pytest.mark.parametrize(
        "doc",
        [{"rows": []}, {"n": 2, "rows": [{"a": [1], "op": "<=", "b": 0}]}, {"n": 1, "rows": [{"a": [1], "op": "<", "b": 0}]}],
    )
    def test_bad_region_files(self, tmp_path, doc):
        path = tmp_path / "r.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(InputError):
            load_region(path)


class TestRecessionCone:
    def test_ex1_is_orthant(self):
        cone = recession_cone(builtin_problem("ex1").region)
        assert cone.contains([1, 0]) and cone.contains([0, 1])
        assert not cone.contains([-1, 0])

    def test_unit_box_trivial(self):
        cone = recession_cone(unit_box())
        assert cone.contains([0, 0])
        assert is_bounded(cone)

    def test_ex2_cone_is_region(self):
        region = builtin_problem("ex2").region
        cone = recession_cone(region)
        rng = np.random.default_rng(1)
        for d in rng.uniform(-3, 3, size=(200, 2)):
            assert cone.contains(d) == membership(region, d)

    def test_bounded_flags(self):
        assert not is_bounded(recession_cone(builtin_problem("ex1").region))
        assert not is_bounded(recession_cone(builtin_problem("ex2").region))

    def test_bounded_matches_enumeration(self):
        rng = np.random.default_rng(77)
        seen = set()
        for _ in range(300):
            n = int(rng.integers(1, 4))
            p = int(rng.integers(1, 9))
            A = rng.normal(size=(p, n))
            x0 = rng.normal(size=n)
            region = Polyhedron(A, A @ x0 + rng.uniform(0, 1, p))
            expect = not has_extreme_ray_or_line(A)
            assert is_bounded(recession_cone(region)) == expect
            seen.add(expect)
        assert seen == {True, False}

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_cone_directions_keep_points_feasible(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 4))
        p = int(rng.integers(1, 7))
        A = rng.normal(size=(p, n))
        x0 = rng.normal(size=n)
        region = Polyhedron(A, A @ x0 + rng.uniform(0, 1, p))
        cone = recession_cone(region)
        for d in rng.normal(size=(50, n)):
            if cone.contains(d, tol=0.0):
                assert np.all(A @ d <= CONE_ZERO_TOL)
                for t in (1.0, 10.0, 100.0):
                    assert membership(region, x0 + t * d)


class TestAssumptionA1:
    def test_ex1_holds(self):
        rep = check_assumption_a1(builtin_problem("ex1"), 100, 0)
        assert rep.holds and rep.samples_checked == 100

    def test_orthant_violation(self):
        problem = orthant_violation_problem()
        rep = check_assumption_a1(problem, 10, 0)
        assert not rep.holds
        np.testing.assert_allclose(rep.witness_direction, [1.0, 0.0], atol=1e-12)
        assert rep.witness_gradient_index == 0
        assert recession_cone(problem.region).contains(rep.witness_direction)
        g = eval_jacobian(problem, rep.witness_point)[rep.witness_gradient_index]
        assert g @ rep.witness_direction <= A1_TOL

    def test_ex2_witness_is_valid(self):
        # The origin-apex cone x2 >= |x1| / 2 has dual {y2 >= 2 |y1|}; the
        # gradient (-1, 2) sits on its boundary along direction (1, 0.5).
        problem = builtin_problem("ex2")
        rep = check_assumption_a1(problem, 100, 0)
        assert not rep.holds
        d = rep.witness_direction
        assert recession_cone(problem.region).contains(d)
        g = eval_jacobian(problem, rep.witness_point)[rep.witness_gradient_index]
        assert g @ d <= A1_TOL
        assert np.linalg.norm(d) > CONE_ZERO_TOL

    @pytest.mark.parametrize("grad", [(-1.0, 0.0), (0.0, 0.0), (3.0, -7.0)])
    def test_bounded_region_always_holds(self, grad):
        assert check_assumption_a1(box_problem(grad), 5, 1).holds

    def test_sample_count(self):
        with pytest.raises(InputError):
            check_assumption_a1(builtin_problem("ex1"), 0, 0)
