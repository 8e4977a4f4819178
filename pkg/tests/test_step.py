import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jplse import InvalidInput
from jplse.step import (
    SIGNALS,
    StepFunction,
    cell_means,
    distance,
    embed,
    hausdorff_jumps,
    mpl,
    project_mean,
)

IND_HALF = StepFunction([0.5], [0.0, 1.0])


def test_embed_merges_equal_cells():
    f = embed([1, 1, 2])
    np.testing.assert_allclose(f.breakpoints, [2 / 3])
    np.testing.assert_array_equal(f.values, [1, 2])


def test_embed_single_value_is_constant():
    f = embed([5])
    assert f.n_jumps == 0 and f.values.tolist() == [5.0]


def test_embed_alternating_keeps_all_cells():
    f = embed([0, 1, 0, 1])
    np.testing.assert_allclose(f.breakpoints, [0.25, 0.5, 0.75])
    np.testing.assert_array_equal(f.values, [0, 1, 0, 1])


def test_embed_rejects_empty():
    with pytest.raises(InvalidInput):
        embed([])


def test_step_function_validation():
    with pytest.raises(InvalidInput):
        StepFunction([0.0], [1, 2])
    with pytest.raises(InvalidInput):
        StepFunction([0.5, 0.4], [1, 2, 3])
    with pytest.raises(InvalidInput):
        StepFunction([0.5], [1])


def test_right_continuity_and_value_at_one():
    assert IND_HALF(0.5) == 1.0 and IND_HALF(0.4999) == 0.0 and IND_HALF(1.0) == 1.0


def test_project_constant_is_fixed():
    c = StepFunction.constant(3.5)
    assert project_mean(c, [0.2, 0.7]) == c


def test_project_two_cells():
    g = project_mean(embed([0, 0, 4, 4]), [0.25])
    np.testing.assert_allclose(g.values, [0.0, 8 / 3])


def test_project_indicator_oracle():
    g = project_mean(IND_HALF, [0.25])
    np.testing.assert_allclose(g.values, [0.0, 2 / 3])


def test_project_rejects_outside_points():
    with pytest.raises(InvalidInput):
        project_mean(IND_HALF, [1.0])


def test_distance_examples():
    assert distance(IND_HALF, IND_HALF, "L2") == 0 and distance(IND_HALF, IND_HALF, "SUP") == 0
    z = StepFunction.constant(0)
    assert distance(IND_HALF, z, "L2") == pytest.approx(math.sqrt(0.5))
    assert distance(IND_HALF, z, "SUP") == 1
    assert distance(embed([0, 1]), embed([1, 0]), "L2") == pytest.approx(1.0)
    assert distance(embed([0, 1]), embed([1, 0]), "SUP") == 1


def test_hausdorff_examples():
    assert hausdorff_jumps([0.3], [0.3, 0.6]) == pytest.approx(0.3)
    assert hausdorff_jumps([], [0.5]) == 1
    assert hausdorff_jumps([], []) == 0


def test_mpl_examples():
    assert mpl(StepFunction.constant(1)) == 1
    assert mpl([0.3, 0.6]) == pytest.approx(0.3)
    assert mpl([0.5], T=2) == pytest.approx(0.5)


def test_cell_means_examples():
    np.testing.assert_array_equal(cell_means(StepFunction.constant(2.0), 4), [2, 2, 2, 2])
    np.testing.assert_allclose(cell_means(SIGNALS["ramp"], 2), [0.25, 0.75])
    np.testing.assert_allclose(cell_means(IND_HALF, 3), [0, 0.5, 1])
    with pytest.raises(InvalidInput):
        cell_means(IND_HALF, 0)


def test_cell_means_quadrature_matches_closed_form():
    quad = cell_means(lambda t: np.sin(2 * np.pi * t), 37)
    exact = cell_means(SIGNALS["sin"], 37)
    assert np.max(np.abs(quad - exact)) < 1e-10


def test_json_round_trip():
    f = StepFunction([0.2, 0.7], [1.0, -2.0, 0.5])
    assert StepFunction.from_dict(f.to_dict()) == f


def test_jump_set_matches_discrete_jumps(rng):
    for _ in range(50):
        u = rng.integers(0, 3, 12).astype(float)
        f = embed(u)
        discrete = [i + 1 for i in range(11) if u[i] != u[i + 1]]
        np.testing.assert_allclose(f.jumps, np.asarray(discrete) / 12)


# --- properties ----------------------------------------------------------------

@st.composite
def step_functions(draw, max_jumps=6):
    k = draw(st.integers(0, max_jumps))
    pts = draw(st.lists(st.integers(1, 99), min_size=k, max_size=k, unique=True))
    vals = draw(st.lists(st.integers(-5, 5), min_size=k + 1, max_size=k + 1))
    return StepFunction(np.sort(pts) / 100, np.asarray(vals, dtype=float))


jump_sets = st.lists(st.integers(1, 49).map(lambda i: i / 50), max_size=5, unique=True)


@settings(max_examples=200, deadline=None)
@given(step_functions(), jump_sets)
def test_projection_idempotent(f, J):
    g = project_mean(f, J)
    h = project_mean(g, J)
    assert distance(g, h, "SUP") <= 1e-12


@settings(max_examples=200, deadline=None)
@given(step_functions(), step_functions(), jump_sets)
def test_projection_contracts_l2(f, g, J):
    assert distance(project_mean(f, J), project_mean(g, J)) <= distance(f, g) + 1e-12


@settings(max_examples=200, deadline=None)
@given(step_functions(), step_functions(), step_functions())
def test_distance_metric_axioms(f, g, h):
    for m in ("L2", "SUP"):
        assert distance(f, f, m) == 0
        assert distance(f, g, m) == pytest.approx(distance(g, f, m), abs=1e-12)
        assert distance(f, h, m) <= distance(f, g, m) + distance(g, h, m) + 1e-12


nonempty_sets = st.lists(st.floats(0, 1), min_size=1, max_size=6)


@settings(max_examples=200, deadline=None)
@given(nonempty_sets, nonempty_sets, nonempty_sets)
def test_hausdorff_metric_axioms(A, B, C):
    assert hausdorff_jumps(A, A) == 0
    assert hausdorff_jumps(A, B) == hausdorff_jumps(B, A)
    assert hausdorff_jumps(A, C) <= hausdorff_jumps(A, B) + hausdorff_jumps(B, C) + 1e-12
