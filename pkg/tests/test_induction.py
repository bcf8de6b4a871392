"""Tests for Rauzy-Veech induction, Zorich blocks and rotation numbers."""

from __future__ import annotations

from fractions import Fraction

import pytest

from iet.aiet import evaluate, make_iet, random_iet
from iet.exceptions import CapExceededError, InsufficientLengthError, TieError
from induction import (
    RauzyPath,
    RauzyWalk,
    common_prefix_length,
    paths_equal,
    rauzy_step,
    rauzy_type,
    rotation_number,
    zorich_step,
)
from induction.path import read_edges_jsonl, write_edges_jsonl

from .conftest import PHI

F = Fraction


def test_golden_rotation_alternates_types(golden_float_iet):
    induced, edge = rauzy_step(golden_float_iet)
    assert edge.type == 0
    assert (edge.winner, edge.loser) == ("B", "A")
    assert induced.lengths[0] == pytest.approx(2 - PHI)
    assert induced.lengths[1] == pytest.approx(2 * PHI - 3)

    path = rotation_number(golden_float_iet, 6)
    assert path.types == (0, 1, 0, 1, 0, 1)
    assert path.zorich_times() == [0, 1, 2, 3, 4, 5]
    assert path.is_infinity_complete()
    assert path.is_composable()


def test_type_is_decided_by_last_letters(rotation_perm):
    f = make_iet(rotation_perm, [F(3, 10), F(7, 10)])
    assert rauzy_type(f) == 0
    assert rotation_number(f, 3).types == (0, 0, 1)


def test_common_prefix_and_equality(rotation_perm, golden_float_iet):
    other = rotation_number(make_iet(rotation_perm, [F(3, 10), F(7, 10)]), 3)
    golden = rotation_number(golden_float_iet, 3)
    assert common_prefix_length(golden, other) == 1
    assert paths_equal(golden, other, 1)
    assert not paths_equal(golden, other, 3)
    with pytest.raises(InsufficientLengthError):
        paths_equal(golden, other, 4)


def test_affine_step_updates_lengths_and_slopes(exact_aiet):
    induced, edge = rauzy_step(exact_aiet)
    assert edge.type == 0 and edge.winner == "B"
    assert induced.lengths == (F(1, 2), F(1, 4))
    assert induced.slopes == (F(3, 4), F(3, 2))
    assert induced.closure_residual == 0


def test_tie_is_reported_with_its_step(rotation_perm):
    f = make_iet(rotation_perm, [F(1, 2), F(1, 2)])
    with pytest.raises(TieError) as excinfo:
        rotation_number(f, 1)
    assert excinfo.value.step == 0
    assert excinfo.value.code == "tie"


def test_tie_after_a_few_steps(rotation_perm):
    # (2/5, 3/5) -> (2/5, 1/5) -> (1/5, 1/5)
    f = make_iet(rotation_perm, [F(2, 5), F(3, 5)])
    walk = RauzyWalk(f)
    walk.step()
    walk.step()
    with pytest.raises(TieError) as excinfo:
        walk.step()
    assert excinfo.value.step == 2


def test_induced_map_is_the_first_return_map(symmetric4, rng):
    f = random_iet(symmetric4, rng)
    induced, _ = rauzy_step(f)
    total = induced.total_length
    for k in range(7):
        x = total * F(k, 7)
        y = evaluate(f, x)
        while y >= total:
            y = evaluate(f, y)
        assert evaluate(induced, x) == y


def test_zorich_step_groups_a_long_run(rotation_perm):
    f = make_iet(rotation_perm, [F(93, 100), F(7, 100)])
    induced, z, edges = zorich_step(f)
    assert z == 13
    assert len(edges) == 13
    assert all(edge.type == 1 and edge.winner == "A" for edge in edges)
    assert induced.lengths == (F(2, 100), F(7, 100))

    with pytest.raises(CapExceededError):
        zorich_step(f, cap=5)


def test_zorich_step_matches_elementary_steps(symmetric4, rng):
    f = random_iet(symmetric4, rng)
    walk = RauzyWalk(f)
    current = f
    for _ in range(10):
        accelerated, z, edges = zorich_step(current)
        for edge in edges:
            assert walk.step().same_step(edge)
        assert accelerated.lengths == tuple(walk.lengths)
        assert accelerated.perm == walk.permutation
        current = accelerated


def test_path_serialization(tmp_path, symmetric4, rng):
    path = rotation_number(random_iet(symmetric4, rng), 40)
    assert RauzyPath.from_dict(path.to_dict()).types == path.types

    target = tmp_path / "edges.jsonl"
    assert write_edges_jsonl(target, path.start, path.edges) == 40
    again = read_edges_jsonl(target)
    assert paths_equal(again, path, 40)
    assert again.end == path.end
    assert path.prefix(10).types == path.types[:10]
    with pytest.raises(InsufficientLengthError):
        path.prefix(41)
