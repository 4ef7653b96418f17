import pytest

from altan.errors import CapExceeded
from altan.generators import (
    ConvexSpec,
    convex_counts_by_size,
    convex_spec,
    enumerate_benzenoids,
    enumerate_catafused,
    enumerate_convex,
    enumerate_polyhexes,
)
from altan.patch import boundary_profile, parity_check

from oracles import benzenoid_classes, catafused_classes, polyhex_levels

BENZENOID_COUNTS = {1: 1, 2: 1, 3: 3, 4: 7, 5: 22, 6: 81, 7: 331, 8: 1435}
CATAFUSED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5, 5: 12, 6: 36, 7: 118, 8: 411, 9: 1489}


@pytest.fixture(scope="module")
def levels():
    return polyhex_levels(7)


@pytest.mark.parametrize("eps", range(1, 8))
def test_benzenoids_match_breadth_first_oracle(eps, levels):
    got = [p.canonical() for p in enumerate_benzenoids(eps)]
    assert len(got) == len(set(got))
    assert set(got) == benzenoid_classes(eps, levels)


@pytest.mark.parametrize("eps", range(1, 8))
def test_catafused_match_oracle(eps, levels):
    got = [p.canonical() for p in enumerate_catafused(eps)]
    assert len(got) == len(set(got))
    assert set(got) == catafused_classes(eps, levels)


def test_polyhexes_include_holes(levels):
    assert sum(1 for _ in enumerate_polyhexes(6)) == len(levels[5]) == 82


@pytest.mark.parametrize("eps,count", sorted(BENZENOID_COUNTS.items()))
def test_benzenoid_counts(eps, count):
    assert sum(1 for _ in enumerate_benzenoids(eps)) == count


@pytest.mark.parametrize("eps,count", sorted(CATAFUSED_COUNTS.items()))
def test_catafused_counts(eps, count):
    assert sum(1 for _ in enumerate_catafused(eps)) == count


def test_cap():
    with pytest.raises(CapExceeded):
        next(enumerate_benzenoids(11))
    with pytest.raises(ValueError):
        next(enumerate_catafused(0))
    assert sum(1 for _ in enumerate_benzenoids(3, cap=None)) == 3


def test_emitted_patches_are_valid():
    for p in enumerate_benzenoids(6):
        P = p.to_patch()
        assert parity_check(P)
        assert p.is_benzenoid()


def test_convex_small():
    assert sum(convex_counts_by_size(10).values()) == 25
    assert all(boundary_profile(p.to_patch()).b == 0 for p in enumerate_convex(12))


def test_convex_equals_bay_free_benzenoids():
    for eps in range(1, 9):
        general = {p.canonical() for p in enumerate_benzenoids(eps)
                   if boundary_profile(p.to_patch()).b == 0}
        convex = {p.canonical() for p in enumerate_convex(eps, eps_min=eps)}
        assert general == convex


def test_convex_cumulative_100():
    assert sum(convex_counts_by_size(100).values()) == 1240


def test_convex_specs():
    specs = [convex_spec(p.cells) for p in enumerate_convex(20)]
    assert all(s.closes for s in specs)
    canon = [s.canonical() for s in specs]
    assert len(set(canon)) == len(canon)
    assert convex_spec([(0, 0)]).sides == (1,) * 6
    with pytest.raises(ValueError):
        ConvexSpec((1, 1, 1, 1, 1, 0))
