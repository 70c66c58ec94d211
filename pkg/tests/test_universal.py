import pytest

from fvs_antlers.errors import GraphDomainError, RefusalError
from fvs_antlers.universal import (UniversalFamily, build_universal, random_family_size,
                                   verify_universal)


def test_exhaustive_family_is_power_set():
    fam = build_universal(range(4), 2, "exhaustive")
    assert len(fam) == 16
    assert verify_universal(fam)


def test_exhaustive_refuses_large_ground_sets():
    with pytest.raises(RefusalError):
        build_universal(range(21), 2, "exhaustive")


def test_random_family_is_reproducible_and_sized():
    a = build_universal(range(10), 3, "random", seed=5)
    b = build_universal(range(10), 3, "random", seed=5)
    assert a.sets == b.sets
    assert len(a) == random_family_size(10, 3)
    assert 0.0 <= a.failure_probability <= 1.0


def test_random_verified_passes_verification():
    fam = build_universal(range(12), 3, "random_verified", seed=1)
    assert verify_universal(fam)
    assert fam.failure_probability == 0.0


def test_missing_trace_is_detected():
    fam = UniversalFamily.from_sets(range(3), [set(), {0, 1, 2}], 1)
    assert verify_universal(fam)
    assert not verify_universal(fam, 2)


def test_bad_parameters():
    with pytest.raises(GraphDomainError):
        build_universal(range(3), 4)
    with pytest.raises(GraphDomainError):
        build_universal(range(3), 1, "nope")
    with pytest.raises(GraphDomainError):
        UniversalFamily.from_sets(range(3), [{7}], 1)
    with pytest.raises(RefusalError):
        verify_universal(build_universal(range(17), 1, "random"))


def test_size_zero_family():
    assert random_family_size(10, 0) == 1
    fam = build_universal(range(5), 0, "random", seed=0)
    assert verify_universal(fam)


def test_two_member_family_covers_singletons():
    D = ["a", "b", "c"]
    assert verify_universal(UniversalFamily.from_sets(D, [set(), set(D)], 1))
    assert not verify_universal(UniversalFamily.from_sets(D, [set()], 1))
    assert verify_universal(build_universal(["a", "b"], 2, "exhaustive"))


def test_verified_family_on_six_elements():
    assert verify_universal(build_universal(range(6), 2, "random_verified", seed=1))
