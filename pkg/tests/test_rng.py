import numpy as np

from vcselect.rng import DOMAIN_CV, DOMAIN_SIM, DOMAIN_XI, stream


def test_domains_distinct():
    assert len({DOMAIN_XI, DOMAIN_CV, DOMAIN_SIM}) == 3


def test_same_key_reproduces():
    a = stream(42, DOMAIN_XI, 1, 2, 3).integers(0, 1000, size=50)
    b = stream(42, DOMAIN_XI, 1, 2, 3).integers(0, 1000, size=50)
    assert np.array_equal(a, b)


def test_different_keys_decorrelate():
    draws = {
        tuple(stream(42, DOMAIN_XI, l, i, b).integers(0, 2**32, size=4))
        for l in range(3)
        for i in range(3)
        for b in range(3)
    }
    assert len(draws) == 27  # no collisions across the key lattice


def test_seed_separates():
    a = stream(0, DOMAIN_SIM).standard_normal(8)
    b = stream(1, DOMAIN_SIM).standard_normal(8)
    assert not np.array_equal(a, b)


def test_numpy_ints_accepted():
    a = stream(np.int64(7), np.int32(0), np.int64(5))
    b = stream(7, 0, 5)
    assert np.array_equal(a.integers(0, 100, 10), b.integers(0, 100, 10))


def test_counter_based_bit_generator():
    # Philox is counter-based: independent streams never share state, which
    # is what makes the worker count irrelevant to the results
    assert stream(0, 0).bit_generator.__class__.__name__ == "Philox"
