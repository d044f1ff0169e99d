import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def gray_arrays(min_side=4, max_side=24):
    return hnp.arrays(
        np.uint8,
        hnp.array_shapes(min_dims=2, max_dims=2, min_side=min_side, max_side=max_side),
    )


def binary_arrays(min_side=4, max_side=24):
    return hnp.arrays(
        bool,
        hnp.array_shapes(min_dims=2, max_dims=2, min_side=min_side, max_side=max_side),
    ).map(lambda m: m.astype(np.uint8) * 255)


def rgb_arrays(min_side=4, max_side=16):
    return hnp.arrays(
        np.uint8,
        st.tuples(
            st.integers(min_side, max_side), st.integers(min_side, max_side), st.just(3)
        ),
    )
