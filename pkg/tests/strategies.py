"""Hypothesis strategies: a seed drives the package's own Haar generators."""

import numpy as np
from hypothesis import strategies as st

from projprod.suites import random_contraction, random_frame, random_pair

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=9)


@st.composite
def pairs(draw, max_dim=9):
    n = draw(st.integers(min_value=1, max_value=max_dim))
    return random_pair(np.random.default_rng(draw(seeds)), n)


@st.composite
def matrices(draw, max_dim=8, square=False):
    rng = np.random.default_rng(draw(seeds))
    r = draw(st.integers(min_value=1, max_value=max_dim))
    c = r if square else draw(st.integers(min_value=1, max_value=max_dim))
    k = draw(st.integers(min_value=0, max_value=min(r, c)))
    # exact rank k: product of two random frames with a positive diagonal
    left = random_frame(rng, r, k)
    right = random_frame(rng, c, k)
    scale = rng.uniform(0.1, 2.0, size=k)
    return (left * scale) @ right.conj().T, k


@st.composite
def contractions(draw, max_dim=6):
    n = draw(st.integers(min_value=2, max_value=max_dim))
    return random_contraction(np.random.default_rng(draw(seeds)), n)
