from __future__ import annotations

import random

from hypothesis import settings, strategies as st

from thompson_links.thompson import random_element, random_t_element

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def elements(draw, max_leaves: int = 8):
    """Random reduced elements of F, drawn through a seeded generator."""
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_element(random.Random(seed), max_leaves)


@st.composite
def t_elements(draw, max_leaves: int = 7):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_t_element(random.Random(seed), max_leaves)
