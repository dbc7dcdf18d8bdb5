import json

import pytest
from hypothesis import strategies as st

from nsystems.nsystem import canonical_params

small_rats = st.fractions(min_value=-8, max_value=8, max_denominator=12)
nonzero_rats = small_rats.filter(lambda x: x != 0)


@pytest.fixture
def canon3():
    return canonical_params(3)


# n = 4 point where S_3/q ties on [delta(3,1), delta(3,2)]: A_1 + B_2 = A_5
DEGENERATE4 = {
    "n": 4,
    "C": "3",
    "A": ["1/10", "1/10", "3/20", "3/10", "7/20"],
    "B": ["1/4", "8/25", "1/2"],
    "D": "7/25",
}


@pytest.fixture
def degenerate_file(tmp_path):
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(DEGENERATE4))
    return path

