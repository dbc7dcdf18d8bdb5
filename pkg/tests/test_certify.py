import json
from fractions import Fraction as F

import pytest

from conftest import DEGENERATE4

from nsystems.certify import (PAPER, TRAJECTORY, BranchNotStable, certificate_for,
                              exponent_functions, independence_certificate, jacobian,
                              specialization_rank_check, stability, symbolic_jacobian,
                              uniform_block_certificate)
from nsystems.exactnum import RatMat, mat_det
from nsystems.exponents import perturbed
from nsystems.nsystem import Params, canonical_params, free_names, validate_params

# frozen from the first exact run; any change in the construction shows up here
DETERMINANTS = {
    (3, TRAJECTORY): F(-134217728, 354025),
    (4, TRAJECTORY): F(-17592186044416, 30464357),
    (5, TRAJECTORY): F(-24903104499507894681600, 5527666184579),
    (6, TRAJECTORY): F(-26540440376427006933476479365808128, 106395378360107931017),
    (3, PAPER): F(-1207959552, 693889),
    (4, PAPER): F(-1741626418397184, 800381743),
    (5, PAPER): F(-224127940495571052134400, 14305056723419),
    (6, PAPER): F(-238863963387843062401288314292273152, 285567314756487063377),
}


def test_table_set_jacobian_entries_n3(canon3):
    jac = jacobian(PAPER, canon3)
    cols = free_names(3)
    names, _ = exponent_functions(PAPER, canon3)
    assert jac.row(names.index("What_2")) == (-64, 0, 0, 0, 0, 0)
    d = cols.index("D")
    assert [jac[i, d] for i in range(6)] == [0, 0, 0, 0, 0, 8]
    c = cols.index("C")
    assert all(jac[i, c] == 0 for i in range(3))


@pytest.mark.parametrize("fset", [TRAJECTORY, PAPER])
@pytest.mark.parametrize("n", [3, 4])
def test_dual_matches_symbolic(n, fset):
    p = canonical_params(n)
    assert jacobian(fset, p) == symbolic_jacobian(fset, p)


@pytest.mark.parametrize("n", range(3, 7))
@pytest.mark.parametrize("fset", [TRAJECTORY, PAPER])
def test_full_rank_and_frozen_determinant(n, fset):
    cert = independence_certificate(n, canonical_params(n), fset)
    assert cert.rank == 2 * n
    assert cert.verdict == "independent"
    assert cert.determinant == DETERMINANTS[n, fset]


def test_duplicated_row_is_dependent(canon3):
    names, funcs = exponent_functions(TRAJECTORY, canon3)

    def dup(q):
        vals = funcs(q)
        return vals[:-1] + [vals[0]]

    cert = certificate_for(canon3, TRAJECTORY, names[:-1] + [names[0]], dup)
    assert cert.determinant == 0
    assert cert.verdict == "dependent"


@pytest.mark.parametrize("n", range(3, 7))
def test_uniform_block_rank(n):
    cert = uniform_block_certificate(n, canonical_params(n))
    assert cert.rank == n
    assert cert.determinant is None


@pytest.mark.parametrize("n", range(3, 7))
def test_specialization_rank(n):
    rep = specialization_rank_check(n, canonical_params(n))
    assert rep.ok
    assert rep.rank == 2 * n - 3
    assert rep.rank_with_v == 2 * n - 3


@pytest.mark.parametrize("n", [4, 5])
def test_specialization_drop_row(n):
    rep = specialization_rank_check(n, canonical_params(n), drop=0)
    assert rep.rank == 2 * n - 4
    assert rep.rank_with_v is None


def test_row_permutation_flips_sign_only(canon3):
    jac = jacobian(TRAJECTORY, canon3)
    rows = jac.to_rows()
    swapped = RatMat.from_rows([rows[1], rows[0], *rows[2:]])
    assert mat_det(swapped) == -mat_det(jac)
    cycled = RatMat.from_rows(rows[1:] + rows[:1])  # 6-cycle, odd
    assert mat_det(cycled) == -mat_det(jac)


@pytest.mark.parametrize("n", [3, 5])
def test_table_set_uniform_rows_ignore_c_and_d(n):
    jac = jacobian(PAPER, canonical_params(n))
    cols = free_names(n)
    for i in range(n):
        assert jac[i, cols.index("C")] == 0
        assert jac[i, cols.index("D")] == 0


def test_certificate_json_deterministic(canon3):
    a = json.dumps(independence_certificate(3, canon3).to_json())
    b = json.dumps(independence_certificate(3, canonical_params(3)).to_json())
    assert a == b
    obj = json.loads(a)
    assert obj["columns"] == ["A_2", "A_3", "B_2", "B_3", "C", "D"]
    assert obj["determinant"] == "-134217728/354025"


def test_random_nearby_points_full_rank(canon3):
    hits = 0
    for i in range(30):
        q = perturbed(canon3, F(1, 64), 11, i)
        if not validate_params(q).ok or not all(stability(q).values()):
            continue
        cert = independence_certificate(3, q)
        assert cert.determinant != 0
        hits += 1
        if hits == 10:
            break
    assert hits == 10


def test_tie_point_is_not_certified():
    p = Params.from_json(DEGENERATE4)
    assert not stability(p)["What_1"]
    with pytest.raises(BranchNotStable, match="branch not stable"):
        independence_certificate(4, p)
    # the closed-form set has no branch to lose
    assert independence_certificate(4, p, PAPER).rank == 8


def test_wrong_dimension(canon3):
    with pytest.raises(ValueError):
        independence_certificate(4, canon3)
