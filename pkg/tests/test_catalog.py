from fractions import Fraction

import pytest

from nlie.catalog import (
    CATALOG,
    associated_lie,
    catalog_build,
    classify_theorem44,
    direct_sum,
    entries_for_dims,
    lie_catalog_build,
    representative_entries,
    semidirect_A4,
    trivial_extension,
)
from nlie.core import (
    abelian_algebra,
    check_fundamental_identity,
    make_algebra,
)
from nlie.errors import FundamentalIdentityError, InvalidParameterError
from nlie.fields import GF, QQ
from nlie.invariants import (
    center,
    classify_subspace,
    derived_algebra,
    invariant_report,
    is_nilpotent,
)
from nlie.iso import change_basis
from nlie.linalg import Matrix, coordinate_subspace
from nlie.search import alpha_beta_exact_fp, reduce_mod_p


def entries_1based(L):
    f = L.field
    return {tuple(i + 1 for i in key): {t + 1: c for t, c in enumerate(val) if c != f.zero}
            for key, val in L.constants.entries}


def test_t34_a2_exact_table():
    L = catalog_build("T34-a2", QQ, m=5)
    assert entries_1based(L) == {(1, 4, 5): {1: Fraction(1)}}


def test_t35_b6_exact_table():
    L = catalog_build("T35-b6", QQ, m=6, alpha=2)
    assert entries_1based(L) == {
        (2, 5, 6): {1: Fraction(2), 2: Fraction(1)},
        (1, 5, 6): {2: Fraction(1)},
    }


def test_a3_is_the_four_dim_simple_table():
    L = catalog_build("A(n)", QQ, n=3)
    assert entries_1based(L) == {
        (2, 3, 4): {1: Fraction(1)}, (1, 3, 4): {2: Fraction(1)},
        (1, 2, 4): {3: Fraction(1)}, (1, 2, 3): {4: Fraction(1)},
    }


def test_a_n_equals_l21_d_full():
    for n in (3, 4):
        a = catalog_build("A(n)", QQ, n=n)
        d = catalog_build("L21-d(r)", QQ, n=n, r=n + 1)
        assert a.constants == d.constants


def test_catalog_ids_complete():
    expected = {"L21-b1", "L21-b2", "L21-c1", "L21-c2", "L21-c3", "L21-d(r)",
                "A(n)", "T34-a1", "T34-a2", "T35-b1", "T35-b2", "T35-b3",
                "T35-b4", "T35-b5", "T35-b6", "T43-c1", "T43-c2", "T43-c3",
                "EX31", "EX32-1", "EX32-2", "EX33", "EX41", "EX42", "T44-3"}
    assert set(CATALOG) == expected


def test_fi_status_of_representatives():
    bad = {label for label, L in representative_entries(QQ) if not L.fi_checked}
    # the two defective shipped tables; everything else passes
    assert bad == {"T43-c1[('m', 5), ('t', 2)]", "EX41"}


def test_ex41_violation_is_real():
    from oracles import naive_fi_residual
    L = catalog_build("EX41", QQ)
    report = check_fundamental_identity(L)
    assert not report.holds
    v = report.violations[0]
    residual = naive_fi_residual(L, tuple(i - 1 for i in v.x_indices),
                                 tuple(j - 1 for j in v.y_indices))
    assert residual == v.residual
    assert any(x != 0 for x in residual)


def test_t43_c1_single_pair_is_valid():
    L = catalog_build("T43-c1", QQ, m=5, t=1)
    assert L.fi_checked


def test_strict_build_raises_on_defective_family():
    with pytest.raises(FundamentalIdentityError):
        catalog_build("EX41", QQ, strict=True)


@pytest.mark.parametrize("fid,params", [
    ("T35-b6", {"m": 6, "alpha": 0}),
    ("L21-c2", {"n": 3, "alpha": 0}),
    ("T34-a1", {"m": 3}),
    ("T35-b1", {"m": 5}),
    ("T35-b2", {"m": 4}),
    ("T43-c1", {"m": 5, "t": 3}),
    ("T43-c1", {"m": 4}),
    ("T43-c3", {"m": 6, "t": 0}),
    ("L21-d(r)", {"n": 3, "r": 2}),
    ("A(n)", {"n": 1}),
    ("EX42", {"m": 3}),
])
def test_parameter_validation(fid, params):
    with pytest.raises(InvalidParameterError):
        catalog_build(fid, QQ, **params)


def test_unknown_family():
    with pytest.raises(InvalidParameterError):
        catalog_build("nope", QQ)


def test_alpha_zero_mod_p_rejected():
    # alpha = 2 reduces to zero mod 2, violating the family constraint
    with pytest.raises(InvalidParameterError):
        catalog_build("T35-b6", GF(2), m=5, alpha=2)
    L = catalog_build("T35-b6", GF(5), m=5, alpha=2)
    assert L.fi_checked


def test_default_t_is_maximal():
    L = catalog_build("T43-c3", QQ, m=8)
    assert len(L.constants.entries) == 3  # pairs (2,3),(4,5),(6,7)


# ---------------------------------------------------------------------------
# constructions


def test_associated_lie_ex32_1_table():
    L = catalog_build("EX32-1", QQ)
    L0 = associated_lie(L, (0, 0, 0, 1))
    assert entries_1based(L0) == {
        (1, 2): {3: Fraction(1)}, (1, 3): {2: Fraction(1)},
        (2, 3): {1: Fraction(1)},
    }
    assert L0.fi_checked


def test_associated_lie_at_central_vector_is_abelian():
    L = catalog_build("EX33", QQ)
    L0 = associated_lie(L, (0, 0, 0, 1))  # x4 is central
    assert L0.constants.entries == ()


def test_associated_lie_ex42_at_x1():
    L = catalog_build("EX42", QQ, m=6)
    L0 = associated_lie(L, (1, 0, 0, 0, 0, 0))
    assert entries_1based(L0) == {
        (2, 4): {3: Fraction(1)}, (2, 5): {4: Fraction(1)},
        (2, 6): {5: Fraction(1)},
    }


def test_trivial_extension_of_heisenberg_is_ex33_relabeled():
    heis = lie_catalog_build("heisenberg", QQ, dim=3)
    L = trivial_extension(heis)
    assert entries_1based(L) == {(1, 2, 4): {3: Fraction(1)}}
    # swapping x3 and x4 recovers the EX33 table exactly
    perm = Matrix.from_rows(QQ, [[1, 0, 0, 0], [0, 1, 0, 0],
                                 [0, 0, 0, 1], [0, 0, 1, 0]])
    assert change_basis(L, perm).constants == catalog_build("EX33", QQ).constants


def test_trivial_extension_of_abelian_is_abelian():
    L = trivial_extension(abelian_algebra(QQ, 2, 3))
    assert L.constants.entries == ()
    assert L.dim == 4


def test_trivial_extension_of_simple3_is_ex32_1():
    L = trivial_extension(lie_catalog_build("simple3", QQ))
    assert L.constants == catalog_build("EX32-1", QQ).constants


def test_trivial_extension_rejects_non_lie_input():
    bad = make_algebra(QQ, 2, 3, {(1, 2): {3: 1}, (1, 3): {1: 1}})
    if not check_fundamental_identity(bad).holds:
        with pytest.raises(FundamentalIdentityError):
            trivial_extension(bad)


def test_trivial_extension_requires_arity_2():
    with pytest.raises(InvalidParameterError):
        trivial_extension(catalog_build("EX33", QQ))


def test_trivial_extension_fi_for_all_lie_entries():
    inputs = [lie_catalog_build("abelian", QQ, dim=3),
              lie_catalog_build("affine", QQ, dim=2),
              lie_catalog_build("heisenberg", QQ, dim=3),
              lie_catalog_build("heisenberg", QQ, dim=5),
              lie_catalog_build("simple3", QQ),
              lie_catalog_build("upper", QQ, n=2),
              lie_catalog_build("upper", QQ, n=3),
              lie_catalog_build("strictly-upper", QQ, n=3),
              lie_catalog_build("strictly-upper", QQ, n=4)]
    for J0 in inputs:
        L = trivial_extension(J0)
        assert L.fi_checked
        assert L.dim == J0.dim + 1


def test_trivial_extension_fi_for_random_commutator_members():
    # 100 random basis changes of the small matrix-commutator fixtures; the
    # extension of each must satisfy the identity (asserted at build)
    from nlie.iso import random_basis_change
    bases = [lie_catalog_build("upper", QQ, n=2),
             lie_catalog_build("strictly-upper", QQ, n=3),
             lie_catalog_build("heisenberg", QQ, dim=3)]
    for seed in range(100):
        J0 = random_basis_change(bases[seed % len(bases)], seed)
        L = trivial_extension(J0)
        assert L.fi_checked


def test_direct_sum_dims_add():
    a4 = catalog_build("A(n)", QQ, n=3)
    ex33 = catalog_build("EX33", QQ)
    s = direct_sum(a4, ex33)
    assert s.dim == 8
    assert derived_algebra(s).dim == derived_algebra(a4).dim + derived_algebra(ex33).dim
    assert center(s).dim == center(a4).dim + center(ex33).dim
    assert s.fi_checked


def test_direct_sum_with_abelian_preserves_derived():
    L = catalog_build("EX33", QQ)
    s = direct_sum(L, abelian_algebra(QQ, 3, 2))
    assert derived_algebra(s).dim == derived_algebra(L).dim


def test_direct_sum_summands_are_ideals():
    a4 = catalog_build("A(n)", QQ, n=3)
    s = direct_sum(a4, abelian_algebra(QQ, 3, 2))
    assert classify_subspace(s, coordinate_subspace(QQ, 6, range(4))).is_ideal
    assert classify_subspace(s, coordinate_subspace(QQ, 6, (4, 5))).is_abelian_ideal


def test_direct_sum_requires_same_arity():
    with pytest.raises(InvalidParameterError):
        direct_sum(catalog_build("EX33", QQ), abelian_algebra(QQ, 2, 2))


def test_semidirect_zero_action_is_direct_sum():
    sd = semidirect_A4(QQ, 6)
    ds = direct_sum(catalog_build("A(n)", QQ, n=3), abelian_algebra(QQ, 3, 2))
    assert sd.constants == ds.constants
    tau = coordinate_subspace(QQ, 6, (4, 5))
    assert classify_subspace(sd, tau).is_abelian_ideal
    assert classify_subspace(sd, coordinate_subspace(QQ, 6, range(4))).is_subalgebra


def test_semidirect_rejects_fi_violating_action():
    with pytest.raises(FundamentalIdentityError) as exc:
        semidirect_A4(QQ, 6, action={(1, 2, 5): {5: 1}})
    assert exc.value.report is not None
    assert exc.value.report.violations


def test_semidirect_action_validation():
    with pytest.raises(InvalidParameterError):
        semidirect_A4(QQ, 6, action={(1, 5, 6): {5: 1}})
    with pytest.raises(InvalidParameterError):
        semidirect_A4(QQ, 6, action={(1, 2, 5): {1: 1}})


def test_classify44_three_cases():
    assert classify_theorem44(catalog_build("EX33", QQ)).case == "3-solvable"
    assert classify_theorem44(catalog_build("A(n)", QQ, n=3)).case == "simple-A4"
    v = classify_theorem44(semidirect_A4(QQ, 6))
    assert v.case == "A4-semidirect"
    assert v.tau is not None and v.tau.dim == 2
    assert v.block is not None and v.block.dim == 4


def test_classify44_budget_exhaustion_returns_unknown():
    v = classify_theorem44(semidirect_A4(QQ, 6), budget=3)
    assert v.case == "unknown"


def test_classify44_works_on_prime_field_input():
    assert classify_theorem44(catalog_build("A(n)", GF(3), n=3)).case == "simple-A4"


# ---------------------------------------------------------------------------
# Lie fixtures


def test_lie_heisenberg_table():
    L = lie_catalog_build("heisenberg", QQ, dim=3)
    assert entries_1based(L) == {(1, 2): {3: Fraction(1)}}


def test_lie_strictly_upper_nilpotent():
    L = lie_catalog_build("strictly-upper", QQ, n=3)
    assert L.dim == 3
    assert L.fi_checked
    assert is_nilpotent(L)


def test_lie_upper_solvable_not_nilpotent():
    L = lie_catalog_build("upper", QQ, n=3)
    assert L.dim == 6
    rep = invariant_report(L)
    assert dict(rep.solvable)[2] is True
    assert not rep.nilpotent


def test_lie_affine_beta_one():
    L = lie_catalog_build("affine", QQ, dim=2)
    assert classify_subspace(L, coordinate_subspace(QQ, 2, (1,))).is_abelian_ideal
    for p in (2, 3):
        res = alpha_beta_exact_fp(reduce_mod_p(L, p))
        assert res.beta == 1
        assert res.alpha == 1


def test_lie_catalog_validation():
    with pytest.raises(InvalidParameterError):
        lie_catalog_build("affine", QQ, dim=3)
    with pytest.raises(InvalidParameterError):
        lie_catalog_build("heisenberg", QQ, dim=4)
    with pytest.raises(InvalidParameterError):
        lie_catalog_build("nope", QQ)


def test_entries_for_dims_all_valid():
    entries = entries_for_dims((4, 5), QQ)
    labels = [label for label, _ in entries]
    assert any("EX33" in lbl for lbl in labels)
    assert any("T44-3" in lbl for lbl in labels)
    dims = {L.dim for _, L in entries}
    assert dims == {4, 5}
