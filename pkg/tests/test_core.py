import json
from fractions import Fraction

import pytest

from nlie.core import (
    abelian_algebra,
    bracket,
    bracket_basis,
    bracket_subspaces,
    check_fundamental_identity,
    make_algebra,
    parse_algebra,
    parse_subspace,
    serialize_algebra,
    serialize_subspace,
)
from nlie.errors import (
    DimensionMismatchError,
    InvalidParameterError,
    ParseError,
)
from nlie.fields import GF, QQ
from nlie.linalg import full_subspace, span, zero_subspace, unit_vector

from oracles import naive_bracket, naive_fi_residual


A4_TABLE = {(2, 3, 4): {1: 1}, (1, 3, 4): {2: 1},
            (1, 2, 4): {3: 1}, (1, 2, 3): {4: 1}}


def a4(field=QQ):
    return make_algebra(field, 3, 4, A4_TABLE)


def ex33(field=QQ):
    return make_algebra(field, 3, 4, {(1, 2, 3): {4: 1}})


def e(i, m=4, field=QQ):
    return unit_vector(field, m, i)


def test_bracket_repeated_argument_is_zero():
    L = a4()
    assert bracket(L, (e(0), e(0), e(1))) == (0, 0, 0, 0)
    v = (Fraction(1), Fraction(2), Fraction(0), Fraction(1))
    assert bracket(L, (v, v, e(2))) == (0, 0, 0, 0)


def test_ex33_basis_bracket():
    L = ex33()
    assert bracket(L, (e(0), e(1), e(2))) == (0, 0, 0, 1)


def test_ex33_multilinearity_instance():
    L = ex33()
    u = tuple(Fraction(x) for x in (1, 1, 0, 0))
    got = bracket(L, (u, e(1), e(2)))
    assert got == (0, 0, 0, 1)
    assert got == naive_bracket(L, [u, e(1), e(2)])


def test_bracket_matches_naive_oracle_on_dense_vectors():
    L = a4()
    vecs = [tuple(Fraction(x) for x in row)
            for row in ((1, 2, 0, -1), (0, 1, 1, 1), (2, 0, 1, 3))]
    assert bracket(L, vecs) == naive_bracket(L, vecs)


def test_bracket_sign_under_swap():
    L = a4(GF(5))
    vecs = [(1, 2, 0, 4), (0, 1, 1, 1), (2, 0, 1, 3)]
    lhs = bracket(L, vecs)
    rhs = bracket(L, [vecs[1], vecs[0], vecs[2]])
    assert lhs == tuple((-x) % 5 for x in rhs)


def test_bracket_basis_out_of_order():
    L = ex33()
    assert bracket_basis(L, (2, 0, 1)) == (0, 0, 0, 1)   # even permutation
    assert bracket_basis(L, (1, 0, 2)) == (0, 0, 0, -1)  # odd permutation
    assert bracket_basis(L, (0, 0, 1)) == (0, 0, 0, 0)


def test_bracket_shape_errors():
    L = ex33()
    with pytest.raises(DimensionMismatchError):
        bracket(L, (e(0), e(1)))
    with pytest.raises(DimensionMismatchError):
        bracket(L, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_bracket_subspaces_zero_argument():
    L = ex33()
    full = full_subspace(QQ, 4)
    z = zero_subspace(QQ, 4)
    assert bracket_subspaces(L, (z, full, full)).dim == 0


def test_bracket_subspaces_derived_ex33():
    L = ex33()
    full = full_subspace(QQ, 4)
    assert bracket_subspaces(L, (full, full, full)) == span(QQ, 4, [(0, 0, 0, 1)])


def test_bracket_subspaces_derived_a4_is_full():
    L = a4()
    full = full_subspace(QQ, 4)
    assert bracket_subspaces(L, (full, full, full)) == full


def test_bracket_subspaces_monotone_in_each_argument():
    L = a4()
    full = full_subspace(QQ, 4)
    small = span(QQ, 4, [(1, 0, 0, 0)])
    bigger = span(QQ, 4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    lo = bracket_subspaces(L, (small, full, full))
    hi = bracket_subspaces(L, (bigger, full, full))
    assert lo <= hi


def test_fi_holds_for_a4_and_ex33():
    assert check_fundamental_identity(a4()).holds
    assert check_fundamental_identity(ex33()).holds
    assert check_fundamental_identity(a4(GF(2))).holds


def test_fi_violation_detected_and_cross_checked():
    # changing the target of [e1,e2,e3] from e4 to e1 genuinely breaks the identity
    bad = make_algebra(QQ, 3, 4, {(2, 3, 4): {1: 1}, (1, 3, 4): {2: 1},
                                  (1, 2, 4): {3: 1}, (1, 2, 3): {1: 1}})
    report = check_fundamental_identity(bad)
    assert not report.holds
    assert report.violations
    v = report.violations[0]
    residual = naive_fi_residual(bad, tuple(i - 1 for i in v.x_indices),
                                 tuple(j - 1 for j in v.y_indices))
    assert residual == v.residual
    assert any(x != 0 for x in residual)


def test_fi_violation_for_two_disjoint_pairs_to_noncentral_target():
    # [x1,x2,x5]=x5, [x3,x4,x5]=x5 violates the identity (rank-4 form)
    L = make_algebra(QQ, 3, 5, {(1, 2, 5): {5: 1}, (3, 4, 5): {5: 1}})
    report = check_fundamental_identity(L)
    assert not report.holds
    for v in report.violations:
        residual = naive_fi_residual(L, tuple(i - 1 for i in v.x_indices),
                                     tuple(j - 1 for j in v.y_indices))
        assert residual == v.residual


def test_fi_random_instantiation_zero_for_valid_algebra():
    import random
    rng = random.Random(11)
    L = a4()
    f = QQ
    for _ in range(25):
        x = [tuple(Fraction(rng.randrange(-2, 3)) for _ in range(4)) for _ in range(3)]
        y = [tuple(Fraction(rng.randrange(-2, 3)) for _ in range(4)) for _ in range(2)]
        lhs = bracket(L, [bracket(L, x)] + y)
        rhs = (0, 0, 0, 0)
        for i in range(3):
            args = list(x)
            args[i] = bracket(L, [x[i]] + y)
            term = bracket(L, args)
            rhs = tuple(f.add(a, b) for a, b in zip(rhs, term))
        assert lhs == rhs


# ---------------------------------------------------------------------------
# document format


EX33_DOC = {
    "format": "nlie-v1",
    "arity": 3,
    "dim": 4,
    "field": "Q",
    "brackets": [{"on": [1, 2, 3], "val": {"4": "1"}}],
}


def test_parse_ex33_document():
    L = parse_algebra(json.dumps(EX33_DOC))
    assert L.arity == 3 and L.dim == 4 and L.field == QQ
    assert L.constants.entries == (((0, 1, 2), (Fraction(0), Fraction(0),
                                                Fraction(0), Fraction(1))),)


def test_parse_empty_bracket_list_is_abelian():
    doc = {"format": "nlie-v1", "arity": 3, "dim": 5, "field": "Q", "brackets": []}
    L = parse_algebra(json.dumps(doc))
    assert L.constants.entries == ()
    assert check_fundamental_identity(L).holds


@pytest.mark.parametrize("mutate,msg", [
    (lambda d: d.update(format="nope"), "unsupported format"),
    (lambda d: d.update(arity=1), "bad arity"),
    (lambda d: d.update(dim=0), "bad dim"),
    (lambda d: d.update(field={"p": 6}), "prime"),
    (lambda d: d.update(field={"p": "3"}), "modulus"),
    (lambda d: d["brackets"].append({"on": [2, 1, 3], "val": {}}), "increasing"),
    (lambda d: d["brackets"].append({"on": [1, 2, 3], "val": {"4": "2"}}), "duplicate"),
    (lambda d: d["brackets"].append({"on": [1, 2, 5], "val": {}}), "out of range"),
    (lambda d: d["brackets"].__setitem__(0, {"on": [1, 2, 3], "val": {"9": "1"}}),
     "out of range"),
    (lambda d: d["brackets"].__setitem__(0, {"on": [1, 2, 3], "val": {"4": "1/0"}}),
     "denominator"),
    (lambda d: d.update(labels=["a"]), "labels"),
])
def test_parse_errors(mutate, msg):
    doc = json.loads(json.dumps(EX33_DOC))
    mutate(doc)
    with pytest.raises(ParseError, match=msg):
        parse_algebra(json.dumps(doc))


def test_parse_rejects_non_json():
    with pytest.raises(ParseError):
        parse_algebra("not json")


def test_round_trip_is_identity_on_canonical_documents():
    L = make_algebra(QQ, 3, 5, {(1, 2, 5): {1: Fraction(3, 2), 3: -2},
                                (2, 3, 4): {5: 7}}, labels=list("abcde"))
    text = serialize_algebra(L)
    back = parse_algebra(text)
    assert back.constants == L.constants
    assert back.labels == L.labels
    assert serialize_algebra(back) == text


def test_round_trip_gf_p():
    L = make_algebra(GF(7), 3, 4, {(1, 2, 3): {4: 6}, (1, 2, 4): {3: 3}})
    back = parse_algebra(serialize_algebra(L))
    assert back.constants == L.constants


def test_serialize_normalizes_scalar_text():
    doc = json.loads(json.dumps(EX33_DOC))
    doc["brackets"][0]["val"] = {"4": "2/2"}
    text = serialize_algebra(parse_algebra(json.dumps(doc)))
    assert '"1"' in text and "2/2" not in text


def test_make_algebra_validation():
    with pytest.raises(InvalidParameterError):
        make_algebra(QQ, 3, 4, {(2, 1, 3): {4: 1}})
    with pytest.raises(InvalidParameterError):
        make_algebra(QQ, 3, 4, {(1, 2): {4: 1}})
    with pytest.raises(InvalidParameterError):
        make_algebra(QQ, 3, 4, {(1, 2, 5): {4: 1}})
    with pytest.raises(InvalidParameterError):
        make_algebra(QQ, 3, 4, {(1, 2, 3): {5: 1}})


def test_abelian_algebra_has_no_entries():
    L = abelian_algebra(QQ, 3, 5)
    assert L.constants.entries == ()
    assert L.fi_checked


def test_subspace_document_round_trip():
    S = span(GF(3), 4, [(1, 2, 0, 1), (0, 0, 1, 2)])
    back = parse_subspace(serialize_subspace(S))
    assert back == S


def test_subspace_document_errors():
    with pytest.raises(ParseError):
        parse_subspace(json.dumps({"format": "subspace-v1", "ambient": 2,
                                   "field": "Q", "rows": [[1, 2, 3]]}))
    with pytest.raises(ParseError):
        parse_subspace(json.dumps({"format": "other"}))
