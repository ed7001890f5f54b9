"""n-ary Lie algebras given by totally antisymmetric structure constants.

An algebra of arity n and dimension m is stored canonically: one coefficient
vector per strictly increasing index tuple, all other values implied by the
sign rule.  Evaluation of the bracket on arbitrary vectors expands through
n x n minors, one per stored tuple, so sparse tables stay cheap.

Indices are 0-based internally and 1-based in every external surface
(documents, reports, CLI).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from itertools import combinations

from .errors import (
    DimensionMismatchError,
    FundamentalIdentityError,
    InvalidParameterError,
    ParseError,
)
from .fields import GF, QQ, Field, same_field
from .linalg import (
    Matrix,
    Subspace,
    span,
    validate_vector,
    vec_is_zero,
    zero_vector,
)

FORMAT_NAME = "nlie-v1"
SUBSPACE_FORMAT_NAME = "subspace-v1"


def sort_with_sign(indices):
    """Sorted tuple and permutation sign; sign 0 when an index repeats."""
    lst = list(indices)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(lst, lst[1:]):
        if a == b:
            return tuple(lst), 0
    return tuple(lst), sign


def perm_parity(seq) -> int:
    """Sign of the permutation given as a sequence of distinct integers."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class StructureConstants:
    """Canonical table: sorted (key, coefficient-vector) pairs, zero entries dropped."""

    field: Field
    arity: int
    dim: int
    entries: tuple  # tuple of (increasing 0-based index tuple, value tuple)

    def __post_init__(self):
        if self.arity < 2:
            raise InvalidParameterError(f"arity must be >= 2, got {self.arity}")
        if self.dim < 1:
            raise InvalidParameterError(f"dimension must be >= 1, got {self.dim}")

    def lookup(self) -> dict:
        return dict(self.entries)


@dataclass(frozen=True)
class NLieAlgebra:
    """An n-Lie algebra candidate; ``fi_checked`` records a verified identity."""

    constants: StructureConstants
    fi_checked: bool = False
    labels: tuple | None = None

    @property
    def field(self) -> Field:
        return self.constants.field

    @property
    def arity(self) -> int:
        return self.constants.arity

    @property
    def dim(self) -> int:
        return self.constants.dim

    @property
    def table(self) -> dict:
        tab = self.__dict__.get("_table")
        if tab is None:
            tab = self.constants.lookup()
            object.__setattr__(self, "_table", tab)
        return tab


# ``LieAlgebra`` is the arity-2 case; the Jacobi identity is the n = 2
# instance of the fundamental identity, so no separate machinery is needed.
LieAlgebra = NLieAlgebra


def require_arity(L: NLieAlgebra, n: int, what: str = "operation") -> None:
    if L.arity != n:
        raise InvalidParameterError(f"{what} requires arity {n}, got {L.arity}")


def make_algebra(field: Field, arity: int, dim: int, entries, labels=None) -> NLieAlgebra:
    """Build an algebra from 1-based table entries.

    ``entries`` maps strictly increasing 1-based tuples either to a sparse
    ``{target_index: coefficient}`` mapping or to a dense coefficient vector.
    """
    table = {}
    for key, value in entries.items():
        key = tuple(int(i) for i in key)
        if len(key) != arity:
            raise InvalidParameterError(f"bracket tuple {key} has wrong arity")
        if any(not (1 <= i <= dim) for i in key):
            raise InvalidParameterError(f"bracket tuple {key} out of range 1..{dim}")
        if any(a >= b for a, b in zip(key, key[1:])):
            raise InvalidParameterError(f"bracket tuple {key} is not strictly increasing")
        key0 = tuple(i - 1 for i in key)
        if key0 in table:
            raise InvalidParameterError(f"duplicate bracket tuple {key}")
        if isinstance(value, dict):
            vec = [field.zero] * dim
            for t, c in value.items():
                t = int(t)
                if not (1 <= t <= dim):
                    raise InvalidParameterError(f"target index {t} out of range 1..{dim}")
                vec[t - 1] = field.validate(c)
            vec = tuple(vec)
        else:
            vec = validate_vector(field, dim, value)
        if not vec_is_zero(field, vec):
            table[key0] = vec
    consts = StructureConstants(field, arity, dim,
                                tuple(sorted(table.items())))
    lab = tuple(labels) if labels is not None else None
    return NLieAlgebra(consts, fi_checked=False, labels=lab)


def abelian_algebra(field: Field, arity: int, dim: int) -> NLieAlgebra:
    return NLieAlgebra(StructureConstants(field, arity, dim, ()), fi_checked=True)


def _minor_det(field, vectors, cols):
    """Determinant of the minor [vectors[i][cols[j]]]."""
    n = len(cols)
    p = field.p
    if n == 2:
        a, b = vectors[0][cols[0]], vectors[0][cols[1]]
        c, d = vectors[1][cols[0]], vectors[1][cols[1]]
        det = a * d - b * c
        return det % p if p is not None else det
    if n == 3:
        c0, c1, c2 = cols
        a, b, c = vectors[0][c0], vectors[0][c1], vectors[0][c2]
        d, e, f = vectors[1][c0], vectors[1][c1], vectors[1][c2]
        g, h, i = vectors[2][c0], vectors[2][c1], vectors[2][c2]
        det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        return det % p if p is not None else det
    sub = Matrix.from_rows(field, [[v[c] for c in cols] for v in vectors])
    return sub.det()


def bracket_basis(L: NLieAlgebra, indices) -> tuple:
    """Bracket of basis vectors e_{i} for a 0-based index tuple in any order."""
    key, sign = sort_with_sign(indices)
    if sign == 0:
        return zero_vector(L.field, L.dim)
    val = L.table.get(key)
    if val is None:
        return zero_vector(L.field, L.dim)
    if sign == 1:
        return val
    f = L.field
    return tuple(f.neg(x) for x in val)


def bracket(L: NLieAlgebra, vectors) -> tuple:
    """Multilinear totally antisymmetric bracket of ``arity`` vectors."""
    f = L.field
    n = L.arity
    if len(vectors) != n:
        raise DimensionMismatchError(f"bracket needs {n} arguments, got {len(vectors)}")
    vecs = [validate_vector(f, L.dim, v) for v in vectors]
    out = list(zero_vector(f, L.dim))
    for cols, val in L.constants.entries:
        d = _minor_det(f, vecs, cols)
        if d != f.zero:
            for i, c in enumerate(val):
                if c != f.zero:
                    out[i] = f.add(out[i], f.mul(d, c))
    return tuple(out)


def _bracket_with_vector_slot(L, base_indices, slot, vec):
    """Bracket of basis vectors with ``vec`` substituted at one slot."""
    f = L.field
    out = list(zero_vector(f, L.dim))
    idx = list(base_indices)
    for t, c in enumerate(vec):
        if c == f.zero:
            continue
        idx[slot] = t
        bv = bracket_basis(L, idx)
        for i, x in enumerate(bv):
            if x != f.zero:
                out[i] = f.add(out[i], f.mul(c, x))
    return tuple(out)


def bracket_subspaces(L: NLieAlgebra, subspaces) -> Subspace:
    """Span of brackets over all basis tuples of the given subspaces.

    Arguments equal as subspaces are grouped: by antisymmetry each unordered
    choice of distinct basis vectors within a group contributes one generator
    (up to sign), so combinations replace full products there.
    """
    from itertools import product

    f = L.field
    n = L.arity
    if len(subspaces) != n:
        raise DimensionMismatchError(f"need {n} subspaces, got {len(subspaces)}")
    for s in subspaces:
        same_field(f, s.field)
        if s.ambient_dim != L.dim:
            raise DimensionMismatchError("subspace ambient dimension mismatch")
    if any(s.is_zero for s in subspaces):
        return span(f, L.dim, [])
    counts: dict = {}
    order = []
    for s in subspaces:
        if s in counts:
            counts[s] += 1
        else:
            counts[s] = 1
            order.append(s)
    pools = [list(combinations(s.basis, counts[s])) for s in order]
    vectors = []
    for picks in product(*pools):
        chosen = [row for pick in picks for row in pick]
        w = bracket(L, chosen)
        if not vec_is_zero(f, w):
            vectors.append(w)
    return span(f, L.dim, vectors)


@dataclass(frozen=True)
class FIViolation:
    """One violated instance; indices are 1-based for reporting."""

    x_indices: tuple
    y_indices: tuple
    residual: tuple


@dataclass(frozen=True)
class FIReport:
    holds: bool
    violations: tuple
    instances_checked: int

    def to_dict(self, field: Field) -> dict:
        return {
            "holds": self.holds,
            "instances_checked": self.instances_checked,
            "violations": [
                {
                    "x": list(v.x_indices),
                    "y": list(v.y_indices),
                    "residual": [field.format(c) for c in v.residual],
                }
                for v in self.violations
            ],
        }


def check_fundamental_identity(L: NLieAlgebra, max_violations: int | None = None) -> FIReport:
    """Check the defining identity on every pair of increasing basis tuples.

    The identity is multilinear and alternating in the inner tuple and in the
    outer arguments, so holding on increasing basis tuples is equivalent to
    holding on all vectors.  Violations are reported in lexicographic order.
    """
    f = L.field
    n = L.arity
    m = L.dim
    violations = []
    count = 0
    for x in combinations(range(m), n):
        bx = bracket_basis(L, x)
        bx_zero = vec_is_zero(f, bx)
        for y in combinations(range(m), n - 1):
            count += 1
            # lhs = [ [x...], y2..yn ]
            if bx_zero:
                lhs = zero_vector(f, m)
            else:
                lhs = _bracket_with_vector_slot(L, (0,) + y, 0, bx)
            # rhs = sum_i [ x1, .., [xi, y2..yn], .., xn ]
            rhs = list(zero_vector(f, m))
            for i in range(n):
                inner = bracket_basis(L, (x[i],) + y)
                if vec_is_zero(f, inner):
                    continue
                term = _bracket_with_vector_slot(L, x, i, inner)
                for t, c in enumerate(term):
                    if c != f.zero:
                        rhs[t] = f.add(rhs[t], c)
            residual = tuple(f.sub(a, b) for a, b in zip(lhs, rhs))
            if not vec_is_zero(f, residual):
                violations.append(FIViolation(
                    tuple(i + 1 for i in x), tuple(j + 1 for j in y), residual))
                if max_violations is not None and len(violations) >= max_violations:
                    return FIReport(False, tuple(violations), count)
    return FIReport(not violations, tuple(violations), count)


def with_fi_checked(L: NLieAlgebra) -> NLieAlgebra:
    """Return L flagged as verified, or raise carrying the violation report."""
    report = check_fundamental_identity(L)
    if not report.holds:
        v = report.violations[0]
        raise FundamentalIdentityError(
            f"fundamental identity fails at x={v.x_indices}, y={v.y_indices}",
            report=report,
        )
    return replace(L, fi_checked=True)


# ---------------------------------------------------------------------------
# nlie-v1 document format


def _parse_field_tag(obj):
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"p"}:
        p = obj["p"]
        if not isinstance(p, int):
            raise ParseError(f"malformed modulus: {p!r}")
        try:
            return GF(p)
        except InvalidParameterError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"malformed field tag: {obj!r}")


def _field_tag(field: Field):
    return "Q" if field.p is None else {"p": field.p}


def parse_algebra(text: str) -> NLieAlgebra:
    """Parse an nlie-v1 document (see serialize_algebra for the layout)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return algebra_from_dict(doc)


def algebra_from_dict(doc) -> NLieAlgebra:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("format") != FORMAT_NAME:
        raise ParseError(f"unsupported format: {doc.get('format')!r}")
    arity = doc.get("arity")
    dim = doc.get("dim")
    if not isinstance(arity, int) or arity < 2:
        raise ParseError(f"bad arity: {arity!r}")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"bad dim: {dim!r}")
    fld = _parse_field_tag(doc.get("field"))
    labels = doc.get("labels")
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != dim
                or not all(isinstance(s, str) for s in labels)):
            raise ParseError("labels must be a list of dim strings")
        labels = tuple(labels)
    table = {}
    brackets = doc.get("brackets", [])
    if not isinstance(brackets, list):
        raise ParseError("brackets must be a list")
    for item in brackets:
        if not isinstance(item, dict) or "on" not in item:
            raise ParseError(f"malformed bracket entry: {item!r}")
        on = item["on"]
        if (not isinstance(on, list) or len(on) != arity
                or not all(isinstance(i, int) for i in on)):
            raise ParseError(f"malformed bracket tuple: {on!r}")
        if any(not (1 <= i <= dim) for i in on):
            raise ParseError(f"bracket tuple {on} out of range 1..{dim}")
        if any(a >= b for a, b in zip(on, on[1:])):
            raise ParseError(f"bracket tuple {on} is not strictly increasing")
        key = tuple(i - 1 for i in on)
        if key in table:
            raise ParseError(f"duplicate bracket tuple {on}")
        vec = [fld.zero] * dim
        val = item.get("val", {})
        if not isinstance(val, dict):
            raise ParseError(f"malformed value for tuple {on}")
        for tkey, scalar in val.items():
            try:
                t = int(tkey)
            except (TypeError, ValueError):
                raise ParseError(f"bad target index {tkey!r}") from None
            if not (1 <= t <= dim):
                raise ParseError(f"target index {t} out of range 1..{dim}")
            vec[t - 1] = fld.parse(scalar if isinstance(scalar, str) else str(scalar))
        table[key] = tuple(vec)
    entries = tuple(sorted(
        (k, v) for k, v in table.items() if not vec_is_zero(fld, v)
    ))
    return NLieAlgebra(StructureConstants(fld, arity, dim, entries), labels=labels)


def algebra_to_dict(L: NLieAlgebra) -> dict:
    f = L.field
    doc = {
        "format": FORMAT_NAME,
        "arity": L.arity,
        "dim": L.dim,
        "field": _field_tag(f),
    }
    if L.labels is not None:
        doc["labels"] = list(L.labels)
    doc["brackets"] = [
        {
            "on": [i + 1 for i in key],
            "val": {str(t + 1): f.format(c)
                    for t, c in enumerate(val) if c != f.zero},
        }
        for key, val in L.constants.entries
    ]
    return doc


def serialize_algebra(L: NLieAlgebra) -> str:
    """Canonical nlie-v1 text: sorted tuples, sparse values, minimal scalars."""
    return json.dumps(algebra_to_dict(L), indent=2) + "\n"


def load_algebra(path) -> NLieAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def save_algebra(L: NLieAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_algebra(L))


# ---------------------------------------------------------------------------
# subspace-v1 sidecar format (row lists, same scalar syntax)


def parse_subspace(text: str) -> Subspace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != SUBSPACE_FORMAT_NAME:
        raise ParseError(f"unsupported format: {doc.get('format')!r}"
                         if isinstance(doc, dict) else "document must be a JSON object")
    ambient = doc.get("ambient")
    if not isinstance(ambient, int) or ambient < 0:
        raise ParseError(f"bad ambient dimension: {ambient!r}")
    fld = _parse_field_tag(doc.get("field"))
    rows = doc.get("rows", [])
    if not isinstance(rows, list):
        raise ParseError("rows must be a list of row lists")
    vectors = []
    for row in rows:
        if not isinstance(row, list) or len(row) != ambient:
            raise ParseError(f"malformed row: {row!r}")
        vectors.append(tuple(
            fld.parse(x if isinstance(x, str) else str(x)) for x in row))
    return span(fld, ambient, vectors)


def serialize_subspace(S: Subspace) -> str:
    f = S.field
    doc = {
        "format": SUBSPACE_FORMAT_NAME,
        "ambient": S.ambient_dim,
        "field": _field_tag(f),
        "rows": [[f.format(x) for x in row] for row in S.basis],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_subspace(path) -> Subspace:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_subspace(fh.read())
