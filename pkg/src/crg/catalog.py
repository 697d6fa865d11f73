"""The shipped group catalog: generator matrices, reference degrees and
codegrees (Table-1-style data), and construction helpers.

Generator sourcing
------------------
The imprimitive groups G(de,e,4) use the standard monomial generators
(coordinate transpositions, a diagonal sign reflection when e < de, and the
twisted transposition x1 <-> zeta x2).  W(A4) acts on the sum-zero model of
the 5-coordinate permutation representation.  W(F4) uses the crystallographic
simple-root reflections.  W(H4) is the canonical Coxeter representation of
the 5-3-3 diagram over Q(zeta_5).  G29 and G31 extend G(2,1,4) / G(4,2,4) by
one unitary reflection whose root was found by closure search (see
scripts/find_exceptional_generators.py); nothing is trusted until
verify_numerology passes against the reference data.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache

from gmpy2 import mpq

from .cyclotomic import Cyclotomic
from .linalg import Mat
from .groups import ReflectionGroup

CATALOG_ENV = "CRG_CATALOG"
_DATA_PATH = os.path.join(os.path.dirname(__file__), "data", "catalog.json")


# -- matrix constructions ----------------------------------------------------

def transposition(n_cond: int, size: int, i: int, j: int) -> Mat:
    rows = [[1 if (r == c and r not in (i, j)) or (r, c) in ((i, j), (j, i))
             else 0 for c in range(size)] for r in range(size)]
    return Mat.build(n_cond, rows)


def diag(n_cond: int, entries) -> Mat:
    size = len(entries)
    return Mat.build(n_cond, [[entries[r] if r == c else 0
                               for c in range(size)] for r in range(size)])


def twisted_transposition(m: int, size: int = 4) -> Mat:
    """Reflection x1 -> zeta_m^-1 x2, x2 -> zeta_m x1 (order 2, det -1)."""
    cond = 1 if m <= 2 else m
    if m <= 2:
        z = Cyclotomic.rational(1 if m == 1 else -1)
        zinv = z
    else:
        z = Cyclotomic.root_of_unity(m)
        zinv = Cyclotomic.root_of_unity(m, m - 1)
    rows = [[0] * size for _ in range(size)]
    rows[0][1] = zinv
    rows[1][0] = z
    for k in range(2, size):
        rows[k][k] = 1
    return Mat.build(cond, rows)


def unitary_reflection(root, n_cond: int) -> Mat:
    """Order-2 reflection with the given root line: s = I - 2 r rbar^T / <r,r>
    for the standard Hermitian form."""
    r = [x if isinstance(x, Cyclotomic) else Cyclotomic.rational(x, n_cond)
         for x in root]
    r = [x.lift(n_cond) for x in r]
    rbar = [x.conjugate() for x in r]
    norm = None
    for a, b in zip(r, rbar):
        t = a * b
        norm = t if norm is None else norm + t
    size = len(r)
    two_over = Cyclotomic.rational(2, n_cond) / norm
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            x = -(two_over * r[i] * rbar[j])
            if i == j:
                x = x + 1
            row.append(x)
        rows.append(row)
    return Mat.build(n_cond, rows)


def imprimitive_generators(de: int, e: int, size: int = 4) -> list[Mat]:
    """Monomial generators of G(de, e, size): all reflections of order 2.

    - transpositions (i, i+1)
    - for e < de: the diagonal reflection diag(zeta_de^e, 1, ..) (order 2
      exactly when de = 2e, which covers every catalog case)
    - for e > 1: the twisted transposition with zeta_de
    """
    n_cond = 1 if de <= 2 else de
    gens = []
    if e < de:
        if (2 * e) % de == 0:
            z = Cyclotomic.rational(-1, n_cond)
        else:
            z = Cyclotomic.root_of_unity(de, e)
        gens.append(diag(n_cond, [z] + [1] * (size - 1)))
    if e > 1:
        gens.append(twisted_transposition(de, size).lift(n_cond))
    for i in range(size - 1):
        gens.append(transposition(n_cond, size, i, i + 1))
    return gens


def a4_generators() -> list[Mat]:
    """W(A4) = S5 on the sum-zero 4-space, basis b_i = e_i - e_5."""
    gens = [transposition(1, 4, i, i + 1) for i in range(3)]
    last = Mat.build(1, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0],
                         [-1, -1, -1, -1]])
    gens.append(last)
    return gens


def f4_generators() -> list[Mat]:
    """Crystallographic simple reflections of W(F4)."""
    half = mpq(1, 2)
    s1 = transposition(1, 4, 1, 2)
    s2 = transposition(1, 4, 2, 3)
    s3 = diag(1, [1, 1, 1, -1])
    s4 = Mat.build(1, [[half, half, half, half],
                       [half, half, -half, -half],
                       [half, -half, half, -half],
                       [half, -half, -half, half]])
    return [s1, s2, s3, s4]


def h4_generators() -> list[Mat]:
    """Canonical Coxeter representation of H4 (diagram 5-3-3) over Q(zeta_5):
    s_i = I - 2 e_i B_i with Gram entries B_ij = -cos(pi/m_ij)."""
    z = Cyclotomic.root_of_unity(5)
    # -2 cos(pi/5) = zeta_5^2 + zeta_5^3
    m2cos = z * z + z * z * z
    one = Cyclotomic.one(5)
    rows_B = [
        [one, m2cos * mpq(1, 2), 0, 0],
        [m2cos * mpq(1, 2), one, mpq(-1, 2), 0],
        [0, mpq(-1, 2), one, mpq(-1, 2)],
        [0, 0, mpq(-1, 2), one],
    ]
    gens = []
    for i in range(4):
        rows = []
        for r in range(4):
            if r != i:
                rows.append([1 if c == r else 0 for c in range(4)])
            else:
                row = []
                for c in range(4):
                    b = rows_B[i][c]
                    b = b if isinstance(b, Cyclotomic) else Cyclotomic.rational(b, 5)
                    v = Cyclotomic.rational(-2, 5) * b
                    if c == i:
                        v = v + 1
                    row.append(v)
                rows.append(row)
        gens.append(Mat.build(5, rows))
    return gens


def g29_generators() -> list[Mat]:
    """G(2,1,4) extended by one unitary reflection (root found by search,
    validated by numerology)."""
    root = _exceptional_root("G29")
    base = imprimitive_generators(2, 1)
    extra = unitary_reflection(root, 4)
    return [g.lift(4) for g in base] + [extra]


def g31_generators() -> list[Mat]:
    """G(4,2,4) extended by one unitary reflection (root found by search,
    validated by numerology)."""
    root = _exceptional_root("G31")
    base = imprimitive_generators(4, 2)
    extra = unitary_reflection(root, 4)
    return [g.lift(4) for g in base] + [extra]


def _exceptional_root(name: str):
    roots = load_catalog_file().get("exceptional_roots", {})
    if name not in roots:
        raise KeyError(f"catalog has no reflection root for {name}")
    return [Cyclotomic.from_json(x) for x in roots[name]]


# -- reference data ----------------------------------------------------------

def _builtin_rows() -> list[dict]:
    """Reference rows (orders from |W| = d1 d2 d3 d4, derived orders from
    the 12e^3 / 96e^3 family formulas and the exceptional values)."""
    return [
        {"name": "G(1,1,5)", "degrees": [2, 3, 4, 5], "codegrees": [0, 1, 2, 3],
         "expected_order": 120, "expected_derived_order": 60,
         "construction": "a4"},
        {"name": "G(2,2,4)", "degrees": [2, 4, 6, 4], "codegrees": [0, 2, 4, 2],
         "expected_order": 192, "expected_derived_order": 96,
         "construction": "imprimitive", "de": 2, "e": 2},
        {"name": "G(3,3,4)", "degrees": [3, 6, 9, 4], "codegrees": [0, 3, 6, 5],
         "expected_order": 648, "expected_derived_order": 324,
         "construction": "imprimitive", "de": 3, "e": 3},
        {"name": "G(4,4,4)", "degrees": [4, 8, 12, 4], "codegrees": [0, 4, 8, 8],
         "expected_order": 1536, "expected_derived_order": 768,
         "construction": "imprimitive", "de": 4, "e": 4},
        {"name": "G(2,1,4)", "degrees": [2, 4, 6, 8], "codegrees": [0, 2, 4, 6],
         "expected_order": 384, "expected_derived_order": 96,
         "construction": "imprimitive", "de": 2, "e": 1},
        {"name": "G(4,2,4)", "degrees": [4, 8, 12, 8], "codegrees": [0, 4, 8, 12],
         "expected_order": 3072, "expected_derived_order": 768,
         "construction": "imprimitive", "de": 4, "e": 2},
        {"name": "G28", "degrees": [2, 6, 8, 12], "codegrees": [0, 4, 6, 10],
         "expected_order": 1152, "expected_derived_order": 288,
         "construction": "f4"},
        {"name": "G29", "degrees": [4, 8, 12, 20], "codegrees": [0, 8, 12, 16],
         "expected_order": 7680, "expected_derived_order": 3840,
         "construction": "g29"},
        {"name": "G30", "degrees": [2, 12, 20, 30], "codegrees": [0, 10, 18, 28],
         "expected_order": 14400, "expected_derived_order": 7200,
         "construction": "h4"},
        {"name": "G31", "degrees": [8, 12, 20, 24], "codegrees": [0, 12, 16, 28],
         "expected_order": 46080, "expected_derived_order": 23040,
         "construction": "g31"},
    ]


_CONSTRUCTORS = {
    "a4": a4_generators,
    "f4": f4_generators,
    "h4": h4_generators,
    "g29": g29_generators,
    "g31": g31_generators,
}


def generators_for(row: dict) -> list[Mat]:
    kind = row["construction"]
    if kind == "imprimitive":
        return imprimitive_generators(row["de"], row["e"])
    if kind == "json":
        return [Mat.from_json(g) for g in row["generators"]]
    return _CONSTRUCTORS[kind]()


@lru_cache(maxsize=None)
def load_catalog_file(path: str | None = None) -> dict:
    p = path or os.environ.get(CATALOG_ENV) or _DATA_PATH
    with open(p) as fh:
        data = json.load(fh)
    _validate_catalog(data)
    return data


def _validate_catalog(data: dict) -> None:
    if "groups" not in data or not isinstance(data["groups"], list):
        raise ValueError("catalog: missing 'groups' list")
    for row in data["groups"]:
        for key in ("name", "degrees", "codegrees", "expected_order",
                    "expected_derived_order"):
            if key not in row:
                raise ValueError(f"catalog row missing {key!r}: {row}")
        if len(row["degrees"]) != 4 or len(row["codegrees"]) != 4:
            raise ValueError(f"catalog row {row['name']}: need 4 degrees and "
                             "4 codegrees")
        if "construction" not in row and "generators" not in row:
            raise ValueError(f"catalog row {row['name']}: no generators")


_GROUPS: dict[str, ReflectionGroup] = {}


def group_names(path: str | None = None) -> list[str]:
    return [row["name"] for row in load_catalog_file(path)["groups"]]


def get_group(name: str, path: str | None = None) -> ReflectionGroup:
    """Catalog lookup with per-process caching of enumerated groups."""
    key = f"{path or ''}::{name}"
    g = _GROUPS.get(key)
    if g is None:
        data = load_catalog_file(path)
        row = next((r for r in data["groups"] if r["name"] == name), None)
        if row is None:
            raise KeyError(f"unknown catalog group {name!r}")
        if "construction" not in row:
            row = dict(row, construction="json")
        g = ReflectionGroup(
            row["name"], generators_for(row),
            degrees=row["degrees"], codegrees=row["codegrees"],
            expected_order=row["expected_order"],
            expected_derived_order=row["expected_derived_order"])
        _GROUPS[key] = g
    return g


def write_catalog(path: str, exceptional_roots: dict) -> None:
    """Emit the shipped catalog file.  Generator matrices are serialized for
    the record (loads prefer the named constructions; a user catalog may
    instead supply raw 'generators')."""
    rows = []
    for row in _builtin_rows():
        out = dict(row)
        if row["construction"] in ("g29", "g31"):
            # constructions depend on the root table written below
            out["conductor"] = 4
        rows.append(out)
    data = {"groups": rows, "exceptional_roots": exceptional_roots}
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
