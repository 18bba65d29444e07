"""Parametric constructors for the rational-double-point equation
families and the cusp families, together with the expected
classification records used for cross-checking.

Family ids follow the usual type labels: "A_n", "D_n", "E_6".."E_8" for
the large-characteristic rows, "D_2n^0", "D_2n^r", "D_2n^{n-1}",
"D_2n+1^0", "D_2n+1^r", "D_2n+1^{n-1}" and "E_6^0".."E_8^4" for the
small-characteristic rows, plus "cusp_hyp" and "cusp_ci".

The D_2n+1^{n-1} equation uses the xyz cross term (the printed template
x*y^(n-r)*z at r = n-1).  The F-regular / RET / LET columns are carried
as literature metadata only and are never computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .fp_poly import Poly, PolyRing, format_poly

RDP_VARIABLES = ("x", "y", "z")
CUSP_CI_VARIABLES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class ExpectedRecord:
    """Expected verdicts: f_pure / f_liftable are recomputed by the
    pipeline; the last three columns are literature reference metadata.
    """

    f_pure: bool
    f_liftable: bool
    f_regular_ref: bool | None = None
    ret_ref: bool | None = None
    let_ref: bool | None = None

    def __post_init__(self):
        if self.f_liftable and not self.f_pure:
            raise ValueError("no family is F-liftable without being F-pure")


def _rec(code: str) -> ExpectedRecord:
    """Decode a row in table column order: F-pure, F-regular, F-liftable,
    RET, LET."""
    pure, regular, liftable, ret, let = (c == "Y" for c in code)
    return ExpectedRecord(f_pure=pure, f_liftable=liftable,
                          f_regular_ref=regular, ret_ref=ret, let_ref=let)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    row_label: str
    p_constraint: str            # "p>0", "p>2", "p>3", "p>5", "p=2", ...
    equation_template: str
    param_names: tuple[str, ...]
    expected: ExpectedRecord
    test_primes: tuple[int, ...]

    def admits_p(self, p: int) -> bool:
        kind, bound = self.p_constraint[1], int(self.p_constraint[2:])
        if kind == ">":
            return p > bound
        return p == bound


def _p2(label, template, params, code):
    return (label, "p=2", template, params, code, (2,))


def _p3(label, template, code):
    return (label, "p=3", template, (), code, (3,))


# one entry per printed table row, in row order:
# (row label, p constraint, template, param names, YYNNN code, test primes)
_RDP_ROWS: list[tuple] = [
    ("A_n (p !| n+1)", "p>0", "z^(n+1) + x*y", ("n",), "YYYYY", (2, 3, 5, 7)),
    ("A_n (p | n+1)", "p>0", "z^(n+1) + x*y", ("n",), "YYYNY", (2, 3, 5, 7)),
    ("D_n", "p>2", "z^2 + x^2*y + y^(n+1)", ("n",), "YYYYY", (3, 5, 7)),
    ("E_6", "p>3", "z^2 + x^3 + y^4", (), "YYYYY", (5, 7)),
    ("E_7", "p>3", "z^2 + x^3 + x*y^3", (), "YYYYY", (5, 7)),
    ("E_8", "p>5", "z^2 + x^3 + y^5", (), "YYYYY", (7,)),
    _p2("D_2n^0", "z^2 + x^2*y + x*y^n", ("n",), "NNNNN"),
    _p2("D_2n^r", "z^2 + x^2*y + x*y^n + x*y^(n-r)*z", ("n", "r"), "NNNNN"),
    _p2("D_2n^{n-1}", "z^2 + x^2*y + x*y^n + x*y*z", ("n",), "YNYNY"),
    _p2("D_2n+1^0", "z^2 + x^2*y + y^n*z", ("n",), "NNNNN"),
    _p2("D_2n+1^r", "z^2 + x^2*y + y^n*z + x*y^(n-r)*z", ("n", "r"), "NNNNN"),
    _p2("D_2n+1^{n-1}", "z^2 + x^2*y + y^n*z + x*y*z", ("n",), "YNYNY"),
    _p2("E_6^0", "z^2 + x^3 + y^2*z", (), "NNNNN"),
    _p2("E_6^1", "z^2 + x^3 + y^2*z + x*y*z", (), "YNYYY"),
    _p2("E_7^0", "z^2 + x^3 + x*y^3", (), "NNNNN"),
    _p2("E_7^1", "z^2 + x^3 + x*y^3 + x^2*y*z", (), "NNNNN"),
    _p2("E_7^2", "z^2 + x^3 + x*y^3 + y^3*z", (), "NNNNN"),
    _p2("E_7^3", "z^2 + x^3 + x*y^3 + x*y*z", (), "YNYYY"),
    _p2("E_8^0", "z^2 + x^3 + y^5", (), "NNNNN"),
    _p2("E_8^1", "z^2 + x^3 + y^5 + x*y^3*z", (), "NNNNN"),
    _p2("E_8^2", "z^2 + x^3 + y^5 + x*y^2*z", (), "NNNNN"),
    _p2("E_8^3", "z^2 + x^3 + y^5 + y^3*z", (), "NNNNN"),
    _p2("E_8^4", "z^2 + x^3 + y^5 + x*y*z", (), "YNYYY"),
    _p3("E_6^0", "z^2 + x^3 + y^4", "NNNNN"),
    _p3("E_6^1", "z^2 + x^3 + y^4 + x^2*y^2", "YNYNY"),
    _p3("E_7^0", "z^2 + x^3 + x*y^3", "NNNNN"),
    _p3("E_7^1", "z^2 + x^3 + x*y^3 + x^2*y^2", "YNYYY"),
    _p3("E_8^0", "z^2 + x^3 + y^5", "NNNNN"),
    _p3("E_8^1", "z^2 + x^3 + y^5 + x^2*y^3", "NNNNN"),
    _p3("E_8^2", "z^2 + x^3 + y^5 + x^2*y^2", "YNYYY"),
    ("E_8^0", "p=5", "z^2 + x^3 + y^5", (), "NNNNN", (5,)),
    ("E_8^1", "p=5", "z^2 + x^3 + y^5 + x*y^4", (), "YNNYY", (5,)),
]


def _family_of_label(label: str) -> str:
    return label.split(" ")[0] if label.startswith("A_n") else label


TABLE_ROWS: tuple[FamilySpec, ...] = tuple(
    FamilySpec(_family_of_label(label), label, constraint, template,
               tuple(params), _rec(code), tuple(primes))
    for (label, constraint, template, params, code, primes) in _RDP_ROWS)


class UnknownFamilyError(ValueError):
    pass


class InadmissibleParameterError(ValueError):
    pass


def _rdp_ring(p: int, max_degree: int | None = None) -> PolyRing:
    if max_degree is None:
        return PolyRing(RDP_VARIABLES, p)
    return PolyRing(RDP_VARIABLES, p, max_degree)


def _build_equation(family: str, ring: PolyRing, n: int | None,
                    r: int | None) -> Poly:
    x, y, z = ring.gens()
    if family == "A_n":
        return z ** (n + 1) + x * y
    if family == "D_n":
        return z ** 2 + x ** 2 * y + y ** (n + 1)
    if family == "E_6":
        return z ** 2 + x ** 3 + y ** 4
    if family == "E_7":
        return z ** 2 + x ** 3 + x * y ** 3
    if family == "E_8":
        return z ** 2 + x ** 3 + y ** 5
    if family == "D_2n^0":
        return z ** 2 + x ** 2 * y + x * y ** n
    if family == "D_2n^r":
        return z ** 2 + x ** 2 * y + x * y ** n + x * y ** (n - r) * z
    if family == "D_2n^{n-1}":
        return z ** 2 + x ** 2 * y + x * y ** n + x * y * z
    if family == "D_2n+1^0":
        return z ** 2 + x ** 2 * y + y ** n * z
    if family == "D_2n+1^r":
        return z ** 2 + x ** 2 * y + y ** n * z + x * y ** (n - r) * z
    if family == "D_2n+1^{n-1}":
        return z ** 2 + x ** 2 * y + y ** n * z + x * y * z
    if family == "E_6^0":
        if ring.p == 2:
            return z ** 2 + x ** 3 + y ** 2 * z
        return z ** 2 + x ** 3 + y ** 4
    if family == "E_6^1":
        if ring.p == 2:
            return z ** 2 + x ** 3 + y ** 2 * z + x * y * z
        return z ** 2 + x ** 3 + y ** 4 + x ** 2 * y ** 2
    if family == "E_7^0":
        return z ** 2 + x ** 3 + x * y ** 3
    if family == "E_7^1":
        if ring.p == 2:
            return z ** 2 + x ** 3 + x * y ** 3 + x ** 2 * y * z
        return z ** 2 + x ** 3 + x * y ** 3 + x ** 2 * y ** 2
    if family == "E_7^2":
        return z ** 2 + x ** 3 + x * y ** 3 + y ** 3 * z
    if family == "E_7^3":
        return z ** 2 + x ** 3 + x * y ** 3 + x * y * z
    if family == "E_8^0":
        return z ** 2 + x ** 3 + y ** 5
    if family == "E_8^1":
        if ring.p == 2:
            return z ** 2 + x ** 3 + y ** 5 + x * y ** 3 * z
        if ring.p == 3:
            return z ** 2 + x ** 3 + y ** 5 + x ** 2 * y ** 3
        return z ** 2 + x ** 3 + y ** 5 + x * y ** 4
    if family == "E_8^2":
        if ring.p == 2:
            return z ** 2 + x ** 3 + y ** 5 + x * y ** 2 * z
        return z ** 2 + x ** 3 + y ** 5 + x ** 2 * y ** 2
    if family == "E_8^3":
        return z ** 2 + x ** 3 + y ** 5 + y ** 3 * z
    if family == "E_8^4":
        return z ** 2 + x ** 3 + y ** 5 + x * y * z
    raise UnknownFamilyError(f"unknown family {family!r}")


def _rows_for(family: str, p: int) -> list[FamilySpec]:
    rows = [row for row in TABLE_ROWS
            if row.family == family and row.admits_p(p)]
    if not rows:
        raise InadmissibleParameterError(
            f"family {family!r} has no table row at p={p}")
    return rows


def _validate_params(row: FamilySpec, p: int, n: int | None, r: int | None):
    if "n" in row.param_names:
        if n is None:
            raise InadmissibleParameterError(
                f"family {row.family!r} requires parameter n")
        low = 1 if row.family == "A_n" else 2
        if row.family in ("D_2n^r", "D_2n+1^r"):
            low = 3
        if n < low:
            raise InadmissibleParameterError(
                f"family {row.family!r} requires n >= {low}, got {n}")
    if "r" in row.param_names:
        if r is None:
            raise InadmissibleParameterError(
                f"family {row.family!r} requires parameter r")
        if not 1 <= r <= n - 2:
            raise InadmissibleParameterError(
                f"family {row.family!r} requires 1 <= r <= n-2, got r={r}")


def make_rdp(family: str, p: int, n: int | None = None,
             r: int | None = None) -> Poly:
    """The table equation of the given family at characteristic p."""
    rows = _rows_for(family, p)
    _validate_params(rows[0], p, n, r)
    ring = _rdp_ring(p)
    return _build_equation(family, ring, n, r)


def expected_classification(family: str, p: int,
                            n: int | None = None) -> ExpectedRecord:
    """The table row's expected verdicts; A_n rows split on p | n+1."""
    rows = _rows_for(family, p)
    if family == "A_n":
        if n is None:
            raise InadmissibleParameterError(
                "A_n rows split on the divisibility p | n+1; pass n")
        divides = (n + 1) % p == 0
        label = "A_n (p | n+1)" if divides else "A_n (p !| n+1)"
        return next(row.expected for row in rows if row.row_label == label)
    return rows[0].expected


def make_cusp_hypersurface(p: int, a: int, b: int, c: int,
                           max_degree: int | None = None) -> Poly:
    """x^a + y^b + z^c + x*y*z with a,b,c >= 2 and 1/a + 1/b + 1/c < 1."""
    for name, v in (("a", a), ("b", b), ("c", c)):
        if v < 2:
            raise InadmissibleParameterError(f"exponent {name}={v} violates {name} >= 2")
    if b * c + a * c + a * b >= a * b * c:
        raise InadmissibleParameterError(
            f"(a,b,c)=({a},{b},{c}) violates 1/a + 1/b + 1/c < 1")
    ring = _rdp_ring(p, max_degree)
    x, y, z = ring.gens()
    return x ** a + y ** b + z ** c + x * y * z


def make_cusp_ci(p: int, a: int, b: int, c: int, d: int,
                 max_degree: int | None = None) -> list[Poly]:
    """(x*y + z^a + w^b, z*w + x^c + y^d) with all exponents >= 2 and at
    least one >= 3."""
    for name, v in (("a", a), ("b", b), ("c", c), ("d", d)):
        if v < 2:
            raise InadmissibleParameterError(f"exponent {name}={v} violates {name} >= 2")
    if max(a, b, c, d) < 3:
        raise InadmissibleParameterError(
            f"(a,b,c,d)=({a},{b},{c},{d}) violates max(a,b,c,d) >= 3")
    if max_degree is None:
        ring = PolyRing(CUSP_CI_VARIABLES, p)
    else:
        ring = PolyRing(CUSP_CI_VARIABLES, p, max_degree)
    x, y, z, w = ring.gens()
    return [x * y + z ** a + w ** b, z * w + x ** c + y ** d]


CUSP_EXPECTED = ExpectedRecord(f_pure=True, f_liftable=True)


def cusp_hyp_admissible(a: int, b: int, c: int) -> bool:
    return min(a, b, c) >= 2 and b * c + a * c + a * b < a * b * c


def cusp_ci_admissible(a: int, b: int, c: int, d: int) -> bool:
    return min(a, b, c, d) >= 2 and max(a, b, c, d) >= 3


def cusp_hyp_symmetry_class(t: tuple[int, int, int]) -> tuple[int, int, int]:
    """Canonical representative under permuting (a, b, c), which only
    relabels the variables."""
    return tuple(sorted(t))


def cusp_ci_symmetry_class(t: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    """Canonical representative under the relabelings a<->b (z<->w),
    c<->d (x<->y) and (a,b)<->(c,d) (swap the two equations)."""
    a, b, c, d = t
    return min((a, b, c, d), (b, a, c, d), (a, b, d, c), (b, a, d, c),
               (c, d, a, b), (d, c, a, b), (c, d, b, a), (d, c, b, a))


@dataclass(frozen=True)
class TableInstance:
    """A concrete equation from one table row with its expected record."""

    row: FamilySpec
    p: int
    params: tuple[tuple[str, int], ...]
    poly: Poly
    expected: ExpectedRecord

    @property
    def equation_text(self) -> str:
        return format_poly(self.poly)

    def param_dict(self) -> dict:
        return dict(self.params)


def enumerate_table_rows(n_max: int = 8) -> Iterator[TableInstance]:
    """Deterministic enumeration of every table row instantiated over the
    requested parameter bound: A_n at n = 1..n_max over p in {2,3,5,7}
    split by the divisibility predicate, D families at n = 2..n_max, the
    fixed-characteristic rows once per row.
    """
    for row in TABLE_ROWS:
        for p in row.test_primes:
            for params in _param_instances(row, p, n_max):
                kwargs = dict(params)
                poly = make_rdp(row.family, p, **kwargs)
                yield TableInstance(row, p, tuple(params), poly, row.expected)


def _param_instances(row: FamilySpec, p: int, n_max: int):
    if not row.param_names:
        yield ()
        return
    if row.family == "A_n":
        divides_wanted = "!|" not in row.row_label
        for n in range(1, n_max + 1):
            if ((n + 1) % p == 0) == divides_wanted:
                yield (("n", n),)
        return
    if "r" in row.param_names:
        for n in range(3, n_max + 1):
            for r in range(1, n - 1):
                yield (("n", n), ("r", r))
        return
    for n in range(2, n_max + 1):
        yield (("n", n),)


def export_manifest(n_max: int = 8) -> list[dict]:
    """Machine-readable catalog: report-shaped stubs plus expected values."""
    out = []
    for inst in enumerate_table_rows(n_max):
        out.append({
            "version": "fliftlab/1",
            "p": inst.p,
            "variables": list(RDP_VARIABLES),
            "generators": [inst.equation_text],
            "family": inst.row.row_label,
            "params": inst.param_dict(),
            "equation_template": inst.row.equation_template,
            "expected": {
                "f_pure": inst.expected.f_pure,
                "f_liftable": inst.expected.f_liftable,
                "f_regular_lit": inst.expected.f_regular_ref,
                "ret_lit": inst.expected.ret_ref,
                "let_lit": inst.expected.let_ref,
            },
        })
    return out
