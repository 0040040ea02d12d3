"""The fixed quotient ring used by the three-variable bracket.

Requiring a second Reidemeister move to be invisible to the state sum forces
two relations on the weights a (vertical smoothing), b (horizontal smoothing),
and d (disjoint circle):

    rel1 = (ab - 1) d^2 + (a^2 + b^2 + abd) d = a^2 d + 2abd^2 - d^2 + b^2 d
    rel2 = (ab - 1) d   + (a^2 + b^2 + abd) d^2

Everything here lives modulo the ideal I generated by those two polynomials.
The module carries a Groebner basis for I under lex a > b > d, the normal
form map that picks the canonical coset representative, the 34 solution
branches of the variety rel1 = rel2 = 0 (kept exactly as catalogued: one
label appears twice), numerical branch verification, and the specialization b -> 1/a,
d -> -a^-2 - a^2 that recovers the classical one-variable bracket.

The Groebner basis is not taken on trust: :func:`verify_groebner` recomputes
a basis from the generators with Buchberger's algorithm and certifies both
inclusions with explicit zero remainders.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field

from .classical import LaurentPolynomial
from .multipoly import (
    LEX_ABD,
    Polynomial,
    buchberger_run,
    divide,
    format_poly,
    mono_divides,
    parse_poly,
    reduce_basis,
    s_poly,
)

#: Generators of the move-two ideal I, exactly as in their expanded form.
IDEAL_GENERATORS: tuple[Polynomial, Polynomial] = (
    parse_poly("+a^2*d +2*a*b*d^2 +b^2*d -d^2"),
    parse_poly("+a^2*d^2 +a*b*d^3 +a*b*d +b^2*d^2 -d"),
)

#: Groebner basis of I under lex a > b > d, ordered as stored: the normal
#: form below divides by these, in this sequence.
GROEBNER_BASIS: tuple[Polynomial, Polynomial, Polynomial] = (
    parse_poly("+b^4*d^3 -b^4*d +b^2*d^4 -b^2*d^2 +d^3 -d"),
    parse_poly("+a*d^3 -a*d +b^3*d^3 -b^3*d +b*d^4 -b*d^2"),
    parse_poly("+a^2*d +2*a*b*d^2 +b^2*d -d^2"),
)

ORDER = LEX_ABD


def normal_form(p: Polynomial) -> Polynomial:
    """Canonical representative of p + I: the remainder against the basis.

    No monomial of the result is divisible by b^4*d^3, a*d^3, or a^2*d (the
    basis leading monomials), and the map is idempotent and linear.
    """
    return divide(p, list(GROEBNER_BASIS), ORDER).remainder


def is_normal(p: Polynomial) -> bool:
    """True when no term of p is reducible by the basis leading monomials."""
    leads = [g.leading(ORDER)[0] for g in GROEBNER_BASIS]
    return all(not mono_divides(lm, m) for m in p.terms for lm in leads)


# -- Groebner verification ---------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: str | None = None


@dataclass
class GroebnerReport:
    """Outcome of re-deriving the basis from the generators.

    ``z_exact`` records whether every certificate stayed inside integer
    combinations (no content was ever divided out), i.e. whether the two
    ideals coincide over Z itself and not merely over the rationals.
    """

    checks: list[Check] = field(default_factory=list)
    computed_basis: list[Polynomial] = field(default_factory=list)
    content_events: list[tuple[str, int]] = field(default_factory=list)
    z_exact: bool = False

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_groebner() -> GroebnerReport:
    """Certify that the stored basis and the generated ideal agree.

    Checks, in order: every S-polynomial of the stored basis reduces to zero
    against it; both generators reduce to zero against it; each basis element
    reduces to zero against a basis recomputed from the generators; and the
    reduced recomputed basis equals the stored one element for element.
    """
    report = GroebnerReport()
    basis = list(GROEBNER_BASIS)

    bad: str | None = None
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            rem = divide(s_poly(basis[i], basis[j], ORDER), basis, ORDER).remainder
            if not rem.is_zero:
                bad = f"S(g{i + 1},g{j + 1}) -> {format_poly(rem)}"
                break
        if bad:
            break
    report.checks.append(
        Check("spolys_reduce_to_zero", bad is None, "all S-polynomials of the stored basis", bad)
    )

    bad = None
    for k, gen in enumerate(IDEAL_GENERATORS, start=1):
        rem = normal_form(gen)
        if not rem.is_zero:
            bad = f"generator {k} -> {format_poly(rem)}"
            break
    report.checks.append(
        Check("generators_reduce_to_zero", bad is None, "ideal generators against stored basis", bad)
    )

    run = buchberger_run(list(IDEAL_GENERATORS), ORDER)
    report.computed_basis = reduce_basis(run.basis, ORDER, primitive=True)
    report.content_events = list(run.content_events)

    bad = None
    for k, g in enumerate(basis, start=1):
        rem = divide(g, run.basis, ORDER).remainder
        if not rem.is_zero:
            bad = f"basis element {k} -> {format_poly(rem)}"
            break
    report.checks.append(
        Check("basis_reduces_against_computed", bad is None, "stored basis against Buchberger output", bad)
    )

    match = set(report.computed_basis) == set(basis)
    report.checks.append(
        Check(
            "reduced_computed_basis_matches",
            match,
            "reduce_basis(buchberger(generators)) vs stored basis",
            None if match else "; ".join(format_poly(g) for g in report.computed_basis),
        )
    )

    report.z_exact = report.all_passed and not run.content_events
    return report


# -- exact branch values ------------------------------------------------------

# Branch constants live in the cyclotomic field Q(z), z = exp(i*pi/6): every
# (-1)^(p/q) in the catalogued list has q dividing 6, hence equals z^(6p/q).
# Coordinates are over the basis (1, z, z^2, z^3) with z^4 = z^2 - 1.
_ZETA_COORDS: tuple[tuple[int, int, int, int], ...] = (
    (1, 0, 0, 0),    # z^0
    (0, 1, 0, 0),    # z^1
    (0, 0, 1, 0),    # z^2
    (0, 0, 0, 1),    # z^3
    (-1, 0, 1, 0),   # z^4 = z^2 - 1
    (0, -1, 0, 1),   # z^5 = z^3 - z
    (-1, 0, 0, 0),   # z^6 = -1
    (0, -1, 0, 0),
    (0, 0, -1, 0),
    (0, 0, 0, -1),
    (1, 0, -1, 0),
    (0, 1, 0, -1),   # z^11
)

_ZETA = cmath.exp(1j * cmath.pi / 6)

Root = tuple[int, int]  # (-1)^(p/q), stored as written


def _zeta_exponent(root: Root) -> int:
    p, q = root
    if q <= 0 or (6 * p) % q:
        raise ValueError(f"root (-1)^({p}/{q}) is not a 12th root of unity")
    return (6 * p // q) % 12


@dataclass(frozen=True)
class BranchValue:
    """One assigned value: an integer combination of terms coeff * root * a^k.

    ``terms`` keeps the expression as written (root-of-unity tokens intact);
    :meth:`canonical` maps it to exact cyclotomic coordinates per power of a,
    which is what deduplication compares.
    """

    terms: tuple[tuple[int, Root, int], ...]
    text: str

    def canonical(self) -> tuple[tuple[int, tuple[int, int, int, int]], ...]:
        acc: dict[int, list[int]] = {}
        for coeff, root, apow in self.terms:
            coords = _ZETA_COORDS[_zeta_exponent(root)]
            cur = acc.setdefault(apow, [0, 0, 0, 0])
            for i in range(4):
                cur[i] += coeff * coords[i]
        return tuple(
            sorted((apow, tuple(c)) for apow, c in acc.items() if any(c))  # type: ignore[misc]
        )

    def evaluate(self, alpha: complex) -> complex:
        out = 0j
        for coeff, root, apow in self.terms:
            if apow < 0 and abs(alpha) < 1e-12:
                raise ZeroDivisionError("branch expression divides by alpha = 0")
            out += coeff * _ZETA ** _zeta_exponent(root) * alpha**apow
        return out


def _bv(text: str, *terms: tuple[int, Root, int]) -> BranchValue:
    return BranchValue(tuple(terms), text)


_ONE: Root = (0, 1)
_I: Root = (1, 2)
_R6: Root = (1, 6)     # (-1)^(1/6)
_R56: Root = (5, 6)    # (-1)^(5/6)
_R3: Root = (1, 3)     # (-1)^(1/3)
_R23: Root = (2, 3)    # (-1)^(2/3)


@dataclass(frozen=True)
class BranchSubstitution:
    """One catalogued solution branch: a partial assignment of a, b, d."""

    ordinal: int            # 1-based position in the catalogued list
    label: str              # label as written (one label occurs twice)
    assignments: tuple[tuple[str, BranchValue], ...]

    @property
    def free(self) -> frozenset[str]:
        return frozenset("abd") - {v for v, _ in self.assignments}

    def canonical_key(self) -> tuple:
        return tuple(sorted((v, val.canonical()) for v, val in self.assignments))

    def describe(self) -> str:
        parts = [f"{v} -> {val.text}" for v, val in self.assignments]
        if self.free:
            parts.append("free: " + ",".join(sorted(self.free)))
        return "; ".join(parts)


def _branch(ordinal: int, label: str, **vals: BranchValue) -> BranchSubstitution:
    return BranchSubstitution(ordinal, label, tuple(sorted(vals.items())))


_MINUS_ONE = _bv("-1", (-1, _ONE, 0))
_PLUS_ONE = _bv("1", (1, _ONE, 0))

#: The solution list exactly as catalogued: 34 entries, labels sol_1..sol_33
#: with sol_12 appearing twice.  Deduplication happens in `branch_report`.
BRANCHES: tuple[BranchSubstitution, ...] = (
    _branch(1, "sol_1",
            b=_bv("1/a", (1, _ONE, -1)),
            d=_bv("(-a^4-1)/a^2", (-1, _ONE, 2), (-1, _ONE, -2))),
    _branch(2, "sol_2", d=_MINUS_ONE, b=_bv("a - I", (1, _ONE, 1), (-1, _I, 0))),
    _branch(3, "sol_3", d=_MINUS_ONE, b=_bv("a + I", (1, _ONE, 1), (1, _I, 0))),
    _branch(4, "sol_4", d=_PLUS_ONE, b=_bv("-a - 1", (-1, _ONE, 1), (-1, _ONE, 0))),
    _branch(5, "sol_5", d=_PLUS_ONE, b=_bv("1 - a", (-1, _ONE, 1), (1, _ONE, 0))),
    _branch(6, "sol_6", b=_bv("-(-1)^(1/6)", (-1, _R6, 0)), d=_MINUS_ONE,
            a=_bv("(-1)^(5/6)", (1, _R56, 0))),
    _branch(7, "sol_7", b=_bv("(-1)^(1/6)", (1, _R6, 0)), d=_MINUS_ONE,
            a=_bv("-(-1)^(5/6)", (-1, _R56, 0))),
    _branch(8, "sol_8", b=_bv("-(-1)^(1/3)", (-1, _R3, 0)), d=_PLUS_ONE,
            a=_bv("(-1)^(2/3)", (1, _R23, 0))),
    _branch(9, "sol_9", b=_bv("(-1)^(1/3)", (1, _R3, 0)), d=_PLUS_ONE,
            a=_bv("-(-1)^(2/3)", (-1, _R23, 0))),
    _branch(10, "sol_10", b=_bv("-I - (-1)^(1/6)", (-1, _I, 0), (-1, _R6, 0)), d=_MINUS_ONE,
            a=_bv("-(-1)^(1/6)", (-1, _R6, 0))),
    _branch(11, "sol_11", b=_bv("I - (-1)^(1/6)", (1, _I, 0), (-1, _R6, 0)), d=_MINUS_ONE,
            a=_bv("-(-1)^(1/6)", (-1, _R6, 0))),
    _branch(12, "sol_12", b=_bv("2*I - (-1)^(1/6)", (2, _I, 0), (-1, _R6, 0)), d=_MINUS_ONE,
            a=_bv("(-1)^(5/6)", (1, _R56, 0))),
    _branch(13, "sol_12", b=_bv("-I + (-1)^(1/6)", (-1, _I, 0), (1, _R6, 0)), d=_MINUS_ONE,
            a=_bv("(-1)^(1/6)", (1, _R6, 0))),
    _branch(14, "sol_13", b=_bv("I + (-1)^(1/6)", (1, _I, 0), (1, _R6, 0)), d=_MINUS_ONE,
            a=_bv("(-1)^(1/6)", (1, _R6, 0))),
    _branch(15, "sol_14", b=_bv("-2*I + (-1)^(1/6)", (-2, _I, 0), (1, _R6, 0)), d=_MINUS_ONE,
            a=_bv("-(-1)^(5/6)", (-1, _R56, 0))),
    _branch(16, "sol_15", b=_bv("-1 - (-1)^(1/3)", (-1, _ONE, 0), (-1, _R3, 0)), d=_PLUS_ONE,
            a=_bv("(-1)^(1/3)", (1, _R3, 0))),
    _branch(17, "sol_16", b=_bv("1 - (-1)^(1/3)", (1, _ONE, 0), (-1, _R3, 0)), d=_PLUS_ONE,
            a=_bv("(-1)^(1/3)", (1, _R3, 0))),
    _branch(18, "sol_17", b=_bv("2 - (-1)^(1/3)", (2, _ONE, 0), (-1, _R3, 0)), d=_PLUS_ONE,
            a=_bv("(-1)^(2/3)", (1, _R23, 0))),
    _branch(19, "sol_18", b=_bv("-2 + (-1)^(1/3)", (-2, _ONE, 0), (1, _R3, 0)), d=_PLUS_ONE,
            a=_bv("-(-1)^(2/3)", (-1, _R23, 0))),
    _branch(20, "sol_19", b=_bv("-1 + (-1)^(1/3)", (-1, _ONE, 0), (1, _R3, 0)), d=_PLUS_ONE,
            a=_bv("-(-1)^(1/3)", (-1, _R3, 0))),
    _branch(21, "sol_20", b=_bv("1 + (-1)^(1/3)", (1, _ONE, 0), (1, _R3, 0)), d=_PLUS_ONE,
            a=_bv("-(-1)^(1/3)", (-1, _R3, 0))),
    _branch(22, "sol_21", d=_MINUS_ONE, b=_bv("-2*I", (-2, _I, 0)), a=_bv("-I", (-1, _I, 0))),
    _branch(23, "sol_22", d=_MINUS_ONE, b=_bv("2*I", (2, _I, 0)), a=_bv("I", (1, _I, 0))),
    _branch(24, "sol_23", d=_MINUS_ONE, b=_bv("I - (-1)^(1/6)", (1, _I, 0), (-1, _R6, 0)),
            a=_bv("-(-1)^(1/6)", (-1, _R6, 0))),
    _branch(25, "sol_24", d=_MINUS_ONE, b=_bv("-I + (-1)^(1/6)", (-1, _I, 0), (1, _R6, 0)),
            a=_bv("(-1)^(1/6)", (1, _R6, 0))),
    _branch(26, "sol_25", d=_MINUS_ONE, b=_bv("I - (-1)^(5/6)", (1, _I, 0), (-1, _R56, 0)),
            a=_bv("-(-1)^(5/6)", (-1, _R56, 0))),
    _branch(27, "sol_26", d=_MINUS_ONE, b=_bv("-I + (-1)^(5/6)", (-1, _I, 0), (1, _R56, 0)),
            a=_bv("(-1)^(5/6)", (1, _R56, 0))),
    _branch(28, "sol_27", d=_PLUS_ONE, b=_bv("-2", (-2, _ONE, 0)), a=_bv("1", (1, _ONE, 0))),
    _branch(29, "sol_28", d=_PLUS_ONE, b=_bv("2", (2, _ONE, 0)), a=_bv("-1", (-1, _ONE, 0))),
    _branch(30, "sol_29", d=_PLUS_ONE, b=_bv("1 - (-1)^(1/3)", (1, _ONE, 0), (-1, _R3, 0)),
            a=_bv("(-1)^(1/3)", (1, _R3, 0))),
    _branch(31, "sol_30", d=_PLUS_ONE, b=_bv("-1 + (-1)^(1/3)", (-1, _ONE, 0), (1, _R3, 0)),
            a=_bv("-(-1)^(1/3)", (-1, _R3, 0))),
    _branch(32, "sol_31", d=_PLUS_ONE, b=_bv("-1 - (-1)^(2/3)", (-1, _ONE, 0), (-1, _R23, 0)),
            a=_bv("(-1)^(2/3)", (1, _R23, 0))),
    _branch(33, "sol_32", d=_PLUS_ONE, b=_bv("1 + (-1)^(2/3)", (1, _ONE, 0), (1, _R23, 0)),
            a=_bv("-(-1)^(2/3)", (-1, _R23, 0))),
    _branch(34, "sol_33", d=_bv("0")),
)


def branches() -> list[BranchSubstitution]:
    """All catalogued branches, as written (including the duplicated label)."""
    return list(BRANCHES)


def distinct_branches() -> list[BranchSubstitution]:
    """Branches deduplicated by exact assignment equality, first occurrence kept."""
    seen: set[tuple] = set()
    out = []
    for br in BRANCHES:
        key = br.canonical_key()
        if key not in seen:
            seen.add(key)
            out.append(br)
    return out


#: Fixed nonzero values substituted for free variables during verification.
FREE_SAMPLES: tuple[complex, ...] = (2 + 0j, 3 + 1j, -0.5 + 0j, 5j)

DEFAULT_TOL = 1e-9


def _eval_poly(p: Polynomial, va: complex, vb: complex, vd: complex) -> complex:
    return sum(c * va**ea * vb**eb * vd**ed for (ea, eb, ed), c in p.terms.items())


@dataclass
class BranchCheck:
    ordinal: int
    label: str
    passed: bool
    residuals: tuple[float, float]  # max |rel1|, max |rel2| over the samples
    samples_used: int
    skipped: list[str] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max(self.residuals)


def verify_branch(
    branch: BranchSubstitution,
    samples: int = len(FREE_SAMPLES),
    tol: float = DEFAULT_TOL,
) -> BranchCheck:
    """Evaluate both ideal generators on the branch at fixed sample points.

    Free variables run over the cartesian product of FREE_SAMPLES (first
    ``samples`` combinations, in product order).  A sample where a branch
    expression divides by zero is skipped and recorded, never fatal.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    free = sorted(branch.free)
    assigned = dict(branch.assignments)
    combos = itertools.islice(
        itertools.product(FREE_SAMPLES, repeat=len(free)), samples
    ) if free else [()]
    worst = [0.0, 0.0]
    used = 0
    skipped: list[str] = []
    for combo in combos:
        values: dict[str, complex] = dict(zip(free, combo))
        try:
            for var in "abd":
                if var in assigned:
                    values[var] = assigned[var].evaluate(values.get("a", 0j))
        except ZeroDivisionError as exc:
            skipped.append(f"{combo!r}: {exc}")
            continue
        used += 1
        for which, gen in enumerate(IDEAL_GENERATORS):
            residual = abs(_eval_poly(gen, values["a"], values["b"], values["d"]))
            worst[which] = max(worst[which], residual)
    passed = used > 0 and max(worst) < tol
    return BranchCheck(branch.ordinal, branch.label, passed, (worst[0], worst[1]), used, skipped)


@dataclass
class BranchReport:
    raw_count: int
    distinct_count: int
    checks: list[BranchCheck]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_all_branches(samples: int = len(FREE_SAMPLES), tol: float = DEFAULT_TOL) -> BranchReport:
    """Verify every distinct branch; the report also carries both counts."""
    distinct = distinct_branches()
    return BranchReport(
        raw_count=len(BRANCHES),
        distinct_count=len(distinct),
        checks=[verify_branch(br, samples, tol) for br in distinct],
    )


# -- classical specialization -------------------------------------------------

#: d-value of the classical bracket: -a^-2 - a^2.
CLASSICAL_CIRCLE = LaurentPolynomial({-2: -1, 2: -1})

_circle_powers: dict[int, LaurentPolynomial] = {0: LaurentPolynomial.one()}


def _circle_power(k: int) -> LaurentPolynomial:
    while k not in _circle_powers:
        n = max(_circle_powers) + 1
        _circle_powers[n] = _circle_powers[n - 1] * CLASSICAL_CIRCLE
    return _circle_powers[k]


def specialize_classical(p: Polynomial) -> LaurentPolynomial:
    """Substitute b -> a^-1 and d -> -a^-2 - a^2, exactly.

    This is the first solution branch; it annihilates both ideal generators,
    so the map factors through the quotient.
    """
    out = LaurentPolynomial.zero()
    for (ea, eb, ed), coeff in p.terms.items():
        out = out + _circle_power(ed).shift(ea - eb) * coeff
    return out
