"""Dense homogeneous multivariate polynomial algebra.

A Form is a homogeneous polynomial in a fixed variable set, stored as the
dense coefficient vector over all monomials of its degree in graded
lexicographic order with x0 > x1 > x2 > x3 > x4.  That order is the one wire
format: every serialized coefficient vector uses it.

The elimination machinery (Sylvester resultants with polynomial entries,
the Macaulay resultant, smoothness certificates) lives here too.  Internally
a sparse dict representation is used for products and determinants; the
public type stays dense and strictly homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import itertools
import random

from . import linalg
from .scalars import BadPrime, FpElem, PrimeField, RationalField, reduce_mod_prime


class DimensionMismatch(ValueError):
    """Wrong number of variables or coordinates."""


class SingularMatrix(ValueError):
    """Coordinate change is not invertible."""


class NotDivisible(ArithmeticError):
    """No exact polynomial quotient exists."""


class ZeroForm(ValueError):
    """Operation undefined on the zero form."""


class ResultantIndeterminate(ArithmeticError):
    """Macaulay quotient 0/0 persisted through coordinate-change retries."""


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, graded-lex descending."""
    if nvars <= 0:
        raise DimensionMismatch("need at least one variable")
    if nvars == 1:
        return ((degree,),)
    out = []
    for e0 in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


class PolyDict:
    """Sparse polynomial over a domain; internal workhorse, not part of the wire format."""

    __slots__ = ("nvars", "domain", "terms")

    def __init__(self, nvars, domain, terms=None):
        self.nvars = nvars
        self.domain = domain
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[e] = c

    @classmethod
    def zero(cls, nvars, domain):
        return cls(nvars, domain)

    @classmethod
    def const(cls, nvars, domain, c):
        return cls(nvars, domain, {(0,) * nvars: domain.coerce(c)})

    @classmethod
    def variable(cls, nvars, domain, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, domain, {tuple(e): domain.one})

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _binop(self, other, sign):
        if not isinstance(other, PolyDict):
            other = PolyDict.const(self.nvars, self.domain, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e)
            nv = c if sign > 0 else -c
            nv = nv if v is None else v + nv
            if nv:
                terms[e] = nv
            elif e in terms:
                del terms[e]
        return PolyDict(self.nvars, self.domain, terms)

    def __add__(self, other):
        return self._binop(other, +1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return PolyDict(self.nvars, self.domain,
                        {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyDict):
            c = other
            return PolyDict(self.nvars, self.domain,
                            {e: v * c for e, v in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return PolyDict(self.nvars, self.domain, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        result = PolyDict.const(self.nvars, self.domain, self.domain.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree(self):
        return max((sum(e) for e in self.terms), default=None)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self, order_key):
        """(exps, coeff) maximal under order_key."""
        e = max(self.terms, key=order_key)
        return e, self.terms[e]


def _grlex_key(e):
    return (sum(e), e)


@dataclass(frozen=True)
class Form:
    """Homogeneous polynomial: dense coefficients in graded-lex monomial order."""

    domain: object
    num_vars: int
    degree: int
    coeffs: tuple

    def __post_init__(self):
        expected = len(monomials(self.num_vars, self.degree))
        if len(self.coeffs) != expected:
            raise DimensionMismatch(
                f"degree-{self.degree} form in {self.num_vars} variables needs "
                f"{expected} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_terms(cls, nvars, degree, terms, domain):
        """Build from {exponent_tuple: coefficient}; missing monomials are zero."""
        idx = monomial_index(nvars, degree)
        coeffs = [domain.zero] * len(idx)
        for e, c in terms.items():
            if len(e) != nvars or sum(e) != degree:
                raise DimensionMismatch(f"monomial {e} not of degree {degree} in {nvars} vars")
            coeffs[idx[e]] = domain.coerce(c)
        return cls(domain, nvars, degree, tuple(coeffs))

    @classmethod
    def zero_form(cls, nvars, degree, domain):
        return cls(domain, nvars, degree, tuple([domain.zero] * len(monomials(nvars, degree))))

    @classmethod
    def from_polydict(cls, pd: PolyDict, degree=None):
        if pd.is_zero:
            if degree is None:
                raise ZeroForm("zero polynomial has no intrinsic degree; pass one")
            return cls.zero_form(pd.nvars, degree, pd.domain)
        if not pd.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        return cls.from_terms(pd.nvars, pd.degree(), pd.terms, pd.domain)

    def to_polydict(self) -> PolyDict:
        mons = monomials(self.num_vars, self.degree)
        return PolyDict(self.num_vars, self.domain,
                        {m: c for m, c in zip(mons, self.coeffs) if c})

    @property
    def is_zero(self):
        return all(not c for c in self.coeffs)

    def coefficient(self, exps):
        return self.coeffs[monomial_index(self.num_vars, self.degree)[exps]]

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if (other.num_vars, other.degree) != (self.num_vars, self.degree):
            raise DimensionMismatch("adding forms of different shape")
        return Form(self.domain, self.num_vars, self.degree,
                    tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if (other.num_vars, other.degree) != (self.num_vars, self.degree):
            raise DimensionMismatch("subtracting forms of different shape")
        return Form(self.domain, self.num_vars, self.degree,
                    tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Form(self.domain, self.num_vars, self.degree,
                    tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Form):
            if other.num_vars != self.num_vars:
                raise DimensionMismatch("multiplying forms in different rings")
            pd = self.to_polydict() * other.to_polydict()
            return Form.from_polydict(pd, self.degree + other.degree)
        return Form(self.domain, self.num_vars, self.degree,
                    tuple(c * other for c in self.coeffs))

    def __rmul__(self, other):
        return self * other

    def scale(self, c):
        return Form(self.domain, self.num_vars, self.degree,
                    tuple(v * c for v in self.coeffs))

    def map_coefficients(self, func, new_domain):
        return Form(new_domain, self.num_vars, self.degree,
                    tuple(func(c) for c in self.coeffs))

    def __str__(self):
        if self.is_zero:
            return "0"
        names = [f"x{i}" for i in range(self.num_vars)]
        parts = []
        for m, c in zip(monomials(self.num_vars, self.degree), self.coeffs):
            if not c:
                continue
            mon = "*".join(f"{names[i]}^{e}" if e > 1 else names[i]
                           for i, e in enumerate(m) if e)
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


def evaluate(f: Form, point):
    """Value of f at a coordinate vector.

    Coordinates may live in the coefficient domain, an extension of it, or be
    PolyDict values (which is how all substitution is implemented).
    """
    if len(point) != f.num_vars:
        raise DimensionMismatch(
            f"form in {f.num_vars} variables evaluated at {len(point)} coordinates")
    # cache coordinate powers up to the degree
    powers = []
    for x in point:
        row = [None, x]
        for _ in range(2, f.degree + 1):
            row.append(row[-1] * x)
        powers.append(row)
    total = None
    for m, c in zip(monomials(f.num_vars, f.degree), f.coeffs):
        if not c:
            continue
        term = c
        for i, e in enumerate(m):
            if e:
                term = term * powers[i][e]
        total = term if total is None else total + term
    if total is None:
        return f.domain.zero
    return total


def compose_linear(f: Form, rows) -> Form:
    """f with each old variable replaced by a linear combination of new ones.

    ``rows`` has one row per old variable; row length is the new variable
    count (rectangular rows restrict to a linear subspace).
    """
    if len(rows) != f.num_vars:
        raise DimensionMismatch("substitution needs one row per variable")
    m_new = len(rows[0])
    lins = [PolyDict(m_new, f.domain,
                     {tuple(1 if j == k else 0 for j in range(m_new)): f.domain.coerce(c)
                      for k, c in enumerate(row) if c})
            for row in rows]
    pd = evaluate(f, lins)
    if not isinstance(pd, PolyDict):
        pd = PolyDict.const(m_new, f.domain, pd)
    out = Form.from_polydict(pd, f.degree)
    return out


def substitute_linear(f: Form, matrix) -> Form:
    """f composed with an invertible square coordinate change x -> M x."""
    n = f.num_vars
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise DimensionMismatch("coordinate change must be square of the variable count")
    rows = [[f.domain.coerce(c) for c in r] for r in matrix]
    if not linalg.det(rows, f.domain):
        raise SingularMatrix("coordinate change is singular")
    return compose_linear(f, rows)


def partial_derivative(f: Form, var_index: int) -> Form:
    if not 0 <= var_index < f.num_vars:
        raise DimensionMismatch(f"variable index {var_index} out of range")
    if f.degree == 0:
        return f
    terms = {}
    for m, c in zip(monomials(f.num_vars, f.degree), f.coeffs):
        e = m[var_index]
        if not c or e == 0:
            continue
        new = list(m)
        new[var_index] -= 1
        terms[tuple(new)] = c * e
    return Form.from_terms(f.num_vars, f.degree - 1, terms, f.domain)


def exact_divide(f: Form, g: Form) -> Form:
    """Quotient q with f = g*q, or NotDivisible."""
    if g.is_zero:
        raise ZeroForm("division by the zero form")
    if f.num_vars != g.num_vars:
        raise DimensionMismatch("dividing forms in different rings")
    if f.is_zero:
        raise NotDivisible("zero form has no well-defined homogeneous quotient here")
    if f.degree < g.degree:
        raise NotDivisible("degree of divisor exceeds degree of dividend")
    r = f.to_polydict()
    q = PolyDict.zero(f.num_vars, f.domain)
    ge, gc = g.to_polydict().leading(_grlex_key)
    gpd = g.to_polydict()
    while r:
        re, rc = r.leading(_grlex_key)
        diff = tuple(a - b for a, b in zip(re, ge))
        if any(d < 0 for d in diff):
            raise NotDivisible("leading term not divisible")
        t = PolyDict(f.num_vars, f.domain, {diff: rc / gc})
        q = q + t
        r = r - t * gpd
    return Form.from_polydict(q, f.degree - g.degree)


def poly_matrix_det(mat, nvars, domain) -> PolyDict:
    """Determinant of a small matrix of PolyDict entries (Laplace over column subsets)."""
    n = len(mat)
    if n == 0:
        return PolyDict.const(nvars, domain, domain.one)
    if n > 12:
        raise ValueError("polynomial determinant limited to 12x12")
    minors = {(): PolyDict.const(nvars, domain, domain.one)}
    for r in range(n):
        new: dict = {}
        for cols, val in minors.items():
            if val.is_zero:
                continue
            for c in range(n):
                if c in cols:
                    continue
                entry = mat[r][c]
                if entry.is_zero:
                    continue
                pos = sum(1 for x in cols if x < c)
                sign = 1 if (r + pos) % 2 == 0 else -1
                term = entry * val if sign > 0 else -(entry * val)
                key = tuple(sorted(cols + (c,)))
                if key in new:
                    new[key] = new[key] + term
                else:
                    new[key] = term
        minors = new
        if not minors:
            return PolyDict.zero(nvars, domain)
    return minors.get(tuple(range(n)), PolyDict.zero(nvars, domain))


def _coeffs_in_var(pd: PolyDict, var: int):
    """{k: PolyDict in the remaining variables} collecting powers of one variable."""
    nv = pd.nvars
    out: dict = {}
    for e, c in pd.terms.items():
        k = e[var]
        rest = e[:var] + e[var + 1:]
        bucket = out.setdefault(k, {})
        bucket[rest] = bucket.get(rest, pd.domain.zero) + c
    return {k: PolyDict(nv - 1, pd.domain, terms) for k, terms in out.items()}


def sylvester_resultant(f: Form, g: Form, eliminated_var: int) -> Form:
    """Resultant eliminating one variable; a form in the remaining variables.

    Convention: Res(f, g) = lc(f)^deg(g) * product of g over the roots of f,
    both degrees taken in the eliminated variable.
    """
    if f.is_zero or g.is_zero:
        raise ZeroForm("resultant of a zero form")
    if f.num_vars != g.num_vars:
        raise DimensionMismatch("resultant of forms in different rings")
    var = eliminated_var
    fc = _coeffs_in_var(f.to_polydict(), var)
    gc = _coeffs_in_var(g.to_polydict(), var)
    m, n = max(fc), max(gc)
    if m == 0 or n == 0:
        raise ZeroForm("form has degree zero in the eliminated variable")
    nv = f.num_vars - 1
    zero = PolyDict.zero(nv, f.domain)
    size = m + n
    mat = [[zero] * size for _ in range(size)]
    for i in range(n):  # rows of f coefficients, descending powers
        for k in range(m + 1):
            mat[i][i + k] = fc.get(m - k, zero)
    for i in range(m):
        for k in range(n + 1):
            mat[n + i][i + k] = gc.get(n - k, zero)
    det_pd = poly_matrix_det(mat, nv, f.domain)
    if det_pd.is_zero:
        return Form.zero_form(nv, f.degree * g.degree, f.domain)
    return Form.from_polydict(det_pd)


def macaulay_system(degrees: list[int], nvars: int):
    """Row plan of the classical Macaulay matrix: per degree-D monomial, the
    assigned form index and shift, plus the reduced/non-reduced split."""
    big_d = sum(d - 1 for d in degrees) + 1
    mons = monomials(nvars, big_d)
    plan = []
    reduced_flags = []
    for mon in mons:
        hits = [i for i, d in enumerate(degrees) if mon[i] >= d]
        i = hits[0]
        shift = list(mon)
        shift[i] -= degrees[i]
        plan.append((i, tuple(shift)))
        reduced_flags.append(len(hits) == 1)
    return big_d, mons, plan, reduced_flags


def _macaulay_dets(fs: list[Form]):
    """(det of Macaulay matrix, det of its non-reduced minor)."""
    nvars = fs[0].num_vars
    degrees = [f.degree for f in fs]
    big_d, mons, plan, reduced = macaulay_system(degrees, nvars)
    idx = monomial_index(nvars, big_d)
    n = len(mons)
    domain = fs[0].domain
    rows = []
    for i, shift in plan:
        f = fs[i]
        row = [domain.zero] * n
        for m, c in zip(monomials(nvars, degrees[i]), f.coeffs):
            if c:
                tgt = tuple(a + b for a, b in zip(m, shift))
                row[idx[tgt]] = c
        rows.append(row)
    keep = [j for j, r in enumerate(reduced) if not r]
    minor = [[rows[j][k] for k in keep] for j in keep]
    if isinstance(domain, PrimeField) and n >= 24:
        p = domain.p
        as_int = [[c.residue for c in r] for r in rows]
        d_full = FpElem(linalg.det_mod_p(as_int, p), p)
        m_int = [[c.residue for c in r] for r in minor]
        d_minor = FpElem(linalg.det_mod_p(m_int, p), p) if minor else domain.one
        return d_full, d_minor
    d_full = linalg.det(rows, domain)
    d_minor = linalg.det(minor, domain) if minor else domain.one
    return d_full, d_minor


def macaulay_resultant(forms: list[Form], rng: random.Random | None = None):
    """Classical Macaulay resultant of n forms in n variables.

    Zero exactly when the forms share a nonzero common solution over the
    algebraic closure.  When the Macaulay minor degenerates, retries after a
    random invertible change of variables (the resultant picks up the factor
    det(A)^(product of the degrees), which is divided back out).
    """
    if not forms:
        raise DimensionMismatch("no forms given")
    nvars = forms[0].num_vars
    if len(forms) != nvars:
        raise DimensionMismatch(f"need exactly {nvars} forms in {nvars} variables")
    if any(f.num_vars != nvars for f in forms):
        raise DimensionMismatch("forms live in different rings")
    if any(f.degree < 1 for f in forms):
        raise DimensionMismatch("all forms must have positive degree")
    domain = forms[0].domain
    if any(f.is_zero for f in forms):
        # the resultant is homogeneous of positive degree in each form's
        # coefficients, so it vanishes on the zero form
        return domain.zero
    d_full, d_minor = _macaulay_dets(forms)
    if d_minor:
        return d_full / d_minor
    rng = rng or random.Random(0x5EED)
    deg_product = 1
    for f in forms:
        deg_product *= f.degree
    for _ in range(8):
        mat = [[domain.coerce(rng.randint(-3, 3)) for _ in range(nvars)]
               for _ in range(nvars)]
        det_a = linalg.det(mat, domain)
        if not det_a:
            continue
        moved = [compose_linear(f, mat) for f in forms]
        d_full, d_minor = _macaulay_dets(moved)
        if d_minor:
            return (d_full / d_minor) / det_a ** deg_product
    raise ResultantIndeterminate("Macaulay minor vanished for every tried coordinate change")


SMOOTH_CERTIFIED = "SmoothCertified"
SINGULAR_CERTIFIED = "SingularCertified"
INCONCLUSIVE = "Inconclusive"


@dataclass
class SmoothnessVerdict:
    status: str
    witness: tuple | None = None
    resultants: dict | None = None

    @property
    def is_smooth(self):
        return self.status == SMOOTH_CERTIFIED


def _witness_grid(nvars, domain, radius=2):
    vals = [domain.coerce(v) for v in range(-radius, radius + 1)]
    for pt in itertools.product(vals, repeat=nvars):
        if any(pt):
            yield pt


def _projective_points_fp(nvars: int, p: int):
    """One representative per point of P^(nvars-1)(F_p): first nonzero coord = 1."""
    field = PrimeField(p)
    one = field.one
    for lead in range(nvars):
        zeros = [field.zero] * lead
        for tail in itertools.product(range(p), repeat=nvars - lead - 1):
            yield tuple(zeros + [one] + [FpElem(t, p) for t in tail])


def is_smooth_hypersurface(f: Form, primes) -> SmoothnessVerdict:
    """Certified smoothness of the projective hypersurface f = 0.

    Over Q: SmoothCertified when the Macaulay resultant of the partials is
    nonzero modulo every supplied prime (>= 2 primes).  Over F_p the resultant
    is computed in the field itself and genuinely decides.  A singular verdict
    always carries an exact witness where every partial vanishes.
    """
    if f.is_zero or f.degree < 1:
        raise ZeroForm("smoothness needs a nonzero form of positive degree")
    domain = f.domain
    partials = [partial_derivative(f, i) for i in range(f.num_vars)]
    if f.degree == 1:
        return SmoothnessVerdict(SMOOTH_CERTIFIED, resultants={})
    if isinstance(domain, RationalField):
        if len(primes) < 2:
            raise BadPrime("need at least two primes for a certificate over Q")
        results = {}
        all_nonzero = True
        for p in primes:
            reduced = [pf.map_coefficients(lambda c: reduce_mod_prime(c, p), PrimeField(p))
                       for pf in partials]
            try:
                res = macaulay_resultant(reduced)
                results[p] = res.residue
                if not res:
                    all_nonzero = False
            except ResultantIndeterminate:
                results[p] = None
                all_nonzero = False
        if all_nonzero:
            return SmoothnessVerdict(SMOOTH_CERTIFIED, resultants=results)
        witness = _search_singular_witness(partials, _witness_grid(f.num_vars, domain))
        if witness is not None:
            return SmoothnessVerdict(SINGULAR_CERTIFIED, witness=witness, resultants=results)
        return SmoothnessVerdict(INCONCLUSIVE, resultants=results)
    if isinstance(domain, PrimeField):
        p = domain.p
        try:
            res = macaulay_resultant(partials)
        except ResultantIndeterminate:
            res = None
        if res:
            return SmoothnessVerdict(SMOOTH_CERTIFIED, resultants={p: res.residue})
        npoints = sum(p ** k for k in range(f.num_vars))
        if npoints <= 25000:
            witness = _search_singular_witness(partials, _projective_points_fp(f.num_vars, p))
            if witness is not None:
                return SmoothnessVerdict(SINGULAR_CERTIFIED, witness=witness,
                                         resultants={p: 0 if res is not None else None})
        return SmoothnessVerdict(INCONCLUSIVE,
                                 resultants={p: 0 if res is not None else None})
    raise TypeError(f"smoothness certificate not defined over {domain!r}")


def _search_singular_witness(partials, candidates):
    for pt in candidates:
        if all(not evaluate(pf, pt) for pf in partials):
            return tuple(pt)
    return None


@dataclass(frozen=True)
class SymMatrix3:
    """3x3 symmetric Gram matrix; entries are scalars or Forms.

    Convention q(v) = v^T M v, so off-diagonal entries are half the mixed
    coefficients.
    """

    entries: tuple

    def __post_init__(self):
        if len(self.entries) != 3 or any(len(r) != 3 for r in self.entries):
            raise DimensionMismatch("SymMatrix3 needs a 3x3 entry grid")
        for i in range(3):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("matrix is not symmetric")

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def gram_of_ternary(cls, q: Form):
        """Gram matrix of a quadratic form in 3 variables."""
        if q.num_vars != 3 or q.degree != 2:
            raise DimensionMismatch("expected a ternary quadratic form")
        half = _half_of(q.domain)

        def coef(i, j):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            c = q.coefficient(tuple(e))
            return c if i == j else c * half

        return cls.from_rows([[coef(i, j) for j in range(3)] for i in range(3)])

    def det(self):
        ((a, b, c), (_, d, e), (_, _, f)) = self.entries
        return a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c)

    def rank(self, domain) -> int:
        return linalg.rank([list(r) for r in self.entries], domain)


def _half_of(domain):
    return domain.one / domain.coerce(2)


def reduce_form(f: Form, p: int) -> Form:
    """Coefficient-wise reduction of a rational form mod p."""
    return f.map_coefficients(lambda c: reduce_mod_prime(c, p), PrimeField(p))
