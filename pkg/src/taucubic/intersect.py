"""Plane-curve intersection through sheared eliminants.

Two curves in P^2 are intersected by a random coordinate shear (so the
eliminated variable has constant leading coefficient and no two intersection
points share a projection), a Sylvester resultant, and the root ledger of the
resulting binary form.  Multiplicity totals and squarefreeness are certified
on the eliminant; explicit coordinates are produced for Galois orbits of
degree <= 2 over the working field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import roots as uv
from .forms import Form, compose_linear, evaluate, partial_derivative, sylvester_resultant
from .linalg import rank
from .roots import BinaryRootLedger, RootEntry, binary_form_roots


class CommonComponent(ValueError):
    """The two curves share a component; the intersection is not finite."""


@dataclass
class PlanePoint:
    coords: tuple
    mult: int
    field_label: str
    domain: object
    transversal: bool | None = None


@dataclass
class PlaneIntersection:
    total_multiplicity: int
    expected_total: int
    distinct: bool
    shear_stable: bool
    points: list[PlanePoint] = field(default_factory=list)
    clusters: list[RootEntry] = field(default_factory=list)
    ledger: BinaryRootLedger | None = None

    @property
    def all_transversal(self):
        return self.distinct and all(p.transversal is not False for p in self.points)


def _shear_rows(domain, a, b):
    one, zero = domain.one, domain.zero
    return [[one, zero, zero],
            [domain.coerce(a), one, zero],
            [domain.coerce(b), zero, one]]


def _unshear_point(pt3, a, b, domain):
    x2, x3, x4 = pt3
    dom = _point_domain(pt3, domain)
    return (x2, x3 + dom.coerce(a) * x2, x4 + dom.coerce(b) * x2)


def _point_domain(pt, fallback):
    from .scalars import QuadElem
    for c in pt:
        if isinstance(c, QuadElem):
            return c.ext
    return fallback


def _slice_in_x2(f: Form, x3, x4, domain):
    """Coefficient list (ascending) of t -> f(t, x3, x4)."""
    coeffs = [None] * (f.degree + 1)
    from .forms import monomials
    pows3 = [domain.one]
    pows4 = [domain.one]
    for _ in range(f.degree):
        pows3.append(pows3[-1] * x3)
        pows4.append(pows4[-1] * x4)
    for m, c in zip(monomials(3, f.degree), f.coeffs):
        if not c:
            continue
        term = c * pows3[m[1]] * pows4[m[2]]
        k = m[0]
        coeffs[k] = term if coeffs[k] is None else coeffs[k] + term
    return uv.trim([domain.zero if c is None else c for c in coeffs])


def intersect_plane_curves(f: Form, g: Form, rng: random.Random | None = None,
                           want_points: bool = True, shear_tries: int = 24) -> PlaneIntersection:
    """Intersection ledger of two ternary forms with no common component."""
    if f.num_vars != 3 or g.num_vars != 3:
        raise ValueError("plane-curve intersection expects ternary forms")
    rng = rng or random.Random(0xC0FFEE)
    domain = f.domain
    expected = f.degree * g.degree
    attempts = []
    zero_resultants = 0
    for _ in range(shear_tries):
        a, b = rng.randint(-9, 9), rng.randint(-9, 9)
        rows = _shear_rows(domain, a, b)
        fs, gs = compose_linear(f, rows), compose_linear(g, rows)
        # leading coefficient in the eliminated variable must be a constant
        lead_f = fs.coefficient((fs.degree, 0, 0))
        lead_g = gs.coefficient((gs.degree, 0, 0))
        if not lead_f or not lead_g:
            continue
        res = sylvester_resultant(fs, gs, 0)
        if res.is_zero:
            zero_resultants += 1
            if zero_resultants >= 3:
                raise CommonComponent("eliminant vanished for three shears")
            continue
        if not want_points:
            # multiplicity total and squarefreeness need no root extraction;
            # a non-squarefree eliminant may be a projection collision, so
            # only report non-distinct after three shears agree
            asc = uv.trim([res.coeffs[-(k + 1)] for k in range(expected + 1)])
            inf_mult = expected - uv.degree(asc)
            squarefree = inf_mult <= 1 and uv.is_squarefree(asc, domain)
            attempts.append((squarefree,))
            if squarefree or len(attempts) >= 3:
                return PlaneIntersection(
                    total_multiplicity=expected,
                    expected_total=expected,
                    distinct=squarefree,
                    shear_stable=True,
                    ledger=None,
                )
            continue
        ledger = binary_form_roots(list(reversed(res.coeffs)), domain, rng)
        attempts.append((len(ledger.entries), a, b, fs, gs, ledger))
        if len(attempts) >= 3:
            break
    if not attempts:
        raise CommonComponent("no usable shear found")
    if not want_points:
        return PlaneIntersection(expected, expected, False, False, ledger=None)
    attempts.sort(key=lambda t: -t[0])
    nentries, a, b, fs, gs, ledger = attempts[0]
    stable = len(attempts) >= 2 and attempts[1][0] == nentries
    out = PlaneIntersection(
        total_multiplicity=ledger.total_multiplicity,
        expected_total=expected,
        distinct=ledger.squarefree and ledger.total_multiplicity == expected,
        shear_stable=stable,
        ledger=ledger,
    )
    for entry in ledger.entries:
        if entry.point is None:
            out.clusters.append(entry)
            continue
        if not want_points:
            out.clusters.append(entry)
            continue
        for pt3 in _lift_root(fs, gs, entry, domain):
            coords = _unshear_point(pt3, a, b, domain)
            pdom = _point_domain(coords, domain)
            if evaluate(f, coords) or evaluate(g, coords):
                raise ArithmeticError("lifted intersection point fails to lie on both curves")
            pp = PlanePoint(coords, entry.mult, entry.field_label, pdom)
            pp.transversal = _is_transversal(f, g, coords, pdom)
            out.points.append(pp)
    return out


def _lift_root(fs: Form, gs: Form, entry: RootEntry, domain):
    """x2-values over a projective root (x3:x4) of the eliminant."""
    root_domain = entry.domain or domain
    x3, x4 = entry.point
    lift = lambda c: root_domain.coerce(c) if root_domain is not domain else c
    u = _slice_in_x2(fs.map_coefficients(lift, root_domain) if root_domain is not domain else fs,
                     x3, x4, root_domain)
    v = _slice_in_x2(gs.map_coefficients(lift, root_domain) if root_domain is not domain else gs,
                     x3, x4, root_domain)
    g = uv.gcd(u, v, root_domain)
    if uv.degree(g) == 0:
        return []
    if uv.degree(g) == 1:
        return [(-g[0] / g[1], x3, x4)]
    if uv.degree(g) == 2:
        from .scalars import QuadraticExtension
        if isinstance(root_domain, QuadraticExtension):
            return []  # would need a tower; stays a cluster
        aa, bb, cc = g[2], g[1], g[0]
        disc = bb * bb - 4 * aa * cc
        s = root_domain.sqrt_or_none(disc)
        if s is None:
            return []
        half = root_domain.one / root_domain.coerce(2)
        return [(((-bb + sgn) * half) / aa, x3, x4) for sgn in (s, -s)]
    return []


def _is_transversal(f, g, coords, domain):
    jac = [[evaluate(partial_derivative(h, i), coords) for i in range(3)] for h in (f, g)]
    return rank(jac, domain) == 2


# ---------------------------------------------------------------------------
# point sampling on plane curves over F_p


def rational_point_on_conic(conic: Form, rng: random.Random, tries: int = 400):
    """A rational point on a ternary conic over F_p, or None."""
    domain = conic.domain
    p = domain.p
    for _ in range(tries):
        # random line u*A + s*B; roots of the restricted binary quadratic
        A = tuple(domain.coerce(rng.randrange(p)) for _ in range(3))
        B = tuple(domain.coerce(rng.randrange(p)) for _ in range(3))
        pt = _second_intersection_of_line(conic, A, B, domain)
        if pt is not None:
            return pt
    return None


def _second_intersection_of_line(conic, A, B, domain):
    from .roots import binary_quadratic_roots
    ca = evaluate(conic, A)
    cb = evaluate(conic, B)
    # conic(uA + sB) = ca u^2 + bil u s + cb s^2
    mixed = evaluate(conic, tuple(a + b for a, b in zip(A, B))) - ca - cb
    if not ca and not mixed and not cb:
        return None
    try:
        roots, fld = binary_quadratic_roots(ca, mixed, cb, domain)
    except ValueError:
        return None
    for (u, s), _ in roots:
        if fld is not domain:
            return None
        pt = tuple(u * a + s * b for a, b in zip(A, B))
        if any(pt):
            return pt
    return None


def conic_rational_points(conic: Form, rng: random.Random, count: int):
    """Random rational points on a smooth conic over F_p via the line pencil."""
    domain = conic.domain
    p = domain.p
    base = rational_point_on_conic(conic, rng)
    if base is None:
        return []
    gram = _gram3(conic)
    out, seen = [], set()
    guard = 0
    while len(out) < count and guard < 60 * count + 200:
        guard += 1
        d = tuple(domain.coerce(rng.randrange(p)) for _ in range(3))
        if not any(d):
            continue
        # second intersection of the line through base with direction d
        cd = evaluate(conic, d)
        bil = _bilinear(gram, base, d, domain)
        if not cd and not bil:
            continue
        pt = tuple(cd * b - bil * dd for b, dd in zip(base, d))
        if not any(pt):
            continue
        key = _normalize_key(pt, domain)
        if key in seen:
            continue
        seen.add(key)
        if evaluate(conic, pt):
            raise ArithmeticError("conic parametrization produced an off-curve point")
        out.append(pt)
    return out


def _gram3(conic: Form):
    from .forms import SymMatrix3
    return SymMatrix3.gram_of_ternary(conic)


def _bilinear(gram, u, v, domain):
    total = domain.zero
    for i in range(3):
        for j in range(3):
            total = total + gram.entries[i][j] * u[i] * v[j]
    return total + total


def _normalize_key(pt, domain):
    lead = next(c for c in pt if c)
    inv = domain.one / lead
    return tuple(repr(c * inv) for c in pt)


def curve_rational_points(f: Form, rng: random.Random, count: int, tries: int = 4000):
    """Random rational points on a plane curve over F_p by slicing with lines."""
    domain = f.domain
    p = domain.p
    out, seen = [], set()
    attempts = 0
    while len(out) < count and attempts < tries:
        attempts += 1
        A = tuple(domain.coerce(rng.randrange(p)) for _ in range(3))
        B = tuple(domain.coerce(rng.randrange(p)) for _ in range(3))
        cs = _restrict_to_line(f, A, B)
        if not any(cs):
            continue
        rational, _ = uv.fp_rational_roots(list(cs), p)
        for (t, mult) in rational:
            pt = tuple(t * a + b for a, b in zip(A, B))
            if not any(pt) or evaluate(f, pt):
                continue
            key = _normalize_key(pt, domain)
            if key not in seen:
                seen.add(key)
                out.append(pt)
                if len(out) >= count:
                    break
    return out


def _restrict_to_line(f: Form, A, B):
    """Coefficients (ascending in u) of f(u*A + B)."""
    domain = f.domain
    rows = [[a, b] for a, b in zip(A, B)]
    restricted = compose_linear(f, rows)
    cs = [domain.zero] * (f.degree + 1)
    from .forms import monomials
    for m, c in zip(monomials(2, f.degree), restricted.coeffs):
        cs[m[0]] = cs[m[0]] + c
    return cs
