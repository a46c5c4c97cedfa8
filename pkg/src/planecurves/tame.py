"""Tame automorphisms of the polynomial plane.

An automorphism is a list of steps applied left to right; each step is an
elementary substitution in one variable or an invertible affine map
(translations included, so decomposition terminates on shifted coordinates).
Decomposition strips the higher-degree image by the unique power of the other
one; canonicalization drives a polynomial down the triangular family until no
elementary move can lower its degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateLinear, NotTriangularInput
from .polynomials import (
    BiPoly,
    NEG_INF,
    TriangularForm,
    UniPoly,
    _frac,
    boundary_face,
    rational_roots,
    triangular_profile,
)


@dataclass(frozen=True)
class AutoStep:
    """kind 'elem_x': x -> x + f(y);  'elem_y': y -> y + f(x);
    'affine': x -> a1 x + a2 y + a3, y -> b1 x + b2 y + b3 (invertible)."""

    kind: str
    f: UniPoly | None = None
    matrix: tuple | None = None

    @classmethod
    def elem_x(cls, f: UniPoly) -> "AutoStep":
        return cls("elem_x", f=f)

    @classmethod
    def elem_y(cls, f: UniPoly) -> "AutoStep":
        return cls("elem_y", f=f)

    @classmethod
    def affine(cls, a1, a2, a3, b1, b2, b3) -> "AutoStep":
        mat = tuple(_frac(v) for v in (a1, a2, a3, b1, b2, b3))
        if mat[0] * mat[4] - mat[1] * mat[3] == 0:
            raise DegenerateLinear("affine step must be invertible")
        return cls("affine", matrix=mat)

    @classmethod
    def swap(cls) -> "AutoStep":
        return cls.affine(0, 1, 0, 1, 0, 0)

    def images(self):
        """Substitution images (what x and y become)."""
        if self.kind == "elem_x":
            fy = BiPoly({(0, k): c for k, c in enumerate(self.f.coeffs) if c})
            return BiPoly.x() + fy, BiPoly.y()
        if self.kind == "elem_y":
            fx = BiPoly({(k, 0): c for k, c in enumerate(self.f.coeffs) if c})
            return BiPoly.x(), BiPoly.y() + fx
        a1, a2, a3, b1, b2, b3 = self.matrix
        return (
            BiPoly({(1, 0): a1, (0, 1): a2, (0, 0): a3}),
            BiPoly({(1, 0): b1, (0, 1): b2, (0, 0): b3}),
        )

    def inverse(self) -> "AutoStep":
        if self.kind == "elem_x":
            return AutoStep.elem_x(-self.f)
        if self.kind == "elem_y":
            return AutoStep.elem_y(-self.f)
        a1, a2, a3, b1, b2, b3 = self.matrix
        det = a1 * b2 - a2 * b1
        i1, i2, i4, i5 = b2 / det, -a2 / det, -b1 / det, a1 / det
        return AutoStep.affine(i1, i2, -(i1 * a3 + i2 * b3), i4, i5, -(i4 * a3 + i5 * b3))

    def is_identity(self) -> bool:
        if self.kind in ("elem_x", "elem_y"):
            return self.f.is_zero()
        return self.matrix == (1, 0, 0, 0, 1, 0)


@dataclass(frozen=True)
class TameAuto:
    steps: tuple = ()

    @classmethod
    def identity(cls) -> "TameAuto":
        return cls(())

    @classmethod
    def of(cls, *steps) -> "TameAuto":
        return cls(tuple(s for s in steps if not s.is_identity()))


def apply_auto(alpha: TameAuto, p: BiPoly) -> BiPoly:
    out = p
    for step in alpha.steps:
        sx, sy = step.images()
        out = out.substitute(sx, sy)
    return out


def images_of(alpha: TameAuto):
    return apply_auto(alpha, BiPoly.x()), apply_auto(alpha, BiPoly.y())


def compose(alpha: TameAuto, beta: TameAuto) -> TameAuto:
    """apply_auto(compose(a, b), p) == apply_auto(b, apply_auto(a, p))."""
    return TameAuto(alpha.steps + beta.steps)


def invert(alpha: TameAuto) -> TameAuto:
    return TameAuto(tuple(s.inverse() for s in reversed(alpha.steps)))


# ---------------------------------------------------------------------------
# decomposition into elementary and affine steps


def _leading_form(p: BiPoly) -> BiPoly:
    d = p.total_degree
    return BiPoly({(i, j): c for (i, j), c in p.terms.items() if i + j == d})


def _proportional(p: BiPoly, q: BiPoly):
    """mu with p == mu * q, or None."""
    if p.terms.keys() != q.terms.keys():
        return None
    mu = None
    for ij, c in p.terms.items():
        r = c / q.terms[ij]
        if mu is None:
            mu = r
        elif mu != r:
            return None
    return mu


def decompose(g1: BiPoly, g2: BiPoly):
    """TameAuto with images (g1, g2), or None if the pair is not an
    automorphism.

    While the larger image has degree above one, its leading form must be a
    scalar multiple of the d-th power of the other's (d the degree ratio);
    stripping that power is one elementary step.  The leftover affine pair
    must be invertible.
    """
    steps = []
    a, b = g1, g2
    while True:
        da, db = a.total_degree, b.total_degree
        if da <= 1 and db <= 1:
            break
        first_bigger = da >= db
        hi, lo = (a, b) if first_bigger else (b, a)
        dh, dl = (da, db) if first_bigger else (db, da)
        if dl < 1 or dh % dl:
            return None
        d = dh // dl
        mu = _proportional(_leading_form(hi), _leading_form(lo) ** d)
        if mu is None:
            return None
        f = UniPoly.term(mu, d)
        hi = hi - (lo**d).scale(mu)
        if hi.total_degree >= dh:
            return None
        if first_bigger:
            a = hi
            steps.append(AutoStep.elem_x(f))
        else:
            b = hi
            steps.append(AutoStep.elem_y(f))
    a1, a2, a3 = a.coeff(1, 0), a.coeff(0, 1), a.coeff(0, 0)
    b1, b2, b3 = b.coeff(1, 0), b.coeff(0, 1), b.coeff(0, 0)
    if a1 * b2 - a2 * b1 == 0:
        return None
    affine = AutoStep.affine(a1, a2, a3, b1, b2, b3)
    parts = list(steps)
    if not affine.is_identity():
        parts.append(affine)
    result = TameAuto(tuple(parts))
    assert images_of(result) == (g1, g2)
    return result


# ---------------------------------------------------------------------------
# canonicalization within the triangular family


@dataclass(frozen=True)
class CanonStatus:
    """Terminal state of canonicalize: 'canonical' (neither pure degree
    divides the other), 'linear' (total degree at most one), 'non_triangular'
    (input or an intermediate left the triangular family), or
    'field_obstruction' (a required root is irrational)."""

    kind: str
    detail: str = ""

    CANONICAL = "canonical"
    LINEAR = "linear"
    NON_TRIANGULAR = "non_triangular"
    FIELD_OBSTRUCTION = "field_obstruction"


def _edge_coefficient_poly(p: BiPoly, prof: TriangularForm, direction: str) -> UniPoly:
    """Coefficient polynomial whose root must scale the substituted power so
    the opposite pure term cancels.

    For x -> x + mu y^k (direction 'x', m = k n) the new y^m coefficient is
    sum of c_ij mu^i over the Newton-polygon edge i m + j n = m n; the 'y'
    direction is symmetric with mu^j.
    """
    face = boundary_face(p, prof)
    out = {}
    for (i, j), c in face.terms.items():
        e = i if direction == "x" else j
        out[e] = out.get(e, Fraction(0)) + c
    coeffs = [Fraction(0)] * (max(out) + 1)
    for e, c in out.items():
        coeffs[e] = c
    return UniPoly(coeffs)


def _pick_root(roots):
    """Deterministic choice among rational roots: largest first, so the
    positive root wins when both signs of an even root exist."""
    return max(roots)


def reduce_triangular_once(p: BiPoly):
    """One degree-lowering move inside the triangular family.

    Returns (reduced polynomial, step) when one pure degree divides the
    other and the edge equation has a rational root; the k = 1 case is an
    affine shear.  Returns None when neither degree divides the other, and a
    CanonStatus field obstruction when only an irrational root would do.
    """
    prof = triangular_profile(p)
    if prof is None:
        raise NotTriangularInput("input must have a triangular profile")
    n, m = prof.n, prof.m
    if m % n == 0:
        k = m // n
        phi = _edge_coefficient_poly(p, prof, "x")
        roots = [r for r in rational_roots(phi) if r != 0]
        if not roots:
            return CanonStatus(
                CanonStatus.FIELD_OBSTRUCTION,
                f"needs a rational root of {phi.to_str('z')}",
            )
        mu = _pick_root(roots)
        step = (
            AutoStep.affine(1, mu, 0, 0, 1, 0)
            if k == 1
            else AutoStep.elem_x(UniPoly.term(mu, k))
        )
        sx, sy = step.images()
        reduced = p.substitute(sx, sy)
        if k > 1:
            assert reduced.total_degree < p.total_degree
        return reduced, step
    if n % m == 0:
        k = n // m
        psi = _edge_coefficient_poly(p, prof, "y")
        roots = [r for r in rational_roots(psi) if r != 0]
        if not roots:
            return CanonStatus(
                CanonStatus.FIELD_OBSTRUCTION,
                f"needs a rational root of {psi.to_str('z')}",
            )
        mu = _pick_root(roots)
        step = (
            AutoStep.affine(1, 0, 0, mu, 1, 0)
            if k == 1
            else AutoStep.elem_y(UniPoly.term(mu, k))
        )
        sx, sy = step.images()
        reduced = p.substitute(sx, sy)
        if k > 1:
            assert reduced.total_degree < p.total_degree
        return reduced, step
    return None


def canonicalize(p: BiPoly):
    """(canonical polynomial, accumulated automorphism, status).

    Greedy reduction: while the polynomial stays triangular and one pure
    degree divides the other, apply reduce_triangular_once.  The accumulated
    automorphism alpha satisfies apply_auto(alpha, p) == result.
    """
    steps = []
    q = p
    while True:
        prof = triangular_profile(q)
        if prof is None:
            kind = CanonStatus.LINEAR if q.total_degree <= 1 else CanonStatus.NON_TRIANGULAR
            return q, TameAuto(tuple(steps)), CanonStatus(kind)
        if prof.m % prof.n and prof.n % prof.m:
            return q, TameAuto(tuple(steps)), CanonStatus(CanonStatus.CANONICAL)
        outcome = reduce_triangular_once(q)
        if isinstance(outcome, CanonStatus):
            return q, TameAuto(tuple(steps)), outcome
        q, step = outcome
        steps.append(step)


def degree_irreducible(p: BiPoly) -> bool:
    """True iff no automorphism of the plane can lower the degree of p:
    triangular with neither pure degree dividing the other (both >= 2)."""
    prof = triangular_profile(p)
    if prof is None:
        return False
    return prof.m % prof.n != 0 and prof.n % prof.m != 0 and min(prof.m, prof.n) >= 2


INEQUIVALENT = "inequivalent"
INCONCLUSIVE = "inconclusive"


def inequivalent_by_canonical_degree(p: BiPoly, q: BiPoly) -> str:
    """One-directional test: canonicalize both; distinct canonical maximal
    degrees certify that no plane automorphism maps p to q."""
    cp, _, sp = canonicalize(p)
    cq, _, sq = canonicalize(q)
    if sp.kind != CanonStatus.CANONICAL or sq.kind != CanonStatus.CANONICAL:
        return INCONCLUSIVE
    fp = triangular_profile(cp)
    fq = triangular_profile(cq)
    if max(fp.n, fp.m) != max(fq.n, fq.m):
        return INEQUIVALENT
    return INCONCLUSIVE
