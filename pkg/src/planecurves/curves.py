"""Parametrized plane curves: implicitization, the correspondence between
pair transformations and plane automorphisms, the equivalence decision, the
coordinate-polynomial test, and the simply-connected-fiber screen.

The equivalence decision canonicalizes both inputs, rules cases out by
canonical degree, and otherwise reduces to solvability of a coefficient
system: an automorphism between canonical forms of equal degree factors as a
bounded shear y -> y + f(x) combined with an affine map, so the unknown
coefficients satisfy a polynomial system that Groebner bases decide over the
algebraic closure.  Rational witnesses are extracted when present and are
always re-verified exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExhausted, ConstantInput, DegenerateCurve
from .et import ETStep, PolyPair, ReductionTrace, peak_reduce
from .groebner import find_rational_point, is_consistent_over_closure, presolve_linear
from .polynomials import (
    BiPoly,
    MultiPoly,
    UniPoly,
    boundary_face,
    perfect_power_root,
    resultant_t,
    triangular_profile,
)
from .tame import (
    AutoStep,
    CanonStatus,
    TameAuto,
    apply_auto,
    canonicalize,
    compose,
    invert,
    reduce_triangular_once,
)


@dataclass(frozen=True)
class ParamCurve:
    """x = u(t), y = v(t); at least one component nonconstant."""

    u: UniPoly
    v: UniPoly


@dataclass(frozen=True)
class ImplicitResult:
    """Minimal polynomial of the curve plus the parametrization degree: the
    resultant equals p^mult up to a nonzero constant."""

    p: BiPoly
    mult: int


def implicitize(c: ParamCurve) -> ImplicitResult:
    """Minimal polynomial via the resultant of (u(t) - x, v(t) - y) in t."""
    u_const, v_const = c.u.is_constant(), c.v.is_constant()
    if u_const and v_const:
        raise DegenerateCurve("both components are constant")
    if u_const:
        line = BiPoly.x() - BiPoly.const(c.u.coeff(0))
        return ImplicitResult(line.normalized(), int(c.v.degree))
    if v_const:
        line = BiPoly.y() - BiPoly.const(c.v.coeff(0))
        return ImplicitResult(line.normalized(), int(c.u.degree))
    f = BiPoly({(k, 0): a for k, a in enumerate(c.u.coeffs) if a})
    f = f + BiPoly({(0, 1): -1})  # u(t) - x in the (t, x) encoding
    g = BiPoly({(k, 0): a for k, a in enumerate(c.v.coeffs) if a})
    g = g + BiPoly({(0, 1): -1})  # v(t) - y in the (t, y) encoding
    resultant = resultant_t(f, g)
    p, mult = perfect_power_root(resultant)
    return ImplicitResult(p, mult)


def et_step_to_auto(step: ETStep) -> AutoStep:
    """Plane automorphism matching a pair transformation: transforming the
    parametrization by s changes the minimal polynomial by the inverse
    coordinate change."""
    if step.kind == "add1":
        return AutoStep.elem_x(UniPoly.term(-step.mu, step.k))
    if step.kind == "add2":
        return AutoStep.elem_y(UniPoly.term(-step.mu, step.k))
    a1, a2, b1, b2 = step.matrix
    det = a1 * b2 - a2 * b1
    return AutoStep.affine(b2 / det, -a2 / det, 0, -b1 / det, a1 / det, 0)


def normalize_curve(c: ParamCurve):
    """(normalized curve, pair trace, accumulated plane automorphism)."""
    reduced, trace = peak_reduce(PolyPair(c.u, c.v))
    steps = tuple(et_step_to_auto(s) for s in trace.steps)
    return ParamCurve(reduced.u, reduced.v), trace, TameAuto(steps)


# ---------------------------------------------------------------------------
# equivalence decision


EQUIVALENT = "equivalent"
INEQUIVALENT = "inequivalent"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class EquivDecision:
    """verdict 'equivalent' carries a witness with apply_auto(witness, p)
    equal to scale * q exactly."""

    verdict: str
    witness: TameAuto | None = None
    scale: Fraction | None = None
    reason: str = ""


def _line_to_x(line: BiPoly) -> TameAuto:
    """Affine automorphism sending the degree-one polynomial to plain x."""
    a, b, c = line.coeff(1, 0), line.coeff(0, 1), line.coeff(0, 0)
    if a != 0:
        step = AutoStep.affine(Fraction(1) / a, -b / a, -c / a, 0, 1, 0)
    else:
        step = AutoStep.affine(0, 1, 0, Fraction(1) / b, 0, -c / b)
    alpha = TameAuto.of(step)
    assert apply_auto(alpha, line) == BiPoly.x()
    return alpha


def _proportion(p: BiPoly, q: BiPoly):
    if p.terms.keys() != q.terms.keys():
        return None
    scale = None
    for ij, c in p.terms.items():
        r = c / q.terms[ij]
        if scale is None:
            scale = r
        elif scale != r:
            return None
    return scale


def _orient(poly: BiPoly, alpha: TameAuto):
    """Swap variables if needed so the pure y-degree is the smaller one."""
    prof = triangular_profile(poly)
    if prof.m > prof.n:
        swap = TameAuto.of(AutoStep.swap())
        return poly.swap_xy(), compose(alpha, swap)
    return poly, alpha


def _symbolic_affine_images(arity, names, base):
    X = MultiPoly.var(arity, 0, names)
    Y = MultiPoly.var(arity, 1, names)
    def par(i):
        return MultiPoly.var(arity, base + i, names)
    ax = X * par(0) + Y * par(1) + par(2)
    ay = X * par(3) + Y * par(4) + par(5)
    return ax, ay


def _build_candidate_system(phat: BiPoly, qhat: BiPoly, shear_deg: int, order_kind: str):
    """Coefficient system for 'some shear-and-affine map sends phat to a
    scalar multiple of qhat'.

    Unknowns: affine entries a1,a2,a3,b1,b2,b3; shear coefficients
    f0..f_shear_deg; the scale c; two slack variables forcing the affine
    determinant and c to be nonzero.  order_kind 'shear_first' composes the
    shear before the affine map, 'affine_first' the other way.
    """
    n_f = shear_deg + 1
    arity = 2 + 6 + n_f + 1 + 2
    names = (
        ["x", "y", "a1", "a2", "a3", "b1", "b2", "b3"]
        + [f"f{d}" for d in range(n_f)]
        + ["c", "s", "w"]
    )
    AFF, F0 = 2, 8
    C, S, W = 8 + n_f, 9 + n_f, 10 + n_f
    X = MultiPoly.var(arity, 0, names)
    Y = MultiPoly.var(arity, 1, names)
    ax, ay = _symbolic_affine_images(arity, names, AFF)

    def shear_of(base: MultiPoly) -> MultiPoly:
        acc = MultiPoly.zero(arity, names)
        power = MultiPoly.const(arity, 1, names)
        for d in range(n_f):
            acc = acc + MultiPoly.var(arity, F0 + d, names) * power
            power = power * base
        return acc

    if order_kind == "shear_first":
        sub_x, sub_y = ax, ay + shear_of(ax)
    else:
        shear = shear_of(X)
        sub_x = ax.substitute_var(1, Y + shear)
        sub_y = ay.substitute_var(1, Y + shear)

    xcache = {0: MultiPoly.const(arity, 1, names)}
    ycache = {0: MultiPoly.const(arity, 1, names)}

    def power(cache, base, e):
        if e not in cache:
            cache[e] = power(cache, base, e - 1) * base
        return cache[e]

    image = MultiPoly.zero(arity, names)
    for (i, j), coeff in sorted(phat.terms.items()):
        image = image + (power(xcache, sub_x, i) * power(ycache, sub_y, j)).scale(coeff)
    plain_x, plain_y = {0: MultiPoly.const(arity, 1, names)}, {0: MultiPoly.const(arity, 1, names)}
    scaled_target = MultiPoly.zero(arity, names)
    cvar = MultiPoly.var(arity, C, names)
    for (i, j), coeff in sorted(qhat.terms.items()):
        scaled_target = scaled_target + (
            power(plain_x, X, i) * power(plain_y, Y, j) * cvar
        ).scale(coeff)
    difference = image - scaled_target

    by_monomial = {}
    for exps, coeff in difference.terms.items():
        key = (exps[0], exps[1])
        rest = (0, 0) + exps[2:]
        bucket = by_monomial.setdefault(key, {})
        bucket[rest] = bucket.get(rest, Fraction(0)) + coeff
    generators = [MultiPoly(arity, bucket, names) for bucket in by_monomial.values()]

    det = (
        MultiPoly.var(arity, AFF, names) * MultiPoly.var(arity, AFF + 4, names)
        - MultiPoly.var(arity, AFF + 1, names) * MultiPoly.var(arity, AFF + 3, names)
    )
    one = MultiPoly.const(arity, 1, names)
    generators.append(det * MultiPoly.var(arity, S, names) - one)
    generators.append(cvar * MultiPoly.var(arity, W, names) - one)
    layout = {"arity": arity, "AFF": AFF, "F0": F0, "n_f": n_f, "C": C}
    return generators, layout


def _witness_from_solution(sol, layout, order_kind):
    aff = [sol[layout["AFF"] + i] for i in range(6)]
    f = UniPoly([sol[layout["F0"] + d] for d in range(layout["n_f"])])
    affine = AutoStep.affine(*aff)
    shear = AutoStep.elem_y(f)
    if order_kind == "shear_first":
        steps = [shear, affine]
    else:
        steps = [affine, shear]
    return TameAuto.of(*steps), sol[layout["C"]]


def decide_equivalence(p: BiPoly, q: BiPoly, budget: int | None = 200000) -> EquivDecision:
    """Decide whether some plane automorphism maps p to a scalar multiple
    of q.  Complete for polynomials whose zero fibers admit one-variable
    polynomial parametrizations; otherwise a definite answer may degrade to
    'unknown'."""
    if p.is_constant() or q.is_constant():
        raise ConstantInput("equivalence needs nonconstant polynomials")
    cp, alpha_p, sp = canonicalize(p)
    cq, alpha_q, sq = canonicalize(q)
    for status in (sp, sq):
        if status.kind == CanonStatus.FIELD_OBSTRUCTION:
            return EquivDecision(UNKNOWN, reason=f"canonicalization blocked: {status.detail}")
        if status.kind == CanonStatus.NON_TRIANGULAR:
            return EquivDecision(UNKNOWN, reason="canonicalization left the triangular family")
    if sp.kind == CanonStatus.LINEAR and sq.kind == CanonStatus.LINEAR:
        witness = compose(
            compose(alpha_p, _line_to_x(cp)),
            compose(invert(_line_to_x(cq)), invert(alpha_q)),
        )
        decision = EquivDecision(EQUIVALENT, witness, Fraction(1), "both reduce to coordinate lines")
        _check_witness(decision, p, q)
        return decision
    if sp.kind != sq.kind:
        return EquivDecision(
            INEQUIVALENT, reason="canonical degrees differ (one side reduces to degree one)"
        )

    fp = triangular_profile(cp)
    fq = triangular_profile(cq)
    if max(fp.n, fp.m) != max(fq.n, fq.m):
        return EquivDecision(
            INEQUIVALENT,
            reason=f"canonical degrees {max(fp.n, fp.m)} and {max(fq.n, fq.m)} differ",
        )

    phat, alpha_p = _orient(cp, alpha_p)
    qhat, alpha_q = _orient(cq, alpha_q)
    scale = _proportion(phat, qhat)
    if scale is not None:
        witness = compose(alpha_p, invert(alpha_q))
        decision = EquivDecision(EQUIVALENT, witness, scale, "canonical forms coincide")
        _check_witness(decision, p, q)
        return decision

    prof = triangular_profile(phat)
    shear_deg = prof.n // prof.m
    consistent_somewhere = False
    try:
        for order_kind in ("shear_first", "affine_first"):
            generators, layout = _build_candidate_system(phat, qhat, shear_deg, order_kind)
            reduced, _ = presolve_linear(generators)
            if not is_consistent_over_closure(reduced, budget=budget):
                continue
            consistent_somewhere = True
            sol = find_rational_point(generators, layout["arity"], budget=budget)
            if sol is None:
                continue
            gamma, c = _witness_from_solution(sol, layout, order_kind)
            witness = compose(compose(alpha_p, gamma), invert(alpha_q))
            decision = EquivDecision(EQUIVALENT, witness, c, "residual system solvable")
            _check_witness(decision, p, q)
            return decision
    except BudgetExhausted:
        return EquivDecision(UNKNOWN, reason="computation budget exhausted")
    if consistent_somewhere:
        return EquivDecision(
            UNKNOWN, reason="equivalent over the closure, no rational witness found"
        )
    return EquivDecision(INEQUIVALENT, reason="no admissible automorphism matches the canonical forms")


def _check_witness(decision: EquivDecision, p: BiPoly, q: BiPoly):
    assert apply_auto(decision.witness, p) == q.scale(decision.scale)


# ---------------------------------------------------------------------------
# coordinate test


def is_coordinate(p: BiPoly):
    """True/False when decidable: a polynomial is a coordinate exactly when
    its canonical form has degree one.  None when canonicalization leaves the
    triangular family or hits a field obstruction."""
    if p.is_constant():
        raise ConstantInput("coordinate test needs a nonconstant polynomial")
    _, _, status = canonicalize(p)
    if status.kind == CanonStatus.LINEAR:
        return True
    if status.kind == CanonStatus.CANONICAL:
        return False
    return None


# ---------------------------------------------------------------------------
# screening for irreducible simply connected fibers


@dataclass(frozen=True)
class ScreenResult:
    verdict: str  # 'candidate' or 'reject'
    k: int | None = None
    l: int | None = None
    reasons: tuple = ()
    decidable: bool = True


def zl_screen(p: BiPoly) -> ScreenResult:
    """Necessary conditions for the fiber {p = 0} to be an irreducible simply
    connected curve, after Zaidenberg-Lin: such a polynomial has a canonical
    model x^k - y^l with coprime (k, l), the model degrees bound and divide
    the input degree, and along the reduction every divisible profile must
    carry a proper-power edge.  Passing yields the candidate (k, l); callers
    confirm with decide_equivalence(p, x^k - y^l)."""
    if p.is_constant():
        raise ConstantInput("screen needs a nonconstant polynomial")
    d0 = int(p.total_degree)
    q = p
    while True:
        if q.total_degree <= 1:
            return ScreenResult("candidate", 1, 1)
        prof = triangular_profile(q)
        if prof is None:
            return ScreenResult(
                "reject", reasons=("Newton polygon is not a triangle or axis-touching segment",)
            )
        n, m = prof.n, prof.m
        if m % n and n % m:
            reasons = []
            if _gcd(n, m) != 1:
                reasons.append(f"profile degrees ({n}, {m}) are not coprime")
            if max(n, m) > d0:
                reasons.append(f"profile degree {max(n, m)} exceeds the input degree {d0}")
            if d0 % n and d0 % m:
                reasons.append(f"neither {n} nor {m} divides the input degree {d0}")
            if reasons:
                return ScreenResult("reject", reasons=tuple(reasons))
            return ScreenResult("candidate", n, m)
        if min(n, m) >= 2:
            # with a divisible profile the edge polynomial of a candidate
            # must be a gcd(n, m)-fold power; profiles touching degree one
            # are coordinate-like and reduce without this constraint
            edge = boundary_face(q, prof)
            _, mult = perfect_power_root(edge)
            if mult < 2:
                return ScreenResult(
                    "reject",
                    reasons=("divisible profile but the leading edge is not a proper power",),
                )
        outcome = reduce_triangular_once(q)
        if isinstance(outcome, CanonStatus):
            return ScreenResult(
                "reject",
                reasons=(f"undecidable over the rationals: {outcome.detail}",),
                decidable=False,
            )
        q, _ = outcome


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
