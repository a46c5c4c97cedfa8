"""Minimal Buchberger engine over the rationals.

Used to decide consistency (over the algebraic closure) of the residual
coefficient systems produced by the equivalence decision, and to extract
rational solutions when they exist.  Normal (smallest-lcm) pair selection
with the coprime-leading-term criterion; generators are kept monic to bound
coefficient growth.  A step budget makes long runs interruptible.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExhausted
from .polynomials import MultiPoly, rational_roots, UniPoly


@dataclass(frozen=True)
class MonOrder:
    """Monomial order: 'lex' or 'grlex' over a ranking (permutation of
    variable indices, highest priority first)."""

    kind: str
    ranking: tuple

    def __post_init__(self):
        if self.kind not in ("lex", "grlex"):
            raise ValueError("order kind must be 'lex' or 'grlex'")

    @classmethod
    def lex(cls, arity: int, ranking=None) -> "MonOrder":
        return cls("lex", tuple(ranking) if ranking else tuple(range(arity)))

    @classmethod
    def grlex(cls, arity: int, ranking=None) -> "MonOrder":
        return cls("grlex", tuple(ranking) if ranking else tuple(range(arity)))

    def key(self, exps):
        ranked = tuple(exps[i] for i in self.ranking)
        if self.kind == "lex":
            return ranked
        return (sum(exps), ranked)


@dataclass
class IdealBasis:
    generators: list
    order: MonOrder

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]


def leading_term(f: MultiPoly, order: MonOrder):
    exps = max(f.terms, key=order.key)
    return exps, f.terms[exps]


def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, n=1):
        if self.limit is None:
            return
        self.used += n
        if self.used > self.limit:
            raise BudgetExhausted(f"step budget of {self.limit} exhausted")


def normal_form(f: MultiPoly, basis: IdealBasis, budget=None) -> MultiPoly:
    """Remainder of f under multivariate division by basis.generators; no
    term of the result is divisible by any generator's leading term."""
    budget = budget if isinstance(budget, _Budget) else _Budget(budget)
    gens = [(g, leading_term(g, basis.order)) for g in basis.generators]
    order = basis.order
    remainder = {}
    work = dict(f.terms)
    while work:
        exps = max(work, key=order.key)
        coeff = work.pop(exps)
        hit = next(((g, lt, lc) for g, (lt, lc) in gens if _mono_divides(lt, exps)), None)
        if hit is None:
            remainder[exps] = coeff
            continue
        budget.spend()
        g, lt, lc = hit
        shift = _mono_sub(exps, lt)
        factor = coeff / lc
        for ge, gc in g.terms.items():
            key = tuple(a + b for a, b in zip(ge, shift))
            s = work.get(key, Fraction(0)) - factor * gc
            if key == exps:
                continue  # cancelled leading term, already popped
            if s == 0:
                work.pop(key, None)
            else:
                work[key] = s
    return MultiPoly(f.arity, remainder, f.names)


def _s_polynomial(f, g, order):
    (fe, fc) = leading_term(f, order)
    (ge, gc) = leading_term(g, order)
    lcm = _mono_lcm(fe, ge)
    mf = MultiPoly(f.arity, {_mono_sub(lcm, fe): Fraction(1, 1) / fc}, f.names)
    mg = MultiPoly(g.arity, {_mono_sub(lcm, ge): Fraction(1, 1) / gc}, g.names)
    return mf * f - mg * g


def buchberger(basis: IdealBasis, budget=None) -> IdealBasis:
    """Reduced Groebner basis of the ideal generated by basis.generators."""
    budget = budget if isinstance(budget, _Budget) else _Budget(budget)
    order = basis.order
    gens = []
    lts = []

    def push(r):
        lt, lc = leading_term(r, order)
        gens.append(r.scale(1 / lc))
        lts.append(lt)
        return lt

    for g in basis.generators:
        r = normal_form(g, IdealBasis(gens, order), budget) if gens else g
        if not r.is_zero():
            lt = push(r)
            if r.is_constant():
                arity = r.arity
                unit = MultiPoly.const(arity, 1, r.names)
                return IdealBasis([unit], order)

    heap = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            lcm = _mono_lcm(lts[i], lts[j])
            heapq.heappush(heap, (order.key(lcm), i, j))
    while heap:
        _, i, j = heapq.heappop(heap)
        if _mono_lcm(lts[i], lts[j]) == tuple(a + b for a, b in zip(lts[i], lts[j])):
            continue  # coprime leading terms: S-polynomial reduces to zero
        budget.spend()
        s = _s_polynomial(gens[i], gens[j], order)
        r = normal_form(s, IdealBasis(gens, order), budget)
        if r.is_zero():
            continue
        if r.is_constant():
            return IdealBasis([MultiPoly.const(r.arity, 1, r.names)], order)
        lt = push(r)
        new = len(gens) - 1
        for k in range(new):
            lcm = _mono_lcm(lts[k], lt)
            heapq.heappush(heap, (order.key(lcm), k, new))
    return IdealBasis(_reduce_basis(gens, order, budget), order)


def _reduce_basis(gens, order, budget):
    """Drop generators whose leading term another divides, then fully reduce
    each survivor against the others; output is monic."""
    lts = [leading_term(g, order)[0] for g in gens]
    keep = []
    for i, g in enumerate(gens):
        if any(
            j != i and _mono_divides(lts[j], lts[i]) and (j < i or lts[j] != lts[i])
            for j in range(len(gens))
        ):
            continue
        keep.append(g)
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        r = normal_form(g, IdealBasis(others, order), budget)
        if not r.is_zero():
            _, lc = leading_term(r, order)
            reduced.append(r.scale(1 / lc))
    reduced.sort(key=lambda g: order.key(leading_term(g, order)[0]))
    return reduced


def is_consistent_over_closure(generators, order: MonOrder | None = None, budget=None) -> bool:
    """True iff the system has a solution over the algebraic closure, i.e.
    its reduced Groebner basis is not {1}."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return True
    if any(g.is_constant() for g in gens):
        return False
    order = order or MonOrder.grlex(gens[0].arity)
    gb = buchberger(IdealBasis(gens, order), budget)
    return not (len(gb.generators) == 1 and gb.generators[0].is_constant())


# ---------------------------------------------------------------------------
# rational solutions


def _univariate_in(g: MultiPoly):
    """Variable index if g involves exactly one variable, else None."""
    present = g.variables_present()
    return present.pop() if len(present) == 1 else None


def _to_unipoly(g: MultiPoly, var: int) -> UniPoly:
    out = {}
    for exps, c in g.terms.items():
        out[exps[var]] = c
    coeffs = [Fraction(0)] * (max(out) + 1)
    for k, c in out.items():
        coeffs[k] = c
    return UniPoly(coeffs)


def presolve_linear(generators):
    """Repeatedly eliminate variables that occur linearly with a constant
    coefficient and nowhere else in their generator.  Returns the reduced
    generators plus an ordered substitution chain for back-substitution."""
    gens = [g for g in generators if not g.is_zero()]
    chain = []
    changed = True
    while changed:
        changed = False
        for idx, g in enumerate(gens):
            target = None
            for var in sorted(g.variables_present()):
                coeff = None
                ok = True
                for exps, c in g.terms.items():
                    if exps[var] == 0:
                        continue
                    if exps[var] == 1 and sum(exps) == 1:
                        coeff = c
                    else:
                        ok = False
                        break
                if ok and coeff is not None:
                    target = (var, coeff)
                    break
            if target is None:
                continue
            var, coeff = target
            rest = MultiPoly(
                g.arity,
                {e: c for e, c in g.terms.items() if e[var] == 0},
                g.names,
            )
            value = rest.scale(Fraction(-1) / coeff)
            chain.append((var, value))
            gens = [
                h.substitute_var(var, value)
                for k, h in enumerate(gens)
                if k != idx
            ]
            gens = [h for h in gens if not h.is_zero()]
            changed = True
            break
    return gens, chain


_CANDIDATE_VALUES = tuple(
    Fraction(v) for v in (0, 1, -1, 2, -2, 3, -3)
) + (Fraction(1, 2), Fraction(-1, 2))


def find_rational_point(generators, arity: int, budget=None, order=None):
    """Best-effort search for a rational common zero.

    Strategy: eliminate linearly-occurring variables, run Buchberger, pull
    rational roots out of univariate basis elements, and specialize remaining
    variables to small rationals while consistency holds.  Returns a full
    assignment dict or None; any returned point satisfies every generator.
    """
    budget = budget if isinstance(budget, _Budget) else _Budget(budget)
    order = order or MonOrder.grlex(arity)

    def search(gens, partial):
        gens = [g for g in gens if not g.is_zero()]
        if any(g.is_constant() for g in gens):
            return None
        gens, chain = presolve_linear(gens)
        if any(g.is_constant() for g in gens):
            return None
        if not gens:
            return dict(partial), chain
        gb = buchberger(IdealBasis(gens, order), budget)
        basis = gb.generators
        if len(basis) == 1 and basis[0].is_constant():
            return None
        uni = next(((g, _univariate_in(g)) for g in basis if _univariate_in(g) is not None), None)
        if uni is not None:
            g, var = uni
            for root in rational_roots(_to_unipoly(g, var)):
                sub = [h.substitute_var(var, MultiPoly.const(arity, root)) for h in basis]
                result = search(sub, partial | {var: root})
                if result is not None:
                    sol, inner_chain = result
                    return sol, chain + inner_chain
            return None
        remaining = set()
        for g in basis:
            remaining |= g.variables_present()
        var = min(remaining)
        for val in _CANDIDATE_VALUES:
            sub = [h.substitute_var(var, MultiPoly.const(arity, val)) for h in basis]
            result = search(sub, partial | {var: val})
            if result is not None:
                sol, inner_chain = result
                return sol, chain + inner_chain
        return None

    outcome = search(list(generators), {})
    if outcome is None:
        return None
    solution, chain = outcome
    # eliminations are recorded oldest-first; replay newest-first so every
    # value expression sees its referenced variables already assigned
    for var, value in reversed(chain):
        acc = Fraction(0)
        for exps, c in value.terms.items():
            term = c
            for k, e in enumerate(exps):
                if e:
                    term *= solution.get(k, Fraction(0)) ** e
            acc += term
        solution[var] = acc
    full = {k: solution.get(k, Fraction(0)) for k in range(arity)}
    for g in generators:
        acc = Fraction(0)
        for exps, c in g.terms.items():
            term = c
            for k, e in enumerate(exps):
                if e:
                    term *= full[k] ** e
            acc += term
        if acc != 0:
            return None
    return full
