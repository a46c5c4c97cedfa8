"""Elementary transformations on pairs of one-variable polynomials and the
peak-reduction normalizer.

A step "reduces" a pair when the degree pair, sorted descending, drops
lexicographically.  That covers two situations: a genuine drop of the maximum
degree, and the bookkeeping convention for a linear step that cancels equal
leading terms (the maximum is unchanged but the second component drops).
Under that convention, whenever a short sequence of steps lowers the measure,
a single step already does - which is what peak_reduce exploits and what the
bounded brute-force oracle cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateLinear, SearchBudgetExceeded
from .polynomials import NEG_INF, UniPoly, _frac


@dataclass(frozen=True)
class ETStep:
    """One elementary transformation.

    kind 'add1': (u, v) -> (u + mu * v^k, v), k >= 2
    kind 'add2': (u, v) -> (u, v + mu * u^k), k >= 2
    kind 'linear': (u, v) -> (a1 u + a2 v, b1 u + b2 v), invertible
    """

    kind: str
    mu: Fraction | None = None
    k: int | None = None
    matrix: tuple | None = None

    @classmethod
    def add1(cls, mu, k: int) -> "ETStep":
        if k < 2:
            raise ValueError("power steps need k >= 2")
        if _frac(mu) == 0:
            raise ValueError("mu must be nonzero")
        return cls("add1", _frac(mu), k)

    @classmethod
    def add2(cls, mu, k: int) -> "ETStep":
        if k < 2:
            raise ValueError("power steps need k >= 2")
        if _frac(mu) == 0:
            raise ValueError("mu must be nonzero")
        return cls("add2", _frac(mu), k)

    @classmethod
    def linear(cls, a1, a2, b1, b2) -> "ETStep":
        mat = tuple(_frac(v) for v in (a1, a2, b1, b2))
        if mat[0] * mat[3] - mat[1] * mat[2] == 0:
            raise DegenerateLinear("linear step must be invertible")
        return cls("linear", matrix=mat)

    def inverse(self) -> "ETStep":
        if self.kind == "add1":
            return ETStep.add1(-self.mu, self.k)
        if self.kind == "add2":
            return ETStep.add2(-self.mu, self.k)
        a1, a2, b1, b2 = self.matrix
        det = a1 * b2 - a2 * b1
        return ETStep.linear(b2 / det, -a2 / det, -b1 / det, a1 / det)


@dataclass(frozen=True)
class PolyPair:
    u: UniPoly
    v: UniPoly

    def degrees(self):
        return self.u.degree, self.v.degree

    def measure(self):
        """Degree pair sorted descending; the quantity reduction shrinks."""
        du, dv = self.degrees()
        return (max(du, dv), min(du, dv))


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    degree_profile: list = field(default_factory=list)


def apply_et(pair: PolyPair, step: ETStep) -> PolyPair:
    u, v = pair.u, pair.v
    if step.kind == "add1":
        return PolyPair(u + (v**step.k).scale(step.mu), v)
    if step.kind == "add2":
        return PolyPair(u, v + (u**step.k).scale(step.mu))
    a1, a2, b1, b2 = step.matrix
    return PolyPair(u.scale(a1) + v.scale(a2), u.scale(b1) + v.scale(b2))


def find_reducing_et(pair: PolyPair):
    """A single reducing step, or None.

    With distinct degrees only a power step whose exponent matches the degree
    ratio can reduce; its coefficient is the leading-coefficient ratio.  With
    equal degrees the convention step (u, v) -> (u - c v, v) cancels leading
    terms.  Power steps are preferred over linear ones; both choices are
    deterministic.
    """
    du, dv = pair.degrees()
    if du == NEG_INF and dv == NEG_INF:
        return None
    if du == dv:
        c = pair.u.lc() / pair.v.lc()
        return ETStep.linear(1, -c, 0, 1)
    if du > dv:
        if dv != NEG_INF and dv >= 1 and du % dv == 0 and du // dv >= 2:
            k = du // dv
            return ETStep.add1(-pair.u.lc() / pair.v.lc() ** k, k)
        return None
    if du != NEG_INF and du >= 1 and dv % du == 0 and dv // du >= 2:
        k = dv // du
        return ETStep.add2(-pair.v.lc() / pair.u.lc() ** k, k)
    return None


def peak_reduce(pair: PolyPair):
    """Apply reducing steps until none exists.  The result cannot be improved
    by any sequence of elementary transformations."""
    trace = ReductionTrace()
    current = pair
    while True:
        step = find_reducing_et(current)
        if step is None:
            return current, trace
        nxt = apply_et(current, step)
        assert nxt.measure() < current.measure()
        current = nxt
        trace.steps.append(step)
        du, dv = current.degrees()
        trace.degree_profile.append(max(du, dv))


def _candidate_moves(pair: PolyPair, kmax: int):
    """Finite move set: every determined cancellation, the convention linear
    steps, and setup moves that interact with leading terms."""
    moves = []
    du, dv = pair.degrees()
    direct = find_reducing_et(pair)
    if direct is not None:
        moves.append(direct)
    if du == dv and du != NEG_INF:
        c = pair.v.lc() / pair.u.lc()
        moves.append(ETStep.linear(1, 0, -c, 1))  # cancel into the second slot
    moves.append(ETStep.linear(0, 1, 1, 0))  # swap
    for sign in (1, -1):
        moves.append(ETStep.linear(1, sign, 0, 1))
        moves.append(ETStep.linear(1, 0, sign, 1))
    for k in range(2, kmax + 1):
        for mu in (Fraction(1), Fraction(-1)):
            if not pair.v.is_zero():
                moves.append(ETStep.add1(mu, k))
            if not pair.u.is_zero():
                moves.append(ETStep.add2(mu, k))
        # cancellation candidates beyond the degree-forced one
        if dv >= 1 and du == k * dv:
            moves.append(ETStep.add1(-pair.u.lc() / pair.v.lc() ** k, k))
        if du >= 1 and dv == k * du:
            moves.append(ETStep.add2(-pair.v.lc() / pair.u.lc() ** k, k))
    return moves


def _reducing_moves(pair: PolyPair):
    """Every move that can lower the measure, up to scalar equivalence: the
    determined cancellations plus both orientations of the convention step."""
    moves = []
    direct = find_reducing_et(pair)
    if direct is not None:
        moves.append(direct)
    du, dv = pair.degrees()
    if du == dv and du != NEG_INF:
        moves.append(ETStep.linear(1, 0, -pair.v.lc() / pair.u.lc(), 1))
    return moves


def sequence_reducible_oracle(pair: PolyPair, depth: int) -> bool:
    """Exhaustive bounded search: can some sequence of at most `depth` moves
    from the candidate set drop the sorted degree pair below the input's?

    Only a determined cancellation or convention step can lower the measure,
    so the last ply expands those alone; earlier plies use the full move set.
    """
    if depth > 3:
        raise SearchBudgetExceeded("oracle depth is capped at 3")
    du, dv = pair.degrees()
    finite = [d for d in (du, dv) if d != NEG_INF]
    kmax = max(2, int(max(finite)) if finite else 2)
    target = pair.measure()

    frontier = [pair]
    for level in range(depth):
        last = level == depth - 1
        nxt = []
        for node in frontier:
            moves = _reducing_moves(node) if last else _candidate_moves(node, kmax)
            for move in dict.fromkeys(moves):
                child = apply_et(node, move)
                if child.measure() < target:
                    return True
                if not last:
                    nxt.append(child)
        frontier = nxt
    return False
