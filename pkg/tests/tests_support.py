"""Shared random generators for the test suite."""
from fractions import Fraction

from planecurves.polynomials import BiPoly, UniPoly
from planecurves.tame import AutoStep, TameAuto


def rnd_auto_for_coordinates(rng, max_steps=4, degree_cap=32):
    """Random tame automorphism with rational steps, image degrees capped."""
    steps = []
    gx, gy = BiPoly.x(), BiPoly.y()
    for _ in range(rng.randint(1, max_steps)):
        roll = rng.random()
        coeff = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2, 3]))
        if roll < 0.4:
            step = AutoStep.elem_x(UniPoly.term(coeff, rng.randint(1, 3)))
        elif roll < 0.8:
            step = AutoStep.elem_y(UniPoly.term(coeff, rng.randint(1, 3)))
        else:
            while True:
                m = [rng.randint(-2, 2) for _ in range(6)]
                if m[0] * m[4] - m[1] * m[3] != 0:
                    step = AutoStep.affine(*m)
                    break
        sx, sy = step.images()
        nx, ny = gx.substitute(sx, sy), gy.substitute(sx, sy)
        if max(nx.total_degree, ny.total_degree) > degree_cap:
            continue
        gx, gy = nx, ny
        steps.append(step)
    return TameAuto(tuple(steps))
