# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Zigzags of morphisms M = X_0 - X_1 - ... - X_n = N and their cost.

Each step holds a morphism and a direction: FORWARD means the morphism goes
from X_i to X_{i+1}, BACKWARD means it goes from X_{i+1} to X_i. The cost of
a zigzag is the sum, over its steps, of the integrals of dim ker and
dim coker of the step's morphism.
"""

from dataclasses import dataclass
from fractions import Fraction

import persistence_module as pm
from utils import ModuleError


FORWARD = 'forward'
BACKWARD = 'backward'


@dataclass(frozen=True)
class ZigzagStep:
    morphism: pm.Morphism
    direction: str

    @property
    def left(self):
        if self.direction == FORWARD:
            return self.morphism.source
        return self.morphism.target

    @property
    def right(self):
        if self.direction == FORWARD:
            return self.morphism.target
        return self.morphism.source


class Zigzag:
    """Chain of morphisms from start to end."""

    def __init__(self, start, steps=()):
        self.start = start
        self.steps = []
        current = start
        for step in steps:
            if not isinstance(step, ZigzagStep):
                step = ZigzagStep(*step)
            if step.direction not in (FORWARD, BACKWARD):
                raise ModuleError(f'unknown direction {step.direction!r}', 304)
            current.poset.check_same(step.morphism.source.poset)
            if step.left != current:
                raise ModuleError(f'step {len(self.steps)} does not start at '
                                  'the end of the previous step', 304)
            self.steps.append(step)
            current = step.right
        self.steps = tuple(self.steps)
        self.end = current

    @classmethod
    def through_zero(cls, m, n):
        """M -> 0 <- N, the zigzag behind the Hilbert upper bound."""
        zero = pm.PersistenceModule.zero(m.poset)
        return cls(m, [(pm.Morphism.zero(m, zero), FORWARD),
                       (pm.Morphism.zero(n, zero), BACKWARD)])

    @property
    def poset(self):
        return self.start.poset

    def __len__(self):
        return len(self.steps)

    def modules(self):
        return [self.start] + [step.right for step in self.steps]

    def concatenate(self, other):
        if self.end != other.start:
            raise ModuleError('zigzags do not chain', 304)
        return Zigzag(self.start, self.steps + other.steps)

    def reversed(self):
        flipped = [ZigzagStep(step.morphism,
                              BACKWARD if step.direction == FORWARD
                              else FORWARD)
                   for step in reversed(self.steps)]
        return Zigzag(self.end, flipped)

    def expand_images(self):
        """Replace every step by an epimorphism followed by a monomorphism
        through the image of its morphism."""
        steps = []
        for step in self.steps:
            epi, mono = pm.image_factorize(step.morphism)
            if step.direction == FORWARD:
                steps += [ZigzagStep(epi, FORWARD), ZigzagStep(mono, FORWARD)]
            else:
                steps += [ZigzagStep(mono, BACKWARD), ZigzagStep(epi, BACKWARD)]
        return Zigzag(self.start, steps)

    def __repr__(self):
        arrows = ''.join('>' if s.direction == FORWARD else '<'
                         for s in self.steps)
        return f'Zigzag({arrows or "empty"})'


def step_costs(g, mu):
    """Per step: (integral of dim ker, integral of dim coker)."""
    g.poset.check_same(mu.poset)
    costs = []
    for step in g.steps:
        ker, coker = pm.ker_coker_dims(step.morphism)
        costs.append((mu.integrate(ker), mu.integrate(coker)))
    return costs

def zigzag_cost(g, mu):
    return sum((k + c for k, c in step_costs(g, mu)), Fraction(0))
