"""Zero tests modulo the Lorentz condition Lambda^T g Lambda = g.

The group relations only close on matrices that are Lorentz transformations,
so residuals involving Lambda are tested by evaluating the Lambda entries at
exact rational Lorentz matrices (Cayley transform).
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from ..alphabet import METRIC
from ..ncalg import NCPoly, TensorPoly, _add_into


def cayley_lorentz(seed):
    """Exact rational proper orthochronous Lorentz matrix."""
    rng = random.Random(seed)
    while True:
        S = sympy.zeros(4, 4)
        for a in range(4):
            for b in range(a + 1, 4):
                v = sympy.Rational(rng.randint(-3, 3), rng.randint(1, 4))
                S[a, b], S[b, a] = v, -v
        G = sympy.diag(*METRIC)
        K = G * S
        Id = sympy.eye(4)
        if (Id - K).det() == 0:
            continue
        Lm = (Id - K).inv() * (Id + K)
        assert Lm.T * G * Lm == G
        return [[Fraction(int(Lm[i, j].p), int(Lm[i, j].q)) for j in range(4)] for i in range(4)]


def _is_lambda(gid):
    return gid[0] == "L" and len(gid) == 3


def _eval_word(word, mat):
    value = Fraction(1)
    rest = []
    for gid in word:
        if _is_lambda(gid):
            value *= mat[int(gid[1])][int(gid[2])]
        else:
            rest.append(gid)
    return tuple(rest), value


def evaluate_poly(p, mat):
    acc = {}
    for word, c in p.items():
        rest, v = _eval_word(word, mat)
        if v:
            _add_into(acc, rest, c * v)
    return NCPoly._raw(acc)


def evaluate_tensor(t, mats):
    acc = {}
    for words, c in t.items():
        value = Fraction(1)
        key = []
        for w, mat in zip(words, mats):
            rest, v = _eval_word(w, mat)
            value *= v
            key.append(rest)
        if value:
            _add_into(acc, tuple(key), c * value)
    return TensorPoly._raw(acc, t.arity)


_SAMPLES = {}


def samples(count=4):
    for s in range(count):
        if s not in _SAMPLES:
            _SAMPLES[s] = cayley_lorentz(1000 + s)
    return [_SAMPLES[s] for s in range(count)]


def vanishes_on_lorentz(residual, count=4):
    """True when the residual is zero after Lambda -> rational Lorentz matrices."""
    if not residual:
        return True
    mats = samples(count + 2)
    for s in range(count):
        if isinstance(residual, TensorPoly):
            legs = [mats[(s + j) % len(mats)] for j in range(residual.arity)]
            if evaluate_tensor(residual, legs):
                return False
        elif isinstance(residual, NCPoly):
            if evaluate_poly(residual, mats[s]):
                return False
        else:
            return not residual
    return True
