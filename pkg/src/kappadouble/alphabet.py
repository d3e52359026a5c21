"""The generator alphabet and its global total order.

Ascending order: x0 < x1 < x2 < x3 < L (lexicographic) < M (rotations,
then boosts) < P1 < P2 < P3 < P0, followed by the Weyl symbols
xh0..xh3 < ph1 < ph2 < ph3 < ph0.
"""

from __future__ import annotations

from dataclasses import dataclass

METRIC = (-1, 1, 1, 1)


def g(mu, nu):
    return METRIC[mu] if mu == nu else 0


def delta(a, b):
    return 1 if a == b else 0


@dataclass(frozen=True)
class Generator:
    id: str
    cls: str
    weight: int
    indices: tuple
    symbol: str


def _build():
    out = []

    def add(gid, cls, indices, symbol):
        out.append(Generator(gid, cls, len(out), tuple(indices), symbol))

    add("x0", "coordinate-time", (0,), "x0")
    for k in (1, 2, 3):
        add("x%d" % k, "coordinate-space", (k,), "x%d" % k)
    for m in range(4):
        for n in range(4):
            add("L%d%d" % (m, n), "lorentz-matrix", (m, n), "L[%d,%d]" % (m, n))
    for i, j in ((1, 2), (1, 3), (2, 3)):
        add("M%d%d" % (i, j), "rotation", (i, j), "M[%d,%d]" % (i, j))
    for k in (1, 2, 3):
        add("M0%d" % k, "boost", (0, k), "M[0,%d]" % k)
    for k in (1, 2, 3):
        add("P%d" % k, "momentum-space", (k,), "P%d" % k)
    add("P0", "momentum-time", (0,), "P0")
    add("xh0", "auxiliary", (0,), "xh0")
    for k in (1, 2, 3):
        add("xh%d" % k, "auxiliary", (k,), "xh%d" % k)
    for k in (1, 2, 3):
        add("ph%d" % k, "auxiliary", (k,), "ph%d" % k)
    add("ph0", "auxiliary", (0,), "ph0")
    return {gen.id: gen for gen in out}


GENERATORS = _build()
WEIGHTS = {gid: gen.weight for gid, gen in GENERATORS.items()}
SYMBOLS = {gid: gen.symbol for gid, gen in GENERATORS.items()}

X = ["x0", "x1", "x2", "x3"]
P = ["P0", "P1", "P2", "P3"]
XH = ["xh0", "xh1", "xh2", "xh3"]
PH = ["ph0", "ph1", "ph2", "ph3"]
LAMBDA = ["L%d%d" % (m, n) for m in range(4) for n in range(4)]
ROTATIONS = ["M12", "M13", "M23"]
BOOSTS = ["M01", "M02", "M03"]
M_ALL = ROTATIONS + BOOSTS


def m_index(mu, nu):
    """Return (sign, id) with M_{mu nu} = sign * M[id]; sign 0 when mu == nu."""
    if mu == nu:
        return 0, None
    if mu < nu:
        return 1, "M%d%d" % (mu, nu)
    return -1, "M%d%d" % (nu, mu)


def word_key(word):
    return tuple(WEIGHTS[gid] for gid in word)
