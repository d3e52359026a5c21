"""Truncated-oscillator matrices for the deformed phase space, with hbar = 1.

Each mode is an oscillator cut at ``n_levels``; modes are combined with
Kronecker products (time mode first).  Only ``kappa * hbar`` enters.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .hopf import FAIL, PASS, CheckReport

HERMITIAN_TOL = 1e-12
MARGIN_TOL = -1e-10


class NegativeVariance(ValueError):
    pass


class TruncationEdge(ValueError):
    pass


@dataclass(frozen=True)
class MatrixOperator:
    entries: np.ndarray
    label: str = ""
    hermitian: bool = False

    def __post_init__(self):
        if self.hermitian:
            dev = np.max(np.abs(self.entries - self.entries.conj().T)) if self.dim else 0.0
            if dev > HERMITIAN_TOL:
                raise ValueError("%s is not Hermitian (deviation %.3g)" % (self.label, dev))

    @property
    def dim(self):
        return self.entries.shape[0]

    def __matmul__(self, other):
        if isinstance(other, MatrixOperator):
            return MatrixOperator(self.entries @ other.entries, "%s %s" % (self.label, other.label))
        return self.entries @ other

    def __add__(self, other):
        return MatrixOperator(self.entries + other.entries, "%s+%s" % (self.label, other.label))

    def __sub__(self, other):
        return MatrixOperator(self.entries - other.entries, "%s-%s" % (self.label, other.label))

    def scaled(self, s, label=None):
        return MatrixOperator(self.entries * s, label or self.label)

    def commutator(self, other):
        return MatrixOperator(self.entries @ other.entries - other.entries @ self.entries,
                              "[%s,%s]" % (self.label, other.label))

    def apply(self, psi):
        vec = psi.amplitudes if isinstance(psi, StateVector) else psi
        return self.entries @ vec

    def expectation(self, psi):
        vec = psi.amplitudes
        return complex(np.vdot(vec, self.entries @ vec))


@dataclass
class StateVector:
    amplitudes: np.ndarray
    mean_occupation: tuple = ()
    label: str = ""

    def __post_init__(self):
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError("state is not normalized (norm %.15g)" % norm)


def ladder(n_levels):
    """Annihilation operator truncated to n_levels."""
    return np.diag(np.sqrt(np.arange(1, n_levels, dtype=float)), 1).astype(complex)


def build_canonical_pair(n_levels):
    """x = (a + a^+)/sqrt2, p = i(a^+ - a)/sqrt2 with hbar = 1.

    [x, p] = i on every level except the last one, which carries i(1 - n).
    """
    if n_levels < 2:
        raise ValueError("need at least two levels")
    a = ladder(n_levels)
    ad = a.conj().T
    x = MatrixOperator((a + ad) / np.sqrt(2), "x", hermitian=True)
    p = MatrixOperator(1j * (ad - a) / np.sqrt(2), "p", hermitian=True)
    return x, p


def embed(op, mode, n_modes, n_levels):
    """op acting on one mode of a product of n_modes oscillators."""
    out = np.ones((1, 1), dtype=complex)
    eye = np.eye(n_levels, dtype=complex)
    for j in range(n_modes):
        out = np.kron(out, op if j == mode else eye)
    return out


@dataclass
class DeformedOperators:
    kappa_hbar: float
    n_levels: int
    n_space: int
    ops: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.ops[key]

    @property
    def dim(self):
        return self.n_levels ** (1 + self.n_space)


def build_deformed_operators(kappa_hbar, n_space=1, n_levels=40):
    """X0 = x^0 + (1/2 kappa hbar) sum_k (x^_k p^_k + p^_k x^_k), X_k = x^_k, P = p^.

    The time mode uses p^0 = -p so that [x^0, p^0] = -i hbar (metric -1).
    """
    if kappa_hbar <= 0:
        raise ValueError("kappa*hbar must be positive")
    x, p = build_canonical_pair(n_levels)
    modes = 1 + n_space
    ops = {
        "xh0": MatrixOperator(embed(x.entries, 0, modes, n_levels), "xh0", True),
        "P0": MatrixOperator(embed(-p.entries, 0, modes, n_levels), "P0", True),
    }
    dil = np.zeros((n_levels ** modes,) * 2, dtype=complex)
    sym = x.entries @ p.entries + p.entries @ x.entries
    for k in range(1, n_space + 1):
        ops["X%d" % k] = MatrixOperator(embed(x.entries, k, modes, n_levels), "X%d" % k, True)
        ops["P%d" % k] = MatrixOperator(embed(p.entries, k, modes, n_levels), "P%d" % k, True)
        dil += embed(sym, k, modes, n_levels)
    ops["X0"] = MatrixOperator(ops["xh0"].entries + dil / (2.0 * kappa_hbar), "X0", True)
    return DeformedOperators(kappa_hbar, n_levels, n_space, ops)


def dispersion(op, psi):
    """sqrt(<a^2> - <a>^2)."""
    v = op.apply(psi)
    first = op.expectation(psi)
    if op.hermitian:
        var = complex(np.vdot(v, v).real - abs(first) ** 2)
    else:
        var = complex(np.vdot(psi.amplitudes, op.entries @ v)) - first ** 2
    if var.real < MARGIN_TOL or abs(var.imag) > 1e-10:
        raise NegativeVariance("variance of %s is %r" % (op.label, var))
    return float(np.sqrt(max(var.real, 0.0)))


def commutator_expectation(a, b, psi):
    """<psi|[A, B]|psi> using matrix-vector products only."""
    av, bv = a.apply(psi), b.apply(psi)
    return complex(np.vdot(av, bv) - np.vdot(bv, av))


def random_low_state(rng, n_levels, n_modes, max_level=4, label=""):
    """Random normalized state supported on levels <= max_level of every mode."""
    shape = (n_levels,) * n_modes
    amps = np.zeros(shape, dtype=complex)
    idx = tuple(slice(0, max_level + 1) for _ in range(n_modes))
    block = rng.normal(size=(max_level + 1,) * n_modes) + 1j * rng.normal(size=(max_level + 1,) * n_modes)
    amps[idx] = block
    amps = amps.ravel()
    amps /= np.linalg.norm(amps)
    probs = np.abs(amps.reshape(shape)) ** 2
    levels = np.arange(n_levels)
    occ = []
    for j in range(n_modes):
        axes = tuple(a for a in range(n_modes) if a != j)
        occ.append(float(np.dot(probs.sum(axis=axes), levels)))
    return StateVector(amps, tuple(occ), label)


def random_states(count, n_levels=40, n_modes=2, seed=0, max_level=4):
    rng = np.random.default_rng(seed)
    return [random_low_state(rng, n_levels, n_modes, max_level, "psi%d" % i) for i in range(count)]


def vacuum(n_levels, n_modes=1):
    amps = np.zeros(n_levels ** n_modes, dtype=complex)
    amps[0] = 1.0
    return StateVector(amps, (0.0,) * n_modes, "vacuum")


def coherent_state(alpha, n_levels):
    """Truncated coherent state of one mode, renormalized."""
    from math import factorial
    n = np.arange(n_levels)
    amps = np.array([alpha ** k / np.sqrt(float(factorial(k))) for k in n], dtype=complex)
    amps /= np.linalg.norm(amps)
    return StateVector(amps, (abs(alpha) ** 2,), "coherent(%s)" % alpha)


@dataclass
class UncertaintyRow:
    state: str
    pair: str
    kind: str
    lhs: float
    rhs: float

    @property
    def margin(self):
        return self.lhs - self.rhs


def _families(n_space):
    """(pair, A label, B label, rhs(mean values)) for each inequality family."""
    out = []
    for k in range(1, n_space + 1):
        out.append(("X0,X%d" % k, "X0", "X%d" % k, lambda mean, lam, k=k: lam * abs(mean["X%d" % k]) / 2))
        out.append(("P%d,X0" % k, "P%d" % k, "X0", lambda mean, lam, k=k: lam * abs(mean["P%d" % k]) / 2))
        for l in range(1, n_space + 1):
            out.append(("P%d,X%d" % (k, l), "P%d" % k, "X%d" % l,
                        lambda mean, lam, kl=(k == l): 0.5 if kl else 0.0))
    out.append(("P0,X0", "P0", "X0", lambda mean, lam: 0.5))
    return out


def check_uncertainty_suite(kappa_hbar, states, n_space=1, n_levels=40, operators=None):
    """Dispersion inequalities and Robertson bounds for every state.

    All states are pushed through each operator in one matrix product.
    Returns (report, rows); rows carry both the family and Robertson margins.
    """
    for psi in states:
        if psi.mean_occupation and max(psi.mean_occupation) > n_levels / 8:
            raise TruncationEdge("%s has mean occupation %s > n_levels/8"
                                 % (psi.label, max(psi.mean_occupation)))
    ops = operators or build_deformed_operators(kappa_hbar, n_space, n_levels)
    lam = 1.0 / kappa_hbar
    psi_mat = np.stack([psi.amplitudes for psi in states], axis=1)
    families = _families(ops.n_space)
    labels = sorted({x for _, a, b, _ in families for x in (a, b)})
    applied = {lab: ops[lab].entries @ psi_mat for lab in labels}
    mean = {lab: np.einsum("ij,ij->j", psi_mat.conj(), applied[lab]).real for lab in labels}
    second = {lab: np.einsum("ij,ij->j", applied[lab].conj(), applied[lab]).real for lab in labels}
    var = {lab: second[lab] - mean[lab] ** 2 for lab in labels}
    for lab in labels:
        if np.min(var[lab]) < MARGIN_TOL:
            raise NegativeVariance("variance of %s is %r" % (lab, np.min(var[lab])))
    disp = {lab: np.sqrt(np.maximum(var[lab], 0.0)) for lab in labels}
    rows = []
    for j, psi in enumerate(states):
        m = {lab: mean[lab][j] for lab in labels}
        for pair, a, b, rhs in families:
            lhs = float(disp[a][j] * disp[b][j])
            av, bv = applied[a][:, j], applied[b][:, j]
            comm = np.vdot(av, bv) - np.vdot(bv, av)
            rows.append(UncertaintyRow(psi.label, pair, "family", lhs, float(rhs(m, lam))))
            rows.append(UncertaintyRow(psi.label, pair, "robertson", lhs, float(abs(comm)) / 2))
    worst = min(rows, key=lambda r: r.margin) if rows else None
    status = PASS if worst is None or worst.margin >= MARGIN_TOL else FAIL
    details = {"rows": len(rows), "kappa_hbar": kappa_hbar,
               "worst_margin": worst.margin if worst else 0.0,
               "worst": "%s %s %s" % (worst.state, worst.pair, worst.kind) if worst else ""}
    report = CheckReport("uncertainty[kappa_hbar=%g]" % kappa_hbar, status,
                         None if status == PASS else "%.3g" % worst.margin,
                         details=details)
    return report, rows


def kappa_bounds(rows):
    """Largest right-hand side among the kappa-dependent families."""
    vals = [r.rhs for r in rows if r.kind == "family" and ("X0,X" in r.pair or ",X0" in r.pair)
            and not r.pair.startswith("P0")]
    return max(vals, default=0.0)


def symbolic_agreement(ops, states, tol=1e-6):
    """Matrix commutators against the exact phase-space values on the given states.

    [X0, P_l] psi = i lam P_l psi, [X0, X_k] psi = -i lam X_k psi,
    [X_k, P_l] psi = i delta psi, [X0, P0] psi = -i psi.
    """
    lam = 1.0 / ops.kappa_hbar
    worst = 0.0
    for psi in states:
        checks = [(ops["X0"], ops["P0"], -1j * psi.amplitudes)]
        for k in range(1, ops.n_space + 1):
            checks.append((ops["X0"], ops["P%d" % k], 1j * lam * ops["P%d" % k].apply(psi)))
            checks.append((ops["X0"], ops["X%d" % k], -1j * lam * ops["X%d" % k].apply(psi)))
            checks.append((ops["X%d" % k], ops["P%d" % k], 1j * psi.amplitudes))
        for a, b, expected in checks:
            got = a.apply(b.apply(psi)) - b.apply(a.apply(psi))
            scale = max(np.linalg.norm(expected), 1e-300)
            err = np.linalg.norm(got - expected) / scale
            worst = max(worst, float(err))
    return worst <= tol, worst


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["state", "pair", "kind", "lhs", "rhs", "margin"])
    for r in rows:
        w.writerow([r.state, r.pair, r.kind, repr(r.lhs), repr(r.rhs), repr(r.margin)])
    return buf.getvalue()
