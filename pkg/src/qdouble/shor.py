"""Statevector simulation of the reduced period-finding circuit for
N = 15, a = 11, with a stochastic-unitary noise channel.

Choosing a = 11 makes the modular exponentiation 11^x mod 15 take only
the two values {1, 11}, depending on x parity alone, so two qubits per
register suffice.  The circuit is

    H (x) H on the exponent register,
    CNOTs from the low exponent qubit onto both target qubits,
    projective measurement of the target register,
    inverse Fourier transform on the exponent register
        (H on the high qubit, controlled-phase(-pi/2), H on the low
         qubit, bit-order swap folded into readout labels).

Noise enters only through the controlled-phase gate, which cannot be
compiled from braids: after the ideal gate a random two-qubit unitary
exp(i sum_k theta_k G_k) is applied, with {G_k} the 15 normalized
two-qubit Pauli words and theta_k i.i.d. normal with standard deviation
nu.

Two backends run the same circuit: "ideal" uses textbook gate matrices,
"braided" uses the compiled braid-word realizations (identical up to
global phases and the post-selection normalization, which is uniform on
the computational subspace).  Realizations use independent child streams
spawned from one seed, so ensembles are reproducible and order
independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gates

N_FACTOR = 15
BASE = 11
N_QUBITS = 4  # 2 exponent + 2 target
DIM = 2 ** N_QUBITS

# qubit order in the state index: (x1, x0, t1, t0), x1 the high exponent bit
Q_X1, Q_X0, Q_T1, Q_T0 = 0, 1, 2, 3

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_CP = np.diag([1, 1, 1, np.exp(-1j * np.pi / 2)]).astype(complex)
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


@dataclass(frozen=True)
class NoiseConfig:
    nu: float
    realizations: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.nu < 0:
            raise ValueError("noise strength must be non-negative")
        if self.realizations < 1:
            raise ValueError("need at least one realization")


@dataclass
class EnsembleReport:
    nu: float
    realizations: int
    seed: int
    backend: str
    mean: np.ndarray  # per outcome y = 0..3
    stderr: np.ndarray
    discarded: int

    def rows(self) -> list[dict]:
        return [{"nu": self.nu, "y": y, "mean_prob": float(self.mean[y]),
                 "stderr": float(self.stderr[y]), "discarded": self.discarded}
                for y in range(4)]


@dataclass(frozen=True)
class FactorResult:
    y: int
    period: int | None
    factors: tuple[int, int] | None
    failure: str | None = None

    @property
    def success(self) -> bool:
        return self.factors is not None


@dataclass(frozen=True)
class GateOp:
    kind: str  # "h" | "cnot" | "cp_noisy" | "measure_target"
    qubits: tuple[int, ...]


def build_circuit() -> tuple[GateOp, ...]:
    """Fixed gate sequence for this instance; deterministic."""
    return (
        GateOp("h", (Q_X1,)),
        GateOp("h", (Q_X0,)),
        GateOp("cnot", (Q_X0, Q_T0)),
        GateOp("cnot", (Q_X0, Q_T1)),
        GateOp("measure_target", (Q_T1, Q_T0)),
        GateOp("h", (Q_X1,)),
        GateOp("cp_noisy", (Q_X1, Q_X0)),
        GateOp("h", (Q_X0,)),
    )


def modular_exponentiation(x: int) -> int:
    return pow(BASE, x, N_FACTOR)


# -- noise ------------------------------------------------------------------

_P1 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@lru_cache(maxsize=1)
def noise_generators() -> np.ndarray:
    """Orthonormal traceless Hermitian basis of the two-qubit algebra:
    the 15 non-identity Pauli words over 2, in fixed lexicographic order."""
    out = []
    for p in "IXYZ":
        for q in "IXYZ":
            if p == q == "I":
                continue
            out.append(np.kron(_P1[p], _P1[q]) / 2.0)
    return np.array(out)


def random_unitary(nu: float, rng: np.random.Generator) -> np.ndarray:
    """exp(i sum theta_k G_k) with theta ~ N(0, nu); exactly unitary via
    the eigendecomposition of the Hermitian generator."""
    thetas = rng.normal(0.0, nu, size=15)
    h = np.tensordot(thetas, noise_generators(), axes=1)
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def mean_fidelity(nu: float, draws: int, seed: int = 0) -> float:
    """Monte Carlo estimate of |tr(U)/4|^2 under the noise law."""
    rng = np.random.default_rng(seed)
    acc = 0.0
    for _ in range(draws):
        u = random_unitary(nu, rng)
        acc += abs(np.trace(u) / 4.0) ** 2
    return acc / draws


def noisy_controlled_phase(state: np.ndarray, nu: float,
                           rng: np.random.Generator) -> np.ndarray:
    """Ideal controlled-phase(-pi/2) on the exponent qubits followed by a
    stochastic unitary on the same pair."""
    psi = _apply_2q(state, _CP, Q_X1, Q_X0)
    return _apply_2q(psi, random_unitary(nu, rng), Q_X1, Q_X0)


# -- state evolution ---------------------------------------------------------

def _apply_1q(psi: np.ndarray, m: np.ndarray, q: int) -> np.ndarray:
    t = psi.reshape([2] * N_QUBITS)
    t = np.moveaxis(np.tensordot(m, t, axes=([1], [q])), 0, q)
    return t.reshape(-1)


def _apply_2q(psi: np.ndarray, m: np.ndarray, q0: int, q1: int) -> np.ndarray:
    t = psi.reshape([2] * N_QUBITS)
    t = np.tensordot(m.reshape(2, 2, 2, 2), t, axes=([2, 3], [q0, q1]))
    return np.moveaxis(t, (0, 1), (q0, q1)).reshape(-1)


def _measure_target(psi: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, int]:
    t = np.abs(psi.reshape(4, 4)) ** 2
    probs = t.sum(axis=0)
    outcome = int(rng.choice(4, p=probs / probs.sum()))
    keep = psi.reshape(4, 4).copy()
    mask = np.zeros(4)
    mask[outcome] = 1.0
    keep = keep * mask[None, :]
    norm = math.sqrt(float((np.abs(keep) ** 2).sum()))
    return (keep / norm).reshape(-1), outcome


class Backend:
    """Gate matrices for the circuit; the braided backend pulls the
    compiled realizations (global phases included) from the gate
    compiler and renormalizes the uniform post-selection factor."""

    def __init__(self, kind: str = "ideal"):
        if kind not in ("ideal", "braided"):
            raise ValueError(f"unknown backend {kind!r}")
        self.kind = kind
        if kind == "ideal":
            self.h = _H
            self.cnot = _CNOT
        else:
            self.h = gates.compile_gate("H").matrix()
            self.cnot = gates.compile_gate("CNOT").matrix()


def run_once(nu: float, seed_or_rng, backend: str | Backend = "ideal") -> np.ndarray:
    """One noisy realization: returns the exact conditional distribution
    over the exponent-register outcomes y = 0..3 (not a sample)."""
    rng = (seed_or_rng if isinstance(seed_or_rng, np.random.Generator)
           else np.random.default_rng(seed_or_rng))
    bk = backend if isinstance(backend, Backend) else Backend(backend)
    psi = np.zeros(DIM, dtype=complex)
    psi[0] = 1.0
    for op in build_circuit():
        if op.kind == "h":
            psi = _apply_1q(psi, bk.h, op.qubits[0])
        elif op.kind == "cnot":
            psi = _apply_2q(psi, bk.cnot, op.qubits[0], op.qubits[1])
        elif op.kind == "measure_target":
            psi, _ = _measure_target(psi, rng)
        elif op.kind == "cp_noisy":
            psi = noisy_controlled_phase(psi, nu, rng)
        norm = np.linalg.norm(psi)
        if abs(norm - 1.0) > 1e-12:
            raise RuntimeError(f"norm drifted to {norm} after {op.kind}")
    # exponent marginal; output bit order is reversed by convention
    probs = (np.abs(psi.reshape(4, 4)) ** 2).sum(axis=1)
    out = np.empty(4)
    for x1 in range(2):
        for x0 in range(2):
            out[(x0 << 1) | x1] = probs[(x1 << 1) | x0]
    return out


def run_ensemble(config: NoiseConfig, backend: str = "ideal", threads: int = 1) -> EnsembleReport:
    """Mean and standard error of the outcome distribution over seeded
    independent realizations.  Shots whose projections remove the whole
    state are discarded (cannot happen for this circuit, but the contract
    is honored)."""
    streams = np.random.SeedSequence(config.seed).spawn(config.realizations)
    bk = Backend(backend)
    rows = np.empty((config.realizations, 4))
    discarded = 0
    kept = 0
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        chunks = np.array_split(range(config.realizations), threads)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_ensemble_chunk, config.nu, [streams[i] for i in chunk], backend)
                for chunk in chunks if len(chunk)
            ]
            results = [f.result() for f in futures]
        rows = np.vstack([r[0] for r in results])
        discarded = sum(r[1] for r in results)
        kept = config.realizations - discarded
    else:
        for i, ss in enumerate(streams):
            try:
                rows[kept] = run_once(config.nu, np.random.default_rng(ss), bk)
                kept += 1
            except gates.TotalLeakageError:
                discarded += 1
        rows = rows[:kept]
    mean = rows.mean(axis=0)
    if rows.shape[0] > 1:
        stderr = rows.std(axis=0, ddof=1) / math.sqrt(rows.shape[0])
    else:
        stderr = np.zeros(4)  # degenerate ensemble: no spread estimate
    return EnsembleReport(config.nu, config.realizations, config.seed,
                          bk.kind, mean, stderr, discarded)


def _ensemble_chunk(nu: float, seeds, backend: str) -> tuple[np.ndarray, int]:
    bk = Backend(backend)
    out = []
    discarded = 0
    for ss in seeds:
        try:
            out.append(run_once(nu, np.random.default_rng(ss), bk))
        except gates.TotalLeakageError:
            discarded += 1
    return np.array(out), discarded


def sweep(nus, realizations: int, seed: int, backend: str = "ideal",
          threads: int = 1) -> list[EnsembleReport]:
    return [run_ensemble(NoiseConfig(nu, realizations, seed), backend, threads)
            for nu in nus]


IDEAL_DISTRIBUTION = np.array([0.5, 0.0, 0.5, 0.0])


def tv_distance(p: np.ndarray, q: np.ndarray = IDEAL_DISTRIBUTION) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - q).sum())


def postprocess(y: int) -> FactorResult:
    """Classical tail of the algorithm: y -> candidate period -> factors
    via gcd(a^(r/2) +- 1, N)."""
    if not 0 <= y <= 3:
        raise ValueError("outcome must be in 0..3")
    if y == 0:
        return FactorResult(y, None, None, failure="trivial")
    r = 4 // math.gcd(y, 4)  # smallest r with y = j*4/r
    if r % 2:
        return FactorResult(y, r, None, failure="odd period")
    half = pow(BASE, r // 2)
    p, q = math.gcd(half - 1, N_FACTOR), math.gcd(half + 1, N_FACTOR)
    if sorted((p, q)) == [3, 5]:
        return FactorResult(y, r, (p, q) if p < q else (q, p))
    return FactorResult(y, r, None, failure="trivial factors")
