"""Random gate sampling and construction of commuting / anti-commuting pairs.

Commuting pairs share an eigenbasis R drawn from the Haar measure, with
independent uniform eigenphases.  Anti-commuting pairs are R sigma_z R^dag and
R sigma_y R^dag for the same Haar R.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import SY, SZ, require_unitary
from .switch import Verdict

__all__ = [
    "RandomSource",
    "GatePair",
    "haar_random_unitary",
    "haar_random_unitaries",
    "commuting_pair",
    "anticommuting_pair",
    "classify_pair",
    "sample_pairs",
    "pairs_to_csv",
    "pairs_to_json",
]

DEFAULT_CLASSIFY_TOL = 1e-8


@dataclass
class RandomSource:
    """Seeded PCG64 stream with a draw counter for reproducibility records."""

    seed: int
    algorithm: str = "pcg64"
    draws: int = 0
    _gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.algorithm != "pcg64":
            raise ValueError(f"unsupported rng algorithm {self.algorithm!r}")
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def record(self) -> dict:
        return {"algorithm": self.algorithm, "seed": self.seed, "draw": self.draws}


@dataclass(frozen=True)
class GatePair:
    """Two 2x2 unitaries with a ground-truth promise label."""

    u1: np.ndarray
    u2: np.ndarray
    label: Verdict
    seed_record: dict | None = None


def _ginibre_to_unitary(g: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(g)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phase = d / np.abs(d)
    return q * phase[..., None, :]


def haar_random_unitary(rng: RandomSource) -> np.ndarray:
    """One 2x2 unitary from the Haar measure (Ginibre + phase-fixed QR)."""
    gen = rng.generator
    while True:
        g = gen.standard_normal((2, 2)) + 1j * gen.standard_normal((2, 2))
        rng.draws += 1
        if abs(np.linalg.det(g)) > 1e-12:
            return _ginibre_to_unitary(g)


def haar_random_unitaries(rng: RandomSource, n: int) -> np.ndarray:
    """Stack of n Haar-random 2x2 unitaries, shape (n, 2, 2)."""
    gen = rng.generator
    g = gen.standard_normal((n, 2, 2)) + 1j * gen.standard_normal((n, 2, 2))
    rng.draws += n
    # singular draws have probability zero; patch any numerically bad ones
    bad = np.abs(np.linalg.det(g)) <= 1e-12
    while np.any(bad):
        g[bad] = gen.standard_normal((int(bad.sum()), 2, 2)) + 1j * gen.standard_normal(
            (int(bad.sum()), 2, 2)
        )
        bad = np.abs(np.linalg.det(g)) <= 1e-12
    return _ginibre_to_unitary(g)


def commuting_pair(rng: RandomSource, thetas: tuple[float, float] | None = None,
                   basis: np.ndarray | None = None) -> GatePair:
    """C_k = R diag(1, e^{i theta_k}) R^dag with Haar R and uniform thetas.

    ``thetas`` and ``basis`` can be forced for testing; by default both are
    drawn from the stream.
    """
    record = rng.record()
    r = require_unitary(basis) if basis is not None else haar_random_unitary(rng)
    if thetas is None:
        thetas = tuple(rng.generator.uniform(0.0, 2.0 * np.pi, size=2))
        rng.draws += 2
    c1 = r @ np.diag([1.0, np.exp(1j * thetas[0])]) @ r.conj().T
    c2 = r @ np.diag([1.0, np.exp(1j * thetas[1])]) @ r.conj().T
    return GatePair(u1=c1, u2=c2, label=Verdict.COMMUTE, seed_record=record)


def anticommuting_pair(rng: RandomSource, basis: np.ndarray | None = None) -> GatePair:
    """A_1 = R sigma_z R^dag, A_2 = R sigma_y R^dag for one Haar R."""
    record = rng.record()
    r = require_unitary(basis) if basis is not None else haar_random_unitary(rng)
    a1 = r @ SZ @ r.conj().T
    a2 = r @ SY @ r.conj().T
    return GatePair(u1=a1, u2=a2, label=Verdict.ANTICOMMUTE, seed_record=record)


def classify_pair(u1: np.ndarray, u2: np.ndarray, tol: float = DEFAULT_CLASSIFY_TOL) -> Verdict:
    """Label a pair by the Frobenius norm of its commutator / anti-commutator."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    u1 = require_unitary(u1)
    u2 = require_unitary(u2)
    comm = np.linalg.norm(u1 @ u2 - u2 @ u1)
    anti = np.linalg.norm(u1 @ u2 + u2 @ u1)
    if comm <= tol and anti <= tol:
        raise ValueError("both norms within tolerance; inputs cannot be unitary")
    if comm <= tol:
        return Verdict.COMMUTE
    if anti <= tol:
        return Verdict.ANTICOMMUTE
    return Verdict.NEITHER


def sample_pairs(rng: RandomSource, n_commuting: int, n_anticommuting: int) -> list[GatePair]:
    pairs = [commuting_pair(rng) for _ in range(n_commuting)]
    pairs += [anticommuting_pair(rng) for _ in range(n_anticommuting)]
    return pairs


def _pair_row(index: int, pair: GatePair) -> list:
    row: list = [index, pair.label.value]
    for gate in (pair.u1, pair.u2):
        for entry in gate.reshape(-1):
            row += [float(entry.real), float(entry.imag)]
    row.append(pair.seed_record["seed"] if pair.seed_record else "")
    return row


_CSV_HEADER = ["index", "label"] + [
    f"{g}_{i}{j}_{p}" for g in ("u1", "u2") for i in (0, 1) for j in (0, 1) for p in ("re", "im")
] + ["seed"]


def pairs_to_csv(pairs: list[GatePair], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_HEADER)
        for k, pair in enumerate(pairs):
            writer.writerow(_pair_row(k, pair))


def pairs_to_json(pairs: list[GatePair]) -> str:
    rows = []
    for k, pair in enumerate(pairs):
        rows.append(
            {
                "index": k,
                "label": pair.label.value,
                "u1": [[entry.real, entry.imag] for entry in pair.u1.reshape(-1)],
                "u2": [[entry.real, entry.imag] for entry in pair.u2.reshape(-1)],
                "seed_record": pair.seed_record,
            }
        )
    return json.dumps(rows, indent=2)
