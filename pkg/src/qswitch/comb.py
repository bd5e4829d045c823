"""Fixed-order-circuit (quantum comb) operators and the success-probability SDP.

A comb W is a 32x32 PSD operator on five qubit wires P1..P5 (into gate one,
out of gate one, into gate two, out of gate two, measured output) satisfying

    tr_P5 W = I_P4 (x) W2,   tr_P3 W2 = I_P2 (x) W1,   tr W1 = 1.

The pairing with a gate pair and measurement outcome is

    p(i | U1, U2) = tr[ (choi(U1) (x) choi(U2) (x) |i><i|) W ],

with the unnormalized trace-2 Choi convention.  The transposition placement
hidden in that formula is pinned operationally: ``build_comb_from_circuit``
turns an explicit prepare/route/measure circuit into a W, and the identity
above is required to reproduce direct statevector simulation exactly (it does,
with the conjugated-amplitude construction used below).

The optimization max tr(W Omega) over combs is solved by ADMM splitting:
exact projection onto the affine comb subspace alternating with projection
onto the PSD cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gates import GatePair, RandomSource, anticommuting_pair, haar_random_unitaries
from .linalg import choi, choi_vector, partial_trace, require_unitary
from .switch import Verdict

__all__ = [
    "ScoreOperator",
    "CombResult",
    "DIMS",
    "score_operator",
    "averaged_score",
    "objective_operator",
    "build_comb_from_circuit",
    "probability_from_comb",
    "comb_residuals",
    "project_comb_affine",
    "optimize_fixed_order",
    "evaluate_comb",
]

DIMS = [2, 2, 2, 2, 2]
DIM = 32


@dataclass(frozen=True)
class ScoreOperator:
    """A 32x32 Hermitian PSD score operator, possibly a Monte Carlo average."""

    matrix: np.ndarray
    n_samples: int = 1
    entry_stderr: float = 0.0


@dataclass
class CombResult:
    p_succ: float
    comb: np.ndarray
    iterations: int
    primal_residual: float
    converged: bool
    residuals: dict = field(default_factory=dict)


def _basis_projector(i: int) -> np.ndarray:
    e = np.zeros((2, 2), dtype=complex)
    e[i, i] = 1.0
    return e


def score_operator(u1: np.ndarray, u2: np.ndarray, i: int) -> ScoreOperator:
    """choi(U1) (x) choi(U2) (x) |i><i| on wire order P1P2 P3P4 P5."""
    if i not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    m = np.kron(np.kron(choi(u1), choi(u2)), _basis_projector(i))
    return ScoreOperator(matrix=m)


def _choi_batch(us: np.ndarray) -> np.ndarray:
    """Stack of Choi operators for a stack of 2x2 unitaries, shape (n, 4, 4)."""
    v = np.swapaxes(us, -2, -1).reshape(-1, 4)
    return np.einsum("ni,nj->nij", v, v.conj())


def _commuting_choi_avg_batch(rs: np.ndarray) -> np.ndarray:
    """E_theta choi(R diag(1, e^{i theta}) R^dag) for each Haar sample R.

    The uniform phase kills the cross terms between the two spectral
    projectors, leaving the sum of their individual Choi operators.
    """
    out = np.zeros((rs.shape[0], 4, 4), dtype=complex)
    for k in (0, 1):
        cols = rs[:, :, k]  # eigenvector |k> of each sample
        projs = np.einsum("na,nb->nab", cols, cols.conj())
        v = np.swapaxes(projs, -2, -1).reshape(-1, 4)
        out += np.einsum("ni,nj->nij", v, v.conj())
    return out


def averaged_score(
    pair_class: Verdict,
    outcome: int,
    n_samples: int = 200_000,
    rng: RandomSource | None = None,
    batch: int = 8192,
) -> ScoreOperator:
    """Monte Carlo average of the score operator over one promise class.

    For the commuting class the eigenphase average is done analytically per
    Haar sample, so only the shared eigenbasis is sampled.
    """
    if rng is None:
        rng = RandomSource(0)
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    if pair_class not in (Verdict.COMMUTE, Verdict.ANTICOMMUTE):
        raise ValueError("pair class must be COMMUTE or ANTICOMMUTE")
    total = np.zeros((16, 16), dtype=complex)
    total_sq = np.zeros((16, 16))
    done = 0
    while done < n_samples:
        m = min(batch, n_samples - done)
        rs = haar_random_unitaries(rng, m)
        if pair_class is Verdict.COMMUTE:
            c = _commuting_choi_avg_batch(rs)
            k = np.einsum("nab,ncd->nacbd", c, c).reshape(m, 16, 16)
        else:
            sz = np.array([[1, 0], [0, -1]], dtype=complex)
            sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
            a1 = rs @ sz @ np.conjugate(np.swapaxes(rs, -2, -1))
            a2 = rs @ sy @ np.conjugate(np.swapaxes(rs, -2, -1))
            k = np.einsum(
                "nab,ncd->nacbd", _choi_batch(a1), _choi_batch(a2)
            ).reshape(m, 16, 16)
        total += k.sum(axis=0)
        total_sq += (np.abs(k) ** 2).sum(axis=0)
        done += m
    mean = total / n_samples
    var = total_sq / n_samples - np.abs(mean) ** 2
    stderr = float(np.sqrt(np.clip(var, 0.0, None).mean() / n_samples))
    m = np.kron(mean, _basis_projector(outcome))
    m = (m + m.conj().T) / 2.0
    return ScoreOperator(matrix=m, n_samples=n_samples, entry_stderr=stderr)


def objective_operator(
    n_samples: int = 200_000, rng: RandomSource | None = None
) -> ScoreOperator:
    """(S_0 averaged over commuting pairs + S_1 over anti-commuting pairs) / 2."""
    if rng is None:
        rng = RandomSource(0)
    s0 = averaged_score(Verdict.COMMUTE, 0, n_samples, rng)
    s1 = averaged_score(Verdict.ANTICOMMUTE, 1, n_samples, rng)
    return ScoreOperator(
        matrix=(s0.matrix + s1.matrix) / 2.0,
        n_samples=n_samples,
        entry_stderr=float(np.hypot(s0.entry_stderr, s1.entry_stderr) / 2.0),
    )


# --------------------------------------------------------------------------
# circuit-built combs


def build_comb_from_circuit(
    prep: np.ndarray,
    v2: np.ndarray,
    v3: np.ndarray,
    measured_wire: int = 0,
) -> np.ndarray:
    """Comb of the circuit: prepare, gate slot 1, V2, gate slot 2, V3, measure Z.

    ``prep`` is a state on system (x) ancilla (system first, ancilla dimension
    inferred); ``v2`` and ``v3`` act on system (x) ancilla.  ``measured_wire``
    0 measures the system qubit, 1 measures the (two-dimensional) ancilla.
    """
    prep = np.asarray(prep, dtype=complex).reshape(-1)
    if prep.size % 2 != 0:
        raise ValueError("prep must live on system (x) ancilla with qubit system")
    da = prep.size // 2
    if abs(np.linalg.norm(prep) - 1.0) > 1e-10:
        raise ValueError("prep state must be normalized")
    v2 = require_unitary(v2)
    v3 = require_unitary(v3)
    if v2.shape != (2 * da, 2 * da) or v3.shape != (2 * da, 2 * da):
        raise ValueError("v2/v3 dimension does not match prep")
    prep_r = prep.reshape(2, da)
    v2_r = v2.reshape(2, da, 2, da)
    v3_r = v3.reshape(2, da, 2, da)
    # T[o, k, p1, p2, p3, p4]: amplitude of final component (o, k) when the
    # slots are replaced by |p2><p1| and |p4><p3|
    t = np.einsum("okrm,smpl,ql->okqpsr", v3_r, v2_r, prep_r)
    if measured_wire == 0:
        pass  # outcome index o is the system wire, k runs over the ancilla
    elif measured_wire == 1:
        if da != 2:
            raise ValueError("ancilla must be a qubit to be measured")
        t = np.swapaxes(t, 0, 1)
    else:
        raise ValueError("measured_wire must be 0 or 1")
    t = t.reshape(2, da, 16)
    w = np.zeros((DIM, DIM), dtype=complex)
    for i in (0, 1):
        wi = np.einsum("kp,kq->pq", t[i].conj(), t[i])
        w += np.kron(wi, _basis_projector(i))
    return w


def probability_from_comb(w: np.ndarray, u1: np.ndarray, u2: np.ndarray, i: int) -> float:
    """tr(S_i W), clamped to [0, 1] within a 1e-8 guard band."""
    s = score_operator(u1, u2, i).matrix
    p = float(np.trace(s @ w).real)
    if p < -1e-8 or p > 1.0 + 1e-8:
        raise ValueError(f"comb produced out-of-range probability {p}")
    return min(max(p, 0.0), 1.0)


# --------------------------------------------------------------------------
# comb constraints: residuals and affine projection


def _trace_and_replace(x: np.ndarray, wires: tuple[int, ...]) -> np.ndarray:
    """Replace the given wires of a 5-qubit operator by the maximally mixed state."""
    t = x.reshape(DIMS + DIMS)
    n = 5
    for k in sorted(wires, reverse=True):
        t = np.trace(t, axis1=k, axis2=k + n)
        n -= 1
    reduced = t.reshape(2 ** n, 2 ** n) / (2 ** len(wires))
    # re-insert identity wires at the traced positions
    keep = [k for k in range(5) if k not in wires]
    full = np.kron(reduced, np.eye(2 ** len(wires), dtype=complex))
    order = keep + sorted(wires)
    perm = np.argsort(order)
    t = full.reshape([2] * 10)
    t = np.transpose(t, list(perm) + [5 + p for p in perm])
    return t.reshape(DIM, DIM)


def comb_residuals(w: np.ndarray) -> dict:
    """Frobenius residuals of the comb constraints plus the minimum eigenvalue."""
    w = np.asarray(w, dtype=complex)
    herm = float(np.linalg.norm(w - w.conj().T))
    tr5 = partial_trace(w, DIMS, {4})
    w2 = partial_trace(tr5, [2, 2, 2, 2], {3}) / 2.0  # on P1P2P3
    slot2 = float(np.linalg.norm(tr5 - np.kron(w2, np.eye(2))))
    tr3 = partial_trace(w2, [2, 2, 2], {2})
    w1 = partial_trace(tr3, [2, 2], {1}) / 2.0  # on P1
    # tr3 should equal W1 (x) I_P2 on wire order P1 P2
    slot1 = float(np.linalg.norm(tr3 - np.kron(w1, np.eye(2))))
    trace = float(abs(np.trace(w).real - 4.0))
    min_eig = float(np.linalg.eigvalsh((w + w.conj().T) / 2.0)[0])
    return {
        "hermiticity": herm,
        "slot2": slot2,
        "slot1": slot1,
        "trace": trace,
        "min_eigenvalue": min_eig,
    }


def project_comb_affine(x: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto the affine comb subspace.

    The two recursive constraints are kernels of the commuting orthogonal
    projections L5(1-L4) and L345(1-L2), where L_S replaces wires S by the
    maximally mixed state; composing the complements collapses to the five
    terms below.  The trace is then fixed along the identity direction.
    """
    x = np.asarray(x, dtype=complex)
    y = (
        x
        - _trace_and_replace(x, (4,))
        + _trace_and_replace(x, (3, 4))
        - _trace_and_replace(x, (2, 3, 4))
        + _trace_and_replace(x, (1, 2, 3, 4))
    )
    y += (4.0 - np.trace(y).real) / DIM * np.eye(DIM)
    return y


def _project_psd(x: np.ndarray) -> np.ndarray:
    h = (x + x.conj().T) / 2.0
    w, v = np.linalg.eigh(h)
    w = np.clip(w, 0.0, None)
    return (v * w) @ v.conj().T


def optimize_fixed_order(
    omega: ScoreOperator | np.ndarray,
    rho: float = 1.0,
    max_iter: int = 100_000,
    primal_tol: float = 1e-8,
    objective_tol: float = 1e-9,
    over_relaxation: float = 1.6,
) -> CombResult:
    """Maximize tr(W Omega) over valid combs by ADMM splitting.

    Alternates the exact affine-subspace projection (with the linear objective
    folded into the proximal step) against the PSD-cone projection.  Stops
    when the primal residual is below ``primal_tol`` and the objective has
    moved less than ``objective_tol`` over the last 100 iterations.
    """
    omega_m = omega.matrix if isinstance(omega, ScoreOperator) else np.asarray(omega)
    omega_m = (omega_m + omega_m.conj().T) / 2.0
    z = np.eye(DIM, dtype=complex) * (4.0 / DIM)
    u = np.zeros((DIM, DIM), dtype=complex)
    objective_history: list[float] = []
    w = z
    resid = np.inf
    for it in range(1, max_iter + 1):
        w = project_comb_affine(z - u + omega_m / rho)
        w_relaxed = over_relaxation * w + (1.0 - over_relaxation) * z
        z = _project_psd(w_relaxed + u)
        u = u + w_relaxed - z
        resid = float(np.linalg.norm(w - z))
        obj = float(np.trace(omega_m @ z).real)
        objective_history.append(obj)
        if (
            it >= 100
            and resid <= primal_tol
            and abs(objective_history[-1] - objective_history[-100]) <= objective_tol
        ):
            break
    # z is PSD by construction and affine-feasible up to the primal residual
    residuals = comb_residuals(z)
    p_succ = float(np.trace(omega_m @ z).real)
    converged = resid <= primal_tol
    if not converged:
        raise RuntimeError(
            f"ADMM did not converge in {max_iter} iterations "
            f"(primal residual {resid:.3e}, residuals {residuals})"
        )
    return CombResult(
        p_succ=p_succ,
        comb=z,
        iterations=it,
        primal_residual=resid,
        converged=converged,
        residuals=residuals,
    )


def evaluate_comb(w: np.ndarray, pairs: list[GatePair]) -> float:
    """Mean probability of the correct verdict over labeled gate pairs."""
    total = 0.0
    for pair in pairs:
        if pair.label is Verdict.COMMUTE:
            total += probability_from_comb(w, pair.u1, pair.u2, 0)
        elif pair.label is Verdict.ANTICOMMUTE:
            total += probability_from_comb(w, pair.u1, pair.u2, 1)
        else:
            raise ValueError("pairs must be labeled COMMUTE or ANTICOMMUTE")
    return total / len(pairs)
