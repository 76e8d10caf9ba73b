"""Programmable detectors: joint POVMs programmed through an ancilla state.

A detector is a joint POVM F on system ⊗ ancilla. Feeding it an ancilla
state σ realizes the system POVM with effects Tr_A[(I ⊗ σ) F_i]. Which
POVMs are reachable, and how close they come to a target, is the whole
game; the helpers here build the controlled-unitary family and score
accuracy against target lists.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import partial_trace_ancilla, tensor
from .povm import DensityState, Povm, check_unitary, povm_distance


class Detector:
    """Joint POVM on a system ⊗ ancilla tensor product."""

    def __init__(self, sys_dim, anc_dim, joint):
        if sys_dim < 1 or anc_dim < 1:
            raise ValueError("dimensions must be positive")
        if joint.dim != sys_dim * anc_dim:
            raise ValueError(
                f"joint POVM dim {joint.dim} is not sys_dim*anc_dim = {sys_dim * anc_dim}"
            )
        self.sys_dim = sys_dim
        self.anc_dim = anc_dim
        self.joint = joint

    def __repr__(self):
        return (
            f"Detector(sys_dim={self.sys_dim}, anc_dim={self.anc_dim}, "
            f"outcomes={len(self.joint)})"
        )


@dataclass
class PerTargetResult:
    target_id: int
    delta: float
    program_index: int
    program: DensityState


@dataclass
class AccuracyReport:
    """Worst-case programming accuracy over a target list.

    epsilon is the maximum over targets of the best (minimum) distance each
    target achieved over the supplied program states.
    """

    epsilon: float
    worst_index: int
    worst_target: Povm
    per_target: list


def program(f, sigma):
    """System POVM realized by detector `f` with ancilla state `sigma`.

    That the output is again a valid POVM is a theorem (the programming map
    sends states into the POVM set); the Povm constructor re-checks it
    rather than assuming it.
    """
    if sigma.dim != f.anc_dim:
        raise ValueError(f"program state dim {sigma.dim} != ancilla dim {f.anc_dim}")
    iotimes = tensor(np.eye(f.sys_dim), sigma.matrix)
    effects = [
        partial_trace_ancilla(iotimes @ fi, f.sys_dim, f.anc_dim)
        for fi in f.joint.effects
    ]
    return Povm(effects)


def controlled_unitary_detector(ws, basis=None):
    """Detector measuring basis state i after a unitary selected by the ancilla.

    The interaction U = Σ_k W_k ⊗ |φ_k⟩⟨φ_k| applies W_k when the ancilla
    sits in computational basis state k; absorbing U into the measurement
    gives joint effects F_i = U†(|ψ_i⟩⟨ψ_i| ⊗ I)U. Programming with the
    ancilla state |φ_k⟩⟨φ_k| then reproduces the observable of W_k exactly.
    """
    ws = [check_unitary(w) for w in ws]
    if not ws:
        raise ValueError("need at least one unitary")
    n = ws[0].shape[0]
    for w in ws:
        if w.shape != (n, n):
            raise ValueError("all unitaries must share one dimension")
    d = len(ws)
    if basis is None:
        basis = np.eye(n)
    b = check_unitary(basis)

    u = np.zeros((n, d, n, d), dtype=complex)
    for k, w in enumerate(ws):
        u[:, k, :, k] = w
    u = u.reshape(n * d, n * d)

    effects = []
    for i in range(n):
        col = b[:, i]
        proj = tensor(np.outer(col, col.conj()), np.eye(d))
        effects.append(u.conj().T @ proj @ u)
    return Detector(n, d, Povm(effects))


def accuracy_for_program(f, target, sigma):
    """Distance between `target` and the POVM programmed by `sigma`."""
    return povm_distance(target, program(f, sigma))


def estimate_accuracy(f, targets, programs, rng=None):
    """Score a detector against targets, minimizing over a program strategy.

    `programs` is either an explicit list of ancilla states or a rule
    mapping a target POVM to a single matched state. The result is an upper
    estimate of the true worst-case accuracy whenever the strategy spans
    only part of the ancilla state space; for constructions with matched
    programs it is exact. `rng` is accepted for strategies that sample and
    is unused otherwise.
    """
    targets = list(targets)
    if not targets:
        raise ValueError("need at least one target")

    if callable(programs):
        programmed = None
        states = None
    else:
        states = list(programs)
        if not states:
            raise ValueError("program strategy is empty")
        # Programmed POVMs do not depend on the target; compute each once.
        programmed = [program(f, s) for s in states]

    results = []
    for tid, target in enumerate(targets):
        if programmed is None:
            sigma = programs(target)
            results.append(
                PerTargetResult(tid, povm_distance(target, program(f, sigma)), 0, sigma)
            )
        else:
            deltas = [povm_distance(target, q) for q in programmed]
            k = int(np.argmin(deltas))
            results.append(PerTargetResult(tid, deltas[k], k, states[k]))

    worst = max(range(len(results)), key=lambda i: results[i].delta)
    return AccuracyReport(
        epsilon=results[worst].delta,
        worst_index=worst,
        worst_target=targets[worst],
        per_target=results,
    )
