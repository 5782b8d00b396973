"""Dense state-vector simulation for small qubit registers.

Qubit 0 is the most significant bit of a basis-state index, so for two
qubits the amplitude order is |00>, |01>, |10>, |11>. Registers are capped
at four qubits; everything is stored densely as complex128.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError

MAX_QUBITS = 4

# States are renormalized only past this drift so clean unitary evolution
# stays bit-for-bit reproducible.
_DRIFT_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure n-qubit state as a dense vector of 2**n complex amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = self.n_qubits
        if not isinstance(n, (int, np.integer)) or not 1 <= int(n) <= MAX_QUBITS:
            raise ConfigurationError(
                f"n_qubits must be an int in [1, {MAX_QUBITS}], got {n!r}"
            )
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2 ** int(n),):
            raise DomainError(
                f"expected {2 ** int(n)} amplitudes for {n} qubits, got shape {amps.shape}"
            )
        if not (np.all(np.isfinite(amps.real)) and np.all(np.isfinite(amps.imag))):
            raise DomainError("amplitudes must be finite")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > _DRIFT_TOLERANCE:
            if norm_sq <= 0.0:
                raise DomainError("cannot normalize a state with zero norm")
            amps = amps / math.sqrt(norm_sq)
        object.__setattr__(self, "n_qubits", int(n))
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits


def zero_state(n_qubits: int) -> StateVector:
    """The |0...0> state on `n_qubits` qubits."""
    if not isinstance(n_qubits, (int, np.integer)) or not 1 <= int(n_qubits) <= MAX_QUBITS:
        raise ConfigurationError(
            f"n_qubits must be an int in [1, {MAX_QUBITS}], got {n_qubits!r}"
        )
    amps = np.zeros(2 ** int(n_qubits), dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(int(n_qubits), amps)


def rotation_matrices(angles) -> np.ndarray:
    """Z-Y-Z rotation matrices for angle triples, batched over leading axes.

    angles[..., :] = (phi, theta, omega) yields Rz(omega) @ Ry(theta) @ Rz(phi)
    in the half-angle convention Rz(t) = exp(-i t Z / 2), Ry(t) = exp(-i t Y / 2).
    """
    angles = np.asarray(angles, dtype=np.float64)
    if angles.shape[-1] != 3:
        raise DomainError(f"angle triples expected in the last axis, got shape {angles.shape}")
    if not np.all(np.isfinite(angles)):
        raise DomainError("angles must be finite")
    phi, theta, omega = angles[..., 0], angles[..., 1], angles[..., 2]
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    plus = np.exp(-0.5j * (omega + phi))
    minus = np.exp(-0.5j * (omega - phi))
    out = np.empty(angles.shape[:-1] + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = c * plus
    out[..., 0, 1] = -s * minus
    out[..., 1, 0] = s * np.conj(minus)
    out[..., 1, 1] = c * np.conj(plus)
    return out


def rotation_matrix_derivatives(angles) -> tuple[np.ndarray, np.ndarray]:
    """Rotation matrices plus derivatives with respect to each angle.

    Returns (mats, dmats) where dmats has shape (3,) + mats.shape, ordered
    (d/dphi, d/dtheta, d/domega). Closed forms of the Z-Y-Z product.
    """
    angles = np.asarray(angles, dtype=np.float64)
    mats = rotation_matrices(angles)
    theta = angles[..., 1]
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    phi, omega = angles[..., 0], angles[..., 2]
    plus = np.exp(-0.5j * (omega + phi))
    minus = np.exp(-0.5j * (omega - phi))

    dmats = np.empty((3,) + mats.shape, dtype=np.complex128)
    # phi enters only through the diagonal Rz(phi): scale columns by -+ i/2.
    dmats[0] = mats.copy()
    dmats[0][..., :, 0] *= -0.5j
    dmats[0][..., :, 1] *= 0.5j
    # theta swaps cos/sin with half-angle factors.
    dmats[1, ..., 0, 0] = -0.5 * s * plus
    dmats[1, ..., 0, 1] = -0.5 * c * minus
    dmats[1, ..., 1, 0] = 0.5 * c * np.conj(minus)
    dmats[1, ..., 1, 1] = -0.5 * s * np.conj(plus)
    # omega enters through the leading Rz(omega): scale rows by -+ i/2.
    dmats[2] = mats.copy()
    dmats[2][..., 0, :] *= -0.5j
    dmats[2][..., 1, :] *= 0.5j
    return mats, dmats


def rotation_gate(phi: float, theta: float, omega: float) -> np.ndarray:
    """Single Z-Y-Z rotation Rz(omega) @ Ry(theta) @ Rz(phi) as a 2x2 matrix."""
    return rotation_matrices(np.array([phi, theta, omega], dtype=np.float64))


def _check_gate(gate) -> np.ndarray:
    gate = np.asarray(gate, dtype=np.complex128)
    if gate.shape != (2, 2):
        raise DomainError(f"single-qubit gates must be 2x2, got shape {gate.shape}")
    return gate


def _check_target(n_qubits: int, target: int, name: str = "target"):
    if not isinstance(target, (int, np.integer)) or not 0 <= int(target) < n_qubits:
        raise IndexError(f"{name} qubit {target!r} out of range for {n_qubits} qubits")


def apply_single_qubit_gate(state: StateVector, gate, target: int) -> StateVector:
    """Apply a 2x2 gate to one qubit of the register."""
    gate = _check_gate(gate)
    n = state.n_qubits
    _check_target(n, target)
    psi = state.amplitudes.reshape([2] * n)
    psi = np.moveaxis(np.tensordot(gate, psi, axes=([1], [int(target)])), 0, int(target))
    return StateVector(n, np.ascontiguousarray(psi).reshape(-1))


def _check_pair(n_qubits: int, control: int, target: int):
    _check_target(n_qubits, control, "control")
    _check_target(n_qubits, target, "target")
    if int(control) == int(target):
        raise ConfigurationError(f"control and target must differ, both are {control}")


def apply_cx(state: StateVector, control: int, target: int) -> StateVector:
    """Controlled-X: flip `target` where `control` is |1>."""
    n = state.n_qubits
    _check_pair(n, control, target)
    cbit = 1 << (n - 1 - int(control))
    tbit = 1 << (n - 1 - int(target))
    amps = state.amplitudes.copy()
    for k in range(amps.size):
        if k & cbit and not k & tbit:
            j = k | tbit
            amps[k], amps[j] = amps[j], amps[k]
    return StateVector(n, amps)


def apply_cz(state: StateVector, control: int, target: int) -> StateVector:
    """Controlled-Z: negate amplitudes where both qubits are |1>. Symmetric."""
    n = state.n_qubits
    _check_pair(n, control, target)
    cbit = 1 << (n - 1 - int(control))
    tbit = 1 << (n - 1 - int(target))
    amps = state.amplitudes.copy()
    for k in range(amps.size):
        if k & cbit and k & tbit:
            amps[k] = -amps[k]
    return StateVector(n, amps)


def probabilities(state: StateVector) -> np.ndarray:
    """Measurement probabilities |amp|^2 per basis state."""
    return np.abs(state.amplitudes) ** 2


def fidelity(a: StateVector, b: StateVector) -> float:
    """Squared overlap |<a|b>|^2 of two pure states."""
    if a.n_qubits != b.n_qubits:
        raise DomainError(
            f"fidelity needs equal register sizes, got {a.n_qubits} and {b.n_qubits}"
        )
    return float(min(1.0, abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2))


def concurrence(state: StateVector) -> float:
    """Two-qubit entanglement measure 2|ad - bc| for amplitudes (a, b, c, d)."""
    if state.n_qubits != 2:
        raise DomainError(f"concurrence is defined for 2 qubits, got {state.n_qubits}")
    a, b, c, d = state.amplitudes
    return float(min(1.0, 2.0 * abs(a * d - b * c)))


def is_unitary(mat, tol: float = 1e-10) -> bool:
    """Check U @ U^dagger == I within `tol`."""
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        return False
    eye = np.eye(mat.shape[0])
    return bool(np.max(np.abs(mat @ mat.conj().T - eye)) <= tol)


def w_state() -> StateVector:
    """Three-qubit W state prepared from |000> with Ry rotations and CNOTs.

    A CX-conjugated pair of half-angle Ry gates rotates the target only when
    the control is |0>, which is all the controlled machinery this needs.
    """
    def ry(t: float) -> np.ndarray:
        return rotation_gate(0.0, t, 0.0)

    s = zero_state(3)
    s = apply_single_qubit_gate(s, ry(2.0 * math.asin(1.0 / math.sqrt(3.0))), 0)
    for target, beta in ((1, math.pi / 2), (2, math.pi)):
        s = apply_single_qubit_gate(s, ry(beta / 2), target)
        s = apply_cx(s, 0, target)
        s = apply_single_qubit_gate(s, ry(beta / 2), target)
        s = apply_cx(s, 0, target)
    s = apply_cx(s, 1, 2)
    return s
