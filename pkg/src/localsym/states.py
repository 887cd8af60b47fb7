"""n-qubit pure states, local operator chains, and seeded samplers.

Conventions used throughout the package:

* A state on n qubits is a length-2**n complex vector. Basis index
  ``i = sum_k b_k 2**(n-k)``, i.e. qubit 1 is the most significant bit.
* Qubit indices in the public API are 1-based (1..n).
* A local operator chain g = g_1 (x) ... (x) g_n is stored as n explicit
  2x2 matrices; the full 2**n x 2**n matrix is never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "PureState",
    "LocalOperatorChain",
    "make_w",
    "make_ln",
    "make_ghz",
    "make_gabcd",
    "apply_chain",
    "reduced_density",
    "permute_qubits",
    "inner",
    "norm",
    "fidelity",
    "sample_haar_state",
    "sample_chain",
    "identity_chain",
    "chain_product",
    "chain_adjoint",
    "derive_rng",
]

GROUP_TAGS = ("G", "K", "Gt", "Kt")

_DET_TOL = 1e-12
_UNITARY_TOL = 1e-12


@dataclass(frozen=True)
class PureState:
    """Pure state of ``n`` qubits; possibly unnormalized.

    Operations that need unit norm state it as a precondition rather
    than silently renormalizing.
    """

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        amp = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amp.shape != (2**self.n,):
            raise ValueError(
                f"amplitude vector must have length {2**self.n}, got shape {amp.shape}"
            )
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitudes must be finite")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return 2**self.n

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to an n-index tensor, axis k-1 <-> qubit k."""
        return self.amplitudes.reshape((2,) * self.n)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "PureState":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return PureState(self.n, self.amplitudes / nrm)


@dataclass(frozen=True)
class LocalOperatorChain:
    """g = g_1 (x) ... (x) g_n as n explicit 2x2 matrices.

    ``group_tag`` declares the intended group and is validated on
    construction: "G" (SL(2,C) factors), "K" (SU(2)), "Gt" (GL(2,C)),
    "Kt" (U(2)).  ``scalar`` is an optional global prefactor kept
    separate so determinant-one structure of the factors is preserved.
    """

    factors: np.ndarray
    group_tag: str
    scalar: complex = 1.0 + 0.0j

    def __post_init__(self):
        fac = np.ascontiguousarray(self.factors, dtype=complex)
        if fac.ndim != 3 or fac.shape[1:] != (2, 2):
            raise ValueError(f"factors must have shape (n, 2, 2), got {fac.shape}")
        if self.group_tag not in GROUP_TAGS:
            raise ValueError(f"unknown group tag {self.group_tag!r}")
        dets = np.linalg.det(fac)
        sq_norms = np.einsum("kij,kij->k", fac, fac.conj()).real
        if self.group_tag == "G":
            if np.max(np.abs(dets - 1.0)) > _DET_TOL:
                raise ValueError("tag G requires unit-determinant factors")
        elif self.group_tag == "Gt":
            if np.min(np.abs(dets)) < _DET_TOL * np.max(sq_norms):
                raise ValueError("tag Gt requires invertible factors")
        if self.group_tag in ("K", "Kt"):
            eye = np.eye(2)
            dev = max(
                np.linalg.norm(f.conj().T @ f - eye) for f in fac
            )
            if dev > _UNITARY_TOL:
                raise ValueError(f"tag {self.group_tag} requires unitary factors")
            if self.group_tag == "K" and np.max(np.abs(dets - 1.0)) > _DET_TOL:
                raise ValueError("tag K requires unit-determinant factors")
        fac.setflags(write=False)
        object.__setattr__(self, "factors", fac)

    @property
    def n(self) -> int:
        return self.factors.shape[0]

    def dense(self) -> np.ndarray:
        """Full 2**n x 2**n matrix; test/oracle use only (n small)."""
        out = np.array([[self.scalar]], dtype=complex)
        for f in self.factors:
            out = np.kron(out, f)
        return out


# ---------------------------------------------------------------------------
# named states
# ---------------------------------------------------------------------------

def make_w(n: int, normalized: bool = True) -> PureState:
    """W state: equal superposition of the n weight-1 basis states."""
    if n < 2:
        raise ValueError(f"W state needs n >= 2, got {n}")
    amp = np.zeros(2**n, dtype=complex)
    for k in range(n):
        amp[1 << k] = 1.0
    if normalized:
        amp /= np.sqrt(n)
    return PureState(n, amp)


def make_ln(n: int, normalized: bool = True) -> PureState:
    """Critical state combining |1...1> with the W state.

    Normalized form carries sqrt(n-2)/sqrt(2(n-1)) on |1...1> and
    1/sqrt(2(n-1)) on each weight-1 basis state; the unnormalized form
    scales all of that by sqrt(2(n-1)).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    amp = np.zeros(2**n, dtype=complex)
    for k in range(n):
        amp[1 << k] = 1.0
    amp[2**n - 1] = np.sqrt(n - 2)
    if normalized:
        amp /= np.sqrt(2 * (n - 1))
    return PureState(n, amp)


def make_ghz(n: int, normalized: bool = True) -> PureState:
    """GHZ state (|0...0> + |1...1>)/sqrt(2)."""
    if n < 2:
        raise ValueError(f"GHZ state needs n >= 2, got {n}")
    amp = np.zeros(2**n, dtype=complex)
    amp[0] = 1.0
    amp[-1] = 1.0
    if normalized:
        amp /= np.sqrt(2)
    return PureState(n, amp)


def make_gabcd(a: complex, b: complex, c: complex, d: complex,
               normalized: bool = True) -> PureState:
    """Four-qubit SLOCC seed state.

    a(|0000>+|1111>) + b(|0011>+|1100>) + c(|0101>+|1010>)
    + d(|0110>+|1001>).  Its product-operator symmetries include the
    Pauli strings sx^4, sy^4, sz^4 for every coefficient choice.
    """
    coeffs = np.array([a, b, c, d], dtype=complex)
    if np.all(coeffs == 0):
        raise ValueError("coefficients (a, b, c, d) must not all vanish")
    amp = np.zeros(16, dtype=complex)
    amp[0b0000] = amp[0b1111] = a
    amp[0b0011] = amp[0b1100] = b
    amp[0b0101] = amp[0b1010] = c
    amp[0b0110] = amp[0b1001] = d
    if normalized:
        amp /= np.linalg.norm(amp)
    return PureState(4, amp)


# ---------------------------------------------------------------------------
# state arithmetic
# ---------------------------------------------------------------------------

def apply_chain(chain: LocalOperatorChain, psi: PureState) -> PureState:
    """(g_1 (x) ... (x) g_n)|psi>, applied one qubit at a time."""
    if chain.n != psi.n:
        raise ValueError(f"chain acts on {chain.n} qubits, state has {psi.n}")
    t = psi.tensor()
    for k, g in enumerate(chain.factors):
        t = np.moveaxis(np.tensordot(g, t, axes=([1], [k])), 0, k)
    amp = chain.scalar * t.reshape(-1)
    return PureState(psi.n, amp)


def reduced_density(psi: PureState, k: int) -> np.ndarray:
    """Single-qubit reduced density matrix of qubit k (1-based).

    Requires a normalized state; returns a Hermitian 2x2 with unit trace.
    """
    if not 1 <= k <= psi.n:
        raise ValueError(f"qubit index {k} out of range 1..{psi.n}")
    t = np.moveaxis(psi.tensor(), k - 1, 0).reshape(2, -1)
    rho = t @ t.conj().T
    return 0.5 * (rho + rho.conj().T)


def permute_qubits(psi: PureState, perm: Sequence[int]) -> PureState:
    """Relabel qubits: qubit i of the input becomes qubit perm[i-1]."""
    n = psi.n
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"perm must be a permutation of 1..{n}, got {perm}")
    axes = [0] * n
    for i, j in enumerate(perm):
        axes[j - 1] = i
    out = psi.tensor().transpose(axes).reshape(-1)
    return PureState(n, out)


def inner(psi: PureState, phi: PureState) -> complex:
    """<psi|phi>, conjugate-linear in the first argument."""
    if psi.n != phi.n:
        raise ValueError("qubit counts differ")
    return complex(np.vdot(psi.amplitudes, phi.amplitudes))


def norm(psi: PureState) -> float:
    return psi.norm()


def fidelity(psi: PureState, phi: PureState) -> float:
    """|<psi|phi>|^2 / (||psi||^2 ||phi||^2)."""
    ov = inner(psi, phi)
    return abs(ov) ** 2 / (psi.norm() ** 2 * phi.norm() ** 2)


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------

def identity_chain(n: int, group_tag: str = "K") -> LocalOperatorChain:
    return LocalOperatorChain(np.broadcast_to(np.eye(2, dtype=complex), (n, 2, 2)).copy(),
                              group_tag)


def chain_product(a: LocalOperatorChain, b: LocalOperatorChain,
                  group_tag: str | None = None) -> LocalOperatorChain:
    """Factor-wise matrix product a_j b_j (a applied after b)."""
    if a.n != b.n:
        raise ValueError("chain lengths differ")
    if group_tag is None:
        group_tag = a.group_tag if a.group_tag == b.group_tag else "Gt"
    return LocalOperatorChain(a.factors @ b.factors, group_tag,
                              scalar=a.scalar * b.scalar)


def chain_adjoint(chain: LocalOperatorChain) -> LocalOperatorChain:
    """Factor-wise conjugate transpose."""
    fac = np.conj(np.transpose(chain.factors, (0, 2, 1)))
    tag = chain.group_tag
    return LocalOperatorChain(fac, tag, scalar=np.conj(chain.scalar))


# ---------------------------------------------------------------------------
# seeded samplers
# ---------------------------------------------------------------------------

def derive_rng(seed, *indices) -> np.random.Generator:
    """Deterministic per-subtask generator, stable under any schedule."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, indices)]))


def sample_haar_state(n: int, seed) -> PureState:
    """Haar-random n-qubit state: normalized complex Gaussian vector."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return PureState(n, z / np.linalg.norm(z))


def _haar_unitary2(rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return q * ph


def sample_chain(n: int, group_tag: str, seed) -> LocalOperatorChain:
    """Random chain: Ginibre/det-root-normalized factors for G, Haar for K.

    A factor that comes out numerically singular is resampled, so the
    returned chain always passes the tag's invariants.
    """
    if group_tag not in GROUP_TAGS:
        raise ValueError(f"unknown group tag {group_tag!r}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    factors = np.empty((n, 2, 2), dtype=complex)
    for k in range(n):
        if group_tag in ("K", "Kt"):
            u = _haar_unitary2(rng)
            if group_tag == "K":
                u = u / np.sqrt(np.linalg.det(u))
            factors[k] = u
        else:
            while True:
                z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
                det = np.linalg.det(z)
                if abs(det) >= 1e-12 * np.linalg.norm(z) ** 2:
                    break
            if group_tag == "G":
                z = z / np.sqrt(det)  # principal branch
            factors[k] = z
    return LocalOperatorChain(factors, group_tag)
