"""Generalized Pauli operators of N prime-dimensional qudits.

Operators are kept in exact monomial form: a permutation of the computational
basis plus one root-of-unity exponent per column.  The symplectic index
``(a, b)`` of ``X^a Z^b`` carries the commutation structure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
import scipy.linalg


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class SystemParams:
    """Qudit dimension ``p`` (prime) and number of qudits ``n``."""

    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"qudit dimension {self.p} is not prime")
        if self.n < 1:
            raise ValueError(f"need at least one qudit, got n={self.n}")

    @property
    def d(self) -> int:
        return self.p ** self.n

    @property
    def modulus(self) -> int:
        # i is needed to host sigma_y = i X Z
        return 4 if self.p == 2 else self.p


@dataclass(frozen=True)
class SymplecticIndex:
    """Coordinates ``(a, b)`` in Z_p^n x Z_p^n of ``X^a Z^b``."""

    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("X-part and Z-part must have the same length")

    @classmethod
    def from_flat(cls, vec: Sequence[int], p: int) -> "SymplecticIndex":
        n = len(vec) // 2
        return cls(tuple(int(x) % p for x in vec[:n]), tuple(int(x) % p for x in vec[n:]))

    @property
    def n(self) -> int:
        return len(self.a)

    def flat(self) -> tuple:
        return self.a + self.b

    def reduced(self, p: int) -> "SymplecticIndex":
        return SymplecticIndex(tuple(x % p for x in self.a), tuple(x % p for x in self.b))

    def add(self, other: "SymplecticIndex", p: int) -> "SymplecticIndex":
        return SymplecticIndex(
            tuple((x + y) % p for x, y in zip(self.a, other.a)),
            tuple((x + y) % p for x, y in zip(self.b, other.b)),
        )

    def is_zero(self) -> bool:
        return not any(self.a) and not any(self.b)


def symplectic_product(u: SymplecticIndex, v: SymplecticIndex, p: int) -> int:
    """Alternating form ``u.a . v.b - v.a . u.b`` mod p."""
    if u.n != v.n:
        raise ValueError("symplectic indices have different lengths")
    s = sum(x * y for x, y in zip(u.a, v.b)) - sum(x * y for x, y in zip(v.a, u.b))
    return s % p


@dataclass(frozen=True, eq=True)
class PauliOperator:
    """Monomial unitary: column ``j`` holds ``zeta**phase[j]`` at row ``perm[j]``.

    ``zeta`` is the primitive ``modulus``-th root of unity.
    """

    perm: tuple
    phase: tuple
    modulus: int

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a bijection")
        if len(self.phase) != len(self.perm):
            raise ValueError("phase vector length differs from dimension")

    @property
    def dim(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, dim: int, modulus: int) -> "PauliOperator":
        return cls(tuple(range(dim)), (0,) * dim, modulus)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.dim)) and not any(self.phase)

    def scaled(self, k: int) -> "PauliOperator":
        """``zeta**k`` times this operator."""
        return PauliOperator(self.perm, tuple((e + k) % self.modulus for e in self.phase), self.modulus)

    def inverse(self) -> "PauliOperator":
        inv = [0] * self.dim
        ph = [0] * self.dim
        for j, i in enumerate(self.perm):
            inv[i] = j
            ph[i] = (-self.phase[j]) % self.modulus
        return PauliOperator(tuple(inv), tuple(ph), self.modulus)

    def __matmul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def __pow__(self, k: int) -> "PauliOperator":
        out = PauliOperator.identity(self.dim, self.modulus)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def to_dense(self) -> np.ndarray:
        zeta = np.exp(2j * np.pi / self.modulus)
        m = np.zeros((self.dim, self.dim), dtype=complex)
        for j, (i, e) in enumerate(zip(self.perm, self.phase)):
            m[i, j] = zeta ** e
        return m

    @cached_property
    def _dense(self) -> np.ndarray:
        return self.to_dense()


def _check_dims(A: PauliOperator, B: PauliOperator) -> None:
    if A.dim != B.dim or A.modulus != B.modulus:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")


def multiply(A: PauliOperator, B: PauliOperator) -> PauliOperator:
    """Exact product ``A @ B``."""
    _check_dims(A, B)
    M = A.modulus
    perm = tuple(A.perm[k] for k in B.perm)
    phase = tuple((B.phase[j] + A.phase[B.perm[j]]) % M for j in range(A.dim))
    return PauliOperator(perm, phase, M)


def equal_up_to_phase(A: PauliOperator, B: PauliOperator) -> Optional[int]:
    """Return ``k`` with ``A == zeta**k B``, or None."""
    _check_dims(A, B)
    if A.perm != B.perm:
        return None
    diffs = {(x - y) % A.modulus for x, y in zip(A.phase, B.phase)}
    if len(diffs) != 1:
        return None
    return diffs.pop()


def commutes(A: PauliOperator, B: PauliOperator) -> bool:
    return multiply(A, B) == multiply(B, A)


def single_qudit(a: int, b: int, p: int) -> PauliOperator:
    """Canonical single-qudit operator for ``(a, b)``.

    For ``p == 2``: ``(1,0) -> sigma_x``, ``(0,1) -> sigma_z``, ``(1,1) -> sigma_y``.
    For odd ``p``: ``X^a Z^b`` with ``X|j> = |j+1>`` and ``Z|j> = omega^j |j>``.
    """
    a, b = a % p, b % p
    perm = tuple((j + a) % p for j in range(p))
    if p == 2:
        # sigma_z contributes -1 = i^2 on |1>; sigma_y carries the extra i
        phase = tuple((2 * b * j + (1 if a and b else 0)) % 4 for j in range(2))
        return PauliOperator(perm, phase, 4)
    return PauliOperator(perm, tuple((b * j) % p for j in range(p)), p)


def tensor(A: PauliOperator, B: PauliOperator) -> PauliOperator:
    """Kronecker product, ``A`` acting on the most significant digit."""
    if A.modulus != B.modulus:
        raise ValueError("phase moduli differ")
    M = A.modulus
    db = B.dim
    perm = []
    phase = []
    for ja in range(A.dim):
        for jb in range(db):
            perm.append(A.perm[ja] * db + B.perm[jb])
            phase.append((A.phase[ja] + B.phase[jb]) % M)
    return PauliOperator(tuple(perm), tuple(phase), M)


def make_operator(params: SystemParams, idx: SymplecticIndex) -> PauliOperator:
    """Tensor product over qudits of the canonical single-qudit operators."""
    if idx.n != params.n:
        raise ValueError(f"index has {idx.n} qudits, system has {params.n}")
    p = params.p
    op = single_qudit(idx.a[0], idx.b[0], p)
    for a, b in zip(idx.a[1:], idx.b[1:]):
        op = tensor(op, single_qudit(a, b, p))
    return op


def local_factors(params: SystemParams, idx: SymplecticIndex) -> list:
    """Single-qudit factors of ``make_operator(params, idx)``."""
    return [single_qudit(a, b, params.p) for a, b in zip(idx.a, idx.b)]


def all_indices(params: SystemParams, include_zero: bool = False) -> list:
    """All symplectic indices in lexicographic order of the flat vector."""
    out = []
    for vec in itertools.product(range(params.p), repeat=2 * params.n):
        if not include_zero and not any(vec):
            continue
        out.append(SymplecticIndex.from_flat(vec, params.p))
    return out


# --- numerics -------------------------------------------------------------

def _joint_split(ops: list, basis: np.ndarray, tol: float) -> list:
    """Split the column space of ``basis`` into joint eigenspaces of ``ops``."""
    if not ops or basis.shape[1] == 1:
        return [basis]
    head, rest = ops[0], ops[1:]
    restricted = basis.conj().T @ head @ basis
    # restriction of a normal operator to an invariant subspace is normal, so
    # the complex Schur form is diagonal and the Schur vectors orthonormal
    T, Z = scipy.linalg.schur(restricted, output="complex")
    eigs = np.diag(T)
    groups: list = []
    for k, lam in enumerate(eigs):
        for g in groups:
            if abs(eigs[g[0]] - lam) < tol:
                g.append(k)
                break
        else:
            groups.append([k])
    out = []
    for g in groups:
        sub = basis @ Z[:, g]
        out.extend(_joint_split(rest, sub, tol))
    return out


def common_eigenbasis(family: Sequence[PauliOperator], tol: float = 1e-6) -> np.ndarray:
    """Orthonormal basis (columns) diagonalizing every operator in ``family``.

    Raises ValueError if two members of the family do not commute.
    """
    family = list(family)
    if not family:
        raise ValueError("empty family")
    for i, A in enumerate(family):
        for B in family[i + 1:]:
            if not commutes(A, B):
                raise ValueError("family is not pairwise commuting")
    d = family[0].dim
    mats = [A._dense for A in family]
    spaces = _joint_split(mats, np.eye(d, dtype=complex), tol)
    return np.hstack(spaces)


def schmidt_rank(state: np.ndarray, p: int, threshold: float = 1e-8) -> int:
    """Schmidt rank of a two-qudit pure state across the qudit cut."""
    state = np.asarray(state, dtype=complex).ravel()
    if state.size != p * p:
        raise ValueError(f"expected a vector of length {p * p}")
    if abs(np.linalg.norm(state) - 1.0) > 1e-6:
        raise ValueError("state is not normalized")
    sv = np.linalg.svd(state.reshape(p, p), compute_uv=False)
    return int(np.sum(sv > threshold))
