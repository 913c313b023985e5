"""
liegal.kernels – Vectorised F_p filters for Galois enumeration
==============================================================

Candidates are addressed by an integer index; ``digits`` expands a range of
indices into base-p coordinate rows, and the filters evaluate the nonlinear
Galois conditions on a whole batch at once with ``numpy.einsum``.  All
arithmetic is int64 reduced mod p after every contraction, which is exact
for the primes admitted by ``config.NUMPY_PRIME_LIMIT``.

The filters only *pre-select*: survivors are re-checked with exact Python
arithmetic by the caller.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)


def digits(start: int, stop: int, base: int, width: int) -> np.ndarray:
    """Rows of the base-*base* expansion (least significant first) of start..stop-1."""
    idx = np.arange(start, stop, dtype=np.int64)
    powers = base ** np.arange(width, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % base


def _tensor(values, shape: tuple[int, ...]) -> np.ndarray:
    arr = np.zeros(shape, dtype=np.int64)
    if 0 in shape:
        return arr
    arr[...] = np.array(values, dtype=np.int64).reshape(shape)
    return arr


@dataclass(frozen=True)
class SystemTensors:
    """Dense int64 copies of an extending system and of the bracket of g."""

    p: int
    n: int
    m: int
    left: np.ndarray      # (m, n, m)   x ↼ a
    right: np.ndarray     # (m, n, n)   x ⇀ a
    theta: np.ndarray     # (m, m, n)
    qbracket: np.ndarray  # (m, m, m)
    bracket: np.ndarray   # (n, n, n)   [a, b] in g

    @classmethod
    def from_system(cls, system) -> SystemTensors:
        n, m, p = system.n, system.m, system.field.p
        return cls(
            p=p,
            n=n,
            m=m,
            left=_tensor(system.left, (m, n, m)),
            right=_tensor(system.right, (m, n, n)),
            theta=_tensor(system.theta, (m, m, n)),
            qbracket=_tensor(system.qbracket, (m, m, m)),
            bracket=_tensor(system.g.structure_tensor(), (n, n, n)),
        )


def affine_candidates(particular: np.ndarray, kernel: np.ndarray, p: int, start: int, stop: int) -> np.ndarray:
    """particular + coeffs @ kernel (mod p) for the coefficient rows of start..stop-1."""
    coeffs = digits(start, stop, p, kernel.shape[0])
    if kernel.shape[0] == 0:
        return np.broadcast_to(particular, (stop - start, particular.shape[0])) % p
    return (particular[None, :] + (coeffs @ kernel) % p) % p


def structured_mask(t: SystemTensors, u: np.ndarray) -> np.ndarray:
    """Rows u = (vec sigma, vec r) satisfying the two nonlinear conditions.

    sigma(v_x) = sum_y sigma[y, x] v_y and r(v_x) = sum_c r[c, x] g_c, both
    stored row-major.
    """
    p, n, m = t.p, t.n, t.m
    B = u.shape[0]
    sig = u[:, : m * m].reshape(B, m, m)
    r = u[:, m * m:].reshape(B, n, m)
    Q, L, R, Th, C = t.qbracket, t.left, t.right, t.theta, t.bracket

    # sigma{x,y} = {sigma x, sigma y} + sigma(x)↼r(y) - sigma(y)↼r(x)
    lhs3 = np.einsum("bwz,xyz->bxyw", sig, Q) % p
    s1 = np.einsum("bzx,zvw->bxvw", sig, Q) % p
    qq = np.einsum("bvy,bxvw->bxyw", sig, s1) % p
    sl = np.einsum("bzx,zaw->bxaw", sig, L) % p
    lr = np.einsum("bay,bxaw->bxyw", r, sl) % p
    res3 = (lhs3 - qq - lr + lr.transpose(0, 2, 1, 3)) % p

    # r{x,y} = [r x, r y] + sigma(x)⇀r(y) - sigma(y)⇀r(x) + θ(sigma x, sigma y) - θ(x, y)
    lhs4 = np.einsum("bcz,xyz->bxyc", r, Q) % p
    rc = np.einsum("bax,aec->bxec", r, C) % p
    rr = np.einsum("bey,bxec->bxyc", r, rc) % p
    sr = np.einsum("bzx,zac->bxac", sig, R) % p
    srr = np.einsum("bay,bxac->bxyc", r, sr) % p
    t1 = np.einsum("bzx,zvc->bxvc", sig, Th) % p
    ts = np.einsum("bvy,bxvc->bxyc", sig, t1) % p
    res4 = (lhs4 - rr - srr + srr.transpose(0, 2, 1, 3) - ts + Th[None]) % p

    bad = res3.reshape(B, -1).any(axis=1) | res4.reshape(B, -1).any(axis=1)
    return ~bad


def direct_mask(structure: np.ndarray, n: int, m: int, p: int, x: np.ndarray) -> np.ndarray:
    """Rows x (images of the V basis, N x m row-major) whose map fixes g and preserves the bracket.

    *structure* is the (N, N, N) bracket of h in adapted coordinates.
    """
    N = n + m
    B = x.shape[0]
    phi = np.zeros((B, N, N), dtype=np.int64)
    phi[:, np.arange(n), np.arange(n)] = 1
    phi[:, :, n:] = x.reshape(B, N, m)
    lhs = np.einsum("blk,ijk->bijl", phi, structure) % p
    t = np.einsum("bai,acl->bicl", phi, structure) % p
    rhs = np.einsum("bcj,bicl->bijl", phi, t) % p
    bad = ((lhs - rhs) % p).reshape(B, -1).any(axis=1)
    return ~bad
