"""Generalized Gell-Mann basis of su(n) and its structure constants.

The Lie algebra su(n) is spanned by s = n**2 - 1 Hermitian traceless
matrices lambda_1, ..., lambda_s normalized so that

    Tr(lambda_i lambda_j) = 2 delta_ij.

Writing P_jk for the matrix with a single 1 in row j, column k, the
generators come in three families (all indices 1-based, j < k):

    u_jk = P_jk + P_kj                      (symmetric, off-diagonal)
    v_jk = i (P_kj - P_jk)                  (antisymmetric, off-diagonal)
    w_l  = sqrt(2 / (l (l+1))) (P_11 + ... + P_ll - l P_{l+1,l+1})

The *canonical order* used throughout this package interleaves the
families column by column: for k = 2..n first u_1k, v_1k, ..., then
u_{k-1,k}, v_{k-1,k}, and finally the diagonal w_{k-1}.  At n = 2 this
yields exactly (sigma_x, sigma_y, sigma_z) and at n = 3 the eight
standard Gell-Mann matrices in their usual numbering, so tabulated
values such as f_123 = 1 and f_458 = sqrt(3)/2 apply verbatim.  The
order is frozen: structure-constant indices are only meaningful
relative to it.

Structure constants are *computed*, not tabulated: products of basis
elements expand as

    lambda_i lambda_j = (2/n) delta_ij I + sum_k (i f_ijk + d_ijk) lambda_k

and trace orthogonality pins the unique coefficients

    f_ijk = Tr([lambda_i, lambda_j] lambda_k) / (4 i)   (totally antisymmetric)
    d_ijk = Tr({lambda_i, lambda_j} lambda_k) / 4       (totally symmetric)

Only canonical index triples (strictly increasing for f, non-decreasing
for d) are stored; all other entries follow by (anti)symmetry.  The
adjoint-side matrices (F_i)_jk = f_ijk and (D_i)_jk = d_ijk and their
s**2 x s stackings F = (F_1, ..., F_s)^T, D = (D_1, ..., D_s)^T are
derived lazily.

Indices are 0-based in this API; the JSON interchange format uses
1-based indices (see :func:`export_json`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from types import MappingProxyType
from typing import Mapping

import numpy as np
import scipy.sparse as sp

__all__ = [
    "GellMannBasis",
    "StructureConstants",
    "build_basis",
    "structure_constants",
    "constants_for",
    "decompose_hermitian",
    "reconstruct",
    "export_json",
]

#: entries of |f|, |d| below this are treated as exact zeros by default
ZERO_THRESHOLD = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GellMannBasis:
    """The generalized Gell-Mann generators of su(n), in canonical order.

    Attributes
    ----------
    n : int
        Level count (dimension of the defining representation), n >= 2.
    lambdas : numpy.ndarray
        Read-only complex array of shape (s, n, n) with s = n**2 - 1.
    """

    n: int
    lambdas: np.ndarray

    @property
    def s(self) -> int:
        """Algebra dimension n**2 - 1."""
        return self.n * self.n - 1


def build_basis(n: int) -> GellMannBasis:
    """Construct the su(n) generator basis in canonical order.

    Parameters
    ----------
    n : int
        Level count; must be at least 2 (su(1) has no generators).

    Returns
    -------
    GellMannBasis

    Examples
    --------
    >>> build_basis(2).lambdas[2]   # sigma_z
    array([[ 1.+0.j,  0.+0.j],
           [ 0.+0.j, -1.+0.j]])
    """
    n = int(n)
    if n < 2:
        raise ValueError(f"level count must be >= 2, got n={n} (degenerate algebra)")
    mats = []
    for k in range(1, n):  # 0-based column index; 1-based k+1
        for j in range(k):
            u = np.zeros((n, n), dtype=np.complex128)
            u[j, k] = 1.0
            u[k, j] = 1.0
            mats.append(u)
            v = np.zeros((n, n), dtype=np.complex128)
            v[j, k] = -1.0j
            v[k, j] = 1.0j
            mats.append(v)
        l = k  # diagonal generator w_l, 1-based l = k
        w = np.zeros((n, n), dtype=np.complex128)
        w[np.arange(l), np.arange(l)] = 1.0
        w[l, l] = -float(l)
        w *= np.sqrt(2.0 / (l * (l + 1)))
        mats.append(w)
    return GellMannBasis(n=n, lambdas=_frozen(np.array(mats)))


@dataclass(frozen=True)
class StructureConstants:
    """Structure constants of su(n) together with their adjoint-side matrices.

    ``f`` and ``d`` map one canonical 0-based index triple to its value;
    the full totally (anti)symmetric tensors, the matrices
    (F_i)_jk = f_ijk / (D_i)_jk = d_ijk and the stacked forms are exposed
    as lazily built read-only views.  Instances are immutable and safe to
    share between threads.
    """

    n: int
    s: int
    f: Mapping[tuple[int, int, int], float]
    d: Mapping[tuple[int, int, int], float]
    basis: GellMannBasis = field(repr=False)

    @cached_property
    def f_dense(self) -> np.ndarray:
        """Full antisymmetric tensor, shape (s, s, s)."""
        out = np.zeros((self.s, self.s, self.s))
        for (i, j, k), val in self.f.items():
            # i < j < k strictly; all six permutations carry a parity sign
            out[i, j, k] = out[j, k, i] = out[k, i, j] = val
            out[j, i, k] = out[i, k, j] = out[k, j, i] = -val
        return _frozen(out)

    @cached_property
    def d_dense(self) -> np.ndarray:
        """Full symmetric tensor, shape (s, s, s)."""
        out = np.zeros((self.s, self.s, self.s))
        for triple, val in self.d.items():
            for p in set(permutations(triple)):
                out[p] = val
        return _frozen(out)

    @cached_property
    def F_mats(self) -> np.ndarray:
        """(F_i)_jk = f_ijk, shape (s, s, s); each F_i is antisymmetric."""
        return self.f_dense

    @cached_property
    def D_mats(self) -> np.ndarray:
        """(D_i)_jk = d_ijk, shape (s, s, s); each D_i is symmetric."""
        return self.d_dense

    @cached_property
    def F_stack(self) -> np.ndarray:
        """Stacked matrix F = (F_1, ..., F_s)^T of shape (s**2, s).

        Row b*s + a holds f_{ab.}, so vec(Theta^-(beta)) = F_stack @ beta
        for the column-major vec.
        """
        s = self.s
        return _frozen(self.f_dense.transpose(1, 0, 2).reshape(s * s, s))

    @cached_property
    def D_stack(self) -> np.ndarray:
        """Stacked matrix D = (D_1, ..., D_s)^T of shape (s**2, s)."""
        s = self.s
        return _frozen(self.d_dense.transpose(1, 0, 2).reshape(s * s, s))

    @cached_property
    def F_stack_sparse(self) -> sp.csr_array:
        """CSR view of :attr:`F_stack` for O(nnz) contractions."""
        return sp.csr_array(self.F_stack)

    @cached_property
    def D_stack_sparse(self) -> sp.csr_array:
        """CSR view of :attr:`D_stack`."""
        return sp.csr_array(self.D_stack)


def structure_constants(
    basis: GellMannBasis, zero_threshold: float = ZERO_THRESHOLD
) -> StructureConstants:
    """Compute f_ijk and d_ijk from a basis via the trace formulas.

    Parameters
    ----------
    basis : GellMannBasis
        Must satisfy trace orthogonality Tr(lambda_i lambda_j) = 2 delta_ij.
    zero_threshold : float
        Entries with magnitude at or below this are dropped from the
        sparse maps (they are exact zeros contaminated by roundoff).

    Raises
    ------
    ValueError
        If the basis fails trace orthogonality.
    """
    L = basis.lambdas
    s, n = basis.s, basis.n
    gram = np.einsum("iab,jba->ij", L, L)
    ortho_err = float(np.abs(gram - 2.0 * np.eye(s)).max())
    if ortho_err > 1e-9:
        raise ValueError(
            "basis is not trace-orthonormal: max |Tr(l_i l_j) - 2 delta_ij| "
            f"= {ortho_err:.3e}"
        )
    # T[i,j,k] = Tr(lambda_i lambda_j lambda_k); one s^2 product table reused
    prod = np.einsum("iab,jbc->ijac", L, L)
    T = np.einsum("ijac,kca->ijk", prod, L)
    f_full = (T - T.transpose(1, 0, 2)) / 4.0j
    d_full = (T + T.transpose(1, 0, 2)) / 4.0
    # Hermitian traceless basis makes both real; anything else is a bug
    imag_err = max(float(np.abs(f_full.imag).max()), float(np.abs(d_full.imag).max()))
    if imag_err > 1e-10:
        raise ValueError(f"structure constants came out complex (max imag {imag_err:.3e})")
    f_full = f_full.real
    d_full = d_full.real

    f_map: dict[tuple[int, int, int], float] = {}
    for i, j, k in np.argwhere(np.abs(f_full) > zero_threshold):
        if i < j < k:
            f_map[(int(i), int(j), int(k))] = float(f_full[i, j, k])
    d_map: dict[tuple[int, int, int], float] = {}
    for i, j, k in np.argwhere(np.abs(d_full) > zero_threshold):
        if i <= j <= k:
            d_map[(int(i), int(j), int(k))] = float(d_full[i, j, k])
    return StructureConstants(
        n=n,
        s=s,
        f=MappingProxyType(f_map),
        d=MappingProxyType(d_map),
        basis=basis,
    )


@lru_cache(maxsize=None)
def constants_for(n: int) -> StructureConstants:
    """Memoized ``structure_constants(build_basis(n))``."""
    return structure_constants(build_basis(n))


def decompose_hermitian(
    H: np.ndarray, basis: GellMannBasis, tol: float = 1e-10
) -> tuple[float, np.ndarray]:
    """Expand a Hermitian matrix as H = (1/n) alpha0 I + (1/2) sum_i alpha_i lambda_i.

    Returns
    -------
    (alpha0, alpha) : tuple of float and real (s,) array
        alpha0 = Tr(H) and alpha_i = Tr(H lambda_i).

    Raises
    ------
    ValueError
        If H is not n x n or not Hermitian within ``tol`` (relative to
        max(1, ||H||_max)); the message carries the maximum asymmetry.
    """
    H = np.asarray(H, dtype=np.complex128)
    n = basis.n
    if H.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {H.shape}")
    asym = float(np.abs(H - H.conj().T).max())
    scale = max(1.0, float(np.abs(H).max()))
    if asym > tol * scale:
        raise ValueError(
            f"matrix is not Hermitian: max |H - H^dagger| = {asym:.3e} "
            f"(tolerance {tol:.1e} relative to max(1, ||H||_max) = {scale:.3e})"
        )
    alpha0 = float(np.trace(H).real)
    alpha = np.einsum("ab,iba->i", H, basis.lambdas).real
    return alpha0, alpha


def reconstruct(alpha0, alpha, basis: GellMannBasis) -> np.ndarray:
    """Inverse of :func:`decompose_hermitian`: (1/n) alpha0 I + (1/2) sum alpha_i lambda_i.

    Complex coefficients are accepted (the formula is linear); real input
    yields a Hermitian matrix.
    """
    alpha = np.asarray(alpha)
    if alpha.shape != (basis.s,):
        raise ValueError(f"coefficient vector must have length s={basis.s}, got shape {alpha.shape}")
    out = (alpha0 / basis.n) * np.eye(basis.n, dtype=np.complex128)
    out += 0.5 * np.einsum("i,iab->ab", alpha, basis.lambdas)
    return out


def export_json(sc: StructureConstants) -> dict:
    """Serialize a basis and its structure constants to the JSON schema.

    The document is ``{"n", "s", "lambdas", "f", "d"}`` where each matrix
    entry is a ``[re, im]`` pair and the ``f``/``d`` rows are
    ``[i, j, k, value]`` canonical triples with **1-based** indices.
    """
    L = sc.basis.lambdas
    lambdas = [[[[float(z.real), float(z.imag)] for z in row] for row in mat] for mat in L]
    f_rows = [
        [i + 1, j + 1, k + 1, val] for (i, j, k), val in sorted(sc.f.items())
    ]
    d_rows = [
        [i + 1, j + 1, k + 1, val] for (i, j, k), val in sorted(sc.d.items())
    ]
    return {"n": sc.n, "s": sc.s, "lambdas": lambdas, "f": f_rows, "d": d_rows}
