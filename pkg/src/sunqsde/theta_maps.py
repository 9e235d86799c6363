"""The linear maps Theta^- and Theta^+ and the vec/stacking identities.

For beta in C^s the maps produce s x s matrices

    Theta^-(beta)_ab = sum_k f_abk beta_k      (antisymmetric)
    Theta^+(beta)_ab = sum_k d_abk beta_k      (symmetric)

i.e. column i equals F_i^T beta (resp. D_i^T beta).  Both are evaluated
by one sparse matrix-vector product against the stacked constant
matrices, using the column-major identities

    vec(Theta^-(beta)) = F beta,    vec(Theta^+(beta)) = D beta,

and F^T F = n I makes Theta^- injective with explicit left inverse
beta = (1/n) F^T vec(Theta^-(beta)), exposed as :meth:`ThetaContext.recover_vector`.

Real input always yields real output.  A row vector is accepted wherever
a column vector is expected and is transposed first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .su_algebra import StructureConstants, constants_for

__all__ = ["ThetaContext", "context_for", "vec"]


def vec(M: np.ndarray) -> np.ndarray:
    """Stack the columns of a square matrix into one long vector."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"vec expects a square matrix, got shape {M.shape}")
    return M.ravel(order="F")


def _unvec(w: np.ndarray, s: int) -> np.ndarray:
    return w.reshape((s, s), order="F")


@dataclass(frozen=True)
class ThetaContext:
    """Evaluation context: a set of su(n) structure constants.

    All methods are pure and the context is immutable, so one instance
    can be shared freely across threads.
    """

    sc: StructureConstants

    @property
    def n(self) -> int:
        return self.sc.n

    @property
    def s(self) -> int:
        return self.sc.s

    def _coerce_vector(self, beta) -> np.ndarray:
        """Accept shapes (s,), (s,1) and (1,s); return a flat copy."""
        b = np.asarray(beta)
        if b.ndim == 2 and 1 in b.shape:
            b = b.ravel()
        if b.shape != (self.s,):
            raise ValueError(
                f"expected a vector of length s={self.s}, got shape {np.asarray(beta).shape}"
            )
        if np.iscomplexobj(b):
            return b.astype(np.complex128, copy=False)
        return b.astype(np.float64, copy=False)

    def theta_minus(self, beta) -> np.ndarray:
        """Antisymmetric matrix with entries sum_k f_abk beta_k."""
        b = self._coerce_vector(beta)
        return _unvec(self.sc.F_stack_sparse @ b, self.s)

    def theta_plus(self, beta) -> np.ndarray:
        """Symmetric matrix with entries sum_k d_abk beta_k."""
        b = self._coerce_vector(beta)
        return _unvec(self.sc.D_stack_sparse @ b, self.s)

    def recover_vector(self, Theta, tol: Optional[float] = None) -> np.ndarray:
        """Invert :meth:`theta_minus`: return (1/n) F^T vec(Theta).

        Parameters
        ----------
        Theta : array_like
            s x s matrix, antisymmetric within tolerance.
        tol : float, optional
            Relative antisymmetry tolerance; the matrix is rejected when
            ||Theta + Theta^T||_max exceeds ``tol * ||Theta||_max``.
            Defaults to 1e-9.

        For Theta in the image of theta_minus this recovers the argument
        exactly (to roundoff); for other antisymmetric matrices it returns
        the coefficient vector of the orthogonal projection onto the image.
        """
        M = np.asarray(Theta)
        if M.shape != (self.s, self.s):
            raise ValueError(f"expected a {self.s}x{self.s} matrix, got shape {M.shape}")
        scale = float(np.abs(M).max()) if M.size else 0.0
        limit = (1e-9 if tol is None else tol) * scale
        asym = float(np.abs(M + M.T).max())
        if asym > limit:
            raise ValueError(
                f"matrix is not antisymmetric: max |Theta + Theta^T| = {asym:.3e} "
                f"exceeds {limit:.3e}"
            )
        return (self.sc.F_stack_sparse.T @ M.ravel(order="F")) / self.n


def context_for(n: int) -> ThetaContext:
    """Context for level count ``n`` (the underlying constants are memoized)."""
    return ThetaContext(constants_for(n))
