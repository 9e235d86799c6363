"""A closed algebra of affine generator combinations ("operator forms").

An :class:`OperatorForm` represents the operator

    c0 * I + sum_i c_i lambda_i

by its complex coefficients (c0, c).  Products of two forms stay in this
family because generator products close over (identity, generators):

    lambda_i lambda_j = (2/n) delta_ij I + sum_k (i f_ijk + d_ijk) lambda_k

so the algebra of forms is an exact finite-dimensional model of the
operator algebra generated by x(0) = (lambda_1, ..., lambda_s).  Equality
of coefficient vectors is equality of operators, which makes every
identity check below exact up to floating-point error -- no state
sampling is involved.

:class:`FormMatrix` is a rectangular matrix of forms (stored as stacked
coefficient arrays) with matrix product, transpose (entry order is
preserved -- it is *not* an operator adjoint), entrywise adjoint, and the
vector commutator

    [x, y^T] = x y^T - (y x^T)^T

for column vectors of operators, whose (i,j) entry is x_i y_j - y_j x_i.

The verification routines rebuild both sides of the commutator identities
for x against H = alpha x and L = Lambda x (and against generic row
matrices A x, B x) and report maximum coefficient residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .identities import IdentityReport, _report
from .su_algebra import reconstruct
from .theta_maps import ThetaContext

__all__ = [
    "OperatorForm",
    "FormMatrix",
    "form_product",
    "form_commutator",
    "form_anticommutator",
    "generator_vector",
    "vector_commutator",
    "verify_ccr",
    "verify_linear_commutators",
    "verify_plant_commutators",
]


def _check_context(a, b) -> None:
    if a.ctx.n != b.ctx.n or a.ctx.s != b.ctx.s:
        raise ValueError(
            f"context mismatch: operands live in su({a.ctx.n}) and su({b.ctx.n})"
        )


@dataclass(frozen=True)
class OperatorForm:
    """One affine combination c0 * I + sum_i c_i lambda_i."""

    c0: complex
    c: np.ndarray
    ctx: ThetaContext

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.complex128)
        if c.shape != (self.ctx.s,):
            raise ValueError(
                f"coefficient vector must have length s={self.ctx.s}, got shape {c.shape}"
            )
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c0", complex(self.c0))

    def __add__(self, other: "OperatorForm") -> "OperatorForm":
        _check_context(self, other)
        return OperatorForm(self.c0 + other.c0, self.c + other.c, self.ctx)

    def __sub__(self, other: "OperatorForm") -> "OperatorForm":
        _check_context(self, other)
        return OperatorForm(self.c0 - other.c0, self.c - other.c, self.ctx)

    def __neg__(self) -> "OperatorForm":
        return OperatorForm(-self.c0, -self.c, self.ctx)

    def __rmul__(self, scalar) -> "OperatorForm":
        return OperatorForm(scalar * self.c0, scalar * self.c, self.ctx)

    def __mul__(self, other):
        if isinstance(other, OperatorForm):
            return form_product(self, other)
        return OperatorForm(other * self.c0, other * self.c, self.ctx)

    def conj(self) -> "OperatorForm":
        """Operator adjoint; the generators are Hermitian, so coefficients conjugate."""
        return OperatorForm(np.conj(self.c0), np.conj(self.c), self.ctx)

    def to_matrix(self) -> np.ndarray:
        """Reconstruct the explicit n x n operator c0 I + sum c_i lambda_i."""
        basis = self.ctx.sc.basis
        return reconstruct(self.ctx.n * self.c0, 2.0 * self.c, basis)


def form_product(a: OperatorForm, b: OperatorForm) -> OperatorForm:
    """Operator product of two forms (order matters).

    The coefficients follow from generator-product closure:

        c0' = a0 b0 + (2/n) sum_i a_i b_i
        c'_k = a0 b_k + b0 a_k + sum_ij a_i b_j (i f_ijk + d_ijk)

    and the double contraction reduces to two Theta evaluations.
    """
    _check_context(a, b)
    ctx = a.ctx
    c0 = a.c0 * b.c0 + (2.0 / ctx.n) * np.dot(a.c, b.c)
    c = a.c0 * b.c + b.c0 * a.c + ctx.theta_plus(a.c) @ b.c + 1j * (ctx.theta_minus(b.c) @ a.c)
    return OperatorForm(c0, c, ctx)


def form_commutator(a: OperatorForm, b: OperatorForm) -> OperatorForm:
    """ab - ba."""
    return form_product(a, b) - form_product(b, a)


def form_anticommutator(a: OperatorForm, b: OperatorForm) -> OperatorForm:
    """ab + ba."""
    return form_product(a, b) + form_product(b, a)


@dataclass(frozen=True)
class FormMatrix:
    """Rectangular matrix of operator forms, stored as coefficient arrays.

    ``c0`` has shape (rows, cols) and ``c`` shape (rows, cols, s); entry
    (i, j) is the form c0[i, j] * I + sum_m c[i, j, m] lambda_m.
    """

    c0: np.ndarray
    c: np.ndarray
    ctx: ThetaContext

    def __post_init__(self):
        c0 = np.asarray(self.c0, dtype=np.complex128)
        c = np.asarray(self.c, dtype=np.complex128)
        if c0.ndim != 2 or c.shape != c0.shape + (self.ctx.s,):
            raise ValueError(
                f"coefficient arrays disagree: c0 {c0.shape}, c {c.shape}, s={self.ctx.s}"
            )
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c", c)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_numeric(cls, M, ctx: ThetaContext) -> "FormMatrix":
        """Lift a numeric matrix to scalar (identity-coefficient) forms."""
        M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
        return cls(M, np.zeros(M.shape + (ctx.s,), dtype=np.complex128), ctx)

    @classmethod
    def column_of_generators(cls, ctx: ThetaContext) -> "FormMatrix":
        """The column vector x = (lambda_1, ..., lambda_s)^T."""
        s = ctx.s
        c = np.eye(s, dtype=np.complex128).reshape(s, 1, s)
        return cls(np.zeros((s, 1), dtype=np.complex128), c, ctx)

    @classmethod
    def column_from_rows(cls, rows, ctx: ThetaContext) -> "FormMatrix":
        """Column vector of forms M x from a numeric matrix M (rows of coefficients)."""
        M = np.atleast_2d(np.asarray(rows, dtype=np.complex128))
        if M.shape[1] != ctx.s:
            raise ValueError(f"rows must have length s={ctx.s}, got shape {M.shape}")
        m = M.shape[0]
        return cls(np.zeros((m, 1), dtype=np.complex128), M.reshape(m, 1, ctx.s), ctx)

    # -- structure ----------------------------------------------------
    @property
    def rows(self) -> int:
        return self.c0.shape[0]

    @property
    def cols(self) -> int:
        return self.c0.shape[1]

    @cached_property
    def entries(self) -> np.ndarray:
        """Object array of :class:`OperatorForm` views of the entries."""
        out = np.empty((self.rows, self.cols), dtype=object)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = OperatorForm(self.c0[i, j], self.c[i, j], self.ctx)
        return out

    def entry(self, i: int, j: int) -> OperatorForm:
        return OperatorForm(self.c0[i, j], self.c[i, j], self.ctx)

    # -- algebra ------------------------------------------------------
    def __add__(self, other: "FormMatrix") -> "FormMatrix":
        _check_context(self, other)
        return FormMatrix(self.c0 + other.c0, self.c + other.c, self.ctx)

    def __sub__(self, other: "FormMatrix") -> "FormMatrix":
        _check_context(self, other)
        return FormMatrix(self.c0 - other.c0, self.c - other.c, self.ctx)

    def __rmul__(self, scalar) -> "FormMatrix":
        return FormMatrix(scalar * self.c0, scalar * self.c, self.ctx)

    @property
    def T(self) -> "FormMatrix":
        """Shape transpose; entries are untouched (no operator adjoint)."""
        return FormMatrix(self.c0.T, self.c.transpose(1, 0, 2), self.ctx)

    def conj(self) -> "FormMatrix":
        """Entrywise operator adjoint (coefficient conjugation, no transpose)."""
        return FormMatrix(np.conj(self.c0), np.conj(self.c), self.ctx)

    def __matmul__(self, other: "FormMatrix") -> "FormMatrix":
        """Matrix product with noncommutative entrywise operator products."""
        _check_context(self, other)
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: ({self.rows},{self.cols}) @ ({other.rows},{other.cols})"
            )
        ctx = self.ctx
        sc = ctx.sc
        c0 = self.c0 @ other.c0 + (2.0 / ctx.n) * np.einsum(
            "ikm,kjm->ij", self.c, other.c
        )
        mix = 1j * sc.f_dense + sc.d_dense
        c = (
            np.einsum("ik,kjm->ijm", self.c0, other.c)
            + np.einsum("ikm,kj->ijm", self.c, other.c0)
            + np.einsum("ikl,kjm,lmp->ijp", self.c, other.c, mix, optimize=True)
        )
        return FormMatrix(c0, c, ctx)

    def max_residual(self, other: "FormMatrix") -> float:
        """Largest coefficient deviation between two equally shaped matrices."""
        _check_context(self, other)
        if self.c0.shape != other.c0.shape:
            raise ValueError("shape mismatch in residual")
        return max(
            float(np.abs(self.c0 - other.c0).max()),
            float(np.abs(self.c - other.c).max()),
        )


def generator_vector(ctx: ThetaContext) -> FormMatrix:
    """The column x = (lambda_1, ..., lambda_s)^T as a FormMatrix."""
    return FormMatrix.column_of_generators(ctx)


def vector_commutator(x: FormMatrix, y: FormMatrix) -> FormMatrix:
    """[x, y^T] = x y^T - (y x^T)^T for column vectors of operators."""
    if x.cols != 1 or y.cols != 1:
        raise ValueError("vector_commutator expects column vectors")
    return x @ y.T - (y @ x.T).T


# ---------------------------------------------------------------------
# identity verification
# ---------------------------------------------------------------------

def verify_ccr(ctx: ThetaContext, tol: float = 1e-10) -> list[IdentityReport]:
    """Check the generator (anti)commutation relations in coefficient space.

    [x_i, x_j] = 2i sum_k f_ijk lambda_k  and
    {x_i, x_j} = (4/n) delta_ij I + 2 sum_k d_ijk lambda_k.
    """
    x = generator_vector(ctx)
    sc = ctx.sc
    s, n = ctx.s, ctx.n
    prod = x @ x.T  # (s, s) matrix of forms x_i x_j
    comm_c0 = prod.c0 - prod.c0.T
    comm_c = prod.c - prod.c.transpose(1, 0, 2)
    anti_c0 = prod.c0 + prod.c0.T
    anti_c = prod.c + prod.c.transpose(1, 0, 2)
    comm_resid = max(
        float(np.abs(comm_c0).max()),
        float(np.abs(comm_c - 2j * sc.f_dense).max()),
    )
    anti_resid = max(
        float(np.abs(anti_c0 - (4.0 / n) * np.eye(s)).max()),
        float(np.abs(anti_c - 2.0 * sc.d_dense).max()),
    )
    return [
        _report("generator_commutation", comm_resid, tol),
        _report("generator_anticommutation", anti_resid, tol),
    ]


def _theta_rows(ctx: ThetaContext, rows: np.ndarray, plus: bool = False):
    fn = ctx.theta_plus if plus else ctx.theta_minus
    return [fn(r) for r in rows]


def verify_linear_commutators(
    A, B, ctx: ThetaContext, tol: float = 1e-10
) -> list[IdentityReport]:
    """Verify the commutator identities of x against generic rows A x, B x.

    Left sides are built by explicit form algebra, right sides from
    Theta expressions:

    * x_vs_Ax_commutator:
        [x, (A x)^T] = -2i (Theta^-(A_1) x, ..., Theta^-(A_nw) x)
    * x_vs_Ax_commutator_times_Bx:
        [x, (A x)^T] B x = -2i sum_k ((2/n) Theta^-(A_k) B_k^T
            + Theta^-(A_k) Theta^+(B_k) x - i Theta^-(A_k) Theta^-(B_k) x)
    * Bx_transposed_times_Ax_vs_x_commutator:
        (B x)^T [A x, x^T] = 2i sum_k ((2/n) Theta^-(A_k) B_k^T
            + Theta^-(A_k) Theta^+(B_k) x + i Theta^-(A_k) Theta^-(B_k) x)^T
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.complex128))
    B = np.atleast_2d(np.asarray(B, dtype=np.complex128))
    if A.shape != B.shape or A.shape[1] != ctx.s:
        raise ValueError(f"row matrices must share shape (n_w, {ctx.s}); got {A.shape} and {B.shape}")
    s = ctx.s
    nw = A.shape[0]
    x = generator_vector(ctx)
    Ax = FormMatrix.column_from_rows(A, ctx)
    Bx = FormMatrix.column_from_rows(B, ctx)
    TmA = _theta_rows(ctx, A)
    TmB = _theta_rows(ctx, B)
    TpB = _theta_rows(ctx, B, plus=True)

    out = []

    lhs_a = vector_commutator(x, Ax)  # (s, nw)
    rhs_a = FormMatrix(
        np.zeros((s, nw), dtype=np.complex128),
        -2j * np.stack([TmA[k] for k in range(nw)], axis=1),  # c[i, k, :] = -2i row i of Tm(A_k)
        ctx,
    )
    out.append(_report("x_vs_Ax_commutator", lhs_a.max_residual(rhs_a), tol))

    lhs_b = lhs_a @ Bx  # (s, 1)
    const = np.zeros(s, dtype=np.complex128)
    lin = np.zeros((s, s), dtype=np.complex128)
    for k in range(nw):
        const += (2.0 / ctx.n) * (TmA[k] @ B[k])
        lin += TmA[k] @ TpB[k] - 1j * (TmA[k] @ TmB[k])
    rhs_b = FormMatrix((-2j * const).reshape(s, 1), (-2j * lin).reshape(s, 1, s), ctx)
    out.append(_report("x_vs_Ax_commutator_times_Bx", lhs_b.max_residual(rhs_b), tol))

    comm_ax_x = vector_commutator(Ax, x)  # (nw, s)
    lhs_c = Bx.T @ comm_ax_x  # (1, s)
    lin_c = np.zeros((s, s), dtype=np.complex128)
    for k in range(nw):
        lin_c += TmA[k] @ TpB[k] + 1j * (TmA[k] @ TmB[k])
    rhs_c = FormMatrix(
        (2j * const).reshape(1, s),
        (2j * lin_c).reshape(s, 1, s).transpose(1, 0, 2),  # transpose of a column of forms
        ctx,
    )
    out.append(
        _report("Bx_transposed_times_Ax_vs_x_commutator", lhs_c.max_residual(rhs_c), tol)
    )
    return out


def verify_plant_commutators(model, ctx: ThetaContext, tol: float = 1e-10) -> list[IdentityReport]:
    """Verify the commutator identities of x against H = alpha x and L = Lambda x.

    Identities checked (left sides by form algebra, right sides by Theta
    numerics):

    * x_vs_hamiltonian: [x, H] = -2i Theta^-(alpha) x
    * x_vs_coupling_row: [x, L^T] = -2i (Theta^-(Lambda_k) x)_k
    * x_vs_coupling_adjoint: [x, L^dagger] = -2i (Theta^-(Lambda_k^#) x)_k
    * conjugate_coupling_commutator_times_coupling: [L^#, x^T]^T L =
        sum_k ((4i/n) Theta^-(Lambda_k^#) Lambda_k^T
               + 2i Theta^-(Lambda_k^#) Theta^+(Lambda_k) x
               + 2  Theta^-(Lambda_k^#) Theta^-(Lambda_k) x)
    * adjoint_coupling_times_commutator: (L^dagger [x, L^T]^T)^T =
        sum_k ((4i/n) Theta^-(Lambda_k^#) Lambda_k^T
               - 2i Theta^-(Lambda_k) Theta^+(Lambda_k^#) x
               + 2  Theta^-(Lambda_k) Theta^-(Lambda_k^#) x)

    ``model`` is any object with ``alpha`` (length s, real) and ``Lambda``
    (n_w x s, complex) attributes, e.g. :class:`sunqsde.realization.PlantModel`.
    """
    alpha = np.asarray(model.alpha, dtype=np.float64)
    Lam = np.atleast_2d(np.asarray(model.Lambda, dtype=np.complex128))
    if alpha.shape != (ctx.s,) or Lam.shape[1] != ctx.s:
        raise ValueError(
            f"expected alpha of length {ctx.s} and Lambda with {ctx.s} columns; "
            f"got {alpha.shape} and {Lam.shape}"
        )
    s = ctx.s
    nw = Lam.shape[0]
    Lc = np.conj(Lam)
    x = generator_vector(ctx)
    L = FormMatrix.column_from_rows(Lam, ctx)
    Lsharp = L.conj()
    H = FormMatrix.column_from_rows(alpha.reshape(1, s), ctx)

    out = []

    lhs = vector_commutator(x, H)  # (s, 1)
    rhs = FormMatrix(
        np.zeros((s, 1), dtype=np.complex128),
        (-2j * ctx.theta_minus(alpha)).reshape(s, 1, s),
        ctx,
    )
    out.append(_report("x_vs_hamiltonian", lhs.max_residual(rhs), tol))

    TmL = _theta_rows(ctx, Lam)
    TmLc = _theta_rows(ctx, Lc)
    lhs = vector_commutator(x, L)  # (s, nw)
    rhs = FormMatrix(
        np.zeros((s, nw), dtype=np.complex128),
        -2j * np.stack(TmL, axis=1),
        ctx,
    )
    out.append(_report("x_vs_coupling_row", lhs.max_residual(rhs), tol))

    lhs = vector_commutator(x, Lsharp)  # [x, L^dagger] since L^dagger = (L^#)^T
    rhs = FormMatrix(
        np.zeros((s, nw), dtype=np.complex128),
        -2j * np.stack(TmLc, axis=1),
        ctx,
    )
    out.append(_report("x_vs_coupling_adjoint", lhs.max_residual(rhs), tol))

    TpL = _theta_rows(ctx, Lam, plus=True)
    TpLc = _theta_rows(ctx, Lc, plus=True)

    lhs = vector_commutator(Lsharp, x).T @ L  # (s, 1)
    const = np.zeros(s, dtype=np.complex128)
    lin = np.zeros((s, s), dtype=np.complex128)
    for k in range(nw):
        const += (4j / ctx.n) * (TmLc[k] @ Lam[k])
        lin += 2j * (TmLc[k] @ TpL[k]) + 2.0 * (TmLc[k] @ TmL[k])
    rhs = FormMatrix(const.reshape(s, 1), lin.reshape(s, 1, s), ctx)
    out.append(
        _report("conjugate_coupling_commutator_times_coupling", lhs.max_residual(rhs), tol)
    )

    lhs = (Lsharp.T @ vector_commutator(x, L).T).T  # (s, 1)
    lin = np.zeros((s, s), dtype=np.complex128)
    for k in range(nw):
        lin += -2j * (TmL[k] @ TpLc[k]) + 2.0 * (TmL[k] @ TmLc[k])
    rhs = FormMatrix(const.reshape(s, 1), lin.reshape(s, 1, s), ctx)
    out.append(_report("adjoint_coupling_times_commutator", lhs.max_residual(rhs), tol))
    return out
