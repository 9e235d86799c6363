"""Numerical verification suites for the algebra- and map-level identities.

Every suite returns a list of :class:`IdentityReport`, one per identity,
carrying the maximum elementwise residual observed and a pass flag
against an absolute tolerance.  The report name is a stable identifier
describing what was checked; the JSON form is
``{"identity": name, "max_residual": float, "pass": bool}``.

The algebra suite checks, for the structure constants of one level count:

* trace orthogonality of the generators,
* closure of generator products over (identity, generators),
* the two Jacobi-type contractions of f with f and with d,
* the f-f contraction sum_{m,k} f_imk f_jmk = n delta_ij,
* the four commutation/symmetrization identities of the adjoint-side
  matrices F_i, D_i,
* the stacked-matrix Gram identity F^T F = n I.

All index quadruples are covered exhaustively (einsum over full tensors).

The map suite draws random complex argument pairs (beta, gamma) and checks
the exchange/composition identities of Theta^- and Theta^+, the vec/stack
identities, and the recovery round trip.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .su_algebra import StructureConstants
from .theta_maps import ThetaContext

__all__ = ["IdentityReport", "algebra_identity_suite", "theta_identity_suite"]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one verified identity."""

    identity: str
    max_residual: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "max_residual": self.max_residual,
            "pass": self.passed,
        }


def _report(name: str, resid: float, tol: float) -> IdentityReport:
    resid = float(resid)
    return IdentityReport(identity=name, max_residual=resid, passed=resid <= tol)


def algebra_identity_suite(
    sc: StructureConstants, tol: float = DEFAULT_TOL
) -> list[IdentityReport]:
    """Exhaustively verify the structure-constant identities for one n."""
    L = sc.basis.lambdas
    n, s = sc.n, sc.s
    f, d = sc.f_dense, sc.d_dense
    F, D = sc.F_mats, sc.D_mats
    eye_s = np.eye(s)
    out = []

    gram = np.einsum("iab,jba->ij", L, L)
    out.append(_report("trace_orthogonality", np.abs(gram - 2.0 * eye_s).max(), tol))

    prod = np.einsum("iab,jbc->ijac", L, L)
    closure = (2.0 / n) * np.einsum("ij,ab->ijab", eye_s, np.eye(n)) + np.einsum(
        "ijk,kab->ijab", 1j * f + d, L
    )
    out.append(_report("product_closure", np.abs(prod - closure).max(), tol))

    jac_ff = (
        np.einsum("ilm,mjk->iljk", f, f)
        + np.einsum("jlm,imk->iljk", f, f)
        + np.einsum("klm,ijm->iljk", f, f)
    )
    out.append(_report("ff_jacobi", np.abs(jac_ff).max(), tol))

    jac_fd = (
        np.einsum("ilm,mjk->iljk", f, d)
        + np.einsum("jlm,imk->iljk", f, d)
        + np.einsum("klm,ijm->iljk", f, d)
    )
    out.append(_report("fd_jacobi", np.abs(jac_fd).max(), tol))

    contraction = np.einsum("imk,jmk->ij", f, f)
    out.append(_report("ff_contraction", np.abs(contraction - n * eye_s).max(), tol))

    fF = np.einsum("iab,jbc->ijac", F, F)
    comm_FF = fF - fF.transpose(1, 0, 2, 3)
    out.append(
        _report(
            "adjoint_FF_commutator",
            np.abs(comm_FF + np.einsum("ijk,kab->ijab", f, F)).max(),
            tol,
        )
    )

    FD = np.einsum("iab,jbc->ijac", F, D)
    DF = np.einsum("iab,jbc->ijac", D, F)
    comm_FD = FD - DF.transpose(1, 0, 2, 3)
    out.append(
        _report(
            "adjoint_FD_commutator",
            np.abs(comm_FD + np.einsum("ijk,kab->ijab", f, D)).max(),
            tol,
        )
    )

    dF = np.einsum("ijk,kab->ijab", d, F)
    out.append(
        _report(
            "adjoint_FD_symmetrization",
            np.abs(FD + FD.transpose(1, 0, 2, 3) - dF).max(),
            tol,
        )
    )
    out.append(
        _report(
            "adjoint_DF_symmetrization",
            np.abs(DF + DF.transpose(1, 0, 2, 3) - dF).max(),
            tol,
        )
    )

    Fst = sc.F_stack
    out.append(_report("stack_gram", np.abs(Fst.T @ Fst - n * eye_s).max(), tol))
    return out


def theta_identity_suite(
    ctx: ThetaContext,
    rng: np.random.Generator,
    trials: int = 100,
    tol: float = DEFAULT_TOL,
) -> list[IdentityReport]:
    """Verify the Theta^-/Theta^+ identities on random complex arguments.

    Checked per draw (beta, gamma), residual maximized over all draws:

    * antisymmetric_exchange:  Theta^-(beta) gamma = -Theta^-(gamma) beta
    * symmetric_exchange:      Theta^+(beta) gamma =  Theta^+(gamma) beta
    * self_annihilation:       Theta^-(beta) beta = 0
    * minus_minus_commutator:  Theta^-(Theta^-(beta) gamma) = [Theta^-(beta), Theta^-(gamma)]
    * mixed_product_symmetrization:
          Theta^-(Theta^+(beta) gamma)
            = Theta^-(beta) Theta^+(gamma) + Theta^-(gamma) Theta^+(beta)
            = Theta^+(beta) Theta^-(gamma) + Theta^+(gamma) Theta^-(beta)
      (the mixed composition equals either symmetrized product)
    * plus_of_minus_commutator:
          Theta^+(Theta^-(beta) gamma) = [Theta^+(beta), Theta^-(gamma)]
                                        = [Theta^-(beta), Theta^+(gamma)]
    * output_antisymmetry / output_symmetry of the two maps
    * stack_vec_identity: vec(Theta^-(beta)) = F beta and vec(Theta^+(beta)) = D beta
    * recovery_round_trip: (1/n) F^T vec(Theta^-(beta)) = beta
    """
    s = ctx.s
    sc = ctx.sc
    names = [
        "antisymmetric_exchange",
        "symmetric_exchange",
        "self_annihilation",
        "minus_minus_commutator",
        "mixed_product_symmetrization",
        "plus_of_minus_commutator",
        "output_antisymmetry",
        "output_symmetry",
        "stack_vec_identity",
        "recovery_round_trip",
    ]
    worst = dict.fromkeys(names, 0.0)

    def bump(name: str, value: float) -> None:
        if value > worst[name]:
            worst[name] = float(value)

    for _ in range(trials):
        beta = rng.standard_normal(s) + 1j * rng.standard_normal(s)
        gamma = rng.standard_normal(s) + 1j * rng.standard_normal(s)
        Tm_b, Tm_g = ctx.theta_minus(beta), ctx.theta_minus(gamma)
        Tp_b, Tp_g = ctx.theta_plus(beta), ctx.theta_plus(gamma)

        bump("antisymmetric_exchange", np.abs(Tm_b @ gamma + Tm_g @ beta).max())
        bump("symmetric_exchange", np.abs(Tp_b @ gamma - Tp_g @ beta).max())
        bump("self_annihilation", np.abs(Tm_b @ beta).max())
        bump(
            "minus_minus_commutator",
            np.abs(ctx.theta_minus(Tm_b @ gamma) - (Tm_b @ Tm_g - Tm_g @ Tm_b)).max(),
        )
        mixed = ctx.theta_minus(Tp_b @ gamma)
        bump(
            "mixed_product_symmetrization",
            max(
                np.abs(mixed - (Tm_b @ Tp_g + Tm_g @ Tp_b)).max(),
                np.abs(mixed - (Tp_b @ Tm_g + Tp_g @ Tm_b)).max(),
            ),
        )
        plus_of = ctx.theta_plus(Tm_b @ gamma)
        bump(
            "plus_of_minus_commutator",
            max(
                np.abs(plus_of - (Tp_b @ Tm_g - Tm_g @ Tp_b)).max(),
                np.abs(plus_of - (Tm_b @ Tp_g - Tp_g @ Tm_b)).max(),
            ),
        )
        bump("output_antisymmetry", np.abs(Tm_b + Tm_b.T).max())
        bump("output_symmetry", np.abs(Tp_b - Tp_b.T).max())
        bump(
            "stack_vec_identity",
            max(
                np.abs(Tm_b.ravel(order="F") - sc.F_stack @ beta).max(),
                np.abs(Tp_b.ravel(order="F") - sc.D_stack @ beta).max(),
            ),
        )
        bump("recovery_round_trip", np.abs(ctx.recover_vector(Tm_b) - beta).max())

    return [_report(name, worst[name], tol) for name in names]
