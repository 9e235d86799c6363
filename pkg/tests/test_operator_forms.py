"""Coefficient-space operator algebra: products, matrices, commutation relations."""

import numpy as np
import pytest

from sunqsde import (
    FormMatrix,
    OperatorForm,
    PlantModel,
    context_for,
    form_anticommutator,
    form_commutator,
    form_product,
    generator_vector,
    vector_commutator,
    verify_ccr,
    verify_linear_commutators,
    verify_plant_commutators,
)


def basis_form(ctx, i):
    c = np.zeros(ctx.s, dtype=complex)
    c[i] = 1.0
    return OperatorForm(0.0, c, ctx)


def random_form(ctx, rng):
    return OperatorForm(
        complex(rng.standard_normal(), rng.standard_normal()),
        rng.standard_normal(ctx.s) + 1j * rng.standard_normal(ctx.s),
        ctx,
    )


def test_su2_generator_products():
    ctx = context_for(2)
    l1, l2 = basis_form(ctx, 0), basis_form(ctx, 1)
    sq = form_product(l1, l1)  # lambda_1^2 = I
    assert sq.c0 == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_allclose(sq.c, 0.0, atol=1e-15)
    prod = form_product(l1, l2)  # lambda_1 lambda_2 = i lambda_3
    assert prod.c0 == pytest.approx(0.0, abs=1e-15)
    np.testing.assert_allclose(prod.c, [0.0, 0.0, 1j], atol=1e-15)


def test_su3_generator_square_hits_symmetric_constants():
    ctx = context_for(3)
    sq = form_product(basis_form(ctx, 0), basis_form(ctx, 0))  # lambda_1^2
    assert sq.c0 == pytest.approx(2.0 / 3.0, abs=1e-15)
    expected = np.zeros(8)
    expected[7] = 1 / np.sqrt(3)  # from the d-tensor diagonal coupling
    np.testing.assert_allclose(sq.c, expected, atol=1e-14)


def test_commutator_and_anticommutator_of_generators():
    ctx = context_for(3)
    li, lj = basis_form(ctx, 0), basis_form(ctx, 1)
    comm = form_commutator(li, lj)
    np.testing.assert_allclose(comm.c, 2j * ctx.sc.f_dense[0, 1], atol=1e-14)
    assert comm.c0 == pytest.approx(0.0, abs=1e-15)
    anti = form_anticommutator(li, lj)
    np.testing.assert_allclose(anti.c, 2.0 * ctx.sc.d_dense[0, 1], atol=1e-14)
    assert anti.c0 == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_product_is_matrix_homomorphism(n):
    ctx = context_for(n)
    rng = np.random.default_rng(n)
    for _ in range(10):
        a, b = random_form(ctx, rng), random_form(ctx, rng)
        lhs = form_product(a, b).to_matrix()
        rhs = a.to_matrix() @ b.to_matrix()
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_to_matrix_of_scalar_and_generator():
    ctx = context_for(2)
    ident = OperatorForm(2.5, np.zeros(3, dtype=complex), ctx)
    np.testing.assert_allclose(ident.to_matrix(), 2.5 * np.eye(2), atol=0)
    np.testing.assert_allclose(basis_form(ctx, 2).to_matrix(), np.diag([1.0, -1.0]), atol=0)


def test_conj_matches_matrix_adjoint():
    ctx = context_for(3)
    rng = np.random.default_rng(9)
    a = random_form(ctx, rng)
    np.testing.assert_allclose(a.conj().to_matrix(), a.to_matrix().conj().T, atol=1e-13)


def test_associativity():
    ctx = context_for(3)
    rng = np.random.default_rng(11)
    for _ in range(10):
        a, b, c = (random_form(ctx, rng) for _ in range(3))
        lhs = form_product(form_product(a, b), c)
        rhs = form_product(a, form_product(b, c))
        assert abs(lhs.c0 - rhs.c0) <= 1e-10
        assert np.abs(lhs.c - rhs.c).max() <= 1e-10


def test_distributivity_exact_with_integer_coefficients():
    # su(2) constants are integers, so all arithmetic stays exact
    ctx = context_for(2)
    rng = np.random.default_rng(13)
    for _ in range(10):
        a, b, c = (
            OperatorForm(
                complex(rng.integers(-2, 3)),
                rng.integers(-2, 3, size=3).astype(complex),
                ctx,
            )
            for _ in range(3)
        )
        lhs = form_product(a, b + c)
        rhs = form_product(a, b) + form_product(a, c)
        assert lhs.c0 == rhs.c0
        np.testing.assert_array_equal(lhs.c, rhs.c)


def test_distributivity_random():
    ctx = context_for(3)
    rng = np.random.default_rng(17)
    a, b, c = (random_form(ctx, rng) for _ in range(3))
    lhs = form_product(a, b + c)
    rhs = form_product(a, b) + form_product(a, c)
    assert abs(lhs.c0 - rhs.c0) <= 1e-12
    assert np.abs(lhs.c - rhs.c).max() <= 1e-12


def test_scalar_and_linear_operations():
    ctx = context_for(2)
    a = basis_form(ctx, 0)
    b = 2.0 * a
    np.testing.assert_array_equal(b.c, [2.0, 0.0, 0.0])
    np.testing.assert_array_equal((-a).c, [-1.0, 0.0, 0.0])
    np.testing.assert_array_equal((a - a).c, np.zeros(3))
    prod = a * basis_form(ctx, 1)  # __mul__ dispatches to form_product
    np.testing.assert_allclose(prod.c, [0, 0, 1j], atol=1e-15)


def test_context_mismatch_rejected():
    a = basis_form(context_for(2), 0)
    b = basis_form(context_for(3), 0)
    with pytest.raises(ValueError, match="context"):
        form_product(a, b)


def test_form_matrix_construction_and_entries():
    ctx = context_for(2)
    x = generator_vector(ctx)
    assert (x.rows, x.cols) == (3, 1)
    e = x.entry(1, 0)
    np.testing.assert_array_equal(e.c, [0.0, 1.0, 0.0])
    M = np.array([[1.0, 2.0, 0.0], [0.0, 0.0, 3.0]])
    col = FormMatrix.column_from_rows(M, ctx)
    assert (col.rows, col.cols) == (2, 1)
    np.testing.assert_array_equal(col.entry(0, 0).c, [1.0, 2.0, 0.0])
    lifted = FormMatrix.from_numeric(M @ np.zeros((3, 2)), ctx)
    assert (lifted.rows, lifted.cols) == (2, 2)


def test_form_matrix_matmul_matches_numeric_product():
    ctx = context_for(2)
    M = np.array([[1.0, 2.0, 0.0], [0.0, 0.0, 3.0]])
    x = generator_vector(ctx)
    via_matmul = FormMatrix.from_numeric(M, ctx) @ x
    direct = FormMatrix.column_from_rows(M, ctx)
    assert via_matmul.max_residual(direct) <= 1e-14


def test_form_matrix_transpose_and_adjoint():
    ctx = context_for(3)
    rng = np.random.default_rng(2)
    c0 = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    c = rng.standard_normal((2, 3, 8)) + 1j * rng.standard_normal((2, 3, 8))
    F = FormMatrix(c0, c, ctx)
    assert (F.T.rows, F.T.cols) == (3, 2)
    np.testing.assert_array_equal(F.T.c0, c0.T)
    # adjoint of every entry, no transposition
    np.testing.assert_array_equal(F.conj().c0, c0.conj())
    np.testing.assert_array_equal(F.conj().c, c.conj())


def test_vector_commutator_antisymmetry_property():
    # matrix transpose of [x, y^T] equals -[y, x^T]
    ctx = context_for(3)
    rng = np.random.default_rng(23)
    x = FormMatrix.column_from_rows(rng.standard_normal((4, 8)), ctx)
    y = FormMatrix.column_from_rows(rng.standard_normal((4, 8)), ctx)
    lhs = vector_commutator(x, y).T
    rhs = (-1.0) * vector_commutator(y, x)
    assert lhs.max_residual(rhs) <= 1e-13


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ccr(n):
    for r in verify_ccr(context_for(n)):
        assert r.passed and r.max_residual <= 1e-12


def test_diagonal_generators_commute():
    # diagonal family members sit at 0-based positions (l+1)^2 - 2
    for n in (3, 4):
        ctx = context_for(n)
        diag_idx = [(l + 1) ** 2 - 2 for l in range(1, n)]
        for i in diag_idx:
            for j in diag_idx:
                comm = form_commutator(basis_form(ctx, i), basis_form(ctx, j))
                assert abs(comm.c0) == 0.0
                np.testing.assert_array_equal(comm.c, np.zeros(ctx.s, dtype=complex))


def test_linear_commutators_trivial_and_random():
    ctx = context_for(3)
    zero = np.zeros((2, 8))
    for r in verify_linear_commutators(zero, zero, ctx):
        assert r.passed and r.max_residual == 0.0
    rng = np.random.default_rng(29)
    reports = verify_linear_commutators(
        rng.standard_normal((3, 8)), rng.standard_normal((3, 8)), ctx
    )
    assert {r.identity for r in reports} == {
        "x_vs_Ax_commutator",
        "x_vs_Ax_commutator_times_Bx",
        "Bx_transposed_times_Ax_vs_x_commutator",
    }
    for r in reports:
        assert r.passed, f"{r.identity}: {r.max_residual:.3e}"


def test_linear_commutators_shape_gate():
    ctx = context_for(2)
    with pytest.raises(ValueError):
        verify_linear_commutators(np.zeros((2, 3)), np.zeros((1, 3)), ctx)
    with pytest.raises(ValueError):
        verify_linear_commutators(np.zeros((2, 4)), np.zeros((2, 4)), ctx)


def test_plant_commutators_trivial_and_random():
    ctx = context_for(3)
    closed = PlantModel(n=3, n_w=1, alpha=np.zeros(8), Lambda=np.zeros((1, 8)))
    for r in verify_plant_commutators(closed, ctx):
        assert r.passed
    rng = np.random.default_rng(31)
    model = PlantModel(
        n=3,
        n_w=2,
        alpha=rng.standard_normal(8),
        Lambda=rng.standard_normal((2, 8)) + 1j * rng.standard_normal((2, 8)),
    )
    reports = verify_plant_commutators(model, ctx)
    assert {r.identity for r in reports} == {
        "x_vs_hamiltonian",
        "x_vs_coupling_row",
        "x_vs_coupling_adjoint",
        "conjugate_coupling_commutator_times_coupling",
        "adjoint_coupling_times_commutator",
    }
    for r in reports:
        assert r.passed, f"{r.identity}: {r.max_residual:.3e}"
