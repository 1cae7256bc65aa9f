"""
Working with 4x4 operators through their 16 basis coefficients
==============================================================

Every 4x4 complex matrix is a combination of 16 fixed unitary basis
matrices, and the whole matrix algebra (products, characteristic
invariants, adjugate, inverse) can be carried out on the coefficient
vectors alone.  This script walks through the pieces.
"""

import numpy as np

from estc import (
    char_invariants,
    dset_adjoint,
    dset_from_matrix,
    dset_inverse,
    dset_multiply,
    dset_square,
    gamma_matrix,
    matrix_from_dset,
    structure_constant,
)

np.set_printoptions(precision=4, suppress=True, linewidth=100)

# The basis is indexed 0..15; index 0 is the identity and every member is
# unitary.  A few of them, reconstructed from the index digits alone:
for nu in (0, 1, 3, 10):
    print(f"basis matrix {nu}:")
    print(gamma_matrix(nu))

# Products of basis matrices stay in the basis up to a fourth root of
# unity: basis[lam] @ basis[mu] = factor * basis[nu] with nu = lam XOR mu.
for lam, mu in ((1, 2), (4, 13), (7, 11)):
    nu, factor = structure_constant(lam, mu)
    print(f"basis[{lam}] @ basis[{mu}] = {factor} * basis[{nu}]")
    assert np.array_equal(gamma_matrix(lam) @ gamma_matrix(mu), factor * gamma_matrix(nu))

# Any matrix maps to its coefficient vector (a "dset") by a quarter-trace
# projection, and back.  Hermitian matrices have real coefficients.
rng = np.random.default_rng(1)
m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
d = dset_from_matrix(m)
print("round-trip error:", np.abs(matrix_from_dset(d) - m).max())
h = m + m.conj().T
print("hermitian coefficients imaginary part:", np.abs(dset_from_matrix(h).imag).max())

# Products happen coefficient-to-coefficient through the structure
# constants; squares have a shorter closed form.
d2 = dset_from_matrix(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
product = dset_multiply(d, d2)
print("product error vs dense:", np.abs(matrix_from_dset(product) - m @ matrix_from_dset(d2)).max())
print("square error vs product:", np.abs(dset_square(d) - dset_multiply(d, d)).max())

# The four characteristic invariants are polynomials in the coefficients:
# i1 is the trace, i4 the determinant, and the adjugate follows from the
# Hamilton-Cayley identity, giving the inverse without any factorization.
inv = char_invariants(d)
print("trace check:", abs(inv.i1 - np.trace(m)))
print("determinant check:", abs(inv.i4 - np.linalg.det(m)))
adj = dset_adjoint(d)
print("adjugate identity:", np.abs(matrix_from_dset(dset_multiply(d, adj)) - inv.i4 * np.eye(4)).max())
print("inverse check:", np.abs(matrix_from_dset(dset_inverse(d)) - np.linalg.inv(m)).max())
