#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace steerkit {

using cplx = std::complex<double>;

// Dense row-major complex matrix restricted to the two sizes the domain needs
// (single qubit 2x2, two qubits 4x4). Values are immutable in spirit: every
// operation returns a fresh matrix, so instances are safe to share across threads.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);

  static ComplexMatrix zero(int dim);
  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  cplx& at(int r, int c) { return e_[static_cast<size_t>(r) * dim_ + c]; }
  const cplx& at(int r, int c) const { return e_[static_cast<size_t>(r) * dim_ + c]; }

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix scaled(cplx s) const;
  ComplexMatrix adjoint() const;
  cplx trace() const;

  // Largest entrywise |A - A^dagger|; 0 for exactly Hermitian matrices.
  double hermiticity_defect() const;
  // Largest entrywise |A*A - A|; 0 for exact projectors.
  double idempotency_defect() const;
  // Largest entrywise |A - B|.
  double max_abs_diff(const ComplexMatrix& o) const;

 private:
  int dim_;
  std::vector<cplx> e_;
};

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Kronecker product with Alice as the first factor: index = 2*alice + bob.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Bob's reduced state of a two-qubit density matrix. Validates the input.
ComplexMatrix partial_trace_alice(const ComplexMatrix& rho);
// Same contraction without the density-matrix validation, for internal use on
// operator products that are not themselves states.
ComplexMatrix partial_trace_alice_raw(const ComplexMatrix& m);

struct EigResult {
  std::vector<double> values;              // sorted descending
  std::optional<ComplexMatrix> vectors;    // column i pairs with values[i]
};

// Eigendecomposition of a Hermitian matrix (defect <= 1e-8 required).
// 2x2 uses the closed-form trace/discriminant solution; 4x4 runs cyclic complex
// Jacobi rotations until the off-diagonal Frobenius norm falls below 1e-13.
EigResult eig_herm(const ComplexMatrix& h, bool want_vectors = false);

// Throws PreconditionError naming the violated invariant (hermiticity, trace,
// positivity) with its measured magnitude. `tol` bounds all three checks.
void validate_density(const ComplexMatrix& rho, double tol);

}  // namespace steerkit
