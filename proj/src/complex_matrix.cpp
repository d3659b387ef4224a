#include "steerkit/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "steerkit/errors.hpp"

namespace steerkit {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim != 2 && dim != 4) {
    throw PreconditionError("matrix_dim", "matrix dimension must be 2 or 4", dim);
  }
  e_.assign(static_cast<size_t>(dim) * dim, cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::zero(int dim) { return ComplexMatrix(dim); }

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw PreconditionError("matrix_dim", "dimension mismatch in +", o.dim_);
  ComplexMatrix r(dim_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw PreconditionError("matrix_dim", "dimension mismatch in -", o.dim_);
  ComplexMatrix r(dim_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw PreconditionError("matrix_dim", "dimension mismatch in *", o.dim_);
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k < dim_; ++k) {
      const cplx aik = at(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::scaled(cplx s) const {
  ComplexMatrix r(dim_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
  return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

double ComplexMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) d = std::max(d, std::abs(at(i, j) - std::conj(at(j, i))));
  return d;
}

double ComplexMatrix::idempotency_defect() const {
  return ((*this) * (*this)).max_abs_diff(*this);
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw PreconditionError("matrix_dim", "dimension mismatch in diff", o.dim_);
  double d = 0.0;
  for (size_t i = 0; i < e_.size(); ++i) d = std::max(d, std::abs(e_[i] - o.e_[i]));
  return d;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2);
  m.at(0, 1) = cplx(0.0, -1.0);
  m.at(1, 0) = cplx(0.0, 1.0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = -1.0;
  return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw PreconditionError("tensor_operands", "tensor takes two 2x2 operands",
                            a.dim() != 2 ? a.dim() : b.dim());
  }
  ComplexMatrix r(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
  return r;
}

ComplexMatrix partial_trace_alice_raw(const ComplexMatrix& m) {
  if (m.dim() != 4) throw PreconditionError("matrix_dim", "partial trace takes a 4x4 matrix", m.dim());
  ComplexMatrix b(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) b.at(i, j) = m.at(i, j) + m.at(2 + i, 2 + j);
  return b;
}

ComplexMatrix partial_trace_alice(const ComplexMatrix& rho) {
  validate_density(rho, 1e-8);
  return partial_trace_alice_raw(rho);
}

namespace {

EigResult eig_herm_2x2(const ComplexMatrix& h, bool want_vectors) {
  const double a = h.at(0, 0).real();
  const double c = h.at(1, 1).real();
  const cplx b = h.at(0, 1);
  const double half_sum = 0.5 * (a + c);
  const double disc = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
  EigResult r;
  r.values = {half_sum + disc, half_sum - disc};
  if (!want_vectors) return r;

  ComplexMatrix v(2);
  if (std::abs(b) < 1e-300) {
    // Already diagonal; order basis vectors to match the sorted eigenvalues.
    const bool first_is_a = a >= c;
    v.at(0, 0) = first_is_a ? 1.0 : 0.0;
    v.at(1, 0) = first_is_a ? 0.0 : 1.0;
    v.at(0, 1) = first_is_a ? 0.0 : 1.0;
    v.at(1, 1) = first_is_a ? 1.0 : 0.0;
  } else {
    for (int k = 0; k < 2; ++k) {
      const double lam = r.values[k];
      // (H - lam I) annihilates the eigenvector; pick the numerically larger row.
      cplx v0 = b;
      cplx v1 = cplx(lam - a, 0.0);
      if (std::abs(v1) + std::abs(v0) < 1e-14) {
        v0 = cplx(lam - c, 0.0);
        v1 = std::conj(b);
      }
      const double n = std::sqrt(std::norm(v0) + std::norm(v1));
      v.at(0, k) = v0 / n;
      v.at(1, k) = v1 / n;
    }
  }
  r.vectors = v;
  return r;
}

EigResult eig_herm_4x4(const ComplexMatrix& h, bool want_vectors) {
  ComplexMatrix a = (h + h.adjoint()).scaled(0.5);  // symmetrize roundoff
  ComplexMatrix v = ComplexMatrix::identity(4);

  auto off_norm = [&a]() {
    double s = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q)
        if (p != q) s += std::norm(a.at(p, q));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > 1e-13; ++sweep) {
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const cplx apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const cplx phase = apq / r;  // apq = r * phase
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
        const double cth = std::cos(theta);
        const double sth = std::sin(theta);
        // Unitary rotation R: R(p,p)=c, R(p,q)=-s*phase, R(q,p)=s*conj(phase), R(q,q)=c;
        // A <- R^dagger A R zeroes the (p,q) entry, V accumulates column rotations.
        for (int k = 0; k < 4; ++k) {
          const cplx akp = a.at(k, p);
          const cplx akq = a.at(k, q);
          a.at(k, p) = cth * akp + sth * std::conj(phase) * akq;
          a.at(k, q) = -sth * phase * akp + cth * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const cplx apk = a.at(p, k);
          const cplx aqk = a.at(q, k);
          a.at(p, k) = cth * apk + sth * phase * aqk;
          a.at(q, k) = -sth * std::conj(phase) * apk + cth * aqk;
        }
        if (want_vectors) {
          for (int k = 0; k < 4; ++k) {
            const cplx vkp = v.at(k, p);
            const cplx vkq = v.at(k, q);
            v.at(k, p) = cth * vkp + sth * std::conj(phase) * vkq;
            v.at(k, q) = -sth * phase * vkp + cth * vkq;
          }
        }
      }
    }
  }

  std::vector<int> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a.at(i, i).real() > a.at(j, j).real(); });
  EigResult r;
  for (int i : order) r.values.push_back(a.at(i, i).real());
  if (want_vectors) {
    ComplexMatrix sorted(4);
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) sorted.at(k, c) = v.at(k, order[c]);
    r.vectors = sorted;
  }
  return r;
}

}  // namespace

EigResult eig_herm(const ComplexMatrix& h, bool want_vectors) {
  const double defect = h.hermiticity_defect();
  if (defect > 1e-8) {
    throw PreconditionError("hermiticity", "eig_herm requires a Hermitian matrix", defect);
  }
  return h.dim() == 2 ? eig_herm_2x2(h, want_vectors) : eig_herm_4x4(h, want_vectors);
}

void validate_density(const ComplexMatrix& rho, double tol) {
  const double herm = rho.hermiticity_defect();
  if (herm > tol) {
    throw PreconditionError("hermiticity", "density matrix must be Hermitian", herm);
  }
  const double trace_defect = std::abs(rho.trace() - cplx(1.0, 0.0));
  if (trace_defect > tol) {
    throw PreconditionError("unit_trace", "density matrix must have trace 1", trace_defect);
  }
  const EigResult eig = eig_herm(rho);
  const double min_eig = eig.values.back();
  if (min_eig < -tol) {
    throw PreconditionError("positivity", "density matrix must be positive semidefinite", min_eig);
  }
}

}  // namespace steerkit
