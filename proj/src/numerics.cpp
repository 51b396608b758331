#include "qb/numerics.hpp"

#include <cmath>

namespace qb {

bool is_hermitian(const ComplexMatrix& h, double tol) {
  if (h.rows() == 0 || h.rows() != h.cols()) return false;
  const double scale = h.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

namespace {

void fix_phase_gauge(ComplexMatrix& vectors, double gauge_zero) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      if (std::abs(vectors(r, c)) > gauge_zero) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      vectors.col(c).cwiseAbs().maxCoeff(&pivot);
    }
    const Complex z = vectors(pivot, c);
    const double mag = std::abs(z);
    if (mag > 0.0) vectors.col(c) *= std::conj(z) / mag;
  }
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& h, const Tolerances& tol) {
  if (!is_hermitian(h, tol.hermitian)) {
    throw NotHermitian("hermitian_eig: matrix fails the conjugate-symmetry check");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigensolver did not converge");
  }
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  fix_phase_gauge(es.vectors, tol.gauge_zero);

  const double hnorm =
      std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  const double residual =
      (h * es.vectors - es.vectors * es.values.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > tol.eig_residual * std::max(hnorm, 1e-300)) {
    throw Error("hermitian_eig: eigenpair residual exceeds tolerance");
  }
  const Eigen::Index n = h.rows();
  const double ortho =
      (es.vectors.adjoint() * es.vectors - ComplexMatrix::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (ortho > tol.orthonormality) {
    throw Error("hermitian_eig: eigenvectors fail orthonormality check");
  }
  return es;
}

Propagator::Propagator(const ComplexMatrix& h, const Tolerances& tol)
    : es_(hermitian_eig(h, tol)) {}

ComplexVector Propagator::state_at(const ComplexVector& psi0, double t) const {
  if (psi0.size() != es_.vectors.rows()) {
    throw DimMismatch("Propagator: state dimension does not match Hamiltonian");
  }
  ComplexVector modes = es_.vectors.adjoint() * psi0;
  for (Eigen::Index k = 0; k < modes.size(); ++k) {
    modes(k) *= std::exp(Complex(0.0, -es_.values(k) * t));
  }
  return es_.vectors * modes;
}

ComplexVector evolve(const ComplexMatrix& h, const ComplexVector& psi, double t,
                     const Tolerances& tol) {
  return Propagator(h, tol).state_at(psi, t);
}

Complex overlap(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) {
    throw DimMismatch("overlap: vector dimensions differ");
  }
  return a.dot(b);
}

}  // namespace qb
