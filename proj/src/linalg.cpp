#include "grover_lab/linalg.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "grover_lab/errors.hpp"

namespace grover_lab {

namespace {

bool is_real(const ComplexMatrix& a) { return a.imag().cwiseAbs().maxCoeff() == 0.0; }

void require_square(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InvalidDimension("eigensolver needs a non-empty square matrix");
  }
}

void require_converged(Eigen::ComputationInfo info) {
  if (info != Eigen::Success) throw DomainError("Hermitian eigensolver did not converge");
}

}  // namespace

double hermitian_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) { return hermitian_defect(a) <= tol; }

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  require_square(a);
  Eigen::VectorXd ascending;
  if (is_real(a)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.real(), Eigen::EigenvaluesOnly);
    require_converged(solver.info());
    ascending = solver.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
    require_converged(solver.info());
    ascending = solver.eigenvalues();
  }
  std::vector<double> descending(ascending.begin(), ascending.end());
  std::reverse(descending.begin(), descending.end());
  return descending;
}

EigenPairs hermitian_eigenpairs(const ComplexMatrix& a) {
  require_square(a);
  Eigen::VectorXd ascending;
  ComplexMatrix vectors;
  if (is_real(a)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.real());
    require_converged(solver.info());
    ascending = solver.eigenvalues();
    vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    require_converged(solver.info());
    ascending = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }
  const Eigen::Index n = ascending.size();
  EigenPairs out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[static_cast<std::size_t>(i)] = ascending[n - 1 - i];
    out.vectors.col(i) = vectors.col(n - 1 - i);
  }
  return out;
}

}  // namespace grover_lab
