#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace grover_lab {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Largest |a_ij - conj(a_ji)|.
double hermitian_defect(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol);

// Eigenvalues of a Hermitian matrix in descending order. Takes the real
// symmetric path when every entry has an exactly zero imaginary part.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

struct EigenPairs {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column i belongs to values[i]
};

EigenPairs hermitian_eigenpairs(const ComplexMatrix& a);

}  // namespace grover_lab
