#include "clsparse/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace clsparse {

Spectrum eig_sym(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("eig_sym: matrix is not square");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument("eig_sym: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_sym: eigensolver did not converge");
  }
  // Eigen returns ascending eigenvalues.
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum laplacian_spectrum(const Graph& g, LaplacianVariant variant,
                            IsolatedVertexPolicy policy) {
  return eig_sym(laplacian(g, variant, policy));
}

bool StructureStats::upsilon_finite() const { return std::isfinite(upsilon); }
bool StructureStats::kappa_defined() const { return std::isfinite(kappa); }

double StructureStats::k_over_upsilon() const {
  return upsilon_finite() ? static_cast<double>(k) / upsilon : 0.0;
}

StructureStats structure_stats(const Spectrum& spec, double rho, Index k) {
  const Index n = spec.size();
  if (k < 1 || k >= n) {
    throw std::invalid_argument("structure_stats: k=" + std::to_string(k) +
                                " outside 1..n-1 (n=" + std::to_string(n) + ")");
  }
  if (rho < 0.0) throw std::invalid_argument("structure_stats: negative rho");
  StructureStats s;
  s.k = k;
  s.rho = rho;
  s.lambda_k = spec.values[k - 1];
  s.lambda_k1 = spec.values[k];
  s.lambda_n = spec.values[n - 1];
  const bool zero_gap =
      s.lambda_k1 <= kZeroEigenvalueTolerance * std::max(1.0, std::abs(s.lambda_n));
  s.kappa = zero_gap ? std::numeric_limits<double>::quiet_NaN() : s.lambda_n / s.lambda_k1;
  if (rho == 0.0) {
    s.upsilon = std::numeric_limits<double>::infinity();
  } else {
    s.upsilon = s.lambda_k1 / rho;
  }
  return s;
}

double rayleigh(const Eigen::MatrixXd& M, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (M.rows() != x.size() || M.cols() != x.size()) {
    throw std::invalid_argument("rayleigh: dimension mismatch");
  }
  const double nrm2 = x.squaredNorm();
  if (!(nrm2 > 0.0)) throw std::invalid_argument("rayleigh: zero vector");
  return x.dot(M * x) / nrm2;
}

std::vector<double> structure_residuals_part1(const Spectrum& spec, const Eigen::MatrixXd& C,
                                              Index k) {
  if (C.rows() != spec.size()) {
    throw std::invalid_argument("structure_residuals_part1: indicator rows do not match n");
  }
  if (k < 1 || k > spec.size()) throw std::invalid_argument("structure_residuals_part1: bad k");
  const Eigen::MatrixXd Vk = spec.bottom(k);
  const Eigen::MatrixXd residual = C - Vk * (Vk.transpose() * C);
  std::vector<double> out(static_cast<std::size_t>(C.cols()));
  for (Index i = 0; i < C.cols(); ++i) out[i] = residual.col(i).squaredNorm();
  return out;
}

double orthonormality_error(const Eigen::MatrixXd& basis) {
  if (basis.cols() == 0) return 0.0;
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  return (gram - Eigen::MatrixXd::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
}

double alignment_frobenius(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& C) {
  if (basis.rows() != C.rows()) {
    throw std::invalid_argument("alignment_frobenius: row count mismatch");
  }
  if (orthonormality_error(basis) > 1e-6) {
    throw std::invalid_argument("alignment_frobenius: basis is not orthonormal");
  }
  return (basis.transpose() * C).squaredNorm();
}

}  // namespace clsparse
