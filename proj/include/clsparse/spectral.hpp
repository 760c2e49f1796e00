#pragma once

#include <vector>

#include <Eigen/Dense>

#include "clsparse/graph.hpp"

namespace clsparse {

// Ascending eigenvalues of a symmetric matrix with orthonormal eigenvectors;
// column i of `vectors` pairs with values[i].
struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  Index size() const { return values.size(); }
  // First k columns (bottom eigenvectors).
  Eigen::MatrixXd bottom(Index k) const { return vectors.leftCols(k); }
  // Last n - k columns (dominant eigenvectors).
  Eigen::MatrixXd top(Index k) const { return vectors.rightCols(size() - k); }
};

// Dense symmetric eigensolve. Throws std::invalid_argument if M is not
// symmetric to 1e-9 (relative to its largest entry) and std::runtime_error if
// the solver does not converge.
Spectrum eig_sym(const Eigen::MatrixXd& M);

// Convenience: spectrum of the chosen Laplacian of g.
Spectrum laplacian_spectrum(const Graph& g, LaplacianVariant variant,
                            IsolatedVertexPolicy policy = IsolatedVertexPolicy::Reject);

struct StructureStats {
  Index k = 0;
  double rho = 0.0;
  double lambda_k = 0.0;   // lambda_k, the last bottom eigenvalue
  double lambda_k1 = 0.0;  // lambda_{k+1}
  double lambda_n = 0.0;
  double upsilon = 0.0;    // lambda_{k+1} / rho, +inf when rho == 0
  double kappa = 0.0;      // lambda_n / lambda_{k+1}, NaN when lambda_{k+1} is zero

  bool upsilon_finite() const;
  bool kappa_defined() const;
  double gap() const { return lambda_k1 - lambda_k; }
  // k / upsilon, 0 when upsilon is infinite.
  double k_over_upsilon() const;
};

// Eigenvalues at or below this fraction of max(1, lambda_n) count as zero.
inline constexpr double kZeroEigenvalueTolerance = 1e-10;

StructureStats structure_stats(const Spectrum& spec, double rho, Index k);

// x^T M x / ||x||^2.
double rayleigh(const Eigen::MatrixXd& M, const Eigen::Ref<const Eigen::VectorXd>& x);

// ||c_i - V_k V_k^T c_i||^2 for every indicator column.
std::vector<double> structure_residuals_part1(const Spectrum& spec, const Eigen::MatrixXd& C,
                                              Index k);

// ||B^T C||_F^2 for an orthonormal basis B (n x d). Throws if B is not
// orthonormal to 1e-6.
double alignment_frobenius(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& C);

// max |B^T B - I| entry.
double orthonormality_error(const Eigen::MatrixXd& basis);

}  // namespace clsparse
