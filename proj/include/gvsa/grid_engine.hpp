#ifndef GVSA_GRID_ENGINE_HPP
#define GVSA_GRID_ENGINE_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace gvsa {

/// Fast exact filters for the regular-grid Gaussian kernel
/// w_ij = exp(-d_ij^2/4). Because squared Euclidean distance separates over
/// the axes, the kernel with unit diagonal factorizes as a Kronecker product
/// K = G1 (x) G2 (x) G3 of per-axis kernels, and W = K - I. All routines
/// below evaluate the same quantities as the dense formulas, reorganized
/// around that factorization; they are cross-checked against the dense path
/// in the tests.
class GridKernelEngine {
 public:
  explicit GridKernelEngine(std::array<Eigen::Index, 3> dims);

  Eigen::Index nodes() const { return n_; }

  /// K x = (I + W) x, the adjacency-with-self-loops filter.
  Eigen::VectorXd apply_adjacency_selfloops(const Eigen::VectorXd& x) const;

  /// K^3 x = (I + W)^3 x.
  Eigen::VectorXd apply_adjacency_selfloops_cubed(const Eigen::VectorXd& x) const;

  /// L x with L = D - W.
  Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& x) const;

  /// L^3 x.
  Eigen::VectorXd apply_laplacian_cubed(const Eigen::VectorXd& x) const;

  /// Per-sample local clustering of Delta = W o J with the pair-average
  /// node function: out_i = diag(Delta_(t)^3)_i for the sample column u.
  Eigen::VectorXd pair_average_clustering(const Eigen::VectorXd& u) const;

  /// Dense kernel matrix K = I + W (for heat kernels and cross-checks).
  const Eigen::MatrixXd& kernel() const { return kernel_; }
  Eigen::VectorXd degrees() const { return degrees_; }

 private:
  void kron_apply(const std::array<Eigen::MatrixXd, 3>& factors, const Eigen::VectorXd& x,
                  Eigen::VectorXd& out) const;
  // Columns: sum_{jk} K_ij (K diag(u) K)_ij f_j for f = u and f = u*u.
  Eigen::MatrixXd triangle_contract(const Eigen::VectorXd& u, const Eigen::VectorXd& u2) const;

  std::array<Eigen::Index, 3> dims_;
  Eigen::Index n_ = 0;
  std::array<Eigen::MatrixXd, 3> axis_kernel_;         // G_m, unit diagonal
  std::array<Eigen::MatrixXd, 3> axis_kernel_cubed_;   // G_m^3, so K^3 = G1^3 (x) G2^3 (x) G3^3
  std::array<Eigen::MatrixXd, 3> axis_kernel_sq_;      // G_m o G_m (Hadamard square)
  std::array<Eigen::MatrixXd, 3> pair_factor_;         // H_m[(i,j),k] = G_m(i,k) G_m(j,k)
  Eigen::MatrixXd kernel_;                             // dense K, row-major access via data()
  Eigen::MatrixXd triangle_base_;                      // K o K^2
  Eigen::VectorXd degrees_;                            // W row sums = K 1 - 1
  Eigen::VectorXd sq_row_sums_;                        // (K o K) 1

  // scratch for the pairwise-layout tensor contraction
  mutable std::vector<double> scratch_a_, scratch_b_;
  mutable Eigen::VectorXd scratch_r_;
};

}  // namespace gvsa

#endif
