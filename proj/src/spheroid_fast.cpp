#include <cmath>

#include "gvsa/errors.hpp"
#include "gvsa/grid_engine.hpp"

namespace gvsa {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXd axis_gaussian(Eigen::Index d) {
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double diff = static_cast<double>(i - j);
      g(i, j) = std::exp(-diff * diff / 4.0);
    }
  }
  return g;
}

}  // namespace

GridKernelEngine::GridKernelEngine(std::array<Eigen::Index, 3> dims) : dims_(dims) {
  for (Eigen::Index d : dims_) {
    if (d < 1) throw ConfigError("GridKernelEngine: grid dimensions must be positive");
  }
  n_ = dims_[0] * dims_[1] * dims_[2];

  for (int m = 0; m < 3; ++m) {
    const Eigen::Index d = dims_[m];
    const Eigen::MatrixXd g = axis_gaussian(d);
    axis_kernel_[m] = g;
    axis_kernel_cubed_[m] = g * g * g;
    axis_kernel_sq_[m] = g.cwiseProduct(g);
    Eigen::MatrixXd h(d * d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) h(i * d + j, k) = g(i, k) * g(j, k);
      }
    }
    pair_factor_[m] = std::move(h);
  }

  const Eigen::Index a = dims_[0], b = dims_[1], c = dims_[2];
  kernel_.resize(n_, n_);
  for (Eigen::Index i = 0; i < n_; ++i) {
    const Eigen::Index i1 = i / (b * c), i2 = (i / c) % b, i3 = i % c;
    for (Eigen::Index j = 0; j < n_; ++j) {
      const Eigen::Index j1 = j / (b * c), j2 = (j / c) % b, j3 = j % c;
      kernel_(i, j) =
          axis_kernel_[0](i1, j1) * axis_kernel_[1](i2, j2) * axis_kernel_[2](i3, j3);
    }
  }
  triangle_base_ = kernel_.cwiseProduct(kernel_ * kernel_);
  degrees_ = kernel_.rowwise().sum().array() - 1.0;
  sq_row_sums_ = kernel_.cwiseProduct(kernel_).rowwise().sum();
}

void GridKernelEngine::kron_apply(const std::array<Eigen::MatrixXd, 3>& factors,
                                  const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
  const Eigen::Index a = dims_[0], b = dims_[1], c = dims_[2];
  const Eigen::Index r1 = factors[0].rows(), r2 = factors[1].rows(), r3 = factors[2].rows();
  scratch_a_.resize(static_cast<std::size_t>(a * b * r3));
  scratch_b_.resize(static_cast<std::size_t>(a * r2 * r3));

  Eigen::Map<const RowMat> in(x.data(), a * b, c);
  Eigen::Map<RowMat> t3(scratch_a_.data(), a * b, r3);
  t3.noalias() = in * factors[2].transpose();

  for (Eigen::Index k1 = 0; k1 < a; ++k1) {
    Eigen::Map<const RowMat> slab(scratch_a_.data() + k1 * b * r3, b, r3);
    Eigen::Map<RowMat> o(scratch_b_.data() + k1 * r2 * r3, r2, r3);
    o.noalias() = factors[1] * slab;
  }

  out.resize(r1 * r2 * r3);
  Eigen::Map<const RowMat> t2(scratch_b_.data(), a, r2 * r3);
  Eigen::Map<RowMat> o1(out.data(), r1, r2 * r3);
  o1.noalias() = factors[0] * t2;
}

Eigen::VectorXd GridKernelEngine::apply_adjacency_selfloops(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out;
  kron_apply(axis_kernel_, x, out);
  return out;
}

Eigen::VectorXd GridKernelEngine::apply_adjacency_selfloops_cubed(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out;
  kron_apply(axis_kernel_cubed_, x, out);
  return out;
}

Eigen::VectorXd GridKernelEngine::apply_laplacian(const Eigen::VectorXd& x) const {
  Eigen::VectorXd kx;
  kron_apply(axis_kernel_, x, kx);
  return degrees_.cwiseProduct(x) + x - kx;
}

Eigen::VectorXd GridKernelEngine::apply_laplacian_cubed(const Eigen::VectorXd& x) const {
  return apply_laplacian(apply_laplacian(apply_laplacian(x)));
}

Eigen::MatrixXd GridKernelEngine::triangle_contract(const Eigen::VectorXd& u,
                                                    const Eigen::VectorXd& u2) const {
  const Eigen::Index a = dims_[0], b = dims_[1], c = dims_[2];
  const Eigen::Index b2c2 = b * b * c * c, c2 = c * c;

  // R[(i1 a + j1), (i2 b + j2), (i3 c + j3)] = (K diag(u) K)_ij, built by three
  // small matrix products instead of an n x n x n contraction.
  kron_apply(pair_factor_, u, scratch_r_);

  Eigen::MatrixXd out(n_, 2);
  const double* ru = scratch_r_.data();
  for (Eigen::Index i = 0; i < n_; ++i) {
    const Eigen::Index i1 = i / (b * c), i2 = (i / c) % b, i3 = i % c;
    // K is symmetric, so column i doubles as row i and stays contiguous.
    const double* krow = kernel_.col(i).data();
    double acc1 = 0.0, acc2 = 0.0;
    for (Eigen::Index j1 = 0; j1 < a; ++j1) {
      const double* r1 = ru + (i1 * a + j1) * b2c2;
      const double* k1 = krow + j1 * b * c;
      for (Eigen::Index j2 = 0; j2 < b; ++j2) {
        const double* r2 = r1 + (i2 * b + j2) * c2 + i3 * c;
        const double* k2 = k1 + j2 * c;
        const double* uj = u.data() + (j1 * b + j2) * c;
        const double* u2j = u2.data() + (j1 * b + j2) * c;
        for (Eigen::Index j3 = 0; j3 < c; ++j3) {
          const double kb = k2[j3] * r2[j3];
          acc1 += kb * uj[j3];
          acc2 += kb * u2j[j3];
        }
      }
    }
    out(i, 0) = acc1;
    out(i, 1) = acc2;
  }
  return out;
}

Eigen::VectorXd GridKernelEngine::pair_average_clustering(const Eigen::VectorXd& u) const {
  if (u.size() != n_) throw ConfigError("pair_average_clustering: size mismatch");
  const Eigen::VectorXd u2 = u.cwiseProduct(u);
  const Eigen::VectorXd u3 = u2.cwiseProduct(u);

  // T(f,g)_i = sum_{jk} w_ij w_ik w_jk f_j g_k with w = K - I expands into
  // kernel-only contractions plus diagonal corrections:
  //   T(f,g) = N(f,g) - K2(f o g) - g o (K2 f) - f o (K2 g) + 2 f o g,
  // where N(f,g)_i = sum_j K_ij (K diag(g) K)_ij f_j and K2 = K o K.
  Eigen::VectorXd k2u, k2u2, k2u3;
  kron_apply(axis_kernel_sq_, u, k2u);
  kron_apply(axis_kernel_sq_, u2, k2u2);
  kron_apply(axis_kernel_sq_, u3, k2u3);

  // g = 1: N(f,1) = (K o K^2) f, precomputed dense.
  const Eigen::VectorXd t_u_1 =
      triangle_base_ * u - 2.0 * k2u - u.cwiseProduct(sq_row_sums_) + 2.0 * u;
  const Eigen::VectorXd t_u2_1 =
      triangle_base_ * u2 - 2.0 * k2u2 - u2.cwiseProduct(sq_row_sums_) + 2.0 * u2;

  const Eigen::MatrixXd n_uu = triangle_contract(u, u2);
  const Eigen::VectorXd t_u_u = n_uu.col(0) - k2u2 - 2.0 * u.cwiseProduct(k2u) + 2.0 * u2;
  const Eigen::VectorXd t_u2_u =
      n_uu.col(1) - k2u3 - u.cwiseProduct(k2u2) - u2.cwiseProduct(k2u) + 2.0 * u3;

  // C_loc for Delta_ij = w_ij (u_i + u_j)/2:
  return 0.25 * (u2.cwiseProduct(t_u_1) + u.cwiseProduct(t_u_u) + u.cwiseProduct(t_u2_1) +
                 t_u2_u);
}

}  // namespace gvsa
