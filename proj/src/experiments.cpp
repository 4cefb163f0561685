#include "gvsa/experiments.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gvsa/connectivity.hpp"
#include "gvsa/errors.hpp"
#include "gvsa/gsp.hpp"
#include "gvsa/rng.hpp"
#include "gvsa/tensor.hpp"

namespace gvsa {

namespace {

// Stream identifiers for derive_seed: every experiment owns a disjoint
// family of RNG streams keyed by (experiment, repetition, member, ...).
constexpr std::uint64_t kStreamArDetect = 1;
constexpr std::uint64_t kStreamSpheroid = 2;
constexpr std::uint64_t kStreamMoment = 3;

}  // namespace

Eigen::VectorXd ar2_generate(const ArModel& model, Eigen::Index length, Rng& rng) {
  if (length < 2) throw ConfigError("ar2_generate: length must be at least 2");
  if (model.burn_in < 0) throw ConfigError("ar2_generate: negative burn-in");
  if (!(model.phi1 + model.phi2 < 1.0)) throw ConfigError("ar2_generate: non-stationary model");
  if (model.noise_variance < 0.0) throw ConfigError("ar2_generate: negative noise variance");

  const double fixed_point = model.c0 / (1.0 - model.phi1 - model.phi2);
  const double sd = std::sqrt(model.noise_variance);
  double z1 = fixed_point;  // z(t-1)
  double z2 = fixed_point;  // z(t-2)
  Eigen::VectorXd out(length);
  for (Eigen::Index t = 0; t < model.burn_in + length; ++t) {
    const double z = model.c0 + model.phi1 * z1 + model.phi2 * z2 + sd * rng.gauss();
    z2 = z1;
    z1 = z;
    if (t >= model.burn_in) out(t - model.burn_in) = z;
  }
  return out;
}

Eigen::VectorXd ar2_generate(const ArModel& model, Eigen::Index length) {
  Rng rng(model.seed);
  return ar2_generate(model, length, rng);
}

GridWorld make_grid_world(std::array<Eigen::Index, 3> dims) {
  for (Eigen::Index d : dims) {
    if (d < 1) throw ConfigError("make_grid_world: dimensions must be positive");
  }
  const Eigen::Index n = dims[0] * dims[1] * dims[2];
  if (n < 2) throw ConfigError("make_grid_world: need at least 2 nodes");

  Eigen::Matrix<Eigen::Index, Eigen::Dynamic, 3> positions(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    positions(i, 0) = i / (dims[1] * dims[2]);
    positions(i, 1) = (i / dims[2]) % dims[1];
    positions(i, 2) = i % dims[2];
  }

  Eigen::MatrixXd w(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (int m = 0; m < 3; ++m) {
        const double diff = static_cast<double>(positions(i, m) - positions(j, m));
        d2 += diff * diff;
      }
      w(i, j) = w(j, i) = std::exp(-d2 / 4.0);
    }
  }

  std::vector<std::vector<Eigen::Index>> neighbors(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int m = 0; m < 3; ++m) {
      const Eigen::Index stride = m == 0 ? dims[1] * dims[2] : (m == 1 ? dims[2] : 1);
      if (positions(i, m) > 0) neighbors[i].push_back(i - stride);
      if (positions(i, m) < dims[m] - 1) neighbors[i].push_back(i + stride);
    }
  }

  return GridWorld{dims, std::move(positions), WeightedGraph(std::move(w), GraphKind::spatial),
                   std::move(neighbors)};
}

SpheroidTrace spheroid_generate(const GridWorld& world, double delta, Eigen::Index length,
                                std::uint64_t seed, double noise_sd) {
  if (delta < 0.0) throw ConfigError("spheroid_generate: delta must be nonnegative");
  if (length < 2) throw ConfigError("spheroid_generate: length must be at least 2");
  if (noise_sd < 0.0) throw ConfigError("spheroid_generate: negative noise level");

  const Eigen::Index n = world.graph.nodes();
  Rng rng(seed);
  const double sd = noise_sd;
  Eigen::MatrixXd x(n, length);
  for (Eigen::Index t = 0; t < length; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, t) = sd * rng.gauss();
  }

  std::vector<Eigen::Index> centers(static_cast<std::size_t>(length));
  centers[0] = static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
  for (Eigen::Index t = 1; t < length; ++t) {
    const auto& nb = world.neighbors[centers[t - 1]];
    centers[t] = nb[rng.uniform_index(nb.size())];
  }

  for (Eigen::Index t = 0; t < length; ++t) {
    x(centers[t], t) += delta;
    for (Eigen::Index j : world.neighbors[centers[t]]) x(j, t) += 0.75 * delta;
  }

  return SpheroidTrace{std::move(centers), MultivariateSignal(std::move(x), 1.0), delta,
                       noise_sd};
}

const char* to_string(Detector d) {
  switch (d) {
    case Detector::max_amplitude: return "max_amplitude";
    case Detector::local_clustering: return "local_clustering";
    case Detector::adjacency_selfloops: return "adjacency_selfloops";
    case Detector::adjacency_cubed: return "adjacency_cubed";
    case Detector::laplacian: return "laplacian";
    case Detector::laplacian_cubed: return "laplacian_cubed";
    case Detector::heat_kernel_1: return "heat_kernel_1";
    case Detector::heat_kernel_3: return "heat_kernel_3";
  }
  return "unknown";
}

SpheroidDetector::SpheroidDetector(const GridWorld& world)
    : world_(&world), engine_(world.dims) {
  // The heat-kernel baselines here are the elementwise exponentials of
  // -tau L, not the matrix exponential exp(-tau L) the gsp module builds:
  // the elementwise form is what reproduces the reference detection rates
  // this experiment is validated against.
  Eigen::MatrixXd l = -engine_.kernel();  // -W = I - K, so add I back on the diagonal
  l.diagonal().array() += 1.0;
  l.diagonal() += engine_.degrees();
  heat1_ = (-l).array().exp();
  heat3_ = (-3.0 * l).array().exp();
}

DetectionTable SpheroidDetector::detect(const SpheroidTrace& trace) const {
  const Eigen::MatrixXd& x = trace.signal.data();
  if (x.rows() != engine_.nodes()) throw ConfigError("SpheroidDetector: node count mismatch");
  const Eigen::Index p = x.cols();

  // The heat kernels are dense, so one matrix product per scale beats p
  // separate matrix-vector products.
  const Eigen::MatrixXd h1x = heat1_ * x;
  const Eigen::MatrixXd h3x = heat3_ * x;

  DetectionTable table;
  table.samples = p;
  std::array<Eigen::VectorXd, kDetectorCount> scores;
  for (Eigen::Index t = 0; t < p; ++t) {
    const Eigen::VectorXd col = x.col(t);
    scores[0] = col;
    scores[1] = engine_.pair_average_clustering(col);
    scores[2] = engine_.apply_adjacency_selfloops(col);
    scores[3] = engine_.apply_adjacency_selfloops_cubed(col);
    scores[4] = engine_.apply_laplacian(col);
    scores[5] = engine_.apply_laplacian_cubed(col);
    scores[6] = h1x.col(t);
    scores[7] = h3x.col(t);

    const Eigen::Index centre = trace.centers[t];
    const auto& nb = world_->neighbors[centre];
    for (int d = 0; d < kDetectorCount; ++d) {
      const Eigen::Index hit = argmax_lowest(scores[d]);
      if (hit == centre) {
        ++table.counts[d].centre;
        ++table.counts[d].any;
      } else {
        for (Eigen::Index j : nb) {
          if (hit == j) {
            ++table.counts[d].any;
            break;
          }
        }
      }
    }
  }
  return table;
}

DetectionTable spheroid_detect(const SpheroidTrace& trace, const GridWorld& world) {
  return SpheroidDetector(world).detect(trace);
}

std::vector<SpheroidSummary> run_spheroid_experiment(const GridWorld& world,
                                                     const std::vector<double>& deltas,
                                                     int seeds_per_delta, Eigen::Index length,
                                                     std::uint64_t base_seed,
                                                     double noise_sd) {
  if (deltas.empty()) throw ConfigError("run_spheroid_experiment: no delta values");
  if (seeds_per_delta < 1) throw ConfigError("run_spheroid_experiment: need at least one seed");

  SpheroidDetector detector(world);
  std::vector<SpheroidSummary> out;
  out.reserve(deltas.size());
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    SpheroidSummary summary;
    summary.delta = deltas[di];
    summary.per_seed.reserve(static_cast<std::size_t>(seeds_per_delta));
    std::array<Eigen::Index, kDetectorCount> centre_total{};
    std::array<Eigen::Index, kDetectorCount> any_total{};
    for (int s = 0; s < seeds_per_delta; ++s) {
      const std::uint64_t seed = derive_seed(
          base_seed, {kStreamSpheroid, static_cast<std::uint64_t>(di),
                      static_cast<std::uint64_t>(s)});
      const SpheroidTrace trace =
          spheroid_generate(world, deltas[di], length, seed, noise_sd);
      DetectionTable table = detector.detect(trace);
      for (int d = 0; d < kDetectorCount; ++d) {
        centre_total[d] += table.counts[d].centre;
        any_total[d] += table.counts[d].any;
      }
      summary.per_seed.push_back(std::move(table));
    }
    const double denom = static_cast<double>(seeds_per_delta) * static_cast<double>(length);
    for (int d = 0; d < kDetectorCount; ++d) {
      summary.centre_pct[d] = 100.0 * static_cast<double>(centre_total[d]) / denom;
      summary.any_pct[d] = 100.0 * static_cast<double>(any_total[d]) / denom;
    }
    out.push_back(std::move(summary));
  }
  return out;
}

MomentCheck triple_product_moment_check(double delta, double sigma, Eigen::Index samples,
                                        std::uint64_t seed) {
  if (samples < 2) throw ConfigError("triple_product_moment_check: need at least 2 samples");
  Rng rng(derive_seed(seed, {kStreamMoment}));
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (double& v : values) {
    const double xi = delta + sigma * rng.gauss();
    const double xj = delta + sigma * rng.gauss();
    const double xk = delta + sigma * rng.gauss();
    v = (xi + xj) * (xj + xk) * (xk + xi);
  }
  MomentCheck check;
  check.empirical_mean = mean(values);
  check.std_error = std::sqrt(sample_variance(values) / static_cast<double>(samples));
  check.printed_closed_form = 24.0 * sigma * sigma * delta + 40.0 * delta * delta * delta;
  // Raw-moment expansion of E[(x_i+x_j)(x_j+x_k)(x_k+x_i)] for i.i.d. factors:
  // 2 E[x]^3 + 6 E[x] E[x^2].
  const double mu = delta;
  const double second = sigma * sigma + delta * delta;
  check.raw_moment_expansion = 2.0 * mu * mu * mu + 6.0 * mu * second;
  return check;
}

const char* to_string(GvdMethod m) {
  switch (m) {
    case GvdMethod::raw_signal: return "raw_signal";
    case GvdMethod::gvd_squared_difference: return "gvd_sqd";
    case GvdMethod::gvd_instantaneous_correlation: return "gvd_ico";
  }
  return "unknown";
}

namespace {

/// Node GVD connectivity summed over all nodes and samples for the signal
/// matrix `x`, against the full-epoch correlation graph. Evaluated in closed
/// matrix form (the streaming path is the oracle in the tests):
///   sqd: sum_ijt c_ij (x~_i - x~_j)^2 = 2 r.a - 2 sum(C o G),
///        with G the Gram matrix of the node-normalized signal;
///   ico: sum_ijt c_ij |d_i d_j| = sum(C o (|D| |D|')).
double gvd_grand_total(const Eigen::MatrixXd& x, GvdMethod method) {
  if (method == GvdMethod::raw_signal) return x.sum();
  const MultivariateSignal signal(x, 1.0);
  const Eigen::MatrixXd c = correlation_matrix(signal).weights();
  if (method == GvdMethod::gvd_squared_difference) {
    const Eigen::MatrixXd xt = node_normalize(signal).data();
    const Eigen::VectorXd sq = xt.rowwise().squaredNorm();
    const Eigen::VectorXd r = c.rowwise().sum();
    return 2.0 * r.dot(sq) - 2.0 * c.cwiseProduct(xt * xt.transpose()).sum();
  }
  Eigen::MatrixXd d = x;
  d.colwise() -= d.rowwise().mean().eval();
  const Eigen::MatrixXd a = d.cwiseAbs();
  return c.cwiseProduct(a * a.transpose()).sum();
}

}  // namespace

CorrelatedSourceResult correlated_source_experiment(Eigen::Index h, Eigen::Index population,
                                                    std::uint64_t seed, Eigen::Index length) {
  if (h < 2) throw ConfigError("correlated_source_experiment: signal size must be >= 2");
  if (population < 2) throw ConfigError("correlated_source_experiment: population must be >= 2");
  if (length < 3) throw ConfigError("correlated_source_experiment: length too short");

  CorrelatedSourceResult result;
  for (auto& v : result.member_diffs) v.reserve(static_cast<std::size_t>(population));

  ArModel model;
  Eigen::MatrixXd z(2 * h, length);
  Eigen::MatrixXd uncorrelated(h, length);
  Eigen::MatrixXd correlated(h, length);
  for (Eigen::Index member = 0; member < population; ++member) {
    for (Eigen::Index r = 0; r < 2 * h; ++r) {
      Rng rng(derive_seed(seed, {kStreamArDetect, static_cast<std::uint64_t>(member),
                                 static_cast<std::uint64_t>(r)}));
      z.row(r) = ar2_generate(model, length, rng);
    }
    for (Eigen::Index i = 0; i < h; ++i) {
      uncorrelated.row(i) = 0.5 * (z.row(2 * i) + z.row(2 * i + 1));
    }
    correlated = uncorrelated;
    correlated.row(0) = 0.5 * (z.row(0) + z.row(2));  // shares the third realization with signal 2

    for (int m = 0; m < kGvdMethodCount; ++m) {
      const GvdMethod method = static_cast<GvdMethod>(m);
      result.member_diffs[m].push_back(gvd_grand_total(correlated, method) -
                                       gvd_grand_total(uncorrelated, method));
    }
  }

  for (int m = 0; m < kGvdMethodCount; ++m) {
    result.tests[m] = one_sample_ttest(result.member_diffs[m]);
  }
  return result;
}

ArDetectGrid run_ar_detect(const std::vector<Eigen::Index>& signal_sizes,
                           const std::vector<Eigen::Index>& populations, std::uint64_t seed,
                           Eigen::Index length) {
  if (signal_sizes.empty() || populations.empty()) {
    throw ConfigError("run_ar_detect: empty grid");
  }
  ArDetectGrid grid;
  grid.signal_sizes = signal_sizes;
  grid.populations = populations;
  for (auto& m : grid.p_values) {
    m.resize(static_cast<Eigen::Index>(populations.size()),
             static_cast<Eigen::Index>(signal_sizes.size()));
  }
  for (std::size_t pi = 0; pi < populations.size(); ++pi) {
    for (std::size_t hi = 0; hi < signal_sizes.size(); ++hi) {
      const std::uint64_t cell_seed =
          derive_seed(seed, {kStreamArDetect, static_cast<std::uint64_t>(signal_sizes[hi]),
                             static_cast<std::uint64_t>(populations[pi])});
      const CorrelatedSourceResult r = correlated_source_experiment(
          signal_sizes[hi], populations[pi], cell_seed, length);
      for (int m = 0; m < kGvdMethodCount; ++m) {
        grid.p_values[m](static_cast<Eigen::Index>(pi), static_cast<Eigen::Index>(hi)) =
            r.tests[m].degenerate ? 1.0 : r.tests[m].p_value;
      }
    }
  }
  return grid;
}

}  // namespace gvsa
