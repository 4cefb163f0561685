#ifndef GVSA_EXPERIMENTS_HPP
#define GVSA_EXPERIMENTS_HPP

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "gvsa/grid_engine.hpp"
#include "gvsa/signal.hpp"
#include "gvsa/stats.hpp"

namespace gvsa {

/// Stationary AR(2) process z(t) = c0 + phi1 z(t-1) + phi2 z(t-2) + eps,
/// eps ~ N(0, noise_variance).
struct ArModel {
  double c0 = 0.5;
  double phi1 = 0.7;
  double phi2 = 0.25;
  double noise_variance = 0.1;
  Eigen::Index burn_in = 200;
  std::uint64_t seed = 0;
};

/// Generates `length` samples after the burn-in, starting the recursion at
/// the deterministic fixed point c0 / (1 - phi1 - phi2).
Eigen::VectorXd ar2_generate(const ArModel& model, Eigen::Index length);
Eigen::VectorXd ar2_generate(const ArModel& model, Eigen::Index length, class Rng& rng);

/// Regular 3D integer lattice with Gaussian kernel weights
/// w_ij = exp(-d_ij^2 / 4) on all node pairs.
struct GridWorld {
  std::array<Eigen::Index, 3> dims{};
  Eigen::Matrix<Eigen::Index, Eigen::Dynamic, 3> positions;  // lattice coordinates per node
  WeightedGraph graph;
  std::vector<std::vector<Eigen::Index>> neighbors;  // Euclidean distance exactly 1
};

GridWorld make_grid_world(std::array<Eigen::Index, 3> dims = {10, 10, 10});

/// A spheroid (centre + distance-1 shell) random-walking over background
/// noise: background i.i.d. N(0, noise_sd^2), +delta at the centre,
/// +3/4 delta at its distance-1 neighbors.
struct SpheroidTrace {
  std::vector<Eigen::Index> centers;  // s(t) per sample
  MultivariateSignal signal;
  double delta = 0.0;
  double noise_sd = 0.3;
};

SpheroidTrace spheroid_generate(const GridWorld& world, double delta, Eigen::Index length,
                                std::uint64_t seed, double noise_sd = 0.3);

enum class Detector {
  max_amplitude,
  local_clustering,       // C_loc of Delta_ijt = 1/2 w_ij (x_i + x_j)
  adjacency_selfloops,    // (I + W) X
  adjacency_cubed,        // (I + W)^3 X
  laplacian,              // (D - W) X
  laplacian_cubed,        // (D - W)^3 X
  heat_kernel_1,          // elementwise exp(-L) applied to X
  heat_kernel_3,          // elementwise exp(-3L) applied to X
};
inline constexpr int kDetectorCount = 8;
inline constexpr std::array<Detector, kDetectorCount> kDetectors = {
    Detector::max_amplitude,   Detector::local_clustering, Detector::adjacency_selfloops,
    Detector::adjacency_cubed, Detector::laplacian,        Detector::laplacian_cubed,
    Detector::heat_kernel_1,   Detector::heat_kernel_3};
const char* to_string(Detector d);

struct DetectionCounts {
  Eigen::Index centre = 0;  // argmax equals s(t)
  Eigen::Index any = 0;     // argmax equals s(t) or one of its distance-1 neighbors
};

struct DetectionTable {
  std::array<DetectionCounts, kDetectorCount> counts{};
  Eigen::Index samples = 0;
};

/// Per-sample argmax detection for all competing filters. Construction does
/// the world-dependent precomputation, so one detector can serve many
/// traces.
class SpheroidDetector {
 public:
  explicit SpheroidDetector(const GridWorld& world);
  DetectionTable detect(const SpheroidTrace& trace) const;
  const GridKernelEngine& engine() const { return engine_; }

 private:
  const GridWorld* world_;
  GridKernelEngine engine_;
  Eigen::MatrixXd heat1_, heat3_;  // elementwise exp(-L), exp(-3L)
};

DetectionTable spheroid_detect(const SpheroidTrace& trace, const GridWorld& world);

struct SpheroidSummary {
  double delta = 0.0;
  std::vector<DetectionTable> per_seed;
  std::array<double, kDetectorCount> centre_pct{};  // percentages over all seeds
  std::array<double, kDetectorCount> any_pct{};
};

std::vector<SpheroidSummary> run_spheroid_experiment(const GridWorld& world,
                                                     const std::vector<double>& deltas,
                                                     int seeds_per_delta, Eigen::Index length,
                                                     std::uint64_t base_seed,
                                                     double noise_sd = 0.3);

/// Monte-Carlo check of E[(x_i+x_j)(x_j+x_k)(x_k+x_i)] for i.i.d.
/// x ~ N(delta, sigma^2) against two candidate formulas.
struct MomentCheck {
  double empirical_mean = 0.0;
  double std_error = 0.0;
  double printed_closed_form = 0.0;   // 24 sigma^2 delta + 40 delta^3
  double raw_moment_expansion = 0.0;  // 2 mu^3 + 6 mu E[X^2] = 8 delta^3 + 6 sigma^2 delta
};

MomentCheck triple_product_moment_check(double delta, double sigma, Eigen::Index samples,
                                        std::uint64_t seed);

enum class GvdMethod {
  raw_signal,
  gvd_squared_difference,
  gvd_instantaneous_correlation,
};
inline constexpr int kGvdMethodCount = 3;
const char* to_string(GvdMethod m);

/// Correlated-source detection: each member builds an uncorrelated set
/// (consecutive disjoint pairs of 2h AR realizations averaged) and a
/// correlated set (first signal averages realizations 1 and 3). The member
/// scalar per method is the correlated-minus-uncorrelated difference of node
/// GVD connectivity summed over all nodes and samples (raw method: the plain
/// signal sum). One-sample t-tests run across the population.
struct CorrelatedSourceResult {
  std::array<std::vector<double>, kGvdMethodCount> member_diffs;
  std::array<TTestResult, kGvdMethodCount> tests;
};

CorrelatedSourceResult correlated_source_experiment(Eigen::Index h, Eigen::Index population,
                                                    std::uint64_t seed,
                                                    Eigen::Index length = 1000);

/// p-value grids over (population x signal size) per method.
struct ArDetectGrid {
  std::vector<Eigen::Index> signal_sizes;
  std::vector<Eigen::Index> populations;
  std::array<Eigen::MatrixXd, kGvdMethodCount> p_values;  // populations x signal_sizes
};

ArDetectGrid run_ar_detect(const std::vector<Eigen::Index>& signal_sizes,
                           const std::vector<Eigen::Index>& populations, std::uint64_t seed,
                           Eigen::Index length = 1000);

}  // namespace gvsa

#endif
