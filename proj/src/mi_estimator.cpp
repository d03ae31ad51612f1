#include "glingam/mi_estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "glingam/errors.hpp"

namespace glingam {

namespace {

constexpr double kJitter = 1e-10;
constexpr double kEulerGamma = 0.57721566490153286061;

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Hash of a standardized value at float precision, so last-ulp differences
// from rescaling or reordering the samples map to the same key.
std::uint64_t value_key(double v) {
  return mix64(std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

double unit_interval(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

// Unit-variance rows of x followed by rows of y, stored sample-major.
struct Standardized {
  int n = 0;
  int dims = 0;
  std::vector<double> values;  // values[i * dims + c]
};

Standardized standardize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  Standardized out;
  out.n = static_cast<int>(x.cols());
  out.dims = static_cast<int>(x.rows() + y.rows());
  out.values.resize(static_cast<std::size_t>(out.n) * out.dims);

  std::vector<std::uint64_t> coord_key(static_cast<std::size_t>(out.dims), 0);
  std::vector<std::uint64_t> sample_key(static_cast<std::size_t>(out.n), 0);
  for (int c = 0; c < out.dims; ++c) {
    const auto row = c < x.rows() ? x.row(c) : y.row(c - x.rows());
    const double mean = row.mean();
    const double var = (row.array() - mean).square().mean();
    const double sd = std::sqrt(var);
    const double max_abs = row.cwiseAbs().maxCoeff();
    if (!(sd > 1e-10) || !(sd > 1e-12 * max_abs))
      throw DegenerateInputError("mutual information input has a zero-variance coordinate");
    for (int i = 0; i < out.n; ++i) {
      const double z = (row(i) - mean) / sd;
      out.values[static_cast<std::size_t>(i) * out.dims + c] = z;
      const std::uint64_t key = value_key(z);
      coord_key[c] += key;
      sample_key[i] += key;
    }
  }
  for (int c = 0; c < out.dims; ++c) {
    const std::uint64_t ck = mix64(coord_key[c]);
    for (int i = 0; i < out.n; ++i) {
      const double u = unit_interval(mix64(sample_key[i] ^ ck));
      out.values[static_cast<std::size_t>(i) * out.dims + c] += kJitter * (2.0 * u - 1.0);
    }
  }
  return out;
}

// For samples [begin, end): marginal neighbor counts strictly inside the
// distance to the k-th joint neighbor.
void count_neighbors(const Standardized& z, int dx, int k, int begin, int end, std::vector<int>& nx,
                     std::vector<int>& ny) {
  const int n = z.n;
  const int dims = z.dims;
  std::vector<double> dist_x(static_cast<std::size_t>(n));
  std::vector<double> dist_y(static_cast<std::size_t>(n));
  std::vector<double> joint(static_cast<std::size_t>(n));
  for (int i = begin; i < end; ++i) {
    const double* zi = &z.values[static_cast<std::size_t>(i) * dims];
    for (int j = 0; j < n; ++j) {
      const double* zj = &z.values[static_cast<std::size_t>(j) * dims];
      double ax = 0.0;
      for (int c = 0; c < dx; ++c) ax = std::max(ax, std::abs(zi[c] - zj[c]));
      double ay = 0.0;
      for (int c = dx; c < dims; ++c) ay = std::max(ay, std::abs(zi[c] - zj[c]));
      dist_x[j] = ax;
      dist_y[j] = ay;
      joint[j] = std::max(ax, ay);
    }
    joint[i] = std::numeric_limits<double>::infinity();
    std::nth_element(joint.begin(), joint.begin() + (k - 1), joint.end());
    const double eps = joint[k - 1];
    int cx = 0;
    int cy = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      cx += dist_x[j] < eps;
      cy += dist_y[j] < eps;
    }
    nx[i] = cx;
    ny[i] = cy;
  }
}

}  // namespace

int default_k(int n) {
  const int k = static_cast<int>(std::lround(0.05 * static_cast<double>(n)));
  return std::max(1, std::min(k, n - 1));
}

double mutual_information(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const MiConfig& cfg) {
  if (x.cols() != y.cols()) throw InvalidInputError("X and Y have different sample counts");
  if (x.rows() < 1 || y.rows() < 1) throw InvalidInputError("X and Y need at least one coordinate");
  const int n = static_cast<int>(x.cols());
  if (cfg.k < 1) throw InvalidInputError("neighbor count must be positive");
  if (n <= cfg.k) throw InvalidInputError("sample count must exceed the neighbor count");

  const Standardized z = standardize(x, y);
  const int dx = static_cast<int>(x.rows());

  std::vector<int> nx(static_cast<std::size_t>(n));
  std::vector<int> ny(static_cast<std::size_t>(n));
  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, n / 64));
  if (threads == 1) {
    count_neighbors(z, dx, cfg.k, 0, n, nx, ny);
  } else {
    std::vector<std::jthread> workers;
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(n, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&, begin, end] { count_neighbors(z, dx, cfg.k, begin, end, nx, ny); });
    }
  }

  // digamma(m + 1) for m = 0..n, and a count histogram so the average does
  // not depend on sample order or thread partitioning.
  std::vector<double> psi(static_cast<std::size_t>(n) + 2);
  psi[1] = -kEulerGamma;
  for (int m = 1; m <= n; ++m) psi[m + 1] = psi[m] + 1.0 / m;
  std::vector<long long> hist_x(static_cast<std::size_t>(n) + 1, 0);
  std::vector<long long> hist_y(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    ++hist_x[nx[i]];
    ++hist_y[ny[i]];
  }
  double sum_x = 0.0;
  double sum_y = 0.0;
  for (int m = 0; m <= n; ++m) {
    sum_x += static_cast<double>(hist_x[m]) * psi[m + 1];
    sum_y += static_cast<double>(hist_y[m]) * psi[m + 1];
  }
  return psi[cfg.k] + psi[n] - (sum_x + sum_y) / n;
}

}  // namespace glingam
