#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "glingam/datagen.hpp"
#include "glingam/matrix_core.hpp"
#include "glingam/model.hpp"

namespace oracle {

inline Eigen::MatrixXd covariance_loops(const Eigen::MatrixXd& x) {
  const auto p = x.rows();
  const auto n = x.cols();
  std::vector<double> mean(static_cast<std::size_t>(p), 0.0);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index t = 0; t < n; ++t) mean[i] += x(i, t);
    mean[i] /= static_cast<double>(n);
  }
  Eigen::MatrixXd c(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) {
      double s = 0.0;
      for (Eigen::Index t = 0; t < n; ++t) s += (x(i, t) - mean[i]) * (x(j, t) - mean[j]);
      c(i, j) = s / static_cast<double>(n);
    }
  return c;
}

// Gauss-Jordan with partial pivoting on the augmented normal equations.
inline Eigen::MatrixXd solve_gauss_jordan(Eigen::MatrixXd a, Eigen::MatrixXd rhs) {
  const auto d = a.rows();
  for (Eigen::Index col = 0; col < d; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < d; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < 1e-300) throw std::runtime_error("singular system");
    a.row(col).swap(a.row(pivot));
    rhs.row(col).swap(rhs.row(pivot));
    const double inv = 1.0 / a(col, col);
    a.row(col) *= inv;
    rhs.row(col) *= inv;
    for (Eigen::Index r = 0; r < d; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      a.row(r) -= f * a.row(col);
      rhs.row(r) -= f * rhs.row(col);
    }
  }
  return rhs;
}

// Coefficients (targets x predictors) from X_P X_P^T c = X_P X_T^T.
inline Eigen::MatrixXd normal_equations(const Eigen::MatrixXd& predictors, const Eigen::MatrixXd& targets) {
  const Eigen::MatrixXd gram = predictors * predictors.transpose();
  const Eigen::MatrixXd cross = predictors * targets.transpose();
  return solve_gauss_jordan(gram, cross).transpose();
}

// With rows of M as variables and columns as independent sources, x_S is
// independent of the residuals iff no source loads on both.
inline double population_score(const glingam::DataMatrix& data, const glingam::IndexSet& s) {
  const glingam::DataMatrix r = glingam::residualize(data, s);
  const Eigen::MatrixXd xs = data.rows_of(s);
  for (int q = 0; q < data.n(); ++q) {
    const bool in_s = xs.col(q).cwiseAbs().maxCoeff() > 1e-9;
    const bool in_r = r.values().col(q).cwiseAbs().maxCoeff() > 1e-9;
    if (in_s && in_r) return 1.0;
  }
  return 0.0;
}

inline constexpr double kPopulationDelta = 0.5;

// Loadings of each variable on the independent sources.
inline glingam::DataMatrix population_matrix(const glingam::GeneratingProcess& process) {
  return glingam::DataMatrix(glingam::mixing_from_adjacency(process.truth.adjacency()) * process.noise.loading);
}

// ancestor[a][b]: block a reaches block b through directed edges.
inline std::vector<std::vector<char>> block_ancestry(const glingam::ChainGraphModel& truth) {
  const auto lvl = truth.ordering().block_of();
  const auto m = static_cast<std::size_t>(truth.ordering().size());
  std::vector<std::vector<char>> reach(m, std::vector<char>(m, 0));
  const auto& b = truth.adjacency();
  for (int i = 0; i < truth.p(); ++i)
    for (int j = 0; j < truth.p(); ++j)
      if (b(i, j) != 0.0 && lvl[j] != lvl[i]) reach[lvl[j]][lvl[i]] = 1;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t a = 0; a < m; ++a)
      if (reach[a][k])
        for (std::size_t c = 0; c < m; ++c)
          if (reach[k][c]) reach[a][c] = 1;
  return reach;
}

// (first, second) claims first is strictly earlier. Wrong if they share a
// true block or second's block is an ancestor of first's.
inline bool contradicts(const glingam::ChainGraphModel& truth, const std::vector<std::vector<char>>& ancestry,
                        std::pair<int, int> pair) {
  const auto lvl = truth.ordering().block_of();
  const int a = lvl[pair.first];
  const int b = lvl[pair.second];
  return a == b || ancestry[b][a];
}

// Exogenous sets of the full population system, as bitmasks (V included).
inline std::vector<unsigned> exogenous_sets(const glingam::DataMatrix& pop) {
  const int p = pop.p();
  std::vector<unsigned> out{(1u << p) - 1};
  for (unsigned mask = 1; mask + 1 < (1u << p); ++mask) {
    glingam::IndexSet s;
    for (int v = 0; v < p; ++v)
      if (mask >> v & 1u) s.push_back(v);
    if (population_score(pop, s) == 0.0) out.push_back(mask);
  }
  return out;
}

// True iff no valid ordering of the full system puts first strictly before
// second, i.e. every exogenous set holding first also holds second.
inline bool contradicts_every_ordering(const std::vector<unsigned>& exogenous, std::pair<int, int> pair) {
  for (unsigned mask : exogenous)
    if ((mask >> pair.first & 1u) && !(mask >> pair.second & 1u)) return false;
  return true;
}

}  // namespace oracle
