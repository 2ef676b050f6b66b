#include "erpavg/warp.hpp"

#include <algorithm>
#include <cmath>

#include "erpavg/types.hpp"

namespace erpavg {

CostMatrix build_cost_matrix(std::span<const double> reference,
                             std::span<const double> trial) {
  if (reference.size() != trial.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "reference and trial lengths differ: " + std::to_string(reference.size()) +
                    " vs " + std::to_string(trial.size()));
  }
  if (reference.empty()) {
    throw Error(ErrorCode::Empty, "cannot build a cost matrix from empty signals");
  }
  for (double v : reference) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite reference sample");
  }
  for (double v : trial) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite trial sample");
  }

  CostMatrix c;
  c.n = reference.size();
  c.values.resize(c.n * c.n);
  for (std::size_t i = 0; i < c.n; ++i) {
    double* row = c.values.data() + i * c.n;
    const double r = reference[i];
    for (std::size_t j = 0; j < c.n; ++j) {
      row[j] = std::abs(r - trial[j]);
    }
  }
  return c;
}

WarpPath optimal_path(const CostMatrix& c) {
  const std::size_t n = c.n;
  if (n == 0) throw Error(ErrorCode::Empty, "empty cost matrix");

  // Accumulated cost, including the start cell.
  std::vector<double> acc(n * n);
  acc[0] = c.values[0];
  for (std::size_t j = 1; j < n; ++j) acc[j] = c.values[j] + acc[j - 1];
  for (std::size_t i = 1; i < n; ++i) {
    const double* cost_row = c.values.data() + i * n;
    double* row = acc.data() + i * n;
    const double* prev = acc.data() + (i - 1) * n;
    row[0] = cost_row[0] + prev[0];
    for (std::size_t j = 1; j < n; ++j) {
      row[j] = cost_row[j] + std::min({prev[j - 1], prev[j], row[j - 1]});
    }
  }

  WarpPath path;
  path.total_cost = acc[n * n - 1];
  path.nodes.reserve(2 * n);
  std::size_t i = n - 1;
  std::size_t j = n - 1;
  path.nodes.push_back({i, j});
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = acc[(i - 1) * n + (j - 1)];
      const double up = acc[(i - 1) * n + j];
      const double left = acc[i * n + (j - 1)];
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    path.nodes.push_back({i, j});
  }
  std::reverse(path.nodes.begin(), path.nodes.end());
  return path;
}

RestrictedPath restrict_path(const WarpPath& p) {
  if (p.nodes.empty()) throw Error(ErrorCode::Empty, "empty warping path");
  RestrictedPath rp;
  rp.nodes.reserve(p.nodes.size());
  rp.nodes.push_back(p.nodes[0]);
  for (std::size_t k = 1; k < p.nodes.size(); ++k) {
    const PathNode& prev = p.nodes[k - 1];
    const PathNode& node = p.nodes[k];
    const bool advances_reference = node.i != prev.i;
    if (advances_reference) rp.nodes.push_back(node);
  }
  return rp;
}

std::vector<double> reconstruct(std::span<const double> trial,
                                const RestrictedPath& rp, std::size_t n_target) {
  if (rp.nodes.empty()) throw Error(ErrorCode::Empty, "empty restricted path");
  if (rp.nodes.size() > n_target) {
    throw Error(ErrorCode::IndexOutOfRange, "restricted path longer than target length");
  }
  std::vector<double> out;
  out.reserve(n_target);
  for (const PathNode& node : rp.nodes) {
    if (node.j >= trial.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "path trial index exceeds trial length");
    }
    out.push_back(trial[node.j]);
  }
  while (out.size() < n_target) out.push_back(out.back());
  return out;
}

std::vector<double> align_trial(std::span<const double> reference,
                                std::span<const double> trial) {
  const CostMatrix c = build_cost_matrix(reference, trial);
  const WarpPath p = optimal_path(c);
  const RestrictedPath rp = restrict_path(p);
  return reconstruct(trial, rp, reference.size());
}

}  // namespace erpavg
