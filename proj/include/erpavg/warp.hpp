#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace erpavg {

// Length-constrained DTW alignment of a trial against a reference of equal
// length. The full warping path is found by dynamic programming with steps
// (1,1), (1,0), (0,1); nodes reached by steps that do not advance the
// reference index are then removed, which leaves exactly one trial sample per
// reference instant and keeps the reconstruction the same length as the
// reference.

struct CostMatrix {
  std::vector<double> values;  // row-major, n x n
  std::size_t n{0};

  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

// Path indices are 0-based here; narrative docs and file formats are
// index-free.
struct PathNode {
  std::size_t i{0};  // reference index
  std::size_t j{0};  // trial index

  bool operator==(const PathNode&) const = default;
};

struct WarpPath {
  std::vector<PathNode> nodes;
  double total_cost{0.0};
};

struct RestrictedPath {
  std::vector<PathNode> nodes;
};

// values[i][j] = |reference[i] - trial[j]|.
CostMatrix build_cost_matrix(std::span<const double> reference,
                             std::span<const double> trial);

// Minimum accumulated cost path from (0,0) to (n-1,n-1); the start cell cost
// counts. Ties in backtracking prefer (1,1) over (1,0) over (0,1).
WarpPath optimal_path(const CostMatrix& c);

// Drops every node reached by a (0,1) step, keeping the first node that
// reached each reference index.
RestrictedPath restrict_path(const WarpPath& p);

// output[i] = trial[j_i] per node; if the path covers fewer than n_target
// reference indices the last emitted sample is repeated to length n_target.
std::vector<double> reconstruct(std::span<const double> trial,
                                const RestrictedPath& rp, std::size_t n_target);

// Full alignment: cost matrix -> optimal path -> restriction -> reconstruction.
std::vector<double> align_trial(std::span<const double> reference,
                                std::span<const double> trial);

}  // namespace erpavg
