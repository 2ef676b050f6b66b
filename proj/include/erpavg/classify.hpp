#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "erpavg/pipeline.hpp"
#include "erpavg/types.hpp"

namespace erpavg {

// Template-distance features and a linear max-margin classifier: one
// L2-regularized hinge-loss model per class pair, trained by a deterministic
// 1/(lambda*t) subgradient schedule, predicting by majority vote.

using FeatureVector = std::vector<double>;

// Component c is the RMS of the trial against templates[c].
FeatureVector template_features(std::span<const double> trial,
                                std::span<const AverageSignal> templates);

struct PairClassifier {
  std::size_t class_a{0};  // positive side
  std::size_t class_b{0};
  std::vector<double> weights;
  double bias{0.0};
};

struct OvoLinearModel {
  std::vector<std::string> classes;   // sorted; index order is the tie order
  std::vector<double> feature_mean;   // z-score parameters from training data
  std::vector<double> feature_std;
  std::vector<PairClassifier> pairs;  // C*(C-1)/2, lexicographic pair order
  double lambda{0.0};
  std::size_t epochs{0};
  std::uint64_t seed{0};
};

OvoLinearModel train_ovo_linear(const std::vector<FeatureVector>& features,
                                const std::vector<std::string>& labels,
                                double lambda = 1e-2, std::size_t epochs = 200,
                                std::uint64_t seed = 0, int workers = 1);

// Majority vote over pairs; ties take the lowest class index.
std::size_t predict(const OvoLinearModel& model, const FeatureVector& features);

struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<int>> counts;  // rows: true class, columns: predicted

  int total() const;
};

struct CrossvalResult {
  double accuracy{0.0};  // mean of per-fold accuracies
  ConfusionMatrix confusion;
  std::vector<double> fold_accuracies;
};

// One template per class from the training trials only; for the DTW-based
// schemes the alignment reference is the conventional average of the same
// per-class training trials.
std::vector<AverageSignal> build_class_templates(const TrialSet& train,
                                                 std::span<const std::string> classes,
                                                 AverageScheme scheme,
                                                 CutoffMode cutoff = CutoffMode::fixed(30.0),
                                                 int workers = 1);

// Stratified k-fold cross-validation with fully train-side templates and
// feature standardization; test trials never touch template construction.
CrossvalResult crossvalidate(const TrialSet& ts, std::size_t k, AverageScheme scheme,
                             std::uint64_t seed,
                             CutoffMode cutoff = CutoffMode::fixed(30.0),
                             double lambda = 1e-2, std::size_t epochs = 200,
                             int workers = 1);

}  // namespace erpavg
