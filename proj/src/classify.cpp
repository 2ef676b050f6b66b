#include "erpavg/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "erpavg/metrics.hpp"
#include "erpavg/parallel.hpp"
#include "erpavg/rng.hpp"

namespace erpavg {

namespace {

std::vector<std::string> sorted_classes(const std::vector<std::string>& labels) {
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.count("")) {
    throw Error(ErrorCode::DegenerateClass, "unlabeled sample in training data");
  }
  return {unique.begin(), unique.end()};
}

std::size_t class_index(const std::vector<std::string>& classes, const std::string& label) {
  const auto it = std::lower_bound(classes.begin(), classes.end(), label);
  if (it == classes.end() || *it != label) {
    throw Error(ErrorCode::DegenerateClass, "label not present in the model: " + label);
  }
  return static_cast<std::size_t>(it - classes.begin());
}

std::vector<double> standardize(const OvoLinearModel& model, const FeatureVector& x) {
  std::vector<double> z(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    z[d] = (x[d] - model.feature_mean[d]) / model.feature_std[d];
  }
  return z;
}

}  // namespace

FeatureVector template_features(std::span<const double> trial,
                                std::span<const AverageSignal> templates) {
  if (templates.empty()) throw Error(ErrorCode::Empty, "no class templates");
  FeatureVector features;
  features.reserve(templates.size());
  for (const AverageSignal& tmpl : templates) {
    features.push_back(rms_to_average(trial, tmpl));
  }
  return features;
}

OvoLinearModel train_ovo_linear(const std::vector<FeatureVector>& features,
                                const std::vector<std::string>& labels,
                                double lambda, std::size_t epochs, std::uint64_t seed,
                                int workers) {
  if (features.empty() || features.size() != labels.size()) {
    throw Error(ErrorCode::Empty, "features and labels must be non-empty and aligned");
  }
  const std::size_t dims = features[0].size();
  for (const FeatureVector& x : features) {
    if (x.size() != dims) {
      throw Error(ErrorCode::LengthMismatch, "inconsistent feature dimensionality");
    }
  }
  if (!(lambda > 0.0) || epochs == 0) {
    throw Error(ErrorCode::BadSpec, "lambda must be positive and epochs nonzero");
  }

  OvoLinearModel model;
  model.classes = sorted_classes(labels);
  if (model.classes.size() < 2) {
    throw Error(ErrorCode::DegenerateClass, "need at least two classes");
  }
  model.lambda = lambda;
  model.epochs = epochs;
  model.seed = seed;

  model.feature_mean.assign(dims, 0.0);
  model.feature_std.assign(dims, 0.0);
  for (const FeatureVector& x : features) {
    for (std::size_t d = 0; d < dims; ++d) model.feature_mean[d] += x[d];
  }
  for (std::size_t d = 0; d < dims; ++d) {
    model.feature_mean[d] /= static_cast<double>(features.size());
  }
  for (const FeatureVector& x : features) {
    for (std::size_t d = 0; d < dims; ++d) {
      const double diff = x[d] - model.feature_mean[d];
      model.feature_std[d] += diff * diff;
    }
  }
  for (std::size_t d = 0; d < dims; ++d) {
    model.feature_std[d] = std::sqrt(model.feature_std[d] / static_cast<double>(features.size()));
    if (model.feature_std[d] == 0.0) model.feature_std[d] = 1.0;  // constant dimension
  }

  std::vector<std::vector<double>> standardized(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    standardized[i] = standardize(model, features[i]);
  }
  std::vector<std::size_t> label_indices(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    label_indices[i] = class_index(model.classes, labels[i]);
  }

  const std::size_t n_classes = model.classes.size();
  for (std::size_t a = 0; a < n_classes; ++a) {
    for (std::size_t b = a + 1; b < n_classes; ++b) {
      model.pairs.push_back({a, b, std::vector<double>(dims, 0.0), 0.0});
    }
  }

  // Pairwise models are independent; each has its own sub-stream.
  parallel_for(model.pairs.size(), workers, [&](std::size_t p) {
    PairClassifier& pair = model.pairs[p];
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < label_indices.size(); ++i) {
      if (label_indices[i] == pair.class_a || label_indices[i] == pair.class_b) {
        members.push_back(i);
      }
    }
    bool has_a = false;
    bool has_b = false;
    for (std::size_t i : members) {
      if (label_indices[i] == pair.class_a) has_a = true;
      if (label_indices[i] == pair.class_b) has_b = true;
    }
    if (!has_a || !has_b) {
      throw Error(ErrorCode::DegenerateClass, "a class has no training samples");
    }

    rng::SplitMix64 gen(rng::sub_seed(seed, rng::kStreamTrain + p));
    std::size_t step = 1;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
      gen.shuffle(members);
      for (std::size_t i : members) {
        const double y = label_indices[i] == pair.class_a ? 1.0 : -1.0;
        const std::vector<double>& x = standardized[i];
        const double eta = 1.0 / (lambda * static_cast<double>(step));
        double margin = pair.bias;
        for (std::size_t d = 0; d < dims; ++d) margin += pair.weights[d] * x[d];
        margin *= y;

        const double shrink = 1.0 - eta * lambda;
        for (double& w : pair.weights) w *= shrink;
        if (margin < 1.0) {
          for (std::size_t d = 0; d < dims; ++d) pair.weights[d] += eta * y * x[d];
          pair.bias += eta * y;
        }
        ++step;
      }
    }
  });
  return model;
}

std::size_t predict(const OvoLinearModel& model, const FeatureVector& features) {
  if (features.size() != model.feature_mean.size()) {
    throw Error(ErrorCode::LengthMismatch, "feature dimensionality differs from the model");
  }
  const std::vector<double> z = standardize(model, features);
  std::vector<int> votes(model.classes.size(), 0);
  for (const PairClassifier& pair : model.pairs) {
    double score = pair.bias;
    for (std::size_t d = 0; d < z.size(); ++d) score += pair.weights[d] * z[d];
    ++votes[score >= 0.0 ? pair.class_a : pair.class_b];
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < votes.size(); ++c) {
    if (votes[c] > votes[best]) best = c;  // ties keep the lowest index
  }
  return best;
}

int ConfusionMatrix::total() const {
  int sum = 0;
  for (const std::vector<int>& row : counts) {
    sum = std::accumulate(row.begin(), row.end(), sum);
  }
  return sum;
}

std::vector<AverageSignal> build_class_templates(const TrialSet& train,
                                                 std::span<const std::string> classes,
                                                 AverageScheme scheme, CutoffMode cutoff,
                                                 int workers) {
  std::vector<AverageSignal> templates;
  templates.reserve(classes.size());
  for (const std::string& label : classes) {
    TrialSet subset = train;
    subset.trials.clear();
    for (const Trial& trial : train.trials) {
      if (trial.label == label) subset.trials.push_back(trial);
    }
    if (subset.trials.empty()) {
      throw Error(ErrorCode::DegenerateClass, "no training trials for class " + label);
    }
    const AverageSignal reference = conventional_average(subset);
    switch (scheme) {
      case AverageScheme::Conventional:
        templates.push_back(reference);
        break;
      case AverageScheme::Dtw:
        templates.push_back(dtw_average(subset, reference, workers).average);
        break;
      case AverageScheme::FilteredDtw:
        templates.push_back(filtered_dtw_average(subset, reference, cutoff, workers).average);
        break;
    }
  }
  return templates;
}

CrossvalResult crossvalidate(const TrialSet& ts, std::size_t k, AverageScheme scheme,
                             std::uint64_t seed, CutoffMode cutoff, double lambda,
                             std::size_t epochs, int workers) {
  validate_trialset(ts);
  if (!ts.has_labels()) {
    throw Error(ErrorCode::DegenerateClass, "cross-validation requires labeled trials");
  }
  std::vector<std::string> labels;
  labels.reserve(ts.n_trials());
  for (const Trial& trial : ts.trials) labels.push_back(trial.label);
  const std::vector<std::string> classes = sorted_classes(labels);

  CrossvalResult result;
  result.confusion.classes = classes;
  result.confusion.counts.assign(classes.size(), std::vector<int>(classes.size(), 0));

  const std::vector<Fold> folds = kfold(ts, k, seed);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const std::vector<AverageSignal> templates =
        build_class_templates(folds[f].train, classes, scheme, cutoff, workers);

    std::vector<FeatureVector> train_features;
    std::vector<std::string> train_labels;
    train_features.reserve(folds[f].train.n_trials());
    for (const Trial& trial : folds[f].train.trials) {
      train_features.push_back(template_features(trial.samples, templates));
      train_labels.push_back(trial.label);
    }
    const OvoLinearModel model =
        train_ovo_linear(train_features, train_labels, lambda, epochs,
                         rng::sub_seed(seed, rng::kStreamTrain + 1000 + f), workers);

    std::size_t correct = 0;
    for (const Trial& trial : folds[f].held_out.trials) {
      const std::size_t predicted = predict(model, template_features(trial.samples, templates));
      const std::size_t truth = class_index(classes, trial.label);
      ++result.confusion.counts[truth][predicted];
      if (predicted == truth) ++correct;
    }
    result.fold_accuracies.push_back(static_cast<double>(correct) /
                                     static_cast<double>(folds[f].held_out.n_trials()));
  }

  result.accuracy = std::accumulate(result.fold_accuracies.begin(),
                                    result.fold_accuracies.end(), 0.0) /
                    static_cast<double>(result.fold_accuracies.size());
  return result;
}

}  // namespace erpavg
