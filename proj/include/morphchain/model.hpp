#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morphchain/candidates.hpp"
#include "morphchain/corpus.hpp"
#include "morphchain/features.hpp"

namespace morphchain {

struct TrainConfig {
  double learning_rate = 0.05;
  std::uint64_t epochs = 50;
  double l2_lambda = 0.01;
  std::uint64_t top_k = 10000;
  std::int64_t seed = 0;
  double lr_decay = 1.0;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// Everything feature extraction needs, frozen at training time.
struct ModelResources {
  WordList words;
  EmbeddingTable embeddings;
  AffixLexicon lexicon;
  CorrelationTable correlations;
};

// Log-linear scorer over (word, candidate) pairs. Immutable in normal use and
// safe for concurrent readers; set_weights exists for tests and model loading.
class Model {
 public:
  using Weights = std::map<std::string, double>;

  Model() = default;
  Model(ModelResources resources, TrainConfig config)
      : resources_(std::move(resources)), config_(std::move(config)) {}

  const Weights& weights() const { return weights_; }

  // Replaces the weight vector. Throws std::invalid_argument on non-finite
  // values.
  void set_weights(Weights weights);

  const ModelResources& resources() const { return resources_; }
  const TrainConfig& config() const { return config_; }

  // Dot product of the weights with the pair's feature vector. Unknown
  // feature names contribute zero.
  double score(const std::string& word, const Candidate& cand) const;

  // Softmax of score over the word's candidate set, in candidate order.
  // Stabilized so no intermediate overflows.
  std::vector<std::pair<Candidate, double>> conditional(const std::string& word) const;

  // Contrastive log-likelihood of the words: per word, the log mass of its own
  // candidates minus the log mass over its transposition neighborhood
  // (including the word), minus l2_lambda times the squared weight norm. Words
  // with an empty neighborhood contribute only through the regularizer.
  double objective(const std::vector<std::string>& data) const;

  // Analytic gradient of objective: expected features under the word's own
  // softmax minus expected features under the neighborhood softmax, minus
  // 2 * l2_lambda * weights.
  Weights gradient(const std::vector<std::string>& data) const;

 private:
  ModelResources resources_;
  TrainConfig config_;
  Weights weights_;
};

struct TrainResult {
  Model model;
  // Objective before the first update, then after each epoch.
  std::vector<double> objective_trace;
};

// Full-batch gradient ascent from zero weights over the top_k most frequent
// words, with step learning_rate * lr_decay^epoch. Deterministic for fixed
// inputs. Throws std::runtime_error naming the epoch if the objective or
// gradient turns non-finite.
TrainResult train(ModelResources resources, TrainConfig config);

// Text format with a version line, a key=value config echo, and sections for
// weights, affix counts, correlations, the word list, and embeddings.
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace morphchain
