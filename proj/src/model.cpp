#include "morphchain/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace morphchain {

namespace {

// Assigns dense ids to feature names in first-encounter order.
struct FeatureIndex {
  std::map<std::string, std::size_t> ids;
  std::vector<std::string> names;

  std::size_t intern(const std::string& name) {
    auto [it, inserted] = ids.emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  }
};

using SparseVec = std::vector<std::pair<std::size_t, double>>;

// One training word: feature vectors for its own candidates and for every
// candidate of its transposition neighbors.
struct WordBlock {
  std::vector<SparseVec> own;
  std::vector<SparseVec> hood;
};

SparseVec intern_features(const FeatureVector& fv, FeatureIndex& index) {
  SparseVec out;
  out.reserve(fv.size());
  for (const auto& [name, value] : fv) out.emplace_back(index.intern(name), value);
  return out;
}

std::vector<SparseVec> candidate_features(const std::string& word, const ModelResources& res,
                                          FeatureIndex& index) {
  std::vector<SparseVec> out;
  for (const auto& cand : generate_candidates(word, res.words)) {
    out.push_back(intern_features(
        extract_features(word, cand, res.lexicon, res.correlations, res.words, res.embeddings),
        index));
  }
  return out;
}

// Words with an empty neighborhood are dropped here: their own mass equals
// their contrast mass, so they cannot move the objective or the gradient.
std::vector<WordBlock> build_blocks(const std::vector<std::string>& data,
                                    const ModelResources& res, FeatureIndex& index) {
  std::vector<WordBlock> blocks;
  for (const auto& word : data) {
    const Neighborhood hood = generate_neighbors(word);
    if (hood.members.empty()) continue;
    WordBlock block;
    block.own = candidate_features(word, res, index);
    for (const auto& neighbor : hood.members) {
      for (auto& feats : candidate_features(neighbor, res, index)) {
        block.hood.push_back(std::move(feats));
      }
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

double dot(const SparseVec& feats, const std::vector<double>& theta) {
  double s = 0.0;
  for (const auto& [id, value] : feats) s += theta[id] * value;
  return s;
}

void scores_of(const std::vector<SparseVec>& cands, const std::vector<double>& theta,
               std::vector<double>& out) {
  out.clear();
  out.reserve(cands.size());
  for (const auto& feats : cands) out.push_back(dot(feats, theta));
}

double max_of(const std::vector<double>& a, const std::vector<double>& b) {
  double m = -std::numeric_limits<double>::infinity();
  for (double s : a) m = std::max(m, s);
  for (double s : b) m = std::max(m, s);
  return m;
}

// log(sum over both score lists of e^s), stabilized by max subtraction.
double log_sum_exp(const std::vector<double>& a, const std::vector<double>& b) {
  const double m = max_of(a, b);
  double sum = 0.0;
  for (double s : a) sum += std::exp(s - m);
  for (double s : b) sum += std::exp(s - m);
  return m + std::log(sum);
}

struct BlockWork {
  std::vector<double> own_scores;
  std::vector<double> hood_scores;
};

double block_objective(const WordBlock& block, const std::vector<double>& theta,
                       BlockWork& work) {
  scores_of(block.own, theta, work.own_scores);
  scores_of(block.hood, theta, work.hood_scores);
  const std::vector<double> empty;
  return log_sum_exp(work.own_scores, empty) -
         log_sum_exp(work.own_scores, work.hood_scores);
}

// Adds E[φ] under the word's own softmax and subtracts E[φ] under the
// neighborhood softmax.
void add_block_gradient(const WordBlock& block, const std::vector<double>& theta,
                        BlockWork& work, std::vector<double>& grad) {
  scores_of(block.own, theta, work.own_scores);
  scores_of(block.hood, theta, work.hood_scores);

  const std::vector<double> empty;
  const double own_max = max_of(work.own_scores, empty);
  double own_z = 0.0;
  for (double s : work.own_scores) own_z += std::exp(s - own_max);
  for (std::size_t i = 0; i < block.own.size(); ++i) {
    const double p = std::exp(work.own_scores[i] - own_max) / own_z;
    for (const auto& [id, value] : block.own[i]) grad[id] += p * value;
  }

  const double all_max = max_of(work.own_scores, work.hood_scores);
  double all_z = 0.0;
  for (double s : work.own_scores) all_z += std::exp(s - all_max);
  for (double s : work.hood_scores) all_z += std::exp(s - all_max);
  for (std::size_t i = 0; i < block.own.size(); ++i) {
    const double q = std::exp(work.own_scores[i] - all_max) / all_z;
    for (const auto& [id, value] : block.own[i]) grad[id] -= q * value;
  }
  for (std::size_t i = 0; i < block.hood.size(); ++i) {
    const double q = std::exp(work.hood_scores[i] - all_max) / all_z;
    for (const auto& [id, value] : block.hood[i]) grad[id] -= q * value;
  }
}

std::vector<double> dense_weights(const Model::Weights& weights, const FeatureIndex& index) {
  std::vector<double> theta(index.names.size(), 0.0);
  for (std::size_t i = 0; i < index.names.size(); ++i) {
    auto it = weights.find(index.names[i]);
    if (it != weights.end()) theta[i] = it->second;
  }
  return theta;
}

void require_data(const std::vector<std::string>& data) {
  if (data.empty()) throw std::invalid_argument("at least one word is required");
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be a positive finite number");
  }
  if (!(l2_lambda >= 0.0) || !std::isfinite(l2_lambda)) {
    throw std::invalid_argument("l2_lambda must be a non-negative finite number");
  }
  if (top_k == 0) throw std::invalid_argument("top_k must be at least 1");
  if (!(lr_decay > 0.0) || !std::isfinite(lr_decay)) {
    throw std::invalid_argument("lr_decay must be a positive finite number");
  }
}

void Model::set_weights(Weights weights) {
  for (const auto& [name, value] : weights) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument("non-finite weight for feature '" + name + "'");
    }
  }
  weights_ = std::move(weights);
}

double Model::score(const std::string& word, const Candidate& cand) const {
  const FeatureVector fv = extract_features(word, cand, resources_.lexicon,
                                            resources_.correlations, resources_.words,
                                            resources_.embeddings);
  double s = 0.0;
  for (const auto& [name, value] : fv) {
    auto it = weights_.find(name);
    if (it != weights_.end()) s += it->second * value;
  }
  return s;
}

std::vector<std::pair<Candidate, double>> Model::conditional(const std::string& word) const {
  if (word.empty()) throw std::invalid_argument("cannot score an empty word");
  std::vector<Candidate> cands = generate_candidates(word, resources_.words);
  std::vector<double> scores;
  scores.reserve(cands.size());
  for (const auto& cand : cands) scores.push_back(score(word, cand));
  const double m = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  for (double s : scores) z += std::exp(s - m);
  std::vector<std::pair<Candidate, double>> out;
  out.reserve(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    out.emplace_back(std::move(cands[i]), std::exp(scores[i] - m) / z);
  }
  return out;
}

double Model::objective(const std::vector<std::string>& data) const {
  require_data(data);
  FeatureIndex index;
  const std::vector<WordBlock> blocks = build_blocks(data, resources_, index);
  const std::vector<double> theta = dense_weights(weights_, index);
  BlockWork work;
  double total = 0.0;
  for (const auto& block : blocks) total += block_objective(block, theta, work);
  double norm = 0.0;
  for (const auto& [name, value] : weights_) norm += value * value;
  return total - config_.l2_lambda * norm;
}

Model::Weights Model::gradient(const std::vector<std::string>& data) const {
  require_data(data);
  FeatureIndex index;
  const std::vector<WordBlock> blocks = build_blocks(data, resources_, index);
  const std::vector<double> theta = dense_weights(weights_, index);
  std::vector<double> grad(index.names.size(), 0.0);
  BlockWork work;
  for (const auto& block : blocks) add_block_gradient(block, theta, work, grad);
  Weights out;
  for (std::size_t i = 0; i < index.names.size(); ++i) out[index.names[i]] = grad[i];
  for (const auto& [name, value] : weights_) out[name] -= 2.0 * config_.l2_lambda * value;
  return out;
}

TrainResult train(ModelResources resources, TrainConfig config) {
  config.validate();
  if (resources.words.empty()) throw std::invalid_argument("cannot train on an empty word list");

  const std::vector<std::string>& ranked = resources.words.ranked();
  const std::size_t take = std::min<std::size_t>(config.top_k, ranked.size());
  const std::vector<std::string> data(ranked.begin(), ranked.begin() + take);

  FeatureIndex index;
  const std::vector<WordBlock> blocks = build_blocks(data, resources, index);
  const std::size_t n = index.names.size();
  std::vector<double> theta(n, 0.0);
  BlockWork work;

  auto objective_at = [&](const std::vector<double>& th) {
    double total = 0.0;
    for (const auto& block : blocks) total += block_objective(block, th, work);
    double norm = 0.0;
    for (double t : th) norm += t * t;
    return total - config.l2_lambda * norm;
  };

  std::vector<double> trace;
  trace.reserve(config.epochs + 1);
  trace.push_back(objective_at(theta));

  std::vector<double> grad(n);
  double step = config.learning_rate;
  for (std::uint64_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& block : blocks) add_block_gradient(block, theta, work, grad);
    for (std::size_t i = 0; i < n; ++i) grad[i] -= 2.0 * config.l2_lambda * theta[i];
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(grad[i])) {
        throw std::runtime_error("gradient became non-finite at epoch " + std::to_string(epoch) +
                                 " (feature " + index.names[i] + ")");
      }
      theta[i] += step * grad[i];
    }
    const double obj = objective_at(theta);
    if (!std::isfinite(obj)) {
      throw std::runtime_error("objective became non-finite at epoch " + std::to_string(epoch));
    }
    trace.push_back(obj);
    step *= config.lr_decay;
  }

  Model::Weights weights;
  for (std::size_t i = 0; i < n; ++i) weights[index.names[i]] = theta[i];
  Model model(std::move(resources), config);
  model.set_weights(std::move(weights));
  return {std::move(model), std::move(trace)};
}

}  // namespace morphchain
