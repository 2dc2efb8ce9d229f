#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "coordscope/corpus.hpp"

namespace coordscope {

using Stopwords = std::set<std::string, std::less<>>;

/// One token per line; blank lines and '#' comments skipped. Tokens are
/// normalized like document tokens.
Stopwords read_stopwords(std::istream& in);
Stopwords load_stopwords(const std::filesystem::path& path);
std::filesystem::path default_stopwords_path();

using WordId = std::uint32_t;

struct DocumentSet {
  std::vector<std::vector<WordId>> docs;
  std::vector<std::string> vocabulary;  // WordId -> token, first-appearance order
  std::map<std::string, WordId, std::less<>> index;
  std::vector<std::string> tweet_ids;   // provenance, parallel to docs
  std::size_t dropped = 0;              // tweets left with no tokens

  std::size_t num_tokens() const;
  /// Tokens of document d as text.
  std::vector<std::string> tokens(std::size_t d) const;
};

/// Content tokens of length >= 2 (code points), minus stopwords and the
/// retweet marker "rt". Empty documents are dropped and counted.
DocumentSet preprocess(std::span<const Tweet> tweets, const Stopwords& stopwords);

struct LdaOptions {
  int topics = 5;
  double alpha = -1.0;  // <= 0 selects 50 / topics
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 1;

  double effective_alpha() const { return alpha > 0.0 ? alpha : 50.0 / topics; }
};

/// Collapsed Gibbs state after the final sweep.
class LdaModel {
 public:
  int topics() const { return k_; }
  std::size_t vocabulary_size() const { return v_; }
  std::size_t num_docs() const { return doc_topic_.size() / static_cast<std::size_t>(k_); }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::uint64_t seed() const { return seed_; }
  int iterations_run() const { return iterations_; }

  std::uint32_t topic_word(int k, WordId w) const { return topic_word_[static_cast<std::size_t>(k) * v_ + w]; }
  std::uint32_t doc_topic(std::size_t d, int k) const { return doc_topic_[d * static_cast<std::size_t>(k_) + k]; }
  std::uint32_t topic_total(int k) const { return topic_total_[static_cast<std::size_t>(k)]; }
  const std::vector<std::uint32_t>& topic_word_counts() const { return topic_word_; }
  const std::vector<std::uint32_t>& doc_topic_counts() const { return doc_topic_; }

  /// Smoothed P(topic | doc), sums to 1.
  std::vector<double> theta(std::size_t d) const;
  /// Smoothed P(word | topic), sums to 1.
  std::vector<double> phi(int k) const;
  /// argmax theta(d), lowest topic on ties.
  int dominant_topic(std::size_t d) const;

 private:
  friend LdaModel fit_lda(const DocumentSet&, const LdaOptions&,
                          const std::function<void(int, const LdaModel&)>&);

  int k_ = 0;
  std::size_t v_ = 0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::uint64_t seed_ = 0;
  int iterations_ = 0;
  std::vector<std::uint32_t> topic_word_;  // K x V
  std::vector<std::uint32_t> doc_topic_;   // D x K
  std::vector<std::uint32_t> topic_total_;
};

/// Throws ArgumentError when there are fewer documents than topics or the
/// vocabulary is empty. `after_sweep(sweep, model)` runs after every sweep.
LdaModel fit_lda(const DocumentSet& ds, const LdaOptions& options = {},
                 const std::function<void(int, const LdaModel&)>& after_sweep = {});

/// n highest-count words per topic, ties in lexicographic order. n is
/// clamped to the vocabulary size.
std::vector<std::vector<std::string>> top_words(const LdaModel& model, const DocumentSet& ds,
                                                std::size_t n = 20);

/// UMass coherence per topic over the ranked top_n words:
/// sum over i > j of log((D(w_i, w_j) + 1) / D(w_j)), D counting documents.
/// Throws ArgumentError when top_n exceeds the vocabulary.
std::vector<double> coherence(const LdaModel& model, const DocumentSet& ds, std::size_t top_n = 10);

struct SweepEntry {
  int topics = 0;
  double mean_coherence = 0.0;
  std::vector<double> per_topic;
};

/// Fits one model per K (concurrently, seed derived from options.seed and
/// K) and scores each by mean coherence. Alpha follows 50 / K unless set.
std::vector<SweepEntry> coherence_sweep(const DocumentSet& ds, std::span<const int> ks,
                                        const LdaOptions& options = {}, std::size_t top_n = 10);

/// "topic,coherence_umass,top_words" with words space-separated.
void write_topic_report(std::ostream& out, const LdaModel& model, const DocumentSet& ds,
                        std::size_t n_words = 20, std::size_t coherence_top_n = 10);
/// "k,mean_coherence_umass".
void write_sweep_report(std::ostream& out, std::span<const SweepEntry> sweep);

}  // namespace coordscope
