#include "coordscope/narrative.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "coordscope/error.hpp"
#include "coordscope/rng.hpp"
#include "coordscope/text.hpp"

namespace coordscope {

namespace {

std::size_t code_points(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

}  // namespace

Stopwords read_stopwords(std::istream& in) {
  Stopwords words;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto norm = normalize_term(t);
    if (!norm.empty()) words.insert(std::move(norm));
  }
  return words;
}

Stopwords load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file " + path.string());
  return read_stopwords(in);
}

std::filesystem::path default_stopwords_path() {
  return std::filesystem::path(COORDSCOPE_DATA_DIR) / "stopwords_id.txt";
}

std::size_t DocumentSet::num_tokens() const {
  std::size_t n = 0;
  for (const auto& d : docs) n += d.size();
  return n;
}

std::vector<std::string> DocumentSet::tokens(std::size_t d) const {
  std::vector<std::string> out;
  out.reserve(docs.at(d).size());
  for (WordId w : docs[d]) out.push_back(vocabulary[w]);
  return out;
}

DocumentSet preprocess(std::span<const Tweet> tweets, const Stopwords& stopwords) {
  DocumentSet ds;
  for (const auto& t : tweets) {
    std::vector<WordId> doc;
    for (auto& tok : content_tokens(t.text)) {
      if (code_points(tok) < 2 || tok == "rt" || stopwords.count(tok)) continue;
      auto [it, inserted] = ds.index.try_emplace(tok, static_cast<WordId>(ds.vocabulary.size()));
      if (inserted) ds.vocabulary.push_back(tok);
      doc.push_back(it->second);
    }
    if (doc.empty()) {
      ++ds.dropped;
      continue;
    }
    ds.docs.push_back(std::move(doc));
    ds.tweet_ids.push_back(t.id);
  }
  return ds;
}

std::vector<double> LdaModel::theta(std::size_t d) const {
  std::vector<double> out(static_cast<std::size_t>(k_));
  double len = 0.0;
  for (int k = 0; k < k_; ++k) len += doc_topic(d, k);
  const double denom = len + k_ * alpha_;
  for (int k = 0; k < k_; ++k) out[static_cast<std::size_t>(k)] = (doc_topic(d, k) + alpha_) / denom;
  return out;
}

std::vector<double> LdaModel::phi(int k) const {
  std::vector<double> out(v_);
  const double denom = topic_total(k) + static_cast<double>(v_) * beta_;
  for (WordId w = 0; w < v_; ++w) out[w] = (topic_word(k, w) + beta_) / denom;
  return out;
}

int LdaModel::dominant_topic(std::size_t d) const {
  int best = 0;
  for (int k = 1; k < k_; ++k) {
    if (doc_topic(d, k) > doc_topic(d, best)) best = k;
  }
  return best;
}

LdaModel fit_lda(const DocumentSet& ds, const LdaOptions& options,
                 const std::function<void(int, const LdaModel&)>& after_sweep) {
  if (options.topics < 1) throw ArgumentError("topic count must be positive");
  if (ds.docs.size() < static_cast<std::size_t>(options.topics)) {
    throw ArgumentError(fmt::format("LDA needs at least {} documents, have {}", options.topics, ds.docs.size()));
  }
  if (ds.vocabulary.empty()) throw ArgumentError("LDA vocabulary is empty");
  if (options.beta <= 0.0) throw ArgumentError("beta must be positive");
  if (options.iterations < 0) throw ArgumentError("iteration count must be non-negative");

  LdaModel m;
  m.k_ = options.topics;
  m.v_ = ds.vocabulary.size();
  m.alpha_ = options.effective_alpha();
  m.beta_ = options.beta;
  m.seed_ = options.seed;
  const auto K = static_cast<std::size_t>(m.k_);
  m.topic_word_.assign(K * m.v_, 0);
  m.doc_topic_.assign(ds.docs.size() * K, 0);
  m.topic_total_.assign(K, 0);

  Rng rng(options.seed);
  std::vector<std::vector<std::uint32_t>> z(ds.docs.size());
  for (std::size_t d = 0; d < ds.docs.size(); ++d) {
    z[d].resize(ds.docs[d].size());
    for (std::size_t i = 0; i < ds.docs[d].size(); ++i) {
      const auto k = static_cast<std::uint32_t>(rng.index(K));
      z[d][i] = k;
      ++m.topic_word_[k * m.v_ + ds.docs[d][i]];
      ++m.doc_topic_[d * K + k];
      ++m.topic_total_[k];
    }
  }

  const double vbeta = static_cast<double>(m.v_) * m.beta_;
  std::vector<double> cumulative(K);
  for (int sweep = 0; sweep < options.iterations; ++sweep) {
    for (std::size_t d = 0; d < ds.docs.size(); ++d) {
      auto* dt = &m.doc_topic_[d * K];
      for (std::size_t i = 0; i < ds.docs[d].size(); ++i) {
        const WordId w = ds.docs[d][i];
        std::uint32_t k = z[d][i];
        --m.topic_word_[k * m.v_ + w];
        --dt[k];
        --m.topic_total_[k];

        double total = 0.0;
        for (std::size_t t = 0; t < K; ++t) {
          total += (dt[t] + m.alpha_) * (m.topic_word_[t * m.v_ + w] + m.beta_) / (m.topic_total_[t] + vbeta);
          cumulative[t] = total;
        }
        const double u = rng.uniform01() * total;
        k = static_cast<std::uint32_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        k = std::min<std::uint32_t>(k, static_cast<std::uint32_t>(K - 1));

        z[d][i] = k;
        ++m.topic_word_[k * m.v_ + w];
        ++dt[k];
        ++m.topic_total_[k];
      }
    }
    m.iterations_ = sweep + 1;
    if (after_sweep) after_sweep(sweep, m);
  }
  return m;
}

namespace {

std::vector<WordId> ranked_words(const LdaModel& model, const DocumentSet& ds, int k, std::size_t n) {
  std::vector<WordId> order(ds.vocabulary.size());
  std::iota(order.begin(), order.end(), WordId{0});
  n = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](WordId a, WordId b) {
                      const auto ca = model.topic_word(k, a);
                      const auto cb = model.topic_word(k, b);
                      if (ca != cb) return ca > cb;
                      return ds.vocabulary[a] < ds.vocabulary[b];
                    });
  order.resize(n);
  return order;
}

}  // namespace

std::vector<std::vector<std::string>> top_words(const LdaModel& model, const DocumentSet& ds, std::size_t n) {
  std::vector<std::vector<std::string>> out;
  for (int k = 0; k < model.topics(); ++k) {
    auto& words = out.emplace_back();
    for (WordId w : ranked_words(model, ds, k, n)) words.push_back(ds.vocabulary[w]);
  }
  return out;
}

std::vector<double> coherence(const LdaModel& model, const DocumentSet& ds, std::size_t top_n) {
  if (top_n > ds.vocabulary.size()) {
    throw ArgumentError(fmt::format("top_n {} exceeds vocabulary size {}", top_n, ds.vocabulary.size()));
  }
  // Document sets per word, as sorted doc index lists.
  std::vector<std::vector<std::uint32_t>> postings(ds.vocabulary.size());
  for (std::size_t d = 0; d < ds.docs.size(); ++d) {
    for (WordId w : ds.docs[d]) {
      auto& p = postings[w];
      if (p.empty() || p.back() != d) p.push_back(static_cast<std::uint32_t>(d));
    }
  }
  auto co_count = [&](WordId a, WordId b) {
    const auto& pa = postings[a];
    const auto& pb = postings[b];
    std::size_t i = 0, j = 0, n = 0;
    while (i < pa.size() && j < pb.size()) {
      if (pa[i] < pb[j]) {
        ++i;
      } else if (pb[j] < pa[i]) {
        ++j;
      } else {
        ++n, ++i, ++j;
      }
    }
    return n;
  };

  std::vector<double> out;
  for (int k = 0; k < model.topics(); ++k) {
    const auto words = ranked_words(model, ds, k, top_n);
    double c = 0.0;
    for (std::size_t i = 1; i < words.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto dj = postings[words[j]].size();
        if (dj == 0) continue;  // word not in any document: no evidence either way
        c += std::log((static_cast<double>(co_count(words[i], words[j])) + 1.0) / static_cast<double>(dj));
      }
    }
    out.push_back(c);
  }
  return out;
}

std::vector<SweepEntry> coherence_sweep(const DocumentSet& ds, std::span<const int> ks, const LdaOptions& options,
                                        std::size_t top_n) {
  std::vector<SweepEntry> out(ks.size());
  std::vector<std::exception_ptr> errors(ks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < ks.size(); ++i) {
    try {
      LdaOptions o = options;
      o.topics = ks[i];
      o.seed = derive_seed(options.seed, static_cast<std::uint64_t>(ks[i]));
      const auto model = fit_lda(ds, o);
      auto per_topic = coherence(model, ds, top_n);
      out[i].topics = ks[i];
      out[i].mean_coherence =
          std::accumulate(per_topic.begin(), per_topic.end(), 0.0) / static_cast<double>(per_topic.size());
      out[i].per_topic = std::move(per_topic);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void write_topic_report(std::ostream& out, const LdaModel& model, const DocumentSet& ds, std::size_t n_words,
                        std::size_t coherence_top_n) {
  const auto words = top_words(model, ds, n_words);
  const auto coh = coherence(model, ds, std::min(coherence_top_n, ds.vocabulary.size()));
  out << "topic,coherence_umass,top_words\n";
  for (int k = 0; k < model.topics(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    out << k << ',' << fmt::format("{:.6f}", coh[ku]) << ',' << fmt::format("{}", fmt::join(words[ku], " "))
        << '\n';
  }
}

void write_sweep_report(std::ostream& out, std::span<const SweepEntry> sweep) {
  out << "k,mean_coherence_umass\n";
  for (const auto& e : sweep) out << e.topics << ',' << fmt::format("{:.6f}", e.mean_coherence) << '\n';
}

}  // namespace coordscope
