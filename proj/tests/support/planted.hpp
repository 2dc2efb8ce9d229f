#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coordscope/corpus.hpp"

namespace fixture {

/// Documents drawn from disjoint planted vocabularies: `vocab_size` words
/// per topic ("<prefix><index>"), Zipf-weighted, `doc_length` tokens per
/// document, documents alternating between topics.
struct PlantedCorpus {
  std::vector<std::vector<std::string>> vocabularies;
  std::vector<coordscope::Tweet> tweets;
  std::vector<int> topic_of_doc;
};

PlantedCorpus planted_corpus(std::size_t topics, std::size_t vocab_size, std::size_t docs, std::size_t doc_length,
                             std::uint64_t seed);

}  // namespace fixture
