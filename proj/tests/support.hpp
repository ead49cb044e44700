#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "arbor/perm.hpp"
#include "arbor/tree.hpp"

namespace testing_support {

inline arbor::Perm random_perm(std::mt19937_64& rng, std::size_t d) {
  std::vector<std::size_t> img(d);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return arbor::Perm::from_images(img);
}

inline arbor::TreePortrait random_portrait(std::mt19937_64& rng, std::size_t d, std::size_t n) {
  std::vector<arbor::Perm> labels(arbor::internal_vertex_count(d, n));
  for (auto& l : labels) l = random_perm(rng, d);
  return arbor::TreePortrait::from_labels(d, n, std::move(labels));
}

inline arbor::Word random_word(std::mt19937_64& rng, std::size_t d, std::size_t len) {
  arbor::Word w(len);
  for (auto& x : w) x = std::uniform_int_distribution<std::size_t>(0, d - 1)(rng);
  return w;
}

inline arbor::Perm P(const char* text, std::size_t d) { return arbor::Perm::parse(text, d); }

}  // namespace testing_support
