#pragma once

#include <htact/problem.hpp>

#include <random>

namespace support {

inline htact::ProblemFile fixture(std::string const& name) {
  return htact::parse_problem(std::string(HTACT_FIXTURES) + "/" + name + ".json");
}

inline std::string fixture_path(std::string const& name) { return std::string(HTACT_FIXTURES) + "/" + name + ".json"; }

inline htact::Word random_word(htact::Group const& g, std::size_t len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> gen(0, static_cast<int>(g.num_generators()) - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  htact::Word w;
  if (g.num_generators() == 0) return w;
  for (std::size_t i = 0; i < len; ++i) w.push_back({gen(rng), sign(rng) ? 1 : -1});
  return w;
}

inline htact::Code random_element(htact::Group const& g, std::size_t max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  return g.evaluate(random_word(g, len(rng), rng));
}

// Every word of length <= n over g0, g0^-1, g1, g1^-1, ...
inline std::vector<htact::Word> all_words(htact::Group const& g, std::size_t n) {
  std::vector<htact::Word> out{{}};
  for (std::size_t from = 0; from < out.size(); ++from) {
    if (out[from].size() == n) continue;
    for (int k = 0; k < static_cast<int>(g.num_generators()); ++k)
      for (int e : {1, -1}) {
        auto w = out[from];
        w.push_back({k, e});
        out.push_back(std::move(w));
      }
  }
  return out;
}

}  // namespace support
