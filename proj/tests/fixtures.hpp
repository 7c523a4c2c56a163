#ifndef RELHYP_TESTS_FIXTURES_HPP_
#define RELHYP_TESTS_FIXTURES_HPP_

#include <string>
#include <variant>

#include "relhyp/presentation.hpp"
#include "relhyp/word_io.hpp"

namespace relhyp::testing {

// Unimodular relators over F(a, b) with known normal shapes.
inline char const* const kWordS1M1 = "a.t.a.t^-2.b.t^2.b.t^-2.a.t^2";  // s = 1, m = 1
inline char const* const kWordS1M0 = "t.a.t^-1.b.t.b.t^-2.a.t^2";      // s = 1, m = 0
inline char const* const kWordS0M1 = "a.t.b.t^-1.a.t.b.t^-1.b.t";      // s = 0, m = 1

inline RelatorPresentation presentation(char const* w, int k) {
  auto G = BaseGroup::free({"a", "b"});
  return RelatorPresentation::make(G, parse_word(Alphabet::make(G, 0), w), k);
}

inline NormalizedPresentation normalized(char const* w, int k) {
  auto r = normalize(presentation(w, k));
  return std::get<NormalizedPresentation>(r);
}

}  // namespace relhyp::testing

#endif  // RELHYP_TESTS_FIXTURES_HPP_
