#ifndef RELHYP_TESTS_SUPPORT_HPP_
#define RELHYP_TESTS_SUPPORT_HPP_

#include <functional>
#include <random>
#include <vector>

#include "relhyp/word.hpp"
#include "relhyp/word_io.hpp"

namespace relhyp::testing {

// Every letter of H * <t>, including t when with_t is set. Finite cyclic
// factors contribute only their positive letter.
inline std::vector<Letter> all_letters(Alphabet const& alphabet, bool with_t = true) {
  std::vector<Letter> out;
  if (with_t) {
    out = {kT, kTInv};
  }
  bool cyclic = alphabet.base().kind() == BaseKind::kFiniteCyclic;
  for (int f = 0; f <= alphabet.s(); ++f) {
    for (int g = 0; g < alphabet.base().rank(); ++g) {
      out.push_back(alphabet.base_letter(f, g, false));
      if (!cyclic) {
        out.push_back(alphabet.base_letter(f, g, true));
      }
    }
  }
  return out;
}

inline std::vector<Letter> random_letters(std::mt19937& rng, Alphabet const& alphabet, int length,
                                          bool with_t = true) {
  auto                               letters = all_letters(alphabet, with_t);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(letters.size()) - 1);
  std::vector<Letter>                out;
  for (int i = 0; i < length; ++i) {
    out.push_back(letters[pick(rng)]);
  }
  return out;
}

inline TWord random_word(std::mt19937& rng, AlphabetPtr const& alphabet, int max_length) {
  std::uniform_int_distribution<int> len(0, max_length);
  return TWord::from_letters(alphabet, random_letters(rng, *alphabet, len(rng)));
}

inline FPElement random_element(std::mt19937& rng, AlphabetPtr const& alphabet, int max_length) {
  std::uniform_int_distribution<int> len(0, max_length);
  return FPElement::from_letters(alphabet, random_letters(rng, *alphabet, len(rng), false));
}

// Calls visit on every distinct reduced word of length <= max_length.
inline void for_each_word(AlphabetPtr const& alphabet, int max_length, std::function<void(TWord const&)> const& visit) {
  auto                letters = all_letters(*alphabet);
  std::vector<TWord>  layer{TWord::identity(alphabet)};
  std::vector<TWord>  seen = layer;
  visit(layer.front());
  for (int len = 1; len <= max_length; ++len) {
    std::vector<TWord> next;
    for (auto const& w : layer) {
      for (Letter x : letters) {
        auto y = w * TWord::from_letters(alphabet, std::vector<Letter>{x});
        if (y.length() == static_cast<std::size_t>(len)
            && std::find(next.begin(), next.end(), y) == next.end()) {
          next.push_back(y);
          visit(y);
        }
      }
    }
    layer = std::move(next);
  }
}

}  // namespace relhyp::testing

#endif  // RELHYP_TESTS_SUPPORT_HPP_
