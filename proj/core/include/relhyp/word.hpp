#ifndef RELHYP_WORD_HPP_
#define RELHYP_WORD_HPP_

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "relhyp/alphabet.hpp"

namespace relhyp {

// An element of one base group in normal form. For the free kinds this is a
// freely reduced word in generator codes (2 * g, 2 * g + 1 for the inverse);
// for the finite cyclic kind it is the residue in [0, n).
struct BaseElement {
  std::vector<int> word;
  int              residue = 0;

  bool operator==(BaseElement const&) const = default;
};

struct Syllable {
  int         factor;
  BaseElement element;

  bool operator==(Syllable const&) const = default;
};

// Element of H = G^(0) * ... * G^(s), stored as its reduced letter sequence.
// The identity is the empty sequence.
class FPElement {
 public:
  static FPElement identity(AlphabetPtr alphabet);
  // Reduces; throws kStructure if a t-letter is present.
  static FPElement from_letters(AlphabetPtr alphabet, std::span<Letter const> letters);
  static FPElement generator(AlphabetPtr alphabet, int factor, int generator);
  static FPElement from_syllables(AlphabetPtr alphabet, std::span<Syllable const> syllables);

  AlphabetPtr const& alphabet() const noexcept {
    return alphabet_;
  }
  std::vector<Letter> const& letters() const noexcept {
    return letters_;
  }
  bool is_identity() const noexcept {
    return letters_.empty();
  }
  std::vector<Syllable> syllables() const;
  FPElement             inverse() const;

  friend bool operator==(FPElement const& x, FPElement const& y) {
    return x.letters_ == y.letters_ && x.alphabet_->same_structure(*y.alphabet_);
  }
  friend bool operator<(FPElement const& x, FPElement const& y) {
    return x.letters_ < y.letters_;
  }

 private:
  FPElement(AlphabetPtr alphabet, std::vector<Letter> letters)
      : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {}

  AlphabetPtr         alphabet_;
  std::vector<Letter> letters_;

  friend class TWord;
};

// Throws kStructure when the factor structures differ.
FPElement fp_multiply(FPElement const& x, FPElement const& y);

inline FPElement operator*(FPElement const& x, FPElement const& y) {
  return fp_multiply(x, y);
}

enum class TLetter : int { kPos = 1, kNeg = -1 };

using WordItem = std::variant<FPElement, TLetter>;

// Reduced element of H * <t>. Viewed as items it is h_0 t^e_1 h_1 ... with
// no pinch t^e 1 t^-e; stored as the flat reduced letter sequence.
class TWord {
 public:
  static TWord identity(AlphabetPtr alphabet);
  static TWord t(AlphabetPtr alphabet, int sign = 1);
  static TWord from_letters(AlphabetPtr alphabet, std::span<Letter const> letters);
  static TWord from_element(FPElement const& h);

  AlphabetPtr const& alphabet() const noexcept {
    return alphabet_;
  }
  std::vector<Letter> const& letters() const noexcept {
    return letters_;
  }
  std::size_t length() const noexcept {
    return letters_.size();
  }
  bool is_identity() const noexcept {
    return letters_.empty();
  }
  // Number of t-letters.
  int t_count() const noexcept;
  // Alternating h-items and t-letters; h-items are never adjacent.
  std::vector<WordItem> items() const;
  // The word as an element of H when it contains no t-letters.
  std::optional<FPElement> as_element() const;

  TWord inverse() const;
  TWord pow(int n) const;

  friend bool operator==(TWord const& x, TWord const& y) {
    return x.letters_ == y.letters_ && x.alphabet_->same_structure(*y.alphabet_);
  }
  friend bool operator<(TWord const& x, TWord const& y) {
    return x.letters_ < y.letters_;
  }

 private:
  TWord(AlphabetPtr alphabet, std::vector<Letter> letters)
      : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {}

  AlphabetPtr         alphabet_;
  std::vector<Letter> letters_;
};

TWord operator*(TWord const& x, TWord const& y);

TWord tword_reduce(AlphabetPtr const& alphabet, std::span<WordItem const> raw);
TWord tword_product(std::span<TWord const> factors);
int   tword_exponent_sum(TWord const& w);

// w = conjugator^-1 * core * conjugator with core cyclically reduced. The
// core is not rotated: a cyclically reduced input comes back unchanged with
// an empty conjugator.
struct CyclicReduction {
  TWord core;
  TWord conjugator;
};

CyclicReduction tword_cyclic_reduce(TWord const& w);

// Lexicographically least rotation (letter order t < t^-1 < base letters) of
// a cyclically reduced word.
TWord canonical_rotation(TWord const& cyclically_reduced);

// Canonical representative of the conjugacy class.
TWord conjugacy_normal_form(TWord const& w);

bool is_conjugate(TWord const& u, TWord const& v);

// Some c with x = c^-1 * y * c, or nullopt. Among the conjugators that come
// from rotating the cyclic cores the shortlex-least is returned.
std::optional<TWord> find_conjugator(TWord const& x, TWord const& y);

// Image under G^(i) -> G * <t>, g^(i) |-> t^-i g t^i, t |-> t.
TWord substitute_back(TWord const& x);
TWord substitute_back(FPElement const& x);

// Free-product element of infinite order.
bool has_infinite_order(FPElement const& h);

// Shortlex order used wherever the library has to pick a representative.
bool shortlex_less(TWord const& x, TWord const& y);

}  // namespace relhyp

#endif  // RELHYP_WORD_HPP_
