#ifndef RELHYP_ALPHABET_HPP_
#define RELHYP_ALPHABET_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace relhyp {

enum class BaseKind { kFree, kInfiniteCyclic, kFiniteCyclic };

// The group G. Only kinds with decidable normal forms and conjugacy are
// admitted; the finite cyclic kind exists to reproduce torsion
// counterexamples and is never torsion-free.
class BaseGroup {
 public:
  static BaseGroup free(std::vector<std::string> generators);
  static BaseGroup infinite_cyclic(std::string generator);
  static BaseGroup finite_cyclic(std::string generator, int order);

  BaseKind kind() const noexcept {
    return kind_;
  }
  int rank() const noexcept {
    return static_cast<int>(generators_.size());
  }
  // 0 for the torsion-free kinds.
  int order() const noexcept {
    return order_;
  }
  std::vector<std::string> const& generators() const noexcept {
    return generators_;
  }
  bool is_torsion_free() const noexcept {
    return kind_ != BaseKind::kFiniteCyclic;
  }

  bool operator==(BaseGroup const&) const = default;

 private:
  BaseGroup(BaseKind kind, std::vector<std::string> generators, int order);

  BaseKind                 kind_;
  std::vector<std::string> generators_;
  int                      order_;
};

// Letters of H * <t> where H = G^(0) * ... * G^(s).
//
// Encoding: 0 is t, 1 is t^-1, and the base letter for generator g of factor
// i is 2 + 2 * (i * rank + g), with the inverse one higher. The integer order
// is the total order used for canonical cyclic rotations:
// t < t^-1 < base letters ordered by factor, then generator, then sign.
// Finite cyclic factors only ever use the positive letter.
using Letter = std::int32_t;

inline constexpr Letter kT    = 0;
inline constexpr Letter kTInv = 1;

class Alphabet;
using AlphabetPtr = std::shared_ptr<Alphabet const>;

class Alphabet {
 public:
  static AlphabetPtr make(BaseGroup base, int s);

  BaseGroup const& base() const noexcept {
    return base_;
  }
  // Highest factor index; H has s + 1 factors.
  int s() const noexcept {
    return s_;
  }
  int factor_count() const noexcept {
    return s_ + 1;
  }

  static bool is_t(Letter x) noexcept {
    return x < 2;
  }
  static int t_sign(Letter x) noexcept {
    return x == kT ? 1 : -1;
  }
  int factor_of(Letter x) const noexcept {
    return (x - 2) / 2 / base_.rank();
  }
  int generator_of(Letter x) const noexcept {
    return (x - 2) / 2 % base_.rank();
  }
  static bool is_inverse_letter(Letter x) noexcept {
    return x >= 2 && (x & 1) == 1;
  }
  Letter base_letter(int factor, int generator, bool inverse) const noexcept {
    return 2 + 2 * (factor * base_.rank() + generator) + (inverse ? 1 : 0);
  }
  bool is_cyclic_factor_letter(Letter x) const noexcept {
    return !is_t(x) && base_.kind() == BaseKind::kFiniteCyclic;
  }

  // Same generators and same number of factors.
  bool same_structure(Alphabet const& other) const noexcept {
    return s_ == other.s_ && base_ == other.base_;
  }

  // An alphabet over the same base with a different number of factors.
  AlphabetPtr with_s(int s) const;

 private:
  Alphabet(BaseGroup base, int s) : base_(std::move(base)), s_(s) {}

  BaseGroup base_;
  int       s_;
};

}  // namespace relhyp

#endif  // RELHYP_ALPHABET_HPP_
