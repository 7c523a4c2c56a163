#ifndef RELHYP_PRESENTATION_HPP_
#define RELHYP_PRESENTATION_HPP_

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "relhyp/word.hpp"

namespace relhyp {

// <G, t | w^k = 1>.
class RelatorPresentation {
 public:
  // Throws kInvalidArgument for k < 2 or an empty / not cyclically reduced w,
  // and kNotUnimodular unless allow_nonunimodular is set.
  static RelatorPresentation make(BaseGroup base, TWord w, int k, bool allow_nonunimodular = false);

  BaseGroup const& base() const noexcept {
    return alphabet_->base();
  }
  // Alphabet of G * <t>.
  AlphabetPtr const& alphabet() const noexcept {
    return alphabet_;
  }
  TWord const& w() const noexcept {
    return w_;
  }
  int k() const noexcept {
    return k_;
  }
  bool is_unimodular() const noexcept {
    return tword_exponent_sum(w_) == 1;
  }
  TWord relator() const {
    return w_.pow(k_);
  }

 private:
  RelatorPresentation(AlphabetPtr alphabet, TWord w, int k)
      : alphabet_(std::move(alphabet)), w_(std::move(w)), k_(k) {}

  AlphabetPtr alphabet_;
  TWord       w_;
  int         k_;
};

bool check_unimodular(TWord const& w);

enum class Side { kP, kPPhi };
enum class Direction { kForward, kInverse };

// P = G^(0) * ... * G^(s-1), P^phi = G^(1) * ... * G^(s); both trivial when
// s = 0.
bool membership_in_P(FPElement const& h, Side side, int s);

// The index shift G^(i) -> G^(i+1) and its inverse. Throws kNotInDomain.
FPElement phi_apply(FPElement const& p, Direction direction, int s);

// <H, t | p^t = p^phi (p in P \ {1}), v^k = 1> with
// v = c t prod_{i=0}^{m} (b_i a_i^t), a^t = t^-1 a t.
struct NormalizedPresentation {
  AlphabetPtr            alphabet;  // H * <t>
  int                    s = 0;
  int                    m = 0;
  FPElement              c;
  std::vector<FPElement> a;
  std::vector<FPElement> b;
  int                    k = 2;
  TWord                  v;
  // substitute_back(v) = back_conjugator^-1 * w * back_conjugator.
  TWord back_conjugator;

  // Builds v from the data; m and s are taken from the vectors and alphabet.
  static NormalizedPresentation assemble(AlphabetPtr alphabet, FPElement c, std::vector<FPElement> a,
                                         std::vector<FPElement> b, int k);

  TWord relator() const {
    return v.pow(k);
  }
  // p^t (p^phi)^-1 = t^-1 p t (p^phi)^-1.
  TWord phi_relator(FPElement const& p) const;
};

// w conjugate to g t: the group is G * <x | x^k>.
struct FreeProductCase {
  FPElement g;  // over G
};

using NormalizationResult = std::variant<NormalizedPresentation, FreeProductCase>;

struct NormalizeOptions {
  // Accept a base group with torsion; condition 3 may then come back
  // undetermined.
  bool allow_torsion = false;
  // Bound on explored splittings before giving up with kNormalizationFailed.
  long node_budget = 2'000'000;
};

NormalizationResult normalize(RelatorPresentation const& p, NormalizeOptions const& options = {});

enum class CheckStatus { kPass, kFail, kUndetermined };

char const* to_string(CheckStatus status) noexcept;

struct ConditionReport {
  // Conditions 1) to 4), in order.
  std::array<CheckStatus, 4> status{};
  std::vector<std::string>   notes;

  bool all_pass() const noexcept {
    for (auto st : status) {
      if (st != CheckStatus::kPass) {
        return false;
      }
    }
    return true;
  }
};

// Condition 3 is certified by a sufficient structural criterion only: a_i of
// infinite order with a syllable in G^(s) (b_i: in G^(0)). Anything else is
// reported undetermined, never pass.
ConditionReport check_conditions(NormalizedPresentation const& np);

// substitute_back(v) conjugate to w.
bool normalization_is_sound(NormalizedPresentation const& np, RelatorPresentation const& p);

}  // namespace relhyp

#endif  // RELHYP_PRESENTATION_HPP_
