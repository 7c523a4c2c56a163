#include "relhyp/presentation.hpp"

#include <algorithm>

#include "relhyp/error.hpp"

namespace relhyp {

RelatorPresentation RelatorPresentation::make(BaseGroup base, TWord w, int k, bool allow_nonunimodular) {
  if (k < 2) {
    throw Error(ErrorCode::kInvalidArgument, "relator exponent k must be >= 2");
  }
  if (w.alphabet()->s() != 0 || !(w.alphabet()->base() == base)) {
    throw Error(ErrorCode::kStructure, "relator word is not over G * <t>");
  }
  if (w.is_identity()) {
    throw Error(ErrorCode::kInvalidArgument, "relator word is empty");
  }
  if (!tword_cyclic_reduce(w).conjugator.is_identity()) {
    throw Error(ErrorCode::kInvalidArgument, "relator word is not cyclically reduced");
  }
  if (!allow_nonunimodular && !check_unimodular(w)) {
    throw Error(ErrorCode::kNotUnimodular,
                "relator word has exponent sum " + std::to_string(tword_exponent_sum(w)) + ", expected 1");
  }
  auto alphabet = w.alphabet();
  return RelatorPresentation(std::move(alphabet), std::move(w), k);
}

bool check_unimodular(TWord const& w) {
  return tword_exponent_sum(w) == 1;
}

bool membership_in_P(FPElement const& h, Side side, int s) {
  if (s == 0) {
    return h.is_identity();
  }
  int lo = side == Side::kP ? 0 : 1;
  int hi = side == Side::kP ? s - 1 : s;
  return std::all_of(h.letters().begin(), h.letters().end(), [&](Letter x) {
    int f = h.alphabet()->factor_of(x);
    return f >= lo && f <= hi;
  });
}

FPElement phi_apply(FPElement const& p, Direction direction, int s) {
  Side domain = direction == Direction::kForward ? Side::kP : Side::kPPhi;
  if (!membership_in_P(p, domain, s)) {
    throw Error(ErrorCode::kNotInDomain, direction == Direction::kForward ? "phi: argument not in P"
                                                                          : "phi^-1: argument not in P^phi");
  }
  auto const& alphabet = *p.alphabet();
  int         shift    = direction == Direction::kForward ? 1 : -1;
  std::vector<Letter> out;
  out.reserve(p.letters().size());
  for (Letter x : p.letters()) {
    out.push_back(alphabet.base_letter(alphabet.factor_of(x) + shift, alphabet.generator_of(x),
                                       Alphabet::is_inverse_letter(x)));
  }
  return FPElement::from_letters(p.alphabet(), out);
}

NormalizedPresentation NormalizedPresentation::assemble(AlphabetPtr alphabet, FPElement c, std::vector<FPElement> a,
                                                        std::vector<FPElement> b, int k) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kStructure, "a and b must have the same length");
  }
  std::vector<WordItem> raw{c, TLetter::kPos};
  for (std::size_t i = 0; i < a.size(); ++i) {
    raw.insert(raw.end(), {b[i], TLetter::kNeg, a[i], TLetter::kPos});
  }
  auto v = tword_reduce(alphabet, raw);
  int  s = alphabet->s();
  int  m = static_cast<int>(a.size()) - 1;
  auto back = TWord::identity(alphabet->with_s(0));
  return NormalizedPresentation{std::move(alphabet), s, m, std::move(c), std::move(a), std::move(b), k,
                                std::move(v), std::move(back)};
}

TWord NormalizedPresentation::phi_relator(FPElement const& p) const {
  auto pw = TWord::from_element(p);
  auto t  = TWord::t(alphabet, 1);
  return t.inverse() * pw * t * TWord::from_element(phi_apply(p, Direction::kForward, s).inverse());
}

char const* to_string(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kUndetermined: return "undetermined";
  }
  return "?";
}

namespace {

bool has_syllable_in(FPElement const& h, int factor) {
  return std::any_of(h.letters().begin(), h.letters().end(),
                     [&](Letter x) { return h.alphabet()->factor_of(x) == factor; });
}

}  // namespace

ConditionReport check_conditions(NormalizedPresentation const& np) {
  ConditionReport report;
  int const       s = np.s;

  bool shape_ok = np.m >= 0 && np.a.size() == static_cast<std::size_t>(np.m + 1) && np.b.size() == np.a.size();
  report.status[0] = shape_ok ? CheckStatus::kPass : CheckStatus::kFail;
  if (!shape_ok) {
    report.notes.emplace_back("condition 1: the product is empty or a/b lengths disagree with m");
  }

  bool cond2 = shape_ok;
  for (std::size_t i = 0; i < np.a.size(); ++i) {
    if (membership_in_P(np.a[i], Side::kP, s)) {
      cond2 = false;
      report.notes.push_back("condition 2: a_" + std::to_string(i) + " lies in P");
    }
  }
  for (std::size_t i = 0; i < np.b.size(); ++i) {
    if (membership_in_P(np.b[i], Side::kPPhi, s)) {
      cond2 = false;
      report.notes.push_back("condition 2: b_" + std::to_string(i) + " lies in P^phi");
    }
  }
  report.status[1] = cond2 ? CheckStatus::kPass : CheckStatus::kFail;

  CheckStatus cond3 = shape_ok ? CheckStatus::kPass : CheckStatus::kFail;
  auto        judge = [&](FPElement const& x, Side side, int witness_factor, std::string const& name) {
    if (membership_in_P(x, side, s)) {
      cond3 = CheckStatus::kFail;
      report.notes.push_back("condition 3: " + name + " generates nothing new over the subgroup");
      return;
    }
    if (!has_infinite_order(x) || !has_syllable_in(x, witness_factor)) {
      if (cond3 == CheckStatus::kPass) {
        cond3 = CheckStatus::kUndetermined;
      }
      report.notes.push_back("condition 3: " + name + " not certified by the structural criterion");
    }
  };
  for (std::size_t i = 0; i < np.a.size(); ++i) {
    judge(np.a[i], Side::kP, s, "a_" + std::to_string(i));
  }
  for (std::size_t i = 0; i < np.b.size(); ++i) {
    judge(np.b[i], Side::kPPhi, 0, "b_" + std::to_string(i));
  }
  report.status[2] = cond3;

  bool cond4 = np.alphabet && np.alphabet->s() == s && s >= 0;
  if (cond4) {
    auto same = [&](FPElement const& x) { return x.alphabet()->same_structure(*np.alphabet); };
    cond4     = same(np.c) && std::all_of(np.a.begin(), np.a.end(), same)
            && std::all_of(np.b.begin(), np.b.end(), same) && np.v.alphabet()->same_structure(*np.alphabet);
  }
  if (cond4 && shape_ok) {
    cond4 = NormalizedPresentation::assemble(np.alphabet, np.c, np.a, np.b, np.k).v == np.v;
  }
  if (!cond4) {
    report.notes.emplace_back("condition 4: data is not over G^(0) * ... * G^(s) or v does not match");
  }
  report.status[3] = cond4 ? CheckStatus::kPass : CheckStatus::kFail;
  return report;
}

bool normalization_is_sound(NormalizedPresentation const& np, RelatorPresentation const& p) {
  auto back = substitute_back(np.v);
  if (!is_conjugate(back, p.w())) {
    return false;
  }
  auto const& c = np.back_conjugator;
  return c.inverse() * p.w() * c == back;
}

namespace {

// Splits the cyclic core of w at a subset of its t-letters. The kept letters
// read + (- +)^(m+1) around the cycle, the stretches between them have zero
// exponent sum, and every absorbed stretch is folded into H by sending a base
// letter that sits rho levels above its stretch's floor to factor r - rho.
class Splitter {
 public:
  Splitter(TWord const& core, NormalizeOptions const& options)
      : alphabet_(core.alphabet()), letters_(core.letters()), options_(options) {
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (Alphabet::is_t(letters_[i])) {
        t_pos_.push_back(i);
      }
    }
  }

  std::optional<NormalizedPresentation> run(RelatorPresentation const& p) {
    std::size_t const nt = t_pos_.size();
    for (std::size_t i0 = 0; i0 < nt; ++i0) {
      if (letters_[t_pos_[i0]] != kT) {
        continue;
      }
      kept_.assign(1, i0);
      if (auto found = dfs(p, i0, 1, 0, -1)) {
        return found;
      }
    }
    return std::nullopt;
  }

  bool exhausted() const noexcept {
    return nodes_ > options_.node_budget;
  }

 private:
  int sign_at(std::size_t j) const {
    return Alphabet::t_sign(letters_[t_pos_[j % t_pos_.size()]]);
  }

  std::optional<NormalizedPresentation> dfs(RelatorPresentation const& p, std::size_t i0, std::size_t step,
                                            int seg_sum, int expected) {
    if (++nodes_ > options_.node_budget) {
      return std::nullopt;
    }
    std::size_t const nt = t_pos_.size();
    if (step == nt) {
      if (expected == -1 && seg_sum == 0 && kept_.size() >= 3) {
        return build(p);
      }
      return std::nullopt;
    }
    int remaining = static_cast<int>(nt - step);
    if (std::abs(seg_sum) > remaining) {
      return std::nullopt;
    }
    std::size_t j     = (i0 + step) % nt;
    int         sigma = sign_at(j);
    if (seg_sum == 0 && sigma == expected) {
      kept_.push_back(j);
      if (auto found = dfs(p, i0, step + 1, 0, -sigma)) {
        return found;
      }
      kept_.pop_back();
    }
    return dfs(p, i0, step + 1, seg_sum + sigma, expected);
  }

  // Letters strictly between t-letter kept_[q] and the next kept t-letter.
  std::vector<Letter> segment(std::size_t q) const {
    std::size_t const n     = letters_.size();
    std::size_t       from  = t_pos_[kept_[q]] + 1;
    std::size_t       to    = t_pos_[kept_[(q + 1) % kept_.size()]];
    std::size_t       count = (to + n - from) % n;
    std::vector<Letter> out;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(letters_[(from + i) % n]);
    }
    return out;
  }

  std::optional<NormalizedPresentation> build(RelatorPresentation const& p) {
    std::size_t const             count = kept_.size();
    std::vector<std::vector<int>> raw_index(count);
    std::vector<std::vector<Letter>> segs(count);
    int lo = 0, hi = 0;
    bool any = false;
    for (std::size_t q = 0; q < count; ++q) {
      segs[q] = segment(q);
      int rho = 0;
      for (Letter x : segs[q]) {
        if (Alphabet::is_t(x)) {
          rho += Alphabet::t_sign(x);
          continue;
        }
        raw_index[q].push_back(-rho);
        lo  = any ? std::min(lo, -rho) : -rho;
        hi  = any ? std::max(hi, -rho) : -rho;
        any = true;
      }
    }
    int  s  = hi - lo;
    auto H  = alphabet_->with_s(s);
    auto to_h = [&](std::size_t q) {
      std::vector<Letter> out;
      std::size_t         idx = 0;
      for (Letter x : segs[q]) {
        if (Alphabet::is_t(x)) {
          continue;
        }
        int factor = raw_index[q][idx++] - lo;
        out.push_back(H->base_letter(factor, alphabet_->generator_of(x), Alphabet::is_inverse_letter(x)));
      }
      return FPElement::from_letters(H, out);
    };
    // kept_[0] is the t after c; segments alternate b_0, a_0, b_1, ... a_m, c.
    std::vector<FPElement> a, b;
    for (std::size_t q = 0; q + 1 < count; ++q) {
      (q % 2 == 0 ? b : a).push_back(to_h(q));
    }
    auto np   = NormalizedPresentation::assemble(H, to_h(count - 1), std::move(a), std::move(b), p.k());
    auto cond = check_conditions(np);
    bool ok   = cond.status[0] == CheckStatus::kPass && cond.status[1] == CheckStatus::kPass
              && cond.status[3] == CheckStatus::kPass
              && (cond.status[2] == CheckStatus::kPass
                  || (options_.allow_torsion && cond.status[2] == CheckStatus::kUndetermined));
    if (!ok) {
      return std::nullopt;
    }
    auto conj = find_conjugator(substitute_back(np.v), p.w());
    if (!conj) {
      throw Error(ErrorCode::kNormalizationFailed, "height rewriting lost the conjugacy class of w");
    }
    np.back_conjugator = *conj;
    return np;
  }

  AlphabetPtr              alphabet_;
  std::vector<Letter>      letters_;
  NormalizeOptions         options_;
  std::vector<std::size_t> t_pos_;
  std::vector<std::size_t> kept_;
  long                     nodes_ = 0;
};

}  // namespace

NormalizationResult normalize(RelatorPresentation const& p, NormalizeOptions const& options) {
  if (!p.is_unimodular()) {
    throw Error(ErrorCode::kNotUnimodular, "normalize needs a unimodular relator");
  }
  if (!p.base().is_torsion_free() && !options.allow_torsion) {
    throw Error(ErrorCode::kTorsionBase, "base group has torsion");
  }
  auto core = tword_cyclic_reduce(p.w()).core;
  if (core.t_count() == 1) {
    auto const& L  = core.letters();
    auto        at = std::find(L.begin(), L.end(), kT);
    std::vector<Letter> g(at + 1, L.end());
    g.insert(g.end(), L.begin(), at);
    return FreeProductCase{FPElement::from_letters(p.alphabet(), g)};
  }
  Splitter splitter(core, options);
  if (auto np = splitter.run(p)) {
    return *std::move(np);
  }
  throw Error(ErrorCode::kNormalizationFailed,
              splitter.exhausted() ? "search budget exhausted" : "no splitting satisfies conditions 1-4");
}

}  // namespace relhyp
