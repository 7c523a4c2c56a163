#include "relhyp/word.hpp"

#include <algorithm>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

void check_same(Alphabet const& x, Alphabet const& y) {
  if (!x.same_structure(y)) {
    throw Error(ErrorCode::kStructure, "operands live over different factor structures");
  }
}

// Appends x to an already reduced stack, keeping it reduced. Inverse letters
// of a finite cyclic factor are rewritten as n - 1 positive letters.
void push_letter(Alphabet const& alphabet, std::vector<Letter>& st, Letter x) {
  if (alphabet.is_cyclic_factor_letter(x)) {
    int const n = alphabet.base().order();
    if (Alphabet::is_inverse_letter(x)) {
      for (int i = 0; i < n - 1; ++i) {
        push_letter(alphabet, st, x ^ 1);
      }
      return;
    }
    st.push_back(x);
    int run = 0;
    for (auto it = st.rbegin(); it != st.rend() && *it == x && run < n; ++it) {
      ++run;
    }
    if (run == n) {
      st.resize(st.size() - n);
    }
    return;
  }
  if (!st.empty() && st.back() == (x ^ 1)) {
    st.pop_back();
  } else {
    st.push_back(x);
  }
}

std::vector<Letter> reduce_letters(Alphabet const& alphabet, std::span<Letter const> raw) {
  std::vector<Letter> st;
  st.reserve(raw.size());
  for (Letter x : raw) {
    push_letter(alphabet, st, x);
  }
  return st;
}

std::vector<Letter> inverse_letters(Alphabet const& alphabet, std::vector<Letter> const& w) {
  std::vector<Letter> raw(w.rbegin(), w.rend());
  for (auto& x : raw) {
    x ^= 1;
  }
  return reduce_letters(alphabet, raw);
}

std::vector<Letter> concat(std::vector<Letter> x, std::vector<Letter> const& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

std::vector<Letter> rotate_left(std::vector<Letter> const& w, std::size_t r) {
  std::vector<Letter> out(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
  return out;
}

}  // namespace

// FPElement

FPElement FPElement::identity(AlphabetPtr alphabet) {
  return FPElement(std::move(alphabet), {});
}

FPElement FPElement::from_letters(AlphabetPtr alphabet, std::span<Letter const> letters) {
  for (Letter x : letters) {
    if (Alphabet::is_t(x)) {
      throw Error(ErrorCode::kStructure, "t-letter inside an element of H");
    }
  }
  auto reduced = reduce_letters(*alphabet, letters);
  return FPElement(std::move(alphabet), std::move(reduced));
}

FPElement FPElement::generator(AlphabetPtr alphabet, int factor, int gen) {
  if (factor < 0 || factor > alphabet->s() || gen < 0 || gen >= alphabet->base().rank()) {
    throw Error(ErrorCode::kInvalidArgument, "generator index out of range");
  }
  Letter x = alphabet->base_letter(factor, gen, false);
  return from_letters(std::move(alphabet), std::span<Letter const>(&x, 1));
}

FPElement FPElement::from_syllables(AlphabetPtr alphabet, std::span<Syllable const> syllables) {
  std::vector<Letter> raw;
  for (auto const& syl : syllables) {
    if (syl.factor < 0 || syl.factor > alphabet->s()) {
      throw Error(ErrorCode::kStructure, "syllable factor out of range");
    }
    if (alphabet->base().kind() == BaseKind::kFiniteCyclic) {
      for (int i = 0; i < syl.element.residue; ++i) {
        raw.push_back(alphabet->base_letter(syl.factor, 0, false));
      }
    } else {
      for (int code : syl.element.word) {
        raw.push_back(alphabet->base_letter(syl.factor, code / 2, (code & 1) != 0));
      }
    }
  }
  return from_letters(std::move(alphabet), raw);
}

std::vector<Syllable> FPElement::syllables() const {
  std::vector<Syllable> out;
  for (Letter x : letters_) {
    int f = alphabet_->factor_of(x);
    if (out.empty() || out.back().factor != f) {
      out.push_back({f, {}});
    }
    auto& el = out.back().element;
    if (alphabet_->is_cyclic_factor_letter(x)) {
      ++el.residue;
    } else {
      el.word.push_back(2 * alphabet_->generator_of(x) + (Alphabet::is_inverse_letter(x) ? 1 : 0));
    }
  }
  return out;
}

FPElement FPElement::inverse() const {
  return FPElement(alphabet_, inverse_letters(*alphabet_, letters_));
}

FPElement fp_multiply(FPElement const& x, FPElement const& y) {
  check_same(*x.alphabet(), *y.alphabet());
  return FPElement::from_letters(x.alphabet(), concat(x.letters(), y.letters()));
}

// TWord

TWord TWord::identity(AlphabetPtr alphabet) {
  return TWord(std::move(alphabet), {});
}

TWord TWord::t(AlphabetPtr alphabet, int sign) {
  return TWord(std::move(alphabet), {sign > 0 ? kT : kTInv});
}

TWord TWord::from_letters(AlphabetPtr alphabet, std::span<Letter const> letters) {
  auto reduced = reduce_letters(*alphabet, letters);
  return TWord(std::move(alphabet), std::move(reduced));
}

TWord TWord::from_element(FPElement const& h) {
  return TWord(h.alphabet(), h.letters());
}

int TWord::t_count() const noexcept {
  return static_cast<int>(std::count_if(letters_.begin(), letters_.end(), Alphabet::is_t));
}

std::vector<WordItem> TWord::items() const {
  std::vector<WordItem> out;
  std::vector<Letter>   run;
  auto flush = [&] {
    if (!run.empty()) {
      out.emplace_back(FPElement(alphabet_, run));
      run.clear();
    }
  };
  for (Letter x : letters_) {
    if (Alphabet::is_t(x)) {
      flush();
      out.emplace_back(x == kT ? TLetter::kPos : TLetter::kNeg);
    } else {
      run.push_back(x);
    }
  }
  flush();
  return out;
}

std::optional<FPElement> TWord::as_element() const {
  if (t_count() != 0) {
    return std::nullopt;
  }
  return FPElement(alphabet_, letters_);
}

TWord TWord::inverse() const {
  return TWord(alphabet_, inverse_letters(*alphabet_, letters_));
}

TWord TWord::pow(int n) const {
  TWord base = n < 0 ? inverse() : *this;
  std::vector<Letter> raw;
  for (int i = 0; i < std::abs(n); ++i) {
    raw.insert(raw.end(), base.letters_.begin(), base.letters_.end());
  }
  return from_letters(alphabet_, raw);
}

TWord operator*(TWord const& x, TWord const& y) {
  check_same(*x.alphabet(), *y.alphabet());
  return TWord::from_letters(x.alphabet(), concat(x.letters(), y.letters()));
}

TWord tword_reduce(AlphabetPtr const& alphabet, std::span<WordItem const> raw) {
  std::vector<Letter> letters;
  for (auto const& item : raw) {
    if (auto const* h = std::get_if<FPElement>(&item)) {
      check_same(*alphabet, *h->alphabet());
      letters.insert(letters.end(), h->letters().begin(), h->letters().end());
    } else {
      letters.push_back(std::get<TLetter>(item) == TLetter::kPos ? kT : kTInv);
    }
  }
  return TWord::from_letters(alphabet, letters);
}

TWord tword_product(std::span<TWord const> factors) {
  if (factors.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty product needs an alphabet");
  }
  std::vector<Letter> raw;
  for (auto const& f : factors) {
    check_same(*factors.front().alphabet(), *f.alphabet());
    raw.insert(raw.end(), f.letters().begin(), f.letters().end());
  }
  return TWord::from_letters(factors.front().alphabet(), raw);
}

int tword_exponent_sum(TWord const& w) {
  int sum = 0;
  for (Letter x : w.letters()) {
    if (Alphabet::is_t(x)) {
      sum += Alphabet::t_sign(x);
    }
  }
  return sum;
}

CyclicReduction tword_cyclic_reduce(TWord const& w) {
  auto const&         alphabet = *w.alphabet();
  std::vector<Letter> core     = w.letters();
  // core = conj * w * conj^-1
  std::vector<Letter> conj;
  while (core.size() >= 2) {
    Letter front = core.front();
    Letter back  = core.back();
    if (!alphabet.is_cyclic_factor_letter(front) && front == (back ^ 1)) {
      core = std::vector<Letter>(core.begin() + 1, core.end() - 1);
      std::vector<Letter> raw{front ^ 1};
      raw.insert(raw.end(), conj.begin(), conj.end());
      conj = reduce_letters(alphabet, raw);
      continue;
    }
    if (alphabet.is_cyclic_factor_letter(front) && alphabet.is_cyclic_factor_letter(back)
        && alphabet.factor_of(front) == alphabet.factor_of(back)) {
      int  f     = alphabet.factor_of(front);
      auto split = std::find_if(core.begin(), core.end(), [&](Letter x) {
        return Alphabet::is_t(x) || alphabet.factor_of(x) != f;
      });
      if (split == core.end()) {
        break;  // a single syllable of a cyclic factor
      }
      std::vector<Letter> lead(core.begin(), split);
      std::vector<Letter> raw(split, core.end());
      raw.insert(raw.end(), lead.begin(), lead.end());
      core = reduce_letters(alphabet, raw);
      auto inv_lead = inverse_letters(alphabet, lead);
      inv_lead.insert(inv_lead.end(), conj.begin(), conj.end());
      conj = reduce_letters(alphabet, inv_lead);
      continue;
    }
    break;
  }
  return {TWord::from_letters(w.alphabet(), core), TWord::from_letters(w.alphabet(), conj)};
}

TWord canonical_rotation(TWord const& w) {
  auto const& letters = w.letters();
  std::size_t best    = 0;
  std::size_t n       = letters.size();
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      Letter a = letters[(r + i) % n];
      Letter b = letters[(best + i) % n];
      if (a != b) {
        if (a < b) {
          best = r;
        }
        break;
      }
    }
  }
  return TWord::from_letters(w.alphabet(), rotate_left(letters, best));
}

TWord conjugacy_normal_form(TWord const& w) {
  return canonical_rotation(tword_cyclic_reduce(w).core);
}

bool is_conjugate(TWord const& u, TWord const& v) {
  if (!u.alphabet()->same_structure(*v.alphabet())) {
    return false;
  }
  return conjugacy_normal_form(u) == conjugacy_normal_form(v);
}

bool shortlex_less(TWord const& x, TWord const& y) {
  if (x.length() != y.length()) {
    return x.length() < y.length();
  }
  return x.letters() < y.letters();
}

std::optional<TWord> find_conjugator(TWord const& x, TWord const& y) {
  check_same(*x.alphabet(), *y.alphabet());
  auto cx = tword_cyclic_reduce(x);
  auto cy = tword_cyclic_reduce(y);
  auto const& X = cx.core.letters();
  auto const& Y = cy.core.letters();
  if (X.size() != Y.size()) {
    return std::nullopt;
  }
  std::optional<TWord> best;
  std::size_t const    n = Y.size();
  for (std::size_t r = 0; r < std::max<std::size_t>(n, 1); ++r) {
    if (n > 0 && rotate_left(Y, r) != X) {
      continue;
    }
    // Y = P Q, X = Q P = P^-1 Y P, so x = (Cy^-1 P Cx)^-1 y (Cy^-1 P Cx).
    auto P = TWord::from_letters(x.alphabet(), std::vector<Letter>(Y.begin(), Y.begin() + static_cast<std::ptrdiff_t>(r)));
    auto c = cy.conjugator.inverse() * P * cx.conjugator;
    if (!best || shortlex_less(c, *best)) {
      best = std::move(c);
    }
  }
  return best;
}

TWord substitute_back(TWord const& x) {
  auto const& alphabet = *x.alphabet();
  auto        target   = alphabet.with_s(0);
  std::vector<Letter> raw;
  for (Letter l : x.letters()) {
    if (Alphabet::is_t(l)) {
      raw.push_back(l);
      continue;
    }
    int i = alphabet.factor_of(l);
    raw.insert(raw.end(), static_cast<std::size_t>(i), kTInv);
    raw.push_back(target->base_letter(0, alphabet.generator_of(l), Alphabet::is_inverse_letter(l)));
    raw.insert(raw.end(), static_cast<std::size_t>(i), kT);
  }
  return TWord::from_letters(target, raw);
}

TWord substitute_back(FPElement const& x) {
  return substitute_back(TWord::from_element(x));
}

bool has_infinite_order(FPElement const& h) {
  auto core = tword_cyclic_reduce(TWord::from_element(h)).core;
  if (core.is_identity()) {
    return false;
  }
  auto syllables = core.as_element()->syllables();
  if (syllables.size() >= 2) {
    return true;
  }
  return h.alphabet()->base().is_torsion_free();
}

}  // namespace relhyp
