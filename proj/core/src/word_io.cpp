#include "relhyp/word_io.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

std::string format_letters(Alphabet const& alphabet, std::vector<Letter> const& letters) {
  if (letters.empty()) {
    return "1";
  }
  std::string out;
  for (Letter x : letters) {
    if (!out.empty()) {
      out += '.';
    }
    if (Alphabet::is_t(x)) {
      out += x == kT ? "t" : "t^-1";
      continue;
    }
    out += alphabet.base().generators()[static_cast<std::size_t>(alphabet.generator_of(x))];
    if (alphabet.s() > 0) {
      out += '@';
      out += std::to_string(alphabet.factor_of(x));
    }
    if (Alphabet::is_inverse_letter(x)) {
      out += "^-1";
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void bad(std::string_view token, char const* why) {
  throw Error(ErrorCode::kParse, "bad word token '" + std::string(token) + "': " + why);
}

int parse_int(std::string_view token, std::string_view digits) {
  int  value = 0;
  auto res   = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (res.ec != std::errc() || res.ptr != digits.data() + digits.size()) {
    bad(token, "expected an integer");
  }
  return value;
}

std::vector<Letter> parse_letters(Alphabet const& alphabet, std::string_view text) {
  std::vector<Letter> raw;
  text = trim(text);
  if (text.empty()) {
    throw Error(ErrorCode::kParse, "empty word (use \"1\" for the identity)");
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next  = text.find('.', pos);
    auto token = trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    pos        = next == std::string_view::npos ? text.size() + 1 : next + 1;
    if (token.empty()) {
      bad(token, "empty letter");
    }
    if (token == "1") {
      continue;
    }
    int  exponent = 1;
    auto caret    = token.find('^');
    auto stem     = caret == std::string_view::npos ? token : token.substr(0, caret);
    if (caret != std::string_view::npos) {
      exponent = parse_int(token, token.substr(caret + 1));
    }
    int  factor = 0;
    auto at     = stem.find('@');
    auto name   = stem.substr(0, at);
    if (at != std::string_view::npos) {
      factor = parse_int(token, stem.substr(at + 1));
      if (factor < 0 || factor > alphabet.s()) {
        bad(token, "factor index out of range");
      }
    }
    Letter letter;
    if (name == "t") {
      if (at != std::string_view::npos) {
        bad(token, "t carries no factor index");
      }
      letter = kT;
    } else {
      auto const& gens = alphabet.base().generators();
      auto        it   = std::find(gens.begin(), gens.end(), name);
      if (it == gens.end()) {
        bad(token, "unknown generator");
      }
      letter = alphabet.base_letter(factor, static_cast<int>(it - gens.begin()), false);
    }
    Letter use = exponent < 0 ? (letter ^ 1) : letter;
    for (int i = 0; i < std::abs(exponent); ++i) {
      raw.push_back(use);
    }
  }
  return raw;
}

}  // namespace

std::string format_word(TWord const& w) {
  return format_letters(*w.alphabet(), w.letters());
}

std::string format_element(FPElement const& h) {
  return format_letters(*h.alphabet(), h.letters());
}

TWord parse_word(AlphabetPtr const& alphabet, std::string_view text) {
  return TWord::from_letters(alphabet, parse_letters(*alphabet, text));
}

FPElement parse_element(AlphabetPtr const& alphabet, std::string_view text) {
  return FPElement::from_letters(alphabet, parse_letters(*alphabet, text));
}

}  // namespace relhyp
