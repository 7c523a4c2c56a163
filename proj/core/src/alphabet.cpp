#include "relhyp/alphabet.hpp"

#include <algorithm>
#include <cctype>

#include "relhyp/error.hpp"
#include "relhyp/rational.hpp"

namespace relhyp {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kStructure: return "structure";
    case ErrorCode::kNotUnimodular: return "not-unimodular";
    case ErrorCode::kTorsionBase: return "torsion-base";
    case ErrorCode::kNormalizationFailed: return "normalization-failed";
    case ErrorCode::kNotInDomain: return "not-in-domain";
    case ErrorCode::kMalformedDiagram: return "malformed-diagram";
    case ErrorCode::kNoSuchConjugate: return "no-such-conjugate";
    case ErrorCode::kSchedule: return "schedule";
    case ErrorCode::kCertificate: return "certificate";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

namespace {

void check_names(std::vector<std::string> const& names) {
  if (names.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "base group needs at least one generator");
  }
  for (auto const& n : names) {
    bool ok = !n.empty() && std::isalpha(static_cast<unsigned char>(n[0]))
              && std::all_of(n.begin(), n.end(), [](char c) {
                   return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                 });
    if (!ok || n == "t") {
      throw Error(ErrorCode::kInvalidArgument, "bad generator name '" + n + "'");
    }
  }
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate generator name");
  }
}

}  // namespace

BaseGroup::BaseGroup(BaseKind kind, std::vector<std::string> generators, int order)
    : kind_(kind), generators_(std::move(generators)), order_(order) {
  check_names(generators_);
}

BaseGroup BaseGroup::free(std::vector<std::string> generators) {
  return BaseGroup(BaseKind::kFree, std::move(generators), 0);
}

BaseGroup BaseGroup::infinite_cyclic(std::string generator) {
  return BaseGroup(BaseKind::kInfiniteCyclic, {std::move(generator)}, 0);
}

BaseGroup BaseGroup::finite_cyclic(std::string generator, int order) {
  if (order < 2) {
    throw Error(ErrorCode::kInvalidArgument, "finite cyclic base needs order >= 2");
  }
  return BaseGroup(BaseKind::kFiniteCyclic, {std::move(generator)}, order);
}

AlphabetPtr Alphabet::make(BaseGroup base, int s) {
  if (s < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative factor count");
  }
  return AlphabetPtr(new Alphabet(std::move(base), s));
}

AlphabetPtr Alphabet::with_s(int s) const {
  return make(base_, s);
}

std::string to_string(Rational const& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::int64_t floor(Rational const& q) {
  auto n = q.numerator();
  auto d = q.denominator();
  auto r = n / d;
  if ((n % d != 0) && (n < 0)) {
    --r;
  }
  return r;
}

Rational floor_div(Rational const& q, Rational const& period) {
  return Rational(floor(q / period));
}

Rational mod(Rational const& q, Rational const& period) {
  return q - floor_div(q, period) * period;
}

}  // namespace relhyp
