#include "relhyp/certificate_io.hpp"

#include "json_support.hpp"
#include "relhyp/word_io.hpp"

namespace relhyp {

using detail::field;
using detail::int_field;
using detail::ordered_json;
using detail::string_field;

namespace {

CertificateTerm parse_term(ordered_json const& j, AlphabetPtr const& alphabet) {
  auto f    = parse_word(alphabet, string_field(j, "f"));
  int  sign = int_field(j, "sign");
  if (sign != 1 && sign != -1) {
    throw Error(ErrorCode::kParse, "\"sign\" must be 1 or -1");
  }
  auto const& r = field(j, "R");
  if (r.is_string()) {
    if (r.get<std::string>() != "k") {
      throw Error(ErrorCode::kParse, "\"R\" must be \"k\" or {\"phi\": ...}");
    }
    return {std::move(f), RelatorKind::kCell, std::nullopt, sign};
  }
  if (r.is_object()) {
    auto p = parse_element(alphabet, string_field(r, "phi"));
    return {std::move(f), RelatorKind::kPhi, std::move(p), sign};
  }
  throw Error(ErrorCode::kParse, "\"R\" must be \"k\" or {\"phi\": ...}");
}

}  // namespace

AreaCertificate parse_certificate(std::string_view text, AlphabetPtr const& starting,
                                  AlphabetPtr const& normalized) {
  auto j = detail::parse_json(text);
  if (!j.is_object()) {
    throw Error(ErrorCode::kParse, "certificate must be a JSON object");
  }
  auto context = CertificateContext::kStarting;
  if (j.contains("context")) {
    auto name = string_field(j, "context");
    if (name == "normalized") {
      context = CertificateContext::kNormalized;
    } else if (name != "starting") {
      throw Error(ErrorCode::kParse, "unknown context \"" + name + "\"");
    }
  }
  auto const& alphabet = context == CertificateContext::kStarting ? starting : normalized;
  if (!alphabet) {
    throw Error(ErrorCode::kCertificate, "certificate is over a normalized presentation that is not available");
  }
  auto const& terms = field(j, "terms");
  if (!terms.is_array()) {
    throw Error(ErrorCode::kParse, "\"terms\" must be an array");
  }
  AreaCertificate cert{context, parse_word(alphabet, string_field(j, "u")), {}};
  for (auto const& t : terms) {
    cert.terms.push_back(parse_term(t, alphabet));
  }
  return cert;
}

std::string serialize_certificate(AreaCertificate const& cert) {
  ordered_json j;
  j["context"] = to_string(cert.context);
  j["u"]       = format_word(cert.u);
  j["terms"]   = ordered_json::array();
  for (auto const& t : cert.terms) {
    ordered_json term;
    term["f"] = format_word(t.f);
    if (t.kind == RelatorKind::kCell) {
      term["R"] = "k";
    } else {
      term["R"] = {{"phi", t.p ? format_element(*t.p) : std::string("1")}};
    }
    term["sign"] = t.sign;
    j["terms"].push_back(std::move(term));
  }
  return detail::dump(j);
}

}  // namespace relhyp
