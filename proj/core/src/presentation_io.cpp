#include "relhyp/presentation_io.hpp"

#include "json_support.hpp"
#include "relhyp/word_io.hpp"

namespace relhyp {

using detail::field;
using detail::int_field;
using detail::ordered_json;
using detail::string_field;

namespace {

BaseGroup parse_base(ordered_json const& j) {
  auto kind = string_field(j, "kind");
  auto const& gens = field(j, "generators");
  if (!gens.is_array()) {
    throw Error(ErrorCode::kParse, "\"generators\" must be an array");
  }
  std::vector<std::string> names;
  for (auto const& g : gens) {
    if (!g.is_string()) {
      throw Error(ErrorCode::kParse, "generator names must be strings");
    }
    names.push_back(g.get<std::string>());
  }
  if (kind == "free") {
    return BaseGroup::free(std::move(names));
  }
  if (names.size() != 1) {
    throw Error(ErrorCode::kParse, "cyclic base groups have exactly one generator");
  }
  if (kind == "infinite_cyclic") {
    return BaseGroup::infinite_cyclic(names.front());
  }
  if (kind == "finite_cyclic") {
    return BaseGroup::finite_cyclic(names.front(), int_field(j, "order"));
  }
  throw Error(ErrorCode::kParse, "unknown base kind \"" + kind + "\"");
}

ordered_json base_json(BaseGroup const& base) {
  ordered_json j;
  switch (base.kind()) {
    case BaseKind::kFree: j["kind"] = "free"; break;
    case BaseKind::kInfiniteCyclic: j["kind"] = "infinite_cyclic"; break;
    case BaseKind::kFiniteCyclic: j["kind"] = "finite_cyclic"; break;
  }
  j["generators"] = base.generators();
  if (base.kind() == BaseKind::kFiniteCyclic) {
    j["order"] = base.order();
  }
  return j;
}

std::vector<FPElement> parse_elements(AlphabetPtr const& H, ordered_json const& j, char const* name) {
  auto const& list = field(j, name);
  if (!list.is_array()) {
    throw Error(ErrorCode::kParse, std::string("field \"") + name + "\" must be an array");
  }
  std::vector<FPElement> out;
  for (auto const& x : list) {
    if (!x.is_string()) {
      throw Error(ErrorCode::kParse, std::string("entries of \"") + name + "\" must be strings");
    }
    out.push_back(parse_element(H, x.get<std::string>()));
  }
  return out;
}

ordered_json presentation_json(RelatorPresentation const& p) {
  ordered_json j;
  j["base"] = base_json(p.base());
  j["w"]    = format_word(p.w());
  j["k"]    = p.k();
  return j;
}

}  // namespace

PresentationFile parse_presentation(std::string_view text, bool allow_nonunimodular) {
  auto j = detail::parse_json(text);
  if (!j.is_object()) {
    throw Error(ErrorCode::kParse, "presentation must be a JSON object");
  }
  auto base = parse_base(field(j, "base"));
  auto G    = Alphabet::make(base, 0);
  auto w    = parse_word(G, string_field(j, "w"));
  auto p    = RelatorPresentation::make(base, std::move(w), int_field(j, "k"), allow_nonunimodular);
  if (!j.contains("s")) {
    return {std::move(p), std::nullopt};
  }
  int s = int_field(j, "s");
  if (s < 0) {
    throw Error(ErrorCode::kParse, "\"s\" must be non-negative");
  }
  auto H  = Alphabet::make(base, s);
  auto a  = parse_elements(H, j, "a");
  auto b  = parse_elements(H, j, "b");
  auto np = NormalizedPresentation::assemble(H, parse_element(H, string_field(j, "c")), std::move(a),
                                             std::move(b), p.k());
  if (j.contains("m") && int_field(j, "m") != np.m) {
    throw Error(ErrorCode::kStructure, "\"m\" disagrees with the lengths of \"a\" and \"b\"");
  }
  if (j.contains("v") && parse_word(H, string_field(j, "v")) != np.v) {
    throw Error(ErrorCode::kStructure, "\"v\" disagrees with c, a and b");
  }
  auto conj = find_conjugator(substitute_back(np.v), p.w());
  if (!conj) {
    throw Error(ErrorCode::kStructure, "v does not rewrite w: back-substitution is not conjugate to w");
  }
  np.back_conjugator = *conj;
  return {std::move(p), std::move(np)};
}

std::string serialize_presentation(RelatorPresentation const& p) {
  return detail::dump(presentation_json(p));
}

std::string serialize_normalized(RelatorPresentation const& p, NormalizedPresentation const& np) {
  auto j = presentation_json(p);
  j["s"] = np.s;
  j["m"] = np.m;
  j["c"] = format_element(np.c);
  j["a"] = ordered_json::array();
  j["b"] = ordered_json::array();
  for (auto const& x : np.a) {
    j["a"].push_back(format_element(x));
  }
  for (auto const& x : np.b) {
    j["b"].push_back(format_element(x));
  }
  j["v"] = format_word(np.v);
  return detail::dump(j);
}

}  // namespace relhyp
