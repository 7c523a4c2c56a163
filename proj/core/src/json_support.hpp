#ifndef RELHYP_SRC_JSON_SUPPORT_HPP_
#define RELHYP_SRC_JSON_SUPPORT_HPP_

#include <string>
#include <string_view>

#include <json.hpp>

#include "relhyp/error.hpp"

namespace relhyp::detail {

using nlohmann::ordered_json;

inline ordered_json parse_json(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (ordered_json::exception const& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

inline ordered_json const& field(ordered_json const& object, char const* name) {
  if (!object.is_object() || !object.contains(name)) {
    throw Error(ErrorCode::kParse, std::string("missing field \"") + name + "\"");
  }
  return object.at(name);
}

inline std::string string_field(ordered_json const& object, char const* name) {
  auto const& value = field(object, name);
  if (!value.is_string()) {
    throw Error(ErrorCode::kParse, std::string("field \"") + name + "\" must be a string");
  }
  return value.get<std::string>();
}

inline int int_field(ordered_json const& object, char const* name) {
  auto const& value = field(object, name);
  if (!value.is_number_integer()) {
    throw Error(ErrorCode::kParse, std::string("field \"") + name + "\" must be an integer");
  }
  return value.get<int>();
}

inline std::string dump(ordered_json const& value) {
  return value.dump(2) + "\n";
}

}  // namespace relhyp::detail

#endif  // RELHYP_SRC_JSON_SUPPORT_HPP_
