#include "relhyp/diagram_io.hpp"

#include <map>

#include "json_support.hpp"
#include "relhyp/word_io.hpp"

namespace relhyp {

using detail::field;
using detail::int_field;
using detail::ordered_json;
using detail::string_field;

Diagram parse_diagram(std::string_view text, AlphabetPtr const& alphabet) {
  auto j = detail::parse_json(text);
  auto const& edges_json = field(j, "edges");
  auto const& faces_json = field(j, "faces");
  if (!edges_json.is_array() || !faces_json.is_array()) {
    throw Error(ErrorCode::kParse, "\"edges\" and \"faces\" must be arrays");
  }
  std::vector<EdgeSpec> edges;
  std::map<int, int>    index;
  for (auto const& e : edges_json) {
    EdgeSpec spec{int_field(e, "id"), int_field(e, "tail"), int_field(e, "head")};
    index.emplace(spec.id, static_cast<int>(edges.size()));
    edges.push_back(spec);
  }
  std::vector<FaceSpec> faces;
  for (auto const& f : faces_json) {
    FaceSpec spec{int_field(f, "id"), false, {}, {}};
    auto const& ext = field(f, "exterior");
    if (!ext.is_boolean()) {
      throw Error(ErrorCode::kParse, "\"exterior\" must be a boolean");
    }
    spec.exterior          = ext.get<bool>();
    auto const& boundary   = field(f, "boundary");
    if (!boundary.is_array() || boundary.size() % 2 != 0) {
      throw Error(ErrorCode::kParse, "face " + std::to_string(spec.id) + ": boundary must alternate corners and edges");
    }
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      auto const& item = boundary[i];
      if (i % 2 == 0) {
        spec.corners.push_back(parse_element(alphabet, string_field(item, "corner")));
        continue;
      }
      int  id  = int_field(item, "edge");
      auto dir = string_field(item, "dir");
      if (dir != "+" && dir != "-") {
        throw Error(ErrorCode::kParse, "\"dir\" must be \"+\" or \"-\"");
      }
      auto it = index.find(id);
      if (it == index.end()) {
        throw Error(ErrorCode::kMalformedDiagram, "face " + std::to_string(spec.id) + " uses unknown edge " +
                                                      std::to_string(id));
      }
      spec.edges.push_back({it->second, dir == "+" ? 1 : -1});
    }
    faces.push_back(std::move(spec));
  }
  return Diagram::make(alphabet, std::move(edges), std::move(faces));
}

std::string serialize_diagram(Diagram const& d) {
  ordered_json j;
  j["edges"] = ordered_json::array();
  for (auto const& e : d.edges()) {
    j["edges"].push_back(ordered_json{{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  }
  j["faces"] = ordered_json::array();
  for (auto const& f : d.faces()) {
    ordered_json boundary = ordered_json::array();
    for (std::size_t i = 0; i < f.edges.size(); ++i) {
      boundary.push_back(ordered_json{{"corner", format_element(f.corners[i])}});
      boundary.push_back(
          ordered_json{{"edge", d.edges()[f.edges[i].edge].id}, {"dir", f.edges[i].sign > 0 ? "+" : "-"}});
    }
    j["faces"].push_back(ordered_json{{"id", f.id}, {"exterior", f.exterior}, {"boundary", boundary}});
  }
  return detail::dump(j);
}

}  // namespace relhyp
