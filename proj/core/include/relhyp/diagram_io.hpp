#ifndef RELHYP_DIAGRAM_IO_HPP_
#define RELHYP_DIAGRAM_IO_HPP_

#include <string>
#include <string_view>

#include "relhyp/diagram.hpp"

namespace relhyp {

// Diagram files are JSON objects
//   {"edges": [{"id": i, "tail": v, "head": w}, ...],
//    "faces": [{"id": f, "exterior": bool,
//               "boundary": [{"corner": "<word>"}, {"edge": i, "dir": "+"}, ...]}]}
// where each boundary starts with a corner and alternates corners and edge
// traversals anticlockwise. Corner words are over H, so parsing needs the
// alphabet. Syntax errors throw kParse, structural ones kMalformedDiagram.
Diagram     parse_diagram(std::string_view text, AlphabetPtr const& alphabet);
std::string serialize_diagram(Diagram const& d);

}  // namespace relhyp

#endif  // RELHYP_DIAGRAM_IO_HPP_
