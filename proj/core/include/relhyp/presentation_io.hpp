#ifndef RELHYP_PRESENTATION_IO_HPP_
#define RELHYP_PRESENTATION_IO_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "relhyp/presentation.hpp"

namespace relhyp {

// Presentation files are JSON objects
//   {"base": {"kind": "free" | "infinite_cyclic" | "finite_cyclic",
//             "generators": [...], "order": n},
//    "w": "<word>", "k": k}
// and a normalized presentation adds "s", "m", "c", "a", "b" and "v". All
// parse failures throw kParse; semantic failures keep their own codes.
struct PresentationFile {
  RelatorPresentation                   presentation;
  std::optional<NormalizedPresentation> normalized;
};

PresentationFile parse_presentation(std::string_view text, bool allow_nonunimodular = false);

std::string serialize_presentation(RelatorPresentation const& p);
std::string serialize_normalized(RelatorPresentation const& p, NormalizedPresentation const& np);

}  // namespace relhyp

#endif  // RELHYP_PRESENTATION_IO_HPP_
