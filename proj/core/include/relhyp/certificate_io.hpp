#ifndef RELHYP_CERTIFICATE_IO_HPP_
#define RELHYP_CERTIFICATE_IO_HPP_

#include <string>
#include <string_view>

#include "relhyp/prover.hpp"

namespace relhyp {

// Certificate files are JSON objects
//   {"context": "starting" | "normalized",
//    "u": "<word>",
//    "terms": [{"f": "<word>", "R": "k" | {"phi": "<p word>"}, "sign": 1 | -1}]}
// with "context" optional and defaulting to "starting". Words are over the
// alphabet of the named context; normalized may be null when only the
// starting presentation is at hand, and a normalized certificate then fails
// with kCertificate. Syntax errors throw kParse.
AreaCertificate parse_certificate(std::string_view text, AlphabetPtr const& starting,
                                  AlphabetPtr const& normalized = nullptr);
std::string     serialize_certificate(AreaCertificate const& cert);

}  // namespace relhyp

#endif  // RELHYP_CERTIFICATE_IO_HPP_
