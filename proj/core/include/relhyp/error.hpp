#ifndef RELHYP_ERROR_HPP_
#define RELHYP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace relhyp {

enum class ErrorCode {
  kParse,
  kStructure,
  kNotUnimodular,
  kTorsionBase,
  kNormalizationFailed,
  kNotInDomain,
  kMalformedDiagram,
  kNoSuchConjugate,
  kSchedule,
  kCertificate,
  kInvalidArgument,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every library failure is reported through this type. The code is stable and
// is what the command-line tool prints after "ERROR:".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept {
    return code_;
  }

 private:
  ErrorCode code_;
};

}  // namespace relhyp

#endif  // RELHYP_ERROR_HPP_
