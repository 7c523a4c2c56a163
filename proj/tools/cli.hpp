#ifndef RELHYP_TOOLS_CLI_HPP_
#define RELHYP_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace relhyp::cli {

enum class Format { kText, kJson };

struct Config {
  std::string              subcommand;
  std::vector<std::string> inputs;  // file paths, or the word for `prove`
  std::optional<std::string> output;
  bool                     allow_nonunimodular = false;
  int                      max_terms    = 3;
  int                      max_conj_len = 3;
  Format                   format       = Format::kText;
  std::uint32_t            seed         = 1;
  int                      faces        = 10;  // `sample` only
};

// 0 success, 1 failed verification or unknown, 2 input error. Reports go to
// out, a single "ERROR: <code>: <reason>" line goes to err.
int run(Config const& config, std::ostream& out, std::ostream& err);

// Parses argv into a Config and runs it. CLI errors exit 2 as well.
int main_with_args(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relhyp::cli

#endif  // RELHYP_TOOLS_CLI_HPP_
