#ifndef RELHYP_WORD_IO_HPP_
#define RELHYP_WORD_IO_HPP_

#include <string>
#include <string_view>

#include "relhyp/word.hpp"

namespace relhyp {

// Text form of words: letters joined by '.', "t" and "t^-1" for the stable
// letter, "a0@2" for generator a0 of factor copy 2 (the suffix is omitted
// when s = 0), "^-1" for inverses and "1" for the identity. The parser also
// accepts integer exponents ("a^3", "t^-2") and explicit "1" letters; the
// formatter only produces the canonical form.
std::string format_word(TWord const& w);
std::string format_element(FPElement const& h);

TWord     parse_word(AlphabetPtr const& alphabet, std::string_view text);
FPElement parse_element(AlphabetPtr const& alphabet, std::string_view text);

}  // namespace relhyp

#endif  // RELHYP_WORD_IO_HPP_
