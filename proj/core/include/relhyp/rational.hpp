#ifndef RELHYP_RATIONAL_HPP_
#define RELHYP_RATIONAL_HPP_

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

// Under C++20 rewritten comparisons, boost's mixed rational == int templates
// call each other forever. These exact matches win overload resolution.
namespace boost {
inline bool operator==(rational<std::int64_t> const& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(std::int64_t a, rational<std::int64_t> const& b) {
  return b.denominator() == 1 && b.numerator() == a;
}
inline bool operator==(rational<std::int64_t> const& a, int b) {
  return a == static_cast<std::int64_t>(b);
}
inline bool operator==(int a, rational<std::int64_t> const& b) {
  return b == static_cast<std::int64_t>(a);
}
}  // namespace boost

namespace relhyp {

// Exact time and boundary-position arithmetic. No floating point is used
// anywhere in the motion engine or the prover.
using Rational = boost::rational<std::int64_t>;

// "num/den", always with an explicit denominator ("3/1", "0/1").
std::string to_string(Rational const& q);

Rational floor_div(Rational const& q, Rational const& period);
Rational mod(Rational const& q, Rational const& period);
std::int64_t floor(Rational const& q);

}  // namespace relhyp

#endif  // RELHYP_RATIONAL_HPP_
