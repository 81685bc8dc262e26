#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace srds {

// All lengths, loads and segment endpoints are exact rationals; nothing in
// the pipeline ever rounds.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double rat_double(const Rat& r) { return r.convert_to<double>(); }

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string rat_str(const Rat& r);

/// Parses "p", "p/q" or a plain decimal such as "2.5" into an exact rational.
Rat rat_parse(const std::string& text);

/// Binomial coefficient with the convention C(x,y)=0 when x<0, y<0 or x<y.
Int binom(long long x, long long y);

/// Exact integer power of a rational, e >= 0.
Rat rat_pow(const Rat& base, unsigned e);

Int int_lcm(const Int& a, const Int& b);

}  // namespace srds
