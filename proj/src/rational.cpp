#include "srds/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace srds {

std::string rat_str(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rat rat_parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Int n(text.substr(0, slash));
    Int d(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rat(n, d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0 || digits.empty()) throw std::invalid_argument("bad rational literal '" + text + "'");
    Int n(digits);
    Int d = 1;
    for (size_t i = 0; i < frac_len; ++i) d *= 10;
    return Rat(n, d);
  }
  return Rat(Int(text));
}

Int binom(long long x, long long y) {
  if (x < 0 || y < 0 || x < y) return 0;
  if (y > x - y) y = x - y;
  Int acc = 1;
  for (long long i = 1; i <= y; ++i) {
    acc *= (x - y + i);
    acc /= i;
  }
  return acc;
}

Rat rat_pow(const Rat& base, unsigned e) {
  Rat acc = 1;
  Rat b = base;
  while (e > 0) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

Int int_lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  Int g = boost::multiprecision::gcd(a, b);
  return a / g * b;
}

}  // namespace srds
