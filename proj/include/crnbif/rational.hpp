#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace crn {

using Q = mpq_class;
using Z = mpz_class;

inline int sgn(const Q& q) { return ::sgn(q); }
inline int sgn(const Z& z) { return ::sgn(z); }

// Accepts "3", "-3/2" and "0.25" style literals; throws std::invalid_argument.
Q parse_rational(const std::string& s);
std::string to_string(const Q& q);

Q qpow(const Q& base, long e);
inline Q qabs(const Q& q) { return abs(q); }
double to_double(const Q& q);

// Dyadic rational closest below x with denominator 2^bits.
Q dyadic_floor(const Q& x, unsigned bits);

using QVec = std::vector<Q>;

}  // namespace crn
