#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace hyperlat {

// Layer cardinalities grow like lambda_+^n and overflow 64-bit quickly
// ((8,3) already by n ~ 40), so all exact counts use arbitrary precision.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }
inline std::string to_string(const BigRational& v) {
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

inline double to_double(const BigRational& v) { return v.convert_to<double>(); }
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

} // namespace hyperlat
