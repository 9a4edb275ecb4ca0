#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace kh {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Arithmetic mod a fixed prime p < 2^63, with 128-bit intermediate products.
struct FpCtx {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + (p - b);
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return (std::uint64_t)((unsigned __int128)a * b % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
  std::uint64_t from_int(long long v) const {
    long long m = v % (long long)p;
    if (m < 0) m += (long long)p;
    return (std::uint64_t)m;
  }
};

}  // namespace kh
