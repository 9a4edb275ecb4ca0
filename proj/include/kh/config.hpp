#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kh {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class CoeffMode { Exact, ModP };

// 62-bit prime used for the mod-p rank fast path.
inline constexpr std::uint64_t kDefaultPrime = 4611686018427387847ULL;  // 2^62 - 57

struct RunConfig {
  CoeffMode mode = CoeffMode::Exact;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t budget = 200'000'000;  // max total generator count
  int threads = 1;

  void validate() const {
    if (mode == CoeffMode::ModP && prime <= (1ULL << 31))
      throw DomainError("mod-p prime must exceed 2^31");
    if (budget == 0) throw DomainError("budget must be positive");
    if (threads < 1) throw DomainError("thread count must be positive");
  }
};

}  // namespace kh
