#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace kh {

// One-variable Laurent polynomial with half-integer exponents, stored as
// doubled exponents so all arithmetic stays integral.
class Laurent {
 public:
  using Map = std::map<int, long long>;  // doubled exponent -> coefficient

  Laurent() = default;
  static Laurent term(long long coeff, int exp2);

  void add_term(long long coeff, int exp2);
  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int min_exp2() const;
  int max_exp2() const;
  long long coeff2(int exp2) const;

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent& operator+=(const Laurent& o);
  bool operator==(const Laurent& o) const { return t_ == o.t_; }

  Laurent shifted(int exp2) const;            // multiply by q^(exp2/2)
  Laurent substituted_square() const;         // q -> q^2
  long long eval_at_minus_one() const;        // needs integer exponents

  // exact division; throws DomainError when a remainder is left
  Laurent divided_by(const Laurent& o) const;

  std::string str(const std::string& var = "q") const;
  static Laurent parse(const std::string& text, const std::string& var = "q");

 private:
  Map t_;
};

// Two-variable integer Laurent polynomial in (a, z).
class Laurent2 {
 public:
  using Key = std::pair<int, int>;  // (a exponent, z exponent)
  using Map = std::map<Key, long long>;

  Laurent2() = default;
  static Laurent2 term(long long coeff, int ae, int ze);

  void add_term(long long coeff, int ae, int ze);
  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  Laurent2 operator+(const Laurent2& o) const;
  Laurent2 operator-(const Laurent2& o) const;
  Laurent2 operator*(const Laurent2& o) const;
  bool operator==(const Laurent2& o) const { return t_ == o.t_; }

  Laurent2 times_monomial(long long coeff, int ae, int ze) const;

  // terms of maximal (a exponent - z exponent)
  std::pair<int, Map> max_lm_terms() const;

  std::string str() const;
  static Laurent2 parse(const std::string& text);

 private:
  Map t_;
};

}  // namespace kh
