#include "kh/laurent.hpp"

#include "kh/config.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace kh {

namespace {

struct ExpPair {
  long long num = 0;
  long long den = 1;
};

struct RawTerm {
  long long coeff = 1;
  std::map<std::string, ExpPair> exps;
};

// liberal term tokenizer shared by both parsers: signs, optional '*',
// exponents as n, n/2, (n/2), (-n)
std::vector<RawTerm> parse_terms(const std::string& text) {
  std::vector<RawTerm> out;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  skip();
  bool first = true;
  while (i < text.size()) {
    long long sign = 1;
    skip();
    if (!first || text[i] == '+' || text[i] == '-') {
      if (i >= text.size()) break;
      if (text[i] == '+') {
        ++i;
      } else if (text[i] == '-') {
        sign = -1;
        ++i;
      } else if (!first) {
        throw ParseError("expected +/- between polynomial terms");
      }
    }
    first = false;
    skip();
    RawTerm term;
    term.coeff = sign;
    bool saw_factor = false;
    while (i < text.size()) {
      skip();
      if (i >= text.size() || text[i] == '+' || text[i] == '-') break;
      if (text[i] == '*') {
        ++i;
        continue;
      }
      if (std::isdigit((unsigned char)text[i])) {
        long long v = 0;
        while (i < text.size() && std::isdigit((unsigned char)text[i]))
          v = v * 10 + (text[i++] - '0');
        term.coeff *= v;
        saw_factor = true;
        continue;
      }
      if (std::isalpha((unsigned char)text[i])) {
        std::string var;
        while (i < text.size() && std::isalpha((unsigned char)text[i])) var += text[i++];
        ExpPair e{1, 1};
        skip();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip();
          bool paren = false;
          if (i < text.size() && text[i] == '(') {
            paren = true;
            ++i;
          }
          skip();
          long long es = 1;
          if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            if (text[i] == '-') es = -1;
            ++i;
          }
          long long v = 0;
          if (i >= text.size() || !std::isdigit((unsigned char)text[i]))
            throw ParseError("bad exponent");
          while (i < text.size() && std::isdigit((unsigned char)text[i]))
            v = v * 10 + (text[i++] - '0');
          e.num = es * v;
          skip();
          if (i < text.size() && text[i] == '/') {
            ++i;
            skip();
            long long dv = 0;
            while (i < text.size() && std::isdigit((unsigned char)text[i]))
              dv = dv * 10 + (text[i++] - '0');
            if (dv == 0) throw ParseError("bad exponent denominator");
            e.den = dv;
          }
          if (paren) {
            skip();
            if (i >= text.size() || text[i] != ')') throw ParseError("missing ')' in exponent");
            ++i;
          }
        }
        auto& slot = term.exps[var];
        slot.num = slot.num * e.den + e.num * slot.den;
        slot.den *= e.den;
        saw_factor = true;
        continue;
      }
      throw ParseError(std::string("unexpected character '") + text[i] + "' in polynomial");
    }
    if (!saw_factor) throw ParseError("empty polynomial term");
    out.push_back(std::move(term));
  }
  return out;
}

std::string exp2_str(int e2, const std::string& var) {
  if (e2 == 2) return var;
  std::ostringstream os;
  os << var << "^";
  if (e2 % 2 == 0) {
    if (e2 < 0)
      os << "(" << e2 / 2 << ")";
    else
      os << e2 / 2;
  } else {
    os << "(" << e2 << "/2)";
  }
  return os.str();
}

}  // namespace

Laurent Laurent::term(long long coeff, int exp2) {
  Laurent p;
  p.add_term(coeff, exp2);
  return p;
}

void Laurent::add_term(long long coeff, int exp2) {
  if (coeff == 0) return;
  auto [it, fresh] = t_.emplace(exp2, 0);
  it->second += coeff;
  if (it->second == 0) t_.erase(it);
}

int Laurent::min_exp2() const {
  if (t_.empty()) throw DomainError("zero polynomial has no extreme exponent");
  return t_.begin()->first;
}

int Laurent::max_exp2() const {
  if (t_.empty()) throw DomainError("zero polynomial has no extreme exponent");
  return t_.rbegin()->first;
}

long long Laurent::coeff2(int exp2) const {
  auto it = t_.find(exp2);
  return it == t_.end() ? 0 : it->second;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  r += o;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (auto& [e, c] : o.t_) add_term(c, e);
  return *this;
}

Laurent Laurent::operator-(const Laurent& o) const {
  Laurent r = *this;
  for (auto& [e, c] : o.t_) r.add_term(-c, e);
  return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (auto& [e1, c1] : t_)
    for (auto& [e2, c2] : o.t_) r.add_term(c1 * c2, e1 + e2);
  return r;
}

Laurent Laurent::shifted(int exp2) const {
  Laurent r;
  for (auto& [e, c] : t_) r.add_term(c, e + exp2);
  return r;
}

Laurent Laurent::substituted_square() const {
  Laurent r;
  for (auto& [e, c] : t_) r.add_term(c, 2 * e);
  return r;
}

long long Laurent::eval_at_minus_one() const {
  long long v = 0;
  for (auto& [e, c] : t_) {
    if (e % 2 != 0) throw DomainError("eval_at_minus_one needs integer exponents");
    v += (e / 2) % 2 == 0 ? c : -c;
  }
  return v;
}

Laurent Laurent::divided_by(const Laurent& o) const {
  if (o.is_zero()) throw DomainError("division by zero polynomial");
  Laurent rem = *this, quo;
  int lead = o.max_exp2();
  long long lc = o.t_.rbegin()->second;
  int qmin = is_zero() ? 0 : min_exp2() - o.min_exp2();
  while (!rem.is_zero()) {
    int e = rem.max_exp2();
    long long c = rem.t_.rbegin()->second;
    if (c % lc != 0 || e - lead < qmin)
      throw DomainError("polynomial division leaves a remainder");
    long long f = c / lc;
    quo.add_term(f, e - lead);
    for (auto& [oe, oc] : o.t_) rem.add_term(-f * oc, oe + e - lead);
  }
  return quo;
}

std::string Laurent::str(const std::string& var) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    long long c = it->second;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    long long a = c < 0 ? -c : c;
    if (it->first == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << exp2_str(it->first, var);
    }
  }
  return os.str();
}

Laurent Laurent::parse(const std::string& text, const std::string& var) {
  Laurent p;
  if (text == "0") return p;
  for (const RawTerm& t : parse_terms(text)) {
    int e2 = 0;
    for (auto& [v, e] : t.exps) {
      if (v != var) throw ParseError("unexpected variable " + v);
      if (e.den == 1)
        e2 += (int)(2 * e.num);
      else if (e.den == 2)
        e2 += (int)e.num;
      else
        throw ParseError("exponent denominator must be 1 or 2");
    }
    p.add_term(t.coeff, e2);
  }
  return p;
}

Laurent2 Laurent2::term(long long coeff, int ae, int ze) {
  Laurent2 p;
  p.add_term(coeff, ae, ze);
  return p;
}

void Laurent2::add_term(long long coeff, int ae, int ze) {
  if (coeff == 0) return;
  auto [it, fresh] = t_.emplace(Key{ae, ze}, 0);
  it->second += coeff;
  if (it->second == 0) t_.erase(it);
}

Laurent2 Laurent2::operator+(const Laurent2& o) const {
  Laurent2 r = *this;
  for (auto& [k, c] : o.t_) r.add_term(c, k.first, k.second);
  return r;
}

Laurent2 Laurent2::operator-(const Laurent2& o) const {
  Laurent2 r = *this;
  for (auto& [k, c] : o.t_) r.add_term(-c, k.first, k.second);
  return r;
}

Laurent2 Laurent2::operator*(const Laurent2& o) const {
  Laurent2 r;
  for (auto& [k1, c1] : t_)
    for (auto& [k2, c2] : o.t_) r.add_term(c1 * c2, k1.first + k2.first, k1.second + k2.second);
  return r;
}

Laurent2 Laurent2::times_monomial(long long coeff, int ae, int ze) const {
  Laurent2 r;
  for (auto& [k, c] : t_) r.add_term(c * coeff, k.first + ae, k.second + ze);
  return r;
}

std::pair<int, Laurent2::Map> Laurent2::max_lm_terms() const {
  if (t_.empty()) throw DomainError("zero polynomial has no max l-m term");
  int best = 0;
  bool init = false;
  for (auto& [k, c] : t_) {
    int lm = k.first - k.second;
    if (!init || lm > best) {
      best = lm;
      init = true;
    }
  }
  Map m;
  for (auto& [k, c] : t_)
    if (k.first - k.second == best) m.emplace(k, c);
  return {best, m};
}

std::string Laurent2::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : t_) {
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    long long a = c < 0 ? -c : c;
    bool need_var = k.first != 0 || k.second != 0;
    if (a != 1 || !need_var) os << a;
    bool prev = a != 1 || !need_var;
    if (k.first != 0) {
      if (prev) os << "*";
      os << "a";
      if (k.first != 1) os << "^" << (k.first < 0 ? "(" : "") << k.first << (k.first < 0 ? ")" : "");
      prev = true;
    }
    if (k.second != 0) {
      if (prev) os << "*";
      os << "z";
      if (k.second != 1)
        os << "^" << (k.second < 0 ? "(" : "") << k.second << (k.second < 0 ? ")" : "");
    }
  }
  return os.str();
}

Laurent2 Laurent2::parse(const std::string& text) {
  Laurent2 p;
  if (text == "0") return p;
  for (const RawTerm& t : parse_terms(text)) {
    int ae = 0, ze = 0;
    for (auto& [v, e] : t.exps) {
      if (e.den != 1) throw ParseError("two-variable exponents must be integers");
      if (v == "a")
        ae += (int)e.num;
      else if (v == "z")
        ze += (int)e.num;
      else
        throw ParseError("unexpected variable " + v);
    }
    p.add_term(t.coeff, ae, ze);
  }
  return p;
}

}  // namespace kh
