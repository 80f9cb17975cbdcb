#include "obslab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "obslab/error.hpp"

namespace obslab {

MonomialOrder parse_order(const std::string& tag) {
  if (tag == "degrevlex") return MonomialOrder::DegRevLex;
  if (tag == "lex") return MonomialOrder::Lex;
  throw Error(ErrorKind::InvalidInput, "unknown monomial order '" + tag + "'");
}

const char* to_string(MonomialOrder order) {
  return order == MonomialOrder::Lex ? "lex" : "degrevlex";
}

int total_degree(const Exponent& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

int compare_monomials(const Exponent& a, const Exponent& b, MonomialOrder order) {
  const size_t n = a.size();
  if (order == MonomialOrder::Lex) {
    for (size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
  }
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db ? 1 : -1;
  for (size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent exponent_lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Poly::Poly(const Rat& c) {
  if (!c.is_zero()) terms_.emplace(Exponent{}, c);
}

Poly Poly::constant(int nvars, const Rat& c) {
  Poly p;
  p.nvars_ = nvars;
  if (!c.is_zero()) p.terms_.emplace(Exponent(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars)
    throw Error(ErrorKind::DimensionMismatch, "variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(e);
}

Poly Poly::monomial(const Exponent& e, const Rat& c) {
  Poly p;
  p.nvars_ = static_cast<int>(e.size());
  if (!c.is_zero()) p.terms_.emplace(e, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rat Poly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

Rat Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat() : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

int Poly::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

std::pair<Exponent, Rat> Poly::leading_term(MonomialOrder order) const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidInput, "leading term of zero polynomial");
  if (order == MonomialOrder::Lex) return *terms_.rbegin();
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it)
    if (compare_monomials(it->first, best->first, order) > 0) best = it;
  return *best;
}

void Poly::add_term(const Exponent& e, const Rat& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(e.size()) != nvars_) {
    if (terms_.empty() && nvars_ == 0) {
      nvars_ = static_cast<int>(e.size());
    } else if (nvars_ == 0) {
      *this = with_nvars(static_cast<int>(e.size()));
    } else {
      throw Error(ErrorKind::DimensionMismatch, "exponent length differs from variable count");
    }
  }
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::with_nvars(int n) const {
  Poly r;
  r.nvars_ = n;
  for (const auto& [e, c] : terms_) {
    Exponent f(n, 0);
    for (int i = 0; i < static_cast<int>(e.size()); ++i) {
      if (i < n) {
        f[i] = e[i];
      } else if (e[i] != 0) {
        throw Error(ErrorKind::DimensionMismatch, "cannot drop a variable in use");
      }
    }
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

bool Poly::uses_var(int var) const {
  for (const auto& [e, c] : terms_)
    if (e[var] != 0) return true;
  return false;
}

void Poly::adapt(const Poly& o) {
  if (nvars_ == o.nvars_) return;
  if (nvars_ == 0) {
    *this = with_nvars(o.nvars_);
    return;
  }
  if (o.nvars_ == 0) return;
  throw Error(ErrorKind::DimensionMismatch, "polynomials over different variable counts");
}

Poly& Poly::operator+=(const Poly& o) {
  adapt(o);
  if (o.nvars_ == nvars_) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
  } else {
    Poly padded = o.with_nvars(nvars_);
    for (const auto& [e, c] : padded.terms_) add_term(e, c);
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  x.adapt(y);
  y.adapt(x);
  Poly r;
  r.nvars_ = x.nvars_;
  const size_t n = static_cast<size_t>(x.nvars_);
  Exponent e(n);
  for (const auto& [ea, ca] : x.terms_) {
    for (const auto& [eb, cb] : y.terms_) {
      for (size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::scaled(const Rat& c) const {
  if (c.is_zero()) return constant(nvars_, 0);
  Poly r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::times_monomial(const Exponent& m, const Rat& c) const {
  Poly r;
  r.nvars_ = nvars_;
  if (c.is_zero()) return r;
  Exponent f(m.size());
  for (const auto& [e, v] : terms_) {
    for (size_t i = 0; i < m.size(); ++i) f[i] = e[i] + m[i];
    r.terms_.emplace_hint(r.terms_.end(), f, v * c);
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.nvars_ == b.nvars_) return a.terms_ == b.terms_;
  Poly d = a - b;
  return d.is_zero();
}

bool Poly::operator<(const Poly& o) const {
  if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
  return std::lexicographical_compare(
      terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
      [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
      });
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(nvars_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1U) r *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r;
  r.nvars_ = nvars_;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    r.add_term(f, c * Rat(e[var]));
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "substitution needs one image per variable");
  int target = 0;
  for (const auto& p : images) target = std::max(target, p.nvars());
  std::vector<std::vector<Poly>> powers(images.size());
  Poly r = constant(target, 0);
  for (const auto& [e, c] : terms_) {
    Poly t = constant(target, c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(target, 1));
      while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * images[i]);
      t *= cache[e[i]];
    }
    r += t;
  }
  return r;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, Rat>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    return compare_monomials(x.first, y.first, MonomialOrder::DegRevLex) > 0;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    Rat mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = total_degree(e) == 0;
    bool wrote = false;
    if (!mag.is_one() || unit) {
      os << mag.str();
      wrote = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

Poly shift_vars(const Poly& p, int offset, int nvars) {
  Poly r = Poly::constant(nvars, 0);
  for (const auto& [e, c] : p.terms()) {
    Exponent f(nvars, 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      int to = static_cast<int>(i) + offset;
      if (to < 0 || to >= nvars) throw Error(ErrorKind::DimensionMismatch, "shift out of range");
      f[to] = e[i];
    }
    r.add_term(f, c);
  }
  return r;
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& names)
      : s_(text), names_(names) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p.with_nvars(static_cast<int>(names_.size()));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError,
                what + " at column " + std::to_string(pos_ + 1) + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int nv() const { return static_cast<int>(names_.size()); }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (eat('*')) acc *= unary();
    return acc;
  }

  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (eat('^')) {
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  std::string digits() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        std::string den = digits();
        if (den.empty()) fail("expected denominator");
        return Poly::constant(nv(), Rat::parse(num + "/" + den));
      }
      return Poly::constant(nv(), Rat::parse(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      auto it = std::find(names_.begin(), names_.end(), id);
      if (it == names_.end()) {
        pos_ = start;
        fail("unknown variable '" + id + "'");
      }
      return Poly::variable(nv(), static_cast<int>(it - names_.begin()));
    }
    fail("unexpected character");
  }

  std::string s_;
  const std::vector<std::string>& names_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& names) {
  return PolyParser(text, names).run();
}

}  // namespace obslab
