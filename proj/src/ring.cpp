#include "rootsheaf/ring.hpp"

#include "rootsheaf/errors.hpp"
#include "rootsheaf/rewriting.hpp"

#include <cctype>

namespace rootsheaf {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Integer inverse_mod(Integer a, const Integer& p) {
  a = mod_floor(a, p);
  Integer t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    Integer q = r / new_r;
    Integer tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw InputError("division by zero in GF(" + p.str() + ")");
  return mod_floor(t, p);
}

}  // namespace

Field::Field(std::int64_t p) : p_(p) {
  if (p != 0 && !is_prime(p)) throw InputError("GF(" + std::to_string(p) + "): characteristic must be prime");
}

Rational Field::reduce(const Rational& a) const {
  if (p_ == 0) return a;
  const Integer p = p_;
  Integer num = mod_floor(boost::multiprecision::numerator(a), p);
  Integer den = boost::multiprecision::denominator(a);
  if (den == 1) return Rational(num);
  return Rational(mod_floor(num * inverse_mod(den, p), p));
}

Rational Field::inverse(const Rational& a) const {
  if (a == 0) throw InputError("division by zero in " + to_string());
  if (p_ == 0) return 1 / a;
  return reduce(Rational(inverse_mod(boost::multiprecision::numerator(reduce(a)), p_)));
}

std::string Field::to_string() const { return p_ == 0 ? "QQ" : "GF(" + std::to_string(p_) + ")"; }

BaseRing::BaseRing(Field field, std::vector<std::string> variables) : field_(field), vars_(std::move(variables)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].empty() || !std::isalpha(static_cast<unsigned char>(vars_[i][0])))
      throw InputError("bad variable name '" + vars_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[i] == vars_[j]) throw InputError("duplicate variable '" + vars_[i] + "'");
  }
}

Poly BaseRing::normalize(std::map<Word, Rational> terms) const {
  Poly out;
  for (auto& [e, c] : terms) {
    Rational r = field_.reduce(c);
    if (r != 0) out.terms.emplace(e, std::move(r));
  }
  return out;
}

Poly BaseRing::constant(const Rational& c) const { return normalize({{Word(vars_.size(), 0), c}}); }

Poly BaseRing::variable(std::size_t i) const { return normalize({{word::unit(vars_.size(), i), Rational(1)}}); }

Poly BaseRing::add(const Poly& a, const Poly& b) const {
  auto terms = a.terms;
  for (const auto& [e, c] : b.terms) terms[e] += c;
  return normalize(std::move(terms));
}

Poly BaseRing::neg(const Poly& a) const { return scale(a, -1); }

Poly BaseRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly BaseRing::mul(const Poly& a, const Poly& b) const {
  std::map<Word, Rational> terms;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) terms[word::add(ea, eb)] += ca * cb;
  return normalize(std::move(terms));
}

Poly BaseRing::scale(const Poly& a, const Rational& c) const {
  std::map<Word, Rational> terms;
  for (const auto& [e, x] : a.terms) terms[e] = x * c;
  return normalize(std::move(terms));
}

Poly BaseRing::pow(const Poly& a, std::int64_t e) const {
  if (e < 0) throw InputError("negative exponent");
  Poly result = one(), base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool BaseRing::is_constant(const Poly& a) const {
  return a.terms.empty() || (a.terms.size() == 1 && word::is_zero(a.terms.begin()->first));
}

Rational BaseRing::constant_value(const Poly& a) const {
  if (!is_constant(a)) throw InputError("not a constant: " + format(a));
  return a.terms.empty() ? Rational(0) : a.terms.begin()->second;
}

Poly BaseRing::inverse_unit(const Poly& a) const {
  if (!is_unit(a)) throw InputError("not a unit: " + format(a));
  return constant(field_.inverse(constant_value(a)));
}

const Word& BaseRing::leading_exponent(const Poly& a) const {
  if (a.is_zero()) throw InputError("zero polynomial has no leading term");
  const MonomialOrder order;
  auto best = a.terms.begin();
  for (auto it = a.terms.begin(); it != a.terms.end(); ++it)
    if (order.less(best->first, it->first)) best = it;
  return best->first;
}

const Rational& BaseRing::leading_coefficient(const Poly& a) const { return a.terms.at(leading_exponent(a)); }

std::optional<Poly> BaseRing::divide(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw InputError("division by the zero polynomial");
  const Word& lb = leading_exponent(b);
  const Rational lc_inv = field_.inverse(leading_coefficient(b));
  Poly rem = a, quot;
  while (!rem.is_zero()) {
    const Word& lr = leading_exponent(rem);
    if (!word::divides(lb, lr)) return std::nullopt;
    Poly t = normalize({{word::quotient(lr, lb), leading_coefficient(rem) * lc_inv}});
    quot = add(quot, t);
    rem = sub(rem, mul(t, b));
  }
  return quot;
}

Rational BaseRing::evaluate(const Poly& a, const std::vector<Rational>& point) const {
  if (point.size() != vars_.size())
    throw InputError("point has " + std::to_string(point.size()) + " coordinates, ring has " +
                     std::to_string(vars_.size()) + " variables");
  Rational total = 0;
  for (const auto& [e, c] : a.terms) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::int64_t k = 0; k < e[i]; ++k) term *= point[i];
    total += term;
  }
  return field_.reduce(total);
}

namespace {

class PolyParser {
 public:
  PolyParser(const BaseRing& ring, std::string_view text) : ring_(ring), s_(text) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("ring element '" + std::string(s_) + "': " + msg + " at offset " + std::to_string(pos_));
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

  Poly expr() {
    Poly acc;
    bool first = true;
    for (;;) {
      bool negative = false;
      if (eat('-')) negative = true;
      else if (!first && !eat('+')) break;
      else if (first) eat('+');
      Poly t = term();
      acc = negative ? ring_.sub(acc, t) : ring_.add(acc, t);
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (eat('*')) acc = ring_.mul(acc, factor());
      else if (eat('/')) {
        Poly d = factor();
        if (!ring_.is_unit(d)) fail("can only divide by nonzero constants");
        acc = ring_.mul(acc, ring_.inverse_unit(d));
      } else break;
    }
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = ring_.pow(base, std::stoll(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ring_.constant(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      const auto& vars = ring_.variables();
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return ring_.variable(i);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

  const BaseRing& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly BaseRing::parse(std::string_view text) const { return PolyParser(*this, text).run(); }

std::string BaseRing::format(const Poly& a) const {
  if (a.is_zero()) return "0";
  std::vector<std::pair<Word, Rational>> terms(a.terms.begin(), a.terms.end());
  const MonomialOrder order;
  std::sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) { return order.less(y.first, x.first); });
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [e, c] = terms[k];
    Rational mag = c < 0 ? Rational(-c) : c;
    if (k == 0) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) out += rootsheaf::to_string(mag);
    else if (mag == 1) out += mono;
    else out += rootsheaf::to_string(mag) + "*" + mono;
  }
  return out;
}

std::string BaseRing::to_string() const {
  std::string s = field_.to_string();
  if (vars_.empty()) return s;
  s += "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
  return s + "]";
}

BaseRing parse_base_ring(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  std::string_view t = trim(text);
  std::string_view head = t, vars;
  if (auto b = t.find('['); b != std::string_view::npos) {
    if (t.back() != ']') throw InputError("ring '" + std::string(text) + "': missing ']'");
    head = trim(t.substr(0, b));
    vars = t.substr(b + 1, t.size() - b - 2);
  }
  Field field;
  if (head == "QQ") {
    field = Field(0);
  } else if (head.size() > 4 && head.substr(0, 3) == "GF(" && head.back() == ')') {
    const std::string digits(head.substr(3, head.size() - 4));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("ring '" + std::string(text) + "': bad characteristic");
    field = Field(std::stoll(digits));
  } else {
    throw InputError("ring '" + std::string(text) + "': expected QQ or GF(p)");
  }
  std::vector<std::string> names;
  while (!vars.empty()) {
    auto comma = vars.find(',');
    names.emplace_back(trim(vars.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    vars.remove_prefix(comma + 1);
  }
  return BaseRing(field, std::move(names));
}

}  // namespace rootsheaf
