#include "varispeed/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace varispeed {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw std::invalid_argument("empty rational");

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    std::string num_digits = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? num.substr(1) : num;
    if (!all_digits(num_digits) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + raw + "'");
    mpz_class p(num_digits, 10), q(den, 10);
    if (q == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
    if (num[0] == '-') p = -p;
    Rational r(p, q);
    r.canonicalize();
    return r;
  }

  // decimal with optional exponent
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string int_part, frac_part;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) int_part.push_back(text[pos++]);
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) frac_part.push_back(text[pos++]);
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed rational '" + raw + "'");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string exp_text = text.substr(pos);
    std::string digits = (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) ? exp_text.substr(1) : exp_text;
    if (!all_digits(digits) || digits.size() > 6) throw std::invalid_argument("malformed exponent in '" + raw + "'");
    exponent = std::stol(exp_text);
    pos = text.size();
  }
  if (pos != text.size()) throw std::invalid_argument("malformed rational '" + raw + "'");

  mpz_class mant(int_part + frac_part, 10);
  Rational r(mant);
  r *= pow_int(Rational(10), exponent - static_cast<long>(frac_part.size()));
  if (negative) r = -r;
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value cannot be made rational");
  Rational r(x);
  r.canonicalize();
  return r;
}

Rational pow_int(const Rational& b, long e) {
  if (e < 0) {
    if (b == 0) throw std::domain_error("zero to a negative power");
    Rational inv = 1 / b;
    return pow_int(inv, -e);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

std::optional<mpz_class> exact_root(const mpz_class& x, unsigned long k) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

}  // namespace

std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent) {
  if (base < 0) return std::nullopt;
  if (base == 0) {
    if (exponent <= 0) return std::nullopt;
    return Rational(0);
  }
  if (!exponent.get_den().fits_ulong_p() || !exponent.get_num().fits_slong_p()) return std::nullopt;
  unsigned long k = exponent.get_den().get_ui();
  auto p = exact_root(base.get_num(), k);
  auto q = exact_root(base.get_den(), k);
  if (!p || !q) return std::nullopt;
  return pow_int(Rational(*p, *q), exponent.get_num().get_si());
}

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace varispeed
