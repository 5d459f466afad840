#include "nltl/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace nltl {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    result = Rational(digits, scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(s), 10));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int digits) {
  mpz_class den = value.get_den();
  int twos = 0, fives = 0;
  mpz_class rest = den;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) { rest /= 2; ++twos; }
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) { rest /= 5; ++fives; }
  bool exact = rest == 1;
  int places = exact ? std::max(twos, fives) : digits;

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  mpz_class num = abs(value.get_num()) * scale;
  mpz_class q;
  if (exact) {
    q = num / den;
  } else {
    // round half up
    q = (2 * num + den) / (2 * den);
  }
  std::string body = q.get_str();
  if (places > 0) {
    if (static_cast<int>(body.size()) <= places) body.insert(0, places + 1 - body.size(), '0');
    body.insert(body.size() - places, ".");
  }
  std::string out = (value < 0 ? "-" : "") + body;
  if (!exact) out += "...";
  return out;
}

}  // namespace nltl
