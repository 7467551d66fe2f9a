#include "rktree/rational.hpp"

#include <cctype>

#include "rktree/errors.hpp"

namespace rktree {

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

// Leading zeros would make the cpp_int string constructor read octal.
BigInt digits_to_bigint(std::string_view s) {
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return BigInt{std::string(s)};
}

// [+-]?digits, no other decoration.
BigInt parse_integer(std::string_view s, std::string_view original) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw ValidationError("not a number: '" + std::string(original) + "'");
  BigInt v = digits_to_bigint(s);
  return negative ? -v : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ValidationError("empty number literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    if (!all_digits(den)) {
      if (!den.empty() && (den.front() == '-' || den.front() == '+'))
        throw ValidationError("denominator must be a positive integer: '" + std::string(text) + "'");
      throw ValidationError("not a number: '" + std::string(text) + "'");
    }
    BigInt d = digits_to_bigint(den);
    if (d == 0) throw ValidationError("zero denominator: '" + std::string(text) + "'");
    return Rational(parse_integer(num, text), d);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
      negative = s.front() == '-';
      s.remove_prefix(1);
      --dot;
    }
    std::string_view ipart = s.substr(0, dot);
    std::string_view fpart = s.substr(dot + 1);
    if ((!ipart.empty() && !all_digits(ipart)) || (!fpart.empty() && !all_digits(fpart)) ||
        (ipart.empty() && fpart.empty()))
      throw ValidationError("not a number: '" + std::string(text) + "'");
    BigInt digits = digits_to_bigint(std::string(ipart) + std::string(fpart));
    BigInt den = 1;
    for (size_t i = 0; i < fpart.size(); ++i) den *= 10;
    Rational r(digits, den);
    return negative ? -r : r;
  }

  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::vector<double> to_double(const RatVec& v) {
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

}  // namespace rktree
