#include "qdl/rational.hpp"

#include <charconv>
#include <numeric>

#include "qdl/errors.hpp"

namespace qdl {

namespace {

std::int64_t parse_int(std::string_view text, const std::string& whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw RationalParseError("not a rational of the form \"p/q\": \"" + whole + "\"");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw RationalParseError("rational denominator must be nonzero");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = (g == 0) ? 0 : num / g;
  den_ = (g == 0) ? 1 : den / g;
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size()) {
    throw RationalParseError("not a rational of the form \"p/q\": \"" + text + "\"");
  }
  const std::int64_t p = parse_int(std::string_view(text).substr(0, slash), text);
  const std::int64_t q = parse_int(std::string_view(text).substr(slash + 1), text);
  if (q <= 0) {
    throw RationalParseError("rational denominator must be positive: \"" + text + "\"");
  }
  return Rational(p, q);
}

Rational Rational::times(std::int64_t k) const {
  const std::int64_t g = std::gcd(k, den_);
  const std::int64_t kk = (g == 0) ? 0 : k / g;
  const std::int64_t dd = (g == 0) ? 1 : den_ / g;
  return Rational(kk * num_, dd);
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace qdl
