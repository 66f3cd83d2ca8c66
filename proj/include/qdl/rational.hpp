#pragma once

#include <cstdint>
#include <string>

namespace qdl {

// Exact rational, kept in lowest terms with a positive denominator.
// Used for phase scales ("1/1024") and decoded phase values; these are
// never stored as floating point so decode results cannot drift.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);  // throws RationalParseError if den == 0

  // Accepts exactly the "p/q" form with integer p, q and q > 0.
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool positive() const { return num_ > 0; }

  // k * (p/q), reduced. Safe from overflow for the register widths this
  // library supports (k < 2^48, q <= 2^48).
  Rational times(std::int64_t k) const;

  double to_double() const;
  std::string str() const;  // "p/q"

  bool operator==(const Rational&) const = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace qdl
