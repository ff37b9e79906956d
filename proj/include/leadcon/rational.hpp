#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace leadcon {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are kept inline and
/// operated on with 128-bit intermediates; anything larger is promoted to a
/// GMP rational and demoted again as soon as it fits.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(long long value) noexcept : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) noexcept : num_(value) {}         // NOLINT(google-explicit-constructor)
  Rational(long long numerator, long long denominator);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  /// Parses "p/q", "p", or a terminating decimal such as "-1.25".
  static Rational parse(std::string_view text);

  [[nodiscard]] int sign() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const noexcept;
  [[nodiscard]] bool is_small() const noexcept { return !big_; }

  [[nodiscard]] std::string numerator_string() const;
  [[nodiscard]] std::string denominator_string() const;
  /// "p/q", or "p" when the denominator is 1.
  [[nodiscard]] std::string to_string() const;
  /// Decimal expansion when the denominator has only factors 2 and 5.
  [[nodiscard]] bool terminating_decimal(std::string& out) const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] mpq_class to_mpq() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;
  /// this += b * c without a temporary.
  Rational& add_mul(const Rational& b, const Rational& c);

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

  friend std::ostream& operator<<(std::ostream& os, const Rational& q);

 private:
  void assign_wide(__int128 num, __int128 den);
  void assign_mpq(mpq_class&& value);
  /// GMP view of the value; small values are written into `tmp`.
  mpq_srcptr view(mpq_class& tmp) const;
  /// Takes the canonical value out of `value`, demoting when it fits.
  void store(mpq_class& value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

[[nodiscard]] inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }
[[nodiscard]] inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
[[nodiscard]] inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace leadcon
