#include "leadcon/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace leadcon {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

int ctz128(u128 v) noexcept {
  const auto lo = static_cast<std::uint64_t>(v);
  return lo != 0 ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(static_cast<std::uint64_t>(v >> 64));
}

u128 gcd128(u128 a, u128 b) noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  if ((a >> 64) == 0 && (b >> 64) == 0) return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  const int shift = ctz128(a | b);
  a >>= ctz128(a);
  do {
    b >>= ctz128(b);
    if (a > b) std::swap(a, b);
    b -= a;
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return static_cast<u128>(gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b))) << shift;
    }
  } while (b != 0);
  return a << shift;
}

u128 uabs(i128 v) noexcept { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits(i128 v) noexcept { return v >= -static_cast<i128>(kMax) && v <= static_cast<i128>(kMax); }

mpq_class small_to_mpq(std::int64_t n, std::int64_t d) {
  mpq_class q(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
  return q;  // already canonical
}

void set_mpz(mpz_ptr out, i128 v) {
  const u128 u = uabs(v);
  mpz_set_ui(out, static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_mul_2exp(out, out, 64);
  mpz_add_ui(out, out, static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  if (v < 0) mpz_neg(out, out);
}

/// Per-thread temporaries so that big-number operations reuse their limbs.
struct Scratch {
  mpq_class a;
  mpq_class b;
  mpq_class r;
  mpq_class p;
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

Rational::Rational(long long numerator, long long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  assign_wide(numerator, denominator);
}

Rational::Rational(const mpq_class& value) {
  mpq_class copy(value);
  copy.canonicalize();
  assign_mpq(std::move(copy));
}

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_), big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = std::make_unique<mpq_class>(*other.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::assign_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  const u128 g = gcd128(uabs(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (fits(num) && fits(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class& q = scratch().r;
  set_mpz(mpq_numref(q.get_mpq_t()), num);
  set_mpz(mpq_denref(q.get_mpq_t()), den);
  store(q);
}

mpq_srcptr Rational::view(mpq_class& tmp) const {
  if (big_) return big_->get_mpq_t();
  mpq_set_si(tmp.get_mpq_t(), static_cast<long>(num_), static_cast<unsigned long>(den_));
  return tmp.get_mpq_t();
}

void Rational::store(mpq_class& value) {
  mpz_srcptr n = mpq_numref(value.get_mpq_t());
  mpz_srcptr d = mpq_denref(value.get_mpq_t());
  if (mpz_fits_slong_p(n) != 0 && mpz_fits_slong_p(d) != 0) {
    const long nl = mpz_get_si(n);
    if (nl != std::numeric_limits<long>::min()) {
      num_ = nl;
      den_ = mpz_get_si(d);
      big_.reset();
      return;
    }
  }
  if (!big_) big_ = std::make_unique<mpq_class>();
  mpq_swap(big_->get_mpq_t(), value.get_mpq_t());
  num_ = 0;
  den_ = 1;
}

void Rational::assign_mpq(mpq_class&& value) {
  const mpz_class& n = value.get_num();
  const mpz_class& d = value.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    const long nl = n.get_si();
    const long dl = d.get_si();
    if (nl != std::numeric_limits<long>::min()) {
      num_ = nl;
      den_ = dl;
      big_.reset();
      return;
    }
  }
  big_ = std::make_unique<mpq_class>(std::move(value));
  num_ = 0;
  den_ = 1;
}

mpq_class Rational::to_mpq() const { return big_ ? *big_ : small_to_mpq(num_, den_); }

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::string s(text);
  const auto bad = [&]() { return std::invalid_argument("malformed rational literal '" + s + "'"); };
  const auto slash = s.find('/');
  const auto dot = s.find('.');
  auto check_int = [&](const std::string& part, bool allow_sign) {
    if (part.empty()) throw bad();
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) throw bad();
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw bad();
    }
  };
  if (slash != std::string::npos) {
    std::string a = s.substr(0, slash);
    std::string b = s.substr(slash + 1);
    check_int(a, true);
    check_int(b, false);
    if (a[0] == '+') a.erase(0, 1);
    mpz_class num(a, 10);
    mpz_class den(b, 10);
    if (den == 0) throw std::domain_error("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = false;
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
      neg = whole[0] == '-';
      whole.erase(0, 1);
    }
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    check_int(whole, false);
    check_int(frac, false);
    mpz_class num(whole + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    if (neg) num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }
  check_int(s, true);
  if (s[0] == '+') s.erase(0, 1);
  mpq_class q{mpz_class(s, 10)};
  return Rational(q);
}

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const noexcept { return big_ ? big_->get_den() == 1 : den_ == 1; }

std::string Rational::numerator_string() const {
  return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_string() const {
  return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator_string();
  return numerator_string() + "/" + denominator_string();
}

bool Rational::terminating_decimal(std::string& out) const {
  mpq_class q = to_mpq();
  mpz_class den = q.get_den();
  unsigned twos = 0;
  unsigned fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2) != 0) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5) != 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return false;
  const unsigned digits = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = q.get_num() * scale / q.get_den();
  const bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
  }
  out = neg ? "-" + s : s;
  return true;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      assign_wide(static_cast<i128>(num_) + rhs.num_, 1);
      return *this;
    }
    const std::uint64_t g1 = gcd64(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(rhs.den_));
    if (g1 == 1) {
      const i128 num = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
      const i128 den = static_cast<i128>(den_) * rhs.den_;
      if (num == 0) {
        num_ = 0;
        den_ = 1;
        return *this;
      }
      if (fits(num) && fits(den)) {
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
        return *this;
      }
      assign_wide(num, den);
      return *this;
    }
    const auto g = static_cast<std::int64_t>(g1);
    const i128 t = static_cast<i128>(num_) * (rhs.den_ / g) + static_cast<i128>(rhs.num_) * (den_ / g);
    if (t == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    const auto tr = static_cast<std::uint64_t>(uabs(t) % static_cast<u128>(g1));
    const std::uint64_t g2 = gcd64(tr, g1);
    const i128 num = t / static_cast<i128>(g2);
    const i128 den = static_cast<i128>(den_ / g) * (rhs.den_ / static_cast<std::int64_t>(g2));
    if (fits(num) && fits(den)) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      return *this;
    }
    assign_wide(num, den);
    return *this;
  }
  Scratch& sc = scratch();
  mpq_add(sc.r.get_mpq_t(), view(sc.a), rhs.view(sc.b));
  store(sc.r);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!rhs.big_) {
    Rational neg;
    neg.num_ = -rhs.num_;
    neg.den_ = rhs.den_;
    return *this += neg;
  }
  Scratch& sc = scratch();
  mpq_sub(sc.r.get_mpq_t(), view(sc.a), rhs.view(sc.b));
  store(sc.r);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && rhs.den_ == 1) {
      const i128 p = static_cast<i128>(num_) * rhs.num_;
      if (fits(p)) {
        num_ = static_cast<std::int64_t>(p);
        return *this;
      }
      assign_wide(p, 1);
      return *this;
    }
    const auto g1 = static_cast<std::int64_t>(
        gcd64(static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_), static_cast<std::uint64_t>(rhs.den_)));
    const auto g2 = static_cast<std::int64_t>(
        gcd64(static_cast<std::uint64_t>(rhs.num_ < 0 ? -rhs.num_ : rhs.num_), static_cast<std::uint64_t>(den_)));
    const i128 num = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
    const i128 den = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
    if (fits(num) && fits(den)) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      return *this;
    }
    assign_wide(num, den);
    return *this;
  }
  Scratch& sc = scratch();
  mpq_mul(sc.r.get_mpq_t(), view(sc.a), rhs.view(sc.b));
  store(sc.r);
  return *this;
}

Rational& Rational::add_mul(const Rational& b, const Rational& c) {
  if (b.is_zero() || c.is_zero()) return *this;
  if (!big_ && !b.big_ && !c.big_) {
    Rational prod;
    prod.num_ = b.num_;
    prod.den_ = b.den_;
    prod *= c;
    return *this += prod;
  }
  Scratch& sc = scratch();
  mpq_mul(sc.p.get_mpq_t(), b.view(sc.a), c.view(sc.b));
  mpq_add(sc.r.get_mpq_t(), view(sc.a), sc.p.get_mpq_t());
  store(sc.r);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  if (!rhs.big_) {
    Rational inv;
    inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
    inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
    return *this *= inv;
  }
  Scratch& sc = scratch();
  mpq_div(sc.r.get_mpq_t(), view(sc.a), rhs.view(sc.b));
  store(sc.r);
  return *this;
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
  }
  return Rational(mpq_class(-*big_));
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  // Canonical forms: a value that fits inline is never stored as big.
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const i128 l = static_cast<i128>(a.num_) * b.den_;
    const i128 r = static_cast<i128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  Scratch& sc = scratch();
  const int c = mpq_cmp(a.view(sc.a), b.view(sc.b));
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

}  // namespace leadcon
