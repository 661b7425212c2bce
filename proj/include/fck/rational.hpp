#pragma once

// Arbitrary-precision rational numbers with a 64-bit fast path.
//
// Values are always kept in lowest terms with a positive denominator. Small
// values live in two int64 words; anything that overflows is promoted to a
// GMP mpq_class and demoted again as soon as it fits.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fck {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

inline u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool fits_i64(i128 v) {
  return v >= static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX);
}

inline mpz_class mpz_from_i128(i128 v) {
  const bool neg = v < 0;
  u128 mag = abs128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

inline mpz_class mpz_from_i64(std::int64_t v) {
  return mpz_from_i128(static_cast<i128>(v));
}

inline bool mpz_to_i64(const mpz_class& z, std::int64_t& out) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) return false;
  out = mpz_get_si(z.get_mpz_t());
  return true;
}

}  // namespace detail

class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T n) {  // NOLINT(google-explicit-constructor)
    assign(static_cast<detail::i128>(n), 1);
  }
  Rational(std::int64_t n, std::int64_t d) { assign(static_cast<detail::i128>(n), static_cast<detail::i128>(d)); }

  explicit Rational(const mpq_class& q) { assign_big(mpq_class(q)); }
  explicit Rational(const mpz_class& z) { assign_big(mpq_class(z)); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "n", "-n" or "n/d".
  static Rational parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational number: " + text);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rational(q);
  }

  [[nodiscard]] bool is_small() const { return !big_; }
  [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  [[nodiscard]] bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  [[nodiscard]] int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  // Only meaningful when is_small().
  [[nodiscard]] std::int64_t small_num() const { return num_; }
  [[nodiscard]] std::int64_t small_den() const { return den_; }

  [[nodiscard]] mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(detail::mpz_from_i64(num_), detail::mpz_from_i64(den_));
    return q;
  }
  [[nodiscard]] mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : detail::mpz_from_i64(num_); }
  [[nodiscard]] mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : detail::mpz_from_i64(den_); }

  [[nodiscard]] std::string to_string() const {
    if (big_) return big_->get_str();
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  [[nodiscard]] std::size_t hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    return std::hash<std::int64_t>{}(num_) * 31u + std::hash<std::int64_t>{}(den_);
  }

  [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator-(const Rational& a) {
    if (!a.big_ && a.num_ != INT64_MIN) {
      Rational r;
      r.num_ = -a.num_;
      r.den_ = a.den_;
      return r;
    }
    Rational r;
    r.assign_big(mpq_class(-a.to_mpq()));
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
      }
      using detail::i128;
      Rational r;
      r.assign(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
               static_cast<i128>(a.den_) * b.den_);
      return r;
    }
    Rational r;
    r.assign_big(mpq_class(a.to_mpq() + b.to_mpq()));
    return r;
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_sub_overflow(a.num_, b.num_, &s)) return Rational(s);
      }
      using detail::i128;
      Rational r;
      r.assign(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
               static_cast<i128>(a.den_) * b.den_);
      return r;
    }
    Rational r;
    r.assign_big(mpq_class(a.to_mpq() - b.to_mpq()));
    return r;
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_mul_overflow(a.num_, b.num_, &s)) return Rational(s);
      }
      using detail::i128;
      Rational r;
      r.assign(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
      return r;
    }
    Rational r;
    r.assign_big(mpq_class(a.to_mpq() * b.to_mpq()));
    return r;
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.big_ && !b.big_) {
      using detail::i128;
      Rational r;
      r.assign(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
      return r;
    }
    Rational r;
    r.assign_big(mpq_class(a.to_mpq() / b.to_mpq()));
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a value that fits is never stored big
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  friend bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      using detail::i128;
      return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
    }
    return a.to_mpq() < b.to_mpq();
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Truncated integer quotient of two integers.
  static Rational int_quotient(const Rational& a, const Rational& b) {
    if (!a.is_integer() || !b.is_integer()) throw std::domain_error("int_quotient on non-integers");
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.big_ && !b.big_ && !(a.num_ == INT64_MIN && b.num_ == -1)) return Rational(a.num_ / b.num_);
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
    return Rational(q);
  }

  /// Remainder matching int_quotient.
  static Rational int_remainder(const Rational& a, const Rational& b) { return a - int_quotient(a, b) * b; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  void assign(detail::i128 n, detail::i128 d) {
    using namespace detail;
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      big_.reset();
      return;
    }
    if (d != 1) {
      u128 g = gcd128(abs128(n), static_cast<u128>(d));
      if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
      }
    }
    if (fits_i64(n) && fits_i64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
    } else {
      assign_big(mpq_class(mpz_from_i128(n), mpz_from_i128(d)));
    }
  }

  void assign_big(mpq_class q) {
    q.canonicalize();
    std::int64_t n = 0;
    std::int64_t d = 1;
    if (detail::mpz_to_i64(q.get_num(), n) && detail::mpz_to_i64(q.get_den(), d)) {
      num_ = n;
      den_ = d;
      big_.reset();
    } else {
      big_ = std::make_unique<mpq_class>(std::move(q));
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace fck

template <>
struct std::hash<fck::Rational> {
  std::size_t operator()(const fck::Rational& r) const { return r.hash(); }
};
