#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fck/error.hpp"
#include "fck/rational.hpp"

namespace fck {

/// Exact coefficient ring: the rationals, a prime field F_p, or the integers.
///
/// All scalars are carried as `Rational`; the ring only decides what the
/// canonical representative of a value is (lowest terms for Q, an integer in
/// [0, p) for F_p, an integer for Z) and which operations are allowed.
class Ring {
 public:
  enum class Kind { Rationals, PrimeField, Integers };

  static Ring rationals() { return Ring(Kind::Rationals, 0); }
  static Ring integers() { return Ring(Kind::Integers, 0); }
  static Ring prime_field(std::int64_t p) {
    if (p < 2 || p >= (std::int64_t{1} << 31)) throw RingError("prime field characteristic out of range: " + std::to_string(p));
    for (std::int64_t q = 2; q * q <= p; ++q)
      if (p % q == 0) throw RingError("characteristic is not prime: " + std::to_string(p));
    return Ring(Kind::PrimeField, p);
  }

  /// Parses "q", "z" or "fp:P".
  static Ring parse(std::string_view text) {
    if (text == "q" || text == "Q") return rationals();
    if (text == "z" || text == "Z") return integers();
    if (text.starts_with("fp:")) {
      std::string digits(text.substr(3));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw RingError("bad prime field spec: " + std::string(text));
      return prime_field(std::stoll(digits));
    }
    throw RingError("unknown ring: " + std::string(text));
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::int64_t characteristic() const { return p_; }
  [[nodiscard]] bool is_field() const { return kind_ != Kind::Integers; }

  [[nodiscard]] std::string name() const {
    switch (kind_) {
      case Kind::Rationals: return "q";
      case Kind::Integers: return "z";
      case Kind::PrimeField: return "fp:" + std::to_string(p_);
    }
    return "?";
  }

  /// Canonical representative of `x` in this ring. Throws if `x` is not an
  /// element (a proper fraction over Z, or a fraction whose denominator is
  /// divisible by p over F_p).
  [[nodiscard]] Rational reduce(const Rational& x) const {
    switch (kind_) {
      case Kind::Rationals: return x;
      case Kind::Integers:
        if (!x.is_integer()) throw RingError("non-integral value over Z: " + x.to_string());
        return x;
      case Kind::PrimeField: {
        if (x.is_small()) {
          std::int64_t n = x.small_num() % p_;
          if (n < 0) n += p_;
          std::int64_t d = x.small_den() % p_;
          if (d == 0) throw RingError("denominator divisible by p");
          return d == 1 ? Rational(n) : mul(Rational(n), inv(Rational(d)));
        }
        mpz_class pp = detail::mpz_from_i64(p_);
        mpz_class n = x.numerator() % pp;
        if (n < 0) n += pp;
        mpz_class d = x.denominator() % pp;
        if (d == 0) throw RingError("denominator divisible by p");
        return mul(Rational(n), inv(Rational(d)));
      }
    }
    return x;
  }

  [[nodiscard]] Rational add(const Rational& a, const Rational& b) const {
    if (kind_ == Kind::PrimeField) {
      std::int64_t s = a.small_num() + b.small_num();
      return Rational(s >= p_ ? s - p_ : s);
    }
    return a + b;
  }
  [[nodiscard]] Rational sub(const Rational& a, const Rational& b) const {
    if (kind_ == Kind::PrimeField) {
      std::int64_t s = a.small_num() - b.small_num();
      return Rational(s < 0 ? s + p_ : s);
    }
    return a - b;
  }
  [[nodiscard]] Rational neg(const Rational& a) const {
    if (kind_ == Kind::PrimeField) return Rational(a.small_num() == 0 ? 0 : p_ - a.small_num());
    return -a;
  }
  [[nodiscard]] Rational mul(const Rational& a, const Rational& b) const {
    if (kind_ == Kind::PrimeField) return Rational((a.small_num() * b.small_num()) % p_);
    return a * b;
  }
  /// Multiplicative inverse; over Z only for units.
  [[nodiscard]] Rational inv(const Rational& a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero");
    switch (kind_) {
      case Kind::Rationals: return Rational(1) / a;
      case Kind::Integers:
        if (a == Rational(1) || a == Rational(-1)) return a;
        throw RingError("not a unit over Z: " + a.to_string());
      case Kind::PrimeField: {
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a.small_num();
        while (new_r != 0) {
          std::int64_t q = r / new_r;
          std::int64_t tmp = t - q * new_t;
          t = new_t;
          new_t = tmp;
          tmp = r - q * new_r;
          r = new_r;
          new_r = tmp;
        }
        if (t < 0) t += p_;
        return Rational(t);
      }
    }
    return a;
  }
  [[nodiscard]] Rational div(const Rational& a, const Rational& b) const {
    if (kind_ == Kind::Integers) {
      if (Rational::int_remainder(a, b) != Rational(0)) throw RingError("inexact division over Z");
      return Rational::int_quotient(a, b);
    }
    return mul(a, inv(b));
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

 private:
  Ring(Kind k, std::int64_t p) : kind_(k), p_(p) {}

  Kind kind_;
  std::int64_t p_;
};

inline void require_same_ring(const Ring& a, const Ring& b, const char* where) {
  if (a != b) throw RingError(std::string(where) + ": ring mismatch (" + a.name() + " vs " + b.name() + ")");
}

}  // namespace fck
