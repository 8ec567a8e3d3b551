#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace hopfkit {

/// Raised for any field misuse: invalid modulus, mixing fields, bad scalar text.
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

/// The base field of a computation: the rationals or GF(p) for an odd prime p < 2^31.
/// Characteristic two is rejected because half-coefficients appear throughout.
class FieldSpec {
 public:
  enum class Kind : std::uint8_t { rationals, prime };

  constexpr FieldSpec() noexcept = default;

  static constexpr FieldSpec rationals() noexcept { return FieldSpec{}; }

  static FieldSpec prime(std::uint64_t p) {
    if (p == 2) throw FieldError("characteristic 2 is not supported");
    if (p >= (std::uint64_t{1} << 31) || !detail::is_prime(p))
      throw FieldError("modulus " + std::to_string(p) + " is not an odd prime below 2^31");
    FieldSpec f;
    f.kind_ = Kind::prime;
    f.modulus_ = static_cast<std::uint32_t>(p);
    return f;
  }

  /// Accepts `q` or `gf:<p>`.
  static FieldSpec parse(std::string_view text) {
    if (text == "q" || text == "Q") return rationals();
    if (text.substr(0, 3) == "gf:") {
      const std::string digits(text.substr(3));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw FieldError("bad field spec '" + std::string(text) + "'");
      return prime(std::stoull(digits));
    }
    throw FieldError("bad field spec '" + std::string(text) + "' (expected q or gf:<p>)");
  }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_prime_field() const noexcept { return kind_ == Kind::prime; }
  /// Zero for the rationals.
  constexpr std::uint32_t modulus() const noexcept { return modulus_; }

  std::string to_string() const {
    return is_prime_field() ? "gf:" + std::to_string(modulus_) : std::string("q");
  }

  friend constexpr bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  Kind kind_ = Kind::rationals;
  std::uint32_t modulus_ = 0;
};

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (GMP canonical form); residues are kept in [0, p).
class Scalar {
 public:
  /// Zero of the rationals.
  Scalar() : Scalar(FieldSpec::rationals()) {}

  explicit Scalar(FieldSpec field) : field_(field) {
    if (field_.is_prime_field())
      value_ = std::uint32_t{0};
    else
      value_ = mpq_class(0);
  }

  Scalar(FieldSpec field, long long n) : field_(field) {
    if (field_.is_prime_field())
      value_ = reduce(n);
    else
      value_ = mpq_class(mpz_class(std::to_string(n)));
  }

  /// n/d; throws DivisionByZero when d == 0.
  static Scalar fraction(FieldSpec field, long long n, long long d) {
    if (d == 0) throw DivisionByZero();
    return Scalar(field, n) / Scalar(field, d);
  }

  static Scalar zero(FieldSpec field) { return Scalar(field); }
  static Scalar one(FieldSpec field) { return Scalar(field, 1); }

  /// Text form: `n` or `p/q` (a GF(p) residue may also be written as any integer or fraction).
  static Scalar parse(FieldSpec field, std::string_view text) {
    std::string s(text);
    const auto bad = [&] { return FieldError("bad scalar '" + s + "' for field " + field.to_string()); };
    if (s.empty()) throw bad();
    const auto slash = s.find('/');
    const auto valid_int = [](const std::string& t) {
      std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
      return i < t.size() && t.find_first_not_of("0123456789", i) == std::string::npos;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw bad();
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    const mpz_class n(num), d(den);
    if (d == 0) throw DivisionByZero();
    if (field.is_prime_field()) {
      const mpz_class p(field.modulus());
      mpz_class rn = n % p, rd = d % p;
      if (rn < 0) rn += p;
      if (rd < 0) rd += p;
      if (rd == 0) throw DivisionByZero();
      Scalar a(field), b(field);
      a.value_ = static_cast<std::uint32_t>(rn.get_ui());
      b.value_ = static_cast<std::uint32_t>(rd.get_ui());
      return a / b;
    }
    Scalar r(field);
    mpq_class q(n, d);
    q.canonicalize();
    r.value_ = std::move(q);
    return r;
  }

  const FieldSpec& field() const noexcept { return field_; }

  bool is_zero() const {
    if (field_.is_prime_field()) return residue() == 0;
    return sgn(rational()) == 0;
  }
  bool is_one() const {
    if (field_.is_prime_field()) return residue() == 1;
    return rational() == 1;
  }

  /// Only valid in a prime field.
  std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
  /// Only valid over the rationals.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }

  Scalar operator-() const {
    Scalar r(field_);
    if (field_.is_prime_field())
      r.value_ = residue() == 0 ? 0u : field_.modulus() - residue();
    else
      r.value_ = mpq_class(-rational());
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    if (field_.is_prime_field()) {
      std::uint64_t s = std::uint64_t{residue()} + o.residue();
      if (s >= field_.modulus()) s -= field_.modulus();
      value_ = static_cast<std::uint32_t>(s);
    } else {
      std::get<mpq_class>(value_) += o.rational();
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(o);
    if (field_.is_prime_field()) {
      std::uint64_t s = std::uint64_t{residue()} + field_.modulus() - o.residue();
      if (s >= field_.modulus()) s -= field_.modulus();
      value_ = static_cast<std::uint32_t>(s);
    } else {
      std::get<mpq_class>(value_) -= o.rational();
    }
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (field_.is_prime_field())
      value_ = static_cast<std::uint32_t>(std::uint64_t{residue()} * o.residue() % field_.modulus());
    else
      std::get<mpq_class>(value_) *= o.rational();
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    Scalar r(field_);
    if (field_.is_prime_field()) {
      // Fermat: a^(p-2).
      const std::uint64_t p = field_.modulus();
      std::uint64_t base = residue(), acc = 1, e = p - 2;
      while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
      }
      r.value_ = static_cast<std::uint32_t>(acc);
    } else {
      r.value_ = mpq_class(1 / rational());
    }
    return r;
  }

  Scalar pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc = one(field_), base = *this;
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  /// Scalars from different fields never compare equal.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) return false;
    if (a.field_.is_prime_field()) return a.residue() == b.residue();
    return a.rational() == b.rational();
  }

  std::string to_string() const {
    if (field_.is_prime_field()) return std::to_string(residue());
    return rational().get_str();
  }

 private:
  void check(const Scalar& o) const {
    if (o.field_ != field_)
      throw FieldError("field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
  }

  std::uint32_t reduce(long long n) const {
    const long long p = field_.modulus();
    long long r = n % p;
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
  }

  FieldSpec field_;
  std::variant<std::uint32_t, mpq_class> value_;
};

}  // namespace hopfkit
