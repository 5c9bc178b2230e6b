#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <compare>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cartan {

/// Thrown for malformed or inconsistent user input (bad rationals, singular samples, ...).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Exact rational number. A thin value wrapper around mpq_class so that
/// arithmetic never produces gmpxx expression templates (Eigen cannot digest those).
class Rational {
  public:
    Rational() = default;
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) : v_(static_cast<long>(n)) {}
    Rational(long n, long d);
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Accepts "n", "-n", "n/d". Throws InvalidInput otherwise.
    static Rational parse(std::string_view text);

    const mpq_class &raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    /// "n" for integers, "n/d" otherwise.
    std::string to_string() const;
    double to_double() const { return v_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational &operator+=(const Rational &o) {
        v_ += o.v_;
        return *this;
    }
    Rational &operator-=(const Rational &o) {
        v_ -= o.v_;
        return *this;
    }
    Rational &operator*=(const Rational &o) {
        v_ *= o.v_;
        return *this;
    }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

  private:
    mpq_class v_;
};

Rational pow(const Rational &base, unsigned exponent);
Rational abs(const Rational &r);
std::ostream &operator<<(std::ostream &os, const Rational &r);

} // namespace cartan

namespace Eigen {
template <> struct NumTraits<cartan::Rational> : GenericNumTraits<cartan::Rational> {
    using Real = cartan::Rational;
    using NonInteger = cartan::Rational;
    using Nested = cartan::Rational;
    using Literal = cartan::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 10,
        MulCost = 10
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};
} // namespace Eigen
