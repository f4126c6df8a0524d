#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace hopfcyc {

// Exact rational number. Values that fit in int64 numerator/denominator stay
// inline; anything larger is promoted to a shared immutable mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : num_(n) {}        // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& q);

    // Accepts "p", "-p", "p/q" with optional surrounding whitespace.
    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;

    mpq_class to_mpq() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    std::string str() const;
    std::size_t hash() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    bool is_small() const { return !big_; }

    friend Rational integer_gcd(const Rational& a, const Rational& b);

private:
    void assign(const mpq_class& q);
    static Rational from_wide(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

// gcd of two integer-valued rationals (non-negative result).
Rational integer_gcd(const Rational& a, const Rational& b);
// Exact division of integer-valued rationals where b divides a.
Rational integer_div(const Rational& a, const Rational& b);

Rational sign_power(long long exponent);  // (-1)^exponent

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace hopfcyc

template <>
struct std::hash<hopfcyc::Rational> {
    std::size_t operator()(const hopfcyc::Rational& r) const noexcept { return r.hash(); }
};
