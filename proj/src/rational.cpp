#include "hopfcyc/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace hopfcyc {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b)
{
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v)
{
    u128 m = uabs(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
    mpz_class r = (hi << 64) + lo;
    return v < 0 ? mpz_class(-r) : r;
}

bool fits(const mpz_class& z) { return z.fits_slong_p(); }

}  // namespace

Rational::Rational(long long n, long long d)
{
    if (d == 0)
        throw std::domain_error("rational with zero denominator");
    *this = from_wide(n, d);
}

Rational::Rational(const mpq_class& q)
{
    mpq_class c(q);
    c.canonicalize();
    assign(c);
}

void Rational::assign(const mpq_class& q)
{
    if (fits(q.get_num()) && fits(q.get_den())) {
        num_ = q.get_num().get_si();
        den_ = q.get_den().get_si();
        big_.reset();
    } else {
        num_ = 0;
        den_ = 1;
        big_ = std::make_shared<const mpq_class>(q);
    }
}

Rational Rational::from_wide(i128 n, i128 d)
{
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    Rational r;
    if (n >= kMin && n <= kMax && d <= kMax) {
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    r.assign(q);
    return r;
}

Rational Rational::parse(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    std::string_view t = trim(text);
    auto slash = t.find('/');
    std::string_view ns = trim(t.substr(0, slash));
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : trim(t.substr(slash + 1));
    if (!valid_int(ns) || !valid_int(ds) || ds.front() == '-' || ds.front() == '+')
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::string nstr(ns.front() == '+' ? ns.substr(1) : ns);
    mpz_class nz(nstr, 10), dz(std::string(ds), 10);
    if (dz == 0)
        throw std::invalid_argument("rational with zero denominator '" + std::string(text) + "'");
    mpq_class q(nz, dz);
    q.canonicalize();
    return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const
{
    if (big_)
        return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const
{
    if (big_)
        return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(den_)); }

std::string Rational::str() const
{
    if (big_)
        return big_->get_str();
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const
{
    if (big_)
        return std::hash<std::string>{}(big_->get_str());
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
}

Rational Rational::operator-() const
{
    if (big_)
        return Rational(mpq_class(-*big_));
    if (num_ == std::numeric_limits<std::int64_t>::min())
        return from_wide(-static_cast<i128>(num_), den_);
    Rational r = *this;
    r.num_ = -num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o)
{
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            i128 s = static_cast<i128>(num_) + o.num_;
            if (s >= kMin && s <= kMax) {
                num_ = static_cast<std::int64_t>(s);
                return *this;
            }
        }
        *this = from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                          static_cast<i128>(den_) * o.den_);
        return *this;
    }
    assign(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o)
{
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            i128 p = static_cast<i128>(num_) * o.num_;
            if (p >= kMin && p <= kMax) {
                num_ = static_cast<std::int64_t>(p);
                return *this;
            }
        }
        *this = from_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
        return *this;
    }
    assign(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw std::domain_error("division by zero");
    if (!big_ && !o.big_) {
        *this = from_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
        return *this;
    }
    assign(to_mpq() / o.to_mpq());
    return *this;
}

bool operator==(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_)
        return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_)
        return *a.big_ == *b.big_;
    return false;  // canonical form: big values never fit inline
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

Rational integer_gcd(const Rational& a, const Rational& b)
{
    if (!a.is_integer() || !b.is_integer())
        throw std::invalid_argument("integer_gcd on non-integer");
    if (a.is_small() && b.is_small()) {
        u128 g = gcd128(uabs(a.num_), uabs(b.num_));
        if (g <= static_cast<u128>(kMax))
            return Rational(static_cast<long long>(g));
        return Rational(mpq_class(to_mpz(static_cast<i128>(g))));
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
    return Rational(mpq_class(g));
}

Rational integer_div(const Rational& a, const Rational& b) { return a / b; }

Rational sign_power(long long exponent) { return (exponent & 1) ? Rational(-1) : Rational(1); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace hopfcyc
