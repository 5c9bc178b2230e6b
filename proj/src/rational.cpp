#include "cartan/rational.hpp"

#include <cctype>
#include <ostream>

namespace cartan {

Rational::Rational(long n, long d) {
    if (d == 0) throw InvalidInput("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational &Rational::operator/=(const Rational &o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    v_ /= o.v_;
    return *this;
}

namespace {
bool valid_integer(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}
} // namespace

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
        throw InvalidInput("malformed rational '" + std::string(text) + "'");
    std::string n(num), d(den);
    if (n.front() == '+') n.erase(0, 1);
    mpz_class zd(d);
    if (zd == 0) throw InvalidInput("rational with zero denominator '" + std::string(text) + "'");
    return Rational(mpq_class(mpz_class(n), zd));
}

std::string Rational::to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational pow(const Rational &base, unsigned exponent) {
    Rational r(1);
    Rational b = base;
    while (exponent) {
        if (exponent & 1u) r *= b;
        exponent >>= 1;
        if (exponent) b *= b;
    }
    return r;
}

Rational abs(const Rational &r) { return r.sign() < 0 ? -r : r; }

std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

} // namespace cartan
