#include "cartan/scalar_expr.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace cartan {

std::string symbol_name(int s) {
    if (s < 4) return "x" + std::to_string(s);
    if (s < 20) return "g" + std::to_string((s - 4) / 4) + std::to_string((s - 4) % 4);
    return "gbar" + std::to_string((s - 20) / 4) + std::to_string((s - 20) % 4);
}

int total_degree(const Monomial &m) {
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

int group_degree(const Monomial &m) {
    int d = 0;
    for (int s = kCoordinateSymbols; s < kNumSymbols; ++s) d += m[s];
    return d;
}

ScalarExpr::ScalarExpr(const Rational &c) {
    if (!c.is_zero()) terms_.emplace_back(Monomial{}, c);
}

ScalarExpr ScalarExpr::variable(int symbol, unsigned power) {
    ScalarExpr r;
    Monomial m{};
    m[symbol] = static_cast<std::uint8_t>(power);
    r.terms_.emplace_back(m, Rational(1));
    return r;
}

ScalarExpr ScalarExpr::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.first < b.first; });
    ScalarExpr r;
    r.terms_.reserve(terms.size());
    for (auto &t : terms) {
        if (!r.terms_.empty() && r.terms_.back().first == t.first) {
            r.terms_.back().second += t.second;
        } else {
            if (!r.terms_.empty() && r.terms_.back().second.is_zero()) r.terms_.pop_back();
            r.terms_.push_back(std::move(t));
        }
    }
    if (!r.terms_.empty() && r.terms_.back().second.is_zero()) r.terms_.pop_back();
    return r;
}

bool ScalarExpr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Monomial{});
}

Rational ScalarExpr::constant_term() const {
    if (!terms_.empty() && terms_[0].first == Monomial{}) return terms_[0].second;
    return Rational(0);
}

int ScalarExpr::degree() const {
    int d = 0;
    for (const auto &t : terms_) d = std::max(d, total_degree(t.first));
    return d;
}

int ScalarExpr::group_degree() const {
    int d = 0;
    for (const auto &t : terms_) d = std::max(d, cartan::group_degree(t.first));
    return d;
}

bool ScalarExpr::depends_on_group() const { return group_degree() > 0; }

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr r(*this);
    for (auto &t : r.terms_) t.second = -t.second;
    return r;
}

namespace {
// Sorted merge of two term lists with a sign on the second.
std::vector<ScalarExpr::Term> merge(const std::vector<ScalarExpr::Term> &a,
                                    const std::vector<ScalarExpr::Term> &b, bool negate_b) {
    std::vector<ScalarExpr::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, negate_b ? -b[j].second : b[j].second);
            ++j;
        } else {
            Rational c = negate_b ? a[i].second - b[j].second : a[i].second + b[j].second;
            if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

Monomial mono_mul(const Monomial &a, const Monomial &b) {
    Monomial m;
    for (int s = 0; s < kNumSymbols; ++s) m[s] = static_cast<std::uint8_t>(a[s] + b[s]);
    return m;
}
} // namespace

ScalarExpr &ScalarExpr::operator+=(const ScalarExpr &o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

ScalarExpr &ScalarExpr::operator-=(const ScalarExpr &o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

ScalarExpr &ScalarExpr::operator*=(const ScalarExpr &o) { return *this = *this * o; }

ScalarExpr &ScalarExpr::operator*=(const Rational &c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) t.second *= c;
    return *this;
}

ScalarExpr operator*(const ScalarExpr &a, const ScalarExpr &b) {
    if (a.terms_.empty() || b.terms_.empty()) return {};
    if (a.is_constant()) return b * a.terms_[0].second;
    if (b.is_constant()) return a * b.terms_[0].second;
    std::vector<ScalarExpr::Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_) prod.emplace_back(mono_mul(ma, mb), ca * cb);
    return ScalarExpr::from_terms(std::move(prod));
}

ScalarExpr ScalarExpr::times_term(const Monomial &m, const Rational &c) const {
    ScalarExpr r;
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    // Multiplying every monomial by the same m preserves lexicographic order.
    for (const auto &[mono, coef] : terms_) r.terms_.emplace_back(mono_mul(mono, m), coef * c);
    return r;
}

std::string ScalarExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[mono, coef] : terms_) {
        Rational c = coef;
        if (!first) {
            os << (c.sign() < 0 ? " - " : " + ");
            c = abs(c);
        }
        first = false;
        bool has_vars = mono != Monomial{};
        if (!has_vars || !c.is_one()) {
            if (c == Rational(-1) && has_vars)
                os << "-";
            else
                os << c << (has_vars ? "*" : "");
        }
        bool first_var = true;
        for (int s = 0; s < kNumSymbols; ++s) {
            if (!mono[s]) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << symbol_name(s);
            if (mono[s] > 1) os << "^" << int(mono[s]);
        }
    }
    return os.str();
}

ScalarExpr diff(const ScalarExpr &f, int symbol) {
    std::vector<ScalarExpr::Term> out;
    for (const auto &[mono, coef] : f.terms()) {
        if (!mono[symbol]) continue;
        Monomial m = mono;
        Rational c = coef * Rational(static_cast<long>(m[symbol]));
        --m[symbol];
        out.emplace_back(m, std::move(c));
    }
    return ScalarExpr::from_terms(std::move(out));
}

Rational evaluate(const ScalarExpr &f, std::span<const Rational, kNumSymbols> values) {
    Rational acc(0);
    for (const auto &[mono, coef] : f.terms()) {
        Rational term = coef;
        for (int s = 0; s < kNumSymbols; ++s)
            if (mono[s]) term *= pow(values[s], mono[s]);
        acc += term;
    }
    return acc;
}

ScalarExpr substitute(const ScalarExpr &f, std::span<const std::optional<Rational>, kNumSymbols> values) {
    std::vector<ScalarExpr::Term> out;
    out.reserve(f.size());
    for (const auto &[mono, coef] : f.terms()) {
        Monomial m = mono;
        Rational c = coef;
        for (int s = 0; s < kNumSymbols && !c.is_zero(); ++s) {
            if (m[s] && values[s]) {
                c *= pow(*values[s], m[s]);
                m[s] = 0;
            }
        }
        if (!c.is_zero()) out.emplace_back(m, std::move(c));
    }
    return ScalarExpr::from_terms(std::move(out));
}

ScalarExpr compose(const ScalarExpr &f, const std::function<ScalarExpr(int)> &image) {
    std::array<std::optional<ScalarExpr>, kNumSymbols> cache;
    ScalarExpr acc;
    for (const auto &[mono, coef] : f.terms()) {
        ScalarExpr term(coef);
        for (int s = 0; s < kNumSymbols; ++s) {
            if (!mono[s]) continue;
            if (!cache[s]) cache[s] = image(s);
            for (int k = 0; k < mono[s]; ++k) term = term * *cache[s];
        }
        acc += term;
    }
    return acc;
}

std::ostream &operator<<(std::ostream &os, const ScalarExpr &e) { return os << e.to_string(); }

} // namespace cartan
