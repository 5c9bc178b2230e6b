#include "scenario.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace cartan::cli {

namespace {

/// Recursive descent over expr := term (('+'|'-') term)*, term := unary ('*' unary)*,
/// unary := '-' unary | power, power := atom ('^' integer)?, atom := number | xN | '(' expr ')'.
class PolyParser {
  public:
    PolyParser(const std::string &text, const std::string &where) : s_(text), where_(where) {}

    ScalarExpr parse() {
        ScalarExpr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

  private:
    const std::string &s_;
    const std::string &where_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(where_ + ", column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return s_.substr(start, pos_ - start);
    }

    ScalarExpr expr() {
        ScalarExpr e = term();
        for (;;) {
            if (eat('+')) e += term();
            else if (eat('-')) e -= term();
            else return e;
        }
    }
    ScalarExpr term() {
        ScalarExpr e = unary();
        while (eat('*')) e *= unary();
        return e;
    }
    ScalarExpr unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    ScalarExpr power() {
        ScalarExpr base = atom();
        if (!eat('^')) return base;
        std::string n = digits();
        if (n.size() > 2) fail("exponent too large");
        ScalarExpr r(1);
        for (int k = std::stoi(n); k > 0; --k) r *= base;
        return r;
    }
    ScalarExpr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ScalarExpr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == 'x') {
            ++pos_;
            if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] > '3') fail("variables are x0..x3");
            return ScalarExpr::x(s_[pos_++] - '0');
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            std::size_t save = pos_;
            // "3/4" is a literal; "/" is not an operator otherwise
            if (eat('/')) {
                skip();
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    std::string den = digits();
                    if (std::stoull(den) == 0 && den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
                    return ScalarExpr(Rational::parse(num + "/" + den));
                }
                pos_ = save;
                fail("division is only allowed inside a rational literal");
            }
            return ScalarExpr(Rational::parse(num));
        }
        if (c == 'g') fail("group entries never appear in scenarios");
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

std::string at(const std::string &base, std::initializer_list<int> idx) {
    std::string s = base;
    for (int i : idx) s += "[" + std::to_string(i) + "]";
    return s;
}

const Json &require_array(const Json &j, std::size_t n, const std::string &where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    if (n && j.size() != n) throw ParseError(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
    return j;
}

ScalarExpr poly_entry(const Json &j, const std::string &where) {
    if (j.is_string()) return parse_polynomial(j.get<std::string>(), where);
    if (j.is_number_integer()) return ScalarExpr(Rational(j.get<long>()));
    throw ParseError(where + ": expected a polynomial string");
}

Rational rational_entry(const Json &j, const std::string &where) {
    try {
        if (j.is_string()) return Rational::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const InvalidInput &e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a rational string such as \"3/4\"");
}

int generator_entry(const Json &j, const std::string &where) {
    if (j.is_number_integer()) {
        int v = j.get<int>();
        if (v >= 1 && v <= kGenerators) return v;
    } else if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.size() == 2 && s[0] == 'u' && s[1] >= '4' && s[1] <= '9') return generator_from_alias(s[1] - '0');
    }
    throw ParseError(where + ": generator index must be 1..6 or \"u4\"..\"u9\"");
}

int index_entry(const Json &j, const std::string &where) {
    if (j.is_number_integer() && j.get<int>() >= 0 && j.get<int>() <= 3) return j.get<int>();
    throw ParseError(where + ": index must be 0..3");
}

std::vector<XPoint> default_points() {
    return {XPoint{0, 0, 0, 0}, XPoint{1, Rational(1, 2), -1, Rational(1, 3)}, XPoint{Rational(-2, 3), 1, Rational(1, 4), 2}};
}

std::vector<std::array<Rational, kGenerators>> default_group_samples() {
    return {{Rational(1, 3), 0, Rational(-1, 2), Rational(1, 4), 0, Rational(1, 5)}};
}

Json str_json(const Rational &r) { return r.to_string(); }

} // namespace

ScalarExpr parse_polynomial(const std::string &text, const std::string &where) { return PolyParser(text, where).parse(); }

Scenario parse_scenario(const Json &j) {
    if (!j.is_object()) throw ParseError("scenario: expected a JSON object");
    static const std::vector<std::string> known = {"name", "tetrad", "connection", "momenta", "points", "group_samples",
                                                   "filter", "output", "expect_zero_residuals"};
    for (const auto &[k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) throw ParseError("scenario: unknown key '" + k + "'");
    Scenario s;
    s.points = default_points();
    s.group_samples = default_group_samples();
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("name: expected a string");
        s.name = j["name"].get<std::string>();
    }
    if (j.contains("tetrad")) {
        const auto &t = require_array(j["tetrad"], 4, "tetrad");
        for (int a = 0; a < 4; ++a) {
            require_array(t[a], 4, at("tetrad", {a}));
            for (int mu = 0; mu < 4; ++mu) s.tetrad.e(a, mu) = poly_entry(t[a][mu], at("tetrad", {a, mu}));
        }
    }
    if (j.contains("connection")) {
        const auto &c = require_array(j["connection"], 4, "connection");
        for (int mu = 0; mu < 4; ++mu) {
            require_array(c[mu], 4, at("connection", {mu}));
            for (int a = 0; a < 4; ++a) {
                require_array(c[mu][a], 4, at("connection", {mu, a}));
                for (int b = 0; b < 4; ++b) s.connection.A[mu](a, b) = poly_entry(c[mu][a][b], at("connection", {mu, a, b}));
            }
        }
    }
    if (j.contains("momenta")) {
        const auto &m = j["momenta"];
        if (!m.is_object()) throw ParseError("momenta: expected an object with psi0 / psi1 lists");
        for (const auto &[k, v] : m.items()) {
            if (k != "psi0" && k != "psi1") throw ParseError("momenta: unknown key '" + k + "'");
            require_array(v, 0, "momenta." + k);
            for (std::size_t n = 0; n < v.size(); ++n) {
                std::string where = "momenta." + k + "[" + std::to_string(n) + "]";
                const auto &e = v[n];
                if (!e.is_object() || !e.contains("value") || !e.contains("mu") || !e.contains("j"))
                    throw ParseError(where + ": expected {\"mu\", \"j\", \"value\", ...}");
                int mu = index_entry(e["mu"], where + ".mu");
                int jj = generator_entry(e["j"], where + ".j") - 1;
                ScalarExpr value = poly_entry(e["value"], where + ".value");
                if (k == "psi0") {
                    if (!e.contains("d") || !e.contains("c")) throw ParseError(where + ": psi0 entries need \"d\" and \"c\"");
                    s.momenta.psi0(index_entry(e["d"], where + ".d"), index_entry(e["c"], where + ".c"), mu, jj) += value;
                } else {
                    if (!e.contains("a")) throw ParseError(where + ": psi1 entries need \"a\"");
                    s.momenta.psi1(index_entry(e["a"], where + ".a"), mu, jj) += value;
                }
            }
        }
    }
    if (j.contains("points")) {
        const auto &p = require_array(j["points"], 0, "points");
        if (p.empty()) throw ParseError("points: at least one evaluation point is required");
        s.points.clear();
        for (std::size_t k = 0; k < p.size(); ++k) {
            std::string where = "points[" + std::to_string(k) + "]";
            require_array(p[k], 4, where);
            XPoint x;
            for (int mu = 0; mu < 4; ++mu) x[mu] = rational_entry(p[k][mu], where + "[" + std::to_string(mu) + "]");
            s.points.push_back(x);
        }
    }
    if (j.contains("group_samples")) {
        const auto &g = require_array(j["group_samples"], 0, "group_samples");
        s.group_samples.clear();
        for (std::size_t k = 0; k < g.size(); ++k) {
            std::string where = "group_samples[" + std::to_string(k) + "]";
            require_array(g[k], kGenerators, where);
            std::array<Rational, kGenerators> r;
            for (int i = 0; i < kGenerators; ++i) r[i] = rational_entry(g[k][i], where + "[" + std::to_string(i) + "]");
            s.group_samples.push_back(r);
        }
    }
    if (j.contains("filter")) {
        if (!j["filter"].is_string()) throw ParseError("filter: expected a string");
        s.filter = j["filter"].get<std::string>();
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw ParseError("output: expected a string");
        s.output = j["output"].get<std::string>();
    }
    if (j.contains("expect_zero_residuals")) {
        if (!j["expect_zero_residuals"].is_boolean()) throw ParseError("expect_zero_residuals: expected true or false");
        s.expect_zero_residuals = j["expect_zero_residuals"].get<bool>();
    }
    validate(s);
    return s;
}

void validate(const Scenario &s) {
    try {
        validate_connection(s.connection);
    } catch (const ValidationError &e) {
        throw ValidationError(std::string("connection: ") + e.what());
    }
    try {
        validate_tetrad(s.tetrad, s.points);
    } catch (const ValidationError &e) {
        throw ValidationError(std::string("tetrad: ") + e.what());
    }
    try {
        validate_momentum(s.momenta);
    } catch (const ValidationError &e) {
        throw ValidationError(std::string("momenta: ") + e.what());
    }
    for (std::size_t k = 0; k < s.group_samples.size(); ++k)
        if (!cayley(s.group_samples[k]))
            throw ValidationError("group_samples[" + std::to_string(k) + "]: Cayley transform is singular");
}

std::vector<std::string> preset_names() { return {"minkowski", "constant-connection", "random-poly(degree,seed)", "vacuum-check"}; }

Scenario preset(const std::string &name) {
    Scenario s;
    s.name = name;
    s.points = default_points();
    s.group_samples = default_group_samples();
    std::smatch m;
    if (name == "minkowski") {
        s.expect_zero_residuals = true;
    } else if (name == "constant-connection") {
        // A_mu = sum_j c_{j mu} l_j with fixed rational c
        for (int j = 1; j <= kGenerators; ++j)
            for (int mu = 0; mu < 4; ++mu) {
                Rational c(j + mu % 3 - 2, 1 + mu);
                const auto &l = lorentz_generator(j);
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) s.connection.A[mu](a, b) += ScalarExpr(c * l(a, b));
            }
    } else if (std::regex_match(name, m, std::regex(R"(random-poly\(\s*(\d+)\s*,\s*(\d+)\s*\))"))) {
        int degree = std::stoi(m[1]);
        if (degree > 4) throw ParseError("preset random-poly: degree must be at most 4");
        Sampler sampler(std::stoull(m[2]));
        auto f = random_field(sampler, {degree, 3, 1, 3}, s.points);
        s.tetrad = f.tetrad;
        s.connection = f.connection;
    } else if (name == "vacuum-check") {
        // e^a = d(x^a + f^a): torsion-free and flat in curvilinear coordinates, so every residual vanishes
        std::array<ScalarExpr, 4> f = {ScalarExpr::x(1) * ScalarExpr::x(1) * Rational(1, 4),
                                       ScalarExpr::x(0) * ScalarExpr::x(2) * Rational(1, 3),
                                       ScalarExpr::x(3) * ScalarExpr::x(3) * Rational(-1, 5),
                                       ScalarExpr::x(0) * ScalarExpr::x(1) * Rational(1, 6)};
        for (int a = 0; a < 4; ++a)
            for (int mu = 0; mu < 4; ++mu) s.tetrad.e(a, mu) = ScalarExpr(a == mu ? 1 : 0) + diff_x(f[a], mu);
        s.expect_zero_residuals = true;
    } else {
        std::string list;
        for (const auto &n : preset_names()) list += (list.empty() ? "" : ", ") + n;
        throw ParseError("unknown preset '" + name + "'; available presets: " + list);
    }
    validate(s);
    return s;
}

Scenario load_scenario(const std::string &spec) {
    if (spec.rfind("preset:", 0) == 0) return preset(spec.substr(7));
    std::ifstream in(spec);
    if (!in) {
        if (spec.find('/') == std::string::npos && spec.find('.') == std::string::npos) return preset(spec);
        throw ParseError("scenario file '" + spec + "' cannot be opened");
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ParseError(spec + ": " + e.what());
    }
    return parse_scenario(j);
}

Json scenario_to_json(const Scenario &s) {
    Json j;
    j["name"] = s.name;
    Json t = Json::array();
    for (int a = 0; a < 4; ++a) {
        Json row = Json::array();
        for (int mu = 0; mu < 4; ++mu) row.push_back(s.tetrad.e(a, mu).to_string());
        t.push_back(row);
    }
    j["tetrad"] = t;
    Json c = Json::array();
    for (int mu = 0; mu < 4; ++mu) {
        Json m = Json::array();
        for (int a = 0; a < 4; ++a) {
            Json row = Json::array();
            for (int b = 0; b < 4; ++b) row.push_back(s.connection.A[mu](a, b).to_string());
            m.push_back(row);
        }
        c.push_back(m);
    }
    j["connection"] = c;
    Json psi0 = Json::array(), psi1 = Json::array();
    for (int d = 0; d < 4; ++d)
        for (int cc = 0; cc < 4; ++cc)
            for (int mu = 0; mu < 4; ++mu)
                for (int jj = 0; jj < kGenerators; ++jj)
                    if (!s.momenta.psi0(d, cc, mu, jj).is_zero())
                        psi0.push_back({{"d", d}, {"c", cc}, {"mu", mu}, {"j", jj + 1}, {"value", s.momenta.psi0(d, cc, mu, jj).to_string()}});
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
            for (int jj = 0; jj < kGenerators; ++jj)
                if (!s.momenta.psi1(a, mu, jj).is_zero())
                    psi1.push_back({{"a", a}, {"mu", mu}, {"j", jj + 1}, {"value", s.momenta.psi1(a, mu, jj).to_string()}});
    j["momenta"] = {{"psi0", psi0}, {"psi1", psi1}};
    Json pts = Json::array();
    for (const auto &x : s.points) pts.push_back({str_json(x[0]), str_json(x[1]), str_json(x[2]), str_json(x[3])});
    j["points"] = pts;
    Json gs = Json::array();
    for (const auto &r : s.group_samples) {
        Json row = Json::array();
        for (const auto &v : r) row.push_back(str_json(v));
        gs.push_back(row);
    }
    j["group_samples"] = gs;
    j["filter"] = s.filter;
    if (s.output) j["output"] = *s.output;
    j["expect_zero_residuals"] = s.expect_zero_residuals;
    return j;
}

} // namespace cartan::cli
