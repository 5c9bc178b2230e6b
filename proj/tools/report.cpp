#include "scenario.hpp"

#include <sstream>

namespace cartan::cli {

namespace {

Json s(const Rational &r) { return r.to_string(); }

template <class Get> Json table(int rank, Get get) {
    // nested arrays of strings, every slot in 0..3
    std::function<Json(std::vector<int> &)> rec = [&](std::vector<int> &idx) -> Json {
        if (static_cast<int>(idx.size()) == rank) return s(get(idx));
        Json arr = Json::array();
        for (int i = 0; i < 4; ++i) {
            idx.push_back(i);
            arr.push_back(rec(idx));
            idx.pop_back();
        }
        return arr;
    };
    std::vector<int> idx;
    return rec(idx);
}

bool all_zero(const Json &j) {
    if (j.is_array()) {
        for (const auto &v : j)
            if (!all_zero(v)) return false;
        return true;
    }
    return j.is_string() && j.get<std::string>() == "0";
}

Json point_json(const XPoint &x) { return {s(x[0]), s(x[1]), s(x[2]), s(x[3])}; }

Json tensor_tables(const Scenario &sc) {
    Json out = Json::array();
    for (const auto &x : sc.points) {
        auto t = frame_tensors(sc.tetrad, sc.connection, x);
        Json p;
        p["point"] = point_json(x);
        p["det_e"] = s(t.det_e);
        p["torsion"] = table(3, [&](const std::vector<int> &i) { return t.torsion(i[0], i[1], i[2]); });
        p["curvature"] = table(4, [&](const std::vector<int> &i) { return t.curvature_up(i[0], i[1], i[2], i[3]); });
        p["ricci"] = table(2, [&](const std::vector<int> &i) { return t.ricci(i[0], i[1]); });
        p["scalar"] = s(t.scalar);
        p["einstein"] = table(2, [&](const std::vector<int> &i) { return t.einstein_mixed(i[0], i[1]); });
        out.push_back(p);
    }
    return out;
}

Json residual_tables(const Scenario &sc, bool &zero) {
    Json out;
    auto l = lift(sc.tetrad, sc.connection);
    auto p = conjugate_momenta(sc.momenta);
    std::vector<LorentzGroupElement> group{LorentzGroupElement{}};
    for (const auto &r : sc.group_samples) group.push_back(*cayley(r));

    auto eq = check_equivariance(l);
    out["equivariance"] = {{"omega_zero", eq.omega_zero}, {"alpha_zero", eq.alpha_zero}};
    zero = eq.passed();
    Json rows = Json::array();
    for (std::size_t k = 0; k < group.size(); ++k) {
        auto h = hvdw_residuals(l, sc.momenta, group[k]);
        for (const auto &x : sc.points) {
            auto v = base_assignment(x);
            auto ec = einstein_cartan_residuals(sc.tetrad, sc.connection, p, x, group[k]);
            Json row;
            row["point"] = point_json(x);
            row["group_sample"] = static_cast<int>(k);
            row["hvdw_einstein"] = table(2, [&](const std::vector<int> &i) { return evaluate(h.einstein(i[0], i[1]), v); });
            row["hvdw_spin"] = table(3, [&](const std::vector<int> &i) { return evaluate(h.spin(i[0], i[1], i[2]), v); });
            row["ec_r1"] = table(2, [&](const std::vector<int> &i) { return ec.r1(i[0], i[1]); });
            row["ec_r2"] = table(3, [&](const std::vector<int> &i) { return ec.r2(i[0], i[1], i[2]); });
            bool z = all_zero(row["hvdw_einstein"]) && all_zero(row["hvdw_spin"]) && all_zero(row["ec_r1"]) && all_zero(row["ec_r2"]);
            row["zero"] = z;
            zero = zero && z;
            rows.push_back(row);
        }
    }
    out["tables"] = rows;
    out["all_zero"] = zero;
    return out;
}

Json check_json(const harness::SuiteRun &run) {
    Json out;
    Json list = Json::array();
    for (const auto &r : run.results) {
        Json c;
        c["id"] = r.id;
        c["description"] = r.description;
        c["oracle"] = harness::to_string(r.oracle);
        c["seed"] = std::to_string(r.seed);
        c["samples"] = r.samples;
        c["comparisons"] = r.comparisons;
        c["verdict"] = harness::to_string(r.verdict);
        if (!r.witness.empty()) c["witness"] = r.witness;
        if (!r.note.empty()) c["note"] = r.note;
        list.push_back(c);
    }
    out["results"] = list;
    if (!run.notice.empty()) out["notice"] = run.notice;
    out["passed"] = run.passed();
    return out;
}

void nonzero_entries(std::ostream &os, const std::string &name, const Json &t, std::string idx = "") {
    if (t.is_array()) {
        for (std::size_t i = 0; i < t.size(); ++i) nonzero_entries(os, name, t[i], idx + "[" + std::to_string(i) + "]");
        return;
    }
    if (t.get<std::string>() != "0") os << "    " << name << idx << " = " << t.get<std::string>() << "\n";
}

void print_table(std::ostream &os, const std::string &name, const Json &t) {
    if (all_zero(t)) {
        os << "  " << name << ": all zero\n";
        return;
    }
    os << "  " << name << " (nonzero entries):\n";
    nonzero_entries(os, name, t);
}

std::string point_text(const Json &p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].get<std::string>();
    return s + ")";
}

} // namespace

Json build_report(const Scenario &sc, const ReportOptions &opt) {
    Json r;
    r["scenario"] = scenario_to_json(sc);
    bool pass = true;
    r["tensors"] = opt.tensors ? tensor_tables(sc) : Json();
    if (opt.residuals) {
        bool zero = true;
        r["residuals"] = residual_tables(sc, zero);
        r["residuals"]["expected_zero"] = sc.expect_zero_residuals;
        if (sc.expect_zero_residuals && !zero) pass = false;
    } else {
        r["residuals"] = Json();
    }
    if (opt.checks) {
        auto run = harness::run_suite(opt.filter, opt.seed);
        r["checks"] = check_json(run);
        r["checks"]["filter"] = opt.filter;
        r["checks"]["suite_seed"] = std::to_string(opt.seed);
        if (!run.passed()) pass = false;
    } else {
        r["checks"] = Json();
    }
    r["verdict"] = pass ? "pass" : "fail";
    return r;
}

std::string render_text(const Json &r) {
    std::ostringstream os;
    const auto &sc = r["scenario"];
    os << "scenario: " << sc["name"].get<std::string>() << "\n";
    os << "  tetrad e[a][mu]:\n";
    for (std::size_t a = 0; a < 4; ++a) {
        os << "   ";
        for (const auto &v : sc["tetrad"][a]) os << " " << v.get<std::string>() << ";";
        os << "\n";
    }
    print_table(os, "connection[mu][a][b]", sc["connection"]);
    for (const char *k : {"psi0", "psi1"})
        for (const auto &e : sc["momenta"][k]) os << "  " << k << " " << e.dump() << "\n";

    if (!r["tensors"].is_null()) {
        os << "\ntensors\n";
        for (const auto &p : r["tensors"]) {
            os << "point " << point_text(p["point"]) << "  det(e) = " << p["det_e"].get<std::string>()
               << "  S = " << p["scalar"].get<std::string>() << "\n";
            print_table(os, "T^a_cd", p["torsion"]);
            print_table(os, "F^ab_cd", p["curvature"]);
            print_table(os, "Ric_ab", p["ricci"]);
            print_table(os, "G^b_a", p["einstein"]);
        }
    }
    if (!r["residuals"].is_null()) {
        const auto &res = r["residuals"];
        os << "\nresiduals\n";
        os << "  equivariance: omega " << (res["equivariance"]["omega_zero"].get<bool>() ? "zero" : "NONZERO") << ", alpha "
           << (res["equivariance"]["alpha_zero"].get<bool>() ? "zero" : "NONZERO") << "\n";
        for (const auto &row : res["tables"]) {
            os << "point " << point_text(row["point"]) << ", group sample " << row["group_sample"].get<int>() << "\n";
            print_table(os, "hvdw_einstein[a][s]", row["hvdw_einstein"]);
            print_table(os, "hvdw_spin[c][d][s]", row["hvdw_spin"]);
            print_table(os, "ec_r1[b][a]", row["ec_r1"]);
            print_table(os, "ec_r2[a][c][d]", row["ec_r2"]);
        }
        os << "  all residuals zero: " << (res["all_zero"].get<bool>() ? "yes" : "no")
           << (res["expected_zero"].get<bool>() ? " (required)" : " (not required)") << "\n";
    }
    if (!r["checks"].is_null()) {
        const auto &c = r["checks"];
        os << "\nchecks (filter '" << c["filter"].get<std::string>() << "', seed " << c["suite_seed"].get<std::string>() << ")\n";
        if (c.contains("notice")) os << "  notice: " << c["notice"].get<std::string>() << "\n";
        for (const auto &e : c["results"]) {
            std::string v = e["verdict"].get<std::string>();
            for (auto &ch : v) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            os << "  " << v << "  " << e["id"].get<std::string>() << "  [" << e["oracle"].get<std::string>() << ", seed "
               << e["seed"].get<std::string>() << ", " << e["comparisons"].get<long>() << " comparisons]";
            if (e.contains("note")) os << "  " << e["note"].get<std::string>();
            os << "\n";
            if (e.contains("witness")) os << "      witness: " << e["witness"].get<std::string>() << "\n";
        }
    }
    os << "\nverdict: " << r["verdict"].get<std::string>() << "\n";
    return os.str();
}

int exit_status(const Json &report) { return report["verdict"] == "pass" ? 0 : 1; }

} // namespace cartan::cli
