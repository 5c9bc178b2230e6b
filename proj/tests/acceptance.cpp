// One line per acceptance criterion; exit status 1 if any line is FAIL.
#include "cartan/harness.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sys/wait.h>

using namespace cartan::harness;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::string filter;
    double limit_seconds;
    std::size_t expected_checks;
};

bool all_zero_strings(const nlohmann::json &j) {
    if (j.is_array() || j.is_object()) {
        for (const auto &v : j)
            if (!all_zero_strings(v)) return false;
        return true;
    }
    return !j.is_string() || j.get<std::string>() == "0";
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "coframe yoga tables, exhaustive", "coframe\\..*", 5, 14},
        {2, "d d = 0 and graded Leibniz on 100 random forms", "exterior\\.(dd|leibniz)", 30, 2},
        {3, "epsilon equivariance at 50 Cayley samples", "lorentz\\.epsilon-equivariance", 30, 1},
        {4, "coadjoint pairing on all basis triples", "lorentz\\.coadjoint-pairing", 5, 1},
        {5, "Bianchi identities on 20 random fields", "fields\\.bianchi", 60, 1},
        {6, "Einstein/Spin decompositions and hodge identities", "(einstein|spin)\\.(sign|hodge)", 60, 4},
        {7, "gauge covariance of the lifted 3-forms", "gauge\\.(einstein|spin)", 60, 2},
        {8, "Legendre constraints by coefficient extraction", "legendre\\.constraints", 10, 1},
        {9, "equivariance of lifts and the perturbation residual", "equivariance\\..*", 10, 3},
        {10, "Einstein-Cartan vacuum residuals", "ec\\.vacuum", 30, 1},
        {11, "coadjoint yoga", "yoga\\..*", 60, 4},
    };
    bool all_pass = true;
    for (const auto &c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        auto run = run_suite(c.filter, 1, false);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = run.passed() && run.results.size() == c.expected_checks && dt < c.limit_seconds;
        std::string detail;
        for (const auto &r : run.results) {
            if (!r.note.empty()) detail += " " + r.id + ": " + r.note + ";";
            if (r.verdict != Verdict::Pass) detail += " " + r.id + " " + to_string(r.verdict) + ": " + r.witness + ";";
        }
        if (run.results.size() != c.expected_checks) detail += " expected " + std::to_string(c.expected_checks) + " checks;";
        std::printf("%s criterion %d: %s (%zu checks, %.2f s, limit %.0f s)%s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(),
                    run.results.size(), dt, c.limit_seconds, detail.c_str());
        all_pass = all_pass && ok;
    }

    // 12: end-to-end through the binary, full default suite included
    {
        auto t0 = std::chrono::steady_clock::now();
        std::string out = std::string(ACCEPTANCE_DIR) + "/acceptance_minkowski.json";
        std::string cmd = std::string(CARTAN_KIT_PATH) + " all --scenario preset:minkowski --out " + out + " >/dev/null";
        int rc = std::system(cmd.c_str());
        int status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = status == 0;
        std::string detail;
        try {
            std::ifstream in(out);
            auto j = nlohmann::json::parse(in);
            for (const auto &p : j["tensors"]) {
                for (const char *k : {"torsion", "curvature", "ricci", "einstein"}) ok = ok && all_zero_strings(p[k]);
                ok = ok && p["scalar"] == "0";
            }
            ok = ok && j["residuals"]["all_zero"] == true && j["verdict"] == "pass";
            detail = " " + std::to_string(j["checks"]["results"].size()) + " suite checks";
        } catch (const std::exception &e) {
            ok = false;
            detail = std::string(" report unreadable: ") + e.what();
        }
        ok = ok && dt < 300;
        std::printf("%s criterion 12: cartan-kit all --scenario preset:minkowski (exit %d,%s, %.2f s, limit 300 s)\n",
                    ok ? "PASS" : "FAIL", status, detail.c_str(), dt);
        all_pass = all_pass && ok;
    }
    return all_pass ? 0 : 1;
}
