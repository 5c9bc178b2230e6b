#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cartan::harness {

enum class OracleKind { ExhaustiveIndexSum, FormExpansion, FiniteDifferenceOnGroup, CoefficientExtraction };
enum class Verdict { Pass, Fail, Skipped };

std::string to_string(OracleKind k);
std::string to_string(Verdict v);

struct SamplerConfig {
    std::uint64_t seed = 1;
    /// Number of random objects (fields, group elements, phase points) a check draws.
    int samples = 16;
    int x_degree = 2;
    int group_degree = 0;
};

/// What a check body reports. A failing outcome must carry a witness.
struct CheckOutcome {
    bool passed = true;
    bool skipped = false;
    /// First failing index tuple with both exact values.
    std::string witness;
    /// Extra facts resolved by the check (e.g. an oracle-fixed sign).
    std::string note;
    long comparisons = 0;
};

struct CheckSpec {
    std::string id;
    std::string description;
    OracleKind oracle = OracleKind::ExhaustiveIndexSum;
    SamplerConfig sampler;
    std::function<CheckOutcome(const SamplerConfig &)> run;
};

struct CheckResult {
    std::string id;
    std::string description;
    OracleKind oracle = OracleKind::ExhaustiveIndexSum;
    std::uint64_t seed = 0;
    int samples = 0;
    Verdict verdict = Verdict::Skipped;
    std::string witness;
    std::string note;
    long comparisons = 0;
    /// Wall-clock seconds; not part of the deterministic content.
    double seconds = 0;
};

/// Built-in checks in registry order. Sampler seeds here are defaults; run_suite re-derives them.
const std::vector<CheckSpec> &registry();

struct SuiteRun {
    std::vector<CheckResult> results;
    /// Set when the filter is invalid or matches nothing.
    std::string notice;
    bool passed() const;
};

/// Runs every check whose id fully matches the ECMAScript regex `filter` (empty = all).
/// Each check gets the seed mix(seed, id), so results do not depend on which other
/// checks were selected. Checks run concurrently; results keep registry order.
SuiteRun run_suite(const std::string &filter, std::uint64_t seed, bool parallel = true);

/// Run one spec with the seed derived from `suite_seed`. Exceptions become failures.
CheckResult run_check(const CheckSpec &spec, std::uint64_t suite_seed);

/// Per-check seed derived from the suite seed and the check id.
std::uint64_t check_seed(std::uint64_t suite_seed, const std::string &id);

} // namespace cartan::harness
