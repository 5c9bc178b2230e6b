#include "cartan/oracle.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cartan::oracle {

DenseTensor::DenseTensor(int rank) : rank_(rank) {
    std::size_t n = 1;
    for (int k = 0; k < rank; ++k) n *= 4;
    data_.assign(n, Rational(0));
}

namespace {
std::size_t flat(std::span<const int> idx) {
    std::size_t f = 0;
    for (int i : idx) f = 4 * f + static_cast<std::size_t>(i);
    return f;
}

// Parity via cycle decomposition; 0 when an index repeats.
int parity(const std::array<int, 4> &p) {
    std::array<bool, 4> seen{};
    for (int v : p) {
        if (seen[v]) return 0;
        seen[v] = true;
    }
    seen = {};
    int transpositions = 0;
    for (int i = 0; i < 4; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p[j]) seen[j] = true, ++len;
        transpositions += len - 1;
    }
    return transpositions % 2 ? -1 : 1;
}

const int kMinkowski[4] = {1, -1, -1, -1};
} // namespace

Rational &DenseTensor::at(std::span<const int> idx) { return data_[flat(idx)]; }
const Rational &DenseTensor::at(std::span<const int> idx) const { return data_[flat(idx)]; }

const DenseTensor &metric() {
    static const DenseTensor h = [] {
        DenseTensor t(2);
        for (int a = 0; a < 4; ++a) t.at({a, a}) = kMinkowski[a];
        return t;
    }();
    return h;
}

const DenseTensor &delta() {
    static const DenseTensor d = [] {
        DenseTensor t(2);
        for (int a = 0; a < 4; ++a) t.at({a, a}) = 1;
        return t;
    }();
    return d;
}

namespace {
DenseTensor make_epsilon(int raised_slots) {
    DenseTensor t(4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    int s = parity({a, b, c, d});
                    std::array<int, 4> idx{a, b, c, d};
                    for (int k = 4 - raised_slots; k < 4; ++k) s *= kMinkowski[idx[k]];
                    t.at({a, b, c, d}) = s;
                }
    return t;
}
} // namespace

const DenseTensor &epsilon_lower() {
    static const DenseTensor t = make_epsilon(0);
    return t;
}

const DenseTensor &epsilon_upper() {
    static const DenseTensor t = make_epsilon(4);
    return t;
}

const DenseTensor &epsilon_mixed() {
    static const DenseTensor t = make_epsilon(1);
    return t;
}

Rational kronecker2(int a, int b, int c, int d) { return Rational((a == c && b == d) - (a == d && b == c)); }

namespace {
struct Plan {
    std::vector<char> labels;           // free labels first, then summed
    std::vector<std::vector<int>> slot; // per factor: label position of each slot
    std::vector<std::vector<std::size_t>> ready; // factors completed once label k is assigned
};

void recurse(const std::vector<Factor> &factors, const Plan &plan, std::size_t depth, std::vector<int> &assign,
             const Rational &acc, std::size_t n_free, DenseTensor &out) {
    if (depth == plan.labels.size()) {
        std::vector<int> idx(assign.begin(), assign.begin() + static_cast<long>(n_free));
        out.at(idx) += acc;
        return;
    }
    for (int v = 0; v < 4; ++v) {
        assign[depth] = v;
        Rational prod = acc;
        bool zero = false;
        for (std::size_t f : plan.ready[depth]) {
            std::vector<int> idx;
            for (int p : plan.slot[f]) idx.push_back(assign[p]);
            const Rational &x = factors[f].tensor->at(idx);
            if (x.is_zero()) {
                zero = true;
                break;
            }
            prod *= x;
        }
        if (!zero) recurse(factors, plan, depth + 1, assign, prod, n_free, out);
    }
}
} // namespace

DenseTensor contract(const std::vector<Factor> &factors, const std::string &free_labels) {
    Plan plan;
    for (char c : free_labels) plan.labels.push_back(c);
    for (const auto &f : factors) {
        if (static_cast<int>(f.labels.size()) != f.tensor->rank())
            throw std::invalid_argument("oracle: label count does not match tensor rank");
        for (char c : f.labels)
            if (std::find(plan.labels.begin(), plan.labels.end(), c) == plan.labels.end()) plan.labels.push_back(c);
    }
    plan.ready.resize(plan.labels.size());
    for (std::size_t f = 0; f < factors.size(); ++f) {
        std::vector<int> slots;
        int last = -1;
        for (char c : factors[f].labels) {
            int p = static_cast<int>(std::find(plan.labels.begin(), plan.labels.end(), c) - plan.labels.begin());
            slots.push_back(p);
            last = std::max(last, p);
        }
        plan.slot.push_back(slots);
        if (last < 0) throw std::invalid_argument("oracle: scalar factors are not supported");
        plan.ready[static_cast<std::size_t>(last)].push_back(f);
    }
    DenseTensor out(static_cast<int>(free_labels.size()));
    std::vector<int> assign(plan.labels.size(), 0);
    recurse(factors, plan, 0, assign, Rational(1), free_labels.size(), out);
    return out;
}

} // namespace cartan::oracle
