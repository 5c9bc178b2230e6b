#pragma once

#include "cartan/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace cartan::oracle {

/// Dense rational array with every slot of dimension 4. Deliberately shares no code
/// with the Form or tensor layers: the epsilon and metric tables are rebuilt here.
class DenseTensor {
  public:
    DenseTensor() = default;
    explicit DenseTensor(int rank);

    int rank() const { return rank_; }
    Rational &at(std::span<const int> idx);
    const Rational &at(std::span<const int> idx) const;
    Rational &at(std::initializer_list<int> idx) { return at(std::span(idx.begin(), idx.size())); }
    const Rational &at(std::initializer_list<int> idx) const { return at(std::span(idx.begin(), idx.size())); }
    const std::vector<Rational> &data() const { return data_; }
    std::vector<Rational> &data() { return data_; }

  private:
    int rank_ = 0;
    std::vector<Rational> data_{Rational(0)};
};

/// Minkowski metric h_{ab} = diag(1,-1,-1,-1); its inverse has the same entries.
const DenseTensor &metric();
const DenseTensor &delta();
/// epsilon_{abcd}, epsilon_{0123} = +1.
const DenseTensor &epsilon_lower();
/// epsilon^{abcd}, all four slots raised with h.
const DenseTensor &epsilon_upper();
/// epsilon_{abc}^d.
const DenseTensor &epsilon_mixed();

struct Factor {
    const DenseTensor *tensor;
    std::string labels;
};

/// Einstein-summation contraction: sums every label that is not in `free_labels`
/// over 0..3; output slots follow `free_labels`.
DenseTensor contract(const std::vector<Factor> &factors, const std::string &free_labels);

/// Generalised Kronecker delta^{ab}_{cd} = d^a_c d^b_d - d^a_d d^b_c.
Rational kronecker2(int a, int b, int c, int d);

} // namespace cartan::oracle
