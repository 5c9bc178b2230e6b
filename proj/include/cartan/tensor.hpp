#pragma once

#include <array>
#include <cstddef>

namespace cartan {

/// Dense fixed-shape array indexed as t(i, j, ...), row major.
template <class T, std::size_t... Dims> class Tensor {
  public:
    static constexpr std::size_t rank = sizeof...(Dims);
    static constexpr std::size_t size = (Dims * ... * 1);
    static constexpr std::array<std::size_t, rank> shape{Dims...};

    template <class... I> T &operator()(I... idx) { return data_[offset(static_cast<std::size_t>(idx)...)]; }
    template <class... I> const T &operator()(I... idx) const { return data_[offset(static_cast<std::size_t>(idx)...)]; }

    T *begin() { return data_.data(); }
    T *end() { return data_.data() + size; }
    const T *begin() const { return data_.data(); }
    const T *end() const { return data_.data() + size; }
    const std::array<T, size> &data() const { return data_; }
    std::array<T, size> &data() { return data_; }

    friend bool operator==(const Tensor &a, const Tensor &b) { return a.data_ == b.data_; }

    /// Multi-index of a flat position.
    static std::array<std::size_t, rank> unflatten(std::size_t flat) {
        std::array<std::size_t, rank> idx{};
        for (std::size_t k = rank; k-- > 0;) {
            idx[k] = flat % shape[k];
            flat /= shape[k];
        }
        return idx;
    }

  private:
    template <class... I> static std::size_t offset(I... idx) {
        static_assert(sizeof...(I) == rank, "wrong number of indices");
        std::size_t out = 0, k = 0;
        ((out = out * shape[k++] + idx), ...);
        return out;
    }
    std::array<T, size> data_{};
};

} // namespace cartan
