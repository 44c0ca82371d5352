#pragma once

// Dense tensor components at a single point.
//
// Index convention (used by every module): all contravariant slots first,
// then all covariant slots, stored row-major. A (1,2) tensor G holds
// G(a, b, c) = G^a_bc; a (1,3) tensor R holds R(l, i, j, k) = R^l_ijk.
// Derivative slots produced by differentiation or covariant derivatives are
// appended as trailing covariant slots.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bimetric/error.hpp"

namespace bimetric {

inline constexpr int kMaxDimension = 8;
inline constexpr int kMaxRank = 4;

struct TensorShape {
  int upper = 0;
  int lower = 0;
  int dimension = 1;

  int rank() const { return upper + lower; }

  std::size_t size() const {
    std::size_t n = 1;
    for (int i = 0; i < rank(); ++i) n *= static_cast<std::size_t>(dimension);
    return n;
  }

  void validate() const {
    if (upper < 0 || lower < 0) throw ShapeError("negative tensor rank");
    if (rank() > kMaxRank)
      throw ShapeError("tensor rank " + std::to_string(rank()) + " exceeds " +
                       std::to_string(kMaxRank));
    if (dimension < 1 || dimension > kMaxDimension)
      throw ShapeError("dimension " + std::to_string(dimension) +
                       " outside [1, " + std::to_string(kMaxDimension) + "]");
  }

  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

using MultiIndex = std::array<int, kMaxRank>;

template <typename Scalar>
class Tensor {
 public:
  using scalar_type = Scalar;

  Tensor() : data_(1, Scalar(0.0)) {}

  explicit Tensor(TensorShape shape, const Scalar& fill = Scalar(0.0))
      : shape_(shape) {
    shape_.validate();
    data_.assign(shape_.size(), fill);
  }

  static Tensor scalar(const Scalar& value, int dimension = 1) {
    return Tensor({0, 0, dimension}, value);
  }

  /// Kronecker delta as a (1,1) tensor.
  static Tensor identity(int dimension) {
    Tensor t({1, 1, dimension});
    for (int i = 0; i < dimension; ++i) t(i, i) = Scalar(1.0);
    return t;
  }

  const TensorShape& shape() const { return shape_; }
  int dimension() const { return shape_.dimension; }
  int rank() const { return shape_.rank(); }
  std::size_t size() const { return data_.size(); }

  std::span<Scalar> data() { return data_; }
  std::span<const Scalar> data() const { return data_; }

  Scalar& operator[](std::size_t flat) { return data_[flat]; }
  const Scalar& operator[](std::size_t flat) const { return data_[flat]; }

  template <std::integral... I>
  Scalar& operator()(I... index) {
    return data_[offset_of(index...)];
  }
  template <std::integral... I>
  const Scalar& operator()(I... index) const {
    return data_[offset_of(index...)];
  }

  Scalar& at(const MultiIndex& index) { return data_[offset(index)]; }
  const Scalar& at(const MultiIndex& index) const {
    return data_[offset(index)];
  }

  std::size_t offset(const MultiIndex& index) const {
    std::size_t flat = 0;
    for (int s = 0; s < rank(); ++s)
      flat = flat * static_cast<std::size_t>(shape_.dimension) +
             static_cast<std::size_t>(index[s]);
    return flat;
  }

  MultiIndex unflatten(std::size_t flat) const {
    MultiIndex index{};
    for (int s = rank() - 1; s >= 0; --s) {
      index[s] = static_cast<int>(flat % static_cast<std::size_t>(shape_.dimension));
      flat /= static_cast<std::size_t>(shape_.dimension);
    }
    return index;
  }

  Tensor& operator+=(const Tensor& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
  }
  Tensor& operator*=(const Scalar& factor) {
    for (auto& x : data_) x *= factor;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator-(Tensor a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Tensor operator*(const Scalar& factor, Tensor a) { return a *= factor; }
  friend Tensor operator*(Tensor a, const Scalar& factor) { return a *= factor; }

 private:
  template <typename... I>
  std::size_t offset_of(I... index) const {
    MultiIndex idx{static_cast<int>(index)...};
    return offset(idx);
  }

  void require_same_shape(const Tensor& other) const {
    if (!(shape_ == other.shape_)) throw ShapeError("tensor shape mismatch");
  }

  TensorShape shape_{};
  std::vector<Scalar> data_;
};

/// Calls f(flat, multi_index) for every component in storage order.
template <typename Scalar, typename F>
void for_each_index(const Tensor<Scalar>& t, F&& f) {
  for (std::size_t flat = 0; flat < t.size(); ++flat) f(flat, t.unflatten(flat));
}

/// Sum over a paired contravariant/covariant slot. `upper_slot` counts within
/// the contravariant group and `lower_slot` within the covariant group.
template <typename Scalar>
Tensor<Scalar> contract(const Tensor<Scalar>& t, int upper_slot, int lower_slot) {
  const TensorShape& s = t.shape();
  if (upper_slot < 0 || upper_slot >= s.upper || lower_slot < 0 ||
      lower_slot >= s.lower)
    throw IndexError("contraction slot out of range");
  Tensor<Scalar> out({s.upper - 1, s.lower - 1, s.dimension});
  const int lower_abs = s.upper + lower_slot;
  for_each_index(out, [&](std::size_t flat, const MultiIndex& r) {
    MultiIndex src{};
    int k = 0;
    for (int slot = 0; slot < s.rank(); ++slot) {
      if (slot == upper_slot || slot == lower_abs) continue;
      src[slot] = r[k++];
    }
    Scalar sum(0.0);
    for (int i = 0; i < s.dimension; ++i) {
      src[upper_slot] = i;
      src[lower_abs] = i;
      sum += t.at(src);
    }
    out[flat] = sum;
  });
  return out;
}

/// Outer product. Result slots: A's upper, B's upper, A's lower, B's lower.
template <typename Scalar>
Tensor<Scalar> tensor_product(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  const TensorShape& sa = a.shape();
  const TensorShape& sb = b.shape();
  if (sa.dimension != sb.dimension)
    throw ShapeError("tensor_product: dimension mismatch");
  Tensor<Scalar> out({sa.upper + sb.upper, sa.lower + sb.lower, sa.dimension});
  for_each_index(out, [&](std::size_t flat, const MultiIndex& r) {
    MultiIndex ia{}, ib{};
    for (int i = 0; i < sa.upper; ++i) ia[i] = r[i];
    for (int i = 0; i < sb.upper; ++i) ib[i] = r[sa.upper + i];
    const int base = sa.upper + sb.upper;
    for (int i = 0; i < sa.lower; ++i) ia[sa.upper + i] = r[base + i];
    for (int i = 0; i < sb.lower; ++i) ib[sb.upper + i] = r[base + sa.lower + i];
    out[flat] = a.at(ia) * b.at(ib);
  });
  return out;
}

/// T - T with two same-variance slots swapped (no 1/2 factor).
template <typename Scalar>
Tensor<Scalar> antisymmetrize_pair(const Tensor<Scalar>& t, int slot_a, int slot_b) {
  const TensorShape& s = t.shape();
  if (slot_a < 0 || slot_b < 0 || slot_a >= s.rank() || slot_b >= s.rank() ||
      slot_a == slot_b)
    throw IndexError("antisymmetrize_pair: need two distinct slots in range");
  if ((slot_a < s.upper) != (slot_b < s.upper))
    throw VarianceError("antisymmetrize_pair: slots differ in variance");
  Tensor<Scalar> out(s);
  for_each_index(t, [&](std::size_t flat, const MultiIndex& idx) {
    MultiIndex swapped = idx;
    std::swap(swapped[slot_a], swapped[slot_b]);
    out[flat] = t[flat] - t.at(swapped);
  });
  return out;
}

inline double max_abs(const Tensor<double>& t) {
  double m = 0.0;
  for (double x : t.data()) m = std::max(m, std::abs(x));
  return m;
}

inline bool all_finite(const Tensor<double>& t) {
  return std::all_of(t.data().begin(), t.data().end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace bimetric
