#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "inj/error.hpp"

namespace inj {

/// Row-major storage for matrices over non-numeric entry types (sign sets,
/// intervals, polynomials) that Eigen cannot hold.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Pointer to the first entry of row i; the row has cols() entries.
  const T* row(std::size_t i) const { return data_.data() + i * cols_; }

  const std::vector<T>& data() const { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

}  // namespace inj
