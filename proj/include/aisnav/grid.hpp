#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace aisnav {

// Dense row-major matrix sized at construction.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T value = T{})
      : rows_(rows),
        cols_(cols),
        cells_(static_cast<size_t>(rows) * static_cast<size_t>(cols), value) {
    assert(rows >= 0 && cols >= 0);
  }

  T& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return cells_[static_cast<size_t>(i) * cols_ + j];
  }
  const T& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return cells_[static_cast<size_t>(i) * cols_ + j];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return cells_.empty(); }

  auto begin() { return cells_.begin(); }
  auto end() { return cells_.end(); }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  bool operator==(const Grid&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> cells_;
};

}  // namespace aisnav
