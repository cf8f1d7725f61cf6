#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace bratteli {

/// Minimal exact sparse matrix, column-major. T is an exact scalar (long long
/// or Rational); zeros are never stored, so operator== compares values.
template <typename T>
class SparseMat {
 public:
  SparseMat() : rows_(0), cols_(0) {}
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  static SparseMat identity(int n) {
    SparseMat m(n, n);
    for (int i = 0; i < n; ++i) m.data_[i][i] = T(1);
    return m;
  }

  const std::map<int, T>& col(int j) const { return data_.at(static_cast<size_t>(j)); }

  T get(int r, int c) const {
    const auto& col = data_.at(static_cast<size_t>(c));
    auto it = col.find(r);
    return it == col.end() ? T(0) : it->second;
  }

  void set(int r, int c, T v) {
    check_index(r, c);
    auto& col = data_[static_cast<size_t>(c)];
    if (v == T(0)) {
      col.erase(r);
    } else {
      col[r] = std::move(v);
    }
  }

  void add_at(int r, int c, const T& v) {
    check_index(r, c);
    auto& col = data_[static_cast<size_t>(c)];
    auto [it, inserted] = col.try_emplace(r, v);
    if (!inserted) {
      it->second += v;
      if (it->second == T(0)) col.erase(it);
    }
  }

  bool is_zero() const {
    for (const auto& col : data_)
      if (!col.empty()) return false;
    return true;
  }

  long long nnz() const {
    long long n = 0;
    for (const auto& col : data_) n += static_cast<long long>(col.size());
    return n;
  }

  SparseMat transpose() const {
    SparseMat t(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
      for (const auto& [i, v] : data_[static_cast<size_t>(j)]) t.data_[static_cast<size_t>(i)][j] = v;
    return t;
  }

  SparseMat operator*(const SparseMat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("SparseMat: shape mismatch in product");
    SparseMat out(rows_, rhs.cols_);
    for (int j = 0; j < rhs.cols_; ++j) {
      auto& out_col = out.data_[static_cast<size_t>(j)];
      for (const auto& [k, b] : rhs.data_[static_cast<size_t>(j)]) {
        for (const auto& [i, a] : data_[static_cast<size_t>(k)]) {
          auto [it, inserted] = out_col.try_emplace(i, a * b);
          if (!inserted) it->second += a * b;
        }
      }
      std::erase_if(out_col, [](const auto& kv) { return kv.second == T(0); });
    }
    return out;
  }

  SparseMat operator+(const SparseMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw std::invalid_argument("SparseMat: shape mismatch in sum");
    SparseMat out = *this;
    for (int j = 0; j < cols_; ++j)
      for (const auto& [i, v] : rhs.data_[static_cast<size_t>(j)]) out.add_at(i, j, v);
    return out;
  }

  SparseMat operator-(const SparseMat& rhs) const {
    SparseMat neg = rhs;
    for (auto& col : neg.data_)
      for (auto& [i, v] : col) v = -v;
    return *this + neg;
  }

  SparseMat& scale(const T& c) {
    if (c == T(0)) {
      for (auto& col : data_) col.clear();
      return *this;
    }
    for (auto& col : data_)
      for (auto& [i, v] : col) v *= c;
    return *this;
  }

  bool operator==(const SparseMat& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }

  /// Image of a sparse column vector under this matrix.
  std::map<int, T> apply(const std::map<int, T>& vec) const {
    std::map<int, T> out;
    for (const auto& [j, x] : vec) {
      for (const auto& [i, a] : data_.at(static_cast<size_t>(j))) {
        auto [it, inserted] = out.try_emplace(i, a * x);
        if (!inserted) it->second += a * x;
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == T(0); });
    return out;
  }

  /// A A^t A = A, the exact partial-isometry identity for real matrices.
  bool is_partial_isometry() const {
    SparseMat t = transpose();
    return (*this) * t * (*this) == *this;
  }

  /// True when the matrix is diagonal with entries 0 or 1.
  bool is_diagonal_projection() const {
    for (int j = 0; j < cols_; ++j) {
      const auto& col = data_[static_cast<size_t>(j)];
      if (col.empty()) continue;
      if (col.size() != 1) return false;
      const auto& [i, v] = *col.begin();
      if (i != j || v != T(1)) return false;
    }
    return true;
  }

 private:
  void check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("SparseMat: index out of range");
  }

  int rows_, cols_;
  std::vector<std::map<int, T>> data_;
};

}  // namespace bratteli
