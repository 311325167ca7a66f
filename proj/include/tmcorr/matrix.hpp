#pragma once

// Dense square matrices over the exact rational type, sized for the small
// constant matrices of the correlation recursions (dimension <= 2^{n-1}).

#include "tmcorr/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace tmcorr {

class RationalMatrix {
 public:
  RationalMatrix() : dim_(0) {}
  explicit RationalMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Rat(0)) {}

  RationalMatrix(std::initializer_list<std::initializer_list<int>> rows)
      : dim_(rows.size()), data_() {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) throw ArgsError("non-square matrix literal");
      for (int v : row) data_.emplace_back(v);
    }
  }

  static RationalMatrix identity(std::size_t dim) {
    RationalMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t dim() const { return dim_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.dim_ != b.dim_) throw ArgsError("matrix dimension mismatch");
    RationalMatrix out(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i)
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const Rat& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.dim_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.dim_ != b.dim_) throw ArgsError("matrix dimension mismatch");
    RationalMatrix out(a.dim_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
    return out;
  }

  friend RationalMatrix operator*(const Rat& s, const RationalMatrix& a) {
    RationalMatrix out(a.dim_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = s * a.data_[i];
    return out;
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.dim_ == b.dim_ && a.data_ == b.data_;
  }

  RationalMatrix transpose() const {
    RationalMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool is_zero() const {
    for (const Rat& v : data_)
      if (v != 0) return false;
    return true;
  }

  // Matrix-vector product.
  std::vector<Rat> apply(const std::vector<Rat>& v) const {
    if (v.size() != dim_) throw ArgsError("matrix/vector dimension mismatch");
    std::vector<Rat> out(dim_, Rat(0));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<Rat> data_;
};

inline RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t l = 0; l < b.dim(); ++l)
          out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
    }
  return out;
}

}  // namespace tmcorr
