#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace twistcert {

// Exact integers everywhere; homology actions of long twist words grow
// without bound and must never wrap.
using Integer = boost::multiprecision::cpp_int;

Integer floor_mod(const Integer& value, const Integer& modulus);

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  std::vector<Integer> apply(const std::vector<Integer>& v) const;
  std::vector<Integer> column(std::size_t c) const;

  bool is_identity() const;
  bool is_zero() const;
  bool all_nonnegative() const;

  // Fraction-free (Bareiss) determinant; exact.
  Integer determinant() const;

  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix power(const IntMatrix& m, unsigned long long exponent);

}  // namespace twistcert
