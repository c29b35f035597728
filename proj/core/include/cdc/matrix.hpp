#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdc/field.hpp"

namespace cdc {

// Dense row-major matrix over a FieldContext. Zero-dimensional shapes
// (0 x n, m x 0, 0 x 0) are valid and behave as expected under rank,
// concatenation and multiplication.
class Mat {
 public:
  Mat(const FieldContext& f, int rows, int cols)
      : field_(&f), rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static Mat identity(const FieldContext& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  // Convenience constructor for tests and examples.
  static Mat from_rows(const FieldContext& f, const std::vector<std::vector<int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldContext& field() const { return *field_; }

  uint8_t at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
  void set(int r, int c, uint8_t v) { e_[static_cast<size_t>(r) * cols_ + c] = v; }

  const std::vector<uint8_t>& entries() const { return e_; }

  bool operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  // Lexicographic order on (rows, cols, entries); the canonical order used
  // for sorting codewords and graph vertices.
  bool operator<(const Mat& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return e_ < o.e_;
  }

  std::string to_string() const;  // rows as digit strings joined by '\n'

 private:
  const FieldContext* field_;
  int rows_, cols_;
  std::vector<uint8_t> e_;
};

// Pivot column indicator of a matrix in reduced row echelon form (or of the
// RREF of an arbitrary matrix): bits[c] == 1 iff column c carries a pivot.
struct PivotVector {
  std::vector<uint8_t> bits;
  int weight = 0;
};

// Reduced row echelon form, full reduction (zeros above and below pivots,
// pivots scaled to 1). Row count is preserved; zero rows sink to the bottom.
Mat rref(const Mat& m, int* rank_out = nullptr);
int rank(const Mat& m);
PivotVector pivot(const Mat& m);

Mat hconcat(const Mat& a, const Mat& b);
Mat vconcat(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);
Mat add(const Mat& a, const Mat& b);
Mat sub(const Mat& a, const Mat& b);
Mat mul(const Mat& a, const Mat& b);

int hamming_distance(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y);
int hamming_weight(const std::vector<uint8_t>& x);

namespace detail {
// Reference elimination path, independent of the packed GF(2) route; public
// so tests can pin the two implementations against each other.
int rank_generic(const Mat& m);
Mat rref_generic(const Mat& m, int* rank_out);
}  // namespace detail

// Bit-packed helpers for GF(2) with at most 64 columns; row i is a word whose
// bit c is the entry in column c. Used on verification and enumeration hot
// paths; results agree with the generic route by construction and by test.
namespace gf2 {

bool packable(const Mat& m);
std::vector<uint64_t> pack_rows(const Mat& m);
Mat unpack(const FieldContext& f, const std::vector<uint64_t>& rows, int cols);

// Destructive Gaussian elimination on packed rows; returns the rank.
int rank_packed(uint64_t* rows, int n);

// In-place reduced row echelon form; returns pivot columns in order.
std::vector<int> rref_packed(std::vector<uint64_t>& rows);

}  // namespace gf2

}  // namespace cdc
