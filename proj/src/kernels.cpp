#include "sessioncomm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace sessioncomm {

CsrMatrix CsrMatrix::transposed() const {
  CsrMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.row_ptr.assign(cols + 1, 0);
  for (auto c : col) ++t.row_ptr[c + 1];
  for (std::size_t i = 0; i < cols; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
  t.col.resize(nnz());
  t.val.resize(nnz());
  std::vector<std::size_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
  // Rows visited in order, so every transposed row ends up column-sorted.
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      auto dst = next[col[k]]++;
      t.col[dst] = static_cast<std::uint32_t>(r);
      t.val[dst] = val[k];
    }
  }
  return t;
}

namespace {

void check_spmv(const CsrMatrix& m, std::span<const double> x, std::span<double> y) {
  if (x.size() != m.cols || y.size() != m.rows) throw std::invalid_argument("spmv: dimension mismatch");
}

inline double row_dot(const CsrMatrix& m, std::size_t r, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) s += m.val[k] * x[m.col[k]];
  return s;
}

inline double block_dot(std::span<const double> a, std::span<const double> b, std::size_t blk) {
  const std::size_t lo = blk * kReductionBlock;
  const std::size_t hi = std::min(a.size(), lo + kReductionBlock);
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
  return s;
}

// Overlap counts for one row using the inverted object lists. `counts` is
// a zeroed scratch array of length rows; it is left zeroed on return.
void overlap_row(const OverlapInput& in, std::size_t p, std::vector<std::uint32_t>& counts,
                 std::vector<std::uint32_t>& touched, std::vector<std::uint32_t>& cols,
                 std::vector<double>& vals) {
  touched.clear();
  for (auto obj : in.row_objects[p]) {
    for (auto q : in.object_rows[obj]) {
      if (q == p) continue;
      if (counts[q]++ == 0) touched.push_back(q);
    }
  }
  std::sort(touched.begin(), touched.end());
  const double size_p = static_cast<double>(in.row_objects[p].size());
  cols.clear();
  vals.clear();
  for (auto q : touched) {
    cols.push_back(q);
    vals.push_back(static_cast<double>(counts[q]) / size_p);
    counts[q] = 0;
  }
}

}  // namespace

namespace kernels::serial {

void spmv(const CsrMatrix& m, std::span<const double> x, std::span<double> y) {
  check_spmv(m, x, y);
  for (std::size_t r = 0; r < m.rows; ++r) y[r] = row_dot(m, r, x);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  const std::size_t blocks = (a.size() + kReductionBlock - 1) / kReductionBlock;
  double s = 0.0;
  for (std::size_t blk = 0; blk < blocks; ++blk) s += block_dot(a, b, blk);
  return s;
}

CsrMatrix overlap_similarity(const OverlapInput& in) {
  const std::size_t n = in.row_objects.size();
  CsrMatrix m;
  m.rows = m.cols = n;
  m.row_ptr.assign(1, 0);
  std::vector<std::uint32_t> counts(n, 0), touched, cols;
  std::vector<double> vals;
  for (std::size_t p = 0; p < n; ++p) {
    overlap_row(in, p, counts, touched, cols, vals);
    m.col.insert(m.col.end(), cols.begin(), cols.end());
    m.val.insert(m.val.end(), vals.begin(), vals.end());
    m.row_ptr.push_back(m.col.size());
  }
  return m;
}

}  // namespace kernels::serial

namespace kernels::omp {

void spmv(const CsrMatrix& m, std::span<const double> x, std::span<double> y) {
  check_spmv(m, x, y);
  const auto rows = static_cast<std::ptrdiff_t>(m.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    y[static_cast<std::size_t>(r)] = row_dot(m, static_cast<std::size_t>(r), x);
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  const std::size_t blocks = (a.size() + kReductionBlock - 1) / kReductionBlock;
  if (blocks <= 1) return blocks == 0 ? 0.0 : block_dot(a, b, 0);
  std::vector<double> partial(blocks);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < nb; ++blk) {
    partial[static_cast<std::size_t>(blk)] = block_dot(a, b, static_cast<std::size_t>(blk));
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

CsrMatrix overlap_similarity(const OverlapInput& in) {
  const std::size_t n = in.row_objects.size();
  std::vector<std::vector<std::uint32_t>> row_cols(n);
  std::vector<std::vector<double>> row_vals(n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    std::vector<std::uint32_t> counts(n, 0), touched;
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t p = 0; p < rows; ++p) {
      auto i = static_cast<std::size_t>(p);
      overlap_row(in, i, counts, touched, row_cols[i], row_vals[i]);
    }
  }
  CsrMatrix m;
  m.rows = m.cols = n;
  m.row_ptr.assign(n + 1, 0);
  for (std::size_t p = 0; p < n; ++p) m.row_ptr[p + 1] = m.row_ptr[p] + row_cols[p].size();
  m.col.resize(m.row_ptr[n]);
  m.val.resize(m.row_ptr[n]);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < rows; ++p) {
    auto i = static_cast<std::size_t>(p);
    std::copy(row_cols[i].begin(), row_cols[i].end(), m.col.begin() + static_cast<std::ptrdiff_t>(m.row_ptr[i]));
    std::copy(row_vals[i].begin(), row_vals[i].end(), m.val.begin() + static_cast<std::ptrdiff_t>(m.row_ptr[i]));
  }
  return m;
}

}  // namespace kernels::omp

double norm2(std::span<const double> a) { return std::sqrt(kernels::omp::dot(a, a)); }

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace sessioncomm
