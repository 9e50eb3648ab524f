#ifndef SESSIONCOMM_KERNELS_HPP
#define SESSIONCOMM_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sessioncomm {

/// Compressed sparse rows. Column indices are strictly increasing per row.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::uint32_t> col;
  std::vector<double> val;

  std::size_t nnz() const { return val.size(); }
  CsrMatrix transposed() const;

  bool operator==(const CsrMatrix&) const = default;
};

/// Sparse set-overlap input: for each row (session) the sorted distinct
/// object indices it touched, plus the inverted list object -> rows.
struct OverlapInput {
  std::vector<std::vector<std::uint32_t>> row_objects;
  std::vector<std::vector<std::uint32_t>> object_rows;
};

// Every kernel exists twice. The serial versions are the reference used by
// tests; the omp versions must produce bit-identical results for any thread
// count. Reductions sum fixed-size blocks in index order.
inline constexpr std::size_t kReductionBlock = 1024;

namespace kernels::serial {

void spmv(const CsrMatrix& m, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b);
/// Row p holds |O_p ∩ O_q| / |O_p| for every q != p with a shared object.
CsrMatrix overlap_similarity(const OverlapInput& in);

}  // namespace kernels::serial

namespace kernels::omp {

void spmv(const CsrMatrix& m, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b);
CsrMatrix overlap_similarity(const OverlapInput& in);

}  // namespace kernels::omp

double norm2(std::span<const double> a);

/// Sets the OpenMP thread count; 0 keeps the runtime default.
void set_thread_count(int threads);

}  // namespace sessioncomm

#endif  // SESSIONCOMM_KERNELS_HPP
