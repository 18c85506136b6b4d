#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cobar {

/// Column-major sparse integer matrix. Entries within a column are sorted by row
/// and nonzero.
struct SparseMatrix {
  using Entry = std::pair<std::uint32_t, std::int64_t>;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Entry>> columns;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  std::size_t nonzeros() const;
  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);
};

using DenseMatrix = std::vector<std::vector<mpz_class>>;

/// Degreewise free chain complex C_0, C_1, ..., C_top over the integers.
/// boundary[n] maps C_n to C_{n-1}; boundary[0] is the empty map.
struct IntegerComplex {
  std::vector<std::size_t> basis_sizes;
  std::vector<SparseMatrix> boundary;
  /// Optional human-readable basis labels (may be empty for large complexes).
  std::vector<std::vector<std::string>> labels;
  /// True when C_{top+1} = 0, so the top degree's homology is determined.
  bool top_complete = false;
  std::optional<int> max_length;  // word-length truncation, when any

  int top_degree() const { return static_cast<int>(basis_sizes.size()) - 1; }
};

struct DegreeHomology {
  int degree = 0;
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // each > 1, divisibility chain

  bool operator==(const DegreeHomology&) const = default;
};

struct HomologyResult {
  std::vector<DegreeHomology> degrees;
  std::optional<int> truncated_at_length;

  const DegreeHomology& at(int degree) const;
  std::vector<std::size_t> free_ranks() const;
};

struct SmithResult {
  std::vector<mpz_class> factors;  // nonzero invariant factors d_1 | d_2 | ...
  std::optional<DenseMatrix> U;    // rows x rows, unimodular
  std::optional<DenseMatrix> V;    // cols x cols, unimodular
};

/// Smith normal form of a dense matrix; U*M*V is diagonal when transforms are requested.
SmithResult smith_normal_form(const DenseMatrix& M, bool with_transforms = false);

/// Nonzero invariant factors of a sparse matrix. Eliminates on +-1 pivots
/// first, then finishes the remaining core densely.
std::vector<mpz_class> invariant_factors(const SparseMatrix& M);

struct ComplexReport {
  bool passed = true;
  std::vector<std::string> failures;
};

/// Checks shapes and that every consecutive composite of boundaries vanishes.
ComplexReport verify_complex(const IntegerComplex& C);

/// Homology in degrees [lo, hi]. Throws std::out_of_range for a degree whose
/// homology is not determined by the stored data.
HomologyResult homology(const IntegerComplex& C, int lo, int hi);

std::string render_table(const HomologyResult& H);

DenseMatrix to_dense(const SparseMatrix& M);
DenseMatrix multiply(const DenseMatrix& A, const DenseMatrix& B);

}  // namespace cobar
