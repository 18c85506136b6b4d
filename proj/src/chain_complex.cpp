#include "cobar/chain_complex.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace cobar {

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  const std::size_t r = dense.size();
  const std::size_t c = r == 0 ? 0 : dense.front().size();
  SparseMatrix M(r, c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i)
      if (dense[i][j] != 0) M.columns[j].emplace_back(static_cast<std::uint32_t>(i), dense[i][j]);
  return M;
}

DenseMatrix to_dense(const SparseMatrix& M) {
  DenseMatrix D(M.rows, std::vector<mpz_class>(M.cols, 0));
  for (std::size_t j = 0; j < M.cols; ++j)
    for (const auto& [i, v] : M.columns[j]) D[i][j] = static_cast<long>(v);
  return D;
}

DenseMatrix multiply(const DenseMatrix& A, const DenseMatrix& B) {
  const std::size_t n = A.size();
  const std::size_t k = B.size();
  const std::size_t m = k == 0 ? 0 : B.front().size();
  DenseMatrix C(n, std::vector<mpz_class>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (A[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][t] * B[t][j];
    }
  return C;
}

// ---------------------------------------------------------------------------

namespace {

int cmp_abs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

DenseMatrix identity_matrix(std::size_t n) {
  DenseMatrix I(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

class SmithReducer {
 public:
  SmithReducer(DenseMatrix a, bool track) : A_(std::move(a)), track_(track) {
    rows_ = A_.size();
    cols_ = rows_ == 0 ? 0 : A_.front().size();
    if (track_) {
      U_ = identity_matrix(rows_);
      V_ = identity_matrix(cols_);
    }
  }

  SmithResult run() {
    SmithResult out;
    const std::size_t limit = std::min(rows_, cols_);
    for (std::size_t t = 0; t < limit; ++t) {
      if (!move_smallest_to(t, t, t)) break;
      reduce_pivot(t);
      if (A_[t][t] < 0) negate_row(t);
      out.factors.push_back(A_[t][t]);
    }
    if (track_) {
      out.U = std::move(U_);
      out.V = std::move(V_);
    }
    return out;
  }

 private:
  // Moves the smallest nonzero entry of the block [r0.., c0..] to (t, t).
  bool move_smallest_to(std::size_t t, std::size_t r0, std::size_t c0) {
    std::size_t bi = rows_;
    std::size_t bj = cols_;
    for (std::size_t i = r0; i < rows_; ++i)
      for (std::size_t j = c0; j < cols_; ++j) {
        if (A_[i][j] == 0) continue;
        if (bi == rows_ || cmp_abs(A_[i][j], A_[bi][bj]) < 0) {
          bi = i;
          bj = j;
          if (abs(A_[i][j]) == 1) goto found;
        }
      }
    if (bi == rows_) return false;
  found:
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void reduce_pivot(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (A_[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A_[i][t].get_mpz_t(), A_[t][t].get_mpz_t());
        add_row(i, t, -q);
        if (A_[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (A_[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A_[t][j].get_mpz_t(), A_[t][t].get_mpz_t());
        add_col(j, t, -q);
        if (A_[t][j] != 0) clean = false;
      }
      if (!clean) {
        // Bring the smallest remainder in row/column t to the pivot.
        std::size_t bi = t;
        std::size_t bj = t;
        for (std::size_t i = t + 1; i < rows_; ++i)
          if (A_[i][t] != 0 && cmp_abs(A_[i][t], A_[bi][bj]) < 0) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols_; ++j)
          if (A_[t][j] != 0 && cmp_abs(A_[t][j], A_[bi][bj]) < 0) {
            bi = t;
            bj = j;
          }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Divisibility: the pivot must divide the whole remaining block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows_ && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (A_[i][j] != 0 && mpz_divisible_p(A_[i][j].get_mpz_t(), A_[t][t].get_mpz_t()) == 0) {
            add_row(t, i, 1);
            fixed = true;
            break;
          }
        }
      if (!fixed) return;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(A_[a], A_[b]);
    if (track_) std::swap(U_[a], U_[b]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : A_) std::swap(row[a], row[b]);
    if (track_)
      for (auto& row : V_) std::swap(row[a], row[b]);
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const mpz_class& k) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (A_[src][j] != 0) A_[dst][j] += k * A_[src][j];
    if (track_)
      for (std::size_t j = 0; j < rows_; ++j)
        if (U_[src][j] != 0) U_[dst][j] += k * U_[src][j];
  }
  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const mpz_class& k) {
    for (std::size_t i = 0; i < rows_; ++i)
      if (A_[i][src] != 0) A_[i][dst] += k * A_[i][src];
    if (track_)
      for (std::size_t i = 0; i < cols_; ++i)
        if (V_[i][src] != 0) V_[i][dst] += k * V_[i][src];
  }
  void negate_row(std::size_t t) {
    for (auto& x : A_[t]) x = -x;
    if (track_)
      for (auto& x : U_[t]) x = -x;
  }

  DenseMatrix A_;
  DenseMatrix U_;
  DenseMatrix V_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool track_ = false;
};

using SparseRow = std::vector<std::pair<std::uint32_t, mpz_class>>;

const mpz_class* find_entry(const SparseRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

// target -= k * pivot; returns columns newly introduced into target.
std::vector<std::uint32_t> subtract_row(SparseRow& target, const SparseRow& pivot, const mpz_class& k) {
  SparseRow out;
  out.reserve(target.size() + pivot.size());
  std::vector<std::uint32_t> fresh;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < target.size() || b < pivot.size()) {
    if (b == pivot.size() || (a < target.size() && target[a].first < pivot[b].first)) {
      out.push_back(std::move(target[a++]));
    } else if (a == target.size() || pivot[b].first < target[a].first) {
      out.emplace_back(pivot[b].first, -k * pivot[b].second);
      fresh.push_back(pivot[b].first);
      ++b;
    } else {
      mpz_class v = target[a].second - k * pivot[b].second;
      if (v != 0) out.emplace_back(target[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  target = std::move(out);
  return fresh;
}

}  // namespace

SmithResult smith_normal_form(const DenseMatrix& M, bool with_transforms) {
  return SmithReducer(M, with_transforms).run();
}

std::vector<mpz_class> invariant_factors(const SparseMatrix& M) {
  std::vector<SparseRow> rows(M.rows);
  std::vector<std::vector<std::uint32_t>> col_rows(M.cols);
  for (std::uint32_t j = 0; j < M.cols; ++j)
    for (const auto& [i, v] : M.columns[j]) {
      rows[i].emplace_back(j, mpz_class(static_cast<long>(v)));
      col_rows[j].push_back(i);
    }
  std::vector<char> row_alive(M.rows, 1);
  std::vector<char> col_alive(M.cols, 1);

  using Item = std::pair<std::size_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (std::uint32_t i = 0; i < M.rows; ++i) queue.emplace(rows[i].size(), i);

  std::size_t unit_pivots = 0;
  while (!queue.empty()) {
    const auto [len, r] = queue.top();
    queue.pop();
    if (!row_alive[r] || rows[r].size() != len) continue;
    if (len == 0) {
      row_alive[r] = 0;
      continue;
    }
    std::uint32_t pc = 0;
    std::size_t best = SIZE_MAX;
    for (const auto& [c, v] : rows[r]) {
      if (cmp_abs(v, 1) == 0 && col_rows[c].size() < best) {
        best = col_rows[c].size();
        pc = c;
      }
    }
    if (best == SIZE_MAX) continue;
    const mpz_class p = *find_entry(rows[r], pc);
    const SparseRow pivot = rows[r];
    for (std::uint32_t r2 : col_rows[pc]) {
      if (r2 == r || !row_alive[r2]) continue;
      const mpz_class* a = find_entry(rows[r2], pc);
      if (a == nullptr) continue;
      const mpz_class k = *a * p;  // p = +-1, so a / p = a * p
      for (std::uint32_t c : subtract_row(rows[r2], pivot, k)) col_rows[c].push_back(r2);
      queue.emplace(rows[r2].size(), r2);
    }
    col_rows[pc].clear();
    row_alive[r] = 0;
    col_alive[pc] = 0;
    ++unit_pivots;
  }

  std::vector<std::uint32_t> core_rows;
  std::vector<std::int64_t> col_index(M.cols, -1);
  std::size_t core_cols = 0;
  for (std::uint32_t i = 0; i < M.rows; ++i) {
    if (!row_alive[i] || rows[i].empty()) continue;
    core_rows.push_back(i);
    for (const auto& [c, v] : rows[i])
      if (col_index[c] < 0) col_index[c] = static_cast<std::int64_t>(core_cols++);
  }
  std::vector<mpz_class> factors(unit_pivots, mpz_class(1));
  if (!core_rows.empty()) {
    DenseMatrix core(core_rows.size(), std::vector<mpz_class>(core_cols, 0));
    for (std::size_t k = 0; k < core_rows.size(); ++k)
      for (const auto& [c, v] : rows[core_rows[k]]) core[k][static_cast<std::size_t>(col_index[c])] = v;
    for (auto& f : smith_normal_form(core).factors) factors.push_back(std::move(f));
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

// ---------------------------------------------------------------------------

ComplexReport verify_complex(const IntegerComplex& C) {
  ComplexReport report;
  const int top = C.top_degree();
  if (C.boundary.size() != C.basis_sizes.size()) {
    report.passed = false;
    report.failures.push_back("boundary list length does not match degree count");
    return report;
  }
  for (int n = 1; n <= top; ++n) {
    const SparseMatrix& d = C.boundary[static_cast<std::size_t>(n)];
    if (d.cols != C.basis_sizes[static_cast<std::size_t>(n)] || d.rows != C.basis_sizes[static_cast<std::size_t>(n - 1)]) {
      report.passed = false;
      report.failures.push_back("boundary in degree " + std::to_string(n) + " has the wrong shape");
      return report;
    }
  }
  for (int n = 2; n <= top; ++n) {
    const SparseMatrix& hi = C.boundary[static_cast<std::size_t>(n)];
    const SparseMatrix& lo = C.boundary[static_cast<std::size_t>(n - 1)];
    std::vector<std::int64_t> acc(lo.rows, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t j = 0; j < hi.cols; ++j) {
      touched.clear();
      for (const auto& [k, a] : hi.columns[j])
        for (const auto& [i, b] : lo.columns[k]) {
          if (acc[i] == 0) touched.push_back(i);
          acc[i] += a * b;
        }
      for (std::uint32_t i : touched) {
        if (acc[i] != 0 && report.passed) {
          report.passed = false;
          report.failures.push_back("d" + std::to_string(n - 1) + "*d" + std::to_string(n) + " has nonzero entry " +
                                    std::to_string(acc[i]) + " at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
        acc[i] = 0;
      }
      if (!report.passed) return report;
    }
  }
  return report;
}

const DegreeHomology& HomologyResult::at(int degree) const {
  for (const auto& d : degrees)
    if (d.degree == degree) return d;
  throw std::out_of_range("degree " + std::to_string(degree) + " not in homology result");
}

std::vector<std::size_t> HomologyResult::free_ranks() const {
  std::vector<std::size_t> out;
  for (const auto& d : degrees) out.push_back(d.free_rank);
  return out;
}

HomologyResult homology(const IntegerComplex& C, int lo, int hi) {
  const int top = C.top_degree();
  if (lo < 0 || hi > top || lo > hi) throw std::out_of_range("requested degrees outside the stored range");
  if (hi == top && !C.top_complete)
    throw std::out_of_range("homology in degree " + std::to_string(hi) + " needs the next boundary matrix");

  std::vector<std::optional<std::vector<mpz_class>>> cache(static_cast<std::size_t>(top) + 2);
  auto factors = [&](int n) -> const std::vector<mpz_class>& {
    auto& slot = cache[static_cast<std::size_t>(n)];
    if (!slot) {
      if (n <= 0 || n > top) {
        slot.emplace();
      } else {
        slot = invariant_factors(C.boundary[static_cast<std::size_t>(n)]);
      }
    }
    return *slot;
  };

  HomologyResult H;
  H.truncated_at_length = C.max_length;
  for (int n = lo; n <= hi; ++n) {
    const auto& out_f = factors(n);
    const auto& in_f = factors(n + 1);
    DegreeHomology d;
    d.degree = n;
    d.free_rank = C.basis_sizes[static_cast<std::size_t>(n)] - out_f.size() - in_f.size();
    for (const auto& f : in_f)
      if (f > 1) d.torsion.push_back(f);
    H.degrees.push_back(std::move(d));
  }
  return H;
}

std::string render_table(const HomologyResult& H) {
  std::ostringstream os;
  os << "degree  free_rank  torsion\n";
  for (const auto& d : H.degrees) {
    os << d.degree << "\t" << d.free_rank << "\t";
    if (d.torsion.empty()) os << "-";
    for (std::size_t k = 0; k < d.torsion.size(); ++k) os << (k ? " " : "") << "Z/" << d.torsion[k];
    os << "\n";
  }
  if (H.truncated_at_length) os << "(truncated at word length " << *H.truncated_at_length << ")\n";
  return os.str();
}

}  // namespace cobar
