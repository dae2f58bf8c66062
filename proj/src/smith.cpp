#include "twistcert/smith.hpp"

#include <optional>
#include <utility>

namespace twistcert {

namespace {

class Reducer {
 public:
  explicit Reducer(const IntMatrix& a)
      : a_(a),
        p_(IntMatrix::identity(a.rows())),
        p_inv_(IntMatrix::identity(a.rows())),
        q_(IntMatrix::identity(a.cols())),
        q_inv_(IntMatrix::identity(a.cols())) {}

  SmithForm run() {
    const std::size_t m = a_.rows();
    const std::size_t n = a_.cols();
    std::size_t t = 0;
    while (t < m && t < n) {
      const auto pivot = smallest_nonzero(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      bool clean = false;
      while (!clean) {
        clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a_(i, t).is_zero()) continue;
          add_row(i, t, -(a_(i, t) / a_(t, t)));
          if (!a_(i, t).is_zero()) {
            swap_rows(t, i);  // remainder is a smaller pivot
            clean = false;
          }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a_(t, j).is_zero()) continue;
          add_col(j, t, -(a_(t, j) / a_(t, t)));
          if (!a_(t, j).is_zero()) {
            swap_cols(t, j);
            clean = false;
          }
        }
      }
      if (a_(t, t) < 0) negate_row(t);
      ++t;
    }
    return SmithForm{std::move(p_), std::move(p_inv_), std::move(q_), std::move(q_inv_), std::move(a_), t};
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> smallest_nonzero(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j).is_zero()) continue;
        const Integer v = abs(a_(i, j));
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = v;
          if (best_abs == 1) return best;
        }
      }
    return best;
  }

  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    if (k.is_zero()) return;
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (!a_(j, c).is_zero()) a_(i, c) += k * a_(j, c);
    for (std::size_t c = 0; c < p_.cols(); ++c)
      if (!p_(j, c).is_zero()) p_(i, c) += k * p_(j, c);
    for (std::size_t r = 0; r < p_inv_.rows(); ++r)
      if (!p_inv_(r, i).is_zero()) p_inv_(r, j) -= k * p_inv_(r, i);
  }

  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& k) {
    if (k.is_zero()) return;
    for (std::size_t r = 0; r < a_.rows(); ++r)
      if (!a_(r, j).is_zero()) a_(r, i) += k * a_(r, j);
    for (std::size_t r = 0; r < q_.rows(); ++r)
      if (!q_(r, j).is_zero()) q_(r, i) += k * q_(r, j);
    for (std::size_t c = 0; c < q_inv_.cols(); ++c)
      if (!q_inv_(i, c).is_zero()) q_inv_(j, c) -= k * q_inv_(i, c);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    for (std::size_t c = 0; c < p_.cols(); ++c) std::swap(p_(i, c), p_(j, c));
    for (std::size_t r = 0; r < p_inv_.rows(); ++r) std::swap(p_inv_(r, i), p_inv_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    for (std::size_t r = 0; r < q_.rows(); ++r) std::swap(q_(r, i), q_(r, j));
    for (std::size_t c = 0; c < q_inv_.cols(); ++c) std::swap(q_inv_(i, c), q_inv_(j, c));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    for (std::size_t c = 0; c < p_.cols(); ++c) p_(i, c) = -p_(i, c);
    for (std::size_t r = 0; r < p_inv_.rows(); ++r) p_inv_(r, i) = -p_inv_(r, i);
  }

  IntMatrix a_;
  IntMatrix p_;
  IntMatrix p_inv_;
  IntMatrix q_;
  IntMatrix q_inv_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) { return Reducer(a).run(); }

}  // namespace twistcert
