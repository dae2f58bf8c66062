#pragma once

#include <cstddef>

#include "twistcert/int_matrix.hpp"

namespace twistcert {

// P * A * Q = D with P, Q unimodular and D diagonal (nonnegative diagonal,
// nonzero entries first). The divisibility chain of the full Smith form is
// not enforced; the cokernel is read off the diagonal either way.
struct SmithForm {
  IntMatrix p;
  IntMatrix p_inv;
  IntMatrix q;
  IntMatrix q_inv;
  IntMatrix d;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

}  // namespace twistcert
