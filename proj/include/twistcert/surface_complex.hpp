#pragma once

// Two-dimensional cell complexes of closed oriented surfaces and their
// integral first homology with the intersection form.

#include <cstddef>
#include <memory>
#include <vector>

#include "twistcert/int_matrix.hpp"
#include "twistcert/symplectic.hpp"

namespace twistcert {

struct Step {
  std::size_t edge = 0;
  bool forward = true;
  friend bool operator==(const Step&, const Step&) = default;
};

using Chain = std::vector<Integer>;

class SurfaceComplex {
 public:
  struct Edge {
    std::size_t tail = 0;
    std::size_t head = 0;
  };

  SurfaceComplex(std::size_t vertex_count, std::vector<Edge> edges, std::vector<std::vector<Step>> faces);

  std::size_t vertex_count() const { return vertices_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<Step>>& faces() const { return faces_; }

  long long euler_characteristic() const;
  bool connected() const;

  IntMatrix boundary1() const;  // vertices x edges
  IntMatrix boundary2() const;  // edges x faces

  Chain chain_of(const std::vector<Step>& path) const;
  bool is_cycle(const Chain& chain) const;

  // Counterclockwise successor of each dart; dart 2e leaves the tail of e,
  // dart 2e+1 leaves its head. Empty when some vertex link is not a circle.
  const std::vector<std::size_t>& rotation() const { return rotation_; }
  bool is_surface() const { return !rotation_.empty(); }

  // Algebraic intersection of two 1-cycles, computed by pushing y off to
  // its left and counting signed edge crossings with x.
  Integer intersection(const Chain& x, const Chain& y) const;

 private:
  void build_rotation();

  std::size_t vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Step>> faces_;
  std::vector<std::size_t> rotation_;
};

// H_1 = ker d1 / im d2 with a symplectic basis e_1, f_1, ..., e_g, f_g
// (<e_i, f_i> = +1) so classes live in a standard SymplecticSpace.
class SurfaceHomology {
 public:
  // Throws HomologyRankError on torsion, on an odd or unexpected rank, or
  // when the intersection form is not unimodular.
  static SurfaceHomology compute(const SurfaceComplex& complex);

  std::size_t rank() const { return basis_cycles_.size(); }
  int genus() const { return static_cast<int>(rank() / 2); }
  SymplecticSpace space() const { return SymplecticSpace(genus()); }

  // Intersection form on the cycles produced by the Smith reduction.
  const IntMatrix& raw_form() const { return raw_form_; }
  const std::vector<Chain>& raw_cycles() const { return basis_cycles_; }
  // Edge chains of e_1, f_1, ..., e_g, f_g.
  const std::vector<Chain>& symplectic_cycles() const { return symplectic_cycles_; }

  // Coordinates of a 1-cycle in the symplectic basis.
  H1Vector class_of(const Chain& cycle) const;

 private:
  std::shared_ptr<const SurfaceComplex> complex_;
  std::size_t d1_rank_ = 0;
  std::size_t d2_rank_ = 0;
  IntMatrix q_inv_;  // from the reduction of d1
  IntMatrix p2_;     // from the reduction of d2 in kernel coordinates
  IntMatrix raw_form_;
  IntMatrix change_;  // columns: symplectic basis in raw coordinates
  std::vector<Chain> basis_cycles_;
  std::vector<Chain> symplectic_cycles_;
};

// Unimodular column operations turning a skew unimodular form into J.
// Returns B with B^T form B = J.
IntMatrix symplectic_reduction(const IntMatrix& form);

}  // namespace twistcert
