#include "twistcert/surface_complex.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "twistcert/error.hpp"
#include "twistcert/smith.hpp"

namespace twistcert {

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

std::size_t leaving_dart(const Step& s) { return s.forward ? 2 * s.edge : 2 * s.edge + 1; }
std::size_t arriving_dart(const Step& s) { return s.forward ? 2 * s.edge + 1 : 2 * s.edge; }

}  // namespace

SurfaceComplex::SurfaceComplex(std::size_t vertex_count, std::vector<Edge> edges,
                               std::vector<std::vector<Step>> faces)
    : vertices_(vertex_count), edges_(std::move(edges)), faces_(std::move(faces)) {
  for (const auto& e : edges_)
    if (e.tail >= vertices_ || e.head >= vertices_)
      throw Error(ErrorCode::HomologyRankError, "edge endpoint out of range");
  for (const auto& face : faces_) {
    if (face.empty()) throw Error(ErrorCode::HomologyRankError, "empty face");
    for (std::size_t k = 0; k < face.size(); ++k) {
      const Step& s = face[k];
      const Step& t = face[(k + 1) % face.size()];
      if (s.edge >= edges_.size() || t.edge >= edges_.size())
        throw Error(ErrorCode::HomologyRankError, "face uses an unknown edge");
      const std::size_t end = s.forward ? edges_[s.edge].head : edges_[s.edge].tail;
      const std::size_t start = t.forward ? edges_[t.edge].tail : edges_[t.edge].head;
      if (end != start) throw Error(ErrorCode::HomologyRankError, "face boundary is not a closed path");
    }
  }
  build_rotation();
}

void SurfaceComplex::build_rotation() {
  const std::size_t darts = 2 * edges_.size();
  std::vector<std::size_t> sigma(darts, kUnset);
  std::vector<bool> hit(darts, false);
  for (const auto& face : faces_) {
    for (std::size_t k = 0; k < face.size(); ++k) {
      const std::size_t in = arriving_dart(face[k]);
      const std::size_t out = leaving_dart(face[(k + 1) % face.size()]);
      if (sigma[out] != kUnset || hit[in]) return;  // an edge side used twice
      sigma[out] = in;
      hit[in] = true;
    }
  }
  for (std::size_t d = 0; d < darts; ++d)
    if (sigma[d] == kUnset) return;

  // Each vertex link must be a single circle.
  auto vertex_of = [&](std::size_t d) { return d % 2 == 0 ? edges_[d / 2].tail : edges_[d / 2].head; };
  std::vector<std::size_t> cycles(vertices_, 0);
  std::vector<bool> seen(darts, false);
  for (std::size_t d = 0; d < darts; ++d) {
    if (seen[d]) continue;
    ++cycles[vertex_of(d)];
    for (std::size_t x = d; !seen[x]; x = sigma[x]) seen[x] = true;
  }
  for (std::size_t v = 0; v < vertices_; ++v)
    if (cycles[v] != 1) return;
  rotation_ = std::move(sigma);
}

long long SurfaceComplex::euler_characteristic() const {
  return static_cast<long long>(vertices_) - static_cast<long long>(edges_.size()) +
         static_cast<long long>(faces_.size());
}

bool SurfaceComplex::connected() const {
  if (vertices_ == 0) return false;
  std::vector<std::size_t> parent(vertices_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = vertices_;
  for (const auto& e : edges_) {
    const auto a = find(e.tail);
    const auto b = find(e.head);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

IntMatrix SurfaceComplex::boundary1() const {
  IntMatrix d(vertices_, edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    d(edges_[e].head, e) += 1;
    d(edges_[e].tail, e) -= 1;
  }
  return d;
}

IntMatrix SurfaceComplex::boundary2() const {
  IntMatrix d(edges_.size(), faces_.size());
  for (std::size_t f = 0; f < faces_.size(); ++f)
    for (const auto& s : faces_[f]) d(s.edge, f) += s.forward ? 1 : -1;
  return d;
}

Chain SurfaceComplex::chain_of(const std::vector<Step>& path) const {
  Chain c(edges_.size());
  for (const auto& s : path) {
    if (s.edge >= edges_.size()) throw Error(ErrorCode::LiftError, "path uses an unknown edge");
    c[s.edge] += s.forward ? 1 : -1;
  }
  return c;
}

bool SurfaceComplex::is_cycle(const Chain& chain) const {
  if (chain.size() != edges_.size()) return false;
  std::vector<Integer> b(vertices_);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    b[edges_[e].head] += chain[e];
    b[edges_[e].tail] -= chain[e];
  }
  for (const auto& v : b)
    if (!v.is_zero()) return false;
  return true;
}

Integer SurfaceComplex::intersection(const Chain& x, const Chain& y) const {
  if (!is_surface()) throw Error(ErrorCode::HomologyRankError, "complex is not a closed surface");
  if (!is_cycle(x) || !is_cycle(y)) throw Error(ErrorCode::HomologyRankError, "intersection of non-cycles");

  // Darts where y arrives at / leaves each vertex, with multiplicity. Any
  // pairing of arrivals with departures at a vertex gives a push-off of y.
  std::vector<std::vector<std::pair<std::size_t, Integer>>> arrivals(vertices_), departures(vertices_);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (y[e].is_zero()) continue;
    const bool positive = y[e] > 0;
    const Integer count = positive ? y[e] : Integer(-y[e]);
    const std::size_t tail_dart = 2 * e;
    const std::size_t head_dart = 2 * e + 1;
    if (positive) {
      departures[edges_[e].tail].emplace_back(tail_dart, count);
      arrivals[edges_[e].head].emplace_back(head_dart, count);
    } else {
      departures[edges_[e].head].emplace_back(head_dart, count);
      arrivals[edges_[e].tail].emplace_back(tail_dart, count);
    }
  }

  // Weight of each dart for x: a dart leaving the tail of e points along x.
  auto weight = [&](std::size_t d) -> Integer { return d % 2 == 0 ? x[d / 2] : Integer(-x[d / 2]); };

  Integer total = 0;
  for (std::size_t v = 0; v < vertices_; ++v) {
    auto& in = arrivals[v];
    auto& out = departures[v];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < in.size() && j < out.size()) {
      const Integer take = in[i].second < out[j].second ? in[i].second : out[j].second;
      // The left push-off sweeps counterclockwise from the departure dart
      // to the arrival dart, crossing every dart strictly between them.
      Integer sweep = 0;
      for (std::size_t d = rotation_[out[j].first]; d != in[i].first; d = rotation_[d]) sweep += weight(d);
      total += take * sweep;
      in[i].second -= take;
      out[j].second -= take;
      if (in[i].second.is_zero()) ++i;
      if (out[j].second.is_zero()) ++j;
    }
  }
  return total;
}

IntMatrix symplectic_reduction(const IntMatrix& form) {
  const std::size_t n = form.rows();
  if (!form.is_square() || n % 2 != 0)
    throw Error(ErrorCode::HomologyRankError, "intersection form has odd size");

  std::vector<std::vector<Integer>> cols;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Integer> v(n);
    v[c] = 1;
    cols.push_back(std::move(v));
  }
  auto pair = [&](const std::vector<Integer>& u, const std::vector<Integer>& w) {
    Integer s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!w[j].is_zero()) s += u[i] * form(i, j) * w[j];
    }
    return s;
  };
  auto axpy = [&](std::vector<Integer>& w, const Integer& k, const std::vector<Integer>& u) {
    if (k.is_zero()) return;
    for (std::size_t i = 0; i < n; ++i) w[i] += k * u[i];
  };

  IntMatrix b(n, n);
  std::size_t placed = 0;
  while (!cols.empty()) {
    std::vector<Integer> e = cols.front();
    cols.erase(cols.begin());
    std::vector<Integer> values;
    for (const auto& w : cols) values.push_back(pair(e, w));

    // Euclid on the values by column operations among the rest.
    std::size_t pivot = 0;
    for (;;) {
      std::size_t best = cols.size();
      for (std::size_t k = 0; k < cols.size(); ++k)
        if (!values[k].is_zero() && (best == cols.size() || abs(values[k]) < abs(values[best]))) best = k;
      if (best == cols.size()) throw Error(ErrorCode::HomologyRankError, "intersection form is degenerate");
      bool reduced = true;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (k == best || values[k].is_zero()) continue;
        const Integer q = values[k] / values[best];
        axpy(cols[k], -q, cols[best]);
        values[k] -= q * values[best];
        if (!values[k].is_zero()) reduced = false;
      }
      if (reduced) {
        pivot = best;
        break;
      }
    }
    if (abs(values[pivot]) != 1) throw Error(ErrorCode::HomologyRankError, "intersection form is not unimodular");
    std::vector<Integer> f = cols[pivot];
    if (values[pivot] < 0)
      for (auto& c : f) c = -c;
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pivot));

    for (auto& w : cols) {
      const Integer wf = pair(w, f);
      const Integer we = pair(w, e);
      axpy(w, -wf, e);
      axpy(w, we, f);
    }
    for (std::size_t i = 0; i < n; ++i) {
      b(i, placed) = e[i];
      b(i, placed + 1) = f[i];
    }
    placed += 2;
  }
  return b;
}

SurfaceHomology SurfaceHomology::compute(const SurfaceComplex& complex) {
  if (!complex.is_surface()) throw Error(ErrorCode::HomologyRankError, "complex is not a closed surface");
  if (!complex.connected()) throw Error(ErrorCode::HomologyRankError, "complex is not connected");

  SurfaceHomology h;
  h.complex_ = std::make_shared<const SurfaceComplex>(complex);
  const std::size_t edges = complex.edge_count();

  const SmithForm s1 = smith_normal_form(complex.boundary1());
  h.d1_rank_ = s1.rank;
  h.q_inv_ = s1.q_inv;
  const std::size_t kernel = edges - s1.rank;

  const IntMatrix moved = s1.q_inv * complex.boundary2();
  IntMatrix c(kernel, complex.face_count());
  for (std::size_t i = 0; i < kernel; ++i)
    for (std::size_t j = 0; j < complex.face_count(); ++j) c(i, j) = moved(s1.rank + i, j);
  for (std::size_t i = 0; i < s1.rank; ++i)
    for (std::size_t j = 0; j < complex.face_count(); ++j)
      if (!moved(i, j).is_zero()) throw Error(ErrorCode::HomologyRankError, "d1 * d2 is not zero");

  const SmithForm s2 = smith_normal_form(c);
  for (std::size_t i = 0; i < s2.rank; ++i)
    if (s2.d(i, i) != 1)
      throw Error(ErrorCode::HomologyRankError, "torsion " + s2.d(i, i).str() + " in first homology");
  h.d2_rank_ = s2.rank;
  h.p2_ = s2.p;

  const std::size_t rank = kernel - s2.rank;
  const long long expected = 2 - complex.euler_characteristic();
  if (rank % 2 != 0 || static_cast<long long>(rank) != expected)
    throw Error(ErrorCode::HomologyRankError,
                "rank " + std::to_string(rank) + " but 2 - chi = " + std::to_string(expected));
  if (rank == 0) throw Error(ErrorCode::HomologyRankError, "sphere has no first homology");

  // Free generators: kernel basis Q[:, r1:] times columns r2.. of P2^{-1}.
  for (std::size_t g = 0; g < rank; ++g) {
    Chain z(edges);
    for (std::size_t k = 0; k < kernel; ++k) {
      const Integer& coeff = s2.p_inv(k, s2.rank + g);
      if (coeff.is_zero()) continue;
      for (std::size_t e = 0; e < edges; ++e) z[e] += coeff * s1.q(e, s1.rank + k);
    }
    h.basis_cycles_.push_back(std::move(z));
  }

  h.raw_form_ = IntMatrix(rank, rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j) {
      const Integer v = complex.intersection(h.basis_cycles_[i], h.basis_cycles_[j]);
      h.raw_form_(i, j) = v;
      h.raw_form_(j, i) = -v;
    }
  for (std::size_t i = 0; i < rank; ++i)
    if (!complex.intersection(h.basis_cycles_[i], h.basis_cycles_[i]).is_zero())
      throw Error(ErrorCode::HomologyRankError, "self-intersection of a cycle is nonzero");
  if (h.raw_form_.determinant() != 1)
    throw Error(ErrorCode::HomologyRankError, "intersection form is not unimodular");

  h.change_ = symplectic_reduction(h.raw_form_);
  for (std::size_t k = 0; k < rank; ++k) {
    Chain z(edges);
    for (std::size_t i = 0; i < rank; ++i) {
      const Integer& coeff = h.change_(i, k);
      if (coeff.is_zero()) continue;
      for (std::size_t e = 0; e < edges; ++e) z[e] += coeff * h.basis_cycles_[i][e];
    }
    h.symplectic_cycles_.push_back(std::move(z));
  }
  return h;
}

H1Vector SurfaceHomology::class_of(const Chain& cycle) const {
  if (!complex_->is_cycle(cycle)) throw Error(ErrorCode::HomologyRankError, "chain is not a cycle");
  const std::vector<Integer> moved = q_inv_.apply(cycle);
  std::vector<Integer> kernel(moved.begin() + static_cast<std::ptrdiff_t>(d1_rank_), moved.end());
  const std::vector<Integer> reduced = p2_.apply(kernel);
  std::vector<Integer> raw(reduced.begin() + static_cast<std::ptrdiff_t>(d2_rank_), reduced.end());
  // B^{-1} = -J B^T Omega for B^T Omega B = J.
  const IntMatrix j = space().pairing_matrix();
  const IntMatrix inverse = IntMatrix(j.rows(), j.cols()) - j * change_.transpose() * raw_form_;
  return H1Vector(inverse.apply(raw));
}

}  // namespace twistcert
