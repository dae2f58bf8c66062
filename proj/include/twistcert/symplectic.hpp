#pragma once

// Exact homology action of Dehn-twist words on H_1 of a closed genus-g
// surface. Basis convention: a_1, b_1, ..., a_g, b_g with <a_i, b_i> = +1.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "twistcert/int_matrix.hpp"

namespace twistcert {

class H1Vector {
 public:
  H1Vector() = default;
  explicit H1Vector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  static H1Vector zero(std::size_t dimension) { return H1Vector(std::vector<Integer>(dimension)); }
  static H1Vector from_ints(const std::vector<long long>& coords);

  std::size_t dimension() const { return coords_.size(); }
  const std::vector<Integer>& coords() const { return coords_; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  bool is_zero() const;

  std::string to_string() const;

  friend H1Vector operator+(const H1Vector& x, const H1Vector& y);
  friend H1Vector operator-(const H1Vector& x, const H1Vector& y);
  friend H1Vector operator-(const H1Vector& x);
  friend H1Vector operator*(const Integer& k, const H1Vector& x);
  friend bool operator==(const H1Vector& x, const H1Vector& y) = default;

 private:
  std::vector<Integer> coords_;
};

class SymplecticSpace {
 public:
  explicit SymplecticSpace(int genus);

  int genus() const { return genus_; }
  std::size_t dimension() const { return 2 * static_cast<std::size_t>(genus_); }

  // Block diagonal with blocks [[0, 1], [-1, 0]].
  IntMatrix pairing_matrix() const;

  H1Vector zero() const { return H1Vector::zero(dimension()); }
  H1Vector a(int i) const;  // 1-based
  H1Vector b(int i) const;  // 1-based

  void require(const H1Vector& x) const;
  void require(const IntMatrix& m) const;

  friend bool operator==(const SymplecticSpace&, const SymplecticSpace&) = default;

 private:
  int genus_;
};

struct TwistLetter {
  std::string curve;
  long long exponent = 1;

  friend bool operator==(const TwistLetter&, const TwistLetter&) = default;
};

// Letters compose like functions: the leftmost letter acts last.
class TwistWord {
 public:
  TwistWord() = default;
  explicit TwistWord(std::vector<TwistLetter> letters);

  // Whitespace separated letters "name" or "name^exp", e.g. "c1 c2^2 d1^-1".
  static TwistWord parse(std::string_view text);

  void append(std::string curve, long long exponent);

  const std::vector<TwistLetter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  TwistWord inverse() const;
  std::string to_string() const;

  friend bool operator==(const TwistWord&, const TwistWord&) = default;

 private:
  std::vector<TwistLetter> letters_;
};

using ClassTable = std::map<std::string, H1Vector, std::less<>>;

Integer intersection_pairing(const H1Vector& x, const H1Vector& y, const SymplecticSpace& space);

// Matrix of x -> x + power * <c, x> * c.
IntMatrix transvection_matrix(const H1Vector& c, const Integer& power, const SymplecticSpace& space);

IntMatrix word_action(const TwistWord& word, const ClassTable& classes, const SymplecticSpace& space);

bool is_torelli(const IntMatrix& m);
bool is_level_trivial(const IntMatrix& m, const Integer& modulus);
bool is_symplectic(const IntMatrix& m, const SymplecticSpace& space);

// M^{-1} = J^{-1} M^T J for symplectic M; the caller guarantees M is symplectic.
IntMatrix symplectic_inverse(const IntMatrix& m, const SymplecticSpace& space);

}  // namespace twistcert
