#include "twistcert/symplectic.hpp"

#include <charconv>
#include <sstream>

#include "twistcert/error.hpp"

namespace twistcert {

namespace {

void require_same_dimension(const H1Vector& x, const H1Vector& y) {
  if (x.dimension() != y.dimension()) {
    throw Error(ErrorCode::InvalidDimension, "vectors of dimension " + std::to_string(x.dimension()) +
                                                 " and " + std::to_string(y.dimension()));
  }
}

// Row vector r with r_j = <c, e_j>.
std::vector<Integer> pairing_row(const H1Vector& c) {
  const std::size_t d = c.dimension();
  std::vector<Integer> row(d);
  for (std::size_t i = 0; i + 1 < d; i += 2) {
    // <c, a_k> = -c_{b_k}, <c, b_k> = c_{a_k}
    row[i] = -c[i + 1];
    row[i + 1] = c[i];
  }
  return row;
}

// m <- m + k * u * r^T
void add_rank_one(IntMatrix& m, const Integer& k, const std::vector<Integer>& u, const std::vector<Integer>& r) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (u[i].is_zero()) continue;
    const Integer ku = k * u[i];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!r[j].is_zero()) m(i, j) += ku * r[j];
    }
  }
}

}  // namespace

H1Vector H1Vector::from_ints(const std::vector<long long>& coords) {
  std::vector<Integer> v(coords.begin(), coords.end());
  return H1Vector(std::move(v));
}

bool H1Vector::is_zero() const {
  for (const auto& x : coords_)
    if (!x.is_zero()) return false;
  return true;
}

std::string H1Vector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i];
  os << ')';
  return os.str();
}

H1Vector operator+(const H1Vector& x, const H1Vector& y) {
  require_same_dimension(x, y);
  H1Vector out = x;
  for (std::size_t i = 0; i < out.dimension(); ++i) out[i] += y[i];
  return out;
}

H1Vector operator-(const H1Vector& x, const H1Vector& y) {
  require_same_dimension(x, y);
  H1Vector out = x;
  for (std::size_t i = 0; i < out.dimension(); ++i) out[i] -= y[i];
  return out;
}

H1Vector operator-(const H1Vector& x) {
  H1Vector out = x;
  for (std::size_t i = 0; i < out.dimension(); ++i) out[i] = -out[i];
  return out;
}

H1Vector operator*(const Integer& k, const H1Vector& x) {
  H1Vector out = x;
  for (std::size_t i = 0; i < out.dimension(); ++i) out[i] *= k;
  return out;
}

SymplecticSpace::SymplecticSpace(int genus) : genus_(genus) {
  if (genus < 1) throw Error(ErrorCode::InvalidDimension, "genus must be positive, got " + std::to_string(genus));
}

IntMatrix SymplecticSpace::pairing_matrix() const {
  IntMatrix j(dimension(), dimension());
  for (std::size_t i = 0; i < dimension(); i += 2) {
    j(i, i + 1) = 1;
    j(i + 1, i) = -1;
  }
  return j;
}

H1Vector SymplecticSpace::a(int i) const {
  if (i < 1 || i > genus_) throw Error(ErrorCode::InvalidDimension, "basis index a_" + std::to_string(i));
  H1Vector v = zero();
  v[2 * static_cast<std::size_t>(i - 1)] = 1;
  return v;
}

H1Vector SymplecticSpace::b(int i) const {
  if (i < 1 || i > genus_) throw Error(ErrorCode::InvalidDimension, "basis index b_" + std::to_string(i));
  H1Vector v = zero();
  v[2 * static_cast<std::size_t>(i - 1) + 1] = 1;
  return v;
}

void SymplecticSpace::require(const H1Vector& x) const {
  if (x.dimension() != dimension()) {
    throw Error(ErrorCode::InvalidDimension, "vector of dimension " + std::to_string(x.dimension()) +
                                                 " in a space of dimension " + std::to_string(dimension()));
  }
}

void SymplecticSpace::require(const IntMatrix& m) const {
  if (m.rows() != dimension() || m.cols() != dimension()) {
    throw Error(ErrorCode::InvalidDimension, "matrix is " + std::to_string(m.rows()) + "x" +
                                                 std::to_string(m.cols()) + ", expected " +
                                                 std::to_string(dimension()) + "x" + std::to_string(dimension()));
  }
}

TwistWord::TwistWord(std::vector<TwistLetter> letters) {
  for (auto& l : letters) append(std::move(l.curve), l.exponent);
}

void TwistWord::append(std::string curve, long long exponent) {
  if (curve.empty()) throw Error(ErrorCode::InvalidWord, "empty curve id");
  if (exponent == 0) throw Error(ErrorCode::InvalidWord, "zero exponent on " + curve);
  letters_.push_back({std::move(curve), exponent});
}

TwistWord TwistWord::parse(std::string_view text) {
  TwistWord word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != '\n') ++end;
    const std::string_view token = text.substr(pos, end - pos);
    pos = end;

    const auto caret = token.find('^');
    const std::string_view name = token.substr(0, caret);
    long long exponent = 1;
    if (caret != std::string_view::npos) {
      std::string_view exp_text = token.substr(caret + 1);
      if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
      const auto* first = exp_text.data();
      const auto* last = exp_text.data() + exp_text.size();
      const auto [ptr, ec] = std::from_chars(first, last, exponent);
      if (exp_text.empty() || ec != std::errc() || ptr != last) {
        throw Error(ErrorCode::ParseError, "bad exponent in letter '" + std::string(token) + "'");
      }
    }
    if (name.empty()) throw Error(ErrorCode::ParseError, "missing curve id in letter '" + std::string(token) + "'");
    word.append(std::string(name), exponent);
  }
  return word;
}

TwistWord TwistWord::inverse() const {
  TwistWord inv;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) inv.append(it->curve, -it->exponent);
  return inv;
}

std::string TwistWord::to_string() const {
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += l.curve;
    if (l.exponent != 1) out += "^" + std::to_string(l.exponent);
  }
  return out;
}

Integer intersection_pairing(const H1Vector& x, const H1Vector& y, const SymplecticSpace& space) {
  space.require(x);
  space.require(y);
  Integer acc = 0;
  for (std::size_t i = 0; i < space.dimension(); i += 2) {
    acc += x[i] * y[i + 1] - x[i + 1] * y[i];
  }
  return acc;
}

IntMatrix transvection_matrix(const H1Vector& c, const Integer& power, const SymplecticSpace& space) {
  space.require(c);
  IntMatrix t = IntMatrix::identity(space.dimension());
  add_rank_one(t, power, c.coords(), pairing_row(c));
  return t;
}

IntMatrix word_action(const TwistWord& word, const ClassTable& classes, const SymplecticSpace& space) {
  IntMatrix m = IntMatrix::identity(space.dimension());
  for (const auto& letter : word.letters()) {
    const auto it = classes.find(letter.curve);
    if (it == classes.end()) throw Error(ErrorCode::UnknownCurve, "no homology class for '" + letter.curve + "'");
    const H1Vector& c = it->second;
    space.require(c);
    // M * (I + p c r^T) = M + p (M c) r^T
    add_rank_one(m, Integer(letter.exponent), m.apply(c.coords()), pairing_row(c));
  }
  return m;
}

bool is_torelli(const IntMatrix& m) { return m.is_identity(); }

bool is_level_trivial(const IntMatrix& m, const Integer& modulus) {
  if (modulus < 2) throw Error(ErrorCode::InvalidModulus, "modulus must be at least 2");
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (floor_mod(m(i, j) - (i == j ? 1 : 0), modulus) != 0) return false;
  return true;
}

bool is_symplectic(const IntMatrix& m, const SymplecticSpace& space) {
  if (m.rows() != space.dimension() || m.cols() != space.dimension()) return false;
  const IntMatrix j = space.pairing_matrix();
  return m.transpose() * j * m == j;
}

IntMatrix symplectic_inverse(const IntMatrix& m, const SymplecticSpace& space) {
  space.require(m);
  const IntMatrix j = space.pairing_matrix();
  IntMatrix neg_j = IntMatrix(j.rows(), j.cols()) - j;
  return neg_j * m.transpose() * j;
}

}  // namespace twistcert
