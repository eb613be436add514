#include "skl/clifford.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "skl/errors.hpp"

namespace skl {

namespace {

void check_dimension(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw InputError("Clifford dimension must be in [1, " + std::to_string(kMaxDimension) +
                     "], got " + std::to_string(n));
  }
}

void check_same(const Multivector& a, const Multivector& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch("multivector dimensions differ: " + std::to_string(a.dimension()) +
                            " vs " + std::to_string(b.dimension()));
  }
}

}  // namespace

Multivector::Multivector(int n) : n_(n) {
  check_dimension(n);
  coeffs_.assign(std::size_t{1} << n, 0.0);
}

Multivector::Multivector(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  check_dimension(n);
  if (coeffs_.size() != (std::size_t{1} << n)) {
    throw DimensionMismatch("Cl_" + std::to_string(n) + " needs " +
                            std::to_string(std::size_t{1} << n) + " coefficients, got " +
                            std::to_string(coeffs_.size()));
  }
}

Multivector Multivector::scalar(int n, double s) { return blade(n, 0u, s); }

Multivector Multivector::basis(int n, int j) {
  if (j < 1 || j > n) throw InputError("generator index out of range");
  return blade(n, 1u << (j - 1));
}

Multivector Multivector::blade(int n, unsigned mask, double coefficient) {
  Multivector m(n);
  if (mask >= m.size()) throw InputError("blade mask out of range");
  m.coeffs_[mask] = coefficient;
  return m;
}

double Multivector::norm_squared() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return s;
}

double Multivector::norm() const { return std::sqrt(norm_squared()); }

bool Multivector::is_pure_grade(int r) const {
  for (unsigned mask = 0; mask < coeffs_.size(); ++mask) {
    if (blade_grade(mask) != r && coeffs_[mask] != 0.0) return false;
  }
  return true;
}

Multivector Multivector::grade_part(int r) const {
  Multivector out(n_);
  for (unsigned mask = 0; mask < coeffs_.size(); ++mask) {
    if (blade_grade(mask) == r) out.coeffs_[mask] = coeffs_[mask];
  }
  return out;
}

bool Multivector::is_zero() const {
  for (double c : coeffs_) {
    if (c != 0.0) return false;
  }
  return true;
}

Multivector Multivector::operator-() const { return -1.0 * *this; }

Multivector operator+(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  Multivector out = a;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
  return out;
}

Multivector operator-(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  Multivector out = a;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] -= b.coeffs_[i];
  return out;
}

Multivector operator*(double s, const Multivector& a) {
  Multivector out = a;
  for (double& c : out.coeffs_) c *= s;
  return out;
}

int blade_grade(unsigned mask) { return std::popcount(mask); }

double blade_product_sign(unsigned a, unsigned b) {
  // Swaps needed to move each generator of b left past the larger
  // generators of a, then one -1 per repeated generator (e_j^2 = -1).
  int swaps = 0;
  for (unsigned rest = a >> 1; rest != 0; rest >>= 1) swaps += std::popcount(rest & b);
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1.0 : 1.0;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  std::vector<double> out(a.size(), 0.0);
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  for (unsigned i = 0; i < ac.size(); ++i) {
    if (ac[i] == 0.0) continue;
    for (unsigned j = 0; j < bc.size(); ++j) {
      if (bc[j] == 0.0) continue;
      out[i ^ j] += blade_product_sign(i, j) * ac[i] * bc[j];
    }
  }
  return Multivector(a.dimension(), std::move(out));
}

Multivector conjugate(const Multivector& a) {
  std::vector<double> out(a.coeffs().begin(), a.coeffs().end());
  for (unsigned mask = 0; mask < out.size(); ++mask) {
    int r = blade_grade(mask);
    if (((r * (r + 1)) / 2) % 2 == 1) out[mask] = -out[mask];
  }
  return Multivector(a.dimension(), std::move(out));
}

Multivector vector_from_point(std::span<const double> x) {
  Multivector m(static_cast<int>(x.size()));
  std::vector<double> c(m.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) c[std::size_t{1} << j] = x[j];
  return Multivector(static_cast<int>(x.size()), std::move(c));
}

}  // namespace skl
