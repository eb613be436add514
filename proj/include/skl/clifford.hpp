#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace skl {

inline constexpr int kMaxDimension = 8;

/// Element of the Clifford algebra Cl_n over Euclidean R^n with e_j^2 = -1.
///
/// Dense storage: one coefficient per basis blade, blade index = bit mask of
/// the generators it contains (bit j-1 set <=> e_j present), stored in
/// ascending mask order. The norm is the Euclidean norm of the coefficients.
class Multivector {
 public:
  /// Zero multivector of Cl_n.
  explicit Multivector(int n);
  Multivector(int n, std::vector<double> coeffs);

  static Multivector scalar(int n, double s);
  /// Generator e_j, 1-based.
  static Multivector basis(int n, int j);
  static Multivector blade(int n, unsigned mask, double coefficient = 1.0);

  int dimension() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }
  double operator[](unsigned mask) const { return coeffs_[mask]; }
  std::span<const double> coeffs() const { return coeffs_; }

  double norm() const;
  double norm_squared() const;

  /// True when every coefficient outside grade r is exactly zero.
  bool is_pure_grade(int r) const;
  Multivector grade_part(int r) const;
  bool is_zero() const;

  Multivector operator-() const;
  friend Multivector operator+(const Multivector& a, const Multivector& b);
  friend Multivector operator-(const Multivector& a, const Multivector& b);
  friend Multivector operator*(double s, const Multivector& a);
  friend Multivector operator*(const Multivector& a, double s) { return s * a; }
  friend Multivector operator/(const Multivector& a, double s) { return (1.0 / s) * a; }
  friend bool operator==(const Multivector& a, const Multivector& b) = default;

 private:
  int n_;
  std::vector<double> coeffs_;
};

int blade_grade(unsigned mask);

/// Sign of e_A * e_B = sign * e_{A xor B} under e_j^2 = -1.
double blade_product_sign(unsigned a, unsigned b);

Multivector geometric_product(const Multivector& a, const Multivector& b);
inline Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

/// Clifford conjugation: a grade-r blade picks up (-1)^(r(r+1)/2).
Multivector conjugate(const Multivector& a);

/// Grade-1 multivector sum_j x_j e_j, with n = x.size().
Multivector vector_from_point(std::span<const double> x);

}  // namespace skl
