#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>

#include "cantorval/words.hpp"

namespace cantorval {

using Rational = mpq_class;

// The real quadratic field Q(lambda) where lambda = (t + sqrt(t^2-4d))/2 is
// the larger root of x^2 - t x + d (the characteristic polynomial of a
// substitution matrix with trace t and determinant d).
struct QuadField {
  std::int64_t t = 0;
  std::int64_t d = 0;

  std::int64_t discriminant() const { return t * t - 4 * d; }

  friend bool operator==(const QuadField&, const QuadField&) = default;
};

// Larger characteristic root of m; DegenerateField if the root is rational.
QuadField make_field(const IntMatrix2& m);

// Exact element a + b*lambda of Q(lambda).
struct QuadNum {
  Rational a = 0;
  Rational b = 0;
  QuadField field;

  bool is_rational() const { return sgn(b) == 0; }
  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
};

QuadNum make_rational(Rational value, QuadField f);
QuadNum make_lambda(QuadField f);               // 0 + 1*lambda
QuadNum make_num(Rational a, Rational b, QuadField f);

QuadNum operator+(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x);
QuadNum operator*(const QuadNum& x, const QuadNum& y);
QuadNum operator/(const QuadNum& x, const QuadNum& y);
QuadNum operator*(const QuadNum& x, const Rational& q);
QuadNum operator+(const QuadNum& x, const Rational& q);
QuadNum operator-(const QuadNum& x, const Rational& q);
bool operator==(const QuadNum& x, const QuadNum& y);

// Galois conjugation: (a + b*lambda)* = (a + b*t) - b*lambda.  An involutive
// ring automorphism of Q(lambda) fixing the rationals.
QuadNum star(const QuadNum& x);

// Exact sign in {-1, 0, +1}, decided by rational arithmetic only.
int sign(const QuadNum& x);

inline int cmp(const QuadNum& x, const QuadNum& y) { return sign(x - y); }
inline bool operator<(const QuadNum& x, const QuadNum& y) { return cmp(x, y) < 0; }
inline bool operator<=(const QuadNum& x, const QuadNum& y) { return cmp(x, y) <= 0; }
inline bool operator>(const QuadNum& x, const QuadNum& y) { return cmp(x, y) > 0; }
inline bool operator>=(const QuadNum& x, const QuadNum& y) { return cmp(x, y) >= 0; }

QuadNum abs(const QuadNum& x);
const QuadNum& min(const QuadNum& x, const QuadNum& y);
const QuadNum& max(const QuadNum& x, const QuadNum& y);

// Rational approximation with |result - x| < eps, returned as a double.
double to_real(const QuadNum& x, double eps = 1e-15);

// Exact floor as an integer.
mpz_class floor_int(const QuadNum& x);

// lambda > 1, |lambda*| < 1 and |d| = 1, all checked exactly.
bool is_pisot_unit(QuadField f);

// Perron-Frobenius data of a primitive matrix: lambda, its conjugate, the
// left eigenvector normalised so that its minimum entry is 1 (the natural
// tile lengths) and an unnormalised right eigenvector (the frequency
// direction).
struct PFData {
  QuadField field;
  QuadNum lambda;
  QuadNum lambda_star;
  std::array<QuadNum, 2> left;
  std::array<QuadNum, 2> right;
};

PFData pf_data(const IntMatrix2& m);

std::string rational_to_string(const Rational& q);
// "(a, b) ~ d.ddddddddd" with a 10-significant-digit decimal rendering.
std::string to_string(const QuadNum& x);
// Decimal rendering alone, 10 significant digits.
std::string to_decimal_string(const QuadNum& x);

}  // namespace cantorval
