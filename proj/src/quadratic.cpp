#include "cantorval/quadratic.hpp"

#include <cmath>
#include <cstdio>

namespace cantorval {

namespace {

void check_same_field(const QuadNum& x, const QuadNum& y) {
  if (!(x.field == y.field))
    fail(ErrorCode::FieldMismatch,
         "operands live in different quadratic fields");
}

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  mpz_class z(static_cast<long>(n));
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

// Lower bound of sqrt(D) to within 2^-k: floor(sqrt(D*4^k)) / 2^k.
Rational sqrt_lower_bound(std::int64_t disc, unsigned k) {
  mpz_class scaled = mpz_class(static_cast<long>(disc)) << (2 * k);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Rational r(root);
  r /= mpz_class(1) << k;
  return r;
}

// x written as p + q*sqrt(D) with rational p, q.
struct SurdForm {
  Rational p;
  Rational q;
  std::int64_t disc;
};

SurdForm surd_form(const QuadNum& x) {
  Rational p = x.a + x.b * x.field.t / 2;
  Rational q = x.b / 2;
  return SurdForm{p, q, x.field.discriminant()};
}

}  // namespace

QuadField make_field(const IntMatrix2& m) {
  if (!is_primitive(m))
    fail(ErrorCode::NotPrimitive, "matrix is not primitive");
  QuadField f{m.trace(), m.det()};
  const std::int64_t disc = f.discriminant();
  if (disc <= 0 || is_perfect_square(disc))
    fail(ErrorCode::DegenerateField,
         "characteristic root is rational (discriminant " +
             std::to_string(disc) + ")");
  return f;
}

QuadNum make_rational(Rational value, QuadField f) {
  return QuadNum{std::move(value), 0, f};
}

QuadNum make_lambda(QuadField f) { return QuadNum{0, 1, f}; }

QuadNum make_num(Rational a, Rational b, QuadField f) {
  return QuadNum{std::move(a), std::move(b), f};
}

QuadNum operator+(const QuadNum& x, const QuadNum& y) {
  check_same_field(x, y);
  return QuadNum{x.a + y.a, x.b + y.b, x.field};
}

QuadNum operator-(const QuadNum& x, const QuadNum& y) {
  check_same_field(x, y);
  return QuadNum{x.a - y.a, x.b - y.b, x.field};
}

QuadNum operator-(const QuadNum& x) { return QuadNum{-x.a, -x.b, x.field}; }

QuadNum operator*(const QuadNum& x, const QuadNum& y) {
  check_same_field(x, y);
  // lambda^2 = t*lambda - d
  const Rational bb = x.b * y.b;
  return QuadNum{x.a * y.a - bb * x.field.d,
                 x.a * y.b + x.b * y.a + bb * x.field.t, x.field};
}

QuadNum operator/(const QuadNum& x, const QuadNum& y) {
  check_same_field(x, y);
  if (y.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  // 1/y = y* / N(y) with the rational norm N(y) = y * y*.
  const Rational norm = y.a * y.a + y.a * y.b * y.field.t +
                        y.b * y.b * y.field.d;
  const QuadNum conj = star(y);
  QuadNum num = x * conj;
  num.a /= norm;
  num.b /= norm;
  return num;
}

QuadNum operator*(const QuadNum& x, const Rational& q) {
  return QuadNum{x.a * q, x.b * q, x.field};
}

QuadNum operator+(const QuadNum& x, const Rational& q) {
  return QuadNum{x.a + q, x.b, x.field};
}

QuadNum operator-(const QuadNum& x, const Rational& q) {
  return QuadNum{x.a - q, x.b, x.field};
}

bool operator==(const QuadNum& x, const QuadNum& y) {
  return x.field == y.field && x.a == y.a && x.b == y.b;
}

QuadNum star(const QuadNum& x) {
  return QuadNum{x.a + x.b * x.field.t, -x.b, x.field};
}

int sign(const QuadNum& x) {
  const SurdForm s = surd_form(x);
  const int sp = sgn(s.p);
  const int sq = sgn(s.q);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 against q^2 * D.
  const int c = cmp(s.p * s.p, s.q * s.q * s.disc);
  if (c == 0)
    fail(ErrorCode::Internal, "sign: discriminant is a perfect square");
  return sp > 0 ? c : -c;
}

QuadNum abs(const QuadNum& x) { return sign(x) < 0 ? -x : x; }

const QuadNum& min(const QuadNum& x, const QuadNum& y) {
  return cmp(x, y) <= 0 ? x : y;
}

const QuadNum& max(const QuadNum& x, const QuadNum& y) {
  return cmp(x, y) >= 0 ? x : y;
}

double to_real(const QuadNum& x, double eps) {
  const SurdForm s = surd_form(x);
  if (sgn(s.q) == 0) return s.p.get_d();
  // |q| * 2^-k <= eps/2
  const double qa = std::abs(s.q.get_d());
  int k = 4;
  while (k < 256 && qa * std::ldexp(1.0, -k) > eps / 2) ++k;
  const Rational lo = sqrt_lower_bound(s.disc, static_cast<unsigned>(k));
  const Rational mid = lo + Rational(1, 2) / (mpz_class(1) << k);
  Rational approx = s.p + s.q * mid;
  return approx.get_d();
}

mpz_class floor_int(const QuadNum& x) {
  mpz_class f(std::floor(to_real(x, 0.25)));
  auto below = [&](const mpz_class& k) {
    return sign(x - Rational(k)) < 0;  // x < k
  };
  while (below(f)) f -= 1;
  while (!below(f + 1)) f += 1;
  return f;
}

bool is_pisot_unit(QuadField f) {
  if (f.d != 1 && f.d != -1) return false;
  const QuadNum lambda = make_lambda(f);
  if (sign(lambda - Rational(1)) <= 0) return false;
  const QuadNum conj = star(lambda);
  return sign(conj + Rational(1)) > 0 && sign(conj - Rational(1)) < 0;
}

PFData pf_data(const IntMatrix2& m) {
  const QuadField f = make_field(m);
  const QuadNum lambda = make_lambda(f);
  // (lambda - m22, m12) is a left eigenvector; both entries are positive for
  // a primitive matrix since m12 >= 1 and lambda exceeds both diagonal
  // entries.
  QuadNum la = lambda - Rational(m.m22);
  QuadNum lb = make_rational(Rational(m.m12), f);
  const QuadNum& shortest = cmp(la, lb) <= 0 ? la : lb;
  QuadNum norm_a = la / shortest;
  QuadNum norm_b = lb / shortest;
  QuadNum ra = make_rational(Rational(m.m12), f);
  QuadNum rb = lambda - Rational(m.m11);
  return PFData{f, lambda, star(lambda), {norm_a, norm_b}, {ra, rb}};
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

std::string to_decimal_string(const QuadNum& x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", to_real(x, 1e-15));
  return buf;
}

std::string to_string(const QuadNum& x) {
  return "(" + rational_to_string(x.a) + ", " + rational_to_string(x.b) +
         ") ~ " + to_decimal_string(x);
}

}  // namespace cantorval
