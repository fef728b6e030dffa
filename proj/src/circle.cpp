#include "circle.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>

namespace rhokit::detail {

namespace {

using Float = boost::multiprecision::cpp_bin_float_50;

constexpr unsigned kBits = 256;

// 110 digits of pi, far beyond 2^-256
const char* const kPiDigits =
    "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679821480865";

// Fixed-point interval: [lo, hi] * 2^-kBits
struct Fixed {
  BigInt lo;
  BigInt hi;
};

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

const BigInt& scale() {
  static const BigInt s = BigInt(1) << kBits;
  return s;
}

Fixed from_rational(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q) * scale();
  const BigInt& den = boost::multiprecision::denominator(q);
  return {floor_div(num, den), ceil_div(num, den)};
}

Rational to_rational(const BigInt& v) { return Rational(v, scale()); }

const Fixed& pi() {
  static const Fixed p = [] {
    std::string digits(kPiDigits);
    BigInt num(digits);
    BigInt den = 1;
    for (std::size_t i = 1; i < digits.size(); ++i) den *= 10;
    Fixed f = from_rational(Rational(num, den));
    f.hi += 2;  // truncation of the decimal expansion
    return f;
  }();
  return p;
}

// Product of two intervals with outward rounding.
Fixed mul(const Fixed& a, const Fixed& b) {
  BigInt c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  BigInt mn = c[0], mx = c[0];
  for (const auto& x : c) {
    if (x < mn) mn = x;
    if (x > mx) mx = x;
  }
  return {floor_div(mn, scale()), ceil_div(mx, scale())};
}

// cos over a nonnegative interval x inside [0, pi]; cos is decreasing there.
Enclosure cos_decreasing(const Fixed& x) {
  auto point_cos = [](const BigInt& xv, bool want_lower) {
    Fixed p{xv, xv};
    Fixed x2 = mul(p, p);
    // magnitude of the current term x^(2k)/(2k)!
    Fixed term{scale(), scale()};
    BigInt sum_lo = scale(), sum_hi = scale();
    constexpr int kTerms = 48;
    for (int k = 1; k <= kTerms; ++k) {
      term = mul(term, x2);
      BigInt d = static_cast<long>((2 * k - 1) * (2 * k));
      term = {floor_div(term.lo, d), ceil_div(term.hi, d)};
      if (k % 2) {
        sum_lo -= term.hi;
        sum_hi -= term.lo;
      } else {
        sum_lo += term.lo;
        sum_hi += term.hi;
      }
    }
    // Lagrange remainder bound x^(2K+2)/(2K+2)!
    Fixed rem = mul(term, x2);
    BigInt d = static_cast<long>((2 * kTerms + 1) * (2 * kTerms + 2));
    BigInt r = ceil_div(rem.hi, d) + 1;
    return want_lower ? to_rational(sum_lo - r) : to_rational(sum_hi + r);
  };
  return {point_cos(x.hi, true), point_cos(x.lo, false)};
}

}  // namespace

Enclosure cos_turns(const Rational& t) {
  if (t < 0 || t > Rational(1, 2)) throw std::domain_error("cos_turns expects t in [0, 1/2]");
  Fixed tf = from_rational(t);
  Fixed two_pi{pi().lo * 2, pi().hi * 2};
  Fixed angle = mul(two_pi, tf);
  if (angle.lo < 0) angle.lo = 0;
  Enclosure e;
  if (angle.hi > pi().lo) {
    // the angle interval may contain pi, where cos attains -1
    e = cos_decreasing(Fixed{angle.lo, angle.lo});
    e.lo = -1;
  } else {
    e = cos_decreasing(angle);
  }
  if (e.lo < -1) e.lo = -1;
  if (e.hi > 1) e.hi = 1;
  return e;
}

std::optional<RootInterval> turns_from_cos(const RootInterval& x) {
  if (x.lo <= -1 || x.hi >= 1) return std::nullopt;
  const Float two_pi = 2 * boost::math::constants::pi<Float>();
  auto to_float = [](const Rational& q) {
    return Float(boost::multiprecision::numerator(q)) / Float(boost::multiprecision::denominator(q));
  };
  Float tl = boost::multiprecision::acos(to_float(x.hi)) / two_pi;
  Float th = boost::multiprecision::acos(to_float(x.lo)) / two_pi;
  Float width = th - tl;
  // dyadic grid a few orders finer than the interval itself
  unsigned bits = 8;
  while (bits < 240 && Float(1) / Float(BigInt(1) << bits) > width / 16) ++bits;
  if (bits < 24) bits = 24;
  const BigInt grid = BigInt(1) << bits;
  Float pad = Float("1e-45");
  for (int attempt = 0; attempt < 64; ++attempt, pad *= 16) {
    BigInt l = static_cast<BigInt>(boost::multiprecision::floor((tl - pad) * Float(grid)));
    BigInt h = static_cast<BigInt>(boost::multiprecision::ceil((th + pad) * Float(grid)));
    Rational a(l, grid), b(h, grid);
    if (a <= 0) a = Rational(1, grid);
    if (b >= Rational(1, 2)) b = Rational(1, 2) - Rational(1, grid);
    if (!(a < b)) continue;
    // cos is decreasing: t* >= a  <=>  cos(2 pi a) >= x*, ensured by lower(cos 2 pi a) >= x.hi
    if (cos_turns(a).lo >= x.hi && cos_turns(b).hi <= x.lo) return RootInterval{a, b};
  }
  return std::nullopt;
}

Polynomial chebyshev_reduce(const Polynomial& d) {
  if (!d.is_palindromic() || d.degree() % 2 != 0)
    throw std::invalid_argument("expected a palindromic polynomial of even degree");
  const int h = d.degree() / 2;
  // T_0 = 1, T_1 = x, T_{k+1} = 2x T_k - T_{k-1}
  std::vector<Polynomial> cheb{Polynomial::constant(1), Polynomial::monomial(1, 1)};
  for (int k = 2; k <= h; ++k)
    cheb.push_back(Polynomial::monomial(2, 1) * cheb[static_cast<std::size_t>(k - 1)] -
                   cheb[static_cast<std::size_t>(k - 2)]);
  Polynomial p = Polynomial::constant(d.coeff(static_cast<std::size_t>(h)));
  for (int k = 1; k <= h; ++k)
    p = p + Polynomial::constant(2 * d.coeff(static_cast<std::size_t>(h + k))) * cheb[static_cast<std::size_t>(k)];
  return p;
}

Rational tangent_sample(const Rational& a, const Rational& b, unsigned attempt) {
  if (!(a < b) || a < 0 || b > Rational(1, 2)) throw std::invalid_argument("bad arc for tangent sample");
  // turn coordinate of u is atan(u)/pi; cos(2 pi t) = (1-u^2)/(1+u^2) decreasing in u
  auto cos_of = [](const Rational& u) { return (1 - u * u) / (1 + u * u); };
  Enclosure ca = cos_turns(a);
  Enclosure cb = b == Rational(1, 2) ? Enclosure{-1, -1} : cos_turns(b);
  auto inside = [&](const Rational& u) {
    Rational c = cos_of(u);
    return u > 0 && c < ca.lo && c > cb.hi;
  };
  // try the float estimate at a fraction of the arc, then fall back to exact bisection
  const Float pi = boost::math::constants::pi<Float>();
  auto to_float = [](const Rational& q) {
    return Float(boost::multiprecision::numerator(q)) / Float(boost::multiprecision::denominator(q));
  };
  Float frac = Float(1) / 2 + Float(static_cast<int>(attempt % 7) - 3) / 16;
  Float tm = to_float(a) + (to_float(b) - to_float(a)) * frac;
  if (tm < Float(1) / 2) {
    Float u = boost::multiprecision::tan(pi * tm);
    for (unsigned bits = 8; bits <= 240; bits += 8) {
      BigInt g = BigInt(1) << bits;
      Rational cand(static_cast<BigInt>(boost::multiprecision::round(u * Float(g))), g);
      if (inside(cand)) return cand;
    }
  }
  // exact bisection on u in (lo, hi) where cos_of is monotone
  Rational lo = 0, hi = 1;
  while (cos_of(hi) >= cb.hi && hi < BigInt(1) << 200) hi *= 2;
  for (int i = 0; i < 2000; ++i) {
    Rational mid = (lo + hi) / 2;
    if (inside(mid)) return mid;
    if (cos_of(mid) >= ca.lo) lo = mid;
    else hi = mid;
  }
  throw std::runtime_error("arc too narrow to sample");
}

}  // namespace rhokit::detail
