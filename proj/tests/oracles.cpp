#include "oracles.hpp"

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>

namespace rhokit::oracle {

int circle_sign(const Polynomial& p, const Rational& t) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  const int d = p.degree();
  bool palindromic = true;
  for (int k = 0; k <= d; ++k) palindromic = palindromic && p.coeff(k) == p.coeff(d - k);
  const Float two_pi_t = 2 * boost::math::constants::pi<Float>() * Float(t);
  Float acc = 0;
  for (int k = 0; k <= d; ++k) {
    Float angle = two_pi_t * (2 * k - d) / 2;
    acc += Float(p.coeff(k)) * (palindromic ? cos(angle) : sin(angle));
  }
  return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

int numeric_signature(const seifert::SeifertMatrix& v, double t) {
  const auto n = static_cast<Eigen::Index>(v.size());
  if (n == 0) return 0;
  const std::complex<double> w = std::polar(1.0, 2.0 * M_PI * t);
  Eigen::MatrixXcd h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      h(i, j) = (1.0 - w) * double(v(std::size_t(i), std::size_t(j))) +
                (1.0 - std::conj(w)) * double(v(std::size_t(j), std::size_t(i)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  int sig = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double e = es.eigenvalues()(i);
    if (e > 1e-9) ++sig;
    else if (e < -1e-9) --sig;
  }
  return sig;
}

double dense_rho0(const seifert::SeifertMatrix& v, int samples) {
  double sum = 0;
  for (int k = 0; k < samples; ++k) sum += numeric_signature(v, double(k) / samples);
  return sum / samples;
}

namespace {

void add_to(Laurent& p, const std::vector<int>& mono, long c) {
  auto& slot = p[mono];
  slot += c;
  if (slot == 0) p.erase(mono);
}

}  // namespace

std::vector<Laurent> abelian_fox(const std::vector<int>& letters, int rank) {
  std::vector<Laurent> d(static_cast<std::size_t>(rank));
  std::vector<int> prefix(static_cast<std::size_t>(rank), 0);
  for (int l : letters) {
    const auto g = static_cast<std::size_t>(std::abs(l) - 1);
    if (l > 0) {
      add_to(d[g], prefix, 1);
      prefix[g] += 1;
    } else {
      prefix[g] -= 1;
      add_to(d[g], prefix, -1);
    }
  }
  return d;
}

bool in_second_derived(const std::vector<int>& letters, int rank) {
  std::vector<int> sums(static_cast<std::size_t>(rank), 0);
  for (int l : letters) sums[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  for (int s : sums)
    if (s != 0) return false;
  for (const auto& p : abelian_fox(letters, rank))
    if (!p.empty()) return false;
  return true;
}

}  // namespace rhokit::oracle
