#include "rhokit/poly.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace rhokit {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(Rational c) { return Polynomial({std::move(c)}); }

Polynomial Polynomial::monomial(Rational c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = std::move(c);
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int Polynomial::sign_at(const Rational& x) const {
  Rational v = (*this)(x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> c = coeffs_;
  Rational lead = leading();
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

bool Polynomial::is_integral() const {
  for (const auto& c : coeffs_)
    if (boost::multiprecision::denominator(c) != 1) return false;
  return true;
}

bool Polynomial::is_palindromic() const {
  for (std::size_t i = 0, j = coeffs_.size(); i < j; ++i, --j)
    if (coeffs_[i] != coeffs_[j - 1]) return false;
  return true;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a) {
  std::vector<Rational> c = a.coeffs_;
  for (auto& x : c) x = -x;
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational q = rem[static_cast<std::size_t>(k + db)] / b.leading();
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    if (i == 0 || mag != 1) os << to_string(mag);
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

unsigned totient(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

Polynomial cyclotomic(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<unsigned, Polynomial> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // t^n - 1 divided by all Phi_d, d | n, d < n
  Polynomial p = Polynomial::monomial(1, n) - Polynomial::constant(1);
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = Polynomial::divmod(p, cyclotomic(d)).first;
  std::lock_guard lock(mu);
  cache.emplace(n, p);
  return p;
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.monic();
  Polynomial g = Polynomial::gcd(p, p.derivative());
  return Polynomial::divmod(p, g).first.monic();
}

namespace {

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = Polynomial::divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& q : chain) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Number of distinct roots in (a, b] for a square-free p.
int roots_in(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

void isolate(const Polynomial& p, const std::vector<Polynomial>& chain, const Rational& a, const Rational& b,
             std::vector<RootInterval>& out) {
  // invariant: p(a) != 0, p(b) != 0
  int n = roots_in(chain, a, b);
  if (n == 0) return;
  if (n == 1) {
    out.push_back({a, b});
    return;
  }
  Rational mid = (a + b) / 2;
  if (p.sign_at(mid) == 0) {
    // nudge off the root so both halves have nonzero endpoints
    Rational h = (b - a) / 4;
    while (true) {
      Rational l = mid - h, r = mid + h;
      if (p.sign_at(l) != 0 && p.sign_at(r) != 0 && roots_in(chain, l, r) == 1) {
        isolate(p, chain, a, l, out);
        out.push_back({mid, mid});
        isolate(p, chain, r, b, out);
        return;
      }
      h /= 2;
    }
  }
  isolate(p, chain, a, mid, out);
  isolate(p, chain, mid, b, out);
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::invalid_argument("cannot isolate roots of the zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() == 0 || !(lo < hi)) return out;
  Polynomial sf = squarefree_part(p);
  auto chain = sturm_chain(sf);

  // Cauchy bound: every root lies strictly inside (-bound, bound)
  Rational bound = 0;
  for (int i = 0; i < sf.degree(); ++i) bound = std::max(bound, abs(sf.coeff(static_cast<std::size_t>(i))));
  bound += 1;
  std::vector<RootInterval> all;
  isolate(sf, chain, -bound, bound, all);

  // Split any interval straddling lo or hi at that endpoint.
  auto clip = [&](RootInterval iv, const Rational& cut) -> std::optional<RootInterval> {
    if (iv.exact() || !(iv.lo < cut && cut < iv.hi)) return iv;
    int sc = sf.sign_at(cut);
    if (sc == 0) return RootInterval{cut, cut};
    if (sc == sf.sign_at(iv.lo)) return RootInterval{cut, iv.hi};
    return RootInterval{iv.lo, cut};
  };
  for (auto iv : all) {
    auto a = clip(iv, lo);
    auto b = clip(*a, hi);
    const RootInterval& r = *b;
    if (r.exact()) {
      if (lo < r.lo && r.lo < hi) out.push_back(r);
    } else if (lo <= r.lo && r.hi <= hi) {
      out.push_back(r);
    }
  }
  return out;
}

RootInterval refine_root(const Polynomial& squarefree, RootInterval iv, const Rational& max_width) {
  if (iv.exact()) return iv;
  int sl = squarefree.sign_at(iv.lo);
  while (iv.width() > max_width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int sm = squarefree.sign_at(mid);
    if (sm == 0) return {mid, mid};
    if (sm == sl) iv.lo = mid;
    else iv.hi = mid;
  }
  return iv;
}

}  // namespace rhokit
