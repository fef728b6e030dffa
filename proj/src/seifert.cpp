#include "rhokit/seifert.hpp"

#include "circle.hpp"
#include "rhokit/errors.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

namespace rhokit::seifert {

namespace {

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// det(V - t V^T) at an integer t
BigInt alexander_at(const SeifertMatrix& v, long t) {
  const std::size_t n = v.size();
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = BigInt(v(i, j)) - BigInt(t) * v(j, i);
  return bareiss_determinant(std::move(m));
}

struct CircleAnalysis {
  // exact roots of unity k/n with k/n in (0, 1/2)
  std::vector<std::pair<unsigned, unsigned>> exact_lower;
  Polynomial rest_x;  // square-free, in x = cos(2 pi t)
  std::vector<RootInterval> rest_x_roots;
};

CircleAnalysis analyze(const SeifertMatrix& v) {
  CircleAnalysis a;
  Polynomial rest = alexander_polynomial(v);
  // phi(n) >= sqrt(n / 2), so only n <= 2 d^2 can divide a degree-d polynomial
  const unsigned d = static_cast<unsigned>(std::max(rest.degree(), 0));
  for (unsigned n = 3; n <= 2 * d * d + 6; ++n) {
    if (totient(n) > static_cast<unsigned>(std::max(rest.degree(), 0))) continue;
    Polynomial phi = cyclotomic(n);
    bool divides = false;
    while (rest.degree() >= phi.degree()) {
      auto [q, r] = Polynomial::divmod(rest, phi);
      if (!r.is_zero()) break;
      rest = q;
      divides = true;
    }
    if (divides)
      for (unsigned k = 1; 2 * k < n; ++k)
        if (std::gcd(k, n) == 1) a.exact_lower.emplace_back(k, n);
  }
  std::sort(a.exact_lower.begin(), a.exact_lower.end(), [](const auto& l, const auto& r) {
    return static_cast<unsigned long>(l.first) * r.second < static_cast<unsigned long>(r.first) * l.second;
  });
  a.rest_x = squarefree_part(detail::chebyshev_reduce(rest));
  if (a.rest_x.degree() >= 1) a.rest_x_roots = isolate_real_roots(a.rest_x, -1, 1);
  return a;
}

GaussianRational mul(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Inertia sample_inertia(const SeifertMatrix& v, const GaussianRational& omega) {
  return hermitian_inertia(symmetrized_form(v, omega));
}

// Signature on the arc (a, b), both in [0, 1], sampled strictly inside.
int arc_value(const SeifertMatrix& v, const Rational& a, const Rational& b) {
  const Rational half(1, 2);
  if (a < half && half < b) {
    Inertia in = sample_inertia(v, {-1, 0});
    if (in.zero == 0) return in.signature();
  }
  bool upper = a >= half;
  Rational lo = upper ? Rational(1 - b) : a;
  Rational hi = upper ? Rational(1 - a) : std::min(b, half);
  for (unsigned attempt = 0; attempt < 32; ++attempt) {
    Rational u = detail::tangent_sample(lo, hi, attempt);
    GaussianRational w = circle_point(upper ? Rational(-u) : u);
    Inertia in = sample_inertia(v, w);
    if (in.zero == 0) return in.signature();
  }
  throw std::runtime_error("could not find a nondegenerate sample inside an arc");
}

// "mirror(...)" where the opening parenthesis closes at the end
bool wraps_mirror(const std::string& s) {
  if (s.rfind("mirror(", 0) != 0 || s.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 6; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i + 1 == s.size();
  }
  return false;
}

}  // namespace

SeifertMatrix::SeifertMatrix(std::vector<std::vector<std::int64_t>> rows, std::string name)
    : rows_(std::move(rows)), name_(std::move(name)) {
  const std::size_t n = rows_.size();
  for (const auto& r : rows_)
    if (r.size() != n) throw PreconditionError("Seifert matrix must be square");
  if (n % 2 != 0) throw PreconditionError("Seifert matrix must have even size");
  std::vector<std::vector<BigInt>> skew(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) skew[i][j] = BigInt(rows_[i][j]) - rows_[j][i];
  if (bareiss_determinant(std::move(skew)) != 1)
    throw PreconditionError("Seifert matrix must satisfy det(V - V^T) = 1");
}

SeifertMatrix registry_knot(const std::string& name) {
  if (name == "unknot") return SeifertMatrix({}, "unknot");
  if (name == "trefoil") return SeifertMatrix({{-1, 1}, {0, -1}}, "trefoil");
  if (name == "figure8") return SeifertMatrix({{1, 1}, {0, -1}}, "figure8");
  static const std::regex twist(R"(twist\(\s*(-?\d+)\s*\))");
  std::smatch m;
  if (std::regex_match(name, m, twist)) {
    std::int64_t k = std::stoll(m[1].str());
    return SeifertMatrix({{-1, 1}, {0, k}}, "twist(" + std::to_string(k) + ")");
  }
  throw PreconditionError("unknown knot '" + name + "'");
}

SeifertMatrix genus_one(std::int64_t a, std::int64_t b, std::int64_t c) {
  return SeifertMatrix({{a, b + 1}, {b, c}});
}

std::vector<SeifertMatrix> random_corpus(std::size_t count, std::uint64_t seed, std::size_t max_blocks) {
  std::mt19937_64 rng(seed);
  auto draw = [&] { return static_cast<std::int64_t>(rng() % 11) - 5; };
  std::vector<SeifertMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t blocks = 1 + static_cast<std::size_t>(rng() % std::max<std::size_t>(max_blocks, 1));
    SeifertMatrix v;
    for (std::size_t b = 0; b < blocks; ++b) {
      auto x = draw(), y = draw(), z = draw();
      v = connected_sum(v, genus_one(x, y, z));
    }
    v.set_name("corpus" + std::to_string(i));
    out.push_back(std::move(v));
  }
  return out;
}

bool ComplexMatrix::is_hermitian() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((*this)(i, j) != (*this)(j, i).conj()) return false;
  return true;
}

GaussianRational circle_point(const Rational& u) {
  Rational d = 1 + u * u;
  return {(1 - u * u) / d, 2 * u / d};
}

ComplexMatrix symmetrized_form(const SeifertMatrix& v, const GaussianRational& omega) {
  if (omega.re * omega.re + omega.im * omega.im != 1) throw PreconditionError("omega must lie on the unit circle");
  if (omega.re == 1 && omega.im == 0) throw PreconditionError("omega = 1 gives the zero form");
  const GaussianRational a{1 - omega.re, -omega.im};  // 1 - w
  const GaussianRational b = a.conj();                // 1 - conj w
  ComplexMatrix h;
  h.n = v.size();
  h.data.resize(h.n * h.n);
  for (std::size_t i = 0; i < h.n; ++i)
    for (std::size_t j = 0; j < h.n; ++j) {
      GaussianRational x = mul(a, {Rational(v(i, j)), 0});
      GaussianRational y = mul(b, {Rational(v(j, i)), 0});
      h(i, j) = {x.re + y.re, x.im + y.im};
    }
  return h;
}

Inertia symmetric_inertia(std::vector<Rational> a, std::size_t n) {
  Inertia out;
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * n + j]; };
  while (!active.empty()) {
    auto diag = std::find_if(active.begin(), active.end(), [&](std::size_t i) { return at(i, i) != 0; });
    if (diag != active.end()) {
      const std::size_t p = *diag;
      const Rational piv = at(p, p);
      (piv > 0 ? out.positive : out.negative)++;
      active.erase(diag);
      for (std::size_t i : active) {
        if (at(i, p) == 0) continue;
        Rational f = at(i, p) / piv;
        for (std::size_t j : active) at(i, j) -= f * at(p, j);
      }
      continue;
    }
    std::size_t pi = n, pj = n;
    for (std::size_t i : active) {
      for (std::size_t j : active)
        if (i != j && at(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
      if (pi != n) break;
    }
    if (pi == n) {
      out.zero += static_cast<int>(active.size());
      break;
    }
    // block [[0, b], [b, 0]] has one positive and one negative eigenvalue
    const Rational b = at(pi, pj);
    out.positive++;
    out.negative++;
    active.erase(std::remove_if(active.begin(), active.end(), [&](std::size_t i) { return i == pi || i == pj; }),
                 active.end());
    std::vector<Rational> col_i(n), col_j(n);
    for (std::size_t k : active) {
      col_i[k] = at(k, pi);
      col_j[k] = at(k, pj);
    }
    for (std::size_t k : active)
      for (std::size_t l : active) at(k, l) -= (col_i[k] * col_j[l] + col_j[k] * col_i[l]) / b;
  }
  return out;
}

Inertia hermitian_inertia(const ComplexMatrix& h) {
  // H = A + iB is congruent, over the reals, to [[A, -B], [B, A]] with doubled inertia.
  const std::size_t n = h.n, m = 2 * n;
  std::vector<Rational> r(m * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& z = h(i, j);
      r[i * m + j] = z.re;
      r[(i + n) * m + (j + n)] = z.re;
      r[i * m + (j + n)] = -z.im;
      r[(i + n) * m + j] = z.im;
    }
  Inertia d = symmetric_inertia(std::move(r), m);
  return {d.positive / 2, d.negative / 2, d.zero / 2};
}

Polynomial alexander_polynomial(const SeifertMatrix& v) {
  const long n = static_cast<long>(v.size());
  // Lagrange interpolation through t = 0..n
  Polynomial p;
  for (long j = 0; j <= n; ++j) {
    Polynomial basis = Polynomial::constant(Rational(alexander_at(v, j)));
    for (long k = 0; k <= n; ++k) {
      if (k == j) continue;
      basis = basis * Polynomial({make_rational(-k, j - k), make_rational(1, j - k)});
    }
    p = p + basis;
  }
  std::vector<Rational> c = p.coeffs();
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  Polynomial out(std::move(c));
  if (!out.is_zero() && out.leading() < 0) out = -out;
  return out;
}

std::vector<Breakpoint> circle_roots(const SeifertMatrix& v, const Rational& max_width) {
  if (max_width <= 0) throw PreconditionError("breakpoint width must be positive");
  CircleAnalysis a = analyze(v);

  std::vector<Breakpoint> lower;
  for (auto [k, n] : a.exact_lower) {
    Rational t(k, n);
    lower.push_back({{t, t}, std::make_pair(k, n)});
  }
  std::vector<RootInterval> xs = a.rest_x_roots;
  std::vector<RootInterval> ts(xs.size());
  std::vector<bool> settled(xs.size(), false);
  for (int round = 0; round < 512; ++round) {
    bool all = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (settled[i]) continue;
      auto t = detail::turns_from_cos(xs[i]);
      if (!t) {
        all = false;
        xs[i] = refine_root(a.rest_x, xs[i], xs[i].width() / 8);
        continue;
      }
      ts[i] = *t;
      bool ok = ts[i].width() <= max_width;
      for (const auto& e : lower)
        if (e.t.lo >= ts[i].lo && e.t.lo <= ts[i].hi) ok = false;
      for (std::size_t j = 0; j < xs.size() && ok; ++j)
        if (j != i && settled[j] && !(ts[j].hi < ts[i].lo || ts[i].hi < ts[j].lo)) ok = false;
      if (ok) {
        settled[i] = true;
      } else {
        all = false;
        if (!xs[i].exact()) xs[i] = refine_root(a.rest_x, xs[i], xs[i].width() / 8);
        for (std::size_t j = 0; j < xs.size(); ++j)
          if (j != i && settled[j] && !(ts[j].hi < ts[i].lo || ts[i].hi < ts[j].lo)) {
            settled[j] = false;
            if (!xs[j].exact()) xs[j] = refine_root(a.rest_x, xs[j], xs[j].width() / 8);
          }
      }
    }
    if (all) break;
  }
  if (std::find(settled.begin(), settled.end(), false) != settled.end())
    throw std::runtime_error("could not separate circle roots");
  for (const auto& t : ts) lower.push_back({t, std::nullopt});
  std::sort(lower.begin(), lower.end(), [](const Breakpoint& l, const Breakpoint& r) { return l.t.lo < r.t.lo; });

  std::vector<Breakpoint> out = lower;
  for (auto it = lower.rbegin(); it != lower.rend(); ++it) {
    Breakpoint b{{1 - it->t.hi, 1 - it->t.lo}, std::nullopt};
    if (it->root_of_unity) b.root_of_unity = std::make_pair(it->root_of_unity->second - it->root_of_unity->first,
                                                            it->root_of_unity->second);
    out.push_back(b);
  }
  return out;
}

std::optional<int> SignatureFunction::at(const Rational& t) const {
  if (breakpoints.empty()) return values.front();
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (t >= breakpoints[i].t.lo && t <= breakpoints[i].t.hi) return std::nullopt;
    if (t < breakpoints[i].t.lo) return values[i];
  }
  return values.front();
}

int SignatureFunction::jump(std::size_t i) const {
  const std::size_t n = breakpoints.size();
  int before = values[i];
  int after = i + 1 < n ? values[i + 1] : values[0];
  return after - before;
}

SignatureFunction signature_function(const SeifertMatrix& v, const Rational& max_width) {
  SignatureFunction s;
  s.breakpoints = circle_roots(v, max_width);
  const auto& bp = s.breakpoints;
  if (bp.empty()) {
    Inertia in = sample_inertia(v, {-1, 0});
    s.values = {in.signature()};
    return s;
  }
  s.values.resize(bp.size());
  s.values[0] = arc_value(v, 0, bp.front().t.lo);
  for (std::size_t i = 1; i < bp.size(); ++i) s.values[i] = arc_value(v, bp[i - 1].t.hi, bp[i].t.lo);
  return s;
}

Rho0Value integrate(const SignatureFunction& s) {
  const auto& bp = s.breakpoints;
  if (bp.empty()) return {Rational(s.values.front()), 0};
  Rho0Value r;
  for (std::size_t i = 1; i < bp.size(); ++i) r.value += s.values[i] * (bp[i].midpoint() - bp[i - 1].midpoint());
  r.value += s.values[0] * (1 - bp.back().midpoint() + bp.front().midpoint());
  for (std::size_t i = 0; i < bp.size(); ++i) {
    int j = s.jump(i);
    r.error_bound += Rational(j < 0 ? -j : j) * bp[i].t.width();
  }
  return r;
}

Rho0Value rho0(const SeifertMatrix& v, const Rational& tolerance) {
  static const Rational kMinTolerance(BigInt(1), BigInt("10000000000000000000000000000000000000000"));
  if (tolerance < kMinTolerance)
    throw PreconditionError("tolerance below 1e-40 is not supported");
  SignatureFunction s = signature_function(v);
  Rho0Value r = integrate(s);
  if (r.error_bound <= tolerance) return r;
  long total = 0;
  for (std::size_t i = 0; i < s.breakpoints.size(); ++i) total += std::abs(s.jump(i));
  s.breakpoints = circle_roots(v, tolerance / total);
  return integrate(s);
}

int arf(const SeifertMatrix& v) {
  Rational d = alexander_polynomial(v)(Rational(-1));
  BigInt x = boost::multiprecision::numerator(d);
  if (x < 0) x = -x;
  int r = static_cast<int>(x % 8);
  return (r == 1 || r == 7) ? 0 : 1;
}

SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b) {
  const std::size_t n = a.size() + b.size();
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) rows[i][j] = a(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) rows[a.size() + i][a.size() + j] = b(i, j);
  std::string name;
  if (a.size() == 0) name = b.name();
  else if (b.size() == 0) name = a.name();
  else if (!a.name().empty() && !b.name().empty()) name = a.name() + "#" + b.name();
  return SeifertMatrix(std::move(rows), std::move(name));
}

SeifertMatrix mirror(const SeifertMatrix& v) {
  const std::size_t n = v.size();
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = -v(j, i);
  std::string name;
  if (!v.name().empty()) {
    const std::string& s = v.name();
    name = wraps_mirror(s) ? s.substr(7, s.size() - 8) : "mirror(" + s + ")";
  }
  return SeifertMatrix(std::move(rows), std::move(name));
}

SeifertMatrix multiple(const SeifertMatrix& v, long k) {
  SeifertMatrix base = k < 0 ? mirror(v) : v;
  SeifertMatrix out({}, "unknot");
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = connected_sum(out, base);
  return out;
}

}  // namespace rhokit::seifert
