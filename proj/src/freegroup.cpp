#include "rhokit/freegroup.hpp"

#include "rhokit/errors.hpp"

#include <cctype>
#include <sstream>

namespace rhokit::freegroup {

namespace {

void check_letter(int rank, const Letter& l) {
  if (l.gen < 1 || l.gen > rank)
    throw PreconditionError("generator x" + std::to_string(l.gen) + " out of range for rank " + std::to_string(rank));
  if (l.exp != 1 && l.exp != -1) throw PreconditionError("letter exponent must be +-1");
}

// Recursive-descent parser over "x1 x2^-1 [u,v]^k".
class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  std::vector<Letter> parse_all() {
    auto w = parse_product();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

  int max_gen() const { return max_gen_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("word parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*')) ++pos_;
  }

  bool at_factor_start() {
    skip_ws();
    return pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '[' || s_[pos_] == '(' || s_[pos_] == '1');
  }

  long parse_int() {
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) fail("expected an integer");
    if (pos_ - digits > 6) fail("integer too large");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  std::vector<Letter> parse_product() {
    std::vector<Letter> out;
    while (at_factor_start()) {
      auto f = parse_factor();
      out.insert(out.end(), f.begin(), f.end());
    }
    return out;
  }

  static std::vector<Letter> invert(const std::vector<Letter>& w) {
    std::vector<Letter> r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
    return r;
  }

  std::vector<Letter> parse_factor() {
    skip_ws();
    std::vector<Letter> base;
    char c = s_[pos_];
    if (c == 'x') {
      ++pos_;
      long g = parse_int();
      if (g < 1) fail("generator index must be positive");
      max_gen_ = std::max(max_gen_, static_cast<int>(g));
      base.push_back({static_cast<int>(g), 1});
    } else if (c == '1') {
      ++pos_;
    } else if (c == '(') {
      ++pos_;
      base = parse_product();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
    } else {  // '['
      ++pos_;
      auto u = parse_product();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ',') fail("expected ',' in commutator");
      ++pos_;
      auto v = parse_product();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ']') fail("expected ']'");
      ++pos_;
      base = invert(u);
      auto vi = invert(v);
      base.insert(base.end(), vi.begin(), vi.end());
      base.insert(base.end(), u.begin(), u.end());
      base.insert(base.end(), v.begin(), v.end());
    }
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws();
      long k = parse_int();
      std::vector<Letter> unit = k < 0 ? invert(base) : base;
      std::vector<Letter> out;
      for (long i = 0; i < (k < 0 ? -k : k); ++i) out.insert(out.end(), unit.begin(), unit.end());
      return out;
    }
    return base;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int max_gen_ = 0;
};

}  // namespace

FreeWord free_reduce(int rank, const std::vector<Letter>& letters) { return FreeWord(rank, letters); }

FreeWord::FreeWord(int rank) : rank_(rank) {
  if (rank < 1) throw PreconditionError("free group rank must be at least 1");
}

FreeWord::FreeWord(int rank, const std::vector<Letter>& letters) : FreeWord(rank) {
  for (const auto& l : letters) {
    check_letter(rank, l);
    if (!letters_.empty() && letters_.back() == l.inverse()) letters_.pop_back();
    else letters_.push_back(l);
  }
}

FreeWord FreeWord::generator(int rank, int gen, int exp) { return FreeWord(rank, {{gen, exp}}); }

FreeWord FreeWord::parse(std::string_view text, std::optional<int> rank) {
  WordParser p(text);
  auto letters = p.parse_all();
  int r = rank.value_or(std::max(1, p.max_gen()));
  if (p.max_gen() > r)
    throw PreconditionError("generator x" + std::to_string(p.max_gen()) + " exceeds rank " + std::to_string(r));
  return FreeWord(r, letters);
}

FreeWord FreeWord::inverse() const {
  FreeWord r(rank_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(it->inverse());
  return r;
}

FreeWord FreeWord::conjugate(const FreeWord& g) const { return g.inverse() * *this * g; }

FreeWord FreeWord::pow(long k) const {
  FreeWord unit = k < 0 ? inverse() : *this;
  FreeWord r(rank_);
  for (long i = 0; i < (k < 0 ? -k : k); ++i) r = r * unit;
  return r;
}

std::vector<int> FreeWord::signed_letters() const {
  std::vector<int> out;
  for (const auto& l : letters_) out.push_back(l.exp * l.gen);
  return out;
}

std::vector<long> FreeWord::exponent_sums() const {
  std::vector<long> s(static_cast<std::size_t>(rank_), 0);
  for (const auto& l : letters_) s[static_cast<std::size_t>(l.gen - 1)] += l.exp;
  return s;
}

std::string FreeWord::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    os << 'x' << letters_[i].gen;
    if (letters_[i].exp < 0) os << "^-1";
  }
  return os.str();
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
  if (a.rank_ != b.rank_) throw PreconditionError("rank mismatch in word product");
  std::vector<Letter> all = a.letters_;
  all.insert(all.end(), b.letters_.begin(), b.letters_.end());
  return FreeWord(a.rank_, all);
}

FreeWord commutator(const FreeWord& u, const FreeWord& v) {
  if (u.rank() != v.rank()) throw PreconditionError("rank mismatch in commutator");
  return u.inverse() * v.inverse() * u * v;
}

FreeGroupRingElement fox_derivative(const FreeWord& w, int i) {
  if (i < 1 || i > w.rank()) throw PreconditionError("Fox derivative index out of range");
  FreeGroupRingElement out;
  auto add = [&](const FreeWord& key, long c) {
    auto& slot = out[key];
    slot += c;
    if (slot == 0) out.erase(key);
  };
  std::vector<Letter> prefix;
  for (const auto& l : w.letters()) {
    if (l.gen == i && l.exp == 1) add(FreeWord(w.rank(), prefix), 1);
    prefix.push_back(l);
    if (l.gen == i && l.exp == -1) add(FreeWord(w.rank(), prefix), -1);
  }
  return out;
}

FreeWord substitute(const FreeWord& w, int gen, const FreeWord& image) {
  FreeWord out(w.rank());
  for (const auto& l : w.letters()) {
    if (l.gen == gen) out = out * (l.exp > 0 ? image : image.inverse());
    else out = out * FreeWord::generator(w.rank(), l.gen, l.exp);
  }
  return out;
}

FreeWord canonical_curve(int n, int m) {
  if (n < 0) throw PreconditionError("depth must be nonnegative");
  if (n == 0) return FreeWord::generator(std::max(m, 1), 1);
  if (m < 2) throw PreconditionError("curves of positive depth need rank >= 2");
  const FreeWord x1 = FreeWord::generator(m, 1), x2 = FreeWord::generator(m, 2);
  FreeWord eta = commutator(x1, x2);
  for (int k = 1; k < n; ++k) {
    FreeWord partner;
    if (k == 1 && m >= 3) partner = substitute(eta, 2, FreeWord::generator(m, 3));
    else if (k % 2 == 1) partner = substitute(eta, 1, x1.inverse());
    else partner = substitute(eta, 2, x2.inverse());
    eta = commutator(eta, partner);
  }
  return eta;
}

}  // namespace rhokit::freegroup
