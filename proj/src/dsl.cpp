#include "rhokit/dsl.hpp"

#include "rhokit/errors.hpp"

#include <json.hpp>

#include <cctype>

namespace rhokit::dsl {

using infection::Expr;
using seifert::SeifertMatrix;

namespace {

class Cursor {
 public:
  Cursor(std::string_view s, std::string what) : s_(s), what_(std::move(what)) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ == s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string t(s_.substr(start, pos_ - start));
    if (t.empty() || t == "-" || t == "+") fail("expected an integer");
    try {
      return std::stol(t);
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }
  /// Raw text up to the next top-level ',' or ')'.
  std::string balanced() {
    skip();
    std::size_t start = pos_;
    int depth = 0;
    for (; pos_ < s_.size(); ++pos_) {
      char c = s_[pos_];
      if (c == '(' || c == '[') ++depth;
      else if (c == ')' || c == ']') {
        if (depth == 0) break;
        --depth;
      } else if (c == ',' && depth == 0) break;
    }
    if (depth != 0) fail("unbalanced brackets");
    return std::string(s_.substr(start, pos_ - start));
  }
  /// The bracketed span starting at the cursor, brackets included.
  std::string bracketed(char open, char close) {
    skip();
    std::size_t start = pos_;
    int depth = 0;
    for (; pos_ < s_.size(); ++pos_) {
      if (s_[pos_] == open) ++depth;
      if (s_[pos_] == close && --depth == 0) return std::string(s_.substr(start, ++pos_ - start));
    }
    fail("unbalanced brackets");
  }
  std::string quoted() {
    expect("\"");
    std::size_t end = s_.find('"', pos_);
    if (end == std::string_view::npos) fail("unterminated string");
    std::string t(s_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(what_ + ": " + msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::string what_;
  std::size_t pos_ = 0;
};

class KnotParser {
 public:
  KnotParser(std::string_view text, const KnotResolver& resolver) : c_(text, "knot"), resolver_(resolver) {}

  SeifertMatrix parse() {
    SeifertMatrix k = sum();
    if (!c_.done()) c_.fail("trailing input");
    return k;
  }

 private:
  SeifertMatrix sum() {
    SeifertMatrix k = term();
    while (c_.eat("#")) k = seifert::connected_sum(k, term());
    return k;
  }

  SeifertMatrix term() {
    if (c_.eat("-")) return seifert::mirror(term());
    if (std::isdigit(static_cast<unsigned char>(c_.peek()))) {
      long n = c_.integer();
      c_.expect("*");
      if (n > 1000) c_.fail("multiplicity too large");
      return seifert::multiple(term(), n);
    }
    return atom();
  }

  SeifertMatrix atom() {
    if (c_.peek() == '[') return matrix(c_.bracketed('[', ']'));
    if (c_.eat("(")) {
      SeifertMatrix k = sum();
      c_.expect(")");
      return k;
    }
    std::string name = c_.identifier();
    if (name.empty()) c_.fail("expected a knot");
    if (name == "mirror") {
      c_.expect("(");
      SeifertMatrix k = sum();
      c_.expect(")");
      return seifert::mirror(k);
    }
    if (name == "genus1") {
      c_.expect("(");
      long a = c_.integer();
      c_.expect(",");
      long b = c_.integer();
      c_.expect(",");
      long d = c_.integer();
      c_.expect(")");
      SeifertMatrix k = seifert::genus_one(a, b, d);
      k.set_name("genus1(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(d) + ")");
      return k;
    }
    if (c_.peek() == '(') name += c_.bracketed('(', ')');
    if (resolver_)
      if (auto k = resolver_(name)) return *k;
    return seifert::registry_knot(name);
  }

  SeifertMatrix matrix(const std::string& text) {
    std::vector<std::vector<std::int64_t>> rows;
    try {
      rows = nlohmann::json::parse(text).get<std::vector<std::vector<std::int64_t>>>();
    } catch (const nlohmann::json::exception&) {
      c_.fail("malformed matrix literal");
    }
    return SeifertMatrix(std::move(rows));
  }

  Cursor c_;
  const KnotResolver& resolver_;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, const KnotResolver& resolver) : c_(text, "expression"), resolver_(resolver) {}

  Expr parse() {
    Expr e = pipeline();
    if (!c_.done()) c_.fail("trailing input");
    return e;
  }

 private:
  Expr pipeline() {
    Expr e = primary();
    while (c_.eat("|>")) {
      std::string op = c_.identifier();
      c_.expect("(");
      if (op == "infect") {
        auto [eta, k, disk] = infection_args(rank_of(e));
        e = infection::infect(e, std::move(eta), std::move(k), disk);
      } else if (op == "sum") {
        e = infection::connected_sum(e, pipeline());
      } else {
        c_.fail("unknown operation '" + op + "'");
      }
      c_.expect(")");
    }
    return e;
  }

  Expr primary() {
    if (c_.eat("(")) {
      Expr e = pipeline();
      c_.expect(")");
      return e;
    }
    std::string head = c_.identifier();
    c_.expect("(");
    Expr e;
    if (head == "trivial") {
      long m = c_.integer();
      if (m < 1 || m > 64) c_.fail("component count out of range");
      e = infection::trivial_link(static_cast<int>(m));
    } else if (head == "knot") {
      e = infection::knot_surgery(knot());
    } else if (head == "sum") {
      Expr a = pipeline();
      c_.expect(",");
      e = infection::connected_sum(a, pipeline());
    } else if (head == "stack") {
      std::vector<infection::BoundaryLink> links;
      do links.push_back(link());
      while (c_.eat(","));
      e = infection::stack(std::move(links));
    } else {
      c_.fail("unknown expression '" + head + "'");
    }
    c_.expect(")");
    return e;
  }

  infection::BoundaryLink link() {
    if (c_.identifier() != "link") c_.fail("expected link(...)");
    c_.expect("(");
    long m = c_.integer();
    if (m < 1 || m > 64) c_.fail("component count out of range");
    infection::BoundaryLink l{static_cast<int>(m), {}};
    while (c_.eat(",")) {
      if (c_.identifier() != "infect") c_.fail("expected infect(...)");
      c_.expect("(");
      auto [eta, k, disk] = infection_args(l.components);
      if (!disk) c_.fail("string link curves must bound disks");
      l.infections.emplace_back(std::move(eta), std::move(k));
      c_.expect(")");
    }
    c_.expect(")");
    return l;
  }

  std::tuple<freegroup::FreeWord, SeifertMatrix, bool> infection_args(std::optional<int> rank) {
    freegroup::FreeWord eta = freegroup::FreeWord::parse(c_.balanced(), rank);
    c_.expect(",");
    if (c_.identifier() != "knot") c_.fail("expected knot:");
    c_.expect(":");
    SeifertMatrix k = knot();
    bool disk = true;
    if (c_.eat(",")) {
      if (c_.identifier() != "disk") c_.fail("expected disk:");
      c_.expect(":");
      std::string v = c_.identifier();
      if (v != "true" && v != "false") c_.fail("expected true or false");
      disk = v == "true";
    }
    return {std::move(eta), std::move(k), disk};
  }

  SeifertMatrix knot() {
    std::string text = c_.peek() == '"' ? c_.quoted() : c_.balanced();
    return parse_knot(text, resolver_);
  }

  static std::optional<int> rank_of(const Expr& e) {
    infection::TrackedGroup g = infection::tracked_group(e);
    if (g.kind == infection::TrackedGroup::Kind::Opaque) return std::nullopt;
    return g.rank;
  }

  Cursor c_;
  const KnotResolver& resolver_;
};

std::string link_text(const infection::BoundaryLink& l) {
  std::string s = "link(" + std::to_string(l.components);
  for (const auto& [eta, k] : l.infections) s += ", infect(" + eta.str() + ", knot:\"" + knot_text(k) + "\")";
  return s + ")";
}

}  // namespace

SeifertMatrix parse_knot(std::string_view text, const KnotResolver& resolver) {
  return KnotParser(text, resolver).parse();
}

Expr parse_expr(std::string_view text, const KnotResolver& resolver) { return ExprParser(text, resolver).parse(); }

std::string knot_text(const SeifertMatrix& k) {
  if (!k.name().empty()) {
    try {
      if (parse_knot(k.name()) == k) return k.name();
    } catch (const std::exception&) {
    }
  }
  return nlohmann::json(k.rows()).dump();
}

std::string expr_text(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, infection::KnotSurgery>) return "knot(\"" + knot_text(n.knot) + "\")";
        else if constexpr (std::is_same_v<T, infection::TrivialLinkSurgery>)
          return "trivial(" + std::to_string(n.components) + ")";
        else if constexpr (std::is_same_v<T, infection::Infect>)
          return expr_text(n.base) + " |> infect(" + n.eta.str() + ", knot:\"" + knot_text(n.knot) + "\"" +
                 (n.bounds_disk ? "" : ", disk:false") + ")";
        else if constexpr (std::is_same_v<T, infection::ConnectedSum>)
          return "sum(" + expr_text(n.left) + ", " + expr_text(n.right) + ")";
        else {
          std::string s = "stack(";
          for (std::size_t i = 0; i < n.links.size(); ++i) s += (i ? ", " : "") + link_text(n.links[i]);
          return s + ")";
        }
      },
      e->kind);
}

}  // namespace rhokit::dsl
