#pragma once

#include <stdexcept>
#include <string>

namespace rhokit {

/// Malformed textual input (words, DSL, JSON, CSV).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is well-formed but violates an operation's precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A curve's derived depth could not be determined within the configured bound.
class DepthOverflow : public std::runtime_error {
 public:
  DepthOverflow(std::string curve, int max_n)
      : std::runtime_error("depth overflow: curve " + curve + " lies in F^(" + std::to_string(max_n + 1) +
                           "), depth exceeds max_n=" + std::to_string(max_n)),
        curve_(std::move(curve)),
        max_n_(max_n) {}
  const std::string& curve() const { return curve_; }
  int max_n() const { return max_n_; }

 private:
  std::string curve_;
  int max_n_;
};

}  // namespace rhokit
