#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qplane {

// Base class for every error the library raises on purpose.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Two values that must agree (q, weights, dimensions, backends) do not.
class mismatch_error : public error {
 public:
  explicit mismatch_error(const std::string& what) : error("mismatch: " + what) {}
};

// Weight evaluation failed: nonpositive value, or a strict table ran out.
class weight_error : public error {
 public:
  explicit weight_error(const std::string& what) : error("weights: " + what) {}
};

// An argument is outside the operation's domain (q = 0, r < |n|, ...).
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error("domain: " + what) {}
};

// Text input rejected; `position` is a 0-based byte offset into the input.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error("parse: " + what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qplane
