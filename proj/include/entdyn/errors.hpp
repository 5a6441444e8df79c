#pragma once

#include <stdexcept>
#include <string>

namespace entdyn {

// Semantic problem with otherwise well-formed input: vertex pair not
// equivalent under the graph symmetry, disconnected graph, ...
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: unphysical state parameters, radicand far below
// zero, disagreeing computation routes.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entdyn
