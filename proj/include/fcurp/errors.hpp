#pragma once

#include <stdexcept>
#include <string>

namespace fcurp {

struct DisconnectedRoad : std::runtime_error {
  explicit DisconnectedRoad(const std::string& what) : std::runtime_error(what) {}
};

struct UncoverableTarget : std::runtime_error {
  int target;
  UncoverableTarget(int t, const std::string& what) : std::runtime_error(what), target(t) {}
};

struct FrontierExhausted : std::runtime_error {
  explicit FrontierExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct TooLarge : std::runtime_error {
  explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct ExtractionError : std::runtime_error {
  explicit ExtractionError(const std::string& what) : std::runtime_error(what) {}
};

struct UnencodableWalk : std::runtime_error {
  explicit UnencodableWalk(const std::string& what) : std::runtime_error(what) {}
};

struct BackendFailure : std::runtime_error {
  explicit BackendFailure(const std::string& what) : std::runtime_error(what) {}
};

struct RepairFailure : std::runtime_error {
  explicit RepairFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fcurp
