#ifndef NOZZLE_ERRORS_HPP_
#define NOZZLE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nozzle {

// Error taxonomy maps onto process exit codes (see tools/transonic_main.cpp):
//   ConfigError   -> 2   bad input file, bad flags, violated data hypotheses
//   PhysicsError  -> 3   physically inadmissible problem (no shock position, ...)
//   NumericsError -> 4   solver breakdown (divergence, singular system, ...)
// Anything else escaping main is a bug and exits 1.

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what_arg)
      : std::runtime_error(where + ": " + what_arg) {}
};

class PhysicsError : public std::runtime_error {
 public:
  PhysicsError(const std::string& where, const std::string& what_arg)
      : std::runtime_error(where + ": " + what_arg) {}
};

class NumericsError : public std::runtime_error {
 public:
  NumericsError(const std::string& where, const std::string& what_arg)
      : std::runtime_error(where + ": " + what_arg) {}
};

}  // namespace nozzle

#endif  // NOZZLE_ERRORS_HPP_
