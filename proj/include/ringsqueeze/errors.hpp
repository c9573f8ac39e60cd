#pragma once

#include <stdexcept>
#include <string>

namespace ringsqueeze {

/// Bad user input: config files, schedule invariants, parameter domains.
/// The CLI maps this to exit code 1.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Failure while running a simulation (divergence, I/O, backend mismatch).
/// The CLI maps this to exit code 2.
class simulation_error : public std::runtime_error {
 public:
  explicit simulation_error(const std::string& what) : std::runtime_error(what) {}
};

/// NaN/Inf amplitude during integration; carries where it happened.
class integration_diverged : public simulation_error {
 public:
  integration_diverged(double tau, std::size_t trajectory)
      : simulation_error("integration diverged (NaN/Inf amplitude) at tau=" +
                         std::to_string(tau) + ", trajectory " + std::to_string(trajectory)),
        tau_(tau), trajectory_(trajectory) {}
  double tau() const { return tau_; }
  std::size_t trajectory() const { return trajectory_; }

 private:
  double tau_;
  std::size_t trajectory_;
};

}
