#pragma once

#include <stdexcept>
#include <string>

namespace qfp {

// All library failures derive from Error; kind() is the stable,
// machine-readable tag written into the CLI's error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define QFP_DEFINE_ERROR(Name, tag) \
  class Name : public Error {       \
   public:                          \
    explicit Name(const std::string& message) : Error(tag, message) {} \
  };

QFP_DEFINE_ERROR(InvalidArgument, "invalid_argument")
QFP_DEFINE_ERROR(ExtrapolationError, "extrapolation")
QFP_DEFINE_ERROR(DomainError, "domain")
QFP_DEFINE_ERROR(LinewidthUndefined, "linewidth_undefined")
QFP_DEFINE_ERROR(IndexOutOfWindow, "index_out_of_window")
QFP_DEFINE_ERROR(BandwidthError, "bandwidth")
QFP_DEFINE_ERROR(ConfigError, "config")

#undef QFP_DEFINE_ERROR

/// Raised when the retained EOM sidebands do not hold enough of the energy.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& message, double tail_energy)
      : Error("truncation_too_small", message), tail_energy_(tail_energy) {}

  double tail_energy() const noexcept { return tail_energy_; }

 private:
  double tail_energy_;
};

}  // namespace qfp
