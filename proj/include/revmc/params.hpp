#ifndef REVMC_PARAMS_HPP
#define REVMC_PARAMS_HPP

#include <stdexcept>
#include <string>

namespace revmc {

// Parameters of the reinforced-walk scheme. theta seeds the hub
// self-loop weight, alpha discounts discoveries, beta shifts mass from
// direct edges to the hub.
struct Params {
  double theta = 1.0;
  double alpha = 0.0;
  double beta = 0.5;

  void validate() const {
    if (!(theta >= 0.0)) throw std::invalid_argument("theta must be >= 0");
    if (!(alpha >= 0.0 && alpha < 1.0))
      throw std::invalid_argument("alpha must be in [0,1)");
    if (!(beta >= 0.0 && beta <= 1.0))
      throw std::invalid_argument("beta must be in [0,1]");
  }

  // Posterior sampling uses theta/(2 beta) and theta/beta.
  void validate_for_inference() const {
    validate();
    if (!(beta > 0.0)) throw std::invalid_argument("inference requires beta > 0");
    if (!(theta > 0.0)) throw std::invalid_argument("inference requires theta > 0");
  }

  std::string str() const {
    return "(theta=" + std::to_string(theta) + ", alpha=" + std::to_string(alpha) +
           ", beta=" + std::to_string(beta) + ")";
  }
};

}  // namespace revmc

#endif
