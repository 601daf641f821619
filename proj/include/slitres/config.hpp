// SPDX-License-Identifier: Apache-2.0

#ifndef SLITRES_CONFIG_HPP
#define SLITRES_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "slitres/asymptotic.hpp"
#include "slitres/direct.hpp"
#include "slitres/kernels.hpp"

namespace slitres
{

// Invalid user input; maps to exit status 2.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig
{
  double slab_thickness = 1.0;
  double slit_width = 0.01;
  std::vector<double> slit_centers = {0.0};
  int truncation_modes = 40;
  int fp_lo = 1;
  int fp_hi = 1;
  Method method = Method::asym3;
  Backend kernel_backend = Backend::quadrature;
  CrossMode cross_mode = CrossMode::full;
  QuadratureConfig quadrature{};
  std::string output_format = "csv";
  std::vector<std::string> warnings;

  SlitArray geometry() const;
  SolverOptions solver_options() const;
};

// Parses and validates a JSON document; unknown keys are rejected.
RunConfig parse_config(const std::string &json_text);
RunConfig load_config(const std::string &path);
// Compact JSON echo of the effective configuration.
std::string config_to_json(const RunConfig &cfg);

}  // namespace slitres

#endif  // SLITRES_CONFIG_HPP
