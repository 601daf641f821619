// SPDX-License-Identifier: Apache-2.0

#include "slitres/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace slitres
{

using nlohmann::json;

namespace
{

template <typename T>
T get_as(const json &j, const char *key)
{
  try
  {
    return j.at(key).get<T>();
  }
  catch (const json::exception &e)
  {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

void parse_quadrature(const json &q, QuadratureConfig &out)
{
  if (!q.is_object())
  {
    throw ConfigError("config field 'quadrature' must be an object");
  }
  static const std::set<std::string> known = {"rel_tol",     "abs_tol",    "tail_cut",
                                              "path_height", "path_width", "max_subdivisions"};
  for (auto it = q.begin(); it != q.end(); ++it)
  {
    if (!known.count(it.key()))
    {
      throw ConfigError("unknown quadrature field '" + it.key() + "'");
    }
  }
  if (q.contains("rel_tol"))
  {
    out.rel_tol = get_as<double>(q, "rel_tol");
  }
  if (q.contains("abs_tol"))
  {
    out.abs_tol = get_as<double>(q, "abs_tol");
  }
  if (q.contains("tail_cut"))
  {
    out.tail_cut = get_as<double>(q, "tail_cut");
  }
  if (q.contains("path_height"))
  {
    out.path_height = get_as<double>(q, "path_height");
  }
  if (q.contains("path_width"))
  {
    out.path_width = get_as<double>(q, "path_width");
  }
  if (q.contains("max_subdivisions"))
  {
    out.max_subdivisions = get_as<int>(q, "max_subdivisions");
  }
  try
  {
    out.validate();
  }
  catch (const std::invalid_argument &e)
  {
    throw ConfigError(e.what());
  }
}

}  // namespace

SlitArray RunConfig::geometry() const
{
  SlitArray g;
  g.h = slit_width;
  g.l = slab_thickness;
  g.centers = slit_centers;
  return g;
}

SolverOptions RunConfig::solver_options() const
{
  SolverOptions o;
  o.M_modes = truncation_modes;
  o.backend = kernel_backend;
  o.cross_mode = cross_mode;
  o.quad = quadrature;
  return o;
}

RunConfig parse_config(const std::string &text)
{
  json j;
  try
  {
    j = json::parse(text);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
  {
    throw ConfigError("config must be a JSON object");
  }
  static const std::set<std::string> known = {"slab_thickness", "slit_width",     "slit_centers",
                                              "truncation_modes", "fp_range",     "method",
                                              "kernel_backend", "quadrature",     "output_format",
                                              "cross_mode"};
  for (auto it = j.begin(); it != j.end(); ++it)
  {
    if (!known.count(it.key()))
    {
      throw ConfigError("unknown config field '" + it.key() + "'");
    }
  }
  RunConfig c;
  if (j.contains("slab_thickness"))
  {
    c.slab_thickness = get_as<double>(j, "slab_thickness");
  }
  if (!j.contains("slit_width"))
  {
    throw ConfigError("config field 'slit_width' is required");
  }
  c.slit_width = get_as<double>(j, "slit_width");
  if (j.contains("slit_centers"))
  {
    c.slit_centers = get_as<std::vector<double>>(j, "slit_centers");
  }
  if (j.contains("truncation_modes"))
  {
    c.truncation_modes = get_as<int>(j, "truncation_modes");
  }
  if (j.contains("fp_range"))
  {
    const auto r = get_as<std::vector<int>>(j, "fp_range");
    if (r.size() != 2)
    {
      throw ConfigError("config field 'fp_range' must be [m_lo, m_hi]");
    }
    c.fp_lo = r[0];
    c.fp_hi = r[1];
  }
  try
  {
    if (j.contains("method"))
    {
      c.method = method_from_string(get_as<std::string>(j, "method"));
    }
    if (j.contains("kernel_backend"))
    {
      c.kernel_backend = backend_from_string(get_as<std::string>(j, "kernel_backend"));
    }
  }
  catch (const std::invalid_argument &e)
  {
    throw ConfigError(e.what());
  }
  if (j.contains("cross_mode"))
  {
    const auto s = get_as<std::string>(j, "cross_mode");
    if (s == "full")
    {
      c.cross_mode = CrossMode::full;
    }
    else if (s == "leading")
    {
      c.cross_mode = CrossMode::leading;
    }
    else
    {
      throw ConfigError("config field 'cross_mode' must be 'full' or 'leading'");
    }
  }
  if (j.contains("quadrature"))
  {
    parse_quadrature(j.at("quadrature"), c.quadrature);
  }
  if (j.contains("output_format"))
  {
    c.output_format = get_as<std::string>(j, "output_format");
    if (c.output_format != "csv" && c.output_format != "json")
    {
      throw ConfigError("config field 'output_format' must be 'csv' or 'json'");
    }
  }

  if (!(c.slab_thickness > 0.0))
  {
    throw ConfigError("slab_thickness must be positive");
  }
  if (!(c.slit_width > 0.0))
  {
    throw ConfigError("slit_width must be positive");
  }
  if (c.slit_width / c.slab_thickness > 0.05)
  {
    c.warnings.push_back("slit_width/slab_thickness above 0.05; asymptotic formulas lose accuracy");
  }
  if (c.slit_centers.empty())
  {
    throw ConfigError("slit_centers must not be empty");
  }
  if (c.truncation_modes < 4 || c.truncation_modes > 2000)
  {
    throw ConfigError("truncation_modes must lie in [4, 2000]");
  }
  if (c.fp_lo < 1 || c.fp_hi < c.fp_lo)
  {
    throw ConfigError("fp_range must be a nonempty range of indices >= 1");
  }
  if (c.fp_hi * pi * c.slit_width / c.slab_thickness > 0.3)
  {
    throw ConfigError("fp_range reaches m pi h / l > 0.3, outside the asymptotic regime");
  }
  try
  {
    c.geometry().validate();
  }
  catch (const std::invalid_argument &e)
  {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig &c)
{
  json j;
  j["slab_thickness"] = c.slab_thickness;
  j["slit_width"] = c.slit_width;
  j["slit_centers"] = c.slit_centers;
  j["truncation_modes"] = c.truncation_modes;
  j["fp_range"] = {c.fp_lo, c.fp_hi};
  j["method"] = to_string(c.method);
  j["kernel_backend"] = to_string(c.kernel_backend);
  j["cross_mode"] = c.cross_mode == CrossMode::full ? "full" : "leading";
  j["quadrature"] = {{"rel_tol", c.quadrature.rel_tol},
                     {"abs_tol", c.quadrature.abs_tol},
                     {"tail_cut", c.quadrature.tail_cut},
                     {"path_height", c.quadrature.path_height},
                     {"path_width", c.quadrature.path_width},
                     {"max_subdivisions", c.quadrature.max_subdivisions}};
  j["output_format"] = c.output_format;
  return j.dump();
}

}  // namespace slitres
