// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: resonances, kernel, alpha, validate.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "slitres/commands.hpp"

using namespace slitres;

namespace
{

int emit(const CommandResult &r, const std::string &out_path)
{
  if (out_path.empty())
  {
    std::cout << r.text;
  }
  else
  {
    std::ofstream out(out_path);
    if (!out)
    {
      std::cerr << "slitres: cannot write '" << out_path << "'\n";
      return exit_config;
    }
    out << r.text;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Resonances of a slab with narrow slits: asymptotic formulas and a direct solver"};
  // --h is the slit width, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", version);

  std::string config_path, out_path;
  auto *res = app.add_subcommand("resonances", "Compute resonances for a JSON configuration");
  res->add_option("--config", config_path, "JSON configuration file")->required();
  res->add_option("--out", out_path, "Output file (default stdout)");

  std::string k_text, backend_text = "quadrature", parity_text = "even";
  double h = 0.0;
  int m = 0, n = 0;
  std::optional<double> D;
  auto *ker = app.add_subcommand("kernel", "Evaluate one kernel d_mn and its scaled form c_mn");
  ker->add_option("--k", k_text, "Wavenumber as re,im")->required();
  ker->add_option("--h", h, "Slit width")->required();
  ker->add_option("--m", m, "First mode index")->required();
  ker->add_option("--n", n, "Second mode index")->required();
  ker->add_option("--D", D, "Centre offset for a cross-slit kernel");
  ker->add_option("--backend", backend_text, "asymptotic or quadrature")
    ->check(CLI::IsMember({"asymptotic", "quadrature"}));
  ker->add_option("--parity", parity_text, "Slab parity for c_mn: even or odd")->check(CLI::IsMember({"even", "odd"}));

  int modes = 400;
  auto *alp = app.add_subcommand("alpha", "Truncated-operator alpha against its closed form");
  alp->add_option("--modes", modes, "Number of even in-slit modes")->required();

  std::string h_list_text;
  int jobs = 1;
  auto *val = app.add_subcommand("validate", "Error-law sweep over slit widths");
  val->add_option("--config", config_path, "JSON configuration file")->required();
  val->add_option("--h-list", h_list_text, "Descending slit widths, comma separated")->required();
  val->add_option("--jobs", jobs, "Parallel sweep points")->check(CLI::PositiveNumber);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }

  try
  {
    if (*res)
    {
      return emit(cmd_resonances(load_config(config_path)), out_path);
    }
    if (*ker)
    {
      const std::vector<double> kv = parse_number_list(k_text);
      if (kv.size() != 2)
      {
        throw ConfigError("--k expects re,im");
      }
      const Parity parity = parity_text == "odd" ? Parity::odd : Parity::even;
      return emit(cmd_kernel(cd(kv[0], kv[1]), h, m, n, D, backend_from_string(backend_text), parity), "");
    }
    if (*alp)
    {
      return emit(cmd_alpha(modes), "");
    }
    if (*val)
    {
      return emit(cmd_validate(load_config(config_path), parse_number_list(h_list_text), jobs), "");
    }
  }
  catch (const ConfigError &e)
  {
    std::cerr << "slitres: " << e.what() << "\n";
    return exit_config;
  }
  catch (const std::exception &e)
  {
    std::cerr << "slitres: solver failure: " << e.what() << "\n";
    return exit_solver;
  }
  return exit_ok;
}
