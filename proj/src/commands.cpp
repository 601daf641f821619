// SPDX-License-Identifier: Apache-2.0

#include "slitres/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <iostream>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace slitres
{

using nlohmann::json;

LogLevel log_level()
{
  const char *env = std::getenv("SLITRES_LOG");
  if (!env)
  {
    return LogLevel::quiet;
  }
  const std::string s(env);
  if (s == "debug")
  {
    return LogLevel::debug;
  }
  if (s == "info")
  {
    return LogLevel::info;
  }
  return LogLevel::quiet;
}

void log_message(LogLevel level, const std::string &msg)
{
  static std::mutex mtx;
  if (level == LogLevel::quiet || static_cast<int>(level) > static_cast<int>(log_level()))
  {
    return;
  }
  std::lock_guard<std::mutex> lock(mtx);
  std::cerr << "[slitres " << (level == LogLevel::debug ? "debug" : "info") << "] " << msg << "\n";
}

std::string fmt17(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<double> parse_number_list(const std::string &s)
{
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    if (item.empty())
    {
      continue;
    }
    std::size_t pos = 0;
    double v;
    try
    {
      v = std::stod(item, &pos);
    }
    catch (const std::exception &)
    {
      throw ConfigError("cannot parse number '" + item + "'");
    }
    if (pos != item.size())
    {
      throw ConfigError("cannot parse number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

namespace
{

double quality_factor(cd k)
{
  return -k.real() / (2.0 * k.imag());
}

std::string header(const RunConfig &cfg, const std::string &what)
{
  std::string s = std::string("# slitres ") + version + " " + what + "\n";
  s += "# config " + config_to_json(cfg) + "\n";
  for (const auto &w : cfg.warnings)
  {
    s += "# warning " + w + "\n";
  }
  return s;
}

}  // namespace

CommandResult cmd_resonances(const RunConfig &cfg)
{
  for (const auto &w : cfg.warnings)
  {
    log_message(LogLevel::info, "warning: " + w);
  }
  log_message(LogLevel::info, "resonances: method " + to_string(cfg.method) + ", N = " +
                                std::to_string(cfg.slit_centers.size()));
  const std::vector<Resonance> rows =
    find_resonances(cfg.geometry(), cfg.fp_lo, cfg.fp_hi, cfg.method, cfg.solver_options());
  CommandResult res;
  for (const auto &r : rows)
  {
    if (r.status != "ok")
    {
      res.exit_code = exit_solver;
    }
  }
  if (cfg.output_format == "json")
  {
    json j;
    j["version"] = version;
    j["config"] = json::parse(config_to_json(cfg));
    j["resonances"] = json::array();
    for (const auto &r : rows)
    {
      j["resonances"].push_back({{"m", r.m},
                                 {"j", r.j},
                                 {"parity", to_string(r.parity)},
                                 {"re_k", r.k.real()},
                                 {"im_k", r.k.imag()},
                                 {"method", to_string(r.method)},
                                 {"est_error", r.error_estimate},
                                 {"quality_factor", quality_factor(r.k)},
                                 {"status", r.status}});
    }
    res.text = j.dump(2) + "\n";
    return res;
  }
  std::string s = header(cfg, "resonances");
  s += "m,j,parity,re_k,im_k,method,est_error,quality_factor,status\n";
  for (const auto &r : rows)
  {
    s += std::to_string(r.m) + "," + std::to_string(r.j) + "," + to_string(r.parity) + "," + fmt17(r.k.real()) +
         "," + fmt17(r.k.imag()) + "," + to_string(r.method) + "," + fmt17(r.error_estimate) + "," +
         fmt17(quality_factor(r.k)) + "," + r.status + "\n";
  }
  res.text = s;
  return res;
}

CommandResult cmd_kernel(cd k, double h, int m, int n, std::optional<double> D, Backend backend, Parity parity,
                         const QuadratureConfig &quad)
{
  if (m < 0 || n < 0 || m > max_mode_index || n > max_mode_index)
  {
    throw ConfigError("kernel: mode indices must lie in [0, 1e4]");
  }
  if (!(h > 0.0))
  {
    throw ConfigError("kernel: h must be positive");
  }
  KernelValue d, c;
  try
  {
    if (D)
    {
      c = c_cross(k, h, m, n, *D, parity, backend, quad);
      const cd f = c_factor(k, h, m, n, parity);
      d = c;
      d.value = c.value / f;
      d.accuracy_estimate = c.accuracy_estimate / std::abs(f);
    }
    else if ((m + n) % 2 != 0)
    {
      d = {m, n, 0.0, backend, 0.0};
      c = d;
    }
    else
    {
      d = (backend == Backend::asymptotic) ? d_single_asym(k, h, m, n) : d_single_quad(k, h, m, n, quad);
      c = c_single(k, h, m, n, parity, backend, quad);
    }
  }
  catch (const std::invalid_argument &e)
  {
    throw ConfigError(e.what());
  }
  catch (const std::domain_error &e)
  {
    throw ConfigError(e.what());
  }
  json j;
  j["k"] = {k.real(), k.imag()};
  j["h"] = h;
  j["m"] = m;
  j["n"] = n;
  j["D"] = D ? json(*D) : json(nullptr);
  j["backend"] = to_string(backend);
  j["parity"] = to_string(parity);
  j["d"] = {d.value.real(), d.value.imag()};
  j["c"] = {c.value.real(), c.value.imag()};
  j["accuracy_estimate"] = d.accuracy_estimate;
  return {j.dump(2) + "\n", exit_ok};
}

CommandResult cmd_alpha(int M)
{
  if (M < 1 || M > 5000)
  {
    throw ConfigError("alpha: modes must lie in [1, 5000]");
  }
  AlphaDiagnostics diag;
  const double at = alpha_truncated(M, &diag);
  const double ac = alpha_closed();
  json j;
  j["M_modes"] = M;
  j["alpha_truncated"] = at;
  j["alpha_closed"] = ac;
  j["abs_error"] = std::abs(at - ac);
  j["p_norm"] = diag.p_norm;
  j["solve_residual"] = diag.residual;
  return {j.dump(2) + "\n", exit_ok};
}

namespace
{

struct SweepPoint
{
  double h = 0.0;
  double eps = 0.0;
  cd k1, k3, kd;
  std::string status = "ok";
};

SweepPoint sweep_point(const RunConfig &cfg, double h)
{
  SweepPoint p;
  p.h = h;
  SlitArray g = cfg.geometry();
  g.h = h;
  const int m = cfg.fp_lo;
  p.eps = m * pi * h / g.l;
  p.k1 = resonance_asym(g, m, 1, AsymOrder::first).k;
  p.k3 = resonance_asym(g, m, 1, AsymOrder::third).k;
  const CrossRule rule = (g.size() > 1) ? CrossRule::sommerfeld : CrossRule::continuation;
  const Resonance seed = resonance_asym(g, m, 1, AsymOrder::third, alpha_closed(), rule);
  try
  {
    const RootSolveReport rep = refine_root(g, parity_of_mode(m), seed.k, SearchRegion{}, cfg.solver_options());
    p.kd = rep.k_root;
    if (!rep.converged)
    {
      p.status = "failed: " + rep.message;
    }
  }
  catch (const std::exception &e)
  {
    p.status = std::string("failed: ") + e.what();
  }
  log_message(LogLevel::info, "validate: h = " + fmt17(h) + " " + p.status);
  return p;
}

}  // namespace

CommandResult cmd_validate(const RunConfig &cfg, const std::vector<double> &h_list, int jobs)
{
  if (h_list.empty())
  {
    throw ConfigError("validate: --h-list must not be empty");
  }
  for (std::size_t i = 0; i < h_list.size(); i++)
  {
    if (!(h_list[i] > 0.0) || h_list[i] > 0.05)
    {
      throw ConfigError("validate: every h must lie in (0, 0.05]");
    }
    if (i > 0 && !(h_list[i] < h_list[i - 1]))
    {
      throw ConfigError("validate: --h-list must be strictly descending");
    }
  }
  if (cfg.fp_lo * pi * h_list.front() / cfg.slab_thickness > 0.3)
  {
    throw ConfigError("validate: m pi h exceeds 0.3 for the largest h");
  }
  jobs = std::max(1, jobs);
  std::vector<SweepPoint> pts(h_list.size());
  for (std::size_t start = 0; start < h_list.size(); start += jobs)
  {
    std::vector<std::future<SweepPoint>> fut;
    for (std::size_t i = start; i < std::min(h_list.size(), start + jobs); i++)
    {
      fut.push_back(std::async(std::launch::async, sweep_point, std::cref(cfg), h_list[i]));
    }
    for (std::size_t i = 0; i < fut.size(); i++)
    {
      pts[start + i] = fut[i].get();
    }
  }

  CommandResult res;
  std::string s = header(cfg, "validate");
  s += "h,eps,asym1_re,asym1_im,asym3_re,asym3_im,direct_re,direct_im,err1,err3,ratio1,ratio3,status\n";
  double r1min = 1e300, r1max = 0.0, r3min = 1e300, r3max = 0.0;
  bool ordered = true, solved = true;
  for (const auto &p : pts)
  {
    const double lg = std::abs(std::log(p.eps));
    const double e1 = std::abs(p.k1 - p.kd), e3 = std::abs(p.k3 - p.kd);
    const double r1 = e1 / (p.eps * p.eps * lg * lg), r3 = e3 / (p.eps * p.eps * p.eps * lg);
    if (p.status != "ok")
    {
      solved = false;
    }
    r1min = std::min(r1min, r1);
    r1max = std::max(r1max, r1);
    r3min = std::min(r3min, r3);
    r3max = std::max(r3max, r3);
    ordered = ordered && (e1 > e3);
    s += fmt17(p.h) + "," + fmt17(p.eps) + "," + fmt17(p.k1.real()) + "," + fmt17(p.k1.imag()) + "," +
         fmt17(p.k3.real()) + "," + fmt17(p.k3.imag()) + "," + fmt17(p.kd.real()) + "," + fmt17(p.kd.imag()) + "," +
         fmt17(e1) + "," + fmt17(e3) + "," + fmt17(r1) + "," + fmt17(r3) + "," + p.status + "\n";
  }
  const double spread1 = r1max / r1min, spread3 = r3max / r3min;
  const bool ok1 = spread1 < 3.0, ok3 = spread3 < 3.0;
  s += "# check ratio1_spread " + fmt17(spread1) + " limit 3 " + (ok1 ? "PASS" : "FAIL") + "\n";
  s += "# check ratio3_spread " + fmt17(spread3) + " limit 3 " + (ok3 ? "PASS" : "FAIL") + "\n";
  s += std::string("# check err1_gt_err3 ") + (ordered ? "PASS" : "FAIL") + "\n";
  res.text = s;
  if (!solved)
  {
    res.exit_code = exit_solver;
  }
  else if (!(ok1 && ok3 && ordered))
  {
    res.exit_code = exit_validation;
  }
  return res;
}

}  // namespace slitres
