// SPDX-License-Identifier: Apache-2.0

#include "slitres/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace slitres
{

namespace
{

// Kronrod 15-point abscissae (positive half, descending) and weights; Gauss 7-point
// weights sit at the odd Kronrod positions. Values from QUADPACK qk15.
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Node t_j for j = 0..14 and its Kronrod / Gauss weight on [a, b].
struct Rule
{
  double t[15];
  double wk[15];
  double wgauss[15];
};

Rule make_rule(double a, double b)
{
  Rule r{};
  const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  for (int j = 0; j < 7; j++)
  {
    r.t[j] = c - hl * xgk[j];
    r.t[14 - j] = c + hl * xgk[j];
    r.wk[j] = r.wk[14 - j] = hl * wgk[j];
    const double g = (j % 2 == 1) ? hl * wg[j / 2] : 0.0;
    r.wgauss[j] = r.wgauss[14 - j] = g;
  }
  r.t[7] = c;
  r.wk[7] = hl * wgk[7];
  r.wgauss[7] = hl * wg[3];
  return r;
}

struct Panel
{
  double a, b;
  cd value;
  double error;
  bool operator<(const Panel &o) const { return error < o.error; }
};

Panel eval_panel(const std::function<cd(double)> &f, double a, double b)
{
  const Rule r = make_rule(a, b);
  cd k = 0.0, g = 0.0;
  for (int j = 0; j < 15; j++)
  {
    const cd v = f(r.t[j]);
    k += r.wk[j] * v;
    g += r.wgauss[j] * v;
  }
  return {a, b, k, std::abs(k - g)};
}

void check_breaks(const std::vector<double> &breaks)
{
  if (breaks.size() < 2)
  {
    throw std::invalid_argument("integrate: need at least two break points");
  }
  for (std::size_t i = 1; i < breaks.size(); i++)
  {
    if (!(breaks[i] > breaks[i - 1]))
    {
      throw std::invalid_argument("integrate: break points must increase strictly");
    }
  }
}

}  // namespace

QuadResult integrate(const std::function<cd(double)> &f, const std::vector<double> &breaks,
                     double rel_tol, double abs_tol, int max_subdivisions)
{
  check_breaks(breaks);
  std::priority_queue<Panel> heap;
  QuadResult res;
  cd total = 0.0;
  double err = 0.0;
  for (std::size_t i = 1; i < breaks.size(); i++)
  {
    Panel p = eval_panel(f, breaks[i - 1], breaks[i]);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  res.evaluations = 15 * static_cast<int>(heap.size());
  int splits = 0;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && splits < max_subdivisions)
  {
    Panel p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b))
    {
      heap.push(p);
      break;
    }
    Panel l = eval_panel(f, p.a, mid), r = eval_panel(f, mid, p.b);
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push(l);
    heap.push(r);
    res.evaluations += 30;
    splits++;
  }
  // Re-sum to drop accumulated cancellation in the running totals.
  total = 0.0;
  err = 0.0;
  while (!heap.empty())
  {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = total;
  res.error = err;
  res.converged = err <= std::max(abs_tol, rel_tol * std::abs(total));
  if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
  {
    throw std::runtime_error("integrate: non-finite integrand value");
  }
  return res;
}

QuadResult integrate_to_infinity(const std::function<cd(double)> &f, double a, double rel_tol,
                                 double abs_tol, int max_subdivisions)
{
  if (!(a > 0.0))
  {
    throw std::invalid_argument("integrate_to_infinity: lower limit must be positive");
  }
  auto g = [&](double u) { return f(a / u) * (a / (u * u)); };
  return integrate(g, {0.0, 0.25, 1.0}, rel_tol, abs_tol, max_subdivisions);
}

namespace
{

struct TablePanel
{
  double a, b;
  Eigen::MatrixXcd value;
  double error;
};

TablePanel eval_table_panel(const SeparableEval &eval, int nfun, const std::vector<int> &parity,
                            double a, double b)
{
  const Rule r = make_rule(a, b);
  Eigen::MatrixXcd F(15, nfun);
  Eigen::MatrixXcd GK(15, 2), GG(15, 2);
  std::vector<cd> buf(nfun);
  for (int j = 0; j < 15; j++)
  {
    cd g[2];
    eval(r.t[j], std::span<cd>(buf), g);
    for (int p = 0; p < nfun; p++)
    {
      F(j, p) = buf[p];
    }
    for (int s = 0; s < 2; s++)
    {
      GK(j, s) = r.wk[j] * g[s];
      GG(j, s) = r.wgauss[j] * g[s];
    }
  }
  TablePanel out{a, b, Eigen::MatrixXcd(nfun, nfun), 0.0};
  Eigen::MatrixXcd diff(nfun, nfun);
  for (int s = 0; s < 2; s++)
  {
    const Eigen::MatrixXcd tk = F.transpose() * GK.col(s).asDiagonal() * F;
    const Eigen::MatrixXcd tg = F.transpose() * GG.col(s).asDiagonal() * F;
    for (int p = 0; p < nfun; p++)
    {
      if (parity[p] % 2 == s)
      {
        out.value.row(p) = tk.row(p);
        diff.row(p) = tk.row(p) - tg.row(p);
      }
    }
  }
  out.error = diff.cwiseAbs().maxCoeff();
  return out;
}

}  // namespace

TableResult integrate_separable(const SeparableEval &eval, int nfun, const std::vector<int> &parity,
                                const std::vector<double> &breaks, double rel_tol, double abs_tol,
                                int max_subdivisions)
{
  check_breaks(breaks);
  if (nfun < 1 || static_cast<int>(parity.size()) != nfun)
  {
    throw std::invalid_argument("integrate_separable: parity list must have nfun entries");
  }
  std::vector<TablePanel> panels;
  for (std::size_t i = 1; i < breaks.size(); i++)
  {
    panels.push_back(eval_table_panel(eval, nfun, parity, breaks[i - 1], breaks[i]));
  }
  auto total_of = [&]()
  {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(nfun, nfun);
    double e = 0.0;
    for (const auto &p : panels)
    {
      t += p.value;
      e += p.error;
    }
    return std::make_pair(t, e);
  };
  auto [total, err] = total_of();
  int splits = 0;
  while (splits < max_subdivisions)
  {
    const double target = std::max(abs_tol, rel_tol * total.cwiseAbs().maxCoeff());
    if (err <= target)
    {
      break;
    }
    // Bisect every panel carrying a sizeable share of the error in one sweep.
    std::vector<TablePanel> next;
    const double share = err / (4.0 * panels.size());
    for (auto &p : panels)
    {
      const double mid = 0.5 * (p.a + p.b);
      if (p.error > share && mid > p.a && mid < p.b && splits < max_subdivisions)
      {
        next.push_back(eval_table_panel(eval, nfun, parity, p.a, mid));
        next.push_back(eval_table_panel(eval, nfun, parity, mid, p.b));
        splits++;
      }
      else
      {
        next.push_back(std::move(p));
      }
    }
    panels.swap(next);
    std::tie(total, err) = total_of();
  }
  TableResult res;
  res.value = total;
  res.error = err;
  res.panels = static_cast<int>(panels.size());
  res.converged = err <= std::max(abs_tol, rel_tol * total.cwiseAbs().maxCoeff());
  if (!total.allFinite())
  {
    throw std::runtime_error("integrate_separable: non-finite integrand value");
  }
  return res;
}

}  // namespace slitres
