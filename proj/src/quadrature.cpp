#include "qfl/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <sstream>

#include "qfl/error.hpp"

namespace qfl {

namespace {

// Kronrod abscissae ordered from the endpoint inwards; odd indices are the
// embedded Gauss nodes.
constexpr std::array<double, 8> kXgk15 = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 4> kWg7 = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
constexpr std::array<double, 8> kWgk15 = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 11> kXgk21 = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 5> kWg10 = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};
constexpr std::array<double, 11> kWgk21 = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

struct RuleView {
  std::span<const double> x;
  std::span<const double> wk;
  std::span<const double> wg;
};

RuleView rule_view(Rule r) {
  if (r == Rule::GK15) return {kXgk15, kWgk15, kWg7};
  return {kXgk21, kWgk21, kWg10};
}

// Node positions of one panel: the centre last, symmetric pairs before it.
std::size_t nodes_per_panel(const RuleView& r) { return 2 * r.x.size() - 1; }

double node_at(const RuleView& r, double a, double b, std::size_t j) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::size_t m = r.x.size() - 1;
  if (j == 2 * m) return centre;
  const double x = r.x[j / 2];
  return (j % 2 == 0) ? centre - half * x : centre + half * x;
}

struct Panel {
  double a;
  double b;
  Estimate est;
};

Panel combine(const RuleView& r, double a, double b, std::span<const Estimate> f) {
  const double half = 0.5 * (b - a);
  const std::size_t m = r.x.size() - 1;
  const Estimate& fc = f[2 * m];
  double kron = r.wk[m] * fc.value;
  double gauss = (m % 2 == 1) ? r.wg[m / 2] * fc.value : 0.0;
  double inner_err = r.wk[m] * fc.error;
  long evals = fc.evals;
  for (std::size_t i = 0; i < m; ++i) {
    const Estimate& lo = f[2 * i];
    const Estimate& hi = f[2 * i + 1];
    const double pair = lo.value + hi.value;
    kron += r.wk[i] * pair;
    if (i % 2 == 1) gauss += r.wg[i / 2] * pair;
    inner_err += r.wk[i] * (lo.error + hi.error);
    evals += lo.evals + hi.evals;
  }
  Panel p{a, b, {}};
  p.est.value = kron * half;
  p.est.error = std::abs((kron - gauss) * half) + inner_err * std::abs(half);
  p.est.evals = evals;
  if (!std::isfinite(p.est.value)) {
    std::ostringstream msg;
    msg << "non-finite integrand on [" << a << ", " << b << "]";
    raise(ErrorKind::Convergence, msg.str());
  }
  return p;
}

std::vector<Panel> evaluate_panels(const std::function<Estimate(double)>& f,
                                   const std::vector<std::pair<double, double>>& spans,
                                   const RuleView& r, Execution exec) {
  const std::size_t npp = nodes_per_panel(r);
  std::vector<Estimate> values(spans.size() * npp);
  for_each_index(values.size(), exec, [&](std::size_t idx) {
    const auto& [a, b] = spans[idx / npp];
    values[idx] = f(node_at(r, a, b, idx % npp));
  });
  std::vector<Panel> out;
  out.reserve(spans.size());
  for (std::size_t p = 0; p < spans.size(); ++p) {
    out.push_back(combine(r, spans[p].first, spans[p].second,
                          std::span<const Estimate>(values).subspan(p * npp, npp)));
  }
  return out;
}

}  // namespace

QuadResult integrate_nested(const std::function<Estimate(double)>& f, std::vector<double> breaks,
                            const QuadOptions& opts) {
  if (breaks.size() < 2) raise(ErrorKind::Domain, "quadrature needs at least two limits");
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  for (double x : breaks) {
    if (!std::isfinite(x)) raise(ErrorKind::Domain, "finite limits required; use integrate_infinite");
  }
  QuadResult res;
  if (breaks.size() < 2) {
    res.converged = true;
    return res;
  }
  const RuleView r = rule_view(opts.rule);

  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 1; i < breaks.size(); ++i) spans.emplace_back(breaks[i - 1], breaks[i]);
  std::vector<Panel> panels = evaluate_panels(f, spans, r, opts.exec);

  // Max-heap on error; ties by position keep the order deterministic.
  const auto worse = [&](std::size_t i, std::size_t j) {
    if (panels[i].est.error != panels[j].est.error) return panels[i].est.error < panels[j].est.error;
    return panels[i].a > panels[j].a;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);
  std::vector<bool> live(panels.size(), true);
  for (std::size_t i = 0; i < panels.size(); ++i) heap.push(i);

  const auto totals = [&]() {
    Estimate t;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!live[i]) continue;
      t.value += panels[i].est.value;
      t.error += panels[i].est.error;
    }
    return t;
  };
  long evals = 0;
  for (const auto& p : panels) evals += p.est.evals;

  Estimate total = totals();
  int count = static_cast<int>(panels.size());
  // Panels too narrow to split further are parked here.
  std::vector<std::size_t> frozen;
  while (total.error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value)) && !heap.empty() &&
         count < opts.max_intervals) {
    const std::size_t w = heap.top();
    heap.pop();
    const double a = panels[w].a;
    const double b = panels[w].b;
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b) ||
        b - a <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b))) {
      frozen.push_back(w);
      continue;
    }
    auto halves = evaluate_panels(f, {{a, mid}, {mid, b}}, r, opts.exec);
    live[w] = false;
    for (auto& h : halves) {
      evals += h.est.evals;
      panels.push_back(h);
      live.push_back(true);
      heap.push(panels.size() - 1);
    }
    ++count;
    total = totals();
  }

  res.value = total.value;
  res.error = total.error;
  res.evals = evals;
  res.intervals = count;
  res.converged = total.error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value));
  for (std::size_t i = 0; i < panels.size(); ++i) {
    if (live[i] && panels[i].est.error >= res.worst_error) {
      res.worst_error = panels[i].est.error;
      res.worst_a = panels[i].a;
      res.worst_b = panels[i].b;
    }
  }
  return res;
}

QuadResult integrate(const std::function<double(double)>& f, std::vector<double> breaks,
                     const QuadOptions& opts) {
  return integrate_nested([&](double x) { return Estimate{f(x), 0.0, 1}; }, std::move(breaks), opts);
}

QuadResult integrate_infinite(const std::function<double(double)>& f, double a, double b,
                              const QuadOptions& opts) {
  if (!(a < b)) raise(ErrorKind::Domain, "integrate_infinite needs a < b");
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return integrate(f, a, b, opts);
  if (lo_inf && hi_inf) {
    return integrate(
        [&](double t) {
          const double d = 1.0 - t * t;
          return f(t / d) * (1.0 + t * t) / (d * d);
        },
        -1.0, 1.0, opts);
  }
  if (hi_inf) {
    return integrate([&](double t) { return f(a + (1.0 - t) / t) / (t * t); }, 0.0, 1.0, opts);
  }
  return integrate([&](double t) { return f(b - (1.0 - t) / t) / (t * t); }, 0.0, 1.0, opts);
}

QuadResult integrate_peaked(const std::function<Estimate(double)>& f, double a, double b,
                            double peak, double width, const QuadOptions& opts) {
  if (!(width > 0.0)) raise(ErrorKind::Domain, "integrate_peaked needs a positive width");
  const double ta = std::atan((a - peak) / width);
  const double tb = std::atan((b - peak) / width);
  std::vector<double> breaks{ta, tb};
  if (ta < 0.0 && tb > 0.0) breaks.insert(breaks.begin() + 1, 0.0);
  return integrate_nested(
      [&](double t) {
        const double c = std::cos(t);
        const double jac = width / (c * c);
        Estimate e = f(peak + width * std::tan(t));
        e.value *= jac;
        e.error *= jac;
        return e;
      },
      breaks, opts);
}

}  // namespace qfl
