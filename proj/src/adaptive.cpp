#include "adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grushin::detail {

void merge(LineResult& into, const LineResult& part) {
  into.value += part.value;
  into.error += part.error;
  if (part.status == QuadStatus::divergent || into.status == QuadStatus::divergent) {
    into.status = QuadStatus::divergent;
  } else if (part.status == QuadStatus::not_converged) {
    into.status = QuadStatus::not_converged;
  }
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct RuleValue {
  double value = 0;
  double carried = 0;
};

RuleValue apply_rule(const Integrand1D& f, double lo, double hi, const GaussLegendreRule& rule, Budget& budget) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  RuleValue out;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const Sample s = f(mid + half * rule.nodes[i]);
    out.value += rule.weights[i] * s.value;
    out.carried += rule.weights[i] * s.error;
  }
  budget.used += static_cast<std::int64_t>(rule.nodes.size());
  out.value *= half;
  out.carried *= half;
  return out;
}

struct Cell {
  double lo, hi;
  RuleValue left, right;
  double err;

  double fine() const { return left.value + right.value; }
};

Cell make_cell(const Integrand1D& f, double lo, double hi, const RuleValue& coarse, const GaussLegendreRule& rule,
               Budget& budget) {
  const double mid = 0.5 * (lo + hi);
  Cell c{lo, hi, apply_rule(f, lo, mid, rule, budget), apply_rule(f, mid, hi, rule, budget), 0.0};
  const double fine = c.fine();
  c.err = std::fabs(coarse.value - fine) + c.left.carried + c.right.carried +
          10.0 * kEps * (std::fabs(c.left.value) + std::fabs(c.right.value));
  (void)coarse.carried;
  return c;
}

bool cell_less(const Cell& a, const Cell& b) { return a.err < b.err; }

}  // namespace

LineResult adaptive(const Integrand1D& f, double a, double b, double rel_tol, const GaussLegendreRule& rule,
                    Budget& budget, double abs_tol) {
  LineResult out;
  if (!(b > a)) return out;
  std::vector<Cell> heap;
  std::vector<Cell> frozen;
  const RuleValue whole = apply_rule(f, a, b, rule, budget);
  heap.push_back(make_cell(f, a, b, whole, rule, budget));

  auto totals = [&](double& value, double& err) {
    value = 0;
    err = 0;
    for (const auto& c : heap) {
      value += c.fine();
      err += c.err;
    }
    for (const auto& c : frozen) {
      value += c.fine();
      err += c.err;
    }
  };

  double value = heap.front().fine();
  double err = heap.front().err;
  while (true) {
    if (!std::isfinite(value) || !std::isfinite(err)) {
      out.status = QuadStatus::divergent;
      break;
    }
    if (err <= std::max(rel_tol * std::fabs(value), abs_tol)) {
      // confirm with a fresh sum; the running totals accumulate rounding
      totals(value, err);
      if (err <= std::max(rel_tol * std::fabs(value), abs_tol)) break;
    }
    if (heap.empty() || budget.exhausted()) {
      out.status = QuadStatus::not_converged;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), cell_less);
    Cell worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) || (worst.hi - worst.lo) <= 8.0 * kEps * std::max(std::fabs(worst.lo), std::fabs(worst.hi))) {
      frozen.push_back(worst);
      continue;
    }
    Cell left = make_cell(f, worst.lo, mid, worst.left, rule, budget);
    Cell right = make_cell(f, mid, worst.hi, worst.right, rule, budget);
    value += left.fine() + right.fine() - worst.fine();
    err += left.err + right.err - worst.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), cell_less);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), cell_less);
  }
  totals(value, err);
  out.value = value;
  out.error = err;
  if (!std::isfinite(value)) out.status = QuadStatus::divergent;
  return out;
}

LineResult graded(const Integrand1D& f, double a, double b, Grade grade, double rel_tol, double extrapolate_within,
                  const GaussLegendreRule& rule, Budget& budget) {
  if (grade == Grade::none) return adaptive(f, a, b, rel_tol, rule, budget);
  LineResult out;
  if (!(b > a)) return out;

  const double width = b - a;
  // u is the distance from the graded endpoint
  auto at = [&](double u) { return grade == Grade::left ? a + u : b - u; };
  Integrand1D g = [&](double u) { return f(at(u)); };

  constexpr int kMaxShells = 400;
  constexpr int kZeroRun = 30;
  std::vector<double> shells;
  int zero_run = 0;
  for (int j = 0; j < kMaxShells; ++j) {
    const double hi = std::ldexp(width, -j);
    const double lo = 0.5 * hi;
    if (at(lo) == at(hi)) {
      // shell collapsed in floating point; what remains is below resolution
      const double last = shells.empty() ? 0.0 : std::fabs(shells.back());
      if (last > rel_tol * std::fabs(out.value)) out.status = QuadStatus::not_converged;
      return out;
    }
    // shells far below the running total only need accuracy relative to it
    LineResult shell = adaptive(g, lo, hi, rel_tol, rule, budget, 0.1 * rel_tol * std::fabs(out.value));
    merge(out, shell);
    if (shell.status != QuadStatus::converged) return out;
    shells.push_back(shell.value);
    zero_run = shell.value == 0.0 ? zero_run + 1 : 0;
    if (zero_run >= kZeroRun) return out;
    if (budget.exhausted()) {
      out.status = QuadStatus::not_converged;
      return out;
    }

    const size_t n = shells.size();
    if (n < 4 || shells[n - 2] == 0.0 || shells[n - 3] == 0.0 || shells[n - 4] == 0.0) continue;
    const double q0 = shells[n - 1] / shells[n - 2];
    const double q1 = shells[n - 2] / shells[n - 3];
    const double q2 = shells[n - 3] / shells[n - 4];
    const double dq = std::max(std::fabs(q0 - q1), std::fabs(q1 - q2));
    const bool inside = hi <= extrapolate_within;

    if (inside && j >= 8 && q0 >= 1.0 - 1e-6 && dq <= 1e-3 * q0) {
      out.status = QuadStatus::divergent;
      out.value = std::numeric_limits<double>::infinity();
      return out;
    }
    if (q0 <= 0.0 || q0 >= 1.0 - 1e-6) continue;
    const double tail = shells[n - 1] * q0 / (1.0 - q0);
    // ratios drift toward their limit; bound the drift's effect on the whole tail
    const double rel_shell = shell.error / std::fabs(shell.value);
    const double tail_err = std::fabs(tail) * (4.0 * dq / ((1.0 - q0) * (1.0 - q0)) + 4.0 * rel_shell / (1.0 - q0) + 1e-12);
    const double target = 0.1 * rel_tol * std::fabs(out.value + tail);
    if (inside && tail_err <= target) {
      out.value += tail;
      out.error += tail_err;
      return out;
    }
    // negligible remainder even without trusting the exact ratio
    if (q0 <= 0.5 && dq <= 0.05 && 2.0 * std::fabs(tail) <= 0.01 * rel_tol * std::fabs(out.value)) {
      out.error += 2.0 * std::fabs(tail);
      return out;
    }
  }
  out.status = QuadStatus::not_converged;
  return out;
}

LineResult integrate_pieces(const Integrand1D& f, double a, double b, std::vector<double> breakpoints,
                            const PiecePlan& plan, double rel_tol, const GaussLegendreRule& rule, Budget& budget) {
  LineResult out;
  if (!(b > a)) return out;
  std::vector<double> cuts{a};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double x : breakpoints)
    if (x > a && x < b && x > cuts.back()) cuts.push_back(x);
  cuts.push_back(b);

  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const bool left = i == 0 && plan.grade_first_left;
    const bool right = plan.grade_pieces_right;
    if (left && right) {
      const double mid = 0.5 * (lo + hi);
      merge(out, graded(f, lo, mid, Grade::left, rel_tol, plan.extrapolate_within, rule, budget));
      merge(out, graded(f, mid, hi, Grade::right, rel_tol, kInfinity, rule, budget));
    } else if (left) {
      merge(out, graded(f, lo, hi, Grade::left, rel_tol, plan.extrapolate_within, rule, budget));
    } else if (right) {
      merge(out, graded(f, lo, hi, Grade::right, rel_tol, kInfinity, rule, budget));
    } else {
      merge(out, adaptive(f, lo, hi, rel_tol, rule, budget));
    }
    if (out.status == QuadStatus::divergent) break;
  }
  return out;
}

}  // namespace grushin::detail
