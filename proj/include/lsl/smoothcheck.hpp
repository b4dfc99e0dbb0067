#pragma once

// Numerical evidence for the smoothness of f: exact finite differences against
// analytic derivatives, per-level derivative suprema, and difference quotients
// at box endpoints. Everything here reports measurements; nothing asserts that
// f is C^k.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "lsl/construction.hpp"

namespace lsl {

struct FdEstimate {
  Rational step;
  std::optional<Rational> central;   // order-j central difference
  std::optional<Rational> forward;   // (f(x+h) - f(x)) / h, order 1 only
  std::optional<Rational> backward;  // (f(x) - f(x-h)) / h, order 1 only
  bool exact_inputs;                 // every f sample was Exact
};

struct FDReport {
  Rational x;
  int order;
  bool resolved;                  // x lies on a curve piece within the probe depth
  std::optional<Rational> analytic;
  std::vector<FdEstimate> estimates;
  std::optional<double> best_abs_error;

  // Relative agreement (absolute when the analytic value is 0).
  bool agrees(double tol) const {
    if (!analytic || !best_abs_error) return false;
    const double scale = std::max(std::abs(to_double(*analytic)), analytic == Rational(0) ? 1.0 : 0.0);
    return *best_abs_error <= tol * scale;
  }
};

inline constexpr int kProbeExtraDepth = 8;

// Steps 2^-8 .. 2^-20 times the width of the curve piece containing x (or of
// a level-`depth` cell when x is not on a curve).
inline std::vector<Rational> default_step_ladder(const Params& p, const Rational& x, int depth) {
  const PiecePath path = locate(p, x, depth);
  const int level = path.resolved() ? path.curve()->level : depth;
  const Rational width(1, ipow(Integer(p.m), static_cast<unsigned long>(level)));
  std::vector<Rational> out;
  for (int q = 8; q <= 20; ++q) out.push_back(width / ipow(Integer(2), static_cast<unsigned long>(q)));
  return out;
}

inline FDReport analytic_vs_fd(const Params& p, const Rational& x, int order, const std::vector<Rational>& steps,
                               int probe_depth) {
  if (order < 1 || order > p.k.value())
    throw ValidationError("FD order must lie in [1, k=" + std::to_string(p.k.value()) + "]");
  FDReport rep{x, order, false, std::nullopt, {}, std::nullopt};
  const PiecePath path = locate(p, x, probe_depth);
  rep.resolved = path.resolved();
  if (rep.resolved) rep.analytic = derivative(p, x, order, probe_depth).value;

  const EvalResult fx = evaluate(p, x, probe_depth);
  for (const auto& h : steps) {
    FdEstimate est{h, std::nullopt, std::nullopt, std::nullopt, fx.status == EvalStatus::Exact};
    auto sample = [&](const Rational& at) -> std::optional<Rational> {
      if (at < 0 || at > 1) return std::nullopt;
      const EvalResult r = evaluate(p, at, probe_depth);
      if (r.status != EvalStatus::Exact) est.exact_inputs = false;
      return r.value;
    };
    // sum_i (-1)^i binom(j,i) f(x + (j/2 - i) h) / h^j
    Rational acc(0);
    bool ok = true;
    for (int i = 0; i <= order && ok; ++i) {
      const Rational shift = Rational(make_rational(order, 2) - i) * h;
      const auto v = sample(x + shift);
      if (!v) {
        ok = false;
        break;
      }
      const Rational term = Rational(binomial(static_cast<unsigned long>(order), static_cast<unsigned long>(i))) * *v;
      acc += (i % 2 == 0) ? term : Rational(-term);
    }
    if (ok) est.central = acc / pow(h, static_cast<unsigned long>(order));
    if (order == 1) {
      if (auto v = sample(x + h)) est.forward = (*v - fx.value) / h;
      if (auto v = sample(x - h)) est.backward = (fx.value - *v) / h;
    }
    if (rep.analytic && est.central) {
      const double err = std::abs(to_double(Rational(*est.central - *rep.analytic)));
      rep.best_abs_error = rep.best_abs_error ? std::min(*rep.best_abs_error, err) : err;
    }
    rep.estimates.push_back(std::move(est));
  }
  return rep;
}

inline FDReport analytic_vs_fd(const Params& p, const Rational& x, int order) {
  const int depth = kProbeExtraDepth;
  return analytic_vs_fd(p, x, order, default_step_ladder(p, x, depth), depth);
}

// Exact supremum of |f^(j)| over the level-n curve pieces, 1 <= j <= 2k+1.
inline SupValue level_sup(const Params& p, int order, int level) {
  if (order < 1 || order > static_cast<int>(p.k.degree()))
    throw ValidationError("level_sup order must lie in [1, 2k+1]");
  if (level < 1) throw ValidationError("level must be >= 1");
  return level_curve_sup(p, order, level);
}

// beta * m^(j-1): the exact per-level growth of the j-th derivative suprema.
inline Rational sup_growth(const Params& p, int order) {
  return p.beta * ipow(Integer(p.m), static_cast<unsigned long>(order - 1));
}

struct SupScanRow {
  int level;
  SupValue sup;
  std::optional<Rational> ratio;  // exact sup(level) / sup(level - 1)
};

struct SupScan {
  int order;
  std::vector<SupScanRow> rows;
};

inline SupScan sup_scan(const Params& p, int order, int first_level, int last_level) {
  if (first_level < 1 || last_level < first_level) throw ValidationError("sup scan needs 1 <= first <= last");
  SupScan scan{order, {}};
  for (int n = first_level; n <= last_level; ++n) {
    SupScanRow row{n, level_sup(p, order, n), std::nullopt};
    if (!scan.rows.empty()) row.ratio = sup_ratio(row.sup, scan.rows.back().sup);
    scan.rows.push_back(std::move(row));
  }
  return scan;
}

enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

// Left or right endpoint of the box reached by a chain of box digits; the empty
// chain is the unit box itself.
struct BoxEndpoint {
  std::vector<BoxDigit> chain;
  Side side;

  int level() const { return static_cast<int>(chain.size()); }

  Rational x(const Params& p) const {
    Rational left(0), width(1);
    for (const auto& d : chain) {
      width /= p.m;
      left += Rational(d.cell_index(p)) * width;
    }
    return side == Side::Left ? left : Rational(left + width);
  }

  // Value of f at the endpoint: the box floor, since f(0) = f(1) = 0.
  Rational floor(const Params& p) const {
    Rational v(0), scale(1);
    for (const auto& d : chain) {
      scale *= p.ratio();
      v += Rational(d.offset_digit()) * scale;
    }
    return v;
  }
};

// Finds a box whose left or right end is x, descending at most max_level levels.
inline BoxEndpoint endpoint_of(const Params& p, const Rational& x, int max_level = 32) {
  if (x < 0 || x > 1) throw DomainError("endpoint " + to_string(x) + " outside [0,1]");
  BoxEndpoint e{{}, Side::Left};
  Rational rel = x;
  for (int level = 0; level <= max_level; ++level) {
    if (rel == 0) return e;
    if (rel == 1) {
      e.side = Side::Right;
      return e;
    }
    const Rational scaled = rel * p.m;
    const Integer fl = floor(scaled);
    if (scaled == Rational(fl)) {
      const long i = fl.get_si();
      const Cell right = cell_at(p, i);
      if (right.is_box()) {
        e.chain.push_back({right.kind, right.j});
        return e;
      }
      const Cell left = cell_at(p, i - 1);
      if (left.is_box()) {
        e.chain.push_back({left.kind, left.j});
        e.side = Side::Right;
        return e;
      }
    }
    const Cell c = cell_of(p, rel);
    if (!c.is_box()) break;
    e.chain.push_back({c.kind, c.j});
    rel = scaled - c.index;
  }
  throw ValidationError(to_string(x) + " is not a box endpoint within " + std::to_string(max_level) + " levels");
}

struct QuotientRow {
  int level;          // N: level of the curve piece the probe point sits on
  Rational probe;     // e_N
  Rational quotient;  // |f^(j-1)(e) - f^(j-1)(e_N)| / |e - e_N|
  Rational bound;     // beta^(N-1) m for j = 1; beta^N C(k, j) otherwise
  bool within_bound;
};

struct QuotientScan {
  Rational endpoint;
  Side side;
  int order;
  std::vector<QuotientRow> rows;
  double growth_rate;  // geometric mean of successive quotient ratios
  bool trending_to_zero;
};

// C(k, j) for j >= 2: the level-1 supremum of |f^(j-1)| per unit of the level-1
// box height beta/m, i.e. the constant obtained if derivative suprema only
// carried the (beta/m)^N height factor.
inline Rational quotient_constant(const Params& p, int order) {
  return level_curve_sup(p, order - 1, 1).upper() / p.ratio();
}

inline QuotientScan endpoint_quotient_scan(const Params& p, const BoxEndpoint& e, int order, int first_level,
                                           int last_level) {
  // The quotient of order j differences f^(j-1), which exists up to j = k+1.
  if (order < 1 || order > p.k.value() + 1)
    throw ValidationError("quotient order must lie in [1, k+1]");
  if (first_level <= e.level() || last_level < first_level)
    throw ValidationError("quotient levels must exceed the endpoint's box level");
  const Rational ex = e.x(p);
  const Rational at_e = order == 1 ? e.floor(p) : Rational(0);
  QuotientScan scan{ex, e.side, order, {}, 0.0, false};
  const Rational c_kj = order >= 2 ? quotient_constant(p, order) : Rational(0);
  for (int n = first_level; n <= last_level; ++n) {
    const Rational offset = Rational(3, 2) / ipow(Integer(p.m), static_cast<unsigned long>(n));
    const Rational probe = e.side == Side::Left ? Rational(ex + offset) : Rational(ex - offset);
    const Rational val = order == 1 ? evaluate(p, probe, n).value : derivative(p, probe, order - 1, n).value;
    const Rational q = abs(Rational(val - at_e)) / offset;
    const Rational bound = order == 1 ? Rational(pow(p.beta, static_cast<unsigned long>(n - 1)) * p.m)
                                      : Rational(pow(p.beta, static_cast<unsigned long>(n)) * c_kj);
    scan.rows.push_back({n, probe, q, bound, q <= bound});
  }
  double log_sum = 0;
  int steps = 0;
  bool degenerate = false;
  for (std::size_t i = 1; i < scan.rows.size(); ++i) {
    if (scan.rows[i - 1].quotient == 0 || scan.rows[i].quotient == 0) {
      degenerate = true;
      continue;
    }
    log_sum += log(Rational(scan.rows[i].quotient / scan.rows[i - 1].quotient));
    ++steps;
  }
  if (steps > 0) {
    scan.growth_rate = std::exp(log_sum / steps);
    scan.trending_to_zero = scan.growth_rate < 1;
  } else {
    // Identically zero quotients (flat side) trend to zero trivially.
    scan.growth_rate = 0;
    scan.trending_to_zero = degenerate || scan.rows.size() <= 1;
  }
  return scan;
}

struct OrderVerdict {
  int order;
  Rational sup_growth;   // beta * m^(j-1)
  bool sups_vanish;      // sup_growth < 1
  bool junctions_flat;   // every junction's one-sided j-th derivatives are 0
  bool fd_agrees;        // FD spot checks within tolerance
};

struct CkVerdict {
  bool continuous;       // junction table values agree on both sides
  int junction_depth;
  std::vector<OrderVerdict> orders;
};

// FD probe points: the middle of the rising connector at levels 1 and 2 and a
// point on the moving half of the descending connector.
inline std::vector<Rational> fd_spot_points(const Params& p) {
  const Rational m(p.m);
  return {Rational(Rational(3, 2) / m), Rational(Rational(3, 2) / (m * m)),
          Rational((Rational(2 * p.b - 3) + Rational(1, 4)) / m)};
}

inline CkVerdict ck_verdict(const Params& p, int junction_depth = 2, double fd_tol = 1e-6) {
  CkVerdict v{true, junction_depth, {}};
  const auto table = junction_table(p, junction_depth);
  for (const auto& row : table) v.continuous = v.continuous && row.continuous();
  for (int j = 1; j <= p.k.value(); ++j) {
    OrderVerdict o{j, sup_growth(p, j), false, true, true};
    o.sups_vanish = o.sup_growth < 1;
    for (const auto& row : table) {
      const auto& l = row.left_derivs[static_cast<std::size_t>(j - 1)];
      const auto& r = row.right_derivs[static_cast<std::size_t>(j - 1)];
      if (!l || !r || *l != 0 || *r != 0) o.junctions_flat = false;
    }
    for (const auto& x : fd_spot_points(p)) o.fd_agrees = o.fd_agrees && analytic_vs_fd(p, x, j).agrees(fd_tol);
    v.orders.push_back(o);
  }
  return v;
}

}  // namespace lsl
