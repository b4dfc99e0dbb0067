#pragma once

// JSON, CSV and SVG renderings of the library's result types. Rationals are
// written as canonical "p/q" strings, with a parallel 20-digit decimal where a
// reader may want to plot.

#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lsl/dimension.hpp"
#include "lsl/gallery.hpp"
#include "lsl/smoothcheck.hpp"

namespace lsl::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string hp_string(const HighPrecision& v, int digits = 20) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

inline std::string dbl(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline Json params_json(const Params& p) {
  return Json{{"k", p.k.value()}, {"b", p.b}, {"m", p.m}, {"beta", to_string(p.beta)}};
}

inline Json envelope(const Params* p, Json results) {
  Json out;
  out["params"] = p ? params_json(*p) : Json(nullptr);
  out["results"] = std::move(results);
  out["tool_version"] = kToolVersion;
  return out;
}

inline Json params_results(const Params& p) {
  return Json{{"m", p.m},
              {"ratio", to_string(p.ratio())},
              {"range_max", to_string(p.range_max())},
              {"range_max_decimal", to_decimal(p.range_max())},
              {"dimension_log_m", hp_string(closed_form_dimension(p.b, p.beta))},
              {"dimension_log_2b_plus_1", hp_string(closed_form_dimension_2b_plus_1(p.b, p.beta))}};
}

inline Json eval_json(const EvalResult& r) {
  return Json{{"value", to_string(r.value)},
              {"error_bound", to_string(r.error_bound)},
              {"status", to_string(r.status)},
              {"value_decimal", to_decimal(r.value)},
              {"error_bound_decimal", to_decimal(r.error_bound)}};
}

inline void sample_csv(std::ostream& os, const Params& p, long points, int depth) {
  if (points < 2) throw ValidationError("sample needs at least 2 points");
  os << "x,value,error_bound,status\n";
  for (long i = 0; i < points; ++i) {
    Rational x(i, points - 1);
    x.canonicalize();
    const EvalResult r = evaluate(p, x, depth);
    os << to_string(x) << ',' << to_string(r.value) << ',' << to_string(r.error_bound) << ',' << to_string(r.status)
       << '\n';
  }
}

inline void count_curve_csv(std::ostream& os, const CountCurve& curve) {
  os << "scale,log_inv_scale,count\n";
  for (const auto& pt : curve) os << to_string(pt.scale) << ',' << dbl(-log(pt.scale)) << ',' << pt.count << '\n';
}

inline Json dim_json(const Params& p, const DimensionEstimate& est, Ladder ladder) {
  Json curve = Json::array();
  for (const auto& pt : est.curve)
    curve.push_back(Json{{"scale", to_string(pt.scale)}, {"scale_decimal", to_decimal(pt.scale)}, {"count", pt.count}});
  return Json{{"ladder", ladder == Ladder::Natural ? "natural" : "dyadic"},
              {"fit",
               {{"slope", est.fit.slope},
                {"intercept", est.fit.intercept},
                {"residual", est.fit.residual},
                {"window", {est.fit.window.first, est.fit.window.last}}}},
              {"closed_form_log_m", hp_string(closed_form_dimension(p.b, p.beta))},
              {"closed_form_log_2b_plus_1", hp_string(closed_form_dimension_2b_plus_1(p.b, p.beta))},
              {"curve", curve}};
}

inline void preimage_csv(std::ostream& os, const PreimageCover& cover) {
  os << "lo,hi,kind,level\n";
  for (const auto& pc : cover.pieces)
    os << to_string(pc.span.lo) << ',' << to_string(pc.span.hi) << ',' << to_string(pc.kind) << ',' << pc.level
       << '\n';
}

inline Json sup_json(const SupValue& s) {
  return Json{{"scale", to_string(s.scale)},
              {"normalized_lo", to_string(s.normalized.lo)},
              {"normalized_hi", to_string(s.normalized.hi)},
              {"exact", s.exact()},
              {"sup_decimal", to_decimal(Rational((s.lower() + s.upper()) / 2))}};
}

inline Json sup_scan_json(const SupScan& scan) {
  Json rows = Json::array();
  for (const auto& r : scan.rows) {
    Json row{{"level", r.level}, {"sup", sup_json(r.sup)}};
    row["ratio"] = r.ratio ? Json(to_string(*r.ratio)) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  return Json{{"order", scan.order}, {"rows", rows}};
}

inline Json quotient_scan_json(const QuotientScan& scan) {
  Json rows = Json::array();
  for (const auto& r : scan.rows)
    rows.push_back(Json{{"level", r.level},
                        {"probe", to_string(r.probe)},
                        {"quotient", to_string(r.quotient)},
                        {"quotient_decimal", to_decimal(r.quotient)},
                        {"bound", to_string(r.bound)},
                        {"bound_decimal", to_decimal(r.bound)},
                        {"within_bound", r.within_bound}});
  return Json{{"endpoint", to_string(scan.endpoint)},
              {"side", to_string(scan.side)},
              {"order", scan.order},
              {"growth_rate", scan.growth_rate},
              {"trending_to_zero", scan.trending_to_zero},
              {"rows", rows}};
}

inline Json levelset_json(const LevelSetReport& rep) {
  Json values = Json::array();
  for (const auto& v : rep.values) {
    Json pre = Json::array();
    for (const auto& iv : v.preimage.intervals()) pre.push_back({to_string(iv.lo), to_string(iv.hi)});
    values.push_back(Json{{"value", to_string(v.value)},
                          {"preimage", pre},
                          {"interval_count", v.interval_count},
                          {"total_length", to_string(v.total_length)},
                          {"contains_interval", v.contains_interval}});
  }
  Json out{{"function", to_string(rep.fn)}, {"alpha", to_string(rep.alpha)}, {"values", values}};
  out["value_range"] =
      rep.value_range ? Json{to_string(rep.value_range->lo), to_string(rep.value_range->hi)} : Json(nullptr);
  out["accumulation_point"] = rep.accumulation_point ? Json(to_string(*rep.accumulation_point)) : Json(nullptr);
  return out;
}

// SVG 1.1 plot of f: curve cells sampled exactly, boxes at the plot depth drawn
// as rectangles, and the boxes of the first two levels outlined.
inline void plot_svg(std::ostream& os, const Params& p, int depth, int samples_per_curve = 24,
                     std::uint64_t budget = kDefaultBudget) {
  if (depth < 1) throw ValidationError("plot depth must be >= 1");
  detail::check_budget(ipow(Integer(p.b), static_cast<unsigned long>(depth)), budget, "plot");
  const double W = 800, H = 500, pad = 20;
  const double ymax = to_double(p.range_max()) * 1.05;
  auto px = [&](const Rational& x) { return pad + to_double(x) * (W - 2 * pad); };
  auto py = [&](const Rational& y) { return H - pad - to_double(y) / ymax * (H - 2 * pad); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };

  std::ostringstream outlines, caps, curves;
  struct Box {
    Rational left, floor;
    int level;  // 0 for the unit box
  };
  std::vector<Box> stack{{Rational(0), Rational(0), 0}};
  std::vector<Box> ordered;
  // Depth-first in x order.
  while (!stack.empty()) {
    Box box = stack.back();
    stack.pop_back();
    const int level = box.level + 1;
    const Rational w(1, ipow(Integer(p.m), static_cast<unsigned long>(level)));
    const Rational hgt = pow(p.ratio(), static_cast<unsigned long>(level));
    std::vector<Box> children;
    for (long i = 0; i < p.m; ++i) {
      const Cell c = cell_at(p, i);
      const Rational left = box.left + Rational(i) * w;
      if (c.is_box()) {
        const Rational floor = box.floor + c.y_offset * pow(p.ratio(), static_cast<unsigned long>(level - 1));
        if (level <= 2)
          outlines << "<rect x=\"" << num(px(left)) << "\" y=\"" << num(py(floor + hgt)) << "\" width=\""
                   << num(px(left + w) - px(left)) << "\" height=\"" << num(py(floor) - py(floor + hgt))
                   << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.5\"/>\n";
        if (level == depth) {
          caps << "<rect x=\"" << num(px(left)) << "\" y=\"" << num(py(floor + hgt)) << "\" width=\""
               << num(px(left + w) - px(left)) << "\" height=\"" << num(py(floor) - py(floor + hgt))
               << "\" fill=\"#cfd8ea\" stroke=\"none\"/>\n";
        } else {
          children.push_back({left, floor, level});
        }
        continue;
      }
      const CurveSpec spec = curve_spec(p, c.kind, level);
      curves << "<polyline fill=\"none\" stroke=\"#1f4fbf\" stroke-width=\"1\" points=\"";
      for (int s = 0; s <= samples_per_curve; ++s) {
        const Rational local = w * make_rational(s, samples_per_curve);
        Rational y = box.floor + curve_eval(spec, local);
        if (c.kind == CellKind::GCurve) y += Rational(c.j) * spec.amplitude;
        curves << (s ? " " : "") << num(px(left + local)) << ',' << num(py(y));
      }
      curves << "\"/>\n";
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
     << "<title>f for k=" << p.k.value() << " b=" << p.b << " beta=" << to_string(p.beta) << " depth=" << depth
     << "</title>\n"
     << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad << "\" height=\"" << H - 2 * pad
     << "\" fill=\"white\" stroke=\"black\" stroke-width=\"0.5\"/>\n"
     << caps.str() << outlines.str() << curves.str() << "</svg>\n";
}

}  // namespace lsl::report
