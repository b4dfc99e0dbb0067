#pragma once

// The self-similar C^k function f on [0,1]. At every level the current box is
// split into m = 2b-1 cells of equal width:
//
//   cell 2j       DiagonalBox(j), j = 0..b-2, sits j*beta/m above the box floor
//   cell 2j+1     GCurve(j),      j = 0..b-3, rises beta/m from j*beta/m
//   cell 2b-3     HCurve,         drops (b-2)*beta/m to 0, then stays flat
//   cell 2b-2     FinalBox,       on the floor
//
// and f restricted to a box is the box floor plus (beta/m) f(m x - cell).

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lsl/curvekit.hpp"
#include "lsl/error.hpp"
#include "lsl/rational.hpp"

namespace lsl {

struct Params {
  SmoothnessOrder k;
  long b;
  long m;
  Rational beta;

  // beta / m, the vertical shrink factor per level.
  Rational ratio() const { return beta / m; }
  // Largest value f attains: (b-2) beta / (m - beta).
  Rational range_max() const { return Rational(b - 2) * beta / (Rational(m) - beta); }
};

inline Params validate_params(int k, long b, const Rational& beta, int max_order = kDefaultMaxOrder) {
  if (b < 3) throw ValidationError("b must be >= 3 so the descending connector has positive height, got " + std::to_string(b));
  if (!(beta > 0 && beta < 1)) throw ValidationError("beta must lie in (0,1), got " + to_string(beta));
  Rational canon(beta);
  canon.canonicalize();
  return Params{SmoothnessOrder(k, max_order), b, 2 * b - 1, canon};
}

enum class CellKind { DiagonalBox, GCurve, HCurve, FinalBox };

inline const char* to_string(CellKind kind) {
  switch (kind) {
    case CellKind::DiagonalBox: return "DiagonalBox";
    case CellKind::GCurve: return "GCurve";
    case CellKind::HCurve: return "HCurve";
    case CellKind::FinalBox: return "FinalBox";
  }
  return "?";
}

struct Cell {
  long index;     // 0..m-1
  CellKind kind;
  long j;         // DiagonalBox / GCurve ordinal, 0 otherwise
  Rational lo;    // span [index/m, (index+1)/m] within the unit box
  Rational hi;
  Rational y_offset;  // floor height within the unit box

  bool is_box() const { return kind == CellKind::DiagonalBox || kind == CellKind::FinalBox; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

inline Cell cell_at(const Params& p, long index) {
  if (index < 0 || index >= p.m) throw DomainError("cell index out of range: " + std::to_string(index));
  Cell c{index, CellKind::FinalBox, 0, make_rational(index, p.m), make_rational(index + 1, p.m), Rational(0)};
  if (index == 2 * p.b - 2) {
    c.kind = CellKind::FinalBox;
  } else if (index == 2 * p.b - 3) {
    c.kind = CellKind::HCurve;
  } else {
    c.kind = index % 2 == 0 ? CellKind::DiagonalBox : CellKind::GCurve;
    c.j = index / 2;
    c.y_offset = Rational(c.j) * p.ratio();
  }
  return c;
}

enum class TieRule { Left, Right };

// Cell of a unit-box coordinate; shared boundaries resolve to the left cell
// unless the right rule is requested.
inline Cell cell_of(const Params& p, const Rational& x, TieRule tie = TieRule::Left) {
  if (x < 0 || x > 1) throw DomainError("x " + to_string(x) + " outside [0,1]");
  Integer idx = tie == TieRule::Left ? Integer(ceil(Rational(x * p.m)) - 1) : floor(Rational(x * p.m));
  if (idx < 0) idx = 0;
  if (idx >= p.m) idx = p.m - 1;
  return cell_at(p, idx.get_si());
}

// One step of a box chain: the box cell chosen at some level.
struct BoxDigit {
  CellKind kind;  // DiagonalBox or FinalBox
  long j;         // DiagonalBox ordinal

  long cell_index(const Params& p) const { return kind == CellKind::FinalBox ? 2 * p.b - 2 : 2 * j; }
  long offset_digit() const { return kind == CellKind::FinalBox ? 0 : j; }
  friend bool operator==(const BoxDigit&, const BoxDigit&) = default;
};

inline std::string to_string(const BoxDigit& d) {
  return d.kind == CellKind::FinalBox ? std::string("F") : "D" + std::to_string(d.j);
}

struct CurveTerminal {
  CellKind kind;  // GCurve or HCurve
  long j;
  int level;
  Rational x_local;  // in [0, m^-level]
};

struct BoxCapped {
  int level;
};

struct PiecePath {
  std::vector<BoxDigit> digits;
  std::variant<CurveTerminal, BoxCapped> terminal;
  Rational accumulated_offset;  // sum over digits of offset_digit * (beta/m)^level
  Rational x_scale;             // m^-depth of the innermost box
  Rational y_scale;             // (beta/m)^depth of the innermost box

  bool resolved() const { return std::holds_alternative<CurveTerminal>(terminal); }
  const CurveTerminal* curve() const { return std::get_if<CurveTerminal>(&terminal); }
};

inline PiecePath locate(const Params& p, const Rational& x, int max_depth, TieRule tie = TieRule::Left) {
  if (max_depth < 1) throw ValidationError("max_depth must be >= 1");
  if (x < 0 || x > 1) throw DomainError("x " + to_string(x) + " outside [0,1]");
  const Rational ratio = p.ratio();
  PiecePath path{{}, BoxCapped{max_depth}, Rational(0), Rational(1), Rational(1)};
  Rational rel = x;
  for (int level = 1; level <= max_depth; ++level) {
    const Cell c = cell_of(p, rel, tie);
    if (!c.is_box()) {
      const Rational local = (rel - c.lo) * path.x_scale;
      path.terminal = CurveTerminal{c.kind, c.j, level, local};
      return path;
    }
    const BoxDigit d{c.kind, c.j};
    path.digits.push_back(d);
    path.y_scale *= ratio;
    path.accumulated_offset += Rational(d.offset_digit()) * path.y_scale;
    path.x_scale /= p.m;
    rel = rel * p.m - c.index;
  }
  path.terminal = BoxCapped{max_depth};
  return path;
}

enum class EvalStatus { Exact, DepthCapped, Unbounded };

inline const char* to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::Exact: return "Exact";
    case EvalStatus::DepthCapped: return "DepthCapped";
    case EvalStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

// For Exact results error_bound is 0. For DepthCapped the true value lies in
// [value - error_bound, value + error_bound]. For Unbounded (derivatives whose
// per-level suprema grow) error_bound is the supremum over the next level's
// pieces, which deeper levels exceed.
struct EvalResult {
  Rational value;
  Rational error_bound;
  EvalStatus status;
};

// The connector spec for a curve cell at a given level.
inline CurveSpec curve_spec(const Params& p, CellKind kind, int level) {
  const Rational rise = pow(p.ratio(), static_cast<unsigned long>(level));
  if (kind == CellKind::GCurve) return CurveSpec{p.k, p.m, p.beta, level, CurveFamily::G, rise};
  if (kind == CellKind::HCurve) return CurveSpec{p.k, p.m, p.beta, level, CurveFamily::H, Rational(p.b - 2) * rise};
  throw ValidationError("curve_spec: cell is not a curve");
}

inline Rational curve_value(const Params& p, const PiecePath& path, int order) {
  const CurveTerminal& t = *path.curve();
  const CurveSpec spec = curve_spec(p, t.kind, t.level);
  Rational v = curve_eval(spec, t.x_local, order);
  if (order == 0) {
    v += path.accumulated_offset;
    if (t.kind == CellKind::GCurve) v += Rational(t.j) * spec.amplitude;
  }
  return v;
}

inline EvalResult evaluate_path(const Params& p, const PiecePath& path) {
  if (path.resolved()) return {curve_value(p, path, 0), Rational(0), EvalStatus::Exact};
  const Rational half = path.y_scale / 2;
  return {path.accumulated_offset + half, half, EvalStatus::DepthCapped};
}

// A depth-capped x on a cell boundary is retried with the right tie rule: the
// neighbouring curve cell then gives the (continuous) value exactly.
inline EvalResult evaluate(const Params& p, const Rational& x, int max_depth) {
  EvalResult left = evaluate_path(p, locate(p, x, max_depth));
  if (left.status == EvalStatus::Exact) return left;
  EvalResult right = evaluate_path(p, locate(p, x, max_depth, TieRule::Right));
  return right.status == EvalStatus::Exact ? right : left;
}

// Exact supremum of |f^(j)| over all curve pieces of a level: the descending
// connector dominates (factor 2^j (b-2) over the rising one).
inline SupValue level_curve_sup(const Params& p, int order, int level) {
  const SupValue g = sup_abs_derivative(curve_spec(p, CellKind::GCurve, level), order);
  const SupValue h = sup_abs_derivative(curve_spec(p, CellKind::HCurve, level), order);
  return h.scale >= g.scale ? h : g;
}

inline EvalResult derivative(const Params& p, const Rational& x, int order, int max_depth) {
  if (order < 1 || order > p.k.value())
    throw ValidationError("derivative order " + std::to_string(order) + " outside [1, k=" +
                          std::to_string(p.k.value()) + "]");
  const PiecePath path = locate(p, x, max_depth);
  if (path.resolved()) return {curve_value(p, path, order), Rational(0), EvalStatus::Exact};
  // Inside a level-n box the derivative is bounded by the curve suprema of
  // levels n+1, n+2, ...; they scale by beta*m^(j-1) per level.
  const int n = static_cast<int>(path.digits.size());
  const SupValue next = level_curve_sup(p, order, n + 1);
  const Rational growth = p.beta * ipow(Integer(p.m), static_cast<unsigned long>(order - 1));
  return {Rational(0), next.upper(), growth <= 1 ? EvalStatus::DepthCapped : EvalStatus::Unbounded};
}

// One junction between adjacent cells of some box, with exact one-sided limits.
// Box sides use f(0) = f(1) = 0 (fixed points of the recursion); a box side
// derivative limit is 0 when the nested suprema shrink (beta*m^(j-1) < 1) and
// absent otherwise.
struct JunctionRow {
  Rational x;
  int level;
  CellKind left_kind;
  CellKind right_kind;
  Rational left_value;
  Rational right_value;
  std::vector<std::optional<Rational>> left_derivs;   // orders 1..k
  std::vector<std::optional<Rational>> right_derivs;

  bool continuous() const { return left_value == right_value; }
  bool flat() const {
    for (const auto* side : {&left_derivs, &right_derivs})
      for (const auto& d : *side)
        if (!d || *d != 0) return false;
    return true;
  }
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

inline std::vector<JunctionRow> junction_table(const Params& p, int depth, std::uint64_t budget = kDefaultBudget) {
  if (depth < 1) throw ValidationError("junction depth must be >= 1");
  // Rows: (m-1) * (1 + b + ... + b^(depth-1)).
  Integer rows(0);
  for (int l = 0; l < depth; ++l) rows += ipow(Integer(p.b), static_cast<unsigned long>(l));
  rows *= (p.m - 1);
  if (rows > Integer(std::to_string(budget)))
    throw CapacityError("junction table would have " + rows.get_str() + " rows, budget " + std::to_string(budget));

  const int k = p.k.value();
  const Rational ratio = p.ratio();
  std::vector<JunctionRow> out;
  out.reserve(rows.get_ui());

  struct Box {
    Rational left;
    Rational floor;
  };
  std::vector<Box> boxes{{Rational(0), Rational(0)}};
  for (int level = 1; level <= depth; ++level) {
    const Rational y_scale = pow(ratio, static_cast<unsigned long>(level));
    const Rational x_scale(1, ipow(Integer(p.m), static_cast<unsigned long>(level)));
    const Rational width = x_scale;
    auto side = [&](const Box& box, const Cell& c, bool right_end, int order) -> std::optional<Rational> {
      if (c.is_box()) {
        if (order == 0) return box.floor + c.y_offset * pow(ratio, static_cast<unsigned long>(level - 1));
        const Rational growth = p.beta * ipow(Integer(p.m), static_cast<unsigned long>(order - 1));
        if (growth < 1) return Rational(0);
        return std::nullopt;
      }
      const CurveSpec spec = curve_spec(p, c.kind, level);
      const Rational at = right_end ? width : Rational(0);
      Rational v = curve_eval(spec, at, order);
      if (order == 0) {
        v += box.floor;
        if (c.kind == CellKind::GCurve) v += Rational(c.j) * y_scale;
      }
      return v;
    };
    std::vector<Box> next;
    for (const Box& box : boxes) {
      for (long i = 1; i < p.m; ++i) {
        const Cell lc = cell_at(p, i - 1);
        const Cell rc = cell_at(p, i);
        JunctionRow row{box.left + Rational(i) * x_scale, level, lc.kind, rc.kind,
                        *side(box, lc, true, 0), *side(box, rc, false, 0), {}, {}};
        row.x.canonicalize();
        for (int j = 1; j <= k; ++j) {
          row.left_derivs.push_back(side(box, lc, true, j));
          row.right_derivs.push_back(side(box, rc, false, j));
        }
        out.push_back(std::move(row));
      }
      if (level < depth) {
        for (long i = 0; i < p.m; ++i) {
          const Cell c = cell_at(p, i);
          if (!c.is_box()) continue;
          next.push_back({box.left + Rational(i) * x_scale,
                          box.floor + c.y_offset * pow(ratio, static_cast<unsigned long>(level - 1))});
        }
      }
    }
    boxes = std::move(next);
  }
  return out;
}

}  // namespace lsl
