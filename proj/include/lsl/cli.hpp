#pragma once

// Command-line front end. run() is the whole program so tests can drive it
// in-process. Parameters resolve as: flags > LSL_* environment > --config file.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lsl/report.hpp"

namespace lsl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitCapacity = 2;

namespace detail {

// key=value lines; '#' starts a comment.
inline std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config line without '=': " + line);
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

inline std::pair<int, int> parse_levels(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ValidationError("levels must look like A..B, got '" + text + "'");
  }
}

inline std::vector<long> parse_digits(const std::string& text) {
  std::vector<long> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("address digits must be comma-separated integers, got '" + text + "'");
    }
  }
  return out;
}

// Writes to --out when given, otherwise to the command's stdout.
inline void emit(std::ostream& out, const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  body(f);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explore a C^k function whose level sets concentrate on a Cantor set"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string k_text, b_text, beta_text, config_path;
  std::uint64_t budget = kDefaultBudget;
  auto* k_opt = app.add_option("--k", k_text, "smoothness order k (default 1)");
  auto* b_opt = app.add_option("--b", b_text, "boxes per level b >= 3 (default 5)");
  auto* beta_opt = app.add_option("--beta", beta_text, "vertical factor beta in (0,1) as p/q (default 1/2)");
  app.add_option("--config", config_path, "key=value file with k, b, beta");
  app.add_option("--budget", budget, "maximum pieces/rows a command may generate")->capture_default_str();

  auto* params_cmd = app.add_subcommand("params", "validate parameters and print derived values");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate f or a derivative at a rational x");
  std::string x_text;
  int depth = 8, order = 0;
  eval_cmd->add_option("--x", x_text, "point p/q in [0,1]")->required();
  eval_cmd->add_option("--depth", depth, "maximum recursion depth")->capture_default_str();
  eval_cmd->add_option("--order", order, "derivative order j (0 = value)")->capture_default_str();

  auto* sample_cmd = app.add_subcommand("sample", "CSV of f on an even grid");
  long points = 101;
  std::string out_path;
  sample_cmd->add_option("--points", points, "grid points")->capture_default_str();
  sample_cmd->add_option("--depth", depth, "maximum recursion depth")->capture_default_str();
  sample_cmd->add_option("--out", out_path, "output CSV path (stdout if omitted)");

  auto* plot_cmd = app.add_subcommand("plot", "SVG plot of f");
  int plot_depth = 3;
  plot_cmd->add_option("--depth", plot_depth, "levels drawn before boxes are capped")->capture_default_str();
  plot_cmd->add_option("--out", out_path, "output SVG path (stdout if omitted)");

  auto* dim_cmd = app.add_subcommand("dim", "box-counting dimension of the value Cantor set");
  int max_depth = 5;
  std::string ladder_text = "natural", csv_path;
  dim_cmd->add_option("--max-depth", max_depth, "cover depth")->capture_default_str();
  dim_cmd->add_option("--ladder", ladder_text, "scale ladder")
      ->check(CLI::IsMember({"natural", "dyadic"}))
      ->capture_default_str();
  dim_cmd->add_option("--csv", csv_path, "write the count curve CSV here");

  auto* pre_cmd = app.add_subcommand("preimage", "cover of the preimage of a value in the Cantor set");
  std::string address_text, repeat_text;
  bool crossings = false;
  pre_cmd->add_option("--address", address_text, "range digits d1,d2,... (tail of zeros)")->required();
  pre_cmd->add_option("--repeat", repeat_text, "digits repeated forever after the address");
  pre_cmd->add_option("--depth", depth, "cover depth")->capture_default_str();
  pre_cmd->add_flag("--include-crossings", crossings, "add brackets around monotone-curve crossings");
  pre_cmd->add_option("--out", out_path, "output CSV path (stdout if omitted)");

  auto* smooth_cmd = app.add_subcommand("smooth", "derivative sup scans and endpoint quotient scans");
  std::string levels_text, endpoint_text;
  int smooth_order = 1;
  smooth_cmd->add_option("--order", smooth_order, "derivative order j")->capture_default_str();
  smooth_cmd->add_option("--levels", levels_text, "level range A..B (default 1..6, or 1..8 with --endpoint)");
  smooth_cmd->add_option("--endpoint", endpoint_text, "box endpoint p/q for a quotient scan");

  auto* gallery_cmd = app.add_subcommand("gallery", "reference functions and their level sets");
  std::string fn_text, alpha_text;
  unsigned long count = 8;
  gallery_cmd->add_option("--fn", fn_text, "parabola | constant | staircase")->required();
  gallery_cmd->add_option("--x", x_text, "evaluate at p/q");
  gallery_cmd->add_option("--alpha", alpha_text, "level-set report for dimension threshold alpha");
  gallery_cmd->add_option("--count", count, "plateau values listed for staircase")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    std::map<std::string, std::string> config;
    if (!config_path.empty()) config = detail::read_config(config_path);
    auto resolve = [&](CLI::Option* opt, const std::string& flag_value, const char* env, const char* key,
                       const char* fallback) -> std::string {
      if (opt->count() > 0) return flag_value;
      if (const char* v = std::getenv(env); v && *v) return v;
      if (auto it = config.find(key); it != config.end()) return it->second;
      return fallback;
    };
    auto to_int = [](const std::string& s, const char* what) -> long {
      try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      } catch (const std::exception&) {
        throw ValidationError(std::string(what) + " must be an integer, got '" + s + "'");
      }
    };
    auto params = [&]() {
      const long k = to_int(resolve(k_opt, k_text, "LSL_K", "k", "1"), "k");
      const long b = to_int(resolve(b_opt, b_text, "LSL_B", "b", "5"), "b");
      const Rational beta = parse_rational(resolve(beta_opt, beta_text, "LSL_BETA", "beta", "1/2"));
      return validate_params(static_cast<int>(k), b, beta);
    };
    using report::envelope;
    using report::Json;

    if (*params_cmd) {
      const Params p = params();
      out << envelope(&p, report::params_results(p)).dump(2) << '\n';
    } else if (*eval_cmd) {
      const Params p = params();
      const Rational x = parse_rational(x_text);
      const EvalResult r = order == 0 ? evaluate(p, x, depth) : derivative(p, x, order, depth);
      Json res = report::eval_json(r);
      res["x"] = to_string(x);
      res["order"] = order;
      out << envelope(&p, res).dump(2) << '\n';
    } else if (*sample_cmd) {
      const Params p = params();
      detail::emit(out, out_path, [&](std::ostream& os) { report::sample_csv(os, p, points, depth); });
    } else if (*plot_cmd) {
      const Params p = params();
      detail::emit(out, out_path, [&](std::ostream& os) { report::plot_svg(os, p, plot_depth, 24, budget); });
    } else if (*dim_cmd) {
      const Params p = params();
      const Ladder ladder = ladder_text == "dyadic" ? Ladder::Dyadic : Ladder::Natural;
      const DimensionEstimate est = estimate_s_dimension(p, max_depth, ladder, budget);
      if (!csv_path.empty()) detail::emit(out, csv_path, [&](std::ostream& os) { report::count_curve_csv(os, est.curve); });
      out << envelope(&p, report::dim_json(p, est, ladder)).dump(2) << '\n';
    } else if (*pre_cmd) {
      const Params p = params();
      const RangeAddress addr(detail::parse_digits(address_text), detail::parse_digits(repeat_text));
      const PreimageCover cover = preimage_cover(p, addr, depth, crossings, budget);
      detail::emit(out, out_path, [&](std::ostream& os) { report::preimage_csv(os, cover); });
    } else if (*smooth_cmd) {
      const Params p = params();
      if (endpoint_text.empty()) {
        const auto [lo, hi] = detail::parse_levels(levels_text.empty() ? "1..6" : levels_text);
        out << envelope(&p, report::sup_scan_json(sup_scan(p, smooth_order, lo, hi))).dump(2) << '\n';
      } else {
        const BoxEndpoint e = endpoint_of(p, parse_rational(endpoint_text));
        const auto [lo, hi] = detail::parse_levels(
            levels_text.empty() ? std::to_string(e.level() + 1) + ".." + std::to_string(e.level() + 8) : levels_text);
        out << envelope(&p, report::quotient_scan_json(endpoint_quotient_scan(p, e, smooth_order, lo, hi))).dump(2)
            << '\n';
      }
    } else if (*gallery_cmd) {
      const GalleryFn fn = parse_gallery_fn(fn_text);
      Json res{{"function", to_string(fn)}};
      if (!x_text.empty()) {
        const Rational x = parse_rational(x_text);
        res["x"] = to_string(x);
        res["value"] = to_string(gallery_eval(fn, x));
      }
      if (!alpha_text.empty()) res["levelset"] = report::levelset_json(gallery_levelset(fn, parse_rational(alpha_text), count));
      if (x_text.empty() && alpha_text.empty())
        res["levelset"] = report::levelset_json(gallery_levelset(fn, Rational(1), count));
      out << envelope(nullptr, res).dump(2) << '\n';
    }
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace lsl::cli
