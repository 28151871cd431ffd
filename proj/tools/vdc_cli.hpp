#pragma once

// Command-line front end. run() maps a subcommand onto the library and
// returns the process exit status:
//   0 success, 1 domain error, 2 resource error, 3 invalid arguments.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vdc/io.hpp"
#include "vdc/vdc.hpp"

namespace vdc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::json;

class ArgumentError : public std::runtime_error {
 public:
  explicit ArgumentError(const std::string& what) : std::runtime_error(what) {}
};

inline std::vector<u64> parse_u64_list(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      if (!item.empty() && item[0] == '-') throw std::invalid_argument("negative");
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw ArgumentError("not a nonnegative integer: '" + item + "'");
    }
    if (pos != item.size()) throw ArgumentError("not a nonnegative integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("invalid JSON in " + path + ": " + e.what());
  }
}

struct Options {
  std::string output;
  unsigned workers = 1;

  // tau-table
  u64 dmax = 0, qmax = 0;
  // weights
  double delta = 0.5;
  std::optional<u64> p_minus, p_plus, l, d_exc;
  // construct / sweep
  std::string scheme_path, schedule_text, tsv_path, config_path;
  u64 grid = 1 << 12, grid_cap = u64{1} << 24;
  // gamma
  u64 n = 0, max_n = 200, max_iter = 200;
  double tol = 1e-6;
  std::string ns_text;
  // eta
  bool exact = false;
  u64 eta_grid = 0;
  // avoid / periodize
  u64 window = 0, cap = kExhaustiveWindowCap;
  std::string set_text;
  std::optional<u64> check_limit;
  // diagnostics
  std::optional<double> dg_d, dg_N, dg_Q, dg_R, dg_D1, preset_delta;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Prime cosine polynomials, gamma/eta oracles and difference-avoiding sets", "vdc"};
    app.set_version_flag("--version", kToolVersion);
    app.add_option("-o,--output", opt_.output, "Write the result to this file instead of stdout");
    app.add_option("--workers", opt_.workers, "Cap on internal worker threads (results do not depend on it)");
    app.require_subcommand(1);
    app.fallthrough();

    std::function<int()> action;
    json echo;

    auto* tau_table = app.add_subcommand("tau-table", "CSV table of tau(d, q)");
    tau_table->add_option("--dmax", opt_.dmax)->required();
    tau_table->add_option("--qmax", opt_.qmax)->required();
    tau_table->callback([&] {
      echo = {{"subcommand", "tau-table"}, {"dmax", opt_.dmax}, {"qmax", opt_.qmax}};
      action = [&] { return cmd_tau_table(); };
    });

    auto* weights = app.add_subcommand("weights", "Weight scheme and its exhaustive cancellation check (JSON)");
    weights->add_option("--delta", opt_.delta)->required();
    weights->add_option("--p-minus", opt_.p_minus);
    weights->add_option("--p-plus", opt_.p_plus);
    weights->add_option("--l", opt_.l);
    weights->add_option("--d-exc", opt_.d_exc);
    weights->callback([&] {
      echo = {{"subcommand", "weights"}, {"delta", opt_.delta}};
      if (opt_.p_minus) echo["p_minus"] = *opt_.p_minus;
      if (opt_.p_plus) echo["p_plus"] = *opt_.p_plus;
      if (opt_.l) echo["l"] = *opt_.l;
      if (opt_.d_exc) echo["d_exc"] = *opt_.d_exc;
      const int given = (opt_.p_minus ? 1 : 0) + (opt_.p_plus ? 1 : 0) + (opt_.l ? 1 : 0);
      if (given != 0 && given != 3) throw ArgumentError("--p-minus, --p-plus and --l must be given together");
      action = [&] { return cmd_weights(); };
    });

    auto* construct = app.add_subcommand("construct", "Assemble the weighted prime polynomial (JSON)");
    construct->add_option("--scheme", opt_.scheme_path, "Scheme JSON (output of 'weights' or {members:[{d,w}]})")->required();
    construct->add_option("--schedule", opt_.schedule_text, "Comma-separated N_1 < ... < N_m")->required();
    construct->add_option("--grid", opt_.grid, "Initial certification grid size");
    construct->add_option("--grid-cap", opt_.grid_cap, "Largest certification grid size");
    construct->add_option("--delta", opt_.delta, "Target delta (recorded only)");
    construct->add_option("--tsv", opt_.tsv_path, "Also write T over [0, 1/2] as TSV");
    construct->callback([&] {
      echo = {{"subcommand", "construct"}, {"scheme", opt_.scheme_path}, {"schedule", opt_.schedule_text},
              {"grid", opt_.grid},         {"grid_cap", opt_.grid_cap},  {"delta", opt_.delta}};
      action = [&] { return cmd_construct(); };
    });

    auto* sweep_cmd = app.add_subcommand("sweep", "Trend table over several constructions (CSV)");
    sweep_cmd->add_option("--config", opt_.config_path)->required();
    sweep_cmd->callback([&] {
      echo = {{"subcommand", "sweep"}, {"config", opt_.config_path}};
      action = [&] { return cmd_sweep(); };
    });

    auto* gamma = app.add_subcommand("gamma", "Certified bracket for gamma(n) (JSON)");
    gamma->add_option("--n", opt_.n)->required();
    gamma->add_option("--tol", opt_.tol);
    gamma->add_option("--max-n", opt_.max_n);
    gamma->add_option("--max-iter", opt_.max_iter);
    gamma->callback([&] {
      echo = {{"subcommand", "gamma"}, {"n", opt_.n}, {"tol", opt_.tol}, {"max_n", opt_.max_n}, {"max_iter", opt_.max_iter}};
      action = [&] { return cmd_gamma(); };
    });

    auto* gamma_sweep = app.add_subcommand("gamma-sweep", "gamma brackets for several n (CSV)");
    gamma_sweep->add_option("--ns", opt_.ns_text)->required();
    gamma_sweep->add_option("--tol", opt_.tol);
    gamma_sweep->add_option("--max-n", opt_.max_n);
    gamma_sweep->add_option("--max-iter", opt_.max_iter);
    gamma_sweep->callback([&] {
      echo = {{"subcommand", "gamma-sweep"}, {"ns", opt_.ns_text}, {"tol", opt_.tol}};
      action = [&] { return cmd_gamma_sweep(); };
    });

    auto* eta = app.add_subcommand("eta", "Heilbronn eta(n) of the shifted primes (JSON)");
    eta->add_option("--n", opt_.n)->required();
    auto* exact_flag = eta->add_flag("--exact", opt_.exact);
    eta->add_option("--grid", opt_.eta_grid)->excludes(exact_flag);
    eta->callback([&] {
      echo = {{"subcommand", "eta"}, {"n", opt_.n}};
      if (opt_.eta_grid) {
        echo["grid"] = opt_.eta_grid;
      } else {
        echo["exact"] = true;
      }
      action = [&] { return cmd_eta(); };
    });

    auto* avoid = app.add_subcommand("avoid", "Largest set in a window avoiding shifted-prime differences (JSON)");
    avoid->add_option("--window", opt_.window)->required();
    avoid->add_option("--n", opt_.n)->required();
    avoid->add_option("--cap", opt_.cap, "Largest window searched exhaustively");
    avoid->callback([&] {
      echo = {{"subcommand", "avoid"}, {"window", opt_.window}, {"n", opt_.n}, {"cap", opt_.cap}};
      action = [&] { return cmd_avoid(); };
    });

    auto* periodize_cmd = app.add_subcommand("periodize", "Periodic extension mod 2n and its avoidance check (JSON)");
    periodize_cmd->add_option("--set", opt_.set_text)->required();
    periodize_cmd->add_option("--n", opt_.n)->required();
    periodize_cmd->add_option("--check-limit", opt_.check_limit, "Largest forbidden difference checked (default n-1)");
    periodize_cmd->callback([&] {
      echo = {{"subcommand", "periodize"}, {"set", opt_.set_text}, {"n", opt_.n}};
      if (opt_.check_limit) echo["check_limit"] = *opt_.check_limit;
      action = [&] { return cmd_periodize(); };
    });

    auto* diag = app.add_subcommand("diagnostics", "Error-term shape diagnostics (JSON)");
    diag->add_option("--d", opt_.dg_d);
    diag->add_option("--N", opt_.dg_N);
    diag->add_option("--Q", opt_.dg_Q);
    diag->add_option("--R", opt_.dg_R);
    diag->add_option("--D1", opt_.dg_D1);
    diag->add_option("--preset-delta", opt_.preset_delta, "Print the asymptotic parameter choice for this delta");
    diag->callback([&] {
      echo = {{"subcommand", "diagnostics"}};
      for (auto [k, v] : {std::pair{"d", opt_.dg_d}, std::pair{"N", opt_.dg_N}, std::pair{"Q", opt_.dg_Q},
                          std::pair{"R", opt_.dg_R}, std::pair{"D1", opt_.dg_D1}, std::pair{"preset_delta", opt_.preset_delta}}) {
        if (v) echo[k] = *v;
      }
      const int given = (opt_.dg_d ? 1 : 0) + (opt_.dg_N ? 1 : 0) + (opt_.dg_Q ? 1 : 0) + (opt_.dg_R ? 1 : 0) +
                        (opt_.dg_D1 ? 1 : 0);
      if (given != 0 && given != 5) throw ArgumentError("--d, --N, --Q, --R and --D1 must be given together");
      if (given == 0 && !opt_.preset_delta) throw ArgumentError("give --d --N --Q --R --D1 and/or --preset-delta");
      action = [&] { return cmd_diagnostics(); };
    });

    try {
      app.parse(argc, argv);
    } catch (const CLI::Success& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n" << app.help();
      return 3;
    } catch (const ArgumentError& e) {
      err_ << "error: " << e.what() << "\n" << app.help();
      return 3;
    }

    echo_ = echo;
    set_workers(opt_.workers);
    start_ = std::chrono::steady_clock::now();
    try {
      return action();
    } catch (const ArgumentError& e) {
      err_ << "error: " << e.what() << '\n';
      return 3;
    } catch (const DomainError& e) {
      err_ << "domain error: " << e.what() << '\n';
      return 1;
    } catch (const ResourceError& e) {
      err_ << "resource error: " << e.what() << '\n';
      return 2;
    } catch (const nlohmann::json::exception& e) {
      err_ << "domain error: malformed input: " << e.what() << '\n';
      return 1;
    } catch (const std::bad_alloc&) {
      err_ << "resource error: out of memory\n";
      return 2;
    }
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void emit_text(const std::string& text) {
    if (opt_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(opt_.output);
    if (!f) throw ArgumentError("cannot write " + opt_.output);
    f << text;
  }

  int emit_json(json result) {
    result["tool_version"] = kToolVersion;
    result["config_echo"] = echo_;
    io::round_floats(result);
    result["wall_time_seconds"] = sig12(elapsed());
    emit_text(result.dump(2) + "\n");
    return 0;
  }

  int cmd_tau_table() {
    if (opt_.dmax == 0 || opt_.qmax == 0) throw DomainError("tau-table: --dmax and --qmax must be positive");
    if (opt_.dmax * opt_.qmax > 50'000'000) throw ResourceError("tau-table: table too large");
    std::ostringstream os;
    os << "d,q,r,tau_num,tau_den\n";
    for (u64 d = 1; d <= opt_.dmax; ++d) {
      for (u64 q = 1; q <= opt_.qmax; ++q) {
        const TauValue t = tau_value(d, q);
        os << d << ',' << q << ',' << t.r << ',' << t.sign << ',' << (t.sign == 0 ? 1 : t.den) << '\n';
      }
    }
    emit_text(os.str());
    return 0;
  }

  int cmd_weights() {
    SchemeParams p;
    if (opt_.p_minus) {
      if (!(opt_.delta > 0.0 && opt_.delta < 1.0)) throw DomainError("weights: delta must lie in (0, 1)");
      p.delta = opt_.delta;
      p.p_minus = *opt_.p_minus;
      p.p_plus = *opt_.p_plus;
      p.l = *opt_.l;
      p.d_exceptional = opt_.d_exc;
    } else {
      p = asymptotic_preset(opt_.delta, opt_.d_exc);
    }
    const WeightScheme s = build_scheme(p);
    const CancellationReport c = verify_cancellation(s, p.delta);
    return emit_json(io::to_json(s, c));
  }

  int cmd_construct() {
    ConstructionConfig cfg;
    cfg.members = io::members_from_json(read_json_file(opt_.scheme_path));
    cfg.schedule = parse_u64_list(opt_.schedule_text);
    cfg.grid_size = opt_.grid;
    cfg.grid_cap = opt_.grid_cap;
    cfg.delta_target = opt_.delta;
    const ConstructionResult r = assemble(cfg);
    if (!opt_.tsv_path.empty()) {
      std::ofstream f(opt_.tsv_path);
      if (!f) throw ArgumentError("cannot write " + opt_.tsv_path);
      io::write_grid_tsv(f, r.polynomial, r.certificate.grid_size);
    }
    return emit_json(io::to_json(r));
  }

  int cmd_sweep() {
    const json cfg = read_json_file(opt_.config_path);
    if (!cfg.contains("runs") || !cfg.at("runs").is_array() || cfg.at("runs").empty()) {
      throw DomainError("sweep: config needs a nonempty 'runs' array");
    }
    std::vector<ConstructionConfig> configs;
    for (const auto& run : cfg.at("runs")) {
      ConstructionConfig c;
      if (run.contains("scheme_file")) {
        c.members = io::members_from_json(read_json_file(run.at("scheme_file").get<std::string>()));
      } else {
        c.members = io::members_from_json(run.at("scheme"));
      }
      if (run.contains("schedule")) {
        c.schedule = run.at("schedule").get<std::vector<u64>>();
      } else {
        c.schedule = default_schedule(c.members, run.at("m").get<u64>(), run.at("ratio").get<double>(),
                                      run.at("N0").get<u64>());
      }
      c.grid_size = run.value("grid", u64{1} << 12);
      c.grid_cap = run.value("grid_cap", u64{1} << 24);
      configs.push_back(std::move(c));
    }
    const std::vector<SweepRow> rows = sweep(configs);
    std::ostringstream os;
    os << "n,a0_bound,inv_log_n,a0_bound_times_log_n\n";
    for (const auto& r : rows) {
      os << r.n << ',' << fmt12(r.a0_bound) << ',' << fmt12(r.inv_log_n) << ',' << fmt12(r.a0_log_n) << '\n';
    }
    emit_text(os.str());
    return 0;
  }

  GammaOptions gamma_options() const {
    GammaOptions g;
    g.max_n = opt_.max_n;
    g.max_iterations = opt_.max_iter;
    return g;
  }

  int cmd_gamma() { return emit_json(io::to_json(bracket_gamma(opt_.n, opt_.tol, gamma_options()))); }

  int cmd_gamma_sweep() {
    const std::vector<u64> ns = parse_u64_list(opt_.ns_text);
    if (ns.empty()) throw DomainError("gamma-sweep: --ns is empty");
    std::ostringstream os;
    os << "n,lower,upper,iterations\n";
    for (u64 n : ns) {
      const GammaBracket b = bracket_gamma(n, opt_.tol, gamma_options());
      os << n << ',' << fmt12(b.lower) << ',' << fmt12(b.upper) << ',' << b.iterations << '\n';
    }
    emit_text(os.str());
    return 0;
  }

  int cmd_eta() {
    const Spectrum spec = build_spectrum(opt_.n);
    if (opt_.eta_grid) return emit_json(io::to_json(eta_bracket(spec, opt_.eta_grid)));
    bool warned = false;
    const EtaResult r = eta_auto(spec, warned);
    if (warned) err_ << "warning: spectrum exceeds the exact budget, reporting a grid bracket\n";
    return emit_json(io::to_json(r));
  }

  int cmd_avoid() {
    const Spectrum spec = build_spectrum(opt_.n);
    return emit_json(io::to_json(max_avoiding_set(opt_.window, spec.freqs, opt_.cap)));
  }

  int cmd_periodize() {
    const std::vector<u64> set = parse_u64_list(opt_.set_text);
    const PeriodicSet b = periodize(set, opt_.n);
    const Spectrum spec = build_spectrum(opt_.n);
    const u64 limit = opt_.check_limit.value_or(opt_.n - 1);
    json j = io::to_json(b);
    j["forbidden"] = spec.freqs;
    j["verification"] = io::to_json(verify_avoidance(b, spec.freqs, limit));
    j["verification"]["check_limit"] = limit;
    j["verification_full"] = io::to_json(verify_avoidance(b, spec.freqs, opt_.n));
    j["verification_full"]["check_limit"] = opt_.n;
    return emit_json(std::move(j));
  }

  int cmd_diagnostics() {
    json j;
    j["label"] = "shape diagnostics with implied constants set to 1; not rigorous bounds";
    if (opt_.dg_d) {
      const double N = *opt_.dg_N, R = *opt_.dg_R, D1 = *opt_.dg_D1;
      const ErrorDiagnostics e = error_diagnostics(*opt_.dg_d, N, *opt_.dg_Q, R, D1);
      j["diagnostics"] = io::to_json(e);
      const char* dom = e.e1 >= e.e2 && e.e1 >= e.e3 ? "e1" : (e.e2 >= e.e3 ? "e2" : "e3");
      // D1 N/R = D1^2 (log N)^4 sqrt(R/N)  <=>  R = N (D1 (log N)^4)^(-2/3).
      const double balanced_R = N * std::pow(D1 * std::pow(std::log(N), 4), -2.0 / 3.0);
      j["crossover"] = {{"dominant", dom},
                        {"major_arc_ratio_N_over_R", N / R},
                        {"minor_arc_ratio_sqrt_R_over_N", std::sqrt(R / N)},
                        {"R_balancing_e2_and_e3_tail", balanced_R}};
    }
    if (opt_.preset_delta) {
      const double delta = *opt_.preset_delta;
      const SchemeParams p = asymptotic_preset(delta);
      const double logd = std::log(1.0 / delta);
      const double q_ind = std::exp(logd * logd);
      j["preset"] = {
          {"delta", delta},
          {"m", asymptotic_schedule_length(delta)},
          {"p_plus", p.p_plus},
          {"l", p.l},
          {"p_minus", p.p_minus},
          {"scheme_feasible", p.p_minus < p.p_plus},
          {"Q", "exp((log(1/delta))^(2+o(1)))"},
          {"Q_indicative_o1_zero", q_ind},
          {"D0", "Q^2"},
          {"D1", "Q^4"},
          {"N0", "exp(c2 (log D1)^2), c2 not computable"},
          {"N_j", "N0 * D1^(8j), j = 1..m"},
          {"R_star_j", "N0 * D1^(8j+2)"},
          {"max_frequency", "d N_m <= N0 D1^(8(4/delta+1)+1)"}};
    }
    return emit_json(std::move(j));
  }

  std::ostream& out_;
  std::ostream& err_;
  Options opt_;
  json echo_;
  std::chrono::steady_clock::time_point start_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Runner r(out, err);
  return r.run(argc, argv);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"vdc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace vdc::cli
