#include "charlift/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "charlift/oracles.hpp"
#include "charlift/suites.hpp"

namespace charlift {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

int resolve_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("CHARLIFT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

struct GroupShape {
  Family family;
  int p, q, dim;
  std::string name;
};

GroupShape shape_of(const RunConfig& cfg) {
  if (cfg.group == "upq") {
    if (cfg.p < 0 || cfg.q < 0 || cfg.p + cfg.q < 1)
      throw std::invalid_argument("upq group needs --p and --q with p+q >= 1");
    return {Family::upq, cfg.p, cfg.q, cfg.p + cfg.q,
            "u(" + std::to_string(cfg.p) + "," + std::to_string(cfg.q) + ")"};
  }
  if (cfg.group == "lift") {
    if (cfg.n < 1) throw std::invalid_argument("lift group needs --n >= 1");
    return {Family::unn1, cfg.n, cfg.n + 1, 2 * cfg.n + 1,
            "u(" + std::to_string(cfg.n) + "," + std::to_string(cfg.n + 1) + ")"};
  }
  throw std::invalid_argument("unknown --group (expected upq or lift)");
}

int coord_index(const std::string& name, int dim) {
  if (name.size() < 2 || name[0] != 'X')
    throw std::invalid_argument("coordinate names are X1..X" + std::to_string(dim));
  int k = std::atoi(name.c_str() + 1);
  if (k < 1 || k > dim)
    throw std::invalid_argument("coordinate " + name + " out of range for dimension " +
                                std::to_string(dim));
  return k;
}

cplx evaluate_character(const RunConfig& cfg, const GroupShape& gs,
                        const TorusPoint& pt) {
  if (gs.family == Family::upq)
    return theta_upq(CharacterSpec::lift(gs.p, gs.q, cfg.m, cfg.t), pt).value;
  return theta_lift_unn1(CharacterSpec::double_lift(gs.p, cfg.m, cfg.t), pt).value;
}

std::ostream& open_sink(const RunConfig& cfg, std::ofstream& file,
                        std::ostream& fallback) {
  if (cfg.out_path.empty()) return fallback;
  file.open(cfg.out_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output path " + cfg.out_path);
  return file;
}

struct CaseLine {
  std::string name;
  bool pass = false;
  bool timeout = false;
  double seconds = 0.0;
  std::string detail;
};

void emit_case(std::ostream& out, const CaseLine& c) {
  out << "{\"case\":\"" << json_escape(c.name) << "\",\"pass\":"
      << (c.pass ? "true" : "false")
      << (c.timeout ? ",\"status\":\"timeout\"" : "")
      << ",\"seconds\":" << num(c.seconds) << ",\"detail\":\""
      << json_escape(c.detail) << "\"}\n";
}

}  // namespace

int run_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const GroupShape gs = shape_of(cfg);
    if (cfg.t < 0 || cfg.t > std::min(gs.p, gs.q))
      throw std::invalid_argument("--t out of range [0, min(p,q)]");
    std::vector<double> X(gs.dim, 0.0);
    std::vector<bool> bound(gs.dim, false);
    for (const auto& [name, v] : cfg.coords) {
      int k = coord_index(name, gs.dim);
      X[k - 1] = v;
      bound[k - 1] = true;
    }
    for (int k = 0; k < gs.dim; ++k)
      if (!bound[k])
        throw std::invalid_argument("coordinate X" + std::to_string(k + 1) +
                                    " not bound (use --coords)");
    TorusPoint pt(gs.family, gs.p, gs.q, cfg.t, X);
    const cplx v = evaluate_character(cfg, gs, pt);
    const std::string chamber = chamber_id(pt);

    std::ofstream file;
    std::ostream& sink = open_sink(cfg, file, out);
    if (cfg.format == "csv") {
      for (int k = 1; k <= gs.dim; ++k) sink << "X" << k << ",";
      sink << "value_re,value_im,normalization_tag,chamber_id\n";
      for (int k = 0; k < gs.dim; ++k) sink << num(X[k]) << ",";
      sink << num(v.real()) << "," << num(v.imag())
           << ",up_to_global_constant," << chamber << "\n";
    } else {
      sink << "{\"group\":\"" << gs.name << "\",\"m\":" << cfg.m
           << ",\"t\":" << cfg.t << ",\"coords\":{";
      for (int k = 0; k < gs.dim; ++k)
        sink << (k ? "," : "") << "\"X" << k + 1 << "\":" << num(X[k]);
      sink << "},\"value_re\":" << num(v.real())
           << ",\"value_im\":" << num(v.imag())
           << ",\"normalization_tag\":\"up_to_global_constant\""
           << ",\"chamber_id\":\"" << json_escape(chamber) << "\"}\n";
    }
    return kExitOk;
  } catch (const singular_point_error& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const regularity_error& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int run_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const GroupShape gs = shape_of(cfg);
    if (cfg.sweeps.empty() || cfg.sweeps.size() > 3)
      throw std::invalid_argument("table needs between 1 and 3 --sweep ranges");
    std::vector<double> base(gs.dim, 0.0);
    std::vector<bool> bound(gs.dim, false);
    for (const auto& [name, v] : cfg.coords) {
      int k = coord_index(name, gs.dim);
      base[k - 1] = v;
      bound[k - 1] = true;
    }
    std::vector<int> sweep_idx;
    std::size_t rows = 1;
    for (const auto& s : cfg.sweeps) {
      int k = coord_index(s.coord, gs.dim);
      if (bound[k - 1])
        throw std::invalid_argument("coordinate " + s.coord + " both bound and swept");
      if (s.steps < 1) throw std::invalid_argument("sweep steps must be >= 1");
      bound[k - 1] = true;
      sweep_idx.push_back(k - 1);
      rows *= static_cast<std::size_t>(s.steps);
    }
    for (int k = 0; k < gs.dim; ++k)
      if (!bound[k])
        throw std::invalid_argument("coordinate X" + std::to_string(k + 1) +
                                    " neither bound nor swept");

    const bool csv = cfg.format == "csv";
    std::vector<std::string> lines(rows);
    const int threads = std::max(1, resolve_threads(cfg));

    auto row_values = [&](std::size_t r, std::vector<double>& X) {
      std::size_t rem = r;
      for (std::size_t s = cfg.sweeps.size(); s-- > 0;) {
        const auto& sw = cfg.sweeps[s];
        std::size_t i = rem % sw.steps;
        rem /= sw.steps;
        X[sweep_idx[s]] =
            sw.steps == 1
                ? sw.start
                : sw.start + (sw.stop - sw.start) * static_cast<double>(i) /
                                 (sw.steps - 1);
      }
    };

    auto make_row = [&](std::size_t r) {
      std::vector<double> X = base;
      row_values(r, X);
      std::string row;
      std::string status = "ok";
      cplx v = 0.0;
      try {
        TorusPoint pt(gs.family, gs.p, gs.q, cfg.t, X);
        v = evaluate_character(cfg, gs, pt);
      } catch (const singular_point_error&) {
        status = "singular";
      } catch (const regularity_error&) {
        status = "singular";
      }
      if (csv) {
        for (std::size_t s = 0; s < cfg.sweeps.size(); ++s)
          row += num(X[sweep_idx[s]]) + ",";
        if (status == "ok")
          row += num(v.real()) + "," + num(v.imag());
        else
          row += ",";
        row += "," + status + "\n";
      } else {
        row = "{";
        for (std::size_t s = 0; s < cfg.sweeps.size(); ++s)
          row += "\"" + cfg.sweeps[s].coord + "\":" + num(X[sweep_idx[s]]) + ",";
        if (status == "ok")
          row += "\"re\":" + num(v.real()) + ",\"im\":" + num(v.imag()) + ",";
        row += "\"status\":\"" + status + "\"}\n";
      }
      return row;
    };

    std::vector<std::thread> pool;
    std::vector<std::string> worker_error(threads);
    for (int tid = 0; tid < threads; ++tid)
      pool.emplace_back([&, tid] {
        try {
          for (std::size_t r = tid; r < rows; r += threads) lines[r] = make_row(r);
        } catch (const std::exception& e) {
          worker_error[tid] = e.what();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& we : worker_error)
      if (!we.empty()) throw std::runtime_error(we);

    std::ofstream file;
    std::ostream& sink = open_sink(cfg, file, out);
    if (csv) {
      for (std::size_t s = 0; s < cfg.sweeps.size(); ++s)
        sink << cfg.sweeps[s].coord << ",";
      sink << "re,im,status\n";
    }
    for (const auto& line : lines) sink << line;
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const double budget = cfg.budget_seconds > 0 ? cfg.budget_seconds : 1e9;
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  std::vector<CaseLine> cases;
  bool any_timeout = false;
  try {
    const bool restricted =
        (cfg.suite == "upq" && cfg.p > 0) || (cfg.suite == "lift" && cfg.n > 0) ||
        (cfg.suite == "chambers" && cfg.n > 0);

    if (restricted && cfg.suite == "upq") {
      std::mt19937_64 rng(cfg.seed);
      QuadratureParams qp;
      qp.nodes = cfg.nodes;
      qp.tolerance = cfg.tolerance > 0 ? cfg.tolerance : 1e-5;
      for (int t = 0; t <= std::min(cfg.p, cfg.q); ++t)
        for (int m : {-3, 0, 2}) {
          CaseLine c;
          c.name = "upq p=" + std::to_string(cfg.p) + " q=" + std::to_string(cfg.q) +
                   " t=" + std::to_string(t) + " m=" + std::to_string(m);
          if (elapsed() > budget) {
            c.timeout = true;
            any_timeout = true;
            cases.push_back(c);
            continue;
          }
          auto s0 = clock::now();
          TorusPoint ref = random_regular_point(Family::upq, cfg.p, cfg.q, t, rng);
          double worst = 0.0;
          bool ok = true;
          for (int s = 0; s < 10 && ok; ++s) {
            TorusPoint pt = random_regular_point(Family::upq, cfg.p, cfg.q, t, rng);
            auto rep = verify_theta_upq(cfg.p, cfg.q, m, t, pt, ref, qp);
            worst = std::max(worst, rep.relative_error);
            ok = rep.pass;
          }
          c.pass = ok;
          c.seconds = std::chrono::duration<double>(clock::now() - s0).count();
          c.detail = "max rel " + num(worst);
          cases.push_back(c);
        }
    } else if (restricted && cfg.suite == "lift") {
      std::mt19937_64 rng(cfg.seed);
      QuadratureParams qp;
      qp.nodes = cfg.nodes;
      qp.tolerance = cfg.tolerance > 0 ? cfg.tolerance : 1e-4;
      for (int t = 0; t <= cfg.n; ++t)
        for (int m : {-2, 0, 3}) {
          CaseLine c;
          c.name = "lift n=" + std::to_string(cfg.n) + " t=" + std::to_string(t) +
                   " m=" + std::to_string(m);
          if (elapsed() > budget) {
            c.timeout = true;
            any_timeout = true;
            cases.push_back(c);
            continue;
          }
          auto s0 = clock::now();
          TorusPoint ref = random_regular_point(Family::unn1, cfg.n, cfg.n + 1, t, rng);
          double worst = 0.0;
          bool ok = true;
          for (int s = 0; s < 5 && ok; ++s) {
            TorusPoint pt = random_regular_point(Family::unn1, cfg.n, cfg.n + 1, t, rng);
            auto rep = verify_theta_lift(cfg.n, m, t, pt, ref, qp);
            worst = std::max(worst, rep.relative_error);
            ok = rep.pass;
          }
          c.pass = ok;
          c.seconds = std::chrono::duration<double>(clock::now() - s0).count();
          c.detail = "max rel " + num(worst);
          cases.push_back(c);
        }
    } else if (restricted && cfg.suite == "chambers") {
      const int tmin = cfg.t > 0 ? cfg.t : 1;
      const int tmax = cfg.t > 0 ? cfg.t : cfg.n;
      for (int t = tmin; t <= tmax; ++t) {
        CaseLine c;
        c.name = "chambers n=" + std::to_string(cfg.n) + " t=" + std::to_string(t);
        if (elapsed() > budget) {
          c.timeout = true;
          any_timeout = true;
          cases.push_back(c);
          continue;
        }
        auto s0 = clock::now();
        auto rep = chamber_sign_scan(cfg.n, t, cfg.samples, cfg.seed);
        c.pass = rep.pass;
        c.seconds = std::chrono::duration<double>(clock::now() - s0).count();
        c.detail = std::to_string(rep.chambers.size()) + " chambers";
        cases.push_back(c);
      }
    } else {
      for (int id : criteria_for_suite(cfg.suite)) {
        CaseLine c;
        c.name = "criterion " + std::to_string(id);
        if (elapsed() > budget) {
          c.timeout = true;
          any_timeout = true;
          cases.push_back(c);
          continue;
        }
        auto r = run_criterion(id, cfg.seed);
        c.name = "criterion " + std::to_string(id) + ": " + r.name;
        c.pass = r.pass;
        c.timeout = r.timeout;
        any_timeout |= r.timeout;
        c.seconds = r.seconds;
        c.detail = r.detail;
        cases.push_back(c);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  std::ofstream file;
  std::ostream& sink = open_sink(cfg, file, out);
  bool all_pass = true;
  for (const auto& c : cases) {
    emit_case(sink, c);
    all_pass &= c.pass;
  }
  if (any_timeout) return kExitTimeout;
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int run_chambers(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.n < 1) throw std::invalid_argument("chambers needs --n >= 1");
    auto rep = chamber_sign_scan(cfg.n, cfg.t, cfg.samples, cfg.seed);
    std::ofstream file;
    std::ostream& sink = open_sink(cfg, file, out);
    for (const auto& c : rep.chambers) {
      sink << "{\"chamber\":\"" << json_escape(c.chamber)
           << "\",\"samples\":" << c.samples << ",\"resampled\":" << c.resampled
           << ",\"sign\":" << (c.sign > 0 ? 1 : -1)
           << ",\"max_im_ratio\":" << num(c.max_im_ratio)
           << ",\"sign_constant\":" << (c.sign_constant ? "true" : "false")
           << "}\n";
    }
    sink << "{\"n\":" << rep.n << ",\"t\":" << rep.t
         << ",\"chambers\":" << rep.chambers.size()
         << ",\"pass\":" << (rep.pass ? "true" : "false") << "}\n";
    return rep.pass ? kExitOk : kExitVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"character formulas for theta lifts to U(p,q) and U(n,n+1)"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> coord_items;
  std::vector<std::string> sweep_items;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "upq or lift");
    sub->add_option("--p", cfg.p, "positive block size");
    sub->add_option("--q", cfg.q, "negative block size");
    sub->add_option("--n", cfg.n, "lift rank: group U(n,n+1)");
    sub->add_option("--m", cfg.m, "seed highest weight");
    sub->add_option("--t", cfg.t, "Cartan label (split rank)");
    sub->add_option("--coords", coord_items, "bindings X1=...,X2=...")
        ->delimiter(',');
    sub->add_option("--sweep", sweep_items, "range X1=start:stop:steps");
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--tol", cfg.tolerance, "verification tolerance override");
    sub->add_option("--nodes", cfg.nodes, "contour quadrature nodes");
    sub->add_option("--seed", cfg.seed, "deterministic seed");
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_option("--samples", cfg.samples, "samples per chamber");
    sub->add_option("--budget", cfg.budget_seconds, "verify budget in seconds");
  };
  auto* eval = app.add_subcommand("eval", "evaluate one character value");
  auto* table = app.add_subcommand("table", "sweep coordinates to CSV/JSON");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  auto* chambers = app.add_subcommand("chambers", "Weyl-chamber sign scan");
  for (auto* sub : {eval, table, verify, chambers}) add_common(sub);
  verify->add_option("--suite", cfg.suite,
                     "contour|upq|lift|chambers|invariants|all");

  std::vector<const char*> argv;
  argv.push_back("charlift");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    for (const auto& item : coord_items) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("bad --coords item: " + item);
      cfg.coords[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    for (const auto& item : sweep_items) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("bad --sweep item: " + item);
      SweepRange sr;
      sr.coord = item.substr(0, eq);
      std::string rest = item.substr(eq + 1);
      auto c1 = rest.find(':');
      auto c2 = rest.find(':', c1 == std::string::npos ? 0 : c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("bad --sweep range (want start:stop:steps): " + item);
      sr.start = std::stod(rest.substr(0, c1));
      sr.stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
      sr.steps = std::stoi(rest.substr(c2 + 1));
      cfg.sweeps.push_back(sr);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  if (eval->parsed()) cfg.command = "eval";
  if (table->parsed()) cfg.command = "table";
  if (verify->parsed()) cfg.command = "verify";
  if (chambers->parsed()) cfg.command = "chambers";

  if (cfg.command == "eval") return run_eval(cfg, out, err);
  if (cfg.command == "table") return run_table(cfg, out, err);
  if (cfg.command == "verify") return run_verify(cfg, out, err);
  if (cfg.command == "chambers") return run_chambers(cfg, out, err);
  err << "no command given\n";
  return kExitInvalidInput;
}

}  // namespace charlift
