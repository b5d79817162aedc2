// Copyright 2026  The conjprob authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// conjprob command line: every subcommand is a thin shell over the C API.
// JSON on stdout for scalar commands, CSV for the tabular ones (identity,
// compare); diagnostics on stderr; exit code 2 on any validation failure.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conjprob.h"
#include "json.hpp"

namespace {

using nlohmann::json;

// Floats are serialized with 12 significant digits so repeated runs diff
// cleanly; rounding happens before the value enters the JSON document.
double sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json number_array(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(sig12(v));
  return arr;
}

int fail(const std::string& message) {
  std::cerr << "error: " << message << std::endl;
  return 2;
}

int fail_status(conjprob_status status, const std::string& context) {
  return fail(context + ": " + conjprob_strerror(status));
}

void emit(const json& doc) { std::cout << doc.dump() << std::endl; }

struct CommonFlags {
  std::uint64_t seed = 0;
  int workers = 0;
  std::string format;
};

bool check_format(const CommonFlags& flags, bool tabular, int& rc) {
  if (flags.format.empty()) return true;
  if (flags.format != "json" && flags.format != "csv") {
    rc = fail("--format must be json or csv");
    return false;
  }
  if (!tabular && flags.format == "csv") {
    rc = fail("--format csv is only available for identity and compare");
    return false;
  }
  return true;
}

int run_coeff(int n, int d) {
  double leading = 0.0;
  int u_power = 0;
  int phi_power = 0;
  const conjprob_status st =
      conjprob_leading_coefficient(n, d, &leading, &u_power, &phi_power);
  if (st != CONJPROB_OK) return fail_status(st, "coeff (--n/--d)");
  json doc;
  doc["command"] = "coeff";
  doc["n"] = n;
  doc["d"] = d;
  doc["leading_constant"] = sig12(leading);
  doc["u_power"] = u_power;
  doc["phi_power"] = phi_power;
  emit(doc);
  return 0;
}

int run_volume(int d, const std::vector<double>& radii) {
  double value = 0.0;
  const conjprob_status st = conjprob_intersection_volume(
      d, radii.data(), static_cast<int>(radii.size()), &value);
  if (st != CONJPROB_OK) return fail_status(st, "volume (--d/--radii)");
  json doc;
  doc["command"] = "volume";
  doc["n"] = static_cast<int>(radii.size());
  doc["d"] = d;
  doc["radii"] = number_array(radii);
  doc["closed_form"] = sig12(value);
  emit(doc);
  return 0;
}

int run_oracle(int d, const std::vector<double>& radii, std::int64_t samples,
               const CommonFlags& flags) {
  if (samples < 10000) return fail("--samples must be at least 10000");
  conjprob_estimate est;
  conjprob_status st = conjprob_intersection_volume_mc(
      d, radii.data(), static_cast<int>(radii.size()), samples, flags.seed,
      flags.workers, &est);
  if (st != CONJPROB_OK) return fail_status(st, "oracle (--d/--radii)");
  double closed = 0.0;
  st = conjprob_intersection_volume(d, radii.data(),
                                    static_cast<int>(radii.size()), &closed);
  if (st != CONJPROB_OK) return fail_status(st, "oracle (--d/--radii)");
  json doc;
  doc["command"] = "oracle";
  doc["n"] = static_cast<int>(radii.size());
  doc["d"] = d;
  doc["radii"] = number_array(radii);
  doc["samples"] = est.samples;
  doc["seed"] = est.seed;
  doc["mean"] = sig12(est.mean);
  doc["std_error"] = sig12(est.std_error);
  doc["closed_form"] = sig12(closed);
  emit(doc);
  return 0;
}

// Domain from flags: --sides gives an interval or box, a single --radii
// value with --d gives a ball. Exactly one of the two must be present.
int make_domain(const std::vector<double>& sides,
                const std::vector<double>& radii, int d,
                conjprob_domain** domain, std::string* kind) {
  if (!sides.empty() && !radii.empty()) {
    return fail("give either --sides or --radii, not both");
  }
  if (!sides.empty()) {
    const conjprob_status st = conjprob_domain_box(
        sides.data(), static_cast<int>(sides.size()), domain);
    if (st != CONJPROB_OK) return fail_status(st, "--sides");
    *kind = sides.size() == 1 ? "interval" : "box";
    return 0;
  }
  if (radii.size() == 1) {
    if (d < 1) return fail("a ball domain needs --d >= 1");
    const conjprob_status st = conjprob_domain_ball(d, radii[0], domain);
    if (st != CONJPROB_OK) return fail_status(st, "--radii/--d");
    *kind = "ball";
    return 0;
  }
  return fail("domain required: --sides t1,..,td or a single --radii value");
}

int run_ec(int n, double u, const std::vector<double>& sides,
           const std::vector<double>& radii, int d) {
  conjprob_domain* domain = nullptr;
  std::string kind;
  const int rc = make_domain(sides, radii, d, &domain, &kind);
  if (rc != 0) return rc;
  const int dim = conjprob_domain_dim(domain);
  std::vector<double> mu(dim + 1, 0.0);
  conjprob_domain_minkowski(domain, mu.data());
  double value = 0.0;
  const conjprob_status st = conjprob_ec_prediction(n, u, domain, &value);
  conjprob_domain_free(domain);
  if (st != CONJPROB_OK) return fail_status(st, "ec (--n)");
  json doc;
  doc["command"] = "ec";
  doc["n"] = n;
  doc["d"] = dim;
  doc["u"] = sig12(u);
  doc["domain"] = kind;
  doc["minkowski"] = number_array(mu);
  doc["prediction"] = sig12(value);
  emit(doc);
  return 0;
}

int run_asym(int n, double u, const std::vector<double>& sides, int d_flag) {
  if (sides.empty()) return fail("asym needs --sides t1,..,td");
  const int d = static_cast<int>(sides.size());
  if (d_flag > 0 && d_flag != d) {
    return fail("--d disagrees with the number of --sides entries");
  }
  double volume = 1.0;
  for (double s : sides) volume *= s;
  double leading = 0.0;
  int u_power = 0;
  int phi_power = 0;
  conjprob_status st =
      conjprob_leading_coefficient(n, d, &leading, &u_power, &phi_power);
  if (st != CONJPROB_OK) return fail_status(st, "asym (--n/--sides)");
  double value = 0.0;
  st = conjprob_conjunction_asymptotic(n, d, u, volume, &value);
  if (st != CONJPROB_OK) return fail_status(st, "asym (--u/--sides)");
  json doc;
  doc["command"] = "asym";
  doc["n"] = n;
  doc["d"] = d;
  doc["u"] = sig12(u);
  doc["volume"] = sig12(volume);
  doc["leading_constant"] = sig12(leading);
  doc["u_power"] = u_power;
  doc["phi_power"] = phi_power;
  doc["asymptotic"] = sig12(value);
  emit(doc);
  return 0;
}

int run_identity(int n_max, int d_max, const CommonFlags& flags) {
  if (n_max < 1) return fail("--n-max must be >= 1");
  if (d_max < 1) return fail("--d-max must be >= 1");
  struct Row {
    int n, d;
    double direct, from_ec, gap;
  };
  std::vector<Row> rows;
  for (int n = 1; n <= n_max; ++n) {
    for (int d = 1; d <= d_max; ++d) {
      double direct = 0.0;
      double from_ec = 0.0;
      double gap = 0.0;
      conjprob_status st = conjprob_leading_coefficient(n, d, &direct,
                                                        nullptr, nullptr);
      if (st != CONJPROB_OK) return fail_status(st, "identity (--n-max/--d-max)");
      st = conjprob_ec_volume_coefficient(n, d, &from_ec);
      if (st != CONJPROB_OK) return fail_status(st, "identity (--n-max/--d-max)");
      st = conjprob_coefficient_gap(n, d, &gap);
      if (st != CONJPROB_OK) return fail_status(st, "identity (--n-max/--d-max)");
      rows.push_back({n, d, direct, from_ec, gap});
    }
  }
  if (flags.format == "json") {
    json arr = json::array();
    for (const Row& r : rows) {
      json obj;
      obj["n"] = r.n;
      obj["d"] = r.d;
      obj["asymptotic_coefficient"] = sig12(r.direct);
      obj["ec_coefficient"] = sig12(r.from_ec);
      obj["relative_error"] = sig12(r.gap);
      arr.push_back(obj);
    }
    emit(arr);
  } else {
    std::printf("n,d,asymptotic_coefficient,ec_coefficient,relative_error\n");
    for (const Row& r : rows) {
      std::printf("%d,%d,%.12g,%.12g,%.12g\n", r.n, r.d, r.direct, r.from_ec,
                  r.gap);
    }
  }
  return 0;
}

int run_pickands(int n, double a, double t_max, std::int64_t samples,
                 const CommonFlags& flags) {
  if (!(a > 0.0) || a > 0.1) return fail("--a must lie in (0, 0.1]");
  if (samples < 1) return fail("--samples must be >= 1");
  conjprob_estimate est;
  const conjprob_status st = conjprob_pickands_estimate(
      n, a, t_max, samples, flags.seed, flags.workers, &est);
  if (st != CONJPROB_OK) return fail_status(st, "pickands (--n/--a/--t-max)");
  json doc;
  doc["command"] = "pickands";
  doc["n"] = n;
  doc["a"] = sig12(a);
  doc["t_max"] = sig12(t_max);
  doc["samples"] = est.samples;
  doc["seed"] = est.seed;
  doc["mean"] = sig12(est.mean);
  doc["std_error"] = sig12(est.std_error);
  emit(doc);
  return 0;
}

int validate_sim_flags(const std::vector<double>& sides, double grid_step,
                       std::int64_t replicates, int& rc) {
  if (sides.empty()) {
    rc = fail("--sides t1,..,td is required");
    return 1;
  }
  if (!(grid_step > 0.0) || grid_step > 0.1) {
    rc = fail("--grid-step must lie in (0, 0.1]");
    return 1;
  }
  if (replicates < 1000) {
    rc = fail("--replicates must be >= 1000");
    return 1;
  }
  return 0;
}

int run_simulate(int n, double u, const std::vector<double>& sides,
                 double grid_step, std::int64_t replicates,
                 const CommonFlags& flags) {
  int rc = 0;
  if (validate_sim_flags(sides, grid_step, replicates, rc)) return rc;
  conjprob_domain* domain = nullptr;
  conjprob_status st =
      conjprob_domain_box(sides.data(), static_cast<int>(sides.size()),
                          &domain);
  if (st != CONJPROB_OK) return fail_status(st, "--sides");
  conjprob_estimate est;
  st = conjprob_conjunction_estimate(n, domain, grid_step, u, replicates,
                                     flags.seed, flags.workers, &est);
  conjprob_domain_free(domain);
  if (st != CONJPROB_OK) return fail_status(st, "simulate (--n/--grid-step)");
  json doc;
  doc["command"] = "simulate";
  doc["n"] = n;
  doc["d"] = static_cast<int>(sides.size());
  doc["u"] = sig12(u);
  doc["sides"] = number_array(sides);
  doc["grid_step"] = sig12(grid_step);
  doc["replicates"] = est.samples;
  doc["seed"] = est.seed;
  doc["mean"] = sig12(est.mean);
  doc["std_error"] = sig12(est.std_error);
  emit(doc);
  return 0;
}

int run_compare(int n, const std::vector<double>& u_grid,
                const std::vector<double>& sides, double grid_step,
                std::int64_t replicates, const CommonFlags& flags) {
  int rc = 0;
  if (validate_sim_flags(sides, grid_step, replicates, rc)) return rc;
  conjprob_domain* domain = nullptr;
  conjprob_status st =
      conjprob_domain_box(sides.data(), static_cast<int>(sides.size()),
                          &domain);
  if (st != CONJPROB_OK) return fail_status(st, "--sides");
  const int n_u = static_cast<int>(u_grid.size());
  std::vector<conjprob_estimate> empirical(std::max(n_u, 1));
  std::vector<double> asymptotic(std::max(n_u, 1), 0.0);
  st = conjprob_compare_asymptotic(n, domain, grid_step, u_grid.data(), n_u,
                                   replicates, flags.seed, flags.workers,
                                   empirical.data(), asymptotic.data());
  conjprob_domain_free(domain);
  if (st != CONJPROB_OK) return fail_status(st, "compare (--u-grid)");
  if (flags.format == "json") {
    json arr = json::array();
    for (int j = 0; j < n_u; ++j) {
      json obj;
      obj["u"] = sig12(u_grid[j]);
      obj["empirical"] = sig12(empirical[j].mean);
      obj["std_error"] = sig12(empirical[j].std_error);
      obj["asymptotic"] = sig12(asymptotic[j]);
      obj["ratio"] = sig12(empirical[j].mean / asymptotic[j]);
      arr.push_back(obj);
    }
    emit(arr);
  } else {
    std::printf("u,empirical,std_error,asymptotic,ratio\n");
    for (int j = 0; j < n_u; ++j) {
      std::printf("%.12g,%.12g,%.12g,%.12g,%.12g\n", u_grid[j],
                  empirical[j].mean, empirical[j].std_error, asymptotic[j],
                  empirical[j].mean / asymptotic[j]);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "conjunction probabilities of smooth stationary Gaussian fields: "
      "asymptotic coefficients, ball-intersection volumes, Euler "
      "characteristic predictions and Monte Carlo estimators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(conjprob_version()));

  int n = 2;
  int d = 0;
  int n_max = 6;
  int d_max = 8;
  double u = 0.0;
  double a = 0.02;
  double t_max = 12.0;
  double grid_step = 0.02;
  std::int64_t samples = 1000000;
  std::int64_t replicates = 1000;
  std::vector<double> radii;
  std::vector<double> sides;
  std::vector<double> u_grid;
  CommonFlags flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", flags.seed, "RNG seed (default 0)");
    cmd->add_option("--workers", flags.workers,
                    "worker threads (default: all cores)");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", flags.format,
                    "output format (json; csv for identity/compare)");
  };

  CLI::App* coeff = app.add_subcommand(
      "coeff", "leading expansion coefficient for n fields in dimension d");
  coeff->add_option("--n", n, "number of field copies")->required();
  coeff->add_option("--d", d, "ambient dimension")->required();
  add_format(coeff);

  CLI::App* volume = app.add_subcommand(
      "volume", "closed-form volume of ball centers with a common point");
  volume->add_option("--d", d, "ambient dimension")->required();
  volume->add_option("--radii", radii, "ball radii r1,..,rn")
      ->required()
      ->delimiter(',');
  add_format(volume);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Monte Carlo oracle for the same volume");
  oracle->add_option("--d", d, "ambient dimension")->required();
  oracle->add_option("--radii", radii, "ball radii r1,..,rn")
      ->required()
      ->delimiter(',');
  oracle->add_option("--samples", samples, "sample count (>= 10^4)");
  add_common(oracle);
  add_format(oracle);

  CLI::App* ec = app.add_subcommand(
      "ec", "Euler characteristic prediction for the conjunction set");
  ec->add_option("--n", n, "number of field copies")->required();
  ec->add_option("--u", u, "threshold level")->required();
  ec->add_option("--sides", sides, "interval/box side lengths")
      ->delimiter(',');
  ec->add_option("--radii", radii, "ball domain radius (single value)")
      ->delimiter(',');
  ec->add_option("--d", d, "ball domain dimension");
  add_format(ec);

  CLI::App* asym = app.add_subcommand(
      "asym", "leading-order conjunction probability on a box");
  asym->add_option("--n", n, "number of field copies")->required();
  asym->add_option("--u", u, "threshold level")->required();
  asym->add_option("--sides", sides, "interval/box side lengths")
      ->required()
      ->delimiter(',');
  asym->add_option("--d", d, "dimension (must match --sides)");
  add_format(asym);

  CLI::App* identity = app.add_subcommand(
      "identity",
      "coefficient identity between the expansion and the EC prediction");
  identity->add_option("--n-max", n_max, "largest n (default 6)");
  identity->add_option("--d-max", d_max, "largest d (default 8)");
  identity->add_option("--format", flags.format, "json or csv (default csv)");

  CLI::App* pickands = app.add_subcommand(
      "pickands", "Monte Carlo estimate of the generalized Pickands constant");
  pickands->add_option("--n", n, "number of field copies")->required();
  pickands->add_option("--a", a, "grid spacing (default 0.02)");
  pickands->add_option("--t-max", t_max, "scan horizon (default 12)");
  pickands->add_option("--samples", samples, "sample count");
  add_common(pickands);
  add_format(pickands);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "empirical conjunction probability of sampled fields");
  simulate->add_option("--n", n, "number of field copies")->required();
  simulate->add_option("--u", u, "threshold level")->required();
  simulate->add_option("--sides", sides, "interval/box side lengths")
      ->required()
      ->delimiter(',');
  simulate->add_option("--grid-step", grid_step, "grid step (default 0.02)");
  simulate->add_option("--replicates", replicates, "replicates (>= 1000)");
  add_common(simulate);
  add_format(simulate);

  CLI::App* compare = app.add_subcommand(
      "compare", "empirical vs asymptotic across a threshold grid");
  compare->add_option("--n", n, "number of field copies")->required();
  compare->add_option("--u-grid", u_grid, "thresholds u1,..,uk")
      ->required()
      ->delimiter(',');
  compare->add_option("--sides", sides, "interval/box side lengths")
      ->required()
      ->delimiter(',');
  compare->add_option("--grid-step", grid_step, "grid step (default 0.02)");
  compare->add_option("--replicates", replicates, "replicates (>= 1000)");
  compare->add_option("--format", flags.format, "csv (default) or json");
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }

  int rc = 0;
  const bool tabular = identity->parsed() || compare->parsed();
  if (!check_format(flags, tabular, rc)) return rc;

  if (coeff->parsed()) return run_coeff(n, d);
  if (volume->parsed()) return run_volume(d, radii);
  if (oracle->parsed()) return run_oracle(d, radii, samples, flags);
  if (ec->parsed()) return run_ec(n, u, sides, radii, d);
  if (asym->parsed()) return run_asym(n, u, sides, d);
  if (identity->parsed()) return run_identity(n_max, d_max, flags);
  if (pickands->parsed()) return run_pickands(n, a, t_max, samples, flags);
  if (simulate->parsed()) {
    return run_simulate(n, u, sides, grid_step, replicates, flags);
  }
  if (compare->parsed()) {
    return run_compare(n, u_grid, sides, grid_step, replicates, flags);
  }
  return fail("unknown command");
}
