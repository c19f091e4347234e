#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "rhomix/csv.hpp"
#include "rhomix/ensembles.hpp"
#include "rhomix/explore.hpp"
#include "rhomix/format.hpp"
#include "rhomix/json_io.hpp"

namespace {

using namespace rhomix;

struct GlobalOpts {
  std::uint64_t seed = 0;
  bool seed_given = false;
  double tol = 0.0;
  bool tol_given = false;
  std::string output;
  std::string format;
};

// Arguments starting with '[' or '{' are inline JSON; anything else is a
// path.
std::string read_payload(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '[' || arg[0] == '{')) return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw ValidationError("cannot open input: " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, std::string payload) {
  if (payload.empty() || payload.back() != '\n') payload += '\n';
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output: " + path);
  out << payload;
}

void require_format(const GlobalOpts& g, const char* cmd, const char* fmt) {
  if (!g.format.empty() && g.format != fmt) {
    throw ValidationError(std::string(cmd) + " emits " + fmt + " only");
  }
}

// Margins of the partial-sum comparison after sorting both vectors
// descending on a common padded length; entry k is (sum of the k+1 largest
// of q) - (sum of the k+1 largest of p), nonnegative throughout iff p is
// majorized by q.
std::vector<double> prefix_margins(const ProbabilityVector& p,
                                   const ProbabilityVector& q) {
  const std::size_t n = std::max(p.size(), q.size());
  const ProbabilityVector sp = sort_descending(pad_to(p, n)).first;
  const ProbabilityVector sq = sort_descending(pad_to(q, n)).first;
  std::vector<double> margins(n);
  double ap = 0.0, aq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    ap += sp[k];
    aq += sq[k];
    margins[k] = aq - ap;
  }
  return margins;
}

// Rows of every outcome component move together, so an outcome computed on
// sorted weights can be handed back in the caller's original order.
// perm maps sorted position k to original position perm[k].
ConstructionOutcome reorder_rows(const ConstructionOutcome& o,
                                 const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<double> w(n);
  std::vector<std::vector<Complex>> states(n);
  ComplexMatrix u(n, n);
  std::vector<double> be(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    w[perm[k]] = o.ensemble.weights[k];
    states[perm[k]] = o.ensemble.states[k];
    for (std::size_t c = 0; c < n; ++c) {
      u(perm[k], c) = o.unitary_used(k, c);
      be[perm[k] * n + c] = o.bistochastic_used(k, c);
    }
  }
  return ConstructionOutcome{
      PureEnsemble(ProbabilityVector(std::move(w)), std::move(states)),
      BistochasticMatrix(n, std::move(be)), std::move(u), o.degenerate,
      o.residual};
}

int cmd_mix(const GlobalOpts& g, const std::string& input) {
  require_format(g, "mix", "json");
  const PureEnsemble e = parse_ensemble_json(read_payload(input));
  emit(g.output, density_to_json(mix(e)));
  return 0;
}

int cmd_construct(const GlobalOpts& g, const std::string& algorithm,
                  const std::string& rho_arg, bool have_p,
                  const std::string& p_arg, bool have_uniform,
                  std::size_t uniform_n) {
  require_format(g, "construct", "json");
  if (have_uniform && algorithm != "uniform") {
    throw ValidationError("--uniform only applies to the uniform construction");
  }
  const DensityMatrix rho = parse_density_json(read_payload(rho_arg));
  const ConstructionOutcome out = [&]() -> ConstructionOutcome {
    if (algorithm == "uniform") {
      if (!have_uniform) {
        throw ValidationError("construct uniform needs --uniform N");
      }
      return uniform_ensemble(rho, uniform_n);
    }
    if (!have_p) {
      throw ValidationError("construct " + algorithm + " needs --p");
    }
    const ProbabilityVector p(parse_vector_json(read_payload(p_arg)));
    if (algorithm == "nielsen") return nielsen_ensemble(rho, p);
    SweepOptions sweep;
    if (g.tol_given) sweep.certify.residual_tol = g.tol;
    sweep.certify.seed = g.seed;
    const auto [sorted, perm] = sort_descending(p);
    return reorder_rows(ratio_sweep(rho, sorted, sweep), perm);
  }();
  emit(g.output, outcome_to_json(out));
  return 0;
}

int cmd_check(const GlobalOpts& g, const std::string& kind, bool have_p,
              const std::string& p_arg, bool have_q, const std::string& q_arg,
              bool have_b, const std::string& b_arg, bool have_rho,
              const std::string& rho_arg) {
  require_format(g, "check", "json");
  if (kind == "majorize") {
    if (!have_p || !have_q) {
      throw ValidationError("check majorize needs --p and --q");
    }
    const ProbabilityVector p(parse_vector_json(read_payload(p_arg)));
    const ProbabilityVector q(parse_vector_json(read_payload(q_arg)));
    emit(g.output,
         majorize_report_to_json(majorizes(p, q), prefix_margins(p, q)));
    return 0;
  }
  if (kind == "chain-links") {
    if (!have_b) throw ValidationError("check chain-links needs --b");
    const BistochasticMatrix b = parse_bistochastic_json(read_payload(b_arg));
    emit(g.output, chain_links_to_json(chain_links(b)));
    return 0;
  }
  if (kind == "unistochastic") {
    if (!have_b) throw ValidationError("check unistochastic needs --b");
    const BistochasticMatrix b = parse_bistochastic_json(read_payload(b_arg));
    CertifyOptions opts;
    opts.seed = g.seed;
    if (g.tol_given) opts.residual_tol = g.tol;
    emit(g.output, unistochastic_report_to_json(certify_unistochastic(b, opts),
                                                chain_links(b)));
    return 0;
  }
  if (!have_p || !have_rho) {
    throw ValidationError("check admissible needs --p and --rho");
  }
  const ProbabilityVector p(parse_vector_json(read_payload(p_arg)));
  const DensityMatrix rho = parse_density_json(read_payload(rho_arg));
  emit(g.output, admissible_report_to_json(conjecture2_admissible(p, rho),
                                           prefix_margins(p, rho.spectrum())));
  return 0;
}

int cmd_explore(const GlobalOpts& g, const std::string& config_arg,
                bool serial) {
  ExploreConfig cfg = parse_config_json(read_payload(config_arg));
  if (g.seed_given) cfg.master_seed = g.seed;
  if (g.tol_given) cfg.tolerances.certification = g.tol;
  const std::string fmt = g.format.empty() ? "csv" : g.format;
  const std::vector<TrialRecord> records = run_explore(
      cfg, serial ? ExecutionMode::Serial : ExecutionMode::Parallel);
  std::string payload;
  if (fmt == "csv") {
    std::ostringstream ss;
    write_trials_csv(ss, records);
    payload = ss.str();
  } else {
    payload = records_to_json(records);
  }
  emit(g.output.empty() ? "trials." + fmt : g.output, std::move(payload));
  std::cout << summary_to_json(cfg.trials, records) << "\n";
  return 0;
}

int cmd_figdata(const GlobalOpts& g, const std::string& which, bool have_rho,
                const std::string& rho_arg, bool have_points,
                std::size_t points, bool have_q, const std::string& q_arg) {
  require_format(g, "figdata", "csv");
  std::string payload;
  if (which == "bloch-ring") {
    if (!have_rho || !have_points) {
      throw ValidationError("figdata bloch-ring needs --rho and --points");
    }
    const DensityMatrix rho = parse_density_json(read_payload(rho_arg));
    if (rho.ambient_dim() != 2) {
      throw DimensionMismatchError("bloch-ring needs a 2x2 density matrix");
    }
    const ConstructionOutcome out = uniform_ensemble(rho, points);
    payload = "x,y,z\n";
    for (const std::vector<Complex>& s : out.ensemble.states) {
      const Complex ab = s[0] * std::conj(s[1]);
      payload += fmt17(2.0 * ab.real());
      payload += ',';
      payload += fmt17(2.0 * ab.imag());
      payload += ',';
      payload += fmt17(std::norm(s[0]) - std::norm(s[1]));
      payload += '\n';
    }
  } else {
    if (!have_q) throw ValidationError("figdata simplex-polytope needs --q");
    const std::vector<double> raw = parse_vector_json(read_payload(q_arg));
    if (raw.size() != 3) {
      throw DimensionMismatchError("simplex-polytope needs a length-3 vector");
    }
    const ProbabilityVector q(raw);
    const double h = std::sqrt(3.0) / 2.0;
    payload = "q1,q2,q3,x,y\n";
    std::array<std::size_t, 3> idx{0, 1, 2};
    do {
      const double v1 = q[idx[0]], v2 = q[idx[1]], v3 = q[idx[2]];
      payload += fmt17(v1);
      payload += ',';
      payload += fmt17(v2);
      payload += ',';
      payload += fmt17(v3);
      payload += ',';
      payload += fmt17(v2 + 0.5 * v3);
      payload += ',';
      payload += fmt17(h * v3);
      payload += '\n';
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  emit(g.output, std::move(payload));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pure-state ensembles for a given density matrix"};
  app.require_subcommand(1);

  GlobalOpts g;
  auto* seed_opt = app.add_option("--seed", g.seed, "seed override");
  auto* tol_opt =
      app.add_option("--tol", g.tol, "certification tolerance override");
  app.add_option("--output", g.output, "write the payload here (default stdout;"
                                       " explore defaults to trials.<format>)");
  app.add_option("--format", g.format, "payload format where a choice exists")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* mix_cmd =
      app.add_subcommand("mix", "average an ensemble into its density matrix");
  mix_cmd->fallthrough();
  std::string mix_input;
  mix_cmd->add_option("input", mix_input, "ensemble JSON (file or inline)")
      ->required();

  auto* con_cmd = app.add_subcommand(
      "construct", "build an ensemble realizing a density matrix");
  con_cmd->fallthrough();
  std::string algorithm, con_rho, con_p;
  std::size_t uniform_n = 0;
  con_cmd->add_option("algorithm", algorithm, "construction to run")
      ->required()
      ->check(CLI::IsMember({"uniform", "nielsen", "ratio-sweep"}));
  con_cmd->add_option("--rho", con_rho, "density matrix JSON (file or inline)")
      ->required();
  auto* p_opt = con_cmd->add_option("--p", con_p, "target weights");
  auto* un_opt = con_cmd->add_option("--uniform", uniform_n,
                                     "state count for the uniform construction");
  p_opt->excludes(un_opt);

  auto* chk_cmd =
      app.add_subcommand("check", "verdicts on vectors and matrices");
  chk_cmd->fallthrough();
  std::string kind, chk_p, chk_q, chk_b, chk_rho;
  chk_cmd->add_option("kind", kind, "what to check")
      ->required()
      ->check(CLI::IsMember(
          {"majorize", "chain-links", "unistochastic", "admissible"}));
  auto* chk_p_opt = chk_cmd->add_option("--p", chk_p, "probability vector");
  auto* chk_q_opt = chk_cmd->add_option("--q", chk_q, "probability vector");
  auto* chk_b_opt = chk_cmd->add_option("--b", chk_b, "bistochastic matrix");
  auto* chk_rho_opt = chk_cmd->add_option("--rho", chk_rho, "density matrix");

  auto* exp_cmd = app.add_subcommand(
      "explore", "seeded batch of random construction trials");
  exp_cmd->fallthrough();
  std::string config_arg;
  bool serial = false;
  exp_cmd->add_option("config", config_arg, "config JSON (file or inline)")
      ->required();
  exp_cmd->add_flag("--serial", serial,
                    "run on the serial reference path instead of the"
                    " parallel one");

  auto* fig_cmd =
      app.add_subcommand("figdata", "figure-style coordinate data as CSV");
  fig_cmd->fallthrough();
  std::string which, fig_rho, fig_q;
  std::size_t points = 0;
  fig_cmd->add_option("which", which, "data set to emit")
      ->required()
      ->check(CLI::IsMember({"bloch-ring", "simplex-polytope"}));
  auto* fig_rho_opt = fig_cmd->add_option("--rho", fig_rho, "density matrix");
  auto* fig_pts_opt = fig_cmd->add_option("--points", points, "state count");
  auto* fig_q_opt = fig_cmd->add_option("--q", fig_q, "length-3 vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  g.seed_given = seed_opt->count() > 0;
  g.tol_given = tol_opt->count() > 0;

  try {
    if (*mix_cmd) return cmd_mix(g, mix_input);
    if (*con_cmd) {
      return cmd_construct(g, algorithm, con_rho, p_opt->count() > 0, con_p,
                           un_opt->count() > 0, uniform_n);
    }
    if (*chk_cmd) {
      return cmd_check(g, kind, chk_p_opt->count() > 0, chk_p,
                       chk_q_opt->count() > 0, chk_q, chk_b_opt->count() > 0,
                       chk_b, chk_rho_opt->count() > 0, chk_rho);
    }
    if (*exp_cmd) return cmd_explore(g, config_arg, serial);
    return cmd_figdata(g, which, fig_rho_opt->count() > 0, fig_rho,
                       fig_pts_opt->count() > 0, points,
                       fig_q_opt->count() > 0, fig_q);
  } catch (const NonConvergentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotCertifiedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
