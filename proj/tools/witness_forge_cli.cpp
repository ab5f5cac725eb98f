// witness-forge: construct entanglement witnesses from positive linear
// maps, classify the generalized family Phi[a,b,c], certify exposed
// extremal rays numerically, and search the PPT cone for detected states.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wforge/exposedness.hpp"
#include "wforge/io.hpp"
#include "wforge/ppt.hpp"

namespace {

using nlohmann::json;

struct Args {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double t = 0.0;
  double alpha = 0.0;
  double tol = -1.0;
  int phases = 24;
  int budget = -1;
  std::uint64_t seed = 0;
  std::string state_path;
  std::string map_path;
  std::string out_path;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Like App::count, but options absent from the subcommand count as unset
// instead of raising OptionNotFound.
std::size_t opt_count(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt == nullptr ? 0 : opt->count();
}

std::uint64_t resolve_seed(const CLI::App* cmd, const Args& args) {
  if (opt_count(cmd, "--seed") > 0) {
    return args.seed;
  }
  if (const char* env = std::getenv("WITNESS_FORGE_SEED")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw std::invalid_argument(
          "WITNESS_FORGE_SEED must be a nonnegative integer, got: " +
          std::string(env));
    }
    return static_cast<std::uint64_t>(value);
  }
  return 0;
}

wforge::LinMapRep load_map_file(const std::string& path) {
  const wforge::MatrixFile mf = wforge::load_matrix_file(path);
  if (mf.kind != "map-choi") {
    throw std::invalid_argument("expected a map-choi file: " + path);
  }
  return wforge::LinMapRep(wforge::HermMatrix(mf.matrix), mf.m, mf.n);
}

std::pair<wforge::HermMatrix, wforge::BipartiteDims> load_state_file(
    const std::string& path) {
  const wforge::MatrixFile mf = wforge::load_matrix_file(path);
  if (mf.kind != "state") {
    throw std::invalid_argument("expected a state file: " + path);
  }
  return {wforge::HermMatrix(mf.matrix),
          wforge::BipartiteDims{mf.n, mf.m}};
}

// Witness selection shared by apply/pairing/detect/find-ppt: either a Choi
// file or family parameters.
wforge::LinMapRep resolve_map(const CLI::App* cmd, const Args& args,
                              std::string& echo) {
  const bool has_t = opt_count(cmd, "--t") > 0;
  const bool has_abc = opt_count(cmd, "--a") > 0 || opt_count(cmd, "--b") > 0 ||
                       opt_count(cmd, "--c") > 0;
  const bool has_file = opt_count(cmd, "--map") > 0;
  if (has_file) {
    if (has_t || has_abc) {
      throw std::invalid_argument("give either --map or map parameters");
    }
    echo += " --map " + args.map_path;
    return load_map_file(args.map_path);
  }
  if (has_t) {
    if (has_abc) {
      throw std::invalid_argument("give either --t or --a/--b/--c");
    }
    echo += " --t " + fmt(args.t);
    return wforge::phi_t(args.t);
  }
  if (opt_count(cmd, "--a") == 0 || opt_count(cmd, "--b") == 0 ||
      opt_count(cmd, "--c") == 0) {
    throw std::invalid_argument(
        "map selection requires --map, --t, or all of --a --b --c");
  }
  echo += " --a " + fmt(args.a) + " --b " + fmt(args.b) + " --c " +
          fmt(args.c);
  return wforge::generalized_choi(wforge::ChoiParams{args.a, args.b, args.c});
}

json witness_report_json(const wforge::WitnessReport& report) {
  return json{{"pairing_value", report.pairing_value},
              {"state_is_ppt", report.state_is_ppt},
              {"state_min_eig", report.state_min_eig},
              {"partial_transpose_min_eig", report.partial_transpose_min_eig},
              {"verdict", report.verdict}};
}

json classify_json(const wforge::ChoiParams& p) {
  const wforge::MapClass cls = wforge::classify_choi_params(p);
  return json{
      {"params", {{"a", p.a}, {"b", p.b}, {"c", p.c}}},
      {"positive", cls.positive},
      {"decomposable", cls.decomposable},
      {"completely_positive", cls.completely_positive},
      {"completely_copositive", cls.completely_copositive},
      {"closed_forms",
       {{"sum", p.a + p.b + p.c},
        {"bc", p.b * p.c},
        {"positivity_bound", p.a <= 1.0 ? (1.0 - p.a) * (1.0 - p.a) : 0.0},
        {"decomposability_bound",
         p.a <= 2.0 ? 0.25 * (2.0 - p.a) * (2.0 - p.a) : 0.0}}}};
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw std::invalid_argument("cannot write: " + out_path);
    }
    out << report.dump(2) << "\n";
  }
}

int dispatch(const CLI::App& app, const CLI::App* cmd, Args& args) {
  const std::string name = cmd->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&t0]() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };
  const std::uint64_t seed = resolve_seed(cmd, args);
  std::string echo = "witness-forge " + name;
  json tolerances = json::object();
  json payload;
  std::string report_out = args.out_path;

  if (name == "classify") {
    echo += " --a " + fmt(args.a) + " --b " + fmt(args.b) + " --c " +
            fmt(args.c);
    tolerances["classification_slack"] = wforge::kClassifySlack;
    payload = classify_json(wforge::ChoiParams{args.a, args.b, args.c});
  } else if (name == "choi") {
    const wforge::LinMapRep map = resolve_map(cmd, args, echo);
    payload = json{{"dims", {map.dim_out(), map.dim_in()}},
                   {"eig_min", wforge::eig_min(map.choi())},
                   {"matrix", wforge::matrix_to_json(map.choi_mat())}};
    if (!args.out_path.empty()) {
      wforge::save_matrix_file(
          args.out_path, wforge::MatrixFile{"map-choi", map.dim_out(),
                                            map.dim_in(), map.choi_mat()});
      payload["written"] = args.out_path;
      report_out.clear();
    }
  } else if (name == "apply") {
    const wforge::LinMapRep map = resolve_map(cmd, args, echo);
    echo += " --state " + args.state_path;
    const auto [state, dims] = load_state_file(args.state_path);
    if (dims.total() != map.dim_in()) {
      throw std::invalid_argument("apply: input matrix must be m x m");
    }
    const wforge::CMatrix image = map.apply(state.mat());
    payload = json{{"matrix", wforge::matrix_to_json(image)},
                   {"eig_min", wforge::eig_min(wforge::HermMatrix(image))}};
    if (!args.out_path.empty()) {
      wforge::save_matrix_file(
          args.out_path,
          wforge::MatrixFile{"state", 1, map.dim_out(), image});
      payload["written"] = args.out_path;
      report_out.clear();
    }
  } else if (name == "pairing") {
    const wforge::LinMapRep map = resolve_map(cmd, args, echo);
    echo += " --state " + args.state_path;
    const auto [state, dims] = load_state_file(args.state_path);
    tolerances["imaginary_residue"] = wforge::kImagResidueTol;
    payload = json{{"pairing_value", wforge::pairing(state, map, dims)},
                   {"dims", {dims.n, dims.m}}};
  } else if (name == "detect") {
    const wforge::LinMapRep map = resolve_map(cmd, args, echo);
    echo += " --state " + args.state_path;
    const auto [state, dims] = load_state_file(args.state_path);
    tolerances["detection_scale"] = wforge::kDetectScale;
    tolerances["ppt_scale"] = wforge::kKillTolScale;
    payload = witness_report_json(wforge::detects(map, state, dims));
  } else if (name == "killset") {
    echo += " --t " + fmt(args.t);
    const wforge::LinMapRep map = wforge::phi_t(args.t);
    const wforge::CanonicalKillSet set = wforge::canonical_kill_vectors(args.t);
    const double kill_tol =
        args.tol > 0.0
            ? args.tol
            : wforge::kKillTolScale * wforge::frob_norm(map.choi_mat());
    tolerances["kill_tolerance"] = kill_tol;
    std::vector<wforge::CVector> embedded;
    std::vector<wforge::CVector> conjugates;
    json vectors = json::array();
    for (const wforge::ProductVector& pv : set.vectors) {
      embedded.push_back(pv.embedded);
      conjugates.push_back(pv.partial_conjugate);
      json entry;
      entry["x"] = wforge::matrix_to_json(pv.x);
      entry["ybar"] = wforge::matrix_to_json(pv.y.conjugate());
      entry["kill_value"] = wforge::kill_value(map, pv);
      entry["in_kill_set"] = wforge::in_kill_set(map, pv, kill_tol);
      vectors.push_back(entry);
    }
    payload = json{{"t", args.t},
                   {"vectors", vectors},
                   {"embedded_rank", wforge::span_rank(embedded)},
                   {"conjugate_rank", wforge::span_rank(conjugates)}};
    if (opt_count(cmd, "--phases") > 0) {
      std::vector<wforge::CVector> fam_embedded;
      std::vector<wforge::CVector> fam_conjugates;
      double worst = 0.0;
      for (int fc = 1; fc <= 4; ++fc) {
        for (const wforge::ProductVector& pv :
             wforge::sample_kill_family(args.t, fc, args.phases)) {
          fam_embedded.push_back(pv.embedded);
          fam_conjugates.push_back(pv.partial_conjugate);
          worst = std::max(worst, std::abs(wforge::kill_value(map, pv)));
        }
      }
      echo += " --phases " + std::to_string(args.phases);
      payload["families"] =
          json{{"phase_samples", args.phases},
               {"count", fam_embedded.size()},
               {"max_abs_kill_value", worst},
               {"embedded_rank", wforge::span_rank(fam_embedded)},
               {"conjugate_rank", wforge::span_rank(fam_conjugates)}};
    }
  } else if (name == "expose") {
    wforge::ExposeOptions opts;
    opts.phase_samples = args.phases;
    if (args.budget > 0) {
      opts.scan_budget = args.budget;
    }
    opts.seed = seed;
    echo += " --t " + fmt(args.t) + " --phases " +
            std::to_string(opts.phase_samples) + " --budget " +
            std::to_string(opts.scan_budget);
    tolerances["null_space_cutoff"] = wforge::kNullSpaceCutoff;
    tolerances["choi_residual"] = wforge::kChoiResidualTol;
    tolerances["survivor_positivity"] = wforge::kSurvivorTol;
    tolerances["ray_residual"] = wforge::kRayResidualTol;
    const wforge::ExposednessCertificate cert =
        wforge::certify_exposedness(args.t, opts);
    payload = json{{"t", cert.t},
                   {"num_constraint_samples", cert.num_constraint_samples},
                   {"null_space_dim", cert.null_space_dim},
                   {"null_space_dim_doubled", cert.null_space_dim_doubled},
                   {"choi_residual", cert.choi_residual},
                   {"survivor_count", cert.survivor_count},
                   {"ray_residual", cert.ray_residual},
                   {"verdict", cert.verdict},
                   {"note", "finite-sample corroboration"}};
  } else if (name == "find-ppt") {
    const wforge::LinMapRep map = resolve_map(cmd, args, echo);
    wforge::PptSearchConfig cfg;
    if (args.budget > 0) {
      cfg.max_iterations = args.budget;
    }
    if (args.tol > 0.0) {
      cfg.tolerance = args.tol;
    }
    cfg.seed = seed;
    echo += " --budget " + std::to_string(cfg.max_iterations) + " --tol " +
            fmt(cfg.tolerance);
    tolerances["detection_tolerance"] = cfg.tolerance;
    tolerances["ppt_scale"] = wforge::kPptTolScale;
    const wforge::PptSearchResult result =
        wforge::find_detected_ppt_state(map, cfg);
    payload = json{{"detected", result.detected},
                   {"best_pairing", result.best_pairing},
                   {"best_restart", result.best_restart},
                   {"report", witness_report_json(result.report)},
                   {"state", wforge::matrix_to_json(result.state.mat())}};
    if (!args.out_path.empty()) {
      wforge::save_matrix_file(
          args.out_path,
          wforge::MatrixFile{"state", map.dim_out(), map.dim_in(),
                             result.state.mat()});
      payload["written"] = args.out_path;
      report_out.clear();
    }
  } else if (name == "decompose") {
    const double plane_tol = args.tol > 0.0 ? args.tol : 1e-6;
    echo += " --a " + fmt(args.a) + " --b " + fmt(args.b) + " --c " +
            fmt(args.c) + " --tol " + fmt(plane_tol);
    tolerances["plane_tolerance"] = plane_tol;
    const wforge::PlaneDecomposition dec = wforge::decompose_on_plane(
        wforge::ChoiParams{args.a, args.b, args.c}, plane_tol);
    payload = json{
        {"t", dec.t},
        {"weight", dec.weight},
        {"weight_in_range", dec.weight_in_range},
        {"residual", dec.residual},
        {"cp_params",
         {{"a", dec.cp_params.a}, {"b", dec.cp_params.b},
          {"c", dec.cp_params.c}}},
        {"exposed_params",
         {{"a", dec.exposed_params.a}, {"b", dec.exposed_params.b},
          {"c", dec.exposed_params.c}}}};
  } else if (name == "dpoly") {
    // --a/--b/--c carry the parameters p, q, r here; alpha defaults to the
    // constrained value (1-t)^2 (p+q+r) / 3.
    const double p = args.a;
    const double q = args.b;
    const double r = args.c;
    const double alpha = opt_count(cmd, "--alpha") > 0
                             ? args.alpha
                             : (1.0 - args.t) * (1.0 - args.t) *
                                   (p + q + r) / 3.0;
    echo += " --t " + fmt(args.t) + " --a " + fmt(p) + " --b " + fmt(q) +
            " --c " + fmt(r) + " --alpha " + fmt(alpha);
    const wforge::DoubleDualParams params(args.t, alpha, p, q, r);
    const double d_value = wforge::d_polynomial(params);
    const double det_value = wforge::det_oracle(params);
    payload = json{{"t", params.t},
                   {"alpha", params.alpha},
                   {"p", params.p},
                   {"q", params.q},
                   {"r", params.r},
                   {"s", {params.s1, params.s2, params.s3}},
                   {"t_functions", {params.t1, params.t2, params.t3}},
                   {"d_value", d_value},
                   {"det_oracle", det_value},
                   {"abs_gap", std::abs(d_value - det_value)}};
    if (params.satisfies_case1_constraint(1e-9)) {
      const wforge::InequalityChainReport chain =
          wforge::inequality_chain_check(params);
      payload["chain"] = json{{"t1_slack", chain.t1_slack},
                              {"chain_slack", chain.chain_slack},
                              {"d_value", chain.d_value},
                              {"d_bound", chain.d_bound},
                              {"dev_pq", chain.dev_pq},
                              {"dev_qr", chain.dev_qr},
                              {"all_hold", chain.all_hold}};
    }
  } else {
    throw std::invalid_argument("unknown subcommand: " + name);
  }

  echo += " --seed " + std::to_string(seed);
  emit(wforge::make_run_report(echo, seed, tolerances, payload, elapsed_ms()),
       report_out);
  (void)app;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "witness-forge: entanglement witnesses from positive linear maps"};
  app.require_subcommand(1);
  Args args;

  auto add_seed_out = [&args](CLI::App* cmd) {
    cmd->add_option("--seed", args.seed,
                    "random seed (fallback: WITNESS_FORGE_SEED, then 0)");
    cmd->add_option("--out", args.out_path, "write the result to this file");
  };
  auto add_abc = [&args](CLI::App* cmd, bool required) {
    auto* oa = cmd->add_option("--a", args.a, "family parameter a")
                   ->check(CLI::NonNegativeNumber);
    auto* ob = cmd->add_option("--b", args.b, "family parameter b")
                   ->check(CLI::NonNegativeNumber);
    auto* oc = cmd->add_option("--c", args.c, "family parameter c")
                   ->check(CLI::NonNegativeNumber);
    if (required) {
      oa->required();
      ob->required();
      oc->required();
    }
  };

  CLI::App* classify =
      app.add_subcommand("classify", "classify Phi[a,b,c] by closed forms");
  add_abc(classify, true);
  add_seed_out(classify);

  CLI::App* choi = app.add_subcommand(
      "choi", "emit the Choi matrix of Phi[a,b,c] or Phi(t)");
  add_abc(choi, false);
  choi->add_option("--t", args.t, "parameter of the one-parameter family");
  add_seed_out(choi);

  CLI::App* apply = app.add_subcommand(
      "apply", "apply a map to a matrix loaded from a state file");
  add_abc(apply, false);
  apply->add_option("--t", args.t, "parameter of the one-parameter family");
  apply->add_option("--map", args.map_path, "Choi matrix file");
  apply->add_option("--state", args.state_path, "input matrix file")
      ->required();
  add_seed_out(apply);

  CLI::App* pairing_cmd = app.add_subcommand(
      "pairing", "pairing between a bipartite matrix and a map");
  add_abc(pairing_cmd, false);
  pairing_cmd->add_option("--t", args.t,
                          "parameter of the one-parameter family");
  pairing_cmd->add_option("--map", args.map_path, "Choi matrix file");
  pairing_cmd->add_option("--state", args.state_path, "state file")
      ->required();
  add_seed_out(pairing_cmd);

  CLI::App* detect = app.add_subcommand(
      "detect", "evaluate a witness against a state (PPT-aware verdict)");
  add_abc(detect, false);
  detect->add_option("--t", args.t, "parameter of the one-parameter family");
  detect->add_option("--map", args.map_path, "Choi matrix file");
  detect->add_option("--state", args.state_path, "state file")->required();
  add_seed_out(detect);

  CLI::App* killset = app.add_subcommand(
      "killset", "annihilating product vectors of Phi(t) and their spans");
  killset->add_option("--t", args.t, "family parameter")->required();
  killset->add_option("--phases", args.phases,
                      "also sweep the continuum families with this many "
                      "phase samples");
  killset->add_option("--tol", args.tol, "kill-set membership tolerance");
  add_seed_out(killset);

  CLI::App* expose = app.add_subcommand(
      "expose", "numerical exposedness certificate for Phi(t)");
  expose->add_option("--t", args.t, "family parameter (t > 0, t != 1)")
      ->required();
  expose->add_option("--phases", args.phases,
                     "phase samples per free angle (doubled internally for "
                     "the stability check)");
  expose->add_option("--budget", args.budget,
                     "positivity scan budget (sphere directions)");
  add_seed_out(expose);

  CLI::App* find_ppt = app.add_subcommand(
      "find-ppt", "search the PPT cone for a state detected by the witness");
  add_abc(find_ppt, false);
  find_ppt->add_option("--t", args.t,
                       "parameter of the one-parameter family");
  find_ppt->add_option("--map", args.map_path, "Choi matrix file");
  find_ppt->add_option("--budget", args.budget, "descent iterations");
  find_ppt->add_option("--tol", args.tol,
                       "detection tolerance (default 1e-6)");
  add_seed_out(find_ppt);

  CLI::App* decompose = app.add_subcommand(
      "decompose",
      "split Phi[a,b,c] on the plane a+b+c=2 into Phi[2,0,0] and Phi(t)");
  add_abc(decompose, true);
  decompose->add_option("--tol", args.tol,
                        "plane tolerance (default 1e-6)");
  add_seed_out(decompose);

  CLI::App* dpoly = app.add_subcommand(
      "dpoly",
      "evaluate the determinant polynomial D[alpha,p,q,r] and its oracle; "
      "--a --b --c carry p q r");
  dpoly->add_option("--t", args.t, "parameter t >= 0")
      ->required()
      ->check(CLI::NonNegativeNumber);
  add_abc(dpoly, true);
  dpoly->add_option("--alpha", args.alpha,
                    "override alpha (default: constrained value)");
  add_seed_out(dpoly);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::vector<CLI::App*> parsed = app.get_subcommands();
    return dispatch(app, parsed.front(), args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wforge::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
