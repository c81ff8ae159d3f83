#include "nbh/classify.hpp"
#include "nbh/errors.hpp"
#include "nbh/generators.hpp"
#include "nbh/io.hpp"
#include "nbh/matrices.hpp"
#include "nbh/nishimori.hpp"
#include "nbh/nonbacktracking.hpp"
#include "nbh/validate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kUsage = 2;

void write_manifest(const fs::path& dir, const std::string& command, const json& config, const json& extra = {}) {
  json m = {{"schema", 1}, {"command", command}, {"config", config}};
  if (!extra.is_null()) m.update(extra);
  std::ofstream(dir / "manifest.json") << m.dump(2) << '\n';
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw nbh::InvalidParameter("cannot write '" + out + "'");
  f << j.dump(2) << '\n';
}

json estimate_json(const nbh::NishimoriEstimate& e) {
  json it = json::array();
  for (const auto& s : e.iterations) it.push_back({{"beta", s.beta}, {"gamma_min", s.gamma_min}});
  return {{"beta_n_hat", e.beta_n_hat}, {"beta_sg_hat", e.beta_sg_hat}, {"beta_th", e.beta_th},
          {"detectable", e.detectable}, {"capped", e.capped},          {"signed_route", e.signed_route},
          {"iterations", it}};
}

json result_json(const nbh::ClassificationResult& r) {
  json j = {{"method", nbh::method_name(r.method)}, {"beta_used", r.beta_used}, {"warning", r.warning}};
  j["diagnostics"] = r.diagnostics;
  j["overlap"] = r.overlap ? json(*r.overlap) : json(nullptr);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nishimori-temperature spectral classification on sparse weighted graphs"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  int threads = 1;

  // generate
  auto* gen = app.add_subcommand("generate", "Sample a planted instance (or a feature mixture)");
  std::string model = "gaussian", topology = "er", out_dir = ".";
  nbh::Index n = 1000, features = 64;
  double c = 5.0, J0 = 1.0, nu = 1.0, p = 0.75, exponent = 3.0, separation = 4.0;
  gen->add_option("--model", model, "gaussian | pmj | mixture")->check(CLI::IsMember({"gaussian", "pmj", "mixture"}));
  gen->add_option("--n", n, "Number of nodes")->check(CLI::PositiveNumber);
  gen->add_option("--c", c, "Expected average degree");
  gen->add_option("--J0", J0, "Gaussian mean scale / +-J magnitude");
  gen->add_option("--nu", nu, "Gaussian standard deviation");
  gen->add_option("--p", p, "+-J probability of a positive coupling");
  gen->add_option("--topology", topology, "er | powerlaw")->check(CLI::IsMember({"er", "powerlaw"}));
  gen->add_option("--exponent", exponent, "Power-law degree exponent");
  gen->add_option("--features", features, "Mixture feature dimension");
  gen->add_option("--separation", separation, "Mixture class-mean norm");
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_dir, "Output directory");

  // estimate
  auto* est = app.add_subcommand("estimate", "Estimate beta_N from an edge list");
  std::string input, output;
  nbh::NishimoriOptions nopts;
  est->add_option("input", input, "Edge-list file")->required();
  est->add_option("--epsilon", nopts.epsilon, "Stopping threshold on gamma_min");
  est->add_option("--cap-factor", nopts.cap_factor, "beta_th = cap_factor sqrt(c) beta_SG");
  est->add_option("--max-iterations", nopts.max_iterations);
  est->add_option("--out", output, "JSON output path (default stdout)");

  // classify
  auto* cls = app.add_subcommand("classify", "Recover labels from an edge list");
  std::string method = "nishimori", labels_path, labels_out;
  cls->add_option("input", input, "Edge-list file")->required();
  cls->add_option("--method", method, "nishimori | spinglass | mean_field | laplacian | bp | all");
  cls->add_option("--labels", labels_path, "Ground-truth labels for the overlap");
  cls->add_option("--labels-out", labels_out, "Write estimated labels here (single method only)");
  cls->add_option("--epsilon", nopts.epsilon);
  cls->add_option("--seed", seed);
  cls->add_option("--out", output, "JSON output path (default stdout)");

  // kernel
  auto* ker = app.add_subcommand("kernel", "Sparsified correlation kernel from a feature file");
  double kappa = 0.0;
  ker->add_option("input", input, "Feature file (one row per point)")->required();
  ker->add_option("--kappa", kappa, "Expected retained features per row (default p)");
  ker->add_option("--c", c, "Expected evaluated pairs per row");
  ker->add_option("--seed", seed);
  ker->add_option("--out", output, "Edge-list output path")->required();

  // matrix
  auto* mat = app.add_subcommand("matrix", "Export a matrix of an edge list as COO triplets");
  std::string kind = "bethe";
  double beta = 1.0;
  mat->add_option("input", input, "Edge-list file")->required();
  mat->add_option("--kind", kind, "bethe | laplacian | signed_laplacian | nonbacktracking")
      ->check(CLI::IsMember({"bethe", "laplacian", "signed_laplacian", "nonbacktracking"}));
  mat->add_option("--beta", beta);
  mat->add_option("--out", output, "COO output path (default stdout)");

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Regenerate the data behind a figure");
  std::string figure, config_path;
  bool full_size = false;
  std::vector<std::string> sets;
  rep->add_option("figure", figure, "Figure id")->required();
  rep->add_option("--config", config_path, "JSON file with overrides");
  rep->add_option("--set", sets, "key=JSON-value override, repeatable");
  rep->add_flag("--full-size", full_size, "Use the large sizes");
  rep->add_option("--threads", threads)->check(CLI::PositiveNumber);
  rep->add_option("--seed", seed);
  rep->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      fs::create_directories(out_dir);
      json cfg = {{"model", model}, {"n", n}, {"seed", seed}, {"out", out_dir}};
      if (model == "mixture") {
        const nbh::FeatureDataset d = nbh::gaussian_mixture(n, features, separation, seed);
        nbh::write_features((fs::path(out_dir) / "features.txt").string(), d.vectors);
        nbh::write_labels((fs::path(out_dir) / "labels.txt").string(), *d.labels);
        cfg.update({{"features", features}, {"separation", separation}});
        write_manifest(out_dir, "generate", cfg, {{"files", {"features.txt", "labels.txt"}}});
        return kOk;
      }
      const nbh::WeightedGraph top = topology == "powerlaw" ? nbh::generate_powerlaw(n, c, exponent, seed)
                                                            : nbh::generate_er(n, c, seed);
      const nbh::WeightDistribution dist = model == "gaussian" ? nbh::WeightDistribution::gaussian(J0, nu)
                                                               : nbh::WeightDistribution::plus_minus_j(p, J0);
      const double beta_n = nbh::analytic_beta_n(dist);
      const nbh::LabeledInstance inst =
          nbh::plant_labels(nbh::sample_weights(top, dist, beta_n, seed), nbh::random_labels(n, seed));
      nbh::write_edge_list((fs::path(out_dir) / "graph.edges").string(), inst.graph);
      nbh::write_labels((fs::path(out_dir) / "labels.txt").string(), inst.labels);
      cfg.update({{"c", c}, {"topology", topology}, {"J0", J0}});
      if (model == "gaussian") cfg["nu"] = nu;
      else cfg["p"] = p;
      if (topology == "powerlaw") cfg["exponent"] = exponent;
      write_manifest(out_dir, "generate", cfg,
                     {{"files", {"graph.edges", "labels.txt"}},
                      {"beta_n", beta_n},
                      {"edges", inst.graph.num_edges()}});
      return kOk;
    }

    if (*est) {
      const nbh::WeightedGraph g = nbh::read_edge_list(input);
      json j = {{"schema", 1}, {"input", input}, {"epsilon", nopts.epsilon}, {"cap_factor", nopts.cap_factor}};
      j.update(estimate_json(nbh::estimate_beta_nishimori(g, nopts)));
      emit(j, output);
      return kOk;
    }

    if (*cls) {
      const nbh::WeightedGraph g = nbh::read_edge_list(input);
      if (g.empty()) throw nbh::InvalidParameter("graph has no edges");
      std::optional<nbh::LabelVector> truth;
      if (!labels_path.empty()) {
        truth = nbh::read_labels(labels_path);
        nbh::check_labels(*truth, g.num_nodes());
      }
      std::vector<nbh::Method> methods;
      if (method == "all")
        methods = {nbh::Method::nishimori_bh, nbh::Method::spinglass_bh, nbh::Method::mean_field,
                   nbh::Method::signed_laplacian, nbh::Method::belief_propagation};
      else
        methods = {nbh::parse_method(method)};
      if (!labels_out.empty() && methods.size() != 1)
        throw nbh::InvalidParameter("--labels-out needs a single method");
      nbh::BpOptions bp;
      bp.seed = seed;
      json results = json::array();
      for (nbh::Method m : methods) {
        nbh::ClassificationResult r = nbh::run_method(m, g, nopts, bp);
        if (truth) r.overlap = nbh::overlap(*truth, r.labels_hat);
        if (!labels_out.empty()) nbh::write_labels(labels_out, r.labels_hat);
        results.push_back(result_json(r));
      }
      emit({{"schema", 1}, {"input", input}, {"results", results}}, output);
      return kOk;
    }

    if (*ker) {
      nbh::FeatureDataset d{nbh::read_features(input), std::nullopt};
      const double k = kappa > 0.0 ? kappa : static_cast<double>(d.vectors.cols());
      const nbh::WeightedGraph g = nbh::sparsify_kernel(d, k, c, seed);
      nbh::write_edge_list(output, g);
      const fs::path dir = fs::path(output).parent_path().empty() ? fs::path(".") : fs::path(output).parent_path();
      write_manifest(dir, "kernel",
                     {{"input", input}, {"kappa", k}, {"c", c}, {"seed", seed}, {"out", output}},
                     {{"edges", g.num_edges()}});
      return kOk;
    }

    if (*mat) {
      const nbh::WeightedGraph g = nbh::read_edge_list(input);
      nbh::SparseMatrix m;
      if (kind == "bethe") m = nbh::bethe_hessian(g, beta);
      else if (kind == "laplacian") m = nbh::regularized_laplacian(g, beta).L;
      else if (kind == "signed_laplacian") m = nbh::signed_laplacian(g);
      else m = nbh::nonbacktracking(g).sparseView();
      if (output.empty() || output == "-") {
        nbh::write_coo(std::cout, m);
      } else {
        std::ofstream f(output);
        if (!f) throw nbh::InvalidParameter("cannot write '" + output + "'");
        nbh::write_coo(f, m);
      }
      return kOk;
    }

    if (*rep) {
      json cfg = json::object();
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw nbh::InvalidParameter("cannot open '" + config_path + "'");
        try {
          cfg = json::parse(f);
        } catch (const json::exception& e) {
          throw nbh::InvalidParameter(std::string("config: ") + e.what());
        }
      }
      for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw nbh::InvalidParameter("--set expects key=value");
        try {
          cfg[s.substr(0, eq)] = json::parse(s.substr(eq + 1));
        } catch (const json::exception&) {
          cfg[s.substr(0, eq)] = s.substr(eq + 1);
        }
      }
      if (!rep->get_option("--seed")->empty()) cfg["seed"] = seed;
      cfg["threads"] = threads;
      cfg["full_size"] = full_size;
      cfg["output_dir"] = out_dir;
      const json manifest = nbh::reproduce(figure, cfg);
      std::cout << manifest["summary"].dump(2) << '\n';
      return kOk;
    }
  } catch (const nbh::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nbh::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nbh::TooLargeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nbh::UnsupportedDistribution& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
