#include "nbh/validate.hpp"

#include "nbh/errors.hpp"
#include "nbh/generators.hpp"
#include "nbh/matrices.hpp"

#include <Eigen/Eigenvalues>

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <thread>

namespace nbh {

using nlohmann::json;

LabeledInstance planted_gaussian(const PlantedParams& p, std::uint64_t seed) {
  const WeightDistribution dist = WeightDistribution::gaussian(p.J0, p.nu);
  const WeightedGraph top = p.topology == Topology::power_law
                                ? generate_powerlaw(p.n, p.c, p.exponent, seed)
                                : generate_er(p.n, p.c, seed);
  const double beta_n = analytic_beta_n(dist);
  const WeightedGraph J = sample_weights(top, dist, beta_n, seed);
  LabeledInstance inst = plant_labels(J, random_labels(p.n, seed));
  inst.true_beta_n = beta_n;
  return inst;
}

double j0_for_ratio(double ratio, double c, double nu) {
  if (!(ratio > 0.0)) throw InvalidParameter("ratio must be > 0");
  auto r = [&](double J0) {
    const auto d = WeightDistribution::gaussian(J0, nu);
    return analytic_beta_n(d) / model_beta_sg(d, c);
  };
  // r is increasing in J0; bracket then bisect in log space.
  double lo = 1e-3 * nu, hi = nu;
  while (r(hi) < ratio) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4 * nu) throw BracketError("ratio out of reach");
  }
  while (r(lo) > ratio) lo *= 0.5;
  for (int it = 0; it < 100 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    (r(mid) < ratio ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SpectrumMoments spectrum_moments(const WeightedGraph& W) {
  SpectrumMoments m;
  m.c = W.average_degree();
  if (W.empty()) return m;
  for (const auto& e : W.edges()) {
    m.mean_w += e.w;
    m.mean_w2 += e.w * e.w;
  }
  m.mean_w /= static_cast<double>(W.num_edges());
  m.mean_w2 /= static_cast<double>(W.num_edges());
  return m;
}

WeightedGraph tanh_weights(const WeightedGraph& J, double beta) {
  return J.map_weights([beta](const Edge& e) { return std::tanh(beta * e.w); });
}

Claim1Report claim1_report(const WeightedGraph& W, Index dense_cap) {
  Claim1Report r;
  r.theory = spectrum_moments(W);
  const double R = r.theory.radius();
  if (2 * W.num_edges() <= dense_cap) {
    r.dense = true;
    const SpectrumReport s = full_spectrum_B(W, dense_cap);
    r.eigs = s.all_eigs;
    r.lambda1 = s.leading.real();
    if (s.inner_real) r.lambda_inner = s.inner_real->real();
    r.bulk_radius = s.bulk_radius_empirical;
    for (const auto& z : s.all_eigs) {
      if (std::abs(z.imag()) <= 1e-8) continue;
      ++r.complex_total;
      if (std::abs(z) > 1.05 * R) ++r.complex_outside;
    }
    r.fraction_inside = r.complex_total ? 1.0 - static_cast<double>(r.complex_outside) / r.complex_total : 1.0;
    return r;
  }

  r.bulk_radius = R;
  const double wmax = W.max_abs_weight();
  // Gershgorin bound on |lambda(B)|.
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(W.num_nodes());
  for (const auto& e : W.edges()) {
    rows[e.i] += std::abs(e.w);
    rows[e.j] += std::abs(e.w);
  }
  const double lo = wmax * (1.0 + 1e-9) + 1e-12;
  const double hi = rows.maxCoeff() * (1.0 + 1e-9) + 1e-12;
  if (lo < hi) {
    r.real_eigs = real_eigenvalues_B(W, lo, hi, 32, 1e-9);
    for (double x : real_eigenvalues_B(W, -hi, -lo, 32, 1e-9)) r.real_eigs.push_back(x);
  }
  for (double x : r.real_eigs) {
    if (std::abs(x) > std::abs(r.lambda1)) r.lambda1 = x;
    if (std::abs(x) < 0.95 * R && (!r.lambda_inner || std::abs(x) > std::abs(*r.lambda_inner)))
      r.lambda_inner = x;
  }
  const double rout = 1.05 * R;
  if (rout > wmax) {
    const Index total_out = count_outside_radius(W, rout, 48);
    Index real_out = 0;
    for (double x : r.real_eigs) real_out += std::abs(x) > rout;
    r.complex_outside = std::max<Index>(0, total_out - real_out);
    if (r.complex_outside > 0) {
      // Lower bound on the number of complex eigenvalues from a smaller circle.
      const double rin = std::max(0.5 * R, lo * 1.01);
      Index real_in = 0;
      for (double x : r.real_eigs) real_in += std::abs(x) > rin;
      r.complex_total = count_outside_radius(W, rin, 256) - real_in;
      r.fraction_inside = r.complex_total > 0 ? 1.0 - static_cast<double>(r.complex_outside) / r.complex_total : 0.0;
    }
  }
  return r;
}

EstimatorCell run_estimator_cell(const PlantedParams& p, std::uint64_t seed, const NishimoriOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  EstimatorCell cell;
  cell.J0 = p.J0;
  cell.seed = seed;
  const auto dist = WeightDistribution::gaussian(p.J0, p.nu);
  cell.beta_n = analytic_beta_n(dist);
  cell.beta_sg_model = model_beta_sg(dist, p.c);
  const LabeledInstance inst = planted_gaussian(p, seed);
  cell.estimate = estimate_beta_nishimori(inst.graph, opts);
  cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

OverlapCell run_overlap_cell(const PlantedParams& p, double ratio, std::uint64_t seed,
                             const std::vector<Method>& methods) {
  const auto t0 = std::chrono::steady_clock::now();
  OverlapCell cell;
  cell.params = p;
  cell.params.J0 = j0_for_ratio(ratio, p.c, p.nu);
  cell.ratio = ratio;
  cell.seed = seed;
  const LabeledInstance inst = planted_gaussian(cell.params, seed);
  BpOptions bp;
  bp.seed = seed;
  for (Method m : methods) {
    const ClassificationResult res = run_method(m, inst.graph, {}, bp);
    cell.overlaps.emplace_back(m, overlap(inst.labels, res.labels_hat));
  }
  cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {NAN, NAN};
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  if (v.size() < 2) return {m, 0.0};
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, std::sqrt(s / static_cast<double>(v.size() - 1))};
}

// ---------------------------------------------------------------------------
// Figure reproductions

namespace {

namespace fs = std::filesystem;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Fills missing keys of `cfg` from `defaults`.
json resolve(json cfg, const json& defaults) {
  for (auto it = defaults.begin(); it != defaults.end(); ++it)
    if (!cfg.contains(it.key())) cfg[it.key()] = it.value();
  return cfg;
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw InvalidParameter("cannot write '" + path.string() + "'");
  f << std::setprecision(12);
  return f;
}

Topology parse_topology(const std::string& s) {
  if (s == "er" || s == "erdos_renyi") return Topology::erdos_renyi;
  if (s == "powerlaw" || s == "power_law") return Topology::power_law;
  throw InvalidParameter("unknown topology '" + s + "'");
}

WeightedGraph gaussian_J(Index n, double c, double J0, double nu, std::uint64_t seed) {
  const auto dist = WeightDistribution::gaussian(J0, nu);
  return sample_weights(generate_er(n, c, seed), dist, analytic_beta_n(dist), seed);
}

json claim1_json(const Claim1Report& r) {
  json j = {{"dense", r.dense},
            {"lambda1", r.lambda1},
            {"lambda1_theory", r.theory.lambda1()},
            {"lambda_inner_theory", r.theory.lambda_inner()},
            {"radius_theory", r.theory.radius()},
            {"bulk_radius", r.bulk_radius},
            {"complex_outside_1_05R", r.complex_outside},
            {"fraction_complex_inside_1_05R", r.fraction_inside}};
  j["lambda_inner"] = r.lambda_inner ? json(*r.lambda_inner) : json(nullptr);
  return j;
}

void write_claim1_rows(std::ostream& f, const Claim1Report& r, const std::string& prefix) {
  if (r.dense) {
    SpectrumReport s;
    s.all_eigs = r.eigs;
    s.leading = Complex(r.lambda1, 0.0);
    for (const auto& z : r.eigs)
      if (std::abs(z) > std::abs(s.leading)) s.leading = z;
    if (r.lambda_inner)
      for (const auto& z : r.eigs)
        if (z.real() == *r.lambda_inner && std::abs(z.imag()) < 1e-8 * std::abs(z)) s.inner_real = z;
    const auto kinds = classify_spectrum(s);
    for (std::size_t k = 0; k < r.eigs.size(); ++k)
      f << prefix << r.eigs[k].real() << ',' << r.eigs[k].imag() << ',' << kinds[k] << '\n';
    return;
  }
  for (double x : r.real_eigs) {
    const char* kind = x == r.lambda1 ? "leading" : (r.lambda_inner && x == *r.lambda_inner ? "inner" : "bulk");
    f << prefix << x << ",0," << kind << '\n';
  }
}

json fig2(const json& cfg, const fs::path& out) {
  const Index n = cfg["n"];
  const WeightedGraph J = gaussian_J(n, cfg["c"], cfg["J0"], cfg["nu"], cfg["seed"]);
  const Claim1Report r = claim1_report(tanh_weights(J, cfg["beta"]), cfg["dense_cap"]);
  auto f = open_csv(out / "fig2_spectrum.csv");
  f << "re,im,kind\n";
  write_claim1_rows(f, r, "");
  return {{"files", {"fig2_spectrum.csv"}}, {"summary", claim1_json(r)}};
}

json fig3(const json& cfg, const fs::path& out) {
  const Index n = cfg["n"];
  const double c = cfg["c"].is_null() ? std::pow(std::log(static_cast<double>(n)), 2) : cfg["c"].get<double>();
  const WeightedGraph J = gaussian_J(n, c, cfg["J0"], cfg["nu"], cfg["seed"]);
  const WeightedGraph W = tanh_weights(J, cfg["beta"]);
  const SpectrumMoments mom = spectrum_moments(W);
  const double s = mom.c * mom.mean_w2;

  const SpectrumReport B = full_spectrum_B(W, cfg["dense_cap"]);
  const auto m0 = eigs_M0(W, s);
  auto f = open_csv(out / "fig3_spectra.csv");
  f << "source,re,im\n";
  for (const auto& z : B.all_eigs) f << "B," << z.real() << ',' << z.imag() << '\n';
  for (const auto& z : m0) f << "M0," << z.real() << ',' << z.imag() << '\n';

  // Probe the largest-modulus eigenvalues of B with |lambda| >= 1.
  std::vector<Complex> probes;
  for (const auto& z : B.all_eigs)
    if (std::abs(z) >= 1.0 && z.imag() >= 0.0) probes.push_back(z);
  std::sort(probes.begin(), probes.end(), [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
  if (probes.size() > static_cast<std::size_t>(cfg["probes"].get<int>())) probes.resize(cfg["probes"].get<int>());
  double worst = 0.0;
  bool first = true;
  for (const auto& lam : probes) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(build_M_of_lambda(W, lam, cfg["dense_cap"]), false);
    double best = INFINITY;
    for (Index k = 0; k < es.eigenvalues().size(); ++k) best = std::min(best, std::abs(es.eigenvalues()[k] - lam));
    worst = std::max(worst, best);
    if (first && std::abs(lam.imag()) > 1e-8) {
      for (Index k = 0; k < es.eigenvalues().size(); ++k)
        f << "M(g)," << es.eigenvalues()[k].real() << ',' << es.eigenvalues()[k].imag() << '\n';
      first = false;
    }
  }
  auto top_real = [](const std::vector<Complex>& v) {
    double best = -INFINITY;
    for (const auto& z : v)
      if (std::abs(z.imag()) <= 1e-8 * std::max(1.0, std::abs(z))) best = std::max(best, z.real());
    return best;
  };
  const double b_lead = top_real(B.all_eigs), m0_lead = top_real(m0);
  return {{"files", {"fig3_spectra.csv"}},
          {"summary",
           {{"c", mom.c},
            {"top_real_B", b_lead},
            {"top_real_M0", m0_lead},
            {"top_real_relative_gap", std::abs(m0_lead - b_lead) / std::abs(b_lead)},
            {"probes", probes.size()},
            {"max_distance_B_to_spec_M", worst},
            {"lambda1_theory", mom.lambda1()},
            {"radius_theory", mom.radius()}}}};
}

json fig4(const json& cfg, const fs::path& out) {
  const Index n = cfg["n"];
  const double c = cfg["c"], J0 = cfg["J0"], nu = cfg["nu"];
  const auto dist = WeightDistribution::gaussian(J0, nu);
  const WeightedGraph J = gaussian_J(n, c, J0, nu, cfg["seed"]);
  const double bF = model_beta_f(dist, c), bSG = model_beta_sg(dist, c), bN = analytic_beta_n(dist);
  const std::vector<std::pair<std::string, double>> columns = {
      {"half_beta_f", 0.5 * bF}, {"beta_f", bF}, {"beta_sg", bSG}, {"beta_n", bN}};
  auto fs_ = open_csv(out / "fig4_spectrum.csv");
  auto fh = open_csv(out / "fig4_hessian.csv");
  fs_ << "column,beta,re,im,kind\n";
  fh << "column,beta,k,eigenvalue\n";
  json summary = json::object();
  for (const auto& [name, beta] : columns) {
    const Claim1Report r = claim1_report(tanh_weights(J, beta), cfg["dense_cap"]);
    write_claim1_rows(fs_, r, name + "," + std::to_string(beta) + ",");
    EigenOptions eig;
    eig.tol = 1e-7;
    const auto pairs = extremal_eigpairs(bethe_hessian(J, beta), cfg["hessian_eigs"].get<Index>(), Which::smallest, eig);
    for (std::size_t k = 0; k < pairs.size(); ++k) fh << name << ',' << beta << ',' << k << ',' << pairs[k].value << '\n';
    json col = claim1_json(r);
    col["beta"] = beta;
    col["gamma_min"] = pairs.front().value;
    summary[name] = col;
  }
  return {{"files", {"fig4_spectrum.csv", "fig4_hessian.csv"}}, {"summary", summary}};
}

json fig5(const json& cfg, const fs::path& out) {
  PlantedParams p;
  p.n = cfg["n"];
  p.c = cfg["c"];
  p.nu = cfg["nu"];
  const std::vector<double> J0s = cfg["J0"];
  const int seeds = cfg["seeds"];
  const std::uint64_t base = cfg["seed"];
  NishimoriOptions opts;
  opts.epsilon = cfg["epsilon"];
  opts.cap_factor = cfg["cap_factor"];

  std::vector<EstimatorCell> cells(J0s.size() * static_cast<std::size_t>(seeds));
  parallel_for(cells.size(), cfg["threads"], [&](std::size_t k) {
    PlantedParams q = p;
    q.J0 = J0s[k / seeds];
    cells[k] = run_estimator_cell(q, base + k % seeds, opts);
  });
  auto fc = open_csv(out / "fig5_cells.csv");
  fc << "J0,seed,beta_n,beta_sg_model,beta_n_hat,beta_sg_hat,beta_th,detectable,capped,iterations,seconds\n";
  for (const auto& c : cells)
    fc << c.J0 << ',' << c.seed << ',' << c.beta_n << ',' << c.beta_sg_model << ',' << c.estimate.beta_n_hat << ','
       << c.estimate.beta_sg_hat << ',' << c.estimate.beta_th << ',' << c.estimate.detectable << ','
       << c.estimate.capped << ',' << c.estimate.iterations.size() << ',' << c.seconds << '\n';
  auto fl = open_csv(out / "fig5_left.csv");
  fl << "J0,beta_n,ratio_model,mean_ratio,std_ratio,sg_over_n,detectable,capped\n";
  json rows = json::array();
  for (std::size_t a = 0; a < J0s.size(); ++a) {
    std::vector<double> ratios;
    int det = 0, cap = 0;
    for (int s = 0; s < seeds; ++s) {
      const auto& c = cells[a * seeds + s];
      ratios.push_back(c.estimate.beta_n_hat / c.beta_n);
      det += c.estimate.detectable;
      cap += c.estimate.capped;
    }
    const auto [m, sd] = mean_std(ratios);
    const auto& c0 = cells[a * seeds];
    fl << J0s[a] << ',' << c0.beta_n << ',' << c0.beta_n / c0.beta_sg_model << ',' << m << ',' << sd << ','
       << c0.beta_sg_model / c0.beta_n << ',' << det << ',' << cap << '\n';
    rows.push_back({{"J0", J0s[a]}, {"mean_ratio", m}, {"std_ratio", sd}, {"detectable", det}, {"capped", cap}});
  }

  // Right panel: two smallest eigenvalues of H_beta along beta.
  const double cR = cfg["right_c"], J0R = cfg["right_J0"], nuR = cfg["right_nu"];
  const auto distR = WeightDistribution::gaussian(J0R, nuR);
  const WeightedGraph JR = gaussian_J(cfg["right_n"], cR, J0R, nuR, base);
  const double bF = model_beta_f(distR, cR), bSG = model_beta_sg(distR, cR), bN = analytic_beta_n(distR);
  const int points = cfg["right_points"];
  auto fr = open_csv(out / "fig5_right.csv");
  fr << "beta,gamma1,gamma2\n";
  EigenOptions eig;
  eig.tol = 1e-6;
  for (int k = 0; k < points; ++k) {
    const double beta = 0.25 * bF + (1.5 * bN - 0.25 * bF) * k / std::max(1, points - 1);
    const auto pairs = extremal_eigpairs(bethe_hessian(JR, beta), 2, Which::smallest, eig);
    fr << beta << ',' << pairs[0].value << ',' << pairs[1].value << '\n';
  }
  return {{"files", {"fig5_cells.csv", "fig5_left.csv", "fig5_right.csv"}},
          {"summary", {{"left", rows}, {"right", {{"beta_f", bF}, {"beta_sg", bSG}, {"beta_n", bN}}}}}};
}

json overlap_grid(const json& cfg, const fs::path& out, const std::string& stem,
                  const std::vector<std::pair<Topology, double>>& panels) {
  const std::vector<double> ratios = cfg["ratios"];
  const int seeds = cfg["seeds"];
  const std::uint64_t base = cfg["seed"];
  std::vector<Method> methods;
  for (const auto& m : cfg["methods"]) methods.push_back(parse_method(m));

  struct Key {
    std::size_t panel, ratio;
    int seed;
  };
  std::vector<Key> keys;
  for (std::size_t a = 0; a < panels.size(); ++a)
    for (std::size_t b = 0; b < ratios.size(); ++b)
      for (int s = 0; s < seeds; ++s) keys.push_back({a, b, s});
  std::vector<OverlapCell> cells(keys.size());
  parallel_for(keys.size(), cfg["threads"], [&](std::size_t k) {
    PlantedParams p;
    p.n = cfg["n"];
    p.nu = cfg["nu"];
    p.topology = panels[keys[k].panel].first;
    p.c = panels[keys[k].panel].second;
    p.exponent = cfg.value("exponent", 3.0);
    cells[k] = run_overlap_cell(p, ratios[keys[k].ratio], base + keys[k].seed, methods);
  });

  auto fc = open_csv(out / (stem + "_cells.csv"));
  fc << "topology,c,ratio,J0,seed,method,overlap,seconds\n";
  for (const auto& c : cells)
    for (const auto& [m, o] : c.overlaps)
      fc << (c.params.topology == Topology::power_law ? "power_law" : "erdos_renyi") << ',' << c.params.c << ','
         << c.ratio << ',' << c.params.J0 << ',' << c.seed << ',' << method_name(m) << ',' << o << ',' << c.seconds
         << '\n';
  auto fa = open_csv(out / (stem + ".csv"));
  fa << "topology,c,ratio,method,mean_overlap,std_overlap\n";
  json rows = json::array();
  for (std::size_t a = 0; a < panels.size(); ++a)
    for (std::size_t b = 0; b < ratios.size(); ++b)
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        std::vector<double> v;
        for (int s = 0; s < seeds; ++s) v.push_back(cells[(a * ratios.size() + b) * seeds + s].overlaps[mi].second);
        const auto [m, sd] = mean_std(v);
        const char* topo = panels[a].first == Topology::power_law ? "power_law" : "erdos_renyi";
        fa << topo << ',' << panels[a].second << ',' << ratios[b] << ',' << method_name(methods[mi]) << ',' << m
           << ',' << sd << '\n';
        rows.push_back({{"topology", topo}, {"c", panels[a].second}, {"ratio", ratios[b]},
                        {"method", method_name(methods[mi])}, {"mean", m}, {"std", sd}});
      }
  return {{"files", {stem + "_cells.csv", stem + ".csv"}}, {"summary", rows}};
}

json fig6(const json& cfg, const fs::path& out) {
  std::vector<std::pair<Topology, double>> panels;
  for (double c : cfg["c"].get<std::vector<double>>()) panels.emplace_back(Topology::erdos_renyi, c);
  return overlap_grid(cfg, out, "fig6", panels);
}

json degree(const json& cfg, const fs::path& out) {
  std::vector<std::pair<Topology, double>> panels;
  for (const auto& t : cfg["topologies"]) panels.emplace_back(parse_topology(t), cfg["c"].get<double>());
  json result = overlap_grid(cfg, out, "degree", panels);

  // Histograms of the informative eigenvector on one power-law instance.
  PlantedParams p;
  p.n = cfg["n"];
  p.nu = cfg["nu"];
  p.c = cfg["c"];
  p.exponent = cfg["exponent"];
  p.topology = Topology::power_law;
  const double ratio = cfg["histogram_ratio"];
  p.J0 = j0_for_ratio(ratio, p.c, p.nu);
  const LabeledInstance inst = planted_gaussian(p, cfg["seed"]);
  auto fh = open_csv(out / "degree_hist.csv");
  fh << "method,bin_center,count_plus,count_minus\n";
  for (Method m : {Method::nishimori_bh, Method::spinglass_bh}) {
    const ClassificationResult r = run_method(m, inst.graph);
    Eigen::VectorXd x = r.eigvec * std::sqrt(static_cast<double>(p.n));
    const int bins = cfg["histogram_bins"];
    const double lo = x.minCoeff(), hi = x.maxCoeff(), w = (hi - lo) / bins;
    std::vector<int> plus(bins, 0), minus(bins, 0);
    for (Index i = 0; i < x.size(); ++i) {
      const int b = std::min(bins - 1, static_cast<int>((x[i] - lo) / w));
      (inst.labels[i] > 0 ? plus : minus)[b]++;
    }
    for (int b = 0; b < bins; ++b)
      fh << method_name(m) << ',' << lo + (b + 0.5) * w << ',' << plus[b] << ',' << minus[b] << '\n';
  }
  result["files"].push_back("degree_hist.csv");
  return result;
}

struct FigureSpec {
  json defaults;
  json full_size;
  std::function<json(const json&, const fs::path&)> run;
};

const std::map<std::string, FigureSpec>& registry() {
  static const std::map<std::string, FigureSpec> r = {
      {"fig2",
       {{{"n", 3000}, {"c", 5.0}, {"J0", 1.0}, {"nu", 1.0}, {"beta", 10.0}, {"seed", 1}, {"dense_cap", kDenseDirectedCap}},
        json::object(),
        fig2}},
      {"fig3",
       {{{"n", 100}, {"c", nullptr}, {"J0", 1.0}, {"nu", 3.0}, {"beta", 1.0}, {"seed", 1}, {"probes", 40},
         {"dense_cap", kDenseDirectedCap}},
        json::object(),
        fig3}},
      {"fig4",
       {{{"n", 1000}, {"c", 10.0}, {"J0", 1.0}, {"nu", 1.5}, {"seed", 1}, {"hessian_eigs", 10},
         {"dense_cap", kDenseDirectedCap}},
        json::object(),
        fig4}},
      {"fig5",
       {{{"n", 10000}, {"c", 5.0}, {"nu", 3.5}, {"J0", {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0}}, {"seeds", 10},
         {"seed", 1}, {"epsilon", 1e-5}, {"cap_factor", 2.0}, {"right_n", 10000}, {"right_c", 10.0},
         {"right_J0", 1.0}, {"right_nu", 1.5}, {"right_points", 40}},
        {{"right_n", 30000}},
        fig5}},
      {"fig6",
       {{{"n", 10000}, {"c", {3.0, 15.0}}, {"nu", 1.0}, {"ratios", {0.8, 1.2, 1.6, 2.0, 3.0}}, {"seeds", 10},
         {"seed", 1}, {"methods", {"nishimori", "spinglass", "mean_field", "laplacian", "bp"}}},
        {{"n", 30000}},
        fig6}},
      {"degree",
       {{{"n", 10000}, {"c", 10.0}, {"nu", 1.0}, {"exponent", 3.0}, {"ratios", {1.2, 1.6, 2.0, 3.0, 3.6}},
         {"seeds", 10}, {"seed", 1}, {"methods", {"nishimori", "spinglass"}},
         {"topologies", {"power_law", "erdos_renyi"}}, {"histogram_ratio", 3.6}, {"histogram_bins", 60}},
        {{"n", 30000}},
        degree}},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return ids;
}

json reproduce(const std::string& figure, json config) {
  const auto it = registry().find(figure);
  if (it == registry().end()) throw InvalidParameter("unknown figure id '" + figure + "'");
  if (!config.is_object()) throw InvalidParameter("configuration must be a JSON object");
  const bool full = config.value("full_size", false);
  json cfg = resolve(config, full ? resolve(it->second.full_size, it->second.defaults) : it->second.defaults);
  cfg = resolve(cfg, {{"output_dir", "."}, {"threads", 1}, {"full_size", false}});
  const fs::path out = cfg["output_dir"].get<std::string>();
  fs::create_directories(out);

  const auto t0 = std::chrono::steady_clock::now();
  json result;
  try {
    result = it->second.run(cfg, out);
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("bad configuration: ") + e.what());
  }
  json manifest = {{"schema", 1},
                   {"figure", figure},
                   {"config", cfg},
                   {"files", result["files"]},
                   {"summary", result["summary"]},
                   {"seconds", seconds_since(t0)}};
  std::ofstream(out / "manifest.json") << manifest.dump(2) << '\n';
  return manifest;
}

}  // namespace nbh
