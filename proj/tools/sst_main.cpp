// sst: exact moments, transfer asymptotics, and limit-law constants for
// additive functionals on random search trees.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"

#include "sst/exact_engine.hpp"
#include "sst/indicial.hpp"
#include "sst/limit_laws.hpp"
#include "sst/montecarlo.hpp"
#include "sst/sing_expansion.hpp"
#include "sst/transfer.hpp"
#include "sst/verify.hpp"

using json = nlohmann::ordered_json;
using namespace sst;

namespace {

struct RunConfig {
  unsigned precision_bits = 128;
  long truncation = 1000000;
  double quad_tol = 1e-12;
  uint64_t seed = 0;
  bool seed_set = false;
  std::string format = "json";
  std::string output;
};

double jd(const Real& x) { return to_double(x); }

void emit(const RunConfig& cfg, const json& doc, const std::string& csv = "") {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) throw DomainError("cannot open output file " + cfg.output);
    out = &file;
  }
  if (cfg.format == "csv" && !csv.empty())
    (*out) << csv;
  else
    (*out) << doc.dump(2) << "\n";
}

uint64_t resolve_seed(RunConfig& cfg) {
  if (!cfg.seed_set) {
    std::random_device rd;
    cfg.seed = ((uint64_t)rd() << 32) ^ rd();
    std::cerr << "seed: " << cfg.seed << " (entropy draw)\n";
  }
  return cfg.seed;
}

json base_doc(const std::string& command, const json& params) {
  return json{{"command", command}, {"params", params}, {"values", json::object()},
              {"bounds", json::object()}, {"provenance", json::object()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"additive tree functionals: exact moments, transfer theorems, limit laws"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value configuration file");

  RunConfig cfg;
  if (const char* env = std::getenv("SST_PRECISION")) cfg.precision_bits = std::atoi(env);
  app.add_option("--precision", cfg.precision_bits, "working precision in bits (>= 64)")
      ->check(CLI::Range(64u, 8192u));
  app.add_option("--truncation", cfg.truncation, "series truncation N");
  app.add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "RNG seed")->each([&](const std::string&) {
    cfg.seed_set = true;
  });
  app.add_option("--format", cfg.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output, "output path (default stdout)");

  // roots
  auto* roots_cmd = app.add_subcommand("roots", "indicial polynomial roots and identities");
  int roots_m = 3;
  bool roots_identities = false;
  roots_cmd->add_option("--m", roots_m, "branching factor")->required();
  roots_cmd->add_flag("--identities", roots_identities, "include indicial identity residuals");

  // moments
  auto* mom_cmd = app.add_subcommand("moments", "exact moment tables");
  std::string mom_model = "rpm", mom_toll = "log", mom_center;
  int mom_m = 2, mom_kmax = 2;
  long mom_nmax = 100;
  mom_cmd->add_option("--model", mom_model)->check(CLI::IsMember({"rpm", "catalan"}));
  mom_cmd->add_option("--m", mom_m);
  mom_cmd->add_option("--toll", mom_toll);
  mom_cmd->add_option("--kmax", mom_kmax);
  mom_cmd->add_option("--nmax", mom_nmax);
  mom_cmd->add_option("--center", mom_center, "center at 'mean' before raising to powers");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo sampling of the functional");
  std::string sim_model = "rpm", sim_toll = "log", sim_targets;
  int sim_m = 2, sim_workers = 1;
  long sim_n = 1000, sim_samples = 10000;
  sim_cmd->add_option("--model", sim_model)->check(CLI::IsMember({"rpm", "catalan"}));
  sim_cmd->add_option("--m", sim_m);
  sim_cmd->add_option("--toll", sim_toll);
  sim_cmd->add_option("--n", sim_n);
  sim_cmd->add_option("--samples", sim_samples);
  sim_cmd->add_option("--workers", sim_workers);
  sim_cmd->add_option("--targets", sim_targets, "file with target mean [variance]");

  // transfer
  auto* tr_cmd = app.add_subcommand("transfer", "exact and asymptotic transfer");
  std::string tr_toll = "log", tr_mode = "ett", tr_class = "a";
  int tr_m = 2;
  long tr_nmax = 500;
  double tr_k2 = 1, tr_k4 = 1, tr_v = 2, tr_beta = 0.75;
  tr_cmd->add_option("--m", tr_m);
  tr_cmd->add_option("--toll", tr_toll);
  tr_cmd->add_option("--mode", tr_mode)->check(CLI::IsMember({"ett", "att", "converse"}));
  tr_cmd->add_option("--nmax", tr_nmax);
  tr_cmd->add_option("--class", tr_class)
      ->check(CLI::IsMember({"a", "b", "c", "slowvary"}));
  tr_cmd->add_option("--k2", tr_k2, "K2 for class b");
  tr_cmd->add_option("--k4", tr_k4, "K4 for class c");
  tr_cmd->add_option("--v", tr_v, "exponent v for class c");
  tr_cmd->add_option("--beta", tr_beta, "exponent beta for class slowvary");

  // hadamard
  auto* had_cmd = app.add_subcommand("hadamard", "Hadamard-product coefficient families");
  double had_alpha = 0.4, had_beta = 0.9;
  int had_terms = 4;
  long had_verify = 0;
  had_cmd->add_option("--alpha", had_alpha)->required();
  had_cmd->add_option("--beta", had_beta)->required();
  had_cmd->add_option("--terms", had_terms);
  had_cmd->add_option("--verify", had_verify, "check the prediction at this coefficient index");

  // limit
  auto* lim_cmd = app.add_subcommand("limit", "limit-law moment sequences");
  std::string lim_law = "ck", lim_toll = "log";
  double lim_alpha = 1.0, lim_beta = 2.0;
  int lim_m = 2, lim_kmax = 6;
  double lim_tol = 1e-12;
  lim_cmd->add_option("--law", lim_law)
      ->check(CLI::IsMember({"ck", "gk", "mk", "shape", "clt"}));
  lim_cmd->add_option("--alpha", lim_alpha);
  lim_cmd->add_option("--beta", lim_beta);
  lim_cmd->add_option("--m", lim_m);
  lim_cmd->add_option("--toll", lim_toll);
  lim_cmd->add_option("--kmax", lim_kmax);
  lim_cmd->add_option("--tol", lim_tol);

  // constants
  auto* con_cmd = app.add_subcommand("constants", "named asymptotic constants");
  std::string con_which = "k2";
  con_cmd->add_option("--which", con_which, "k2|v|c0|sigma2:ALPHA")->required();

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "run the cross-validation matrix");
  std::string ver_suite = "quick", ver_fault;
  ver_cmd->add_option("--suite", ver_suite)->check(CLI::IsMember({"quick", "full"}));
  ver_cmd->add_option("--inject-fault", ver_fault, "harness self-test: psi-prime")
      ->check(CLI::IsMember({"psi-prime"}));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage
    return 1;
  }

  precision::set_bits(cfg.precision_bits);

  try {
    if (roots_cmd->parsed()) {
      const auto& data = psi_roots(roots_m);
      json doc = base_doc("roots", {{"m", roots_m}});
      json rr = json::array(), pp = json::array();
      for (auto& z : data.roots) rr.push_back({jd(z.re), jd(z.im)});
      for (auto& z : data.psi_prime) pp.push_back({jd(z.re), jd(z.im)});
      doc["values"]["roots"] = rr;
      doc["values"]["psi_prime"] = pp;
      if (data.alpha) doc["values"]["alpha"] = jd(*data.alpha);
      doc["bounds"]["max_psi_residual"] = jd(data.max_residual);
      doc["provenance"] = "deflation of known roots + Aberth iteration, Newton-polished";
      if (!data.warnings.empty()) doc["values"]["warnings"] = data.warnings;
      if (roots_identities) {
        auto res = identity_residuals(roots_m, Cplx(Real(0)));
        json rj{{"partial_fraction", jd(res.partial_fraction)},
                {"shifted_inverse_square", jd(res.shifted_inverse_square)},
                {"root_power_sums", jd(res.root_power_sums)},
                {"deflated_at_two", jd(res.deflated_at_two)},
                {"psi_prime_two_rel", jd(res.psi_prime_two_rel)}};
        if (res.odd_first_order) rj["odd_first_order"] = jd(*res.odd_first_order);
        if (res.odd_second_order) rj["odd_second_order"] = jd(*res.odd_second_order);
        doc["values"]["residuals"] = rj;
      }
      emit(cfg, doc);
    } else if (mom_cmd->parsed()) {
      auto spec = TollSpec::parse(mom_m, mom_toll);
      std::optional<std::vector<Real>> centering;
      MomentTable table = mom_model == "rpm" ? rpm_moments(spec, mom_kmax, mom_nmax)
                                             : catalan_moments(spec, mom_kmax, mom_nmax);
      if (mom_center == "mean") {
        std::vector<Real> c = table.values[1];
        table.values = center_by_binomial_transform(table.values, c);
        table.centering = c;
      } else if (!mom_center.empty()) {
        throw DomainError("unsupported centering: " + mom_center);
      }
      json doc = base_doc("moments", {{"model", mom_model}, {"m", mom_m},
                                      {"toll", spec.name()}, {"kmax", mom_kmax},
                                      {"nmax", mom_nmax}, {"center", mom_center}});
      std::string csv = "n,k,value\n";
      json vals = json::array();
      for (long n = 0; n <= mom_nmax; ++n)
        for (int k = 0; k <= mom_kmax; ++k) {
          vals.push_back({{"n", n}, {"k", k}, {"value", jd(table.values[k][n])}});
          csv += std::to_string(n) + "," + std::to_string(k) + "," +
                 table.values[k][n].str(20) + "\n";
        }
      doc["values"]["table"] = vals;
      doc["provenance"] = mom_model == "rpm" ? "exact moment recurrence, random permutation model"
                                             : "scaled moment recurrence, uniform model";
      emit(cfg, doc, csv);
    } else if (sim_cmd->parsed()) {
      auto spec = TollSpec::parse(sim_m, sim_toll);
      uint64_t seed = resolve_seed(cfg);
      std::vector<double> targets;
      if (!sim_targets.empty()) {
        std::ifstream in(sim_targets);
        double v;
        while (in >> v) targets.push_back(v);
      }
      auto rep = simulate(sim_model == "rpm" ? Model::RPM : Model::Catalan, spec, sim_n,
                          sim_samples, seed, sim_workers, targets);
      json doc = base_doc("simulate",
                          {{"model", rep.model}, {"m", sim_m}, {"toll", spec.name()},
                           {"n", sim_n}, {"samples", sim_samples}, {"seed", seed},
                           {"workers", sim_workers}});
      doc["values"] = {{"mean", rep.mean}, {"variance", rep.variance},
                       {"central3", rep.central3}, {"central4", rep.central4},
                       {"skewness", rep.skewness}, {"excess_kurtosis", rep.excess_kurtosis},
                       {"z_skewness", rep.z_skewness}, {"z_kurtosis", rep.z_kurtosis}};
      doc["bounds"] = {{"se_mean", rep.se_mean}, {"se_variance", rep.se_variance},
                       {"se_central3", rep.se_central3}, {"se_central4", rep.se_central4}};
      if (!rep.target_sigma_distance.empty())
        doc["values"]["target_sigma_distance"] = rep.target_sigma_distance;
      doc["provenance"] = "size-split sampler, counter-based per-worker streams";
      emit(cfg, doc);
    } else if (tr_cmd->parsed()) {
      auto spec = TollSpec::parse(tr_m, tr_toll);
      if (tr_mode == "ett") {
        auto a = ett_extract(spec, tr_nmax);
        json doc = base_doc("transfer", {{"m", tr_m}, {"toll", spec.name()},
                                         {"mode", "ett"}, {"nmax", tr_nmax}});
        std::string csv = "n,a_n\n";
        json vals = json::array();
        for (long n = 0; n <= tr_nmax; ++n) {
          vals.push_back(jd(a[n]));
          csv += std::to_string(n) + "," + a[n].str(20) + "\n";
        }
        doc["values"]["sequence"] = vals;
        doc["bounds"]["imag_residual"] = jd(ett_last_imag_residual());
        doc["provenance"] = "exact transfer theorem, per-root w_n recursion";
        emit(cfg, doc, csv);
      } else if (tr_mode == "att") {
        TollClass cls;
        if (tr_class == "a") cls.kind = TollClass::Kind::SummableSmall;
        if (tr_class == "b") { cls.kind = TollClass::Kind::LinearPlusSmall; cls.K2 = Real(tr_k2); }
        if (tr_class == "c") { cls.kind = TollClass::Kind::PowerLarge; cls.K4 = Real(tr_k4); cls.v = Real(tr_v); }
        if (tr_class == "slowvary") { cls.kind = TollClass::Kind::PowerSlowlyVarying; cls.beta = Real(tr_beta); }
        auto pred = att_predict(spec, cls, cfg.truncation);
        json doc = base_doc("transfer", {{"m", tr_m}, {"toll", spec.name()},
                                         {"mode", "att"}, {"class", tr_class}});
        json terms = json::array();
        for (auto& t : pred.terms)
          terms.push_back({{"coeff", jd(t.coeff)}, {"power", jd(t.power)}, {"logpow", t.logpow}});
        doc["values"]["terms"] = terms;
        doc["values"]["regime"] = pred.regime;
        for (auto& [k, v] : pred.constants) doc["values"][k] = jd(v);
        doc["values"]["refined_remainder"] = pred.refined_remainder;
        doc["bounds"]["k1_tail_bound"] = jd(pred.k1_tail_bound);
        doc["provenance"] = "asymptotic transfer leading terms";
        emit(cfg, doc);
      } else {
        auto a = rpm_mean(spec, tr_nmax);
        auto ce = converse_estimate(tr_m, a);
        json doc = base_doc("transfer", {{"m", tr_m}, {"toll", spec.name()},
                                         {"mode", "converse"}, {"nmax", tr_nmax}});
        doc["values"]["K"] = jd(ce.K);
        json ps = json::array();
        for (size_t i = 1; i < ce.partial_sums.size(); i *= 2)
          ps.push_back({{"n", i}, {"partial_sum", jd(ce.partial_sums[i])}});
        doc["values"]["partial_sums"] = ps;
        doc["provenance"] = "Richardson extrapolation + inverse recurrence";
        emit(cfg, doc);
      }
    } else if (had_cmd->parsed()) {
      auto co = hadamard_power_coeffs(Real(had_alpha), Real(had_beta), had_terms);
      json doc = base_doc("hadamard", {{"alpha", had_alpha}, {"beta", had_beta},
                                       {"terms", had_terms}});
      json lam = json::array(), mu = json::array();
      for (auto& v : co.lambda) lam.push_back(jd(v));
      for (auto& v : co.mu) mu.push_back(jd(v));
      doc["values"]["lambda"] = lam;
      doc["values"]["mu"] = mu;
      if (had_verify > 0) {
        long n = had_verify;
        auto fa = series_of_power(Real(had_alpha), n);
        auto fb = series_of_power(Real(had_beta), n);
        Real exact = fa.coeffs[n] * fb.coeffs[n];
        auto s1 = series_of_power(Real(had_alpha) + Real(had_beta) - 1, n);
        auto s2 = series_of_power(Real(had_alpha) + Real(had_beta) - 2, n);
        Real two = co.mu[0] * s1.coeffs[n] + (had_terms >= 1 ? co.mu[1] * s2.coeffs[n] : Real(0));
        doc["values"]["verify"] = {{"n", n}, {"exact", jd(exact)}, {"predicted", jd(two)},
                                   {"rel_err", jd(abs(two - exact) / abs(exact))}};
      }
      doc["provenance"] = "hypergeometric connection coefficient families";
      emit(cfg, doc);
    } else if (lim_cmd->parsed()) {
      json doc = base_doc("limit", {{"law", lim_law}, {"kmax", lim_kmax}});
      auto push_seq = [&](const LimitMomentSeq& seq) {
        json vals = json::array(), moms = json::array();
        for (auto& v : seq.values) vals.push_back(jd(v));
        for (auto& v : seq.moments) moms.push_back(jd(v));
        doc["values"]["sequence"] = vals;
        doc["values"]["moments"] = moms;
        doc["bounds"]["quadrature_tol"] = jd(seq.quadrature_tol);
        for (auto& [k, v] : seq.params) doc["params"][k] = jd(v);
        doc["provenance"] = seq.kind;
      };
      if (lim_law == "ck") {
        push_seq(catalan_Ck(Real(lim_alpha), lim_kmax));
      } else if (lim_law == "gk") {
        push_seq(y_beta_moments(lim_m, Real(lim_beta), lim_kmax));
      } else if (lim_law == "mk") {
        push_seq(mk_moments(Real(lim_alpha), lim_kmax, Real(lim_tol)));
      } else if (lim_law == "shape") {
        auto s = shape_Ck0(lim_kmax);
        json rec = json::array(), cf = json::array(), gm = json::array();
        for (auto& v : s.recurrence) rec.push_back(jd(v));
        for (auto& v : s.closed_form) cf.push_back(jd(v));
        for (auto& v : s.gaussian_moments) gm.push_back(jd(v));
        doc["values"] = {{"recurrence", rec}, {"closed_form", cf},
                         {"gaussian_moments", gm}, {"sigma2", jd(s.sigma2)}};
        doc["provenance"] = "even-moment recurrence and closed form";
      } else {
        auto spec = TollSpec::parse(lim_m, lim_toll);
        auto c = rpm_clt_constants(spec, cfg.truncation > 100000 ? 5000 : cfg.truncation);
        doc["values"] = {{"mu", jd(c.mu)}, {"sigma2", jd(c.sigma2)}};
        doc["bounds"] = {{"sigma2_tail_bound", jd(c.tail_bound)},
                         {"r_truncation", c.r_truncation}};
        doc["provenance"] = "small-toll CLT constants from exact means";
      }
      emit(cfg, doc);
    } else if (con_cmd->parsed()) {
      json doc = base_doc("constants", {{"which", con_which}});
      if (con_which == "k2") {
        auto c = bst_shape_constants(4000);
        doc["values"]["value"] = jd(c.K2);
        doc["bounds"]["tail_bound"] = jd(c.K2_tail_bound);
      } else if (con_which == "v") {
        auto c = bst_shape_constants(std::min<long>(cfg.truncation, 30000));
        doc["values"]["value"] = jd(c.V);
        doc["values"]["variance_slope"] = jd(c.variance_slope);
        doc["values"]["variance_constant"] = jd(c.variance_constant);
        doc["bounds"]["tail_bound"] = jd(c.V_tail_bound);
      } else if (con_which == "c0") {
        auto c = catalan_shape_constants(std::min<long>(cfg.truncation, 200000));
        doc["values"]["value"] = jd(c.C0);
        doc["values"]["mean_sqrt_coeff"] = jd(c.mean_sqrt_coeff);
        doc["values"]["var_slope"] = jd(c.var_slope);
        doc["bounds"]["tail_bound"] = jd(c.C0_tail_bound);
      } else if (con_which.rfind("sigma2:", 0) == 0) {
        Real a(con_which.substr(7));
        Real v = a == Real(1) / 2 ? sigma2_alpha_limit_half() : sigma2_alpha(a);
        doc["values"]["value"] = jd(v);
        doc["bounds"]["tail_bound"] = 0.0;
      } else {
        throw DomainError("unknown constant: " + con_which);
      }
      doc["provenance"] = "tail-bounded series / closed forms";
      emit(cfg, doc);
    } else if (ver_cmd->parsed()) {
      auto level = ver_suite == "full" ? VerifyLevel::Full : VerifyLevel::Quick;
      auto fault = ver_fault == "psi-prime" ? VerifyFault::PsiPrime : VerifyFault::None;
      uint64_t seed = cfg.seed_set ? cfg.seed : 20240913;
      auto rep = verify_suite(level, &std::cout, fault, seed);
      std::printf("%s: %zu criteria, total %.1fs\n",
                  rep.all_pass ? "ALL PASS" : "FAILURES", rep.results.size(),
                  rep.total_seconds);
      return rep.all_pass ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
