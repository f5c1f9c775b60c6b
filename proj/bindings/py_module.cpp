// Python bindings: the main operations, with high-precision scalars narrowed
// to double at the boundary.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sst/exact_engine.hpp"
#include "sst/indicial.hpp"
#include "sst/limit_laws.hpp"
#include "sst/montecarlo.hpp"
#include "sst/sing_expansion.hpp"
#include "sst/transfer.hpp"
#include "sst/verify.hpp"

namespace py = pybind11;
using namespace sst;

namespace {

TollSpec make_spec(int m, const std::string& toll, const std::vector<double>& initial) {
  auto spec = TollSpec::parse(m, toll);
  if (!initial.empty()) {
    if ((int)initial.size() != m - 1)
      throw DomainError("initial values must have length m-1");
    spec.initial.clear();
    for (double b : initial) spec.initial.emplace_back(b);
  }
  return spec;
}

std::vector<double> narrow(const std::vector<Real>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (auto& x : xs) out.push_back(to_double(x));
  return out;
}

std::vector<std::vector<double>> narrow2(const std::vector<std::vector<Real>>& xs) {
  std::vector<std::vector<double>> out;
  for (auto& row : xs) out.push_back(narrow(row));
  return out;
}

}  // namespace

PYBIND11_MODULE(_sst, mod) {
  mod.doc() = "additive functionals on random search trees: exact moments, "
              "transfer theorems, limit laws";

  mod.def("set_precision_bits", &precision::set_bits, py::arg("bits"));
  mod.def("precision_bits", &precision::bits);

  // exact engine
  mod.def(
      "rpm_mean",
      [](int m, const std::string& toll, long n_max, const std::vector<double>& initial) {
        return narrow(rpm_mean(make_spec(m, toll, initial), n_max));
      },
      py::arg("m"), py::arg("toll"), py::arg("n_max"),
      py::arg("initial") = std::vector<double>{});
  mod.def(
      "rpm_moments",
      [](int m, const std::string& toll, int k_max, long n_max,
         const std::vector<double>& initial) {
        return narrow2(rpm_moments(make_spec(m, toll, initial), k_max, n_max).values);
      },
      py::arg("m"), py::arg("toll"), py::arg("k_max"), py::arg("n_max"),
      py::arg("initial") = std::vector<double>{});
  mod.def(
      "catalan_moments",
      [](const std::string& toll, int k_max, long n_max, const std::vector<double>& initial) {
        return narrow2(catalan_moments(make_spec(2, toll, initial), k_max, n_max).values);
      },
      py::arg("toll"), py::arg("k_max"), py::arg("n_max"),
      py::arg("initial") = std::vector<double>{});
  mod.def(
      "rpm_moments_bruteforce",
      [](int m, const std::string& toll, long n, int k_max) {
        return narrow(rpm_moments_bruteforce(make_spec(m, toll, {}), n, k_max).moments);
      },
      py::arg("m"), py::arg("toll"), py::arg("n"), py::arg("k_max"));
  mod.def(
      "catalan_bruteforce",
      [](const std::string& toll, long n, int k_max) {
        return narrow(catalan_bruteforce(make_spec(2, toll, {}), n, k_max).moments);
      },
      py::arg("toll"), py::arg("n"), py::arg("k_max"));

  // indicial
  mod.def("psi_roots", [](int m) {
    const auto& data = psi_roots(m);
    std::vector<std::complex<double>> roots;
    for (auto& z : data.roots) roots.emplace_back(to_double(z.re), to_double(z.im));
    return roots;
  });
  mod.def("alpha_of", [](int m) { return to_double(alpha_of(m)); });
  mod.def("identity_residuals", [](int m) {
    auto r = identity_residuals(m, Cplx(Real(0)));
    py::dict out;
    out["partial_fraction"] = to_double(r.partial_fraction);
    out["shifted_inverse_square"] = to_double(r.shifted_inverse_square);
    out["root_power_sums"] = to_double(r.root_power_sums);
    out["deflated_at_two"] = to_double(r.deflated_at_two);
    out["max_abs"] = to_double(r.max_abs);
    if (r.odd_first_order) out["odd_first_order"] = to_double(*r.odd_first_order);
    if (r.odd_second_order) out["odd_second_order"] = to_double(*r.odd_second_order);
    return out;
  });

  // transfer
  mod.def(
      "ett_extract",
      [](int m, const std::string& toll, long n_max, const std::vector<double>& initial) {
        return narrow(ett_extract(make_spec(m, toll, initial), n_max));
      },
      py::arg("m"), py::arg("toll"), py::arg("n_max"),
      py::arg("initial") = std::vector<double>{});
  mod.def(
      "k1_sum",
      [](int m, const std::string& toll, long N) {
        auto r = k1_sum(make_spec(m, toll, {}), N);
        return py::make_tuple(to_double(r.value), to_double(r.tail_bound));
      },
      py::arg("m"), py::arg("toll"), py::arg("N") = 1000000);

  // hadamard / singular expansions
  mod.def("hadamard_power_coeffs", [](double a, double b, int K) {
    auto c = hadamard_power_coeffs(Real(a), Real(b), K);
    return py::make_tuple(narrow(c.lambda), narrow(c.mu));
  });
  mod.def("polylog_expansion_terms", [](double alpha, int r, int depth) {
    auto e = polylog_expansion(Real(alpha), r, depth);
    std::vector<py::tuple> terms;
    for (auto& t : e.terms)
      terms.push_back(py::make_tuple(to_double(t.coeff.re), to_double(t.a), t.p));
    return terms;
  });
  mod.def("harmonic_square_identity_exact", &harmonic_square_identity_exact,
          py::arg("n_max") = 200);

  // limit laws
  mod.def("catalan_Ck", [](double alpha, int k_max) {
    auto s = catalan_Ck(Real(alpha), k_max);
    return py::make_tuple(narrow(s.values), narrow(s.moments));
  });
  mod.def("sigma2_alpha", [](double alpha) {
    return alpha == 0.5 ? to_double(sigma2_alpha_limit_half())
                        : to_double(sigma2_alpha(Real(alpha)));
  });
  mod.def("sigma2_max", []() {
    auto ls = sigma2_landscape();
    return py::make_tuple(to_double(ls.argmax), to_double(ls.maxval));
  });
  mod.def("borderline_sigma2", [](int m) { return to_double(borderline_sigma2(m)); });
  mod.def("y_beta_moments", [](int m, double beta, int k_max) {
    return narrow(y_beta_moments(m, Real(beta), k_max).values);
  });
  mod.def("mk_moments", [](double alpha, int k_max, double tol) {
    auto s = mk_moments(Real(alpha), k_max, Real(tol));
    return py::make_tuple(narrow(s.values), to_double(s.quadrature_tol));
  }, py::arg("alpha"), py::arg("k_max") = 4, py::arg("tol") = 1e-12);
  mod.def("shape_ck0", [](int k_max) {
    auto s = shape_Ck0(k_max);
    return py::make_tuple(narrow(s.recurrence), narrow(s.closed_form));
  });
  mod.def("bst_shape_constants", [](long n_series) {
    auto c = bst_shape_constants(n_series);
    py::dict out;
    out["K2"] = to_double(c.K2);
    out["K2_tail_bound"] = to_double(c.K2_tail_bound);
    out["V"] = to_double(c.V);
    out["V_tail_bound"] = to_double(c.V_tail_bound);
    out["variance_slope"] = to_double(c.variance_slope);
    out["variance_constant"] = to_double(c.variance_constant);
    return out;
  }, py::arg("n_series") = 8000);
  mod.def("catalan_shape_constants", [](long N) {
    auto c = catalan_shape_constants(N);
    py::dict out;
    out["C0"] = to_double(c.C0);
    out["C0_tail_bound"] = to_double(c.C0_tail_bound);
    out["mean_sqrt_coeff"] = to_double(c.mean_sqrt_coeff);
    out["var_slope"] = to_double(c.var_slope);
    return out;
  }, py::arg("N") = 100000);
  mod.def("rpm_clt_constants", [](int m, const std::string& toll, long N) {
    auto c = rpm_clt_constants(make_spec(m, toll, {}), N);
    py::dict out;
    out["mu"] = to_double(c.mu);
    out["sigma2"] = to_double(c.sigma2);
    out["tail_bound"] = to_double(c.tail_bound);
    return out;
  }, py::arg("m"), py::arg("toll"), py::arg("N") = 4000);
  mod.def("airy_wiener_residuals", [](int k_max) {
    auto r = airy_wiener_check(k_max);
    return py::make_tuple(to_double(r.max_residual_airy), to_double(r.max_residual_wiener));
  });

  // monte carlo
  mod.def(
      "simulate",
      [](const std::string& model, int m, const std::string& toll, long n, long samples,
         uint64_t seed, int workers) {
        auto rep = simulate(model == "rpm" ? Model::RPM : Model::Catalan,
                            make_spec(m, toll, {}), n, samples, seed, workers);
        py::dict out;
        out["mean"] = rep.mean;
        out["variance"] = rep.variance;
        out["se_mean"] = rep.se_mean;
        out["se_variance"] = rep.se_variance;
        out["skewness"] = rep.skewness;
        out["z_skewness"] = rep.z_skewness;
        out["sample_count"] = rep.sample_count;
        return out;
      },
      py::arg("model"), py::arg("m"), py::arg("toll"), py::arg("n"), py::arg("samples"),
      py::arg("seed") = 1, py::arg("workers") = 1);

  // verification
  mod.def("verify_quick", []() {
    auto rep = verify_suite(VerifyLevel::Quick);
    std::vector<py::tuple> rows;
    for (auto& r : rep.results)
      rows.push_back(py::make_tuple(r.id, r.name, r.pass, r.skipped, r.detail));
    return py::make_tuple(rep.all_pass, rows);
  });
}
