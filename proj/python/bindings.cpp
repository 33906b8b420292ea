#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aswtower/cartier.hpp"
#include "aswtower/iwasawa.hpp"
#include "aswtower/lfun.hpp"
#include "aswtower/profile.hpp"
#include "aswtower/tower.hpp"

namespace py = pybind11;
using namespace aswtower;

namespace {

py::object to_py(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.str()); }

py::object to_py(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(to_py(num(q)), to_py(den(q)));
}

Rational from_py(const py::object& x) {
  py::object fr = py::module_::import("fractions").attr("Fraction")(x);
  return Rational(BigInt(py::str(fr.attr("numerator")).cast<std::string>()),
                  BigInt(py::str(fr.attr("denominator")).cast<std::string>()));
}

TowerSpec make_spec(const std::string& text, std::optional<unsigned> levels, std::optional<std::string> lift) {
  TowerSpec spec = parse_tower_spec(text);
  if (levels) spec.levels = *levels;
  if (lift) spec.lift = parse_lift(*lift);
  return spec;
}

py::dict report_dict(const CheckReport& R) {
  py::list items;
  for (const auto& it : R.items) items.append(py::make_tuple(it.label, it.pass, it.detail));
  py::dict facts;
  for (const auto& [k, v] : R.facts) facts[py::str(k)] = v;
  py::dict d;
  d["suite"] = R.suite;
  d["level"] = R.level;
  d["items"] = items;
  d["failures"] = R.failures();
  d["facts"] = facts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Higher a-numbers of Artin-Schreier-Witt towers";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);

  m.def("genus", [](std::uint32_t p, std::uint32_t d, unsigned n) {
    return to_py(breaks_and_genus(TowerProfile(p, d), n).genus);
  });
  m.def("breaks", [](std::uint32_t p, std::uint32_t d, unsigned n) {
    Breaks b = breaks_and_genus(TowerProfile(p, d), n);
    return py::make_tuple(to_py(b.upper), to_py(b.lower), to_py(b.genus));
  }, "(upper break, lower break, genus) at level n");
  m.def("xi", [](std::uint32_t p, std::uint32_t d, std::uint64_t a) { return to_py(xi(TowerProfile(p, d), a)); });
  m.def("mu", [](std::uint32_t p, std::uint32_t d, std::uint64_t i) { return mu(TowerProfile(p, d), i); });
  m.def("lattice_count", [](std::uint32_t p, std::uint32_t d, unsigned n, std::uint64_t t) {
    return to_py(lattice_count(TowerProfile(p, d), n, BigInt(t)));
  }, py::arg("p"), py::arg("d"), py::arg("n"), py::arg("t") = 0);
  m.def("fn_brute", [](std::uint32_t p, std::uint32_t d, unsigned n, py::object x) {
    return to_py(fn_brute(TowerProfile(p, d), n, from_py(x)));
  });
  m.def("fn_closed", [](std::uint32_t p, std::uint32_t d, unsigned n, py::object x) {
    return to_py(fn_closed(TowerProfile(p, d), n, from_py(x)));
  });
  m.def("formula", [](std::uint32_t p, std::uint32_t d, unsigned r, unsigned n, const std::string& lambda) {
    FormulaResult f = anumber_formula(TowerProfile(p, d), r, n, parse_lambda_mode(lambda));
    py::dict out;
    out["F"] = to_py(f.value);
    out["C"] = to_py(f.cutoff.C_pdr);
    out["lower"] = to_py(f.lower);
    out["exact"] = f.exact_flag;
    out["t"] = to_py(f.t_used);
    out["method"] = f.method;
    return out;
  }, py::arg("p"), py::arg("d"), py::arg("r"), py::arg("n"), py::arg("lambda_mode") = "empirical");
  m.def("exact_r1", [](std::uint32_t p, std::uint32_t d, unsigned n) {
    return to_py(anumber_exact_r1(TowerProfile(p, d), n));
  });
  m.def("asymptotic_ratio", [](std::uint32_t p, std::uint32_t d, unsigned r) {
    return to_py(asymptotics(TowerProfile(p, d), r).ratio);
  });

  m.def("spec_digest", [](const std::string& text) { return spec_digest(parse_tower_spec(text)); });

  m.def("anumbers", [](const std::string& text, unsigned n, unsigned r_max, std::optional<std::string> lift,
                       unsigned threads) {
    TowerSpec spec = make_spec(text, n, lift);
    py::gil_scoped_release release;
    Tower T(spec);
    CartierRun run = run_cartier(T, n, r_max, threads);
    py::gil_scoped_acquire acquire;
    const ANumbers& A = run.anumbers;
    py::dict out;
    out["genus"] = A.genus;
    out["a"] = std::vector<std::size_t>(A.a.begin() + 1, A.a.end());
    out["m"] = A.m;
    out["nilpotent"] = A.nilpotent;
    out["m_nonnegative"] = A.m_nonnegative;
    out["m_sum_ok"] = A.m_sum_ok;
    out["lower_break"] = T.lower_break(n);
    return out;
  }, py::arg("spec"), py::arg("n"), py::arg("r_max") = 1, py::arg("lift") = py::none(), py::arg("threads") = 0);

  m.def("verify", [](const std::string& text, unsigned n, const std::string& suite) {
    TowerSpec spec = make_spec(text, n + (suite == "trace" ? 1 : 0), std::nullopt);
    Tower T(spec);
    CheckReport R = suite == "taunit"       ? verify_taunit(T, n)
                    : suite == "triangular" ? verify_T_triangular(T, n)
                    : suite == "trace"      ? verify_trace(T, n)
                    : suite == "module"     ? verify_module_structure(T, n)
                                            : throw InputError("unknown suite '" + suite + "'");
    return report_dict(R);
  });

  m.def("newton", [](const std::string& text, unsigned n, std::size_t t) {
    TowerSpec spec = make_spec(text, n, std::nullopt);
    Tower T(spec);
    NewtonRun run = run_newton(T, n, t);
    py::dict out;
    py::list pts;
    for (auto [mm, v] : run.np.points) pts.append(py::make_tuple(mm, v));
    out["points"] = pts;
    out["trust_bound"] = to_py(run.np.trust_bound);
    out["alpha_growth_ok"] = run.frob.growth_ok && run.frob.inverse_ok;
    out["hodge"] = report_dict(compare_np_hp(run.np, T.p(), T.d(), T.field()->nu()));
    return out;
  });
}
