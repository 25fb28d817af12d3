#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gentropy/io.hpp"

namespace py = pybind11;
using namespace gentropy;

namespace {

py::dict cv_dict(const CertifiedValue& v) {
  py::dict d;
  d["lo"] = to_double_down(v.lo);
  d["hi"] = to_double_up(v.hi);
  d["lo_exact"] = to_string(v.lo);
  d["hi_exact"] = to_string(v.hi);
  return d;
}

PrimeSeq seq_from(const std::vector<std::string>& primes) {
  std::vector<BigInt> bi;
  for (auto& p : primes) bi.emplace_back(p);
  return PrimeSeq::validate(bi);
}

const char* class_name(GClass c) {
  switch (c) {
    case GClass::G00: return "G00";
    case GClass::G0Sh: return "G0#";
    case GClass::G0Inf: return "G0inf";
    default: return "unknown";
  }
}

py::dict names_dict(const SymbolicNames& names) {
  py::dict entries;
  for (auto& [w, mu] : names.names.entries) entries[py::str(w)] = cv_dict(mu);
  py::dict d;
  d["entries"] = entries;
  d["residual"] = cv_dict(names.names.residual);
  d["normalizer"] = cv_dict(names.normalizer);
  d["stage_relative"] = names.stage_relative;
  d["level_len"] = to_string(names.level_len);
  return d;
}

}  // namespace

PYBIND11_MODULE(pygentropy, m) {
  m.doc() = "certified g-entropy sequences on rank-one cutting-and-stacking systems";

  py::class_<EntropyFunction>(m, "GFunction")
      .def("spec", &EntropyFunction::spec_string)
      .def("eval", &EntropyFunction::eval, py::arg("x"))
      .def("eval_point",
           [](const EntropyFunction& g, const std::string& x) {
             return cv_dict(g.eval_point(rational_from_string(x)));
           },
           py::arg("x"))
      .def("phi", &EntropyFunction::phi, py::arg("x"))
      .def("phi_of_log2", &EntropyFunction::phi_of_log2, py::arg("t"))
      .def("d_max", &EntropyFunction::d_max)
      .def("max_value", &EntropyFunction::max_value)
      .def("left_derivative_half", &EntropyFunction::left_derivative_half)
      .def("jensen_bound",
           [](const EntropyFunction& g, const std::string& n) {
             return cv_dict(g.jensen_bound(BigInt(n)));
           },
           py::arg("n"))
      .def("classify",
           [](const EntropyFunction& g, int depth) {
             auto r = g.classify(depth);
             py::dict d;
             d["class"] = class_name(r.cls);
             d["C"] = r.C;
             d["depth"] = r.depth;
             d["r_depth"] = r.r_depth;
             return d;
           },
           py::arg("depth"));

  m.def("entropy_function", &parse_g_spec, py::arg("spec"),
        "parse a g specifier: eta, g0:a=2, gtilde:a=2,alpha=0.5, gir, gm:m=1");

  py::class_<RankOneSystem>(m, "System")
      .def("num_stages", [](const RankOneSystem& s) { return s.stages().size(); })
      .def("stage",
           [](const RankOneSystem& s, int n) {
             const Stage& st = s.stage(n);
             py::dict d;
             d["n"] = st.n;
             d["height"] = st.height.get_str();
             d["x"] = to_string(st.x);
             d["y"] = to_string(st.y);
             d["k"] = st.k.get_str();
             d["j"] = st.j.get_str();
             d["level_len"] = to_string(st.level_len);
             d["levels_materialized"] = st.levels_materialized;
             return d;
           },
           py::arg("n"))
      .def("normalizer",
           [](const RankOneSystem& s, int n) { return cv_dict(s.normalizer(n)); },
           py::arg("n"))
      .def("to_json", &system_to_json);

  m.def("build_system",
        [](const std::vector<std::string>& primes, int stages, std::uint64_t level_budget) {
          return RankOneSystem::build(seq_from(primes), stages, level_budget);
        },
        py::arg("primes"), py::arg("stages"), py::arg("level_budget") = (std::uint64_t)1 << 21);
  m.def("system_from_json", &system_from_json, py::arg("text"));

  m.def("name_measures",
        [](const RankOneSystem& sys, int n, int mlv, const std::vector<std::uint64_t>& e_levels,
           std::uint64_t k, int workers) {
          return names_dict(name_measures_symbolic(sys, n, mlv, e_levels, k, workers));
        },
        py::arg("system"), py::arg("n"), py::arg("m"), py::arg("e_levels"), py::arg("k"),
        py::arg("workers") = 1);

  m.def("entropy",
        [](const EntropyFunction& g, const RankOneSystem& sys, int n, int mlv,
           const std::vector<std::uint64_t>& e_levels, std::uint64_t k, int workers) {
          auto names = name_measures_symbolic(sys, n, mlv, e_levels, k, workers);
          return cv_dict(entropy_from_names(g, names));
        },
        py::arg("g"), py::arg("system"), py::arg("n"), py::arg("m"), py::arg("e_levels"),
        py::arg("k"), py::arg("workers") = 1);

  m.def("theorem54",
        [](const EntropyFunction& g, const RankOneSystem& sys, int n, int workers) {
          const Stage& s = sys.stage(n);
          std::uint64_t k = s.height.get_ui();
          auto names = name_measures_symbolic(sys, n + 1, 0, {0}, k, workers);
          CertifiedValue muE = CertifiedValue::point(Rational(1)) / names.normalizer;
          auto rep = theorem54_check(g, names, muE, sys.primes().primes[(size_t)n], s.x);
          py::dict d;
          d["holds"] = rep.holds;
          d["degenerate"] = rep.degenerate;
          d["H"] = cv_dict(rep.H);
          d["rhs"] = cv_dict(rep.rhs);
          d["ratio"] = cv_dict(rep.ratio);
          d["floor_lambda_p"] = rep.qr.floor_lambda_p.get_str();
          return d;
        },
        py::arg("g"), py::arg("system"), py::arg("n"), py::arg("workers") = 1);

  m.def("lemma58",
        [](const RankOneSystem& sys, const std::string& k, int n, double eps, double a, int r,
           bool strict_range) {
          auto rep = lemma58_bound(sys, BigInt(k), n, eps, a, r, strict_range);
          py::dict d;
          d["m1"] = rep.m1;
          d["m2"] = rep.m2;
          d["d"] = to_string(rep.d);
          d["bound"] = cv_dict(rep.bound);
          d["k_in_range"] = rep.k_in_range;
          return d;
        },
        py::arg("system"), py::arg("k"), py::arg("n"), py::arg("eps"), py::arg("a"), py::arg("r"),
        py::arg("strict_range") = false);

  m.def("nonisomorphism",
        [](const std::vector<std::string>& xi0, const std::vector<std::string>& xi, double a,
           double b, int r, std::uint64_t l_lo, std::uint64_t l_hi, std::uint64_t l_step) {
          auto rep = nonisomorphism_report(seq_from(xi0), seq_from(xi), a, b, r, l_lo, l_hi, l_step);
          py::dict d;
          d["verdict"] = rep.verdict;
          d["threshold"] = rep.threshold;
          d["range_inf"] = rep.range_inf;
          d["ratios"] = rep.ratios;
          d["sup_p3_ratio"] = rep.sup_p3_ratio;
          d["growth_condition_ok"] = rep.growth_condition_ok;
          return d;
        },
        py::arg("xi0"), py::arg("xi"), py::arg("a"), py::arg("b"), py::arg("r"), py::arg("l_lo"),
        py::arg("l_hi"), py::arg("l_step") = 1);

  m.def("bernoulli_entropy",
        [](const EntropyFunction& g, const std::string& p, std::uint64_t n) {
          auto spec = cylinder_measures(SubshiftSpec::full_shift(rational_from_string(p)), n);
          return cv_dict(entropy_from_spectrum(g, spec));
        },
        py::arg("g"), py::arg("p"), py::arg("n"));

  m.def("hir", [](double x) { return HFunction::iksanow_rosler().eval(x); }, py::arg("x"),
        "the piecewise-linear slowly-flattening h with h(x)=x on [0,4)");
  m.def("period", [](const std::string& w) { return period(w); }, py::arg("word"));
}
