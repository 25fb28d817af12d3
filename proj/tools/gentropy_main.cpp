#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "gentropy/io.hpp"

namespace fs = std::filesystem;
using namespace gentropy;

namespace {

std::vector<BigInt> parse_primes(const std::string& csv) {
  std::vector<BigInt> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.emplace_back(tok);
  return out;
}

// "lo..hi" or "lo..hi:step" or a single value
void parse_range(const std::string& s, std::uint64_t& lo, std::uint64_t& hi, std::uint64_t& step) {
  step = 1;
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    lo = hi = std::stoull(s);
    return;
  }
  lo = std::stoull(s.substr(0, dots));
  std::string rest = s.substr(dots + 2);
  auto colon = rest.find(':');
  if (colon != std::string::npos) {
    step = std::stoull(rest.substr(colon + 1));
    rest = rest.substr(0, colon);
  }
  hi = std::stoull(rest);
  if (lo < 1 || hi < lo || step < 1) throw CLI::ValidationError("bad range: " + s);
}

// E specifier: "unit" ([0,1) = stage-0 level 0) or "levels:m=M,idx=i1+i2+..."
void parse_e_spec(const std::string& spec, int& m, std::vector<std::uint64_t>& idx) {
  if (spec == "unit") {
    m = 0;
    idx = {0};
    return;
  }
  if (spec.rfind("levels:", 0) != 0) throw CLI::ValidationError("bad E specifier: " + spec);
  std::string body = spec.substr(7);
  auto mpos = body.find("m=");
  auto ipos = body.find("idx=");
  if (mpos == std::string::npos || ipos == std::string::npos)
    throw CLI::ValidationError("bad E specifier: " + spec);
  m = std::stoi(body.substr(mpos + 2));
  std::stringstream ss(body.substr(ipos + 4));
  std::string tok;
  while (std::getline(ss, tok, '+')) idx.push_back(std::stoull(tok));
}

fs::path resolve_out(const std::string& out) {
  fs::path p(out);
  const char* dir = std::getenv("GENTROPY_OUT");
  if (dir && p.is_relative()) p = fs::path(dir) / p;
  return p;
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
    return;
  }
  fs::path p = resolve_out(out);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + p.string());
  f << content;
  if (!f.good()) {
    f.close();
    fs::remove(p);  // never leave partial outputs behind
    throw std::runtime_error("write failed: " + p.string());
  }
}

RankOneSystem load_system(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open system file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return system_from_json(ss.str());
}

EntropySeries compute_series(const RankOneSystem& sys, const EntropyFunction& g, int m,
                             const std::vector<std::uint64_t>& e_idx, std::uint64_t klo,
                             std::uint64_t khi, std::uint64_t kstep, int stage, int workers) {
  EntropySeries series;
  series.g_descriptor = g.spec_string();
  series.method = "symbolic";
  for (std::uint64_t k = klo; k <= khi; k += kstep) {
    int st = stage >= 0 ? stage : choose_stage(sys, k);
    SymbolicNames names = name_measures_symbolic(sys, st, m, e_idx, k, workers);
    EntropySeriesEntry e;
    e.n = k;
    e.H = entropy_from_names(g, names);
    e.residual_mass = names.names.residual;
    for (const auto& [w, mu] : names.names.entries)
      e.max_atom_upper = std::max(e.max_atom_upper, mu.hi);
    series.entries.push_back(std::move(e));
    series.stage = st;
  }
  series.residual_policy = "tower+tail concavity addon";
  return series;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact g-entropy computations on rank-one cutting-and-stacking systems"};
  app.require_subcommand(1);

  std::string primes_csv, out, system_path, g_spec = "gir", e_spec = "unit", k_range = "1..16";
  std::string seq_spec = "hlog2n", zeta_csv, xi0_csv, xi_csv, l_range = "1..1000";
  int stages = 8, depth = 50, workers = 1, stage = -1, n_stage = 1, r_param = 2;
  std::uint64_t budget_mib = 256, seed = 1, samples = 10000;
  double eps = 0.5, a_param = 0.2, b_param = 0.04;
  bool strict_range = false;
  std::uint64_t kval = 1682;

  auto* c_construct = app.add_subcommand("construct", "build a system file from primes");
  c_construct->add_option("--primes", primes_csv, "comma-separated primes")->required();
  c_construct->add_option("--stages", stages, "stages to materialize");
  c_construct->add_option("--out", out, "output path (default stdout)");

  auto* c_entropy = app.add_subcommand("entropy", "certified H(g,P_k) series");
  c_entropy->add_option("--system", system_path)->required();
  c_entropy->add_option("--g", g_spec);
  c_entropy->add_option("--E", e_spec);
  c_entropy->add_option("--k", k_range, "k range lo..hi[:step]");
  c_entropy->add_option("--stage", stage, "counting stage (default: auto)");
  c_entropy->add_option("--workers", workers);
  c_entropy->add_option("--budget-mib", budget_mib);
  c_entropy->add_option("--out", out);

  auto* c_classify = app.add_subcommand("classify", "finite-sample class verdict for g");
  c_classify->add_option("--g", g_spec);
  c_classify->add_option("--depth", depth);
  c_classify->add_option("--out", out);

  auto* c_rates = app.add_subcommand("rates", "ratio report H(g,P_k)/a_k");
  c_rates->add_option("--system", system_path)->required();
  c_rates->add_option("--g", g_spec);
  c_rates->add_option("--E", e_spec);
  c_rates->add_option("--k", k_range);
  c_rates->add_option("--seq", seq_spec, "n | log2n | hlog2n");
  c_rates->add_option("--zeta", zeta_csv, "reindex thresholds 2q^2 from these primes");
  c_rates->add_option("--workers", workers);
  c_rates->add_option("--out", out);

  auto* c_t54 = app.add_subcommand("theorem54", "finite-stage lower-bound mechanism");
  c_t54->add_option("--system", system_path)->required();
  c_t54->add_option("--n", n_stage);
  c_t54->add_option("--workers", workers);
  c_t54->add_option("--out", out);

  auto* c_l58 = app.add_subcommand("lemma58", "three-set upper bound for H(g,P_k)");
  c_l58->add_option("--system", system_path)->required();
  c_l58->add_option("--n", n_stage);
  c_l58->add_option("--k", kval);
  c_l58->add_option("--eps", eps);
  c_l58->add_option("--a", a_param);
  c_l58->add_option("--r", r_param);
  c_l58->add_flag("--strict", strict_range, "reject k outside the admissible range");
  c_l58->add_option("--workers", workers);
  c_l58->add_option("--out", out);

  auto* c_noniso = app.add_subcommand("noniso", "non-isomorphism criterion evidence");
  c_noniso->add_option("--xi0", xi0_csv)->required();
  c_noniso->add_option("--xi", xi_csv)->required();
  c_noniso->add_option("--a", a_param);
  c_noniso->add_option("--b", b_param);
  c_noniso->add_option("--r", r_param);
  c_noniso->add_option("--l", l_range, "evidence range lo..hi[:step]");
  c_noniso->add_option("--out", out);

  auto* c_props = app.add_subcommand("props", "randomized property suites for g");
  c_props->add_option("--g", g_spec);
  c_props->add_option("--samples", samples);
  c_props->add_option("--seed", seed);
  c_props->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_construct) {
      PrimeSeq seq = PrimeSeq::validate(parse_primes(primes_csv));
      RankOneSystem sys = RankOneSystem::build(seq, stages);
      emit(out, system_to_json(sys) + "\n");
    } else if (*c_entropy || *c_rates) {
      RankOneSystem sys = load_system(system_path);
      EntropyFunction g = parse_g_spec(g_spec);
      int m;
      std::vector<std::uint64_t> idx;
      parse_e_spec(e_spec, m, idx);
      std::uint64_t klo, khi, kstep;
      parse_range(k_range, klo, khi, kstep);
      EntropySeries series = compute_series(sys, g, m, idx, klo, khi, kstep, stage, workers);
      if (*c_entropy) {
        emit(out, entropy_series_to_csv(series));
      } else {
        SequenceSpec seq = seq_spec == "n"        ? SequenceSpec::n()
                           : seq_spec == "log2n"  ? SequenceSpec::log2n()
                           : seq_spec == "hlog2n" ? SequenceSpec::h_of_log2n(HFunction::iksanow_rosler())
                                                  : throw std::runtime_error("bad --seq");
        std::unique_ptr<Reindexer> nu;
        if (!zeta_csv.empty()) {
          std::vector<Rational> th;
          for (const auto& q : parse_primes(zeta_csv)) th.emplace_back(2 * q * q);
          nu = std::make_unique<Reindexer>(std::move(th));
        }
        RateReport rep = rate_report(series, seq, nu.get());
        emit(out, rate_report_to_csv(rep) + rate_report_to_json(rep) + "\n");
      }
    } else if (*c_classify) {
      EntropyFunction g = parse_g_spec(g_spec);
      emit(out, classify_to_json(g, g.classify(depth)) + "\n");
    } else if (*c_t54) {
      RankOneSystem sys = load_system(system_path);
      const BigInt& p = sys.primes().primes[(std::size_t)n_stage];
      std::uint64_t k = BigInt(2 * p * p).get_ui();
      int st = choose_stage(sys, k);
      SymbolicNames names = name_measures_symbolic(sys, st, 0, {0}, k, workers);
      CertifiedValue muE = CertifiedValue::point(Rational(1)) / names.normalizer;
      Theorem54Report rep =
          theorem54_check(EntropyFunction::gir(), names, muE, p, sys.stage(n_stage).x);
      std::ostringstream os;
      os << "n=" << n_stage << " H=[" << to_double_down(rep.H.lo) << "," << to_double_up(rep.H.hi)
         << "] rhs_upper=" << to_double_up(rep.rhs.hi) << " holds=" << (rep.holds ? "yes" : "no")
         << " degenerate=" << (rep.degenerate ? "yes" : "no") << " ratio=["
         << to_double_down(rep.ratio.lo) << "," << to_double_up(rep.ratio.hi) << "]\n";
      emit(out, os.str());
    } else if (*c_l58) {
      RankOneSystem sys = load_system(system_path);
      Lemma58Report rep =
          lemma58_bound(sys, BigInt((unsigned long)kval), n_stage, eps, a_param, r_param, strict_range);
      int st = choose_stage(sys, kval);
      SymbolicNames names = name_measures_symbolic(sys, st, 0, {0}, kval, workers);
      CertifiedValue H = entropy_from_names(EntropyFunction::gir(), names);
      std::ostringstream os;
      os << "n=" << n_stage << " k=" << kval << " bound_lower=" << to_double_down(rep.bound.lo)
         << " H_upper=" << to_double_up(H.hi) << " verified=" << (H.hi <= rep.bound.lo ? "yes" : "no")
         << " k_in_range=" << (rep.k_in_range ? "yes" : "no") << " m1=" << rep.m1
         << " m2=" << rep.m2 << " d_prefix=" << to_double(rep.d) << "\n";
      emit(out, os.str());
    } else if (*c_noniso) {
      PrimeSeq xi0 = PrimeSeq::validate(parse_primes(xi0_csv));
      PrimeSeq xi = PrimeSeq::validate(parse_primes(xi_csv));
      std::uint64_t llo, lhi, lstep;
      parse_range(l_range, llo, lhi, lstep);
      NonIsoReport rep = nonisomorphism_report(xi0, xi, a_param, b_param, r_param, llo, lhi, lstep);
      emit(out, noniso_report_to_json(rep) + "\n");
    } else if (*c_props) {
      EntropyFunction g = parse_g_spec(g_spec);
      std::ostringstream os;
      const char* names[] = {"subadditive", "subderivative", "concave", "phi_decreasing"};
      GProperty props[] = {GProperty::Subadditive, GProperty::Subderivative, GProperty::Concave,
                           GProperty::PhiDecreasing};
      for (int i = 0; i < 4; ++i) {
        PropertyReport r = g.property_check(props[i], (int)samples, seed);
        os << names[i] << ": " << (r.passed ? "pass" : "FAIL") << " (" << r.checked << " checked)";
        if (!r.passed) os << " counterexample: " << r.counterexample;
        os << "\n";
      }
      emit(out, os.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
