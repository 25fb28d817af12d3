#include "gentropy/io.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace gentropy {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

std::string system_to_json(const RankOneSystem& sys) {
  ordered_json j;
  j["primes"] = json::array();
  for (const auto& p : sys.primes().primes) j["primes"].push_back(std::stoll(p.get_str()));
  j["stages"] = json::array();
  for (const auto& st : sys.stages()) {
    if (st.n == 0) continue;
    ordered_json s;
    s["n"] = st.n;
    s["x"] = to_string(st.x);
    s["y"] = to_string(st.y);
    s["k"] = std::stoll(st.k.get_str());
    s["j"] = std::stoll(st.j.get_str());
    s["height"] = std::stoll(st.height.get_str());
    s["level_len"] = to_string(st.level_len);
    j["stages"].push_back(std::move(s));
  }
  int last = (int)sys.stages().size() - 1;
  TailBound tb = last >= 1 ? sys.tail_bound(1) : TailBound{};
  j["tail_upper"] = tb.bounded ? to_string(tb.value.hi) : "unbounded";
  return j.dump(2);
}

RankOneSystem system_from_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<BigInt> primes;
  for (const auto& p : j.at("primes")) primes.push_back(BigInt((long)p.get<long long>()));
  PrimeSeq seq = PrimeSeq::validate(primes);
  RankOneSystem sys = RankOneSystem::build(seq, (int)primes.size());
  for (const auto& s : j.at("stages")) {
    const Stage& st = sys.stage(s.at("n").get<int>());
    if (to_string(st.x) != s.at("x").get<std::string>() ||
        to_string(st.y) != s.at("y").get<std::string>() ||
        st.k != BigInt((long)s.at("k").get<long long>()) ||
        st.j != BigInt((long)s.at("j").get<long long>()) ||
        st.height != BigInt((long)s.at("height").get<long long>()) ||
        to_string(st.level_len) != s.at("level_len").get<std::string>())
      throw std::invalid_argument("system file inconsistent with rebuilt stage " +
                                  std::to_string(st.n));
  }
  return sys;
}

std::string interval_set_to_json(const IntervalSet& s) {
  json j = json::array();
  for (const auto& iv : s.intervals()) j.push_back({to_string(iv.a), to_string(iv.b)});
  return j.dump();
}

std::string entropy_series_to_csv(const EntropySeries& series) {
  std::ostringstream os;
  os << "n,H_lower,H_upper,method,residual_upper\n";
  for (const auto& e : series.entries) {
    os << e.n << "," << to_string(e.H.lo) << "," << to_string(e.H.hi) << "," << series.method
       << "," << to_string(e.residual_mass.hi) << "\n";
  }
  return os.str();
}

std::string rate_report_to_csv(const RateReport& rep) {
  std::ostringstream os;
  os << "n,ratio_lower,ratio_upper,denominator\n";
  for (const auto& p : rep.points)
    os << p.n << "," << format_real(to_double_down(p.ratio.lo)) << ","
       << format_real(to_double_up(p.ratio.hi)) << "," << format_real(p.denom) << "\n";
  return os.str();
}

std::string rate_report_to_json(const RateReport& rep) {
  ordered_json j;
  j["window"] = {rep.window_lo, rep.window_hi};
  j["window_inf"] = format_real(rep.window_inf);
  j["window_sup"] = format_real(rep.window_sup);
  j["verdict"] = rep.verdict;
  return j.dump(2);
}

std::string noniso_report_to_json(const NonIsoReport& rep) {
  ordered_json j;
  j["verdict"] = rep.verdict;
  j["threshold_b_over_2r"] = format_real(rep.threshold);
  j["range_inf"] = format_real(rep.range_inf);
  j["sup_p3_ratio"] = format_real(rep.sup_p3_ratio);
  j["growth_condition_ok"] = rep.growth_condition_ok;
  j["points"] = rep.ratios.size();
  return j.dump(2);
}

std::string classify_to_json(const EntropyFunction& g, const ClassifyResult& res) {
  ordered_json j;
  j["g"] = g.spec_string();
  switch (res.cls) {
    case GClass::G00: j["class"] = "G00"; break;
    case GClass::G0Sh: j["class"] = "G0Sh"; break;
    case GClass::G0Inf: j["class"] = "G0Inf"; break;
    case GClass::Unknown: j["class"] = "Unknown"; break;
  }
  j["C"] = format_real(res.C);
  j["depth"] = res.depth;
  j["r_depth"] = format_real(res.r_depth);
  return j.dump(2);
}

}  // namespace gentropy
