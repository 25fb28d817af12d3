#pragma once

#include <string>

#include "gentropy/orbit_entropy.hpp"
#include "gentropy/rank_one.hpp"
#include "gentropy/rates.hpp"

namespace gentropy {

// Reals are printed with 15 significant digits; rationals as "p/q".
std::string format_real(double v);

std::string system_to_json(const RankOneSystem& sys);
// Rebuilds from the stored primes and cross-checks every stored stage field.
RankOneSystem system_from_json(const std::string& text);

std::string interval_set_to_json(const IntervalSet& s);

// CSV: n,H_lower,H_upper,method,residual_upper — stable field order.
std::string entropy_series_to_csv(const EntropySeries& series);

std::string rate_report_to_csv(const RateReport& rep);
std::string rate_report_to_json(const RateReport& rep);
std::string noniso_report_to_json(const NonIsoReport& rep);
std::string classify_to_json(const EntropyFunction& g, const ClassifyResult& res);

}  // namespace gentropy
