#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gentropy/rational.hpp"

namespace gentropy {

// Piecewise function h used to transport entropy functions to [0,inf):
// g(x) = x * h(-log2 x).
enum class HKind { IR, Log, LogIter };

// k such that x in [4^k, 4^{k+1}); -1 for x in [0,1) (the linear piece).
int hir_arg_piece(double x);

// m such that v in [2^(4^m), 2^(4^(m+1))); -1 sentinel for v < 2.
int h_piece_index(const Rational& v);

struct HFunction {
  HKind kind = HKind::IR;
  int iterations = 1;  // for LogIter: number of compositions of log2(1+x)

  static HFunction iksanow_rosler() { return {HKind::IR, 1}; }
  static HFunction log2p1() { return {HKind::Log, 1}; }
  static HFunction log_iterated(int m) { return {HKind::LogIter, m}; }

  double eval(double x) const;
  // Exact value where the formula is rational at rational input
  // (the Iksanow-Rosler h is piecewise linear with dyadic coefficients).
  std::optional<Rational> eval_exact(const Rational& x) const;
  CertifiedValue eval_point(const Rational& x) const;
  CertifiedValue eval_interval(const CertifiedValue& x) const;  // h nondecreasing
};

enum class GKind { Eta, G0, GTilde, GIR, GM, Custom };
enum class GClass { G00, G0Sh, G0Inf, Unknown };

struct ClassifyResult {
  GClass cls = GClass::Unknown;
  double C = 0.0;       // stabilized constant, for G0Sh
  int depth = 0;
  double r_depth = 0.0; // g(2^-depth) / eta(2^-depth)
};

enum class GProperty { Subadditive, Subderivative, Concave, PhiDecreasing };

struct PropertyReport {
  bool passed = true;
  int checked = 0;
  std::string counterexample;  // empty when passed
};

class EntropyFunction {
 public:
  static EntropyFunction eta();
  static EntropyFunction g0(double base = 2.0);
  static EntropyFunction gtilde(double base, double alpha);
  static EntropyFunction gir();
  static EntropyFunction gm(int m);
  // Tabulated concave interpolant on [0,1]; table must start at (0,0),
  // end at x = 1, have strictly increasing x and nonincreasing slopes.
  static EntropyFunction custom(std::vector<std::pair<Rational, Rational>> table);
  // Same, skipping the concavity validation (for negative tests).
  static EntropyFunction custom_unchecked(std::vector<std::pair<Rational, Rational>> table);

  GKind kind() const { return kind_; }
  double base() const { return base_; }
  std::string spec_string() const;
  bool is_subderivative_catalog() const;  // members of G0' in the catalog

  double eval(double x) const;                    // x in [0,1]
  std::optional<Rational> eval_exact(const Rational& x) const;
  CertifiedValue eval_point(const Rational& x) const;
  // Bounds of g over an x-interval, using concavity for the upper bound.
  CertifiedValue eval_interval(const CertifiedValue& x) const;

  double phi(double x) const;          // g(x)/x, x > 0
  double phi_of_log2(double t) const;  // phi(2^-t), stable for large t
  CertifiedValue phi_point(const Rational& x) const;

  double derivative(double x) const;   // closed form where known, else central difference
  double d_max() const;                // max g - min(0, g(1))
  double left_derivative_half() const;
  double max_value() const;            // max of g on [0,1] (upper estimate)
  double argmax() const;

  CertifiedValue jensen_bound(const BigInt& n) const;  // n * g(1/n)
  ClassifyResult classify(int dyadic_depth) const;
  PropertyReport property_check(GProperty p, int samples, std::uint64_t seed) const;

 private:
  EntropyFunction() = default;
  void finish_setup();

  GKind kind_ = GKind::Eta;
  double base_ = 2.0;
  double alpha_ = 0.5;
  int m_ = 0;
  std::vector<std::pair<Rational, Rational>> table_;
  double argmax_ = 0.0;
  double max_value_ = 0.0;
};

EntropyFunction parse_g_spec(const std::string& spec);  // "eta", "g0:a=2", ...
HFunction parse_h_spec(const std::string& spec);        // "hir", "hlog", "hlogiter:m=2"

}  // namespace gentropy
