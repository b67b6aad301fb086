#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fockcalc/coeff_array.hpp"
#include "fockcalc/grid_field.hpp"
#include "fockcalc/multi_index.hpp"

namespace fockcalc {

/// Positive weight on R^n.
struct WeightFn {
  int dim = 0;
  std::function<double(std::span<const double>)> eval;

  struct Certificate {
    std::shared_ptr<WeightFn> v;
    double C = 1.0;
  };
  std::optional<Certificate> certificate;

  double operator()(std::span<const double> x) const { return eval(x); }

  static WeightFn one(int n);
  /// (1+|x|^2)^{t/2}
  static WeightFn polynomial(int n, double t);
  /// e^{r |x|^{1/s}}
  static WeightFn exponential(int n, double r, double s);
  /// e^{c |x|^2}
  static WeightFn gauss_quadratic(int n, double c);
  static WeightFn product(const WeightFn& a, const WeightFn& b);
};

/// Parse a weight preset string: "one", "poly:t", "exp:r:s", "gaussq:c",
/// and products joined with '*'.
WeightFn weight_from_preset(int n, const std::string& preset);

/// Sequence weight on N^d: either e^{r |alpha|^{1/(2s)}} (power-exponential)
/// or r^{|alpha|} (alpha!)^{1/(2 sigma)} (flat scale).
struct SeqWeightSpec {
  enum class Kind { power_exponential, flat };
  Kind kind = Kind::power_exponential;
  double r = 1.0;
  double s_or_sigma = 1.0;

  static SeqWeightSpec power_exp(double r, double s) {
    return {Kind::power_exponential, r, s};
  }
  static SeqWeightSpec flat(double r, double sigma) { return {Kind::flat, r, sigma}; }
};

/// theta_{r,s}(alpha), computed in log space.
double seq_weight_eval(const SeqWeightSpec& spec, const MultiIndex& alpha);
double seq_weight_log(const SeqWeightSpec& spec, const MultiIndex& alpha);

/// Sequence-weight presets: "exp:r:s" (power-exponential) or
/// "flatsig:r:sigma" (flat scale).
SeqWeightSpec seq_weight_from_preset(const std::string& preset);

/// Scale index for the pointwise-bound envelopes: a positive real s, or the
/// flat index (sigma slot of the scale) marked by `flat`.
struct ScaleIndex {
  bool flat = false;
  double value = 0.5;  // s when !flat, sigma when flat

  static ScaleIndex real(double s) { return {false, s}; }
  static ScaleIndex flat_sigma(double sigma) { return {true, sigma}; }
};

enum class KappaKind { k1, k2 };

/// Pointwise growth/decay envelopes on C^n:
///   k1: e^{r (log<z>)^{1/(1-2s)}}      s < 1/2
///       e^{r |z|^{2 sigma/(sigma+1)}}  flat scale
///       e^{|z|^2/2 - r |z|^{1/s}}      s >= 1/2
///   k2: e^{r |z|^{2 sigma/(sigma-1)}}  flat scale, sigma > 1
///       e^{|z|^2/2 + r |z|^{1/s}}      s >= 1/2
/// Invalid (kind, scale) combinations are rejected.
double kappa_eval(KappaKind which, double r, const ScaleIndex& s,
                  std::span<const cplx> z);

/// Result of probing omega(x+y) <= C omega(x) v(y) on lattices of escalating
/// radius. Accepted: the smallest C observed; rejected: a witness pair where
/// the ratio keeps growing with the probe radius.
struct ModerateResult {
  bool accepted = false;
  double C = 0.0;
  std::vector<double> worst_x;
  std::vector<double> worst_y;
  std::vector<double> per_radius_max;
};

ModerateResult moderate_check(const WeightFn& omega, const WeightFn& v,
                              std::span<const double> radii = {},
                              int points_per_axis = 9);

/// Diagnosed coefficient-growth family. The Roumieu/Beurling side cannot be
/// decided from one finite tensor, so only the family and parameter are
/// reported.
struct GrowthClass {
  enum class Family { finite, power_exp_decay, power_exp_growth, flat_decay, flat_growth };
  Family family = Family::finite;
  double parameter = 0.0;  // s for power-exponential, sigma for flat
  double rate = 0.0;       // r
  double residual = 0.0;
  bool side_undetermined = true;

  std::string label() const;
};

/// Least-squares diagnosis of |c_alpha| against the candidate decay/growth
/// models, fitted on per-shell maxima. Requires at least 8 populated shells
/// unless the expansion is finite.
GrowthClass classify_growth(const CoeffArray& c);

/// Fit |V(x,xi)| ~ C e^{-r(|x|^{1/s}+|xi|^{1/s})} on a sampled transform
/// magnitude over R^{2d}. Needs several decades of decay above the noise
/// floor. The symmetric-decay model is assumed for both slots.
struct StftDecayFit {
  double s = 0.0;
  double r = 0.0;
  double residual = 0.0;
};

StftDecayFit classify_gs_via_stft(const GridField& stft_magnitude);

}  // namespace fockcalc
