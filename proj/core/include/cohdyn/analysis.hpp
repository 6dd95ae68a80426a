#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohdyn/coherence.hpp"
#include "cohdyn/reservoir.hpp"
#include "cohdyn/states.hpp"

namespace cohdyn {

// Quantities that can be pulled out of a time series. Names match the CSV
// column headers.
enum class Field { AbsH, Total, Local, Global, C12, C13, C23, C1_23, Tripartite, Bipartite, Monogamy };

std::string_view field_name(Field f);
std::optional<Field> parse_field(std::string_view name);

struct TimeSeries {
  std::vector<double> times;  // gamma0 t
  std::vector<Complex> h_values;
  std::vector<CoherenceRecord> records;
  BathParams params;
  CouplingMask mask;
  HForm form = HForm::Standard;
  std::string state_name;

  std::size_t size() const { return times.size(); }

  /// Throws ValidationError for three-qubit fields on registers of other sizes.
  std::vector<double> values(Field f) const;
};

struct SweepOptions {
  double t_max = 20.0;
  int n_points = 2000;
  HForm form = HForm::Standard;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Uniform grid on [0, t_max]; every sample applies the channels with h(t)
/// to the initial state and records all coherence quantities.
TimeSeries sweep(const DensityMatrix& initial, const BathParams& params, const CouplingMask& mask,
                 const SweepOptions& options, std::string label = {});
TimeSeries sweep(const PureState& initial, const BathParams& params, const CouplingMask& mask,
                 const SweepOptions& options, std::string label = {});

/// Per-qubit baths: qubit q uses baths[q - 1] if it is in `mask`.
TimeSeries sweep_heterogeneous(const DensityMatrix& initial, std::span<const BathParams> baths,
                               const CouplingMask& mask, const SweepOptions& options,
                               std::string label = {});

enum class FitMethod { Semilog, Envelope };
std::string_view fit_method_name(FitMethod m);
std::optional<FitMethod> parse_fit_method(std::string_view name);

struct DecayFit {
  double rate = 0.0;       // -(slope of ln y against t)
  double intercept = 0.0;  // ln y at t = 0
  double t_lo = 0.0;
  double t_hi = 0.0;
  FitMethod method = FitMethod::Semilog;
  double r_squared = 0.0;
  std::size_t n_samples = 0;
};

/// Least-squares line through (t, ln y) for samples with t_lo <= t <= t_hi.
/// Throws FitError if fewer than two samples fall inside or any is <= 1e-12.
DecayFit fit_semilog(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi);
DecayFit fit_semilog(const TimeSeries& series, Field field, double t_lo, double t_hi);

inline constexpr double kPeakFloor = 1e-10;

/// Interior local maxima above `floor`. A flat top counts once, at its first sample.
std::vector<std::size_t> local_maxima(std::span<const double> y, double floor = kPeakFloor);

/// Semilog fit through the interior local maxima. Throws FitError with fewer than three.
DecayFit fit_envelope(std::span<const double> t, std::span<const double> y);
DecayFit fit_envelope(const TimeSeries& series, Field field);

struct RevivalEvent {
  double death_time = 0.0;
  double revival_time = 0.0;
  double peak_after = 0.0;
};

/// A death is the first sample below eps; the revival is the first later
/// sample above 10 eps. peak_after is the maximum between the revival and the
/// next death (or the end of the series).
std::vector<RevivalEvent> detect_revivals(std::span<const double> t, std::span<const double> y,
                                          double eps = 1e-3);
std::vector<RevivalEvent> detect_revivals(const TimeSeries& series, Field field, double eps = 1e-3);

/// Mean of the last 10% of samples if their spread is below tol.
std::optional<double> steady_state(std::span<const double> y, double tol = 1e-4);
std::optional<double> steady_state(const TimeSeries& series, Field field, double tol = 1e-4);

enum class MonogamySign { AlwaysNonPositive, AlwaysNonNegative, Mixed };
std::string_view monogamy_sign_name(MonogamySign s);

/// |M| < tol is sign-neutral. An identically zero series reports AlwaysNonPositive.
MonogamySign monogamy_sign(std::span<const double> m, double tol = 1e-6);
MonogamySign monogamy_sign(const TimeSeries& series, double tol = 1e-6);

}  // namespace cohdyn
