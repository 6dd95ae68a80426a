#include "cohdyn/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include "cohdyn/errors.hpp"

namespace cohdyn {

namespace {

constexpr std::array<std::pair<Field, std::string_view>, 11> kFieldNames{{
    {Field::AbsH, "abs_h"},
    {Field::Total, "C_total"},
    {Field::Local, "C_L"},
    {Field::Global, "C_G"},
    {Field::C12, "C_12"},
    {Field::C13, "C_13"},
    {Field::C23, "C_23"},
    {Field::C1_23, "C_1_23"},
    {Field::Tripartite, "C_TG"},
    {Field::Bipartite, "C_BG"},
    {Field::Monogamy, "M"},
}};

}  // namespace

std::string_view field_name(Field f) {
  for (const auto& [field, name] : kFieldNames) {
    if (field == f) return name;
  }
  return "?";
}

std::optional<Field> parse_field(std::string_view name) {
  for (const auto& [field, n] : kFieldNames) {
    if (n == name) return field;
  }
  return std::nullopt;
}

std::vector<double> TimeSeries::values(Field f) const {
  std::vector<double> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) {
    const CoherenceRecord& r = records[k];
    switch (f) {
      case Field::AbsH: out.push_back(std::abs(h_values[k])); continue;
      case Field::Total: out.push_back(r.total); continue;
      case Field::Local: out.push_back(r.local); continue;
      case Field::Global: out.push_back(r.global); continue;
      default: break;
    }
    if (!r.tri) {
      throw ValidationError("field " + std::string(field_name(f)) + " needs a three-qubit register");
    }
    const auto& t = *r.tri;
    switch (f) {
      case Field::C12: out.push_back(t.c12); break;
      case Field::C13: out.push_back(t.c13); break;
      case Field::C23: out.push_back(t.c23); break;
      case Field::C1_23: out.push_back(t.c1_23); break;
      case Field::Tripartite: out.push_back(t.tg); break;
      case Field::Bipartite: out.push_back(t.bg); break;
      case Field::Monogamy: out.push_back(t.monogamy); break;
      default: break;
    }
  }
  return out;
}

namespace {

// Evaluates sample(k) for k in [0, n) on a static partition of the index
// range. Each slot is written by exactly one worker, so the output does not
// depend on the thread count.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& sample) {
  unsigned workers = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) sample(k);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < n; k += workers) sample(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> uniform_grid(double t_max, int n_points) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("sweep: t_max must be > 0");
  if (n_points < 2) throw ValidationError("sweep: n_points must be >= 2");
  std::vector<double> t(static_cast<std::size_t>(n_points));
  const double step = t_max / static_cast<double>(n_points - 1);
  for (int k = 0; k < n_points; ++k) t[static_cast<std::size_t>(k)] = step * k;
  t.back() = t_max;
  return t;
}

}  // namespace

TimeSeries sweep(const DensityMatrix& initial, const BathParams& params, const CouplingMask& mask,
                 const SweepOptions& options, std::string label) {
  params.validate();
  mask.check_fits(initial.n_qubits());
  TimeSeries s;
  s.times = uniform_grid(options.t_max, options.n_points);
  s.params = params;
  s.mask = mask;
  s.form = options.form;
  s.state_name = std::move(label);
  s.h_values.resize(s.times.size());
  s.records.resize(s.times.size());

  parallel_for(s.times.size(), options.threads, [&](std::size_t k) {
    const Complex h = h_closed(s.times[k], params, options.form);
    s.h_values[k] = h;
    s.records[k] = coherence_record(apply_channels(initial, mask, h));
  });
  return s;
}

TimeSeries sweep(const PureState& initial, const BathParams& params, const CouplingMask& mask,
                 const SweepOptions& options, std::string label) {
  return sweep(density_of(initial), params, mask, options, std::move(label));
}

TimeSeries sweep_heterogeneous(const DensityMatrix& initial, std::span<const BathParams> baths,
                               const CouplingMask& mask, const SweepOptions& options,
                               std::string label) {
  const int n = initial.n_qubits();
  if (static_cast<int>(baths.size()) != n) {
    throw ValidationError("sweep_heterogeneous: need one bath per qubit");
  }
  for (const auto& b : baths) b.validate();
  mask.check_fits(n);

  TimeSeries s;
  s.times = uniform_grid(options.t_max, options.n_points);
  s.params = baths.front();
  s.mask = mask;
  s.form = options.form;
  s.state_name = std::move(label);
  s.h_values.resize(s.times.size());
  s.records.resize(s.times.size());

  // h_values reports the amplitude of the first coupled qubit.
  parallel_for(s.times.size(), options.threads, [&](std::size_t k) {
    std::vector<Complex> amps(static_cast<std::size_t>(n), Complex(1.0, 0.0));
    for (int q : mask.qubits()) {
      amps[static_cast<std::size_t>(q - 1)] = h_closed(s.times[k], baths[static_cast<std::size_t>(q - 1)], options.form);
    }
    s.h_values[k] = mask.empty() ? Complex(1.0, 0.0) : amps[static_cast<std::size_t>(mask.qubits().front() - 1)];
    s.records[k] = coherence_record(apply_channels(initial, amps));
  });
  return s;
}

std::string_view fit_method_name(FitMethod m) { return m == FitMethod::Semilog ? "semilog" : "envelope"; }

std::optional<FitMethod> parse_fit_method(std::string_view name) {
  if (name == "semilog") return FitMethod::Semilog;
  if (name == "envelope") return FitMethod::Envelope;
  return std::nullopt;
}

namespace {

DecayFit line_fit(std::span<const double> t, std::span<const double> y, std::span<const std::size_t> idx) {
  const auto n = static_cast<double>(idx.size());
  double mt = 0.0, my = 0.0;
  for (std::size_t k : idx) {
    mt += t[k];
    my += std::log(y[k]);
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t k : idx) {
    const double dt = t[k] - mt;
    const double dy = std::log(y[k]) - my;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (stt == 0.0) throw FitError("fit needs samples at two or more distinct times");
  const double slope = sty / stt;

  DecayFit fit;
  fit.rate = -slope;
  fit.intercept = my - slope * mt;
  fit.n_samples = idx.size();
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t k : idx) {
      const double e = std::log(y[k]) - (fit.intercept + slope * t[k]);
      ss_res += e * e;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

void check_lengths(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw ValidationError("time and value series differ in length");
}

}  // namespace

DecayFit fit_semilog(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi) {
  check_lengths(t, y);
  if (!(t_lo < t_hi)) throw FitError("fit window must satisfy t_lo < t_hi");
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < t_lo || t[k] > t_hi) continue;
    if (!(y[k] > 1e-12)) {
      throw FitError("semilog fit window contains a non-positive value at t = " + std::to_string(t[k]));
    }
    idx.push_back(k);
  }
  if (idx.size() < 2) throw FitError("semilog fit window holds fewer than two samples");
  DecayFit fit = line_fit(t, y, idx);
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.method = FitMethod::Semilog;
  return fit;
}

DecayFit fit_semilog(const TimeSeries& series, Field field, double t_lo, double t_hi) {
  const auto y = series.values(field);
  return fit_semilog(series.times, y, t_lo, t_hi);
}

std::vector<std::size_t> local_maxima(std::span<const double> y, double floor) {
  std::vector<std::size_t> peaks;
  if (y.size() < 3) return peaks;
  for (std::size_t k = 1; k + 1 < y.size(); ++k) {
    if (!(y[k] > y[k - 1]) || y[k] <= floor) continue;
    // Walk across a flat top; it is a maximum only if the first different
    // value after it is lower, and it is reported at its earliest sample.
    std::size_t j = k + 1;
    while (j < y.size() && y[j] == y[k]) ++j;
    if (j < y.size() && y[j] < y[k]) peaks.push_back(k);
  }
  return peaks;
}

DecayFit fit_envelope(std::span<const double> t, std::span<const double> y) {
  check_lengths(t, y);
  const auto peaks = local_maxima(y);
  if (peaks.size() < 3) {
    throw FitError("envelope fit needs at least 3 interior local maxima, found " +
                   std::to_string(peaks.size()));
  }
  DecayFit fit = line_fit(t, y, peaks);
  fit.t_lo = t[peaks.front()];
  fit.t_hi = t[peaks.back()];
  fit.method = FitMethod::Envelope;
  return fit;
}

DecayFit fit_envelope(const TimeSeries& series, Field field) {
  const auto y = series.values(field);
  return fit_envelope(series.times, y);
}

std::vector<RevivalEvent> detect_revivals(std::span<const double> t, std::span<const double> y,
                                          double eps) {
  check_lengths(t, y);
  if (!(eps > 0.0)) throw ValidationError("revival threshold must be > 0");
  std::vector<RevivalEvent> events;
  std::size_t k = 0;
  while (k < y.size()) {
    while (k < y.size() && !(y[k] < eps)) ++k;
    if (k == y.size()) break;
    const std::size_t death = k;
    while (k < y.size() && !(y[k] > 10.0 * eps)) ++k;
    if (k == y.size()) break;
    RevivalEvent e{t[death], t[k], y[k]};
    while (k < y.size() && !(y[k] < eps)) {
      e.peak_after = std::max(e.peak_after, y[k]);
      ++k;
    }
    events.push_back(e);
  }
  return events;
}

std::vector<RevivalEvent> detect_revivals(const TimeSeries& series, Field field, double eps) {
  const auto y = series.values(field);
  return detect_revivals(series.times, y, eps);
}

std::optional<double> steady_state(std::span<const double> y, double tol) {
  if (y.size() < 2) return std::nullopt;
  const std::size_t tail = std::max<std::size_t>(2, (y.size() + 9) / 10);
  const auto window = y.subspan(y.size() - tail);
  const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
  if (!(*hi - *lo < tol)) return std::nullopt;
  double mean = 0.0;
  for (double v : window) mean += v;
  return mean / static_cast<double>(window.size());
}

std::optional<double> steady_state(const TimeSeries& series, Field field, double tol) {
  return steady_state(series.values(field), tol);
}

std::string_view monogamy_sign_name(MonogamySign s) {
  switch (s) {
    case MonogamySign::AlwaysNonPositive: return "always_non_positive";
    case MonogamySign::AlwaysNonNegative: return "always_non_negative";
    case MonogamySign::Mixed: return "mixed";
  }
  return "?";
}

MonogamySign monogamy_sign(std::span<const double> m, double tol) {
  bool positive = false;
  bool negative = false;
  for (double v : m) {
    positive = positive || v > tol;
    negative = negative || v < -tol;
  }
  if (positive && negative) return MonogamySign::Mixed;
  return positive ? MonogamySign::AlwaysNonNegative : MonogamySign::AlwaysNonPositive;
}

MonogamySign monogamy_sign(const TimeSeries& series, double tol) {
  return monogamy_sign(series.values(Field::Monogamy), tol);
}

}  // namespace cohdyn
