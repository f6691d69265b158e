#include "casimir/transient.hpp"

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

const cplx I1{0.0, 1.0};

void require_increasing(const std::vector<double>& g, const char* what) {
  if (g.empty()) throw DomainError(std::string(what) + " is empty");
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) throw DomainError(std::string(what) + " must be strictly increasing");
  }
}

}  // namespace

ForceValue transient_force(double r, double tau, const AtomParams& p, const QuadratureConfig& cfg) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be a finite positive number");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("tau must be finite and non-negative");
  validate(cfg);

  const double c = p.c;
  const double w0 = p.omega0;
  const double k1 = 1.0 / r;
  const double k_limit = cfg.k_max * w0 / c;
  const cplx phase0 = std::polar(1.0, -w0 * tau);

  auto head_f = [&](double k) {
    const double om = k * c + w0;
    const cplx m3 = sinc_moment(3, 2.0 * r * k);
    const cplx rot = std::polar(1.0, -om * tau) * m3;
    return k * k * ((k * c / om) * m3.imag() + (w0 / om) * rot.imag());
  };
  double head_err = 0.0;
  const double head = integrate_unit_interval(head_f, k1, cfg.max_subdivisions, 1e-12, head_err);

  // Im m3(b) = Re[-i exp(ib) P3(b)] for real b (the remainder 6/b^4 is real)
  auto steady_a = [&](double k) {
    return -I1 * k * k * k * c / (k * c + w0) * sinc_moment_phase_part(3, 2.0 * r * k);
  };
  const OscResult t1 = damped_tail(2.0 * r, steady_a, k1, cfg, k_limit);

  auto cone_a = [&](double k) {
    return -I1 * k * k * (w0 / (k * c + w0)) * phase0 * sinc_moment_phase_part(3, 2.0 * r * k);
  };
  const OscResult t2 = damped_tail(2.0 * r - c * tau, cone_a, k1, cfg, k_limit);

  OscResult t3{cplx{0.0}, 0.0};
  if (tau > 0.0) {
    const double r4 = r * r * r * r;
    auto clock_a = [&](double k) {
      return I1 * std::conj(phase0) * 6.0 * w0 / (16.0 * r4 * k * k * (k * c + w0));
    };
    t3 = damped_tail(c * tau, clock_a, k1, cfg, k_limit);
  }

  const double pre = -2.0 * p.alpha0 * w0 * w0 / (std::numbers::pi * c);
  const double sum = head + t1.value.real() + t2.value.real() + t3.value.real();
  const double scale = std::abs(head) + std::abs(t1.value.real()) + std::abs(t2.value.real()) +
                       std::abs(t3.value.real());
  const double err = head_err + t1.abs_error + t2.abs_error + t3.abs_error;
  if (!std::isfinite(sum) || err > cfg.rel_tol * scale) {
    throw ConvergenceError("transient k-integral did not reach rel_tol", pre * sum,
                           pre * (sum + err));
  }
  return {pre * sum, std::abs(pre) * (err + 1e-15 * scale), classify_regime(r, p)};
}

TransientCurve transient_sweep(double r, const std::vector<double>& tau_grid, const AtomParams& p,
                               const QuadratureConfig& cfg) {
  require_increasing(tau_grid, "tau grid");
  if (tau_grid.front() < 0.0) throw DomainError("tau grid must be non-negative");
  TransientCurve curve;
  curve.samples.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    const ForceValue f = transient_force(r, tau, p, cfg);
    curve.samples.push_back({tau, f.f_z, f.abs_error_estimate});
  }
  return curve;
}

std::vector<SnapshotRow> snapshot_sweep(double tau, const std::vector<double>& r_grid,
                                        const AtomParams& p, const QuadratureConfig& cfg) {
  require_increasing(r_grid, "r grid");
  std::vector<SnapshotRow> rows;
  rows.reserve(r_grid.size());
  for (double r : r_grid) {
    const ForceValue f = transient_force(r, tau, p, cfg);
    const double r4 = r * r * r * r;
    const double el = electrostatic_force(r, p).f_z;
    rows.push_back({r, r4 * (f.f_z + el), r4 * f.f_z, r4 * f.abs_error_estimate});
  }
  return rows;
}

std::size_t peak_deviation_index(const std::vector<double>& values,
                                 const std::vector<double>& reference) {
  if (values.empty() || values.size() != reference.size()) {
    throw DomainError("peak search needs equally sized non-empty series");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i] - reference[i]) > std::abs(values[best] - reference[best])) best = i;
  }
  return best;
}

}  // namespace casimir
