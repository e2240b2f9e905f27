#pragma once

#include <complex>
#include <filesystem>
#include <vector>

#include "twirlsim/nmr/ensemble.hpp"

namespace twirlsim::nmr {

struct Fid {
  std::vector<std::complex<double>> samples;
  double dwell = 0.0;

  /// sum |s_k|^2
  double power() const;
};

/// Values on an ascending frequency axis covering [-1/(2 dwell), 1/(2 dwell)).
struct Spectrum {
  std::vector<double> freq_hz;
  std::vector<std::complex<double>> values;
  double line_broadening_hz = 0.0;

  double resolution_hz() const;
  /// sum |S_m|^2; equals the FID power for line_broadening_hz = 0.
  double power() const;
};

/// I+ + S+
Mat4 detection_operator();

/// s(t_k) = sum_members w Tr(rho(t_k)(I+ + S+)). Evolution is linear and the
/// same for every member, so the ensemble mean is evolved once.
Fid acquire(const EnsembleState& state, const SpinSystemParams& params, std::size_t points,
            double dwell);
Fid acquire(const Mat4& deviation, const SpinSystemParams& params, std::size_t points, double dwell);

/// Unitary DFT (1/sqrt(N)) after exponential apodization exp(-pi lb t),
/// reordered so frequency ascends.
Spectrum spectrum(const Fid& fid, double line_broadening_hz = 0.0);

/// Sum of the real part over bins with |f - center| <= width/2. Throws
/// DomainError if the window leaves the frequency axis.
double integrate_peak(const Spectrum& spec, double center_hz, double width_hz);

/// Signed line integrals of the two doublets, window width `window_hz`
/// around nu +- J/2.
struct DoubletIntegrals {
  double i_upper = 0.0;  // nu_I + J/2
  double i_lower = 0.0;  // nu_I - J/2
  double s_upper = 0.0;
  double s_lower = 0.0;

  /// (upper - lower)/2: positive for a +2 I_x S_z like antiphase pattern.
  double i_antiphase() const { return 0.5 * (i_upper - i_lower); }
  double s_antiphase() const { return 0.5 * (s_upper - s_lower); }
};

DoubletIntegrals measure_doublets(const Spectrum& spec, const SpinSystemParams& params,
                                  double window_hz);

/// Columns freq_hz, real, imag. Throws IoError.
void write_csv(const Spectrum& spec, const std::filesystem::path& path);

}  // namespace twirlsim::nmr
