#include "twirlsim/nmr/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

namespace twirlsim::nmr {

double Fid::power() const {
  double p = 0.0;
  for (const auto& s : samples) p += std::norm(s);
  return p;
}

double Spectrum::resolution_hz() const {
  return freq_hz.size() < 2 ? 0.0 : freq_hz[1] - freq_hz[0];
}

double Spectrum::power() const {
  double p = 0.0;
  for (const auto& v : values) p += std::norm(v);
  return p;
}

Mat4 detection_operator() {
  const cd i(0.0, 1.0);
  return product_operator(ProductOp::Ix) + i * product_operator(ProductOp::Iy) +
         product_operator(ProductOp::Sx) + i * product_operator(ProductOp::Sy);
}

Fid acquire(const Mat4& deviation, const SpinSystemParams& params, std::size_t points, double dwell) {
  if (points < 2) throw DomainError("acquisition needs at least 2 points");
  if (!(dwell > 0.0)) throw DomainError("dwell time must be positive");
  return Fid{kernels::fid(deviation, params.energies(), detection_operator(), points, dwell), dwell};
}

Fid acquire(const EnsembleState& state, const SpinSystemParams& params, std::size_t points,
            double dwell) {
  return acquire(state.mean(), params, points, dwell);
}

Spectrum spectrum(const Fid& fid, double line_broadening_hz) {
  const std::size_t n = fid.samples.size();
  if (n < 2) throw DomainError("spectrum needs at least 2 samples");

  using Buffer = std::unique_ptr<fftw_complex[], decltype(&fftw_free)>;
  Buffer in(fftw_alloc_complex(n), &fftw_free);
  Buffer out(fftw_alloc_complex(n), &fftw_free);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * fid.dwell;
    const cd s = fid.samples[k] * std::exp(-kPi * line_broadening_hz * t);
    in[k][0] = s.real();
    in[k][1] = s.imag();
  }
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  Spectrum spec;
  spec.line_broadening_hz = line_broadening_hz;
  spec.freq_hz.resize(n);
  spec.values.resize(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double df = 1.0 / (static_cast<double>(n) * fid.dwell);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t m = 0; m < n; ++m) {
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(m) - half;
    const std::size_t src = static_cast<std::size_t>((k + static_cast<std::ptrdiff_t>(n)) %
                                                     static_cast<std::ptrdiff_t>(n));
    spec.freq_hz[m] = static_cast<double>(k) * df;
    spec.values[m] = scale * cd(out[src][0], out[src][1]);
  }
  return spec;
}

double integrate_peak(const Spectrum& spec, double center_hz, double width_hz) {
  if (spec.freq_hz.empty()) throw DomainError("empty spectrum");
  const double lo = center_hz - width_hz / 2.0;
  const double hi = center_hz + width_hz / 2.0;
  if (width_hz < 0.0 || lo < spec.freq_hz.front() || hi > spec.freq_hz.back())
    throw DomainError("integration window lies outside the frequency axis");
  double sum = 0.0;
  for (std::size_t m = 0; m < spec.freq_hz.size(); ++m)
    if (spec.freq_hz[m] >= lo && spec.freq_hz[m] <= hi) sum += spec.values[m].real();
  return sum;
}

DoubletIntegrals measure_doublets(const Spectrum& spec, const SpinSystemParams& params,
                                  double window_hz) {
  const double h = params.j_hz / 2.0;
  return {integrate_peak(spec, params.nu_i_hz + h, window_hz),
          integrate_peak(spec, params.nu_i_hz - h, window_hz),
          integrate_peak(spec, params.nu_s_hz + h, window_hz),
          integrate_peak(spec, params.nu_s_hz - h, window_hz)};
}

void write_csv(const Spectrum& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  out << "freq_hz,real,imag\n";
  char line[128];
  for (std::size_t m = 0; m < spec.freq_hz.size(); ++m) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", spec.freq_hz[m], spec.values[m].real(),
                  spec.values[m].imag());
    out << line;
  }
  if (!out) throw IoError(path, "write failed");
}

}  // namespace twirlsim::nmr
