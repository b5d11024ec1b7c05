#include "passcov/geometry.hpp"

#include <cmath>

namespace passcov {

namespace {
constexpr double kSpeedOfLight = 299792458.0; // m/s
constexpr double kMinDistance = 1e-9;         // below this the 1/d entry is meaningless
} // namespace

void SystemGeometry::finalize() {
    if (!(length > 0.0) || !(height > 0.0) || !(lateral_offset >= 0.0))
        throw ParamOutOfRange("geometry: length and height must be positive, lateral_offset >= 0");
    if (!(carrier_hz > 0.0))
        throw ParamOutOfRange("geometry: carrier_hz must be positive");
    if (!(effective_index >= 1.0))
        throw ParamOutOfRange("geometry: effective_index must be >= 1");
    wavelength = kSpeedOfLight / carrier_hz;
    guide_wavelength = wavelength / effective_index;
    eta = wavelength * wavelength / (16.0 * M_PI * M_PI);
}

Vec3 waveguide_anchor(const SystemGeometry& g, Waveguide wg) {
    const double y = (wg == Waveguide::Covert) ? -g.lateral_offset : g.lateral_offset;
    return {0.0, y, g.height};
}

std::vector<Vec3> pa_positions(const SystemGeometry& g, Waveguide wg,
                               const std::vector<double>& x) {
    const Vec3 anchor = waveguide_anchor(g, wg);
    std::vector<Vec3> out;
    out.reserve(x.size());
    double prev = -1.0;
    for (double xi : x) {
        if (!(xi >= 0.0) || !(xi <= g.length))
            throw OutOfWaveguide("pa_positions: x outside [0, length]");
        if (xi <= prev)
            throw OutOfWaveguide("pa_positions: x must be strictly increasing");
        prev = xi;
        out.push_back({xi, anchor[1], anchor[2]});
    }
    return out;
}

std::vector<cplx> freespace_channel(const SystemGeometry& g,
                                    const std::vector<Vec3>& pas,
                                    const Vec3& target) {
    if (!g.finalized())
        throw ParamOutOfRange("freespace_channel: geometry not finalized");
    std::vector<cplx> h;
    h.reserve(pas.size());
    const double amp = std::sqrt(g.eta);
    for (const Vec3& p : pas) {
        const double dx = p[0] - target[0];
        const double dy = p[1] - target[1];
        const double dz = p[2] - target[2];
        const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (d < kMinDistance)
            throw DegenerateDistance("freespace_channel: PA and target nearly coincide");
        const double phase = -2.0 * M_PI * d / g.wavelength;
        h.push_back(std::polar(amp / d, phase));
    }
    return h;
}

std::vector<cplx> waveguide_phase(const SystemGeometry& g,
                                  const std::vector<double>& x) {
    if (!g.finalized())
        throw ParamOutOfRange("waveguide_phase: geometry not finalized");
    std::vector<cplx> w;
    w.reserve(x.size());
    for (double xi : x)
        w.push_back(std::polar(1.0, -2.0 * M_PI * xi / g.guide_wavelength));
    return w;
}

double effective_gain(const std::vector<cplx>& h,
                      const std::vector<double>& rho,
                      const std::vector<cplx>& w) {
    if (h.size() != rho.size() || h.size() != w.size())
        throw LengthMismatch("effective_gain: h, rho, w must have equal length");
    cplx acc{0.0, 0.0};
    for (std::size_t n = 0; n < h.size(); ++n) {
        if (!(rho[n] >= 0.0))
            throw ParamOutOfRange("effective_gain: rho entries must be >= 0");
        acc += std::sqrt(rho[n]) * h[n] * w[n];
    }
    return std::norm(acc);
}

} // namespace passcov
