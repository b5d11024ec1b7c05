#pragma once

#include <array>
#include <complex>
#include <vector>

#include "passcov/errors.hpp"

namespace passcov {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

// Dual-waveguide deployment. Both guides run parallel to the x axis at
// height `height`; the covert feed line sits at y = -lateral_offset and the
// jamming feed line at y = +lateral_offset. Receivers live in the z = 0
// plane. All lengths in meters, frequencies in Hz.
struct SystemGeometry {
    double length = 4.0;           // usable span of each waveguide along x
    double height = 4.0;           // mounting height above the ground plane
    double lateral_offset = 0.4;   // half-separation between the two guides
    double carrier_hz = 5.0e9;
    double effective_index = 1.4;  // in-guide refractive index

    // Derived by finalize(); zero until then.
    double wavelength = 0.0;        // free-space wavelength
    double guide_wavelength = 0.0;  // wavelength / effective_index
    double eta = 0.0;               // wavelength^2 / (16 pi^2)

    // Fills the derived fields and validates the physical parameters.
    void finalize();

    bool finalized() const { return wavelength > 0.0; }
};

enum class Waveguide { Covert, Jamming };

// (y, z) anchor of a guide's radiating line; PA n sits at (x_n, y, z).
Vec3 waveguide_anchor(const SystemGeometry& g, Waveguide wg);

// Materializes PA coordinates from x offsets along one waveguide.
// Requires 0 <= x_1 < x_2 < ... <= length; throws OutOfWaveguide otherwise.
std::vector<Vec3> pa_positions(const SystemGeometry& g, Waveguide wg,
                               const std::vector<double>& x);

// Free-space entry per PA toward `target`:
//   sqrt(eta) * exp(-j 2 pi d / wavelength) / d.
// Throws DegenerateDistance if any d < 1e-9 m.
std::vector<cplx> freespace_channel(const SystemGeometry& g,
                                    const std::vector<Vec3>& pas,
                                    const Vec3& target);

// In-guide propagation phase per PA: exp(-j 2 pi x / guide_wavelength).
std::vector<cplx> waveguide_phase(const SystemGeometry& g,
                                  const std::vector<double>& x);

// Combined power gain of a pinched array feeding unit transmit power:
//   |sum_n sqrt(rho_n) h_n w_n|^2.
// Callers scale by transmit power afterwards. Throws LengthMismatch if the
// three vectors disagree, ParamOutOfRange if any rho_n < 0.
double effective_gain(const std::vector<cplx>& h,
                      const std::vector<double>& rho,
                      const std::vector<cplx>& w);

} // namespace passcov
