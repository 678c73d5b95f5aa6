#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "paramres/spectrum.hpp"

namespace paramres {

enum class SweepParam { Xi, QFeedline, TDamping, Omega };

const char* sweep_param_name(SweepParam p);

struct SweepAxis {
    SweepParam param;
    std::vector<double> values;
};

/// Linearly spaced axis helper (inclusive endpoints).
SweepAxis make_axis(SweepParam param, double lo, double hi, std::size_t points);

/// Grid evaluation of the quadrature spectra over one or two swept parameters.
///
/// Each grid point is evaluated at a single frequency offset: the Omega axis
/// value when Omega is swept, otherwise base.omega_grid.front().  Points at or
/// above the parametric threshold are recorded as excluded rather than
/// failing the whole sweep.
///
/// When fixed_xi_q is set, the modulation depth at every point is
/// xi = fixed_xi_q / Q(point), holding the threshold margin constant while
/// e.g. the feedline coupling is swept.  Incompatible with an Xi axis.
struct SweepRequest {
    SpectrumRequest base;
    std::vector<SweepAxis> axes;  ///< 1 or 2 axes
    std::optional<double> fixed_xi_q;

    void validate() const;
};

struct SweepPoint {
    double xi;
    double q_feedline;
    double t_damping;
    double omega;      ///< rad/s
    double xi_q;
    double s_plus;     ///< NaN when excluded
    double s_minus;    ///< NaN when excluded
    bool excluded;
    double axis_value[2];  ///< raw swept values (second entry NaN for 1-D sweeps)
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<SweepAxis> axes;
    std::size_t n_excluded = 0;
    std::size_t argmin_index = 0;  ///< index of the smallest included s_minus
};

/// Throws EmptyGrid when every point is excluded.
SweepResult run_sweep(const SweepRequest& request, int threads = 1);

}  // namespace paramres
