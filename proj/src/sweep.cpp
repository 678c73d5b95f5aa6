#include "paramres/sweep.hpp"

#include <cmath>
#include <limits>

#include "paramres/errors.hpp"
#include "paramres/parallel.hpp"

namespace paramres {

const char* sweep_param_name(SweepParam p) {
    switch (p) {
        case SweepParam::Xi: return "xi";
        case SweepParam::QFeedline: return "q_feedline";
        case SweepParam::TDamping: return "t_damping";
        case SweepParam::Omega: return "omega";
    }
    return "?";
}

SweepAxis make_axis(SweepParam param, double lo, double hi, std::size_t points) {
    if (points < 1) throw ConfigInvalid("sweep axis needs at least one point");
    SweepAxis axis{param, {}};
    axis.values.reserve(points);
    if (points == 1) {
        axis.values.push_back(lo);
        return axis;
    }
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        axis.values.push_back(lo + step * static_cast<double>(i));
    return axis;
}

void SweepRequest::validate() const {
    base.validate();
    if (axes.empty() || axes.size() > 2)
        throw ConfigInvalid("sweep: need one or two axes");
    bool has_omega_axis = false;
    for (const auto& axis : axes) {
        if (axis.values.empty())
            throw ConfigInvalid("sweep: axis without values");
        for (double v : axis.values)
            if (!std::isfinite(v)) throw ConfigInvalid("sweep: non-finite axis value");
        if (axis.param == SweepParam::Omega) has_omega_axis = true;
        if (axis.param == SweepParam::Xi && fixed_xi_q)
            throw ConfigInvalid("sweep: fixed_xi_q cannot be combined with an xi axis");
    }
    if (axes.size() == 2 && axes[0].param == axes[1].param)
        throw ConfigInvalid("sweep: the two axes must differ");
    if (!has_omega_axis && base.omega_grid.size() != 1)
        throw ConfigInvalid("sweep: base omega_grid must hold exactly the evaluation offset");
    if (fixed_xi_q && !(std::isfinite(*fixed_xi_q) && *fixed_xi_q >= 0.0))
        throw ConfigInvalid("sweep: fixed_xi_q must be >= 0");
}

SweepResult run_sweep(const SweepRequest& request, int threads) {
    request.validate();

    const std::size_t n0 = request.axes[0].values.size();
    const std::size_t n1 = request.axes.size() == 2 ? request.axes[1].values.size() : 1;
    const std::size_t n = n0 * n1;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    SweepResult result;
    result.axes = request.axes;
    result.points.resize(n);

    parallel_for(n, threads, [&](std::size_t idx) {
        const std::size_t i0 = idx / n1;
        const std::size_t i1 = idx % n1;

        ResonatorParams r = request.base.resonator;
        BathTemperatures baths = request.base.baths;
        double xi = request.base.xi;
        double omega = request.base.omega_grid.front();

        SweepPoint& pt = result.points[idx];
        pt.axis_value[0] = request.axes[0].values[i0];
        pt.axis_value[1] = request.axes.size() == 2 ? request.axes[1].values[i1] : nan;

        for (std::size_t a = 0; a < request.axes.size(); ++a) {
            const double v = a == 0 ? pt.axis_value[0] : pt.axis_value[1];
            switch (request.axes[a].param) {
                case SweepParam::Xi: xi = v; break;
                case SweepParam::QFeedline: r.q_feedline = v; break;
                case SweepParam::TDamping: baths.t_damping = v; break;
                case SweepParam::Omega: omega = v; break;
            }
        }

        const double q = loaded_q(r);
        if (request.fixed_xi_q) xi = *request.fixed_xi_q / q;

        pt.xi = xi;
        pt.q_feedline = r.q_feedline;
        pt.t_damping = baths.t_damping;
        pt.omega = omega;
        pt.xi_q = xi * q;
        pt.excluded = pt.xi_q >= 1.0;
        if (pt.excluded) {
            pt.s_plus = nan;
            pt.s_minus = nan;
        } else {
            const SpectrumPoint s = s_pm_at(r, baths, xi, omega, request.base.variant);
            pt.s_plus = s.s_plus;
            pt.s_minus = s.s_minus;
        }
    });

    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (result.points[i].excluded) {
            ++result.n_excluded;
            continue;
        }
        if (!found || result.points[i].s_minus < result.points[result.argmin_index].s_minus) {
            result.argmin_index = i;
            found = true;
        }
    }
    if (!found)
        throw EmptyGrid("sweep: every grid point is at or above the parametric threshold");
    return result;
}

}  // namespace paramres
