#include "wavecoex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

namespace wavecoex {

namespace {

struct AdaptiveState {
    const PsdCurve& curve;
    int max_depth;
    bool depth_exceeded = false;

    double refine(double a, double b, double fa, double fm, double fb, double coarse, double tol,
                  int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = curve.clipped(lm);
        const double frm = curve.clipped(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double fine = left + right;
        if (std::abs(fine - coarse) <= 15.0 * tol) {
            return fine + (fine - coarse) / 15.0;
        }
        if (depth >= max_depth) {
            depth_exceeded = true;
            return fine;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

double simpson(const PsdCurve& curve, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (curve.clipped(a) + 4.0 * curve.clipped(m) + curve.clipped(b));
}

}  // namespace

double integrate_psd(const PsdCurve& curve, const Band& band, double rel_tol, int max_depth) {
    if (!(rel_tol > 1e-14) || !(rel_tol < 1e-2)) {
        throw ParameterRangeError("integrate_psd: rel_tol must lie in (1e-14, 1e-2)");
    }
    if (!(band.width_hz > 0.0)) {
        throw GeometryError("integrate_psd: band width must be > 0");
    }

    const double lo = std::max(band.start_hz, curve.support().start_hz);
    const double hi = std::min(band.end_hz(), curve.support().end_hz());
    if (!(hi > lo)) return 0.0;
    const double width = hi - lo;

    const double feature = std::max(curve.feature_scale_hz(), width * 1.25e-7);
    const auto panels = static_cast<std::size_t>(
        std::clamp(std::ceil(width / feature), 8.0, 8.0e6));
    const double h = width / static_cast<double>(panels);

    // First pass fixes the tolerance scale for the adaptive refinement.
    double rough = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        rough += simpson(curve, lo + i * h, lo + (i + 1) * h);
    }
    if (rough == 0.0) return 0.0;

    AdaptiveState state{curve, max_depth};
    double total = 0.0;
    // Mass-proportional tolerance with a uniform floor: heavy panels get the
    // budget they need, empty tail panels are not refined to oblivion.
    const double tol_floor = 0.5 * rel_tol * std::abs(rough) / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        const double a = lo + i * h;
        const double b = lo + (i + 1) * h;
        const double m = 0.5 * (a + b);
        const double fa = curve.clipped(a);
        const double fm = curve.clipped(m);
        const double fb = curve.clipped(b);
        const double coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        const double tol = std::max(0.5 * rel_tol * std::abs(coarse), tol_floor);
        total += state.refine(a, b, fa, fm, fb, coarse, tol, 0);
    }

    if (state.depth_exceeded) {
        std::ostringstream msg;
        msg << "integrate_psd: failed to converge within " << max_depth
            << " subdivision levels over [" << band.start_hz << ", " << band.end_hz() << "] Hz";
        throw QuadratureError(msg.str(), total);
    }
    return total;
}

}  // namespace wavecoex
