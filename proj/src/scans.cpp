#include "steerkit/scans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "steerkit/errors.hpp"

namespace steerkit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.7320508075688772935;

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > kPi / 4 + 1e-12) {
        throw PreconditionError("alpha_range",
                                "alpha must lie in (0, pi/4]", alpha);
    }
}

ComplexMatrix family_state(Family family, double alpha, double v) {
    StateFamilySpec spec;
    spec.family = family;
    spec.alpha = alpha;
    spec.visibility = v;
    return make_state(spec);
}

bool violated_at(Family family, double alpha, double v, Detection* out) {
    Detection d = detect_violation(family_state(family, alpha, v));
    if (out != nullptr) *out = d;
    return d.violation > 0.0;
}

}  // namespace

ThresholdResult werner_vmin_usual(double alpha) {
    require_alpha(alpha);
    ThresholdResult r;
    r.alpha = alpha;
    r.method = ThresholdMethod::usual_lsi_analytic;
    // Werner correlators scale linearly with V, so the usual inequality
    // crosses its bound at V = sqrt(3) / (1 + 2 sin 2a).
    double v = kSqrt3 / (1.0 + 2.0 * std::sin(2.0 * alpha));
    if (v <= 1.0) r.v_threshold = v;
    return r;
}

ThresholdResult asym_vmax_usual(double alpha) {
    require_alpha(alpha);
    ThresholdResult r;
    r.alpha = alpha;
    r.method = ThresholdMethod::usual_lsi_analytic;
    // With the x-flipped sign choice the usual value is linear in V:
    // S' = (1 + 2 sin 2a) - 2V (1 + sin 2a), detectable while S' > sqrt(3).
    double v = (1.0 - kSqrt3 + 2.0 * std::sin(2.0 * alpha)) /
               (2.0 * (1.0 + std::sin(2.0 * alpha)));
    if (v >= 0.0) {
        r.v_threshold = v;
    } else if (v > -1e-12) {
        r.v_threshold = 0.0;
    }
    return r;
}

ThresholdResult werner_vmin_glsi(double alpha, double tol) {
    require_alpha(alpha);
    if (!(tol >= 1e-6)) {
        throw PreconditionError("bisection_tolerance",
                                "tolerance must be at least 1e-6", tol);
    }
    ThresholdResult r;
    r.alpha = alpha;
    r.method = ThresholdMethod::glsi_numeric;
    Detection at_top;
    if (!violated_at(Family::werner, alpha, 1.0, &at_top)) return r;
    // Violation grows monotonically with V; bracket [lo, hi] keeps lo
    // undetected and hi detected.
    double lo = 0.0;
    double hi = 1.0;
    Detection at_hi = at_top;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        Detection d;
        if (violated_at(Family::werner, alpha, mid, &d)) {
            hi = mid;
            at_hi = d;
        } else {
            lo = mid;
        }
    }
    r.v_threshold = 0.5 * (lo + hi);
    r.theta_star = at_hi.theta_star;
    return r;
}

ThresholdResult asym_vmax_glsi(double alpha, double tol) {
    require_alpha(alpha);
    if (!(tol >= 1e-6)) {
        throw PreconditionError("bisection_tolerance",
                                "tolerance must be at least 1e-6", tol);
    }
    ThresholdResult r;
    r.alpha = alpha;
    r.method = ThresholdMethod::glsi_numeric;
    Detection at_zero;
    if (!violated_at(Family::asymmetric, alpha, 0.0, &at_zero)) return r;
    // Violation shrinks as V grows toward the V = 1/2 symmetry point;
    // bracket keeps lo detected and hi undetected.
    double lo = 0.0;
    double hi = 0.5;
    Detection at_lo = at_zero;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        Detection d;
        if (violated_at(Family::asymmetric, alpha, mid, &d)) {
            lo = mid;
            at_lo = d;
        } else {
            hi = mid;
        }
    }
    r.v_threshold = 0.5 * (lo + hi);
    r.theta_star = at_lo.theta_star;
    return r;
}

bool symmetry_check_asymmetric(double alpha, double v, double tol) {
    require_alpha(alpha);
    if (v < -1e-12 || v > 1.0 + 1e-12) {
        throw PreconditionError("visibility_range",
                                "mixing weight must lie in [0, 1]", v);
    }
    Detection a = detect_violation(family_state(Family::asymmetric, alpha, v));
    Detection b =
        detect_violation(family_state(Family::asymmetric, alpha, 1.0 - v));
    if ((a.violation > 0.0) != (b.violation > 0.0)) return false;
    return std::abs(a.violation - b.violation) <= tol;
}

double crossover_alpha(Family family, double agreement_tol) {
    if (family != Family::werner && family != Family::asymmetric) {
        throw PreconditionError("crossover_family",
                                "crossover is defined for the mixed families",
                                static_cast<double>(family));
    }
    if (!(agreement_tol > 0.0)) {
        throw PreconditionError("agreement_tolerance",
                                "agreement tolerance must be positive",
                                agreement_tol);
    }
    const double vtol = 1e-6;
    auto gap = [&](double alpha) {
        ThresholdResult num;
        ThresholdResult ana;
        if (family == Family::werner) {
            num = werner_vmin_glsi(alpha, vtol);
            ana = werner_vmin_usual(alpha);
        } else {
            num = asym_vmax_glsi(alpha, vtol);
            ana = asym_vmax_usual(alpha);
        }
        if (!num.v_threshold.has_value() || !ana.v_threshold.has_value()) {
            return std::numeric_limits<double>::infinity();
        }
        return std::abs(*num.v_threshold - *ana.v_threshold);
    };
    // Both thresholds exist throughout [0.25, pi/4] and their gap decreases
    // monotonically to zero at pi/4, so bisect for the first agreement.
    double lo = 0.25;
    double hi = kPi / 4;
    const double accept = 2.0 * agreement_tol;
    if (gap(lo) <= accept) return lo;
    for (int it = 0; it < 30; ++it) {
        double mid = 0.5 * (lo + hi);
        if (gap(mid) <= accept) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

namespace {

struct CellResult {
    double usual_value = 0.0;
    std::uint8_t usual_detected = 0;
    double glsi_violation = 0.0;
    double glsi_theta_star = 0.0;
    std::uint8_t glsi_detected = 0;
};

CellResult evaluate_cell(Family family, double alpha, double v) {
    CellResult cell;
    // The asymmetric family at weights V and 1-V differs by a local Pauli-X
    // on Alice, which the sign-flip search absorbs; evaluate the mirrored
    // weight so the numeric branch stays on its monotone side.
    double eff_v = v;
    if (family == Family::asymmetric && v > 0.5) eff_v = 1.0 - v;
    ComplexMatrix rho = family_state(family, alpha, eff_v);
    Correlators c = correlators_of(rho);
    double best_usual = -std::numeric_limits<double>::infinity();
    for (int sx = 1; sx >= -1; sx -= 2) {
        for (int sy = 1; sy >= -1; sy -= 2) {
            for (int sz = 1; sz >= -1; sz -= 2) {
                SignTuple s{sx, sy, sz};
                best_usual =
                    std::max(best_usual, sprime3_scalar(c, kPi / 4, 0.0, s));
            }
        }
    }
    cell.usual_value = best_usual;
    cell.usual_detected = best_usual > kSqrt3 ? 1 : 0;
    Detection d = detect_violation(rho);
    cell.glsi_violation = d.violation;
    cell.glsi_theta_star = d.theta_star;
    cell.glsi_detected = d.violation > 0.0 ? 1 : 0;
    return cell;
}

}  // namespace

RegionTable region_scan(Family family, int alpha_steps, int v_steps,
                        unsigned threads) {
    if (family != Family::werner && family != Family::asymmetric) {
        throw PreconditionError("scan_family",
                                "region scans cover the mixed families",
                                static_cast<double>(family));
    }
    if (alpha_steps < 2 || v_steps < 2) {
        throw PreconditionError("grid_steps",
                                "each grid axis needs at least 2 steps",
                                std::min(alpha_steps, v_steps));
    }
    RegionTable table;
    table.family = family;
    table.alpha_grid.resize(alpha_steps);
    table.v_grid.resize(v_steps);
    const double alpha_lo = 0.01;
    const double alpha_hi = kPi / 4;
    for (int i = 0; i < alpha_steps; ++i) {
        table.alpha_grid[i] =
            alpha_lo + (alpha_hi - alpha_lo) * i / (alpha_steps - 1);
    }
    for (int j = 0; j < v_steps; ++j) {
        table.v_grid[j] = static_cast<double>(j) / (v_steps - 1);
    }
    auto blank_d = std::vector<std::vector<double>>(
        alpha_steps, std::vector<double>(v_steps, 0.0));
    auto blank_b = std::vector<std::vector<std::uint8_t>>(
        alpha_steps, std::vector<std::uint8_t>(v_steps, 0));
    table.usual_value = blank_d;
    table.detected_usual = blank_b;
    table.glsi_violation = blank_d;
    table.glsi_theta_star = blank_d;
    table.detected_glsi = blank_b;

    unsigned n_threads = threads;
    if (n_threads == 0) n_threads = std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
    n_threads = std::min<unsigned>(n_threads, alpha_steps);

    auto run_rows = [&](int row_begin, int row_end) {
        for (int i = row_begin; i < row_end; ++i) {
            for (int j = 0; j < v_steps; ++j) {
                CellResult cell =
                    evaluate_cell(family, table.alpha_grid[i], table.v_grid[j]);
                table.usual_value[i][j] = cell.usual_value;
                table.detected_usual[i][j] = cell.usual_detected;
                table.glsi_violation[i][j] = cell.glsi_violation;
                table.glsi_theta_star[i][j] = cell.glsi_theta_star;
                table.detected_glsi[i][j] = cell.glsi_detected;
            }
        }
    };

    if (n_threads <= 1) {
        run_rows(0, alpha_steps);
    } else {
        // Rows partition the table, so workers never touch the same cell and
        // the result is independent of the thread count.
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        int base = alpha_steps / static_cast<int>(n_threads);
        int extra = alpha_steps % static_cast<int>(n_threads);
        int row = 0;
        for (unsigned t = 0; t < n_threads; ++t) {
            int count = base + (static_cast<int>(t) < extra ? 1 : 0);
            pool.emplace_back(run_rows, row, row + count);
            row += count;
        }
        for (auto& worker : pool) worker.join();
    }
    return table;
}

std::vector<CurvePoint> pure_state_curves(const std::vector<double>& alpha_grid) {
    std::vector<CurvePoint> rows;
    rows.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        require_alpha(alpha);
        CurvePoint p;
        p.alpha = alpha;
        ComplexMatrix rho = psi_state(alpha, 0.0).density();
        Correlators c = correlators_of(rho);
        double best = -std::numeric_limits<double>::infinity();
        for (int sx = 1; sx >= -1; sx -= 2) {
            for (int sy = 1; sy >= -1; sy -= 2) {
                for (int sz = 1; sz >= -1; sz -= 2) {
                    SignTuple s{sx, sy, sz};
                    best = std::max(best, sprime3_scalar(c, kPi / 4, 0.0, s));
                }
            }
        }
        p.usual_value = best;
        p.usual_bound = kSqrt3;
        Detection d = detect_violation(rho);
        p.glsi_violation = d.violation;
        p.glsi_theta_star = d.theta_star;
        rows.push_back(p);
    }
    return rows;
}

}  // namespace steerkit
