#include "putvar/var_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "putvar/errors.hpp"

namespace putvar {

namespace {
constexpr int kMaxExpansions = 50;
constexpr int kMaxIterations = 200;
} // namespace

void VarQuery::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    if (!(v_tolerance > 0.0)) throw DomainError("v_tolerance must be positive");
    if (n_samples < 1) throw DomainError("n_samples must be >= 1");
}

VarSolver::VarSolver(const MarketModel& model, const Horizon& horizon, const VarQuery& query,
                     const RandomStream& stream)
    : query_((query.validate(), query)), estimator_(model, horizon, query.n_samples, stream) {}

double VarSolver::solve(const HedgePlan& plan, std::optional<double> hint) const {
    plan.validate();
    const double s0 = estimator_.model().s0;
    const double alpha = query_.alpha;
    const double tol = query_.v_tolerance;
    const double upper = loss_upper_bound(estimator_.model(), estimator_.horizon(), plan);
    const double floor = upper - kMaxExpansions * s0;

    // Q(upper) = 0 < alpha. Once found, lo satisfies Q(lo) >= alpha.
    double hi = upper;
    double lo = floor;
    bool have_lo = false;
    auto record = [&](double v, double q) {
        if (q >= alpha) {
            lo = v;
            have_lo = true;
        } else {
            hi = v;
        }
    };
    auto bracketed = [&] { return have_lo && hi - lo <= tol; };

    double x;
    if (hint && *hint > floor && *hint < upper) {
        x = *hint;
    } else {
        for (int step = 1; step <= kMaxExpansions && !have_lo; ++step) {
            const double v = upper - step * s0;
            record(v, estimator_.probability(plan, v));
        }
        if (!have_lo) {
            throw UnsolvableError("Q(v) stays below alpha=" + std::to_string(alpha) +
                                  " for all v >= " + std::to_string(floor));
        }
        x = 0.5 * (lo + hi);
    }

    // The answer is the midpoint of the grid cell [k tol, (k+1) tol] holding
    // the root, so equal estimates give equal answers whatever the path.
    auto snap = [&](double guess) {
        auto k = static_cast<long long>(std::floor(guess / tol));
        for (int it = 0; it < kMaxIterations; ++it) {
            const double a = static_cast<double>(k) * tol;
            const double b = static_cast<double>(k + 1) * tol;
            const bool a_in = have_lo && a <= lo;
            if (!a_in) {
                const double qa = estimator_.probability(plan, a);
                record(a, qa);
                if (qa < alpha) {
                    --k;
                    continue;
                }
            }
            if (b < hi) {
                const double qb = estimator_.probability(plan, b);
                record(b, qb);
                if (qb >= alpha) {
                    ++k;
                    continue;
                }
            }
            return a + 0.5 * tol;
        }
        throw UnsolvableError("VaR search did not converge within the iteration limit");
    };

    // Safeguarded Newton on the smooth estimate. Steps that leave the bracket
    // fall back to bisection; once the root is located to within tol/2 the
    // grid cell is checked directly.
    double reach = tol;
    for (int it = 0; it < kMaxIterations && !bracketed(); ++it) {
        const auto ev = estimator_.evaluate(plan, x);
        record(x, ev.probability);
        if (bracketed()) break;

        double next = ev.slope < 0.0 ? x - (ev.probability - alpha) / ev.slope : std::nan("");
        if (!have_lo) {
            // Still searching downward for Q >= alpha.
            const double newton_drop = std::isfinite(next) ? x - next : 0.0;
            next = x - std::max(newton_drop, reach);
            reach *= 2.0;
            if (next <= floor) {
                const double q_floor = estimator_.probability(plan, floor);
                if (q_floor < alpha) {
                    throw UnsolvableError("Q(v) stays below alpha=" + std::to_string(alpha) +
                                          " for all v >= " + std::to_string(floor));
                }
                record(floor, q_floor);
                next = 0.5 * (lo + hi);
            }
            x = next;
            continue;
        }
        if (!(next > lo && next < hi)) {
            x = 0.5 * (lo + hi);
            continue;
        }
        if (std::fabs(next - x) < 0.5 * tol) return snap(next);
        x = next;
    }
    if (!bracketed()) {
        throw UnsolvableError("VaR search did not converge within the iteration limit");
    }
    return snap(0.5 * (lo + hi));
}

double solve_var(const MarketModel& model, const Horizon& horizon, const HedgePlan& plan,
                 const VarQuery& query, const RandomStream& stream) {
    return VarSolver(model, horizon, query, stream).solve(plan);
}

} // namespace putvar
