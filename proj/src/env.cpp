#include "sinai/env.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "sinai/rng.hpp"

namespace sinai::env {

namespace {

double log_rho_of(double omega) { return std::log((1.0 - omega) / omega); }

// Adaptive Simpson, used for the uniform-symmetric Var(log rho) closed-form integral.
double simpson(double (*f)(double), double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double (*f)(double), double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(double (*f)(double), double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, 40);
}

double sq_log_rho(double w) {
    const double l = log_rho_of(w);
    return l * l;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::TwoPoint: return "two-point";
        case Family::UniformSymmetric: return "uniform-symmetric";
        case Family::Table: return "table";
        case Family::Constant: return "constant";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "two-point") return Family::TwoPoint;
    if (name == "uniform-symmetric") return Family::UniformSymmetric;
    if (name == "table") return Family::Table;
    if (name == "constant") return Family::Constant;
    throw SpecInvalid("unknown environment family '" + name +
                      "' (expected two-point, uniform-symmetric, table, constant)");
}

EnvironmentSpec EnvironmentSpec::two_point(double p, double epsilon, std::uint64_t seed) {
    EnvironmentSpec s;
    s.family = Family::TwoPoint;
    s.p = p;
    s.epsilon = epsilon;
    s.seed = seed;
    s.validate();
    return s;
}

EnvironmentSpec EnvironmentSpec::uniform_symmetric(double epsilon, std::uint64_t seed) {
    EnvironmentSpec s;
    s.family = Family::UniformSymmetric;
    s.epsilon = epsilon;
    s.seed = seed;
    s.validate();
    return s;
}

EnvironmentSpec EnvironmentSpec::table_law(std::vector<TableEntry> entries, double epsilon,
                                           std::uint64_t seed, bool degenerate) {
    EnvironmentSpec s;
    s.family = Family::Table;
    s.table = std::move(entries);
    s.epsilon = epsilon;
    s.seed = seed;
    s.degenerate = degenerate;
    s.validate();
    return s;
}

EnvironmentSpec EnvironmentSpec::constant(double p, double epsilon, std::uint64_t seed,
                                          bool degenerate) {
    EnvironmentSpec s;
    s.family = Family::Constant;
    s.p = p;
    s.epsilon = epsilon;
    s.seed = seed;
    s.degenerate = degenerate;
    s.validate();
    return s;
}

void EnvironmentSpec::validate() {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw SpecInvalid("epsilon must lie in (0, 1/2), got " + std::to_string(epsilon));
    if (!(tolerance > 0.0)) throw SpecInvalid("validation tolerance must be positive");

    switch (family) {
        case Family::TwoPoint:
            if (!(p > 0.0 && p < 0.5))
                throw SpecInvalid("two-point p must lie in (0, 1/2), got " + std::to_string(p));
            if (p < epsilon)
                throw SpecInvalid("two-point values {p, 1-p} must lie in [eps, 1-eps]: p < eps");
            break;
        case Family::UniformSymmetric:
            break;  // omega ~ U[eps, 1-eps]; ellipticity by construction
        case Family::Table: {
            if (table.empty()) throw SpecInvalid("table family needs at least one entry");
            double wsum = 0.0;
            for (const auto& e : table) {
                if (!(e.omega > 0.0 && e.omega < 1.0))
                    throw SpecInvalid("table omega values must lie in (0,1)");
                if (e.omega < epsilon || e.omega > 1.0 - epsilon)
                    throw SpecInvalid("table omega value " + std::to_string(e.omega) +
                                      " violates ellipticity [eps, 1-eps]");
                if (!(e.weight > 0.0)) throw SpecInvalid("table weights must be positive");
                wsum += e.weight;
            }
            if (!std::isfinite(wsum) || wsum <= 0.0)
                throw SpecInvalid("table weights are not normalizable");
            for (auto& e : table) e.weight /= wsum;
            break;
        }
        case Family::Constant:
            if (!(p > 0.0 && p < 1.0))
                throw SpecInvalid("constant p must lie in (0,1), got " + std::to_string(p));
            if (p < epsilon || p > 1.0 - epsilon)
                throw SpecInvalid("constant p violates ellipticity [eps, 1-eps]");
            if (!degenerate)
                throw SpecInvalid("constant environments are admitted only with the degenerate flag");
            break;
    }

    if (!degenerate) {
        const double m = mean_log_rho();
        if (std::abs(m) > tolerance)
            throw SpecInvalid("E[log rho] = " + std::to_string(m) +
                              " is nonzero beyond tolerance; recurrent regime requires 0");
        if (!(var_log_rho() > 0.0))
            throw SpecInvalid("Var(log rho) must be positive unless the degenerate flag is set");
    }
}

double EnvironmentSpec::mean_log_rho() const {
    switch (family) {
        case Family::TwoPoint:
        case Family::UniformSymmetric:
            // omega and 1-omega are equally likely and log rho(1-w) = -log rho(w).
            return 0.0;
        case Family::Table: {
            double m = 0.0, wsum = 0.0;
            for (const auto& e : table) {
                m += e.weight * log_rho_of(e.omega);
                wsum += e.weight;
            }
            return m / wsum;
        }
        case Family::Constant:
            return log_rho_of(p);
    }
    return 0.0;
}

double EnvironmentSpec::var_log_rho() const {
    switch (family) {
        case Family::TwoPoint: {
            const double l = log_rho_of(p);
            return l * l;  // symmetric two-point, mean zero
        }
        case Family::UniformSymmetric: {
            const double a = epsilon, b = 1.0 - epsilon;
            return integrate(&sq_log_rho, a, b, 1e-13) / (b - a);
        }
        case Family::Table: {
            const double m = mean_log_rho();
            double s = 0.0, wsum = 0.0;
            for (const auto& e : table) {
                const double l = log_rho_of(e.omega);
                s += e.weight * l * l;
                wsum += e.weight;
            }
            return s / wsum - m * m;
        }
        case Family::Constant:
            return 0.0;
    }
    return 0.0;
}

std::string EnvironmentSpec::id() const {
    std::ostringstream os;
    os << family_name(family) << "(";
    switch (family) {
        case Family::TwoPoint:
        case Family::Constant: os << "p=" << p << ","; break;
        case Family::Table: os << "entries=" << table.size() << ","; break;
        case Family::UniformSymmetric: break;
    }
    os << "eps=" << epsilon << ",seed=" << seed << ")";
    return os.str();
}

double sample_omega(const EnvironmentSpec& spec, std::uint64_t seed, std::int64_t x) {
    const std::uint64_t word = rng::at(seed, static_cast<std::uint64_t>(x));
    switch (spec.family) {
        case Family::TwoPoint:
            return (word & 1ull) ? spec.p : 1.0 - spec.p;
        case Family::UniformSymmetric:
            return spec.epsilon + rng::to_u01(word) * (1.0 - 2.0 * spec.epsilon);
        case Family::Table: {
            double u = rng::to_u01(word);
            for (const auto& e : spec.table) {
                if (u < e.weight) return e.omega;
                u -= e.weight;
            }
            return spec.table.back().omega;  // guard against rounding at u ~ 1
        }
        case Family::Constant:
            return spec.p;
    }
    return 0.5;
}

struct Environment::Impl {
    std::optional<EnvironmentSpec> spec;
    std::vector<double> values;  // explicit backing, empty when spec-backed
    std::int64_t lo = 0;
    double epsilon = 0.0;

    mutable std::mutex mu;
    mutable std::vector<double> vpos;  // vpos[k] = V(k+1)
    mutable std::vector<double> vneg;  // vneg[k] = V(-(k+1))

    double omega(std::int64_t x) const {
        if (spec) return sample_omega(*spec, spec->seed, x);
        const std::int64_t i = x - lo;
        if (i < 0 || i >= static_cast<std::int64_t>(values.size()))
            throw DomainError("explicit environment queried at x=" + std::to_string(x) +
                              " outside its table");
        return values[static_cast<std::size_t>(i)];
    }

    double log_rho(std::int64_t x) const {
        const double w = omega(x);
        return std::log((1.0 - w) / w);
    }
};

Environment Environment::from_spec(EnvironmentSpec spec) {
    spec.validate();
    auto impl = std::make_shared<Impl>();
    impl->epsilon = spec.epsilon;
    impl->spec = std::move(spec);
    return Environment(std::move(impl));
}

Environment Environment::from_values(std::vector<double> omegas, std::int64_t lo, double epsilon) {
    if (omegas.empty()) throw SpecInvalid("explicit environment needs at least one site");
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw SpecInvalid("epsilon must lie in (0, 1/2)");
    for (double w : omegas)
        if (!(w >= epsilon && w <= 1.0 - epsilon))
            throw SpecInvalid("explicit omega value violates ellipticity [eps, 1-eps]");
    auto impl = std::make_shared<Impl>();
    impl->values = std::move(omegas);
    impl->lo = lo;
    impl->epsilon = epsilon;
    return Environment(std::move(impl));
}

double Environment::omega_at(std::int64_t x) const { return impl_->omega(x); }

double Environment::rho_at(std::int64_t x) const {
    const double w = impl_->omega(x);
    return (1.0 - w) / w;
}

double Environment::log_rho_at(std::int64_t x) const { return impl_->log_rho(x); }

double Environment::potential_at(std::int64_t x) const {
    if (x == 0) return 0.0;
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (x > 0) {
        auto& v = impl_->vpos;
        while (static_cast<std::int64_t>(v.size()) < x) {
            const std::int64_t next = static_cast<std::int64_t>(v.size()) + 1;
            const double prev = v.empty() ? 0.0 : v.back();
            v.push_back(prev + impl_->log_rho(next));
        }
        return v[static_cast<std::size_t>(x - 1)];
    }
    auto& v = impl_->vneg;
    while (static_cast<std::int64_t>(v.size()) < -x) {
        const std::int64_t next = -(static_cast<std::int64_t>(v.size()) + 1);
        const double prev = v.empty() ? 0.0 : v.back();
        // V(x) = V(x+1) - log rho_{x+1}
        v.push_back(prev - impl_->log_rho(next + 1));
    }
    return v[static_cast<std::size_t>(-x - 1)];
}

double Environment::epsilon() const { return impl_->epsilon; }

bool Environment::degenerate() const { return impl_->spec ? impl_->spec->degenerate : false; }

const std::optional<EnvironmentSpec>& Environment::spec() const { return impl_->spec; }

std::string Environment::id() const {
    if (impl_->spec) return impl_->spec->id();
    std::ostringstream os;
    os << "explicit[" << impl_->lo << ".."
       << impl_->lo + static_cast<std::int64_t>(impl_->values.size()) - 1 << "]";
    return os.str();
}

}  // namespace sinai::env
