#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sinai/errors.hpp"

namespace sinai::env {

enum class Family { TwoPoint, UniformSymmetric, Table, Constant };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct TableEntry {
    double omega;
    double weight;
};

// Parameters of an iid environment law. Validation is analytic: the moments of
// log rho are computed from the family's closed form (or the table), never by
// sampling.
struct EnvironmentSpec {
    Family family = Family::TwoPoint;
    double p = 0.3;                  // two-point / constant parameter
    std::vector<TableEntry> table;   // table family (weights normalized on validate)
    double epsilon = 0.05;           // uniform ellipticity: omega in [eps, 1-eps]
    std::uint64_t seed = 1;
    bool degenerate = false;         // admits E[log rho] != 0 or Var = 0 (constant family oracles)
    double tolerance = 1e-12;

    static EnvironmentSpec two_point(double p, double epsilon, std::uint64_t seed);
    static EnvironmentSpec uniform_symmetric(double epsilon, std::uint64_t seed);
    static EnvironmentSpec table_law(std::vector<TableEntry> entries, double epsilon,
                                     std::uint64_t seed, bool degenerate = false);
    static EnvironmentSpec constant(double p, double epsilon, std::uint64_t seed,
                                    bool degenerate = true);

    // Throws SpecInvalid; normalizes table weights in place.
    void validate();

    double mean_log_rho() const;
    double var_log_rho() const;
    std::string id() const;
};

// One site draw; pure in (spec, seed, x).
double sample_omega(const EnvironmentSpec& spec, std::uint64_t seed, std::int64_t x);

// A realized two-sided environment. Copies share state; the potential cache is
// safe under concurrent use from several workers.
class Environment {
public:
    static Environment from_spec(EnvironmentSpec spec);
    // Explicit site values on [lo, lo + values.size() - 1]; queries outside throw.
    static Environment from_values(std::vector<double> omegas, std::int64_t lo, double epsilon);

    double omega_at(std::int64_t x) const;
    double rho_at(std::int64_t x) const;
    double log_rho_at(std::int64_t x) const;

    // V(0) = 0, V(x) - V(x-1) = log rho_x for all x; cached prefix sums.
    double potential_at(std::int64_t x) const;

    double epsilon() const;
    bool degenerate() const;
    const std::optional<EnvironmentSpec>& spec() const;
    std::string id() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    explicit Environment(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
};

inline Environment make_environment(EnvironmentSpec spec) {
    return Environment::from_spec(std::move(spec));
}

}  // namespace sinai::env
