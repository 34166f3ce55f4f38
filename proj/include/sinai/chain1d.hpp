#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sinai/env.hpp"
#include "sinai/valley_descriptor.hpp"

namespace sinai::chain1d {

// Propagation modes. Exact-cover grows the window one cell per side per step
// and conserves mass; absorbing drops exiting mass (any event probability read
// from the result is a certified lower bound); reflecting keeps the walk in
// [t_minus, t_plus] with deterministic inward moves at the boundary rows.
struct ExactCover {
    std::int64_t cell_cap = 4'000'000;
};
struct Absorbing {
    std::int64_t lo;
    std::int64_t hi;
};
struct Reflecting {
    std::int64_t t_minus;
    std::int64_t t_plus;
};
using Mode = std::variant<ExactCover, Absorbing, Reflecting>;

std::string mode_name(const Mode& mode);

// The law of X_n over an integer window; sub-probability in absorbing mode.
class DistVector {
public:
    static DistVector point_mass(std::int64_t x, Mode mode);
    static DistVector from_values(std::int64_t lo, std::vector<double> values, Mode mode,
                                  std::int64_t steps = 0);

    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(v_.size()) - 1; }
    std::int64_t steps() const { return steps_; }
    const Mode& mode() const { return mode_; }
    std::span<const double> values() const { return v_; }

    double at(std::int64_t x) const {
        const std::int64_t i = x - lo_;
        return (i < 0 || i >= static_cast<std::int64_t>(v_.size()))
                   ? 0.0
                   : v_[static_cast<std::size_t>(i)];
    }
    double total_mass() const;

    // CSV with a metadata comment line followed by "x,value" rows.
    void to_csv(std::ostream& os) const;

private:
    friend DistVector evolve_distribution(const env::Environment&, const DistVector&, std::int64_t);
    friend std::vector<double> return_probability_series(const env::Environment&, std::int64_t,
                                                         const Mode&);
    friend std::vector<double> reflected_return_series(const env::Environment&,
                                                       const valley::ValleyDescriptor&,
                                                       std::int64_t);
    std::int64_t lo_ = 0;
    std::int64_t steps_ = 0;
    std::vector<double> v_;
    Mode mode_;
};

// One tridiagonal update per step.
DistVector evolve_distribution(const env::Environment& env, const DistVector& init,
                               std::int64_t steps);

// P(X_{2n} = 0) from a point mass at the origin. Exact-cover is exact;
// absorbing is a certified lower bound (window must contain 0).
double return_probability(const env::Environment& env, std::int64_t n, const Mode& mode);

// P(X_{2n} = 0) for every n = 1..n_max from one propagation pass.
std::vector<double> return_probability_series(const env::Environment& env, std::int64_t n_max,
                                              const Mode& mode);

// Sums the probability of every length-2n nearest-neighbour path returning to
// the origin; the independent oracle for return_probability. Requires 2n <= 14.
double brute_force_return(const env::Environment& env, std::int64_t n);

enum class MeasureKind { Free, Reflected };

// mu(x) = e^{-V(x)} + e^{-V(x-1)} (free), or the reflected-chain variant that
// keeps only the interior conductances.
struct MeasureVector {
    std::int64_t lo = 0;
    std::vector<double> mu;
    MeasureKind kind = MeasureKind::Free;

    double at(std::int64_t x) const;
    void to_csv(std::ostream& os) const;
};

MeasureVector reversible_measure(const env::Environment& env, std::int64_t lo, std::int64_t hi);
MeasureVector reflected_measure(const env::Environment& env, std::int64_t t_minus,
                                std::int64_t t_plus);

// |mu(x) P^x(X_n = y) - mu(y) P^y(X_n = x)| by exact-cover propagation.
double check_reversibility(const env::Environment& env, std::int64_t x, std::int64_t y,
                           std::int64_t n);

// P^y(tau(z) < tau(x)) for x < y < z, by the potential-sum formula with a
// max-shifted accumulation.
double hitting_probability(const env::Environment& env, std::int64_t x, std::int64_t y,
                           std::int64_t z);

// Same quantity from the harmonic three-term recurrence, solved by forward
// elimination; the oracle for hitting_probability.
double hitting_solve(const env::Environment& env, std::int64_t x, std::int64_t y, std::int64_t z);

struct PotentialBounds {
    double prel2_rhs;  // bound on P^y(tau(z) < k)
    double prel3_rhs;  // bound on P^y(tau(x) < k)
    double prel4_rhs;  // bound on E^y[tau(z) 1{tau(z) < tau(x)}]
};

PotentialBounds potential_bounds(const env::Environment& env, std::int64_t x, std::int64_t y,
                                 std::int64_t z, std::int64_t k);

struct FloorCheck {
    double lhs;  // P^{b+}(reflected X_ell = b+), exact propagation
    double rhs;  // (1/2) (|T-| + T+ + 1)^{-1} e^{-delta L}
};

FloorCheck reflected_return_floor(const env::Environment& env,
                                  const valley::ValleyDescriptor& descriptor, std::int64_t ell);

// Reflected-chain return probabilities at b+ for every even ell = 0, 2, ..;
// single pass, used to sweep the floor check over a whole range.
std::vector<double> reflected_return_series(const env::Environment& env,
                                            const valley::ValleyDescriptor& descriptor,
                                            std::int64_t ell_max);

}  // namespace sinai::chain1d
