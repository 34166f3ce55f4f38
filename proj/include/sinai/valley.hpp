#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sinai/chain1d.hpp"
#include "sinai/env.hpp"
#include "sinai/valley_descriptor.hpp"

namespace sinai::valley {

// Membership requires |T+-| <= L^2, so the default cap is L^2 plus a little
// slack for near-miss diagnostics.
std::int64_t default_scan_cap(double L);

// Scans outward from the origin, tracking running minima, until the first-rise
// position is found on both sides. Throws ScanExhausted (with the failing side)
// past scan_cap sites. The returned descriptor has no membership verdict.
ValleyDescriptor valley_descriptor(const env::Environment& env, double L, std::int64_t scan_cap);

// Same scan plus the Gamma(L, delta) membership verdict.
ValleyDescriptor valley_descriptor(const env::Environment& env, double L, double delta,
                                   std::int64_t scan_cap);

bool gamma_member(const env::Environment& env, double L, double delta, std::int64_t scan_cap = -1);

struct GammaSearchEntry {
    double L = 0.0;
    bool member = false;
    bool scan_exhausted = false;
};

// Membership across an increasing L grid; scan failures are recorded, not thrown.
std::vector<GammaSearchEntry> gamma_search(const env::Environment& env, double delta,
                                           const std::vector<double>& L_grid);

struct Prop1Sample {
    std::int64_t n = 0;
    double lhs = 0.0;        // certified lower bound on P(X_{2n} = 0)
    double threshold = 0.0;  // e^{-3 delta L}
    bool pass = false;
    double observed_c = 0.0;  // lhs * e^{3 delta L}
};

struct Prop1Report {
    double L = 0.0;
    double delta = 0.0;
    ValleyDescriptor valley;
    std::int64_t window_lo = 0;  // absorbing window [T- - 1, T+ + 1]
    std::int64_t window_hi = 0;
    std::vector<Prop1Sample> samples;

    std::string to_json() const;
};

// Geometric grid of at most max_points values spanning [e^{3 delta L}, e^{(1-2delta)L}].
std::vector<std::int64_t> prop1_geometric_grid(double L, double delta, int max_points = 16);

// Certified lower bounds on the quenched return probability across the sampled
// n, from absorbing propagation on [T- - 1, T+ + 1].
Prop1Report prop1_check(const env::Environment& env, double L, double delta,
                        const std::vector<std::int64_t>& n_samples, int workers = 1);

// a(omega, n) with P(X_{2n} = 0) = n^{-a}; p = 0 maps to +infinity.
double local_exponent(std::int64_t n, double p);

struct ReturnSeries {
    std::string env_id;
    std::string mode;
    std::vector<std::int64_t> ns;  // strictly increasing
    std::vector<double> ps;

    void validate() const;
    void to_csv(std::ostream& os) const;
};

ReturnSeries make_return_series(const env::Environment& env, std::int64_t n_max,
                                const chain1d::Mode& mode);

struct PartialSumRow {
    std::int64_t n = 0;
    double weighted = 0.0;  // cumulative sum of p_k * k^{-alpha}
    double powered = 0.0;   // cumulative sum of p_k^{power}
    double product = 0.0;   // cumulative sum of p_k * prod(companions), when present
};

std::vector<PartialSumRow> partial_sums(const ReturnSeries& series, double alpha, double power,
                                        const std::vector<ReturnSeries>& companions = {});

// Density of the limiting local exponent of the continuous-time analogue.
double cp_density(double z);

}  // namespace sinai::valley
