#include "sinai/chain1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

namespace sinai::chain1d {

namespace {

constexpr double kMassTol = 1e-12;

// Transition rows over a window [lo, hi]: up[i] is the probability of moving
// right from site lo + i. Reflecting boundaries override to 1/0.
struct Rows {
    std::vector<double> up, down;
};

Rows make_rows(const env::Environment& env, std::int64_t lo, std::int64_t hi,
               const Reflecting* refl) {
    const std::size_t w = static_cast<std::size_t>(hi - lo + 1);
    Rows r;
    r.up.resize(w);
    r.down.resize(w);
    for (std::size_t i = 0; i < w; ++i) {
        const std::int64_t x = lo + static_cast<std::int64_t>(i);
        double u = env.omega_at(x);
        if (refl) {
            if (x == refl->t_minus) u = 1.0;
            if (x == refl->t_plus) u = 0.0;
        }
        r.up[i] = u;
        r.down[i] = 1.0 - u;
    }
    return r;
}

// One absorbing/reflecting stencil step over a fixed window. Mass entering from
// outside does not exist; mass leaving is dropped (absorbing) or cannot arise
// (reflecting rows already point inward).
void step_fixed(const Rows& r, const std::vector<double>& cur, std::vector<double>& nxt) {
    const std::size_t w = cur.size();
    if (w == 1) {
        nxt[0] = 0.0;
        return;
    }
    nxt[0] = cur[1] * r.down[1];
    nxt[w - 1] = cur[w - 2] * r.up[w - 2];
    for (std::size_t i = 1; i + 1 < w; ++i)
        nxt[i] = cur[i - 1] * r.up[i - 1] + cur[i + 1] * r.down[i + 1];
}

struct FixedPropagator {
    Rows rows;
    std::vector<double> cur, nxt;
    std::int64_t lo;

    FixedPropagator(const env::Environment& env, std::int64_t lo_, std::int64_t hi_,
                    const Reflecting* refl)
        : rows(make_rows(env, lo_, hi_, refl)),
          cur(static_cast<std::size_t>(hi_ - lo_ + 1), 0.0),
          nxt(cur.size(), 0.0),
          lo(lo_) {}

    void load(const DistVector& init) {
        for (std::int64_t x = init.lo(); x <= init.hi(); ++x)
            cur[static_cast<std::size_t>(x - lo)] = init.at(x);
    }

    void step() {
        step_fixed(rows, cur, nxt);
        cur.swap(nxt);
    }

    double at(std::int64_t x) const {
        const std::int64_t i = x - lo;
        return (i < 0 || i >= static_cast<std::int64_t>(cur.size()))
                   ? 0.0
                   : cur[static_cast<std::size_t>(i)];
    }
};

void validate_values(const std::vector<double>& v, const Mode& mode) {
    double sum = 0.0;
    for (double p : v) {
        if (!(p >= 0.0)) throw DomainError("distribution values must be nonnegative");
        sum += p;
    }
    if (std::holds_alternative<Absorbing>(mode)) {
        if (sum > 1.0 + kMassTol)
            throw DomainError("absorbing distribution mass exceeds 1");
    } else if (std::abs(sum - 1.0) > kMassTol) {
        throw DomainError("distribution mass must equal 1, got " + std::to_string(sum));
    }
}

}  // namespace

std::string mode_name(const Mode& mode) {
    if (std::holds_alternative<ExactCover>(mode)) return "exact-cover";
    if (std::holds_alternative<Absorbing>(mode)) return "absorbing";
    return "reflecting";
}

DistVector DistVector::point_mass(std::int64_t x, Mode mode) {
    return from_values(x, {1.0}, std::move(mode), 0);
}

DistVector DistVector::from_values(std::int64_t lo, std::vector<double> values, Mode mode,
                                   std::int64_t steps) {
    if (values.empty()) throw DomainError("distribution window must be nonempty");
    validate_values(values, mode);
    const std::int64_t hi = lo + static_cast<std::int64_t>(values.size()) - 1;
    if (const auto* a = std::get_if<Absorbing>(&mode)) {
        if (a->lo > a->hi) throw DomainError("absorbing window is empty");
        if (lo < a->lo || hi > a->hi)
            throw DomainError("initial window must lie inside the absorbing window");
    } else if (const auto* r = std::get_if<Reflecting>(&mode)) {
        if (r->t_minus > r->t_plus) throw DomainError("reflecting window is empty");
        if (lo < r->t_minus || hi > r->t_plus)
            throw DomainError("initial window must lie inside [T-, T+]");
    }
    DistVector d;
    d.lo_ = lo;
    d.steps_ = steps;
    d.v_ = std::move(values);
    d.mode_ = std::move(mode);
    return d;
}

double DistVector::total_mass() const { return std::accumulate(v_.begin(), v_.end(), 0.0); }

void DistVector::to_csv(std::ostream& os) const {
    os << "# window=" << lo() << ".." << hi() << " mode=" << mode_name(mode_)
       << " steps=" << steps_ << "\n";
    os << "x,value\n";
    char buf[64];
    for (std::int64_t x = lo(); x <= hi(); ++x) {
        std::snprintf(buf, sizeof buf, "%.17g", at(x));
        os << x << "," << buf << "\n";
    }
}

DistVector evolve_distribution(const env::Environment& env, const DistVector& init,
                               std::int64_t steps) {
    if (steps < 0) throw DomainError("step count must be nonnegative");
    if (steps == 0) return init;

    if (const auto* ec = std::get_if<ExactCover>(&init.mode())) {
        const std::int64_t lo = init.lo() - steps, hi = init.hi() + steps;
        const std::int64_t cells = hi - lo + 1;
        if (cells > ec->cell_cap)
            throw WindowOverflow("exact-cover window of " + std::to_string(cells) +
                                 " cells exceeds the cap of " + std::to_string(ec->cell_cap));
        FixedPropagator prop(env, lo, hi, nullptr);
        prop.load(init);
        // The window only needs to grow one cell per side per step, but the
        // fixed stencil touches dead zero cells only, so a single allocation
        // over the final extent is both exact and simple.
        for (std::int64_t s = 0; s < steps; ++s) prop.step();
        DistVector out;
        out.lo_ = lo;
        out.steps_ = init.steps() + steps;
        out.v_ = std::move(prop.cur);
        out.mode_ = init.mode();
        return out;
    }

    if (const auto* ab = std::get_if<Absorbing>(&init.mode())) {
        FixedPropagator prop(env, ab->lo, ab->hi, nullptr);
        prop.load(init);
        for (std::int64_t s = 0; s < steps; ++s) prop.step();
        DistVector out;
        out.lo_ = ab->lo;
        out.steps_ = init.steps() + steps;
        out.v_ = std::move(prop.cur);
        out.mode_ = init.mode();
        return out;
    }

    const auto& rf = std::get<Reflecting>(init.mode());
    if (rf.t_minus == rf.t_plus) {
        // width-1 chain: the single state is its own inward move
        DistVector out = init;
        out.steps_ = init.steps() + steps;
        return out;
    }
    FixedPropagator prop(env, rf.t_minus, rf.t_plus, &rf);
    prop.load(init);
    for (std::int64_t s = 0; s < steps; ++s) prop.step();
    DistVector out;
    out.lo_ = rf.t_minus;
    out.steps_ = init.steps() + steps;
    out.v_ = std::move(prop.cur);
    out.mode_ = init.mode();
    return out;
}

double return_probability(const env::Environment& env, std::int64_t n, const Mode& mode) {
    if (n < 1) throw DomainError("return probability needs n >= 1");
    if (const auto* ab = std::get_if<Absorbing>(&mode))
        if (ab->lo > 0 || ab->hi < 0)
            throw DomainError("absorbing window must contain the origin");
    const DistVector out = evolve_distribution(env, DistVector::point_mass(0, mode), 2 * n);
    return out.at(0);
}

std::vector<double> return_probability_series(const env::Environment& env, std::int64_t n_max,
                                              const Mode& mode) {
    if (n_max < 1) throw DomainError("series needs n_max >= 1");
    std::int64_t lo, hi;
    const Reflecting* refl = nullptr;
    if (const auto* ec = std::get_if<ExactCover>(&mode)) {
        lo = -2 * n_max;
        hi = 2 * n_max;
        if (hi - lo + 1 > ec->cell_cap)
            throw WindowOverflow("series window exceeds the exact-cover cell cap");
    } else if (const auto* ab = std::get_if<Absorbing>(&mode)) {
        if (ab->lo > 0 || ab->hi < 0)
            throw DomainError("absorbing window must contain the origin");
        lo = ab->lo;
        hi = ab->hi;
    } else {
        refl = &std::get<Reflecting>(mode);
        if (refl->t_minus > 0 || refl->t_plus < 0)
            throw DomainError("reflecting window must contain the origin");
        lo = refl->t_minus;
        hi = refl->t_plus;
    }
    FixedPropagator prop(env, lo, hi, refl);
    prop.cur[static_cast<std::size_t>(-lo)] = 1.0;
    std::vector<double> series(static_cast<std::size_t>(n_max));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        prop.step();
        prop.step();
        series[static_cast<std::size_t>(n - 1)] = prop.at(0);
    }
    return series;
}

namespace {

double brute_force_rec(const env::Environment& env, std::int64_t pos, int steps_left,
                       double prob) {
    if (steps_left == 0) return pos == 0 ? prob : 0.0;
    const double w = env.omega_at(pos);
    return brute_force_rec(env, pos + 1, steps_left - 1, prob * w) +
           brute_force_rec(env, pos - 1, steps_left - 1, prob * (1.0 - w));
}

}  // namespace

double brute_force_return(const env::Environment& env, std::int64_t n) {
    if (n < 1) throw DomainError("brute-force return needs n >= 1");
    if (2 * n > 14) throw TooLarge("brute-force path enumeration is limited to 2n <= 14");
    return brute_force_rec(env, 0, static_cast<int>(2 * n), 1.0);
}

double MeasureVector::at(std::int64_t x) const {
    const std::int64_t i = x - lo;
    if (i < 0 || i >= static_cast<std::int64_t>(mu.size()))
        throw DomainError("measure queried outside its window");
    return mu[static_cast<std::size_t>(i)];
}

void MeasureVector::to_csv(std::ostream& os) const {
    os << "# window=" << lo << ".." << lo + static_cast<std::int64_t>(mu.size()) - 1
       << " kind=" << (kind == MeasureKind::Free ? "free" : "reflected") << "\n";
    os << "x,value\n";
    char buf[64];
    for (std::size_t i = 0; i < mu.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", mu[i]);
        os << lo + static_cast<std::int64_t>(i) << "," << buf << "\n";
    }
}

MeasureVector reversible_measure(const env::Environment& env, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw DomainError("measure window is empty");
    MeasureVector m;
    m.lo = lo;
    m.kind = MeasureKind::Free;
    m.mu.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t x = lo; x <= hi; ++x)
        m.mu.push_back(std::exp(-env.potential_at(x)) + std::exp(-env.potential_at(x - 1)));
    return m;
}

MeasureVector reflected_measure(const env::Environment& env, std::int64_t t_minus,
                                std::int64_t t_plus) {
    if (t_minus > t_plus) throw DomainError("reflected window is empty");
    MeasureVector m;
    m.lo = t_minus;
    m.kind = MeasureKind::Reflected;
    m.mu.reserve(static_cast<std::size_t>(t_plus - t_minus + 1));
    for (std::int64_t x = t_minus; x <= t_plus; ++x) {
        if (x == t_minus)
            m.mu.push_back(std::exp(-env.potential_at(t_minus)));
        else if (x == t_plus)
            m.mu.push_back(std::exp(-env.potential_at(t_plus - 1)));
        else
            m.mu.push_back(std::exp(-env.potential_at(x)) + std::exp(-env.potential_at(x - 1)));
    }
    return m;
}

double check_reversibility(const env::Environment& env, std::int64_t x, std::int64_t y,
                           std::int64_t n) {
    if (n < 0) throw DomainError("step count must be nonnegative");
    const Mode mode = ExactCover{};
    const DistVector from_x = evolve_distribution(env, DistVector::point_mass(x, mode), n);
    const DistVector from_y = evolve_distribution(env, DistVector::point_mass(y, mode), n);
    const double mu_x = std::exp(-env.potential_at(x)) + std::exp(-env.potential_at(x - 1));
    const double mu_y = std::exp(-env.potential_at(y)) + std::exp(-env.potential_at(y - 1));
    return std::abs(mu_x * from_x.at(y) - mu_y * from_y.at(x));
}

double hitting_probability(const env::Environment& env, std::int64_t x, std::int64_t y,
                           std::int64_t z) {
    if (!(x < y && y < z)) throw DomainError("hitting probability requires x < y < z");
    double vmax = -std::numeric_limits<double>::infinity();
    for (std::int64_t j = x; j < z; ++j) vmax = std::max(vmax, env.potential_at(j));
    double num = 0.0, den = 0.0;
    for (std::int64_t j = x; j < z; ++j) {
        const double t = std::exp(env.potential_at(j) - vmax);
        if (j < y) num += t;
        den += t;
    }
    return num / den;
}

double hitting_solve(const env::Environment& env, std::int64_t x, std::int64_t y, std::int64_t z) {
    if (!(x < y && y < z)) throw DomainError("hitting solve requires x < y < z");
    if (z - x > 1'000'000) throw TooLarge("hitting solve window exceeds 1e6 sites");
    // h(w) = omega_w h(w+1) + (1-omega_w) h(w-1), h(x) = 0, h(z) = 1.
    // Forward elimination in terms of the ratios r_w = h(w)/h(w+1).
    double r = 0.0;  // r_x
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(z - x - 1));
    for (std::int64_t w = x + 1; w < z; ++w) {
        const double om = env.omega_at(w);
        r = om / (1.0 - (1.0 - om) * r);
        ratios.push_back(r);
    }
    double h = 1.0;  // h(z)
    for (std::int64_t w = z - 1; w >= y; --w)
        h *= ratios[static_cast<std::size_t>(w - x - 1)];
    return h;
}

PotentialBounds potential_bounds(const env::Environment& env, std::int64_t x, std::int64_t y,
                                 std::int64_t z, std::int64_t k) {
    if (!(x < y && y < z)) throw DomainError("potential bounds require x < y < z");
    if (k < 1) throw DomainError("potential bounds require k >= 1");

    // prel2: k * exp(-max_{y <= i < z} [V(z-1) - V(i)])
    double min_i = std::numeric_limits<double>::infinity();
    for (std::int64_t i = y; i < z; ++i) min_i = std::min(min_i, env.potential_at(i));
    const double prel2 =
        static_cast<double>(k) * std::exp(-(env.potential_at(z - 1) - min_i));

    // prel3: k * exp(-max_{x < i <= y} [V(x+1) - V(i)])
    min_i = std::numeric_limits<double>::infinity();
    for (std::int64_t i = x + 1; i <= y; ++i) min_i = std::min(min_i, env.potential_at(i));
    const double prel3 =
        static_cast<double>(k) * std::exp(-(env.potential_at(x + 1) - min_i));

    // prel4: (z-x)^2 * exp(max_{x <= i <= j <= z} (V(j) - V(i)))
    double runmin = std::numeric_limits<double>::infinity();
    double rise = 0.0;
    for (std::int64_t j = x; j <= z; ++j) {
        const double v = env.potential_at(j);
        runmin = std::min(runmin, v);
        rise = std::max(rise, v - runmin);
    }
    const double span = static_cast<double>(z - x);
    const double prel4 = span * span * std::exp(rise);

    return {prel2, prel3, prel4};
}

namespace {

void require_gamma(const valley::ValleyDescriptor& d) {
    if (!d.in_gamma || std::isnan(d.delta))
        throw NotInGamma("descriptor is not a Gamma(L, delta) member");
}

double floor_rhs(const valley::ValleyDescriptor& d) {
    const double width = static_cast<double>(-d.t_minus + d.t_plus + 1);
    return 0.5 / width * std::exp(-d.delta * d.L);
}

}  // namespace

FloorCheck reflected_return_floor(const env::Environment& env,
                                  const valley::ValleyDescriptor& descriptor, std::int64_t ell) {
    require_gamma(descriptor);
    if (ell < 0 || ell % 2 != 0) throw DomainError("the floor holds for even ell only");
    const Mode mode = Reflecting{descriptor.t_minus, descriptor.t_plus};
    const DistVector out =
        evolve_distribution(env, DistVector::point_mass(descriptor.b_plus, mode), ell);
    return {out.at(descriptor.b_plus), floor_rhs(descriptor)};
}

std::vector<double> reflected_return_series(const env::Environment& env,
                                            const valley::ValleyDescriptor& descriptor,
                                            std::int64_t ell_max) {
    require_gamma(descriptor);
    if (ell_max < 0) throw DomainError("ell_max must be nonnegative");
    const std::int64_t count = ell_max / 2 + 1;  // ell = 0, 2, ..., 2*(count-1)
    std::vector<double> series(static_cast<std::size_t>(count));
    series[0] = 1.0;
    if (descriptor.t_minus == descriptor.t_plus) {
        std::fill(series.begin(), series.end(), 1.0);
        return series;
    }
    const Reflecting rf{descriptor.t_minus, descriptor.t_plus};
    FixedPropagator prop(env, rf.t_minus, rf.t_plus, &rf);
    prop.cur[static_cast<std::size_t>(descriptor.b_plus - rf.t_minus)] = 1.0;
    for (std::int64_t k = 1; k < count; ++k) {
        prop.step();
        prop.step();
        series[static_cast<std::size_t>(k)] = prop.at(descriptor.b_plus);
    }
    return series;
}

}  // namespace sinai::chain1d
