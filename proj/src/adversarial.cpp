#include "stabletest/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stabletest {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

void check_corruption_atom(const FiniteDistribution& base, CorruptionKind kind, int atom) {
    const bool response = kind == CorruptionKind::response_at_y;
    const int bound = response ? base.y_size() : base.x_size();
    if (atom < 0 || atom >= bound) {
        throw std::invalid_argument("corrupted_mixture: planted atom outside the space");
    }
}

}  // namespace

FiniteDistribution MixtureDistribution::materialize() const {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw std::invalid_argument("MixtureDistribution: weight must lie in [0,1]");
    }
    check_corruption_atom(base, kind, atom);
    const int xs = base.x_size();
    const int ys = base.y_size();
    std::vector<double> table(static_cast<std::size_t>(xs) * ys, 0.0);
    if (kind == CorruptionKind::response_at_y) {
        const std::vector<double> mx = base.marginal_x();
        for (int x = 0; x < xs; ++x) {
            for (int y = 0; y < ys; ++y) {
                double v = (1.0 - weight) * base.prob(x, y);
                if (y == atom) v += weight * mx[static_cast<std::size_t>(x)];
                table[static_cast<std::size_t>(x) * ys + y] = v;
            }
        }
    } else {
        const std::vector<double> my = base.marginal_y();
        for (int x = 0; x < xs; ++x) {
            for (int y = 0; y < ys; ++y) {
                double v = (1.0 - weight) * base.prob(x, y);
                if (x == atom) v += weight * my[static_cast<std::size_t>(y)];
                table[static_cast<std::size_t>(x) * ys + y] = v;
            }
        }
    }
    FiniteDistribution out(xs, ys, std::move(table));
    if (kind == CorruptionKind::response_at_y) {
        // response corruption must leave the X marginal untouched
        const std::vector<double> before = base.marginal_x();
        const std::vector<double> after = out.marginal_x();
        for (int x = 0; x < xs; ++x) {
            if (std::abs(before[static_cast<std::size_t>(x)] -
                         after[static_cast<std::size_t>(x)]) > 1e-12) {
                throw std::logic_error("MixtureDistribution: X marginal drifted");
            }
        }
    }
    return out;
}

FiniteDistribution corrupted_mixture(const FiniteDistribution& base, CorruptionKind kind,
                                     int atom, double c) {
    return MixtureDistribution{base, kind, atom, c}.materialize();
}

FittedModel a1_model(const Learner& base, const Dataset& data, const RandomSeed& seed,
                     double epsilon) {
    if (data.empty()) throw std::invalid_argument("a1_model: requires a nonempty dataset");
    if (!base.symmetric()) {
        throw std::invalid_argument(
            "a1_model: leave-one-out shortcut needs a symmetric base learner");
    }
    std::vector<double> table;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const FittedModel fit = base.fit(data.without_index(i), seed);
        if (table.empty()) {
            table = fit.table();
        } else {
            for (std::size_t x = 0; x < table.size(); ++x) {
                table[x] = std::max(table[x], fit.table()[x]);
            }
        }
    }
    for (double& v : table) v += 1.0 + epsilon;
    return FittedModel(std::move(table), Provenance::adversarial_a1);
}

JointPartition::JointPartition(int x_size, int y_size, std::vector<int> cell_of_atom, int cells)
    : x_size_(x_size), y_size_(y_size), cell_of_atom_(std::move(cell_of_atom)), cells_(cells) {
    if (cells_ < 1) throw std::invalid_argument("JointPartition: needs at least one cell");
    if (cell_of_atom_.size() != static_cast<std::size_t>(x_size_) * y_size_) {
        throw std::invalid_argument("JointPartition: assignment size mismatch");
    }
    for (int c : cell_of_atom_) {
        if (c >= cells_) throw std::invalid_argument("JointPartition: cell id out of range");
    }
}

int JointPartition::cell_of(int x, int y) const {
    if (x < 0 || x >= x_size_ || y < 0 || y >= y_size_) {
        throw std::out_of_range("JointPartition::cell_of: atom outside the space");
    }
    const int c = cell_of_atom_[static_cast<std::size_t>(x) * y_size_ + y];
    if (c < 0) throw std::invalid_argument("JointPartition: point outside all cells");
    return c;
}

std::vector<int> count_vector(const Dataset& data, const JointPartition& partition) {
    std::vector<int> counts(static_cast<std::size_t>(partition.cells()), 0);
    for (const DataPoint& p : data) ++counts[static_cast<std::size_t>(partition.cell_of(p.x, p.y))];
    return counts;
}

Learner wrap(const Learner& base, const AdversarialWrap& spec) {
    if (!base.symmetric()) {
        throw std::invalid_argument("wrap: base learner must be symmetric");
    }
    if (spec.n < 1) throw std::invalid_argument("wrap: target size n must be >= 1");
    if (const auto* count = std::get_if<CountTrigger>(&spec.trigger)) {
        const CompositionIndex index(spec.n, count->partition.cells());
        if (count->mask.size() != index.size()) {
            throw std::invalid_argument("wrap: count mask must index all of I_{n,M}");
        }
    }

    const auto size_n = static_cast<std::size_t>(spec.n);
    auto fit = [base, spec, size_n](const Dataset& data, const RandomSeed& seed) -> FittedModel {
        if (data.size() != size_n) return base.fit(data, seed);
        const bool triggered = std::visit(
            [&](const auto& trig) -> bool {
                using T = std::decay_t<decltype(trig)>;
                if constexpr (std::is_same_v<T, ResponseTrigger>) {
                    return data.contains_response(trig.y);
                } else if constexpr (std::is_same_v<T, FeatureTrigger>) {
                    return data.contains_feature(trig.x);
                } else if constexpr (std::is_same_v<T, FeatureEvalTrigger>) {
                    return data.contains_feature(trig.x);
                } else if constexpr (std::is_same_v<T, SeedTrigger>) {
                    return trig.region.contains(seed.value());
                } else {
                    static_assert(std::is_same_v<T, CountTrigger>);
                    const CompositionIndex index(static_cast<int>(size_n),
                                                 trig.partition.cells());
                    return trig.mask[index.rank(count_vector(data, trig.partition))] != 0;
                }
            },
            spec.trigger);
        if (triggered) {
            return a1_model(base, data, seed, spec.epsilon)
                .retagged(Provenance::adversarial_wrapped);
        }
        if (const auto* ev = std::get_if<FeatureEvalTrigger>(&spec.trigger)) {
            // untriggered by the training set, but predictions at x itself
            // still come from A1
            FittedModel base_fit = base.fit(data, seed);
            const FittedModel a1 = a1_model(base, data, seed, spec.epsilon);
            std::vector<double> table = base_fit.table();
            table[static_cast<std::size_t>(ev->x)] = a1.predict(ev->x);
            return FittedModel(std::move(table), Provenance::adversarial_wrapped);
        }
        return base.fit(data, seed);
    };

    std::vector<double> cuts = base.seed_cuts();
    if (const auto* st = std::get_if<SeedTrigger>(&spec.trigger)) {
        for (const auto& [a, b] : st->region.intervals()) {
            cuts.push_back(a);
            cuts.push_back(b);
        }
    }
    const SeedDependence dep =
        base.seed_dependence() == SeedDependence::arbitrary ? SeedDependence::arbitrary
        : (std::holds_alternative<SeedTrigger>(spec.trigger) || !cuts.empty())
            ? SeedDependence::bucketed
            : SeedDependence::none;
    return Learner(base.name() + "+wrap", std::move(fit), dep, std::move(cuts),
                   base.symmetric());
}

double instability_lower_bound(CorruptionKind kind, double c, int n, double delta_star) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::invalid_argument("instability_lower_bound: c must lie in [0,1]");
    }
    if (!(delta_star >= 0.0 && delta_star <= 1.0)) {
        throw std::invalid_argument("instability_lower_bound: delta_star must lie in [0,1]");
    }
    if (n < 1) throw std::invalid_argument("instability_lower_bound: n must be >= 1");
    const double keep_n = std::pow(1.0 - c, n);
    const double keep_n1 = std::pow(1.0 - c, n + 1);
    switch (kind) {
        case CorruptionKind::response_at_y:
            return (1.0 - keep_n) + keep_n * delta_star;
        case CorruptionKind::feature_at_x:
            return (1.0 - keep_n) + keep_n1 * delta_star;
        case CorruptionKind::feature_at_x_eval:
            return (1.0 - keep_n1) + keep_n1 * delta_star;
    }
    throw std::logic_error("instability_lower_bound: unknown kind");
}

double critical_c(CorruptionKind kind, int n, double delta, double delta_star) {
    if (n < 1) throw std::invalid_argument("critical_c: n must be >= 1");
    if (!(delta < 1.0)) throw std::domain_error("critical_c: requires delta < 1");
    if (!(delta_star >= 0.0 && delta_star <= delta)) {
        throw std::invalid_argument("critical_c: requires 0 <= delta_star <= delta");
    }
    switch (kind) {
        case CorruptionKind::response_at_y:
            return 1.0 - std::pow((1.0 - delta) / (1.0 - delta_star), 1.0 / n);
        case CorruptionKind::feature_at_x: {
            const double inflated = delta * (1.0 + 1.0 / (kE * n));
            if (!(inflated < 1.0)) {
                throw std::domain_error("critical_c: delta (1 + 1/(e n)) must be < 1");
            }
            return 1.0 - std::pow((1.0 - inflated) / (1.0 - delta_star), 1.0 / n);
        }
        case CorruptionKind::feature_at_x_eval:
            return 1.0 - std::pow((1.0 - delta) / (1.0 - delta_star), 1.0 / (n + 1));
    }
    throw std::logic_error("critical_c: unknown kind");
}

double seed_conditional_instability(const Learner& learner, const FiniteDistribution& dist, int n,
                                    double epsilon, const RandomSeed& xi,
                                    const ExactOptions& opts) {
    if (n < 1) throw std::invalid_argument("seed_conditional_instability: requires n >= 1");
    detail::check_enumeration_cap(dist, n, opts.enumeration_cap);
    const std::vector<double> px = dist.marginal_x();
    long double mass = 0.0L;
    detail::for_each_dataset(dist, n, [&](const Dataset& data, double p_data) {
        const FittedModel fit_n = learner.fit(data, xi);
        const FittedModel fit_n1 = learner.fit(data.without_last(), xi);
        for (int x = 0; x < dist.x_size(); ++x) {
            if (px[static_cast<std::size_t>(x)] == 0.0) continue;
            if (std::abs(fit_n.predict(x) - fit_n1.predict(x)) > epsilon) {
                mass += static_cast<long double>(p_data) * px[static_cast<std::size_t>(x)];
            }
        }
    });
    return static_cast<double>(mass);
}

double seed_conditional_instability_mc(const Learner& learner, const FiniteDistribution& dist,
                                       int n, double epsilon, const RandomSeed& xi,
                                       std::uint64_t trials, std::uint64_t key) {
    if (n < 1 || trials < 1) {
        throw std::invalid_argument("seed_conditional_instability_mc: n >= 1, trials >= 1");
    }
    CounterRng rng{key};
    std::uint64_t count = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Dataset data;
        for (int i = 0; i < n; ++i) data.push_back(dist.sample_point(rng));
        const int test_x = dist.sample_feature(rng);
        const FittedModel fit_n = learner.fit(data, xi);
        const FittedModel fit_n1 = learner.fit(data.without_last(), xi);
        if (std::abs(fit_n.predict(test_x) - fit_n1.predict(test_x)) > epsilon) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(trials);
}

double btrain_condition(const Learner& learner, const FiniteDistribution& dist, int n,
                        double epsilon, const SeedRegion& region, const ExactOptions& opts) {
    const double leb = region.measure();
    if (leb >= 1.0) return 1.0;

    // refine the learner's buckets with the region's endpoints
    std::vector<double> edges{0.0, 1.0};
    for (double c : learner.seed_cuts()) edges.push_back(c);
    for (const auto& [a, b] : region.intervals()) {
        edges.push_back(a);
        edges.push_back(b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    long double outside_mass = 0.0L;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        if (hi <= lo) continue;
        const double mid = 0.5 * (lo + hi);
        if (region.contains(mid)) continue;
        const double f = seed_conditional_instability(learner, dist, n, epsilon,
                                                      RandomSeed::from_value(mid), opts);
        outside_mass += static_cast<long double>(hi - lo) * f;
    }
    const double conditional = static_cast<double>(outside_mass) / (1.0 - leb);
    return leb + (1.0 - leb) * conditional;
}

double deterministic_construction_rho(double delta, double delta_star, int n) {
    if (n < 1) throw std::invalid_argument("deterministic_construction_rho: n >= 1");
    if (!(delta_star >= 0.0 && delta_star <= delta && delta < 1.0)) {
        throw std::invalid_argument(
            "deterministic_construction_rho: requires 0 <= delta_star <= delta < 1");
    }
    return (delta - delta_star + 1.0 / n) / (1.0 - delta_star);
}

DeterministicConstructionReport deterministic_construction_check(
    const Learner& base, const FiniteDistribution& dist, int n, const JointPartition& partition,
    double epsilon, double rho, const RandomSeed& seed, const ExactOptions& opts) {
    if (n < 1) throw std::invalid_argument("deterministic_construction_check: requires n >= 1");
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("deterministic_construction_check: rho must lie in [0,1]");
    }
    detail::check_enumeration_cap(dist, n, opts.enumeration_cap);
    const CompositionIndex index(n, partition.cells(), opts.enumeration_cap);

    DeterministicConstructionReport report;
    report.rho = rho;
    report.mask.resize(index.size());
    CounterRng rng(seed.bits());
    for (auto& q : report.mask) q = rng.next_unit() < rho ? 1 : 0;

    // p_i: stable probability of the base learner, split by count vector
    report.stable_by_count.assign(index.size(), 0.0);
    std::vector<long double> acc(index.size(), 0.0L);
    const std::vector<double> px = dist.marginal_x();
    const auto buckets = seed_buckets(base);
    detail::for_each_dataset(dist, n, [&](const Dataset& data, double p_data) {
        const std::uint64_t r = index.rank(count_vector(data, partition));
        const Dataset data_n1 = data.without_last();
        for (const auto& [rep, weight] : buckets) {
            const FittedModel fit_n = base.fit(data, rep);
            const FittedModel fit_n1 = base.fit(data_n1, rep);
            for (int x = 0; x < dist.x_size(); ++x) {
                if (px[static_cast<std::size_t>(x)] == 0.0) continue;
                if (std::abs(fit_n.predict(x) - fit_n1.predict(x)) <= epsilon) {
                    acc[r] += static_cast<long double>(p_data) * weight *
                              px[static_cast<std::size_t>(x)];
                }
            }
        }
    });
    long double untriggered = 0.0L;
    for (std::uint64_t i = 0; i < index.size(); ++i) {
        report.stable_by_count[i] = static_cast<double>(acc[i]);
        if (report.mask[i] == 0) untriggered += acc[i];
    }
    report.untriggered_stable_sum = static_cast<double>(untriggered);

    const Learner wrapped =
        wrap(base, AdversarialWrap{CountTrigger{partition, report.mask}, n, epsilon});
    const StabilityEstimate exact = estimate_delta_star_exact(wrapped, dist, n, epsilon, opts);
    report.exact_instability = exact.point_estimate;
    report.exact_stable = 1.0 - exact.point_estimate;
    report.identity_gap = std::abs(report.untriggered_stable_sum - report.exact_stable);
    return report;
}

}  // namespace stabletest
