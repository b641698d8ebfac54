#include "stabletest/experiments.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stabletest/adversarial.hpp"
#include "stabletest/binom_test.hpp"
#include "stabletest/bounds.hpp"
#include "stabletest/parallel.hpp"
#include "stabletest/zoo.hpp"

namespace stabletest {

namespace {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class TableWriter {
public:
    TableWriter(std::ostream& out, const std::string& format) : out_(out), plot_(format == "plot") {}

    void comment(const std::string& s) { out_ << "# " << s << '\n'; }
    void columns(const std::vector<std::string>& names) {
        if (plot_) out_ << "# ";
        join(names);
    }
    void row(const std::vector<std::string>& values) { join(values); }

private:
    void join(const std::vector<std::string>& parts) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i > 0) out_ << (plot_ ? ' ' : ',');
            out_ << parts[i];
        }
        out_ << '\n';
    }

    std::ostream& out_;
    bool plot_;
};

// Directs the table to out_path when set, else to the fallback stream.
class TableSink {
public:
    TableSink(const ExperimentConfig& config, std::ostream& fallback) {
        if (!config.out_path.empty()) {
            file_.open(config.out_path);
            if (!file_) throw ConfigError("cannot open output path: " + config.out_path);
        }
        stream_ = file_.is_open() ? static_cast<std::ostream*>(&file_) : &fallback;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

void write_standard_header(TableWriter& w, const ExperimentConfig& config) {
    w.comment("config_hash=" + config_hash(config.doc, config.seed, config.trials) +
              " seed=" + std::to_string(config.seed));
}

SpaceSize parse_space_size(const json& v, const char* what) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "infinite" || s == "inf") return SpaceSize::infinite();
        throw ConfigError(std::string(what) + ": expected a count or \"infinite\"");
    }
    return SpaceSize::finite(v.get<std::uint64_t>());
}

double parse_budget(const json& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "infinite" || s == "inf") return std::numeric_limits<double>::infinity();
        throw ConfigError("budget: expected a count or \"infinite\"");
    }
    return v.get<double>();
}

const json& require_field(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw ConfigError(std::string("config: missing required field '") + key + "'");
    }
    return *it;
}

// ---- estimate-stability ------------------------------------------------

int run_estimate_stability(const ExperimentConfig& config, std::ostream& log) {
    const CoreConfig core = parse_core_config(config.doc);
    const FiniteDistribution dist = make_distribution(core);
    const Learner learner = make_learner(core.learner, core.space);
    const double epsilon = require_field(config.doc, "epsilon").get<double>();
    const int n = require_field(config.doc, "n").get<int>();
    const std::string method = config.doc.value("method", "both");

    TableSink sink(config, log);
    TableWriter w(sink.stream(), config.format);
    write_standard_header(w, config);
    w.columns({"method", "epsilon", "n", "trials", "estimate", "std_error"});

    auto emit = [&](const char* name, const StabilityEstimate& est) {
        w.row({name, fmt_double(est.epsilon), std::to_string(n), std::to_string(est.trials),
               fmt_double(est.point_estimate), fmt_double(est.std_error)});
    };
    if (method == "mc" || method == "both") {
        emit("monte-carlo", estimate_delta_star_mc(learner, dist, n, epsilon, config.trials,
                                                   RandomSeed(config.seed), config.workers));
    }
    if (method == "exact" || method == "both") {
        ExactOptions opts;
        opts.enumeration_cap = config.doc.value("enumeration_cap", opts.enumeration_cap);
        const StabilityEstimate est = estimate_delta_star_exact(learner, dist, n, epsilon, opts);
        emit(est.method == EstimateMethod::exact ? "exact" : "monte-carlo", est);
    }
    if (method != "mc" && method != "exact" && method != "both") {
        throw ConfigError("estimate-stability: method must be mc|exact|both");
    }
    return 0;
}

// ---- run-binom-test ----------------------------------------------------

BinomialTestConfig parse_binom_config(const json& doc) {
    const json& t = require_field(doc, "test");
    BinomialTestConfig cfg;
    cfg.epsilon = require_field(t, "epsilon").get<double>();
    cfg.delta = require_field(t, "delta").get<double>();
    cfg.alpha = require_field(t, "alpha").get<double>();
    cfg.n = require_field(t, "n").get<int>();
    cfg.b_train = require_field(t, "b_train").get<std::uint64_t>();
    cfg.n_labeled = require_field(t, "n_labeled").get<std::uint64_t>();
    cfg.n_unlabeled = require_field(t, "n_unlabeled").get<std::uint64_t>();
    cfg.b_eval = t.value("b_eval", std::uint64_t{0});
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("run-binom-test: ") + e.what());
    }
    return cfg;
}

AccessMode parse_mode(const json& doc) {
    const std::string mode = doc.value("mode", "transparent");
    if (mode == "transparent") return AccessMode::transparent;
    if (mode == "black-box-models") return AccessMode::black_box_models;
    throw ConfigError("mode must be transparent|black-box-models");
}

int run_binom_test(const ExperimentConfig& config, std::ostream& log) {
    const CoreConfig core = parse_core_config(config.doc);
    const FiniteDistribution dist = make_distribution(core);
    const Learner learner = make_learner(core.learner, core.space);
    const BinomialTestConfig cfg = parse_binom_config(config.doc);
    const AccessMode mode = parse_mode(require_field(config.doc, "test"));

    CounterRng rng{config.seed};
    const Dataset labeled = sample_dataset(dist, static_cast<int>(cfg.n_labeled), rng.next_seed());
    const std::vector<int> unlabeled =
        sample_features(dist, static_cast<int>(cfg.n_unlabeled), rng.next_seed());

    const BinomialStrategy strategy(cfg);
    RunOptions options;
    options.mode = mode;
    const TestTrace trace = run_test(strategy, learner, labeled, unlabeled,
                                     BudgetLedger(cfg.b_train, cfg.b_eval), rng.next_seed(),
                                     options);

    const std::string trace_path =
        !config.out_path.empty() ? config.out_path : config.doc.value("trace_path", "trace.jsonl");
    std::ofstream trace_file(trace_path);
    if (!trace_file) throw ConfigError("cannot open trace path: " + trace_path);
    write_trace_jsonl(trace, trace_file);

    log << "verdict=" << trace.verdict << " used_train=" << trace.used_train
        << " used_eval=" << trace.used_eval << " trace=" << trace_path << '\n';
    return 0;
}

// ---- power-experiment --------------------------------------------------

int run_power_experiment(const ExperimentConfig& config, std::ostream& log) {
    if (config.trials < 1) throw ConfigError("power-experiment: trials must be >= 1");
    const json& doc = config.doc;
    const double alpha = doc.value("alpha", 0.05);
    const double epsilon = doc.value("epsilon", 0.5);
    const int n = doc.value("n", 5);
    const std::vector<double> delta_grid =
        require_field(doc, "delta_grid").get<std::vector<double>>();
    const json& ds_grid = require_field(doc, "delta_star_grid");
    const std::vector<std::uint64_t> kappa_grid =
        require_field(doc, "kappa_grid").get<std::vector<std::uint64_t>>();

    // The learner is the seed-thresholded zoo member with rho0 = delta*, so
    // the true instability probability is known analytically.
    const FiniteDistribution dist = FiniteDistribution::uniform(2, 2);

    TableSink sink(config, log);
    TableWriter w(sink.stream(), config.format);
    write_standard_header(w, config);
    w.columns({"delta_star", "delta", "kappa_floor", "alpha", "mc_power", "closed_form",
               "std_error", "trials"});

    const CounterRng root{config.seed};
    std::uint64_t grid_index = 0;
    for (double delta : delta_grid) {
        for (const json& ds_entry : ds_grid) {
            double delta_star = 0.0;
            if (ds_entry.is_string()) {
                if (ds_entry.get<std::string>() != "delta") {
                    throw ConfigError("delta_star_grid entries must be numbers or \"delta\"");
                }
                delta_star = delta;
            } else {
                delta_star = ds_entry.get<double>();
            }
            if (delta_star > delta) {
                throw ConfigError("power-experiment: delta_star must be <= delta");
            }
            for (std::uint64_t kappa : kappa_grid) {
                if (kappa < 1) throw ConfigError("power-experiment: kappa must be >= 1");
                BinomialTestConfig cfg;
                cfg.epsilon = epsilon;
                cfg.delta = delta;
                cfg.alpha = alpha;
                cfg.n = n;
                cfg.n_labeled = kappa * static_cast<std::uint64_t>(n);
                cfg.n_unlabeled = kappa;
                cfg.b_train = kappa * (2 * static_cast<std::uint64_t>(n) - 1);
                const Learner learner = make_seed_threshold(dist.x_size(), delta_star);
                const McRejectionRate mc = binomial_mc_rejection_rate(
                    cfg, learner, dist, config.trials,
                    root.split(grid_index).next_u64(), config.workers);
                const PowerValue cf = power_closed_form(alpha, delta_star, delta, kappa);
                w.row({fmt_double(delta_star), fmt_double(delta), std::to_string(kappa),
                       fmt_double(alpha), fmt_double(mc.rate), fmt_double(cf.value),
                       fmt_double(mc.std_error), std::to_string(mc.trials)});
                ++grid_index;
            }
        }
    }
    return 0;
}

// ---- adversarial-demo --------------------------------------------------

struct CouplingOutcome {
    std::uint64_t runs = 0;
    std::uint64_t event_holds = 0;
    std::uint64_t agreements = 0;  // among event-holding runs
};

CouplingOutcome run_coupling(const BinomialStrategy& strategy, const Learner& base,
                             const Learner& wrapped, const FiniteDistribution& dist,
                             const EventQuery& query, AccessMode mode, std::uint64_t runs,
                             std::uint64_t key) {
    CouplingOutcome outcome;
    outcome.runs = runs;
    const BinomialTestConfig& cfg = strategy.config();
    const CounterRng root{key};
    for (std::uint64_t t = 0; t < runs; ++t) {
        CounterRng rng = root.split(t);
        const Dataset labeled =
            sample_dataset(dist, static_cast<int>(cfg.n_labeled), rng.next_seed());
        const std::vector<int> unlabeled =
            sample_features(dist, static_cast<int>(cfg.n_unlabeled), rng.next_seed());
        RunOptions options;
        options.mode = mode;
        const auto [trace_a, trace_b] =
            coupled_run(strategy, base, wrapped, labeled, unlabeled,
                        BudgetLedger(cfg.b_train, cfg.b_eval), rng.next_seed(), options);
        const EventFlags flags = detect_events(trace_a, query);
        const bool holds = (query.response && *flags.e_response) ||
                           (query.feature && !query.seed_region &&
                            (mode == AccessMode::black_box_models ? *flags.e_feature_eval
                                                                  : *flags.e_feature)) ||
                           (query.seed_region && *flags.e_seed);
        if (!holds) continue;
        ++outcome.event_holds;
        if (trace_a.verdict == trace_b.verdict) ++outcome.agreements;
    }
    return outcome;
}

int run_adversarial_demo(const ExperimentConfig& config, std::ostream& log) {
    const CoreConfig core = parse_core_config(config.doc);
    const FiniteDistribution dist = make_distribution(core);
    const Learner base = make_learner(core.learner, core.space);
    const json& doc = config.doc;
    const double epsilon = doc.value("epsilon", 0.5);
    const double delta = doc.value("delta", 0.2);
    const double alpha = doc.value("alpha", 0.05);
    const int n = doc.value("n", 3);
    const double c_margin = doc.value("c_margin", 0.01);
    const std::uint64_t coupling_runs = doc.value("coupling_runs", std::uint64_t{10'000});
    const std::uint64_t kappa = doc.value("coupling_kappa", std::uint64_t{2});
    const int trigger_y = doc.value("trigger_y", core.space.y_size - 1);
    const int trigger_x = doc.value("trigger_x", core.space.x_size - 1);

    ExactOptions exact_opts;
    exact_opts.enumeration_cap = doc.value("enumeration_cap", exact_opts.enumeration_cap);
    const double delta_star =
        estimate_delta_star_exact(base, dist, n, epsilon, exact_opts).point_estimate;
    if (delta_star > delta) {
        throw ConfigError("adversarial-demo: base learner already unstable at this delta");
    }

    BinomialTestConfig cfg;
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.alpha = alpha;
    cfg.n = n;
    cfg.n_labeled = kappa * static_cast<std::uint64_t>(n);
    cfg.n_unlabeled = kappa;
    cfg.b_train = kappa * (2 * static_cast<std::uint64_t>(n) - 1);
    cfg.b_eval = 2 * kappa;
    const BinomialStrategy strategy(cfg);

    TableSink sink(config, log);
    TableWriter w(sink.stream(), config.format);
    write_standard_header(w, config);
    w.columns({"kind", "c", "n", "lower_bound", "exact_instability",
               "coupled_verdict_agreement_rate"});

    const struct {
        CorruptionKind kind;
        const char* name;
    } kinds[] = {
        {CorruptionKind::response_at_y, "response-at-y"},
        {CorruptionKind::feature_at_x, "feature-at-x"},
        {CorruptionKind::feature_at_x_eval, "feature-at-x-eval"},
    };

    const CounterRng root{config.seed};
    std::uint64_t row_index = 0;
    for (const auto& [kind, name] : kinds) {
        const double c = critical_c(kind, n, delta, delta_star) + c_margin;
        const int atom = kind == CorruptionKind::response_at_y ? trigger_y : trigger_x;
        const FiniteDistribution corrupted = corrupted_mixture(dist, kind, atom, c);
        TriggerKind trigger =
            kind == CorruptionKind::response_at_y
                ? TriggerKind{ResponseTrigger{atom}}
                : (kind == CorruptionKind::feature_at_x ? TriggerKind{FeatureTrigger{atom}}
                                                        : TriggerKind{FeatureEvalTrigger{atom}});
        const Learner wrapped = wrap(base, AdversarialWrap{trigger, n, epsilon});
        const double lower = instability_lower_bound(kind, c, n, delta_star);
        const double exact_instability =
            estimate_delta_star_exact(wrapped, corrupted, n, epsilon, exact_opts).point_estimate;

        EventQuery query;
        if (kind == CorruptionKind::response_at_y) {
            query.response = atom;
        } else {
            query.feature = atom;
        }
        const AccessMode mode = kind == CorruptionKind::feature_at_x_eval
                                    ? AccessMode::black_box_models
                                    : AccessMode::transparent;
        const CouplingOutcome outcome =
            run_coupling(strategy, base, wrapped, dist, query, mode, coupling_runs,
                         root.split(row_index).next_u64());
        const double agreement =
            outcome.event_holds == 0
                ? 1.0
                : static_cast<double>(outcome.agreements) /
                      static_cast<double>(outcome.event_holds);
        w.row({name, fmt_double(c), std::to_string(n), fmt_double(lower),
               fmt_double(exact_instability), fmt_double(agreement)});
        ++row_index;
    }
    return 0;
}

// ---- bounds --------------------------------------------------------------

int run_bounds(const ExperimentConfig& config, std::ostream& log) {
    const json& doc = config.doc;
    PowerBoundInputs in;
    in.alpha = doc.value("alpha", 0.05);
    in.epsilon = doc.value("epsilon", 0.0);
    in.delta = require_field(doc, "delta").get<double>();
    in.delta_star = require_field(doc, "delta_star").get<double>();
    in.n = require_field(doc, "n").get<int>();
    in.n_labeled = doc.value("n_labeled", 0.0);
    in.n_unlabeled = doc.value("n_unlabeled", 0.0);
    in.b_train = doc.contains("b_train") ? parse_budget(doc.at("b_train")) : 0.0;
    in.b_eval = doc.contains("b_eval") ? parse_budget(doc.at("b_eval")) : 0.0;
    in.x_size = doc.contains("x_size") ? parse_space_size(doc.at("x_size"), "x_size")
                                       : SpaceSize::infinite();
    in.y_size = doc.contains("y_size") ? parse_space_size(doc.at("y_size"), "y_size")
                                       : SpaceSize::infinite();
    if (doc.contains("space") && doc.contains("probs")) {
        in.max_point_mass = make_distribution(parse_core_config(doc)).max_point_mass();
    } else if (doc.contains("max_point_mass")) {
        in.max_point_mass = doc.at("max_point_mass").get<double>();
    }
    const double c_constant = doc.value("theorem2_constant", 1.0);

    const Theorem1Bound t1 = theorem1_bound(in);
    const Theorem2Bound t2 = theorem2_bound(in, c_constant);
    const Theorem3Bound t3 = theorem3_bound(in);

    TableSink sink(config, log);
    TableWriter w(sink.stream(), config.format);
    write_standard_header(w, config);
    if (!doc.contains("theorem2_constant")) {
        w.comment(
            "theorem2 constant C defaulted to 1.0; the deterministic-case bound leaves it as an "
            "unspecified universal constant");
    }
    if (!t2.applicable) w.comment("theorem2 inapplicable: " + t2.reason);
    w.columns({"alpha", "delta", "delta_star", "delta_tilde", "n", "n_labeled", "n_unlabeled",
               "b_train", "b_eval", "train_term", "y_term", "x_term", "x_term_degenerate",
               "theorem1_min", "theorem2_value", "theorem2_applicable", "eval_term",
               "theorem3_min"});
    w.row({fmt_double(in.alpha), fmt_double(in.delta), fmt_double(in.delta_star),
           fmt_double(in.delta_tilde()), std::to_string(in.n), fmt_double(in.n_labeled),
           fmt_double(in.n_unlabeled), fmt_double(in.b_train), fmt_double(in.b_eval),
           fmt_double(t1.train_term), fmt_double(t1.y_term), fmt_double(t1.x_term),
           t1.x_term_degenerate ? "1" : "0", fmt_double(t1.minimum), fmt_double(t2.value),
           t2.applicable ? "1" : "0", fmt_double(t3.eval_term), fmt_double(t3.minimum)});
    return 0;
}

// ---- lemma-check -----------------------------------------------------------

int run_lemma_check(const ExperimentConfig& config, std::ostream& log) {
    const json& doc = config.doc;
    const auto partition_trials = doc.value("partition_trials", std::uint64_t{10'000});
    const auto multinomial_q_trials = doc.value("multinomial_q_trials", std::uint64_t{1'000});
    const int multinomial_n_max = doc.value("multinomial_n_max", 20);
    const int multinomial_m_max = doc.value("multinomial_m_max", 4);
    const int partition_m_max = doc.value("partition_m_max", 6);

    TableSink sink(config, log);
    TableWriter w(sink.stream(), config.format);
    write_standard_header(w, config);
    w.columns({"suite", "m", "gamma_or_n", "trials", "violations", "worst_margin"});

    const CounterRng root{config.seed};
    std::uint64_t cell = 0;
    for (int m = 2; m <= partition_m_max; ++m) {
        for (double frac : {0.3, 0.6, 0.95}) {
            const double gamma = frac / (m - 1.0);
            const PartitionSuiteResult r =
                run_partition_suite(m, gamma, partition_trials, root.split(cell++).next_u64());
            w.row({"partition", std::to_string(m), fmt_double(gamma), std::to_string(r.trials),
                   std::to_string(r.violations), fmt_double(r.worst_margin)});
        }
    }
    for (int m = 2; m <= multinomial_m_max; ++m) {
        for (int n = 1; n <= multinomial_n_max; ++n) {
            const MultinomialSuiteResult r =
                run_multinomial_suite(n, m, multinomial_q_trials, root.split(cell++).next_u64());
            w.row({"multinomial", std::to_string(m), std::to_string(n), std::to_string(r.trials),
                   std::to_string(r.violations), fmt_double(r.worst_ratio)});
        }
    }
    // the deterministic-case instantiation: M = 6 over small uniform spaces
    for (const auto& [xs, ys] : {std::pair<int, int>{2, 3}, std::pair<int, int>{3, 3}}) {
        const DataCountsReport report =
            data_counts_bound_check(FiniteDistribution::uniform(xs, ys), doc.value("n", 8), 6);
        w.row({"data-counts", "6", std::to_string(xs * ys), "1",
               report.holds ? "0" : "1", fmt_double(report.bound - report.exact_max_pmf)});
    }
    return 0;
}

}  // namespace

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string config_hash(const json& doc, std::uint64_t seed, std::uint64_t trials) {
    json effective = doc;
    effective["seed"] = seed;
    effective["trials"] = trials;
    std::ostringstream os;
    os << std::hex << fnv1a64(effective.dump());
    return os.str();
}

std::vector<double> random_masses_with_cap(CounterRng& rng, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("random_masses_with_cap: gamma must lie in (0,1]");
    }
    const auto min_atoms = static_cast<std::size_t>(std::ceil(1.0 / gamma));
    const std::size_t atoms = min_atoms + rng.next_below(min_atoms + 8);
    std::vector<double> masses(atoms);
    double total = 0.0;
    for (double& m : masses) {
        m = -std::log(1.0 - rng.next_unit());  // Exp(1) -> Dirichlet(1,...,1)
        total += m;
    }
    for (double& m : masses) m /= total;
    std::sort(masses.begin(), masses.end(), std::greater<>());

    // waterfill against the cap: the k heaviest atoms sit at gamma, the rest
    // scale proportionally; min(c*m_i, gamma) sums to 1 for some c >= 1
    for (std::size_t k = 0; k < atoms; ++k) {
        double tail = 0.0;
        for (std::size_t i = k; i < atoms; ++i) tail += masses[i];
        const double rem = 1.0 - static_cast<double>(k) * gamma;
        if (rem <= 0.0 || tail <= 0.0) break;
        const double c = rem / tail;
        if (c * masses[k] <= gamma * (1.0 + 1e-15)) {
            for (std::size_t i = 0; i < k; ++i) masses[i] = gamma;
            for (std::size_t i = k; i < atoms; ++i) masses[i] = std::min(c * masses[i], gamma);
            return masses;
        }
    }
    // every atom capped: the uniform distribution respects gamma since
    // atoms * gamma >= 1
    return std::vector<double>(atoms, 1.0 / static_cast<double>(atoms));
}

PartitionSuiteResult run_partition_suite(int m, double gamma, std::uint64_t trials,
                                         std::uint64_t key) {
    PartitionSuiteResult result;
    result.m = m;
    result.gamma = gamma;
    result.trials = trials;
    result.worst_margin = std::numeric_limits<double>::infinity();
    CounterRng rng{key};
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::vector<double> masses = random_masses_with_cap(rng, gamma);
        const PartitionResult pr = construct_partition(masses, m, gamma);
        const double margin = pr.min_mass - pr.guarantee;
        result.worst_margin = std::min(result.worst_margin, margin);
        if (margin < -1e-12) ++result.violations;
    }
    return result;
}

MultinomialSuiteResult run_multinomial_suite(int n, int m, std::uint64_t q_trials,
                                             std::uint64_t key) {
    MultinomialSuiteResult result;
    result.n = n;
    result.m = m;
    result.trials = q_trials;
    CounterRng rng{key};
    for (std::uint64_t t = 0; t < q_trials; ++t) {
        std::vector<double> q(static_cast<std::size_t>(m));
        double total = 0.0;
        for (double& v : q) {
            v = 1e-3 + rng.next_unit();  // keep q_m strictly positive
            total += v;
        }
        for (double& v : q) v /= total;
        const MultinomialMaxBound mb = multinomial_pmf_max_bound(n, q);
        const double ratio = mb.exact_max_pmf / mb.bound;
        result.worst_ratio = std::max(result.worst_ratio, ratio);
        if (ratio > 1.0 + 1e-12) ++result.violations;
    }
    return result;
}

ExperimentConfig load_experiment_config(const json& doc) {
    ExperimentConfig config;
    config.doc = doc;
    config.kind = doc.value("experiment", "");
    config.seed = doc.value("seed", std::uint64_t{1});
    config.trials = doc.value("trials", std::uint64_t{10'000});
    config.workers = doc.value("workers", 1);
    config.out_path = doc.value("out", "");
    config.format = doc.value("format", "csv");
    return config;
}

int run_experiment(const ExperimentConfig& config, std::ostream& out) {
    if (config.format != "csv" && config.format != "plot") {
        throw ConfigError("format must be csv|plot");
    }
    if (config.workers < 1) throw ConfigError("workers must be >= 1");
    if (config.kind == "estimate-stability") return run_estimate_stability(config, out);
    if (config.kind == "run-binom-test") return run_binom_test(config, out);
    if (config.kind == "power-experiment") return run_power_experiment(config, out);
    if (config.kind == "adversarial-demo") return run_adversarial_demo(config, out);
    if (config.kind == "bounds") return run_bounds(config, out);
    if (config.kind == "lemma-check") return run_lemma_check(config, out);
    throw ConfigError("unknown experiment kind '" + config.kind + "'");
}

}  // namespace stabletest
