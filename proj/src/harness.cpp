#include "stabletest/harness.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace stabletest {

namespace {

std::string hex_id(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

bool rounds_equal_observable(const RoundRecord& a, const RoundRecord& b) {
    return a.train == b.train && a.seed == b.seed && a.eval_points == b.eval_points &&
           a.evaluations == b.evaluations;
}

}  // namespace

bool traces_equal(const TestTrace& a, const TestTrace& b) {
    if (a.verdict != b.verdict || a.mode != b.mode || a.b_train != b.b_train ||
        a.b_eval != b.b_eval || a.used_train != b.used_train || a.used_eval != b.used_eval ||
        a.master_seed != b.master_seed ||
        a.labeled_id != b.labeled_id || a.unlabeled_id != b.unlabeled_id ||
        a.rounds.size() != b.rounds.size()) {
        return false;
    }
    for (std::size_t r = 0; r < a.rounds.size(); ++r) {
        if (!rounds_equal_observable(a.rounds[r], b.rounds[r])) return false;
    }
    return true;
}

TestTrace run_test(const TestStrategy& strategy, const Learner& learner, const Dataset& labeled,
                   const std::vector<int>& unlabeled, BudgetLedger ledger,
                   const RandomSeed& master, const RunOptions& options) {
    std::vector<RoundRecord> rounds;
    const RunView view(labeled, unlabeled, rounds, options.mode);

    for (std::uint64_t r = 1;; ++r) {
        if (r > options.max_rounds) {
            throw std::runtime_error("run_test: strategy exceeded the round limit");
        }
        const RandomSeed zeta = master.derive(r);
        RoundRequest req = strategy.next_round(view, zeta);
        if (req.stop) break;
        if (options.mode == AccessMode::transparent && !req.eval_points.empty()) {
            throw InterfaceViolation("evaluation requests are only valid in black-box-models mode");
        }
        // Budget refusal per the test definition: the offending fit is not
        // performed and the loop exits.
        if (!ledger.can_charge_train(req.train.size())) break;
        if (options.mode == AccessMode::black_box_models &&
            !ledger.can_charge_eval(req.eval_points.size())) {
            break;
        }

        RoundRecord rec;
        rec.train = std::move(req.train);
        rec.seed = req.seed;
        rec.eval_points = std::move(req.eval_points);
        rec.model = learner.fit(rec.train, rec.seed);
        ledger.charge_train(rec.train.size());
        if (options.mode == AccessMode::black_box_models) {
            ledger.charge_eval(rec.eval_points.size());
            rec.evaluations.reserve(rec.eval_points.size());
            for (int x : rec.eval_points) rec.evaluations.push_back(rec.model->predict(x));
        }
        rounds.push_back(std::move(rec));
    }

    TestTrace trace;
    trace.verdict = strategy.verdict(view, master.derive(0));
    trace.rounds = std::move(rounds);
    trace.mode = options.mode;
    trace.b_train = ledger.b_train();
    trace.b_eval = ledger.b_eval();
    trace.used_train = ledger.used_train();
    trace.used_eval = ledger.used_eval();
    trace.master_seed = master.bits();
    trace.labeled_id = hex_id(dataset_fingerprint(labeled));
    trace.unlabeled_id = hex_id(feature_sequence_fingerprint(unlabeled));
    return trace;
}

std::pair<TestTrace, TestTrace> coupled_run(const TestStrategy& strategy, const Learner& learner_a,
                                            const Learner& learner_b, const Dataset& labeled,
                                            const std::vector<int>& unlabeled, BudgetLedger ledger,
                                            const RandomSeed& master, const RunOptions& options) {
    TestTrace a = run_test(strategy, learner_a, labeled, unlabeled, ledger, master, options);
    TestTrace b = run_test(strategy, learner_b, labeled, unlabeled, ledger, master, options);
    return {std::move(a), std::move(b)};
}

bool event_response_absent(const TestTrace& trace, int y) {
    for (const RoundRecord& rec : trace.rounds) {
        if (rec.train.contains_response(y)) return false;
    }
    return true;
}

bool event_feature_absent(const TestTrace& trace, int x) {
    for (const RoundRecord& rec : trace.rounds) {
        if (rec.train.contains_feature(x)) return false;
    }
    return true;
}

bool event_feature_absent_eval(const TestTrace& trace, int x) {
    if (!event_feature_absent(trace, x)) return false;
    for (const RoundRecord& rec : trace.rounds) {
        for (int e : rec.eval_points) {
            if (e == x) return false;
        }
    }
    return true;
}

bool event_seed_outside(const TestTrace& trace, const SeedRegion& region, int n) {
    for (const RoundRecord& rec : trace.rounds) {
        if (rec.train.size() == static_cast<std::size_t>(n) &&
            region.contains(rec.seed.value())) {
            return false;
        }
    }
    return true;
}

EventFlags detect_events(const TestTrace& trace, const EventQuery& query) {
    EventFlags flags;
    if (query.response) flags.e_response = event_response_absent(trace, *query.response);
    if (query.feature) {
        flags.e_feature = event_feature_absent(trace, *query.feature);
        flags.e_feature_eval = event_feature_absent_eval(trace, *query.feature);
    }
    if (query.seed_region) flags.e_seed = event_seed_outside(trace, *query.seed_region, query.n);
    return flags;
}

void write_trace_jsonl(const TestTrace& trace, std::ostream& out) {
    using nlohmann::json;
    json header = {
        {"type", "header"},
        {"mode", trace.mode == AccessMode::transparent ? "transparent" : "black-box-models"},
        {"b_train", trace.b_train},
        {"b_eval", trace.b_eval},
        {"master_seed", trace.master_seed},
        {"labeled_id", trace.labeled_id},
        {"unlabeled_id", trace.unlabeled_id},
    };
    out << header.dump() << '\n';
    for (const RoundRecord& rec : trace.rounds) {
        json points = json::array();
        for (const DataPoint& p : rec.train) points.push_back({p.x, p.y});
        json line = {
            {"type", "round"},
            {"train", points},
            {"seed_bits", rec.seed.bits()},
            {"eval", rec.eval_points},
            {"evals", rec.evaluations},
        };
        out << line.dump() << '\n';
    }
    json footer = {
        {"type", "verdict"},
        {"verdict", trace.verdict},
        {"used_train", trace.used_train},
        {"used_eval", trace.used_eval},
    };
    out << footer.dump() << '\n';
}

TestTrace read_trace_jsonl(std::istream& in) {
    using nlohmann::json;
    TestTrace trace;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        const std::string type = j.at("type").get<std::string>();
        if (type == "header") {
            trace.mode = j.at("mode").get<std::string>() == "transparent"
                             ? AccessMode::transparent
                             : AccessMode::black_box_models;
            trace.b_train = j.at("b_train").get<std::uint64_t>();
            trace.b_eval = j.at("b_eval").get<std::uint64_t>();
            trace.master_seed = j.at("master_seed").get<std::uint64_t>();
            trace.labeled_id = j.at("labeled_id").get<std::string>();
            trace.unlabeled_id = j.at("unlabeled_id").get<std::string>();
        } else if (type == "round") {
            RoundRecord rec;
            for (const auto& p : j.at("train")) {
                rec.train.push_back(DataPoint{p.at(0).get<int>(), p.at(1).get<int>()});
            }
            rec.seed = RandomSeed(j.at("seed_bits").get<std::uint64_t>());
            rec.eval_points = j.at("eval").get<std::vector<int>>();
            rec.evaluations = j.at("evals").get<std::vector<double>>();
            trace.rounds.push_back(std::move(rec));
        } else if (type == "verdict") {
            trace.verdict = j.at("verdict").get<int>();
            trace.used_train = j.at("used_train").get<std::uint64_t>();
            trace.used_eval = j.at("used_eval").get<std::uint64_t>();
        } else {
            throw std::runtime_error("read_trace_jsonl: unknown line type '" + type + "'");
        }
    }
    return trace;
}

}  // namespace stabletest
