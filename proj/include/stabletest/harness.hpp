// Budgeted black-box test executor: runs a pluggable strategy against a
// learner, enforces the training/evaluation budgets, and records the full
// trace needed for post-hoc event analysis and coupling checks.
#ifndef STABLETEST_HARNESS_HPP
#define STABLETEST_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabletest/learner.hpp"
#include "stabletest/seed_region.hpp"

namespace stabletest {

struct InterfaceViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Running budget counts. A request that would overflow must be refused
// before the learner is called; charge_* throws if that contract is broken.
class BudgetLedger {
public:
    BudgetLedger(std::uint64_t b_train, std::uint64_t b_eval)
        : b_train_(b_train), b_eval_(b_eval) {}

    std::uint64_t b_train() const { return b_train_; }
    std::uint64_t b_eval() const { return b_eval_; }
    std::uint64_t used_train() const { return used_train_; }
    std::uint64_t used_eval() const { return used_eval_; }

    bool can_charge_train(std::uint64_t m) const { return used_train_ + m <= b_train_; }
    bool can_charge_eval(std::uint64_t m) const { return used_eval_ + m <= b_eval_; }

    void charge_train(std::uint64_t m) {
        if (!can_charge_train(m)) throw std::logic_error("BudgetLedger: training overcharge");
        used_train_ += m;
    }
    void charge_eval(std::uint64_t m) {
        if (!can_charge_eval(m)) throw std::logic_error("BudgetLedger: evaluation overcharge");
        used_eval_ += m;
    }

private:
    std::uint64_t b_train_;
    std::uint64_t b_eval_;
    std::uint64_t used_train_ = 0;
    std::uint64_t used_eval_ = 0;
};

// Transparent: the strategy may read fitted models as full prediction
// tables. Black-box models: fitted models are visible only through the
// point evaluations requested each round.
enum class AccessMode { transparent, black_box_models };

struct RoundRequest {
    bool stop = false;
    Dataset train;
    RandomSeed seed{0};
    std::vector<int> eval_points;  // black-box-models mode only

    static RoundRequest stopping() {
        RoundRequest r;
        r.stop = true;
        return r;
    }
};

struct RoundRecord {
    Dataset train;
    RandomSeed seed{0};
    std::vector<int> eval_points;
    std::vector<double> evaluations;
    // Harness-side only; never serialized, and hidden from strategies in
    // black-box-models mode.
    std::optional<FittedModel> model;
};

// The history a strategy may read: the input data, everything recorded so
// far, and — in transparent mode only — the fitted models themselves.
class RunView {
public:
    RunView(const Dataset& labeled, const std::vector<int>& unlabeled,
            const std::vector<RoundRecord>& rounds, AccessMode mode)
        : labeled_(labeled), unlabeled_(unlabeled), rounds_(rounds), mode_(mode) {}

    const Dataset& labeled() const { return labeled_; }
    const std::vector<int>& unlabeled() const { return unlabeled_; }
    AccessMode mode() const { return mode_; }
    std::size_t rounds() const { return rounds_.size(); }

    const Dataset& train_set(std::size_t r) const { return rounds_.at(r).train; }
    const RandomSeed& round_seed(std::size_t r) const { return rounds_.at(r).seed; }
    const std::vector<int>& eval_points(std::size_t r) const { return rounds_.at(r).eval_points; }
    const std::vector<double>& evaluations(std::size_t r) const {
        return rounds_.at(r).evaluations;
    }

    const FittedModel& model(std::size_t r) const {
        if (mode_ == AccessMode::black_box_models) {
            throw InterfaceViolation("fitted models are not inspectable in black-box-models mode");
        }
        return *rounds_.at(r).model;
    }

private:
    const Dataset& labeled_;
    const std::vector<int>& unlabeled_;
    const std::vector<RoundRecord>& rounds_;
    AccessMode mode_;
};

// A test strategy is a pure function of the visible history plus the i.i.d.
// uniform seeds the harness hands it (zeta per round, zeta_final at the
// end), so a single instance can drive any number of runs.
class TestStrategy {
public:
    virtual ~TestStrategy() = default;
    virtual RoundRequest next_round(const RunView& view, const RandomSeed& zeta) const = 0;
    virtual int verdict(const RunView& view, const RandomSeed& zeta_final) const = 0;
};

struct TestTrace {
    std::vector<RoundRecord> rounds;
    int verdict = 0;
    AccessMode mode = AccessMode::transparent;
    std::uint64_t b_train = 0;
    std::uint64_t b_eval = 0;
    std::uint64_t used_train = 0;
    std::uint64_t used_eval = 0;
    std::uint64_t master_seed = 0;  // replaying with this seed reproduces the trace
    std::string labeled_id;
    std::string unlabeled_id;
};

// Observable (spec-level) equality: rounds, evaluations, budgets, verdict —
// everything except the harness-side model cache.
bool traces_equal(const TestTrace& a, const TestTrace& b);

struct RunOptions {
    AccessMode mode = AccessMode::transparent;
    std::uint64_t max_rounds = 1'000'000;  // guard against non-terminating strategies
};

// Executes rounds until the strategy stops or a budget would be exceeded
// (the offending fit is not performed and the loop exits; partial rounds are
// never charged). zeta^(r) = master.derive(r), zeta_final = master.derive(0).
TestTrace run_test(const TestStrategy& strategy, const Learner& learner, const Dataset& labeled,
                   const std::vector<int>& unlabeled, BudgetLedger ledger,
                   const RandomSeed& master, const RunOptions& options = {});

// Runs the same strategy against two learners with bit-identical inputs and
// seed streams.
std::pair<TestTrace, TestTrace> coupled_run(const TestStrategy& strategy, const Learner& learner_a,
                                            const Learner& learner_b, const Dataset& labeled,
                                            const std::vector<int>& unlabeled, BudgetLedger ledger,
                                            const RandomSeed& master, const RunOptions& options = {});

// Trigger events from the hardness proofs. A vacuous union (no rounds)
// makes every event hold.
bool event_response_absent(const TestTrace& trace, int y);  // E_y
bool event_feature_absent(const TestTrace& trace, int x);   // E_x
// x absent from all training sets and all evaluation sets (the black-box-
// models variant).
bool event_feature_absent_eval(const TestTrace& trace, int x);
// E_R: no round with |train| == n used a seed inside the region.
bool event_seed_outside(const TestTrace& trace, const SeedRegion& region, int n);

struct EventQuery {
    std::optional<int> response;             // E_y
    std::optional<int> feature;              // E_x and its eval variant
    std::optional<SeedRegion> seed_region;   // E_R
    int n = 0;                               // size filter for E_R
};

struct EventFlags {
    std::optional<bool> e_response;
    std::optional<bool> e_feature;
    std::optional<bool> e_feature_eval;
    std::optional<bool> e_seed;
};

EventFlags detect_events(const TestTrace& trace, const EventQuery& query);

// JSON-lines serialization: a header line, one line per round, and a
// verdict/ledger footer.
void write_trace_jsonl(const TestTrace& trace, std::ostream& out);
TestTrace read_trace_jsonl(std::istream& in);

}  // namespace stabletest

#endif  // STABLETEST_HARNESS_HPP
