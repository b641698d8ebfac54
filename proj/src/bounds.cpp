#include "stabletest/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "stabletest/compositions.hpp"

namespace stabletest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBerryEsseen = 1.12;  // the M=2 constant; C_M = 1.12^{M-1}

double term(double alpha, double ratio, double exponent, double budget_fraction) {
    const double denom = 1.0 - budget_fraction;
    if (denom <= 0.0) return kInf;  // vacuous: the budget covers the space
    return alpha * std::pow(ratio, exponent) / denom;
}

void check_masses(const std::vector<double>& masses) {
    if (masses.empty()) throw std::invalid_argument("partition: empty distribution");
    double sum = 0.0;
    for (double m : masses) {
        if (!(m >= 0.0)) throw std::invalid_argument("partition: negative mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("partition: masses must sum to 1");
    }
}

}  // namespace

void PowerBoundInputs::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("power bounds: alpha must lie in (0,1)");
    }
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw std::invalid_argument("power bounds: delta must lie in [0,1)");
    }
    if (!(delta_star >= 0.0 && delta_star <= delta)) {
        throw std::invalid_argument("power bounds: requires 0 <= delta_star <= delta");
    }
    if (n < 1) throw std::invalid_argument("power bounds: n must be >= 1");
    if (!(n_labeled >= 0.0 && n_unlabeled >= 0.0 && b_train >= 0.0 && b_eval >= 0.0)) {
        throw std::invalid_argument("power bounds: counts and budgets must be nonnegative");
    }
}

Theorem1Bound theorem1_bound(const PowerBoundInputs& in) {
    in.validate();
    const double nd = static_cast<double>(in.n);
    const double ratio = (1.0 - in.delta_star) / (1.0 - in.delta);

    Theorem1Bound out;
    out.train_term = in.alpha * std::pow(ratio, in.b_train / nd);
    out.y_term = term(in.alpha, ratio, in.n_labeled / nd, in.y_size.budget_fraction(in.b_train));

    const double dtilde = in.delta_tilde();
    if (dtilde >= 1.0) {
        out.x_term = kInf;
        out.x_term_degenerate = true;
    } else {
        const double ratio_tilde = (1.0 - in.delta_star) / (1.0 - dtilde);
        out.x_term = term(in.alpha, ratio_tilde, (in.n_labeled + in.n_unlabeled) / nd,
                          in.x_size.budget_fraction(in.b_train));
    }
    out.minimum = std::min({out.train_term, out.y_term, out.x_term});
    return out;
}

Theorem2Bound theorem2_bound(const PowerBoundInputs& in, double c_constant) {
    in.validate();
    if (!(c_constant >= 0.0)) {
        throw std::invalid_argument("theorem2_bound: the universal constant must be >= 0");
    }
    Theorem2Bound out;
    const double nd = static_cast<double>(in.n);
    if (in.delta + 1.0 / nd >= 1.0) {
        out.reason = "delta + 1/n >= 1";
        return out;
    }
    if (!in.max_point_mass.has_value()) {
        out.reason = "max point mass not supplied";
        return out;
    }
    if (!(*in.max_point_mass < 0.2)) {
        out.reason = "sup point mass >= 0.2";
        return out;
    }
    const double ratio = (1.0 - in.delta_star) / (1.0 - in.delta - 1.0 / nd);
    out.value = (in.alpha + c_constant / nd) * std::pow(ratio, in.b_train / nd);
    out.applicable = true;
    return out;
}

Theorem3Bound theorem3_bound(const PowerBoundInputs& in) {
    Theorem3Bound out;
    out.transparent = theorem1_bound(in);
    const double nd = static_cast<double>(in.n);
    const double ratio = (1.0 - in.delta_star) / (1.0 - in.delta);
    out.eval_term = term(in.alpha, ratio, (in.n_labeled + in.n_unlabeled) / (nd + 1.0),
                         in.x_size.budget_fraction(in.b_train + in.b_eval));
    out.minimum = std::min(out.transparent.minimum, out.eval_term);
    return out;
}

std::vector<int> partition_prefix(const std::vector<double>& masses, double gamma) {
    check_masses(masses);
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("partition_prefix: gamma must lie in (0,1]");
    }
    const double max_mass = *std::max_element(masses.begin(), masses.end());
    if (max_mass > gamma * (1.0 + 1e-12) + 1e-15) {
        throw std::invalid_argument("partition_prefix: requires max point mass <= gamma");
    }

    std::vector<int> order(masses.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (masses[static_cast<std::size_t>(a)] != masses[static_cast<std::size_t>(b)]) {
            return masses[static_cast<std::size_t>(a)] > masses[static_cast<std::size_t>(b)];
        }
        return a < b;
    });

    std::vector<int> cell;
    double total = 0.0;
    for (int id : order) {
        cell.push_back(id);
        total += masses[static_cast<std::size_t>(id)];
        if (total >= gamma / 2.0) return cell;
    }
    throw std::logic_error("partition_prefix: masses sum below gamma/2");
}

namespace {

// Recursion step of the partition lemma on conditional masses; cells are
// appended to assignment using ids [first_cell, first_cell + m_cells).
void partition_recurse(const std::vector<double>& masses, const std::vector<int>& atom_ids,
                       int m_cells, double gamma, int first_cell, std::vector<int>& assignment) {
    const double gamma_eff = std::max(gamma, 2.0 / (2.0 * m_cells - 1.0));
    const std::vector<int> prefix = partition_prefix(masses, gamma_eff);
    double prefix_mass = 0.0;
    std::vector<char> in_prefix(masses.size(), 0);
    for (int local : prefix) {
        in_prefix[static_cast<std::size_t>(local)] = 1;
        prefix_mass += masses[static_cast<std::size_t>(local)];
        assignment[static_cast<std::size_t>(atom_ids[static_cast<std::size_t>(local)])] =
            first_cell;
    }

    if (m_cells == 2) {
        for (std::size_t local = 0; local < masses.size(); ++local) {
            if (!in_prefix[local]) {
                assignment[static_cast<std::size_t>(atom_ids[local])] = first_cell + 1;
            }
        }
        return;
    }

    const double rest_mass = 1.0 - prefix_mass;
    std::vector<double> rest;
    std::vector<int> rest_ids;
    for (std::size_t local = 0; local < masses.size(); ++local) {
        if (in_prefix[local]) continue;
        rest.push_back(masses[local] / rest_mass);
        rest_ids.push_back(atom_ids[local]);
    }
    partition_recurse(rest, rest_ids, m_cells - 1, gamma_eff / rest_mass, first_cell + 1,
                      assignment);
}

}  // namespace

PartitionResult construct_partition(const std::vector<double>& masses, int m_cells, double gamma) {
    check_masses(masses);
    if (m_cells < 2) throw std::invalid_argument("construct_partition: needs M >= 2");
    const double max_mass = *std::max_element(masses.begin(), masses.end());
    if (max_mass > gamma * (1.0 + 1e-12) + 1e-15) {
        throw std::invalid_argument("construct_partition: requires gamma >= max point mass");
    }
    if (!(gamma < 1.0 / (m_cells - 1.0))) {
        throw std::invalid_argument("construct_partition: requires gamma < 1/(M-1)");
    }

    PartitionResult result;
    result.cell_of_atom.assign(masses.size(), -1);
    std::vector<int> ids(masses.size());
    std::iota(ids.begin(), ids.end(), 0);
    partition_recurse(masses, ids, m_cells, gamma, 0, result.cell_of_atom);

    result.cell_mass.assign(static_cast<std::size_t>(m_cells), 0.0);
    for (std::size_t atom = 0; atom < masses.size(); ++atom) {
        result.cell_mass[static_cast<std::size_t>(result.cell_of_atom[atom])] += masses[atom];
    }
    result.min_mass = *std::min_element(result.cell_mass.begin(), result.cell_mass.end());
    result.guarantee = std::min(1.0 / (2.0 * m_cells - 1.0), 1.0 - (m_cells - 1.0) * gamma);
    return result;
}

MultinomialMaxBound multinomial_pmf_max_bound(int n, const std::vector<double>& q,
                                              std::uint64_t cap) {
    if (n < 1) throw std::invalid_argument("multinomial_pmf_max_bound: n must be >= 1");
    const int m = static_cast<int>(q.size());
    if (m < 2) throw std::invalid_argument("multinomial_pmf_max_bound: needs M >= 2");
    double q_product = 1.0;
    for (double v : q) {
        if (!(v > 0.0)) throw std::invalid_argument("multinomial_pmf_max_bound: q_m must be > 0");
        q_product *= v;
    }

    const CompositionIndex index(n, m, cap);
    std::vector<double> log_q(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) log_q[i] = std::log(q[i]);
    const double log_nfact = std::lgamma(static_cast<double>(n) + 1.0);

    MultinomialMaxBound out;
    double best = -kInf;
    for (std::uint64_t r = 0; r < index.size(); ++r) {
        const std::vector<int> counts = index.at(r);
        double lp = log_nfact;
        for (int j = 0; j < m; ++j) {
            const double cj = counts[static_cast<std::size_t>(j)];
            lp += cj * log_q[static_cast<std::size_t>(j)] - std::lgamma(cj + 1.0);
        }
        if (lp > best) {
            best = lp;
            out.argmax = counts;
        }
    }
    out.exact_max_pmf = std::exp(best);
    out.bound = std::pow(kBerryEsseen, m - 1) /
                std::sqrt(std::pow(static_cast<double>(n), m - 1) * q_product);
    return out;
}

DataCountsReport data_counts_bound_check(const FiniteDistribution& dist, int n, int m_cells) {
    DataCountsReport report;
    report.partition = construct_partition(dist.table(), m_cells, dist.max_point_mass());
    const MultinomialMaxBound mb = multinomial_pmf_max_bound(n, report.partition.cell_mass);
    report.exact_max_pmf = mb.exact_max_pmf;
    report.bound = mb.bound;
    report.holds = report.exact_max_pmf <= report.bound * (1.0 + 1e-12);
    return report;
}

}  // namespace stabletest
