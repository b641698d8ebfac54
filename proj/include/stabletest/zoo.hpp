// Built-in learners: simple, exactly reproducible instances of the learner
// interface, spanning stable, maximally unstable, and seed-driven behavior.
#ifndef STABLETEST_ZOO_HPP
#define STABLETEST_ZOO_HPP

#include <vector>

#include "stabletest/learner.hpp"

namespace stabletest {

// Predicts `value` everywhere, for any training set.
Learner make_constant(int x_size, double value = 0.0);

// k-nearest-neighbor regression on the integer feature line; ties broken by
// sorting candidates on (distance, x, y). Empty training set predicts 0.
Learner make_knn(int x_size, int k);

// Ridge regression on one-hot features, solved in closed form: the normal
// equations are diagonal, so beta_x = sum_y / (count_x + lambda). Unseen
// categories predict 0.
Learner make_ridge(int x_size, double lambda);

// Predicts the mean response of the training set everywhere (0 when empty).
Learner make_response_mean(int x_size);

// Predicts the training-set size everywhere. Maximally unstable: the n vs
// n-1 predictions always differ by exactly 1.
Learner make_size_reporting(int x_size);

// Predicts the training-set size if seed < rho0, else 0 — the instability
// probability is exactly rho0 for epsilon < 1, with f(seed) = 1{seed < rho0}.
Learner make_seed_threshold(int x_size, double rho0);

// The default zoo with canonical parameters (knn k=1, ridge lambda=1,
// seed threshold rho0=0.3).
std::vector<Learner> builtin_learner_zoo(int x_size, int y_size);

}  // namespace stabletest

#endif  // STABLETEST_ZOO_HPP
