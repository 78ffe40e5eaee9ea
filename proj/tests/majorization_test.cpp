#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <random>

#include "cohbound/majorization.hpp"
#include "oracles.hpp"

using namespace cohbound;

namespace {

void expect_vec_near(const ProbVector &got, const std::vector<double> &want, double tol) {
    ASSERT_EQ(got.dim(), want.size());
    for (std::size_t i = 0; i < want.size(); i++) {
        EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
    }
}

/// All distributions on `dim` outcomes whose entries are multiples of 1/steps.
std::vector<ProbVector> grid(std::size_t dim, int steps) {
    std::vector<ProbVector> out;
    std::vector<int> c(dim, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == dim) {
            c[i] = left;
            std::vector<double> w(dim);
            for (std::size_t k = 0; k < dim; k++) {
                w[k] = double(c[k]) / steps;
            }
            out.emplace_back(w);
            return;
        }
        for (int v = 0; v <= left; v++) {
            c[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, steps);
    return out;
}

}  // namespace

TEST(majorization, flatten_fills_a_dent) {
    auto c = flatten({0.5, 0.6, 1.0});
    EXPECT_NEAR(c.s[0], 0.5, 1e-15);
    EXPECT_NEAR(c.s[1], 0.75, 1e-15);
    EXPECT_NEAR(c.s[2], 1.0, 1e-15);
}

TEST(majorization, flatten_rejects_bad_curves) {
    EXPECT_THROW(flatten({0.5, 0.4, 1.0}), std::invalid_argument);
    EXPECT_THROW(flatten({0.5, 0.9}), std::invalid_argument);
    EXPECT_THROW(flatten({}), std::invalid_argument);
}

TEST(majorization, join_example) {
    auto j = join_pair(ProbVector({0.6, 0.2, 0.2}), ProbVector({0.5, 0.45, 0.05}));
    expect_vec_near(j, {0.6, 0.35, 0.05}, 1e-15);
}

TEST(majorization, join_example_needing_flattening) {
    // max curve (0.5, 0.7, 1.0, 1.0) has a dent at k = 2
    std::vector<double> a{0.5, 0.2, 0.2, 0.1};
    std::vector<double> b{0.35, 0.35, 0.3, 0.0};
    auto j = join_pair(ProbVector(a), ProbVector(b));
    expect_vec_near(j, oracle::join(a, b), 1e-12);
    expect_vec_near(j, {0.5, 0.25, 0.25, 0.0}, 1e-12);
}

TEST(majorization, meet_example) {
    auto m = meet_pair(ProbVector({0.6, 0.2, 0.2}), ProbVector({0.5, 0.45, 0.05}));
    expect_vec_near(m, {0.5, 0.3, 0.2}, 1e-15);
}

TEST(majorization, pairs_match_definition_oracle) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; trial++) {
        std::size_t dim = 2 + trial % 7;
        auto a = oracle::random_distribution(dim, rng);
        auto b = oracle::random_distribution(dim, rng);
        expect_vec_near(join_pair(ProbVector(a), ProbVector(b)), oracle::join(a, b), 1e-9);
        expect_vec_near(meet_pair(ProbVector(a), ProbVector(b)), oracle::meet(a, b), 1e-9);
    }
}

TEST(majorization, lattice_order_properties) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t dim = 2 + trial % 6;
        ProbVector a(oracle::random_distribution(dim, rng));
        ProbVector b(oracle::random_distribution(dim, rng));
        auto j = join_pair(a, b);
        auto m = meet_pair(a, b);
        EXPECT_TRUE(majorizes(j, a));
        EXPECT_TRUE(majorizes(j, b));
        EXPECT_TRUE(majorizes(a, m));
        EXPECT_TRUE(majorizes(b, m));
        EXPECT_GE(shannon_entropy(a) + 1e-12, shannon_entropy(j));
        EXPECT_LE(shannon_entropy(a), shannon_entropy(m) + 1e-12);
        expect_vec_near(join_pair(a, a), a.sorted_descending().weights(), 1e-12);
        expect_vec_near(join_pair(a, b), join_pair(b, a).weights(), 1e-12);
    }
}

TEST(majorization, join_is_least_and_meet_is_greatest_on_a_grid) {
    const int steps = 24;
    auto points = grid(3, steps);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    for (int trial = 0; trial < 40; trial++) {
        const auto &a = points[pick(rng)];
        const auto &b = points[pick(rng)];
        auto j = join_pair(a, b);
        auto m = meet_pair(a, b);
        for (const auto &q : points) {
            if (majorizes(q, a) && majorizes(q, b)) {
                EXPECT_TRUE(majorizes(q, j));
            }
            if (majorizes(a, q) && majorizes(b, q)) {
                EXPECT_TRUE(majorizes(m, q));
            }
        }
    }
}

TEST(polytope_meet, unconstrained_set_has_uniform_meet) {
    ConstraintSet cs(4);
    auto q = meet_over_polytope(cs);
    ASSERT_TRUE(q);
    expect_vec_near(*q, {0.25, 0.25, 0.25, 0.25}, 1e-12);
}

TEST(polytope_meet, singleton_set_returns_its_point) {
    // rows pin p = (0.1, 0.2, 0.3, 0.4)
    ConstraintSet cs(4);
    cs.add_row({1, 0, 0, 0}, 0.1, 0.1);
    cs.add_row({0, 1, 0, 0}, 0.2, 0.2);
    cs.add_row({0, 0, 1, 0}, 0.3, 0.3);
    auto q = meet_over_polytope(cs);
    ASSERT_TRUE(q);
    expect_vec_near(*q, {0.4, 0.3, 0.2, 0.1}, 1e-10);
}

TEST(polytope_meet, infeasible_set) {
    ConstraintSet cs(3);
    cs.add_row({1, 1, -1}, 0.95, 1.0);
    cs.add_row({1, -1, 1}, 0.95, 1.0);
    cs.add_row({-1, 1, 1}, 0.95, 1.0);
    EXPECT_FALSE(meet_over_polytope(cs));
}

TEST(polytope_meet, single_outcome) {
    ConstraintSet ok(1);
    ok.add_row({1}, 0.5, 1.0);
    ASSERT_TRUE(meet_over_polytope(ok));
    ConstraintSet bad(1);
    bad.add_row({1}, -1.0, 0.5);
    EXPECT_FALSE(meet_over_polytope(bad));
}

TEST(polytope_meet, meet_is_majorized_by_every_member) {
    // Points of X sampled as vertices found by random linear objectives.
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 20; trial++) {
        std::size_t dim = 4;
        ConstraintSet cs(dim);
        cs.add_row({1, -1, 1, -1}, -0.2, 0.4);
        cs.add_row({1, 1, -1, -1}, 0.0, 0.6 + 0.2 * u(rng));
        auto q = meet_over_polytope(cs);
        ASSERT_TRUE(q);
        for (int v = 0; v < 20; v++) {
            lp::LinearProgram p;
            p.objective.resize(dim);
            for (auto &c : p.objective) {
                c = u(rng);
            }
            add_polytope_constraints(p, cs, dim);
            auto out = lp::solve(p);
            ASSERT_EQ(out.status, lp::LpStatus::Optimal);
            for (auto &x : out.solution) {
                x = std::max(0.0, x);
            }
            double total = std::accumulate(out.solution.begin(), out.solution.end(), 0.0);
            for (auto &x : out.solution) {
                x /= total;
            }
            EXPECT_TRUE(majorizes(ProbVector(out.solution), *q));
        }
    }
}

TEST(polytope_meet, agrees_with_subset_enumeration) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 30; trial++) {
        std::size_t dim = 2 + trial % 4;
        ConstraintSet cs(dim);
        for (int r = 0; r < 2; r++) {
            std::vector<double> row(dim);
            for (auto &x : row) {
                x = sign(rng) ? 1.0 : -1.0;
            }
            double c = u(rng);
            cs.add_row(row, std::max(-1.0, c - 0.3), std::min(1.0, c + 0.3));
        }
        auto compact = meet_over_polytope(cs);
        auto oracle_curve = oracle::subset_enumeration_curve(cs);
        ASSERT_EQ(compact.has_value(), oracle_curve.has_value()) << "trial " << trial;
        if (compact) {
            auto curve = cumulative_curve(*compact);
            for (std::size_t k = 0; k < dim; k++) {
                EXPECT_NEAR(curve.s[k], (*oracle_curve)[k], 1e-7);
            }
        }
    }
}

TEST(constraint_set, validation) {
    EXPECT_THROW(ConstraintSet(0), std::invalid_argument);
    ConstraintSet cs(2);
    EXPECT_THROW(cs.add_row({1}, 0, 1), std::invalid_argument);
    EXPECT_THROW(cs.add_row({1, 1}, 0.5, 0.2), std::invalid_argument);
}

TEST(majorization, comparable_pairs_and_identities) {
    expect_vec_near(meet_pair(ProbVector({0.6, 0.4}), ProbVector({0.5, 0.5})), {0.5, 0.5}, 1e-15);
    expect_vec_near(join_pair(ProbVector({0.6, 0.4}), ProbVector({0.5, 0.5})), {0.6, 0.4}, 1e-15);
    expect_vec_near(meet_pair(ProbVector({0.5, 0.3, 0.2}), ProbVector({0.45, 0.45, 0.1})), {0.45, 0.35, 0.2}, 1e-15);
    ProbVector a({0.1, 0.6, 0.3});
    expect_vec_near(meet_pair(a, a), {0.6, 0.3, 0.1}, 1e-15);
    expect_vec_near(join_pair(a, ProbVector::uniform(3)), {0.6, 0.3, 0.1}, 1e-15);
    EXPECT_TRUE(majorizes(ProbVector({1, 0}), ProbVector({0.5, 0.5})));
    EXPECT_FALSE(majorizes(ProbVector({0.5, 0.5}), ProbVector({1, 0})));
}

TEST(majorization, join_with_flattened_tail) {
    auto j = join_pair(ProbVector({0.40, 0.20, 0.20, 0.20}), ProbVector({0.34, 0.33, 0.33, 0.0}));
    expect_vec_near(j, {0.40, 0.30, 0.30, 0.0}, 1e-12);
    auto c = flatten({0.40, 0.67, 1.0, 1.0});
    EXPECT_NEAR(c.s[1], 0.70, 1e-12);
    auto same = flatten({0.5, 1.0});
    EXPECT_EQ(same.s, (std::vector<double>{0.5, 1.0}));
}

TEST(polytope_meet, two_outcomes_with_one_row) {
    ConstraintSet cs(2);
    cs.add_row({1, -1}, 0.8, 1.0);
    auto q = meet_over_polytope(cs);
    ASSERT_TRUE(q);
    expect_vec_near(*q, {0.9, 0.1}, 1e-12);
}

TEST(polytope_meet, exact_ghz3_records_give_a_point_mass) {
    ConstraintSet cs(8);
    EigenvalueMatrix b(3);
    for (std::size_t t = 1; t < 8; t++) {
        cs.add_row(b.row(t), 1.0, 1.0);
    }
    auto q = meet_over_polytope(cs);
    ASSERT_TRUE(q);
    expect_vec_near(*q, {1, 0, 0, 0, 0, 0, 0, 0}, 1e-12);
}
