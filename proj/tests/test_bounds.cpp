#include <doctest.h>

#include <cmath>

#include "hyptest/bounds.hpp"
#include "hyptest/np_oracle.hpp"

using namespace hyptest;

namespace {
TiltedFamily bern_pair() {
    return {FiniteDistribution::bernoulli(0.6),
            FiniteDistribution::bernoulli(0.25)};
}
}  // namespace

TEST_CASE("one-shot converse right-hand side") {
    CHECK(one_shot_converse_rhs(1.0, 0.0, 2.0) == 0.0);
    CHECK(one_shot_converse_rhs(0.0, 0.0, 2.0) == doctest::Approx(0.5));
    CHECK(one_shot_converse_rhs(0.9, 0.2, 1.0) == 0.0);  // vacuous, clamped
    CHECK_THROWS_AS(one_shot_converse_rhs(0.5, 0.0, 0.0), DomainError);

    // the bound never exceeds the exact single-sample optimum
    const TiltedFamily f = bern_pair();
    const LLRAtomTable table = build_atom_table(f, 1);
    for (double eps : {0.1, 0.3, 0.6}) {
        const double truth = e1_star(table, eps).e1_star;
        for (double gamma : {0.5, 1.0, 2.0}) {
            double p_tail = 0.0;  // P(log p/q (X) > log gamma) under P
            for (std::size_t i = 0; i < 2; ++i) {
                if (f.per_symbol_llr()[i] > std::log(gamma)) p_tail += f.p()[i];
            }
            CHECK(one_shot_converse_rhs(eps, p_tail, gamma) <= truth + 1e-12);
        }
    }
}

TEST_CASE("query construction") {
    const TiltedFamily f = bern_pair();
    const BoundQuery q = BoundQuery::from_epsilon(f, 50, 0.01);
    CHECK(q.delta == doctest::Approx(-std::log(0.01) / 50).epsilon(1e-15));
    const BoundQuery d = BoundQuery::from_delta(f, 50, 0.1);
    CHECK(d.epsilon == doctest::Approx(std::exp(-5.0)).epsilon(1e-15));
    // epsilon may underflow; the log form stays finite
    const BoundQuery big = BoundQuery::from_delta(f, 100000, 0.2);
    CHECK(big.epsilon == 0.0);
    CHECK(big.log_epsilon == doctest::Approx(-20000.0));
    CHECK_THROWS_AS(BoundQuery::from_epsilon(f, 50, 0.0), DomainError);
    CHECK_THROWS_AS(BoundQuery::from_epsilon(f, 50, 1.0), DomainError);
    CHECK_THROWS_AS(BoundQuery::from_epsilon(f, 0, 0.5), DomainError);
    CHECK_THROWS_AS(BoundQuery::from_delta(f, 50, -0.1), DomainError);
}

TEST_CASE("large-sample converse bound") {
    const TiltedFamily f = bern_pair();
    const LLRMoments mom = llr_moments(f.p(), f.p(), f.q());
    const double B = *mom.be_constant;

    // below threshold: invalid, threshold echoed
    const BoundQuery q5 = BoundQuery::from_epsilon(f, 2, 0.5);
    const SteinBound inv = stein_converse(q5);
    CHECK_FALSE(inv.valid);
    CHECK(inv.min_valid_n ==
          static_cast<std::int64_t>(std::ceil(std::pow((B + 1.0) / 0.5, 2))));

    // valid value never exceeds the exact optimum
    for (std::int64_t n : {50, 100, 400}) {
        const BoundQuery q = BoundQuery::from_epsilon(f, n, 0.5);
        const SteinBound b = stein_converse(q);
        REQUIRE(b.valid);
        const double truth = e1_star(build_atom_table(f, n), 0.5).log_e1_star;
        CHECK(b.value <= truth + 1e-12);
    }

    // the slack parameter enters through log(slack): smaller slack can only
    // help through the quantile but eventually loses through the log term
    const BoundQuery q = BoundQuery::from_epsilon(f, 10000, 0.5);
    CHECK(stein_converse(q, 1e-8).value < stein_converse(q, 1.0).value);
}

TEST_CASE("large-sample achievability bound") {
    const TiltedFamily f = bern_pair();
    const LLRMoments mom = llr_moments(f.p(), f.p(), f.q());
    const double B = *mom.be_constant;

    const BoundQuery bad = BoundQuery::from_epsilon(f, 1, 0.5);
    const SteinBound inv = stein_achievability(bad);
    CHECK_FALSE(inv.valid);
    CHECK(inv.min_valid_n ==
          static_cast<std::int64_t>(std::floor(std::pow(B / 0.5, 2))) + 1);

    for (std::int64_t n : {50, 100, 400}) {
        const BoundQuery q = BoundQuery::from_epsilon(f, n, 0.5);
        const SteinBound b = stein_achievability(q);
        REQUIRE(b.valid);
        const double truth = e1_star(build_atom_table(f, n), 0.5).log_e1_star;
        CHECK(b.value >= truth - 1e-12);
    }

    // leading order dominates at large n
    const BoundQuery huge = BoundQuery::from_epsilon(f, 100000, 0.5);
    const double v = stein_achievability(huge).value;
    const double lead = -100000.0 * mom.mean;
    CHECK(std::abs(v - lead) / std::abs(lead) < 0.01);
}

TEST_CASE("tail-expectation bound") {
    CHECK_THROWS_AS(be2_bound(0.0, 0.1, 10, 0.0), DomainError);
    CHECK_THROWS_AS(be2_bound(1.0, -0.1, 10, 0.0), DomainError);
    CHECK_THROWS_AS(be2_bound(1.0, 0.1, 0, 0.0), DomainError);
    CHECK(be2_bound(1.0, 1.0, 4, 50.0) < 1e-20);
    CHECK(be2_bound(1.0, 1.0, 16, 1.0) ==
          doctest::Approx(0.5 * be2_bound(1.0, 1.0, 4, 1.0)).epsilon(1e-14));
}

TEST_CASE("achievability constant") {
    const TiltedFamily f = bern_pair();
    const ExponentSolution sol = solve_alpha_star(f, 0.19443);
    const double C = achievability_constant(sol);
    CHECK(std::isfinite(C));
    CHECK(C == doctest::Approx(1.80592).epsilon(1e-4));
    // different optimal tilts give different constants
    const double C2 = achievability_constant(solve_alpha_star(f, 0.1));
    CHECK(C != C2);
}

TEST_CASE("converse constant and validity thresholds") {
    const TiltedFamily f = bern_pair();
    const ExtremalMoments ext = extremal_moments(f);
    const ExponentSolution sol = solve_alpha_star(f, 0.19443);
    const ConverseConstant cc = converse_constant(sol, ext);
    CHECK(cc.m < 0.0);
    CHECK(cc.c_prime == doctest::Approx(-10.9600).epsilon(1e-3));
    CHECK(cc.n0 == 160);
    CHECK(cc.n_min == 3389);

    // n0 is the true threshold: the inequality holds at n0 and beyond,
    // and fails just below it
    const double c = (1.0 - sol.alpha_star) * sol.sigma_star_sq;
    CHECK(std::log(static_cast<double>(cc.n0 - 1)) >
          c * std::sqrt(static_cast<double>(cc.n0 - 1)));
    for (std::int64_t n = cc.n0; n <= cc.n0 + 2000; ++n) {
        CHECK(std::log(static_cast<double>(n)) <=
              c * std::sqrt(static_cast<double>(n)) + 1e-12);
    }

    // sandwich consistency across the admissible exponent range
    for (int i = 1; i <= 20; ++i) {
        const ExponentSolution s = solve_alpha_star(f, f.kl_qp() * i / 21.0);
        CHECK(converse_constant(s, ext).c_prime <= achievability_constant(s));
    }
}

TEST_CASE("report assembly") {
    const TiltedFamily f = bern_pair();

    // first reference-table row
    const double eps1 = 5.808677817566528e-05;
    const BoundQuery q = BoundQuery::from_epsilon(f, 50, eps1);
    const BoundReport r = full_report(q);
    CHECK(r.exponent_valid);
    CHECK(r.stein == doctest::Approx(1.13e-6).epsilon(0.01));
    REQUIRE(r.strassen);
    CHECK(*r.strassen == doctest::Approx(84.1698).epsilon(1e-4));
    CHECK(*r.strassen_clamped == 1.0);
    REQUIRE(r.hoeffding);
    CHECK(*r.hoeffding == doctest::Approx(0.803995).epsilon(1e-5));
    REQUIRE(r.new_approx);
    CHECK(*r.new_approx == doctest::Approx(0.082957).epsilon(1e-4));
    REQUIRE(r.C);
    REQUIRE(r.c_prime);
    CHECK(*r.c_prime <= *r.C);

    // derived exponent out of the admissible range: approximation columns absent
    const BoundQuery far = BoundQuery::from_epsilon(f, 1, 0.0001);
    const BoundReport rf = full_report(far);
    CHECK_FALSE(rf.exponent_valid);
    CHECK_FALSE(rf.hoeffding.has_value());
    CHECK_FALSE(rf.new_approx.has_value());
    CHECK(rf.stein > 0.0);

    // the refined approximation decreases in n at fixed exponent
    double prev = 1e300;
    for (std::int64_t n = 10; n <= 100; n += 10) {
        const BoundReport s = full_report(BoundQuery::from_delta(f, n, 0.15));
        REQUIRE(s.new_approx);
        CHECK(*s.new_approx < prev);
        prev = *s.new_approx;
    }

    const auto same = FiniteDistribution::bernoulli(0.3);
    const TiltedFamily g(same, same);
    CHECK_THROWS_AS(full_report(BoundQuery::from_epsilon(g, 10, 0.5)),
                    DegenerateFamily);
}
