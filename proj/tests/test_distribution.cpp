#include <doctest.h>

#include <cmath>

#include "hyptest/distribution.hpp"

using namespace hyptest;

TEST_CASE("construction validates the probability vector") {
    CHECK_THROWS_AS(FiniteDistribution({0.5}), DomainError);
    CHECK_THROWS_AS(FiniteDistribution({0.7, 0.4}), DomainError);
    CHECK_THROWS_AS(FiniteDistribution({-0.1, 1.1}), DomainError);
    CHECK_THROWS_AS(FiniteDistribution::bernoulli(1.5), DomainError);
    CHECK_NOTHROW(FiniteDistribution({0.25, 0.25, 0.5}));
    CHECK_NOTHROW(FiniteDistribution({1.0, 0.0}));  // zero entries allowed

    const auto b = FiniteDistribution::bernoulli(0.6);
    CHECK(b.size() == 2);
    CHECK(b[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(b[1] == 0.6);
}

TEST_CASE("support relations") {
    const FiniteDistribution a({0.5, 0.5, 0.0});
    const FiniteDistribution b({0.2, 0.3, 0.5});
    const FiniteDistribution c({0.7, 0.3, 0.0});
    CHECK(a.dominated_by(b));
    CHECK_FALSE(b.dominated_by(a));
    CHECK(a.same_support(c));
    CHECK_FALSE(a.same_support(b));
    CHECK_FALSE(a.same_support(FiniteDistribution::bernoulli(0.5)));
}

TEST_CASE("relative entropy") {
    const auto p = FiniteDistribution::bernoulli(0.6);
    const auto q = FiniteDistribution::bernoulli(0.25);
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(kl_divergence(p, q) ==
          doctest::Approx(0.2738377786433903).epsilon(1e-13));
    CHECK(kl_divergence(q, p) ==
          doctest::Approx(0.2525893102283056).epsilon(1e-13));

    // 0 log 0 = 0 on the left, hard failure on the right
    const FiniteDistribution z({1.0, 0.0});
    CHECK(kl_divergence(z, p) == doctest::Approx(std::log(1.0 / 0.4)));
    CHECK_THROWS_AS(kl_divergence(p, z), SupportMismatch);
    CHECK_THROWS_AS(kl_divergence(p, FiniteDistribution({0.5, 0.25, 0.25})),
                    SupportMismatch);
}

TEST_CASE("log-likelihood ratio moments") {
    const auto p = FiniteDistribution::bernoulli(0.6);
    const auto q = FiniteDistribution::bernoulli(0.25);

    const LLRMoments m = llr_moments(p, p, q);
    CHECK(m.mean == doctest::Approx(0.2738377786433903).epsilon(1e-13));
    CHECK(m.variance == doctest::Approx(0.5429397157183904).epsilon(1e-13));
    CHECK(m.abs_third_central ==
          doctest::Approx(0.4246441441965668).epsilon(1e-13));
    REQUIRE(m.be_constant.has_value());
    CHECK(*m.be_constant == doctest::Approx(0.5307227776030219).epsilon(1e-13));
    CHECK_FALSE(m.degenerate_variance);

    // Jensen: E|X-mean|^3 >= (Var)^{3/2}
    CHECK(m.abs_third_central >= std::pow(m.variance, 1.5) - 1e-15);

    // swapping the roles negates the mean and preserves the variance
    const LLRMoments sw = llr_moments(p, q, p);
    CHECK(sw.mean == doctest::Approx(-m.mean).epsilon(1e-13));
    CHECK(sw.variance == doctest::Approx(m.variance).epsilon(1e-13));

    // degenerate case: the LLR is identically zero
    const auto h = FiniteDistribution::bernoulli(0.5);
    const LLRMoments d = llr_moments(h, h, h);
    CHECK(d.mean == 0.0);
    CHECK(d.variance == 0.0);
    CHECK(d.degenerate_variance);
    CHECK_FALSE(d.be_constant.has_value());

    CHECK_THROWS_AS(llr_moments(p, p, FiniteDistribution({1.0, 0.0})),
                    SupportMismatch);
}

TEST_CASE("squared Hellinger distance") {
    const auto p = FiniteDistribution::bernoulli(0.6);
    const auto q = FiniteDistribution::bernoulli(0.25);
    CHECK(hellinger_sq(p, p) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(hellinger_sq(FiniteDistribution({1.0, 0.0}),
                       FiniteDistribution({0.0, 1.0})) == 1.0);
    CHECK(hellinger_sq(p, q) ==
          doctest::Approx(0.06497910787409220).epsilon(1e-12));
    CHECK(hellinger_sq(p, q) == hellinger_sq(q, p));
}
