#include <doctest.h>

#include <cmath>

#include "sgreen/model.hpp"
#include "sgreen/random.hpp"

using namespace sgreen;

TEST_CASE("strip_dirichlet: small cubes") {
    OperatorSpec s11 = strip_dirichlet(1, 1);
    CHECK(s11.channels() == 1);
    CHECK(s11.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-14));

    OperatorSpec s21 = strip_dirichlet(2, 1);
    CHECK(s21.channels() == 2);
    CHECK(s21.D()(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(s21.D()(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s21.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s21.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));

    OperatorSpec s22 = strip_dirichlet(2, 2);
    CHECK(s22.channels() == 4);
    const Vec mu = s22.eigenvalues();
    CHECK(mu(0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(mu(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mu(2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mu(3) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("strip_dirichlet: matches the closed-form eigenvalue list") {
    for (int L : {2, 3}) {
        for (int d : {1, 2}) {
            OperatorSpec s = strip_dirichlet(L, d);
            auto ev = strip_dirichlet_eigenvalues(L, d);
            REQUIRE(static_cast<int>(ev.size()) == s.channels());
            for (int k = 0; k < s.channels(); ++k)
                CHECK(s.eigenvalues()(k) == doctest::Approx(ev[k]).epsilon(1e-10));
        }
    }
}

TEST_CASE("strip_dirichlet: size cap") { CHECK_THROWS_AS(strip_dirichlet(5, 3), SizeCap); }

TEST_CASE("band_report: strip examples") {
    BandReport r = band_report(strip_dirichlet(2, 1));
    REQUIRE(r.I_D.has_value());
    CHECK(r.I_D->lo == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(r.I_D->hi == doctest::Approx(1.0).epsilon(1e-13));
    REQUIRE(r.sigma_free.size() == 1);
    CHECK(r.sigma_free[0].lo == doctest::Approx(-3.0).epsilon(1e-13));
    CHECK(r.sigma_free[0].hi == doctest::Approx(3.0).epsilon(1e-13));
    REQUIRE(r.pieces.size() == 3);
    CHECK(r.pieces[0].mode_count == 1);
    CHECK(r.pieces[1].mode_count == 2);
    CHECK(r.pieces[2].mode_count == 1);

    BandReport r32 = band_report(strip_dirichlet(3, 2));
    CHECK_FALSE(r32.I_D.has_value());
}

TEST_CASE("band_report: widely split channels") {
    Mat D = Mat::Zero(2, 2);
    D(1, 1) = 10.0;
    BandReport r = band_report(OperatorSpec(RealSym(D)));
    CHECK_FALSE(r.I_D.has_value());
    REQUIRE(r.sigma_free.size() == 2);
    CHECK(r.sigma_free[0].lo == doctest::Approx(-2.0));
    CHECK(r.sigma_free[0].hi == doctest::Approx(2.0));
    CHECK(r.sigma_free[1].lo == doctest::Approx(8.0));
    CHECK(r.sigma_free[1].hi == doctest::Approx(12.0));
    for (const auto& p : r.pieces) CHECK(p.mode_count == 1);
}

TEST_CASE("disorder: zero amplitude gives the zero sample") {
    DisorderModel m(DisorderKind::rademacher, 2, 0.0, 1.0);
    PotentialSample q = sample_potential(m, 7, -3, 3);
    for (long n = -3; n <= 3; ++n) CHECK(q.at(n).mat().norm() == 0.0);
    CHECK(second_moment_sum(m, -3, 3) == 0.0);
}

TEST_CASE("disorder: rademacher envelope is exact") {
    DisorderModel m(DisorderKind::rademacher, 1, 1.0, 1.0);
    PotentialSample q = sample_potential(m, 42, -6, 6);
    for (long n = -6; n <= 6; ++n)
        CHECK(std::abs(q.at(n)(0, 0)) ==
              doctest::Approx(1.0 / (1.0 + std::abs(static_cast<double>(n)))).epsilon(1e-14));
}

TEST_CASE("disorder: per-site seeding is window independent") {
    DisorderModel m(DisorderKind::truncated_gaussian, 3, 0.7, 0.5);
    PotentialSample a = sample_potential(m, 99, -5, 5);
    PotentialSample b = sample_potential(m, 99, -10, 10);
    for (long n = -5; n <= 5; ++n) CHECK((a.at(n).mat() - b.at(n).mat()).norm() == 0.0);
}

TEST_CASE("disorder: outside the window the potential is zero") {
    DisorderModel m(DisorderKind::uniform, 2, 1.0, 0.0);
    PotentialSample q = sample_potential(m, 3, 0, 4);
    CHECK(q.at(-1).mat().norm() == 0.0);
    CHECK(q.at(5).mat().norm() == 0.0);
}

TEST_CASE("second_moment_sum: closed forms") {
    DisorderModel rad(DisorderKind::rademacher, 1, 1.0, 1.0);
    double expect = 0.0;
    for (long n = -4; n <= 4; ++n) expect += std::pow(1.0 + std::abs(static_cast<double>(n)), -2);
    CHECK(second_moment_sum(rad, -4, 4) == doctest::Approx(expect).epsilon(1e-13));

    DisorderModel uni(DisorderKind::uniform, 1, 1.0, 0.0);
    CHECK(second_moment_sum(uni, 0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("disorder: empirical site mean is statistically zero") {
    for (DisorderKind k : {DisorderKind::rademacher, DisorderKind::uniform,
                           DisorderKind::truncated_gaussian, DisorderKind::diagonal_iid}) {
        DisorderModel m(k, 2, 1.0, 0.0);
        const int T = 10000;
        Mat acc = Mat::Zero(2, 2);
        for (int t = 0; t < T; ++t) acc += m.draw_site(mix_seed(5, t), 0).mat();
        acc /= T;
        const double sd = std::sqrt(m.site_second_moment(0));
        CHECK(op_norm(acc) <= 4.0 * sd / std::sqrt(static_cast<double>(T)));
    }
}

TEST_CASE("disorder: draw norm respects the envelope bound") {
    DisorderModel m(DisorderKind::truncated_gaussian, 2, 0.9, 0.3);
    for (long n = -20; n <= 20; ++n)
        CHECK(op_norm(m.draw_site(11, n).mat()) <= m.envelope(n) * (1.0 + 1e-12));
}

TEST_CASE("disorder: kind round-trip") {
    for (DisorderKind k : {DisorderKind::rademacher, DisorderKind::uniform,
                           DisorderKind::truncated_gaussian, DisorderKind::diagonal_iid})
        CHECK(disorder_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(disorder_kind_from_string("cauchy"), InvalidParameter);
}
