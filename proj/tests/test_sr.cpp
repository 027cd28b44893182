#include "latred/sr.hpp"

#include "latred/cvp.hpp"
#include "latred/experiments.hpp"
#include "latred/linalg.hpp"
#include "check_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace latred;

namespace {

SrConfig pair_config(double tau = 1.0) {
    SrConfig c;
    c.tau = tau;
    c.subroutine = SrSubroutine::Pair;
    return c;
}

SrConfig cvp_config(double tau = 1.0) {
    SrConfig c;
    c.tau = tau;
    c.subroutine = SrSubroutine::ExactCvp;
    return c;
}

}  // namespace

TEST_CASE("tau outside (0,1] is rejected") {
    const Basis id(Matrix::Identity(2, 2));
    CHECK_THROWS_AS(sr_reduce(id, pair_config(0.0)), InvalidInputError);
    CHECK_THROWS_AS(sr_reduce(id, pair_config(1.5)), InvalidInputError);
    CHECK_THROWS_AS(greedy_reduce(id, -0.5), InvalidInputError);
}

TEST_CASE("identity basis: no updates, n ineffective attempts") {
    for (const auto& cfg : {pair_config(), cvp_config()}) {
        const Basis id(Matrix::Identity(4, 4));
        const ReductionOutcome out = sr_reduce(id, cfg);
        CHECK(out.basis == id);
        CHECK(out.report.accepted_updates == 0);
        CHECK(out.report.ineffective_attempts == 4);
        CHECK(out.report.wall_rounds == 1);
        CHECK(out.transform.matrix() == IntMatrix::Identity(4, 4));
    }
}

TEST_CASE("hand-traced pair run on ((1,0),(0.9,1))") {
    Matrix m(2, 2);
    m << 1, 0.9, 0, 1;
    const ReductionOutcome out = sr_reduce(Basis(m), pair_config());
    CHECK(out.report.accepted_updates == 1);
    CHECK(out.basis.matrix().col(0).isApprox(Vector{{1.0, 0.0}}));
    CHECK(out.basis.matrix().col(1).isApprox(Vector{{-0.1, 1.0}}));
    CHECK(out.report.vector_comparisons >= out.report.accepted_updates);
    const auto chk = test::verify_outcome(Basis(m), out);
    CHECK_MESSAGE(chk.ok, chk.why);
}

TEST_CASE("the 3x3 stall basis defeats SR-Pair but not SR-CVP") {
    const double phi = std::numbers::pi / 2 - 1e-4;
    const Basis a = counterexample_pair_3x3(phi);

    const ReductionOutcome pair = sr_reduce(a, pair_config());
    CHECK(pair.report.accepted_updates == 0);
    CHECK(pair.basis == a);

    const ReductionOutcome cvp = sr_cvp_heuristic(a);
    CHECK(std::abs(cvp.report.od_after - 1.1547) < 1e-3);
    CHECK(is_cvp_stationary(cvp.basis));
}

TEST_CASE("the 5x5 construction stalls greedy; SR-CVP reaches the short column") {
    const double eps = 0.5;
    const Basis b5 = counterexample_greedy_5x5(eps);

    const ReductionOutcome greedy = greedy_reduce(b5);
    CHECK(greedy.report.accepted_updates == 0);
    CHECK(greedy.basis == b5);
    CHECK(greedy.basis.matrix().colwise().norm().minCoeff() == doctest::Approx(2.0));

    const ReductionOutcome cvp = sr_cvp_heuristic(b5);
    CHECK(cvp.basis.matrix().colwise().norm().minCoeff() == doctest::Approx(2 * eps));
}

TEST_CASE("greedy on identity stays put") {
    const Basis id(Matrix::Identity(3, 3));
    const ReductionOutcome out = greedy_reduce(id);
    CHECK(out.basis == id);
    CHECK(out.report.accepted_updates == 0);
}

TEST_CASE("SR-CVP theorem bounds hold after the heuristic schedule") {
    std::mt19937_64 rng(101);
    for (const int n : {2, 3, 4}) {
        for (int trial = 0; trial < 40; ++trial) {
            const Basis b = gaussian_basis(n, rng);
            const ReductionOutcome out = sr_cvp_heuristic(b);
            CHECK(is_cvp_stationary(out.basis));
            const SrBoundsReport rep = check_srcvp_bounds(out.basis);
            CHECK(rep.length_ok);
            CHECK(rep.od_ok);
            CHECK(rep.angle_ok);
            const auto chk = test::verify_outcome(b, out);
            CHECK_MESSAGE(chk.ok, chk.why);
        }
    }
}

TEST_CASE("greedy never beats the heuristic SR-CVP on average") {
    std::mt19937_64 rng(113);
    double greedy_sum = 0, cvp_sum = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Basis b = gaussian_basis(2 + trial % 3, rng);
        greedy_sum += greedy_reduce(b).report.od_after;
        cvp_sum += sr_cvp_heuristic(b).report.od_after;
    }
    CHECK(greedy_sum / 200.0 >= cvp_sum / 200.0 - 1e-9);
}

TEST_CASE("pair candidates are a subset of CVP's: stationary sums dominate") {
    std::mt19937_64 rng(127);
    double pair_sum = 0, cvp_sum = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const Basis b = dual_gaussian_basis(5, rng);
        pair_sum += sr_reduce(b, pair_config()).basis.matrix().squaredNorm();
        cvp_sum += sr_reduce(b, cvp_config()).basis.matrix().squaredNorm();
    }
    CHECK(cvp_sum <= pair_sum + 1e-9);
}

TEST_CASE("SR-Pair termination leaves a pair-stationary basis from any start") {
    std::mt19937_64 rng(131);
    for (int trial = 0; trial < 30; ++trial) {
        const Basis b = dual_gaussian_basis(10, rng);
        const ReductionOutcome out = sr_reduce(b, pair_config());
        CHECK(is_pair_stationary(out.basis));

        // Rotating the column order changes the cursor start; stationarity of
        // the result must not depend on it.
        Matrix rot(b.ambient_dim(), b.rank());
        for (Eigen::Index i = 0; i < b.rank(); ++i)
            rot.col(i) = b.matrix().col((i + 3) % b.rank());
        CHECK(is_pair_stationary(sr_reduce(Basis(rot), pair_config()).basis));
    }
}

TEST_CASE("Lemma 2: all pairwise angles exceed pi/3 after SR-Pair") {
    std::mt19937_64 rng(137);
    for (int trial = 0; trial < 25; ++trial) {
        const Basis b = dual_gaussian_basis(8, rng);
        const ReductionOutcome out = sr_reduce(b, pair_config());
        const Matrix ang = pairwise_angles(out.basis);
        for (Eigen::Index i = 0; i < 8; ++i)
            for (Eigen::Index j = i + 1; j < 8; ++j)
                CHECK(ang(i, j) > std::numbers::pi / 3 - 1e-9);
    }
}

TEST_CASE("termination within the safety cap and monotone traces") {
    std::mt19937_64 rng(139);
    for (int trial = 0; trial < 50; ++trial) {
        const Basis b = dual_gaussian_basis(12, rng);
        SrConfig cfg = pair_config();
        cfg.max_updates = 100000;  // never reached; the loop must stop on its own
        const ReductionOutcome out = sr_reduce(b, cfg);
        CHECK(out.report.accepted_updates < 100000);
        const auto chk = test::verify_outcome(b, out);
        CHECK_MESSAGE(chk.ok, chk.why);
    }
}

TEST_CASE("sr_reduce with tau < 1 accepts only strong improvements") {
    std::mt19937_64 rng(149);
    const Basis b = dual_gaussian_basis(8, rng);
    const ReductionOutcome strict = sr_reduce(b, pair_config(0.5));
    // every accepted update shrank the touched column by at least tau
    CHECK(strict.report.max_residual_ratio < std::sqrt(0.5) + 1e-12);
    const auto chk = test::verify_outcome(b, strict, true);
    CHECK_MESSAGE(chk.ok, chk.why);
}

TEST_CASE("accepted updates leave the lattice determinant alone") {
    std::mt19937_64 rng(151);
    for (int trial = 0; trial < 10; ++trial) {
        const Basis b = dual_gaussian_basis(8, rng);
        const ReductionOutcome out = sr_reduce(b, pair_config());
        auto log_det = [](const Basis& basis) {
            const GramSchmidtData gs = gram_schmidt(basis);
            double s = 0.0;
            for (Eigen::Index i = 0; i < basis.rank(); ++i) s += 0.5 * std::log(gs.norms_sq(i));
            return s;
        };
        CHECK(log_det(out.basis) == doctest::Approx(log_det(b)).epsilon(1e-9));
    }
}

TEST_CASE("check_srcvp_bounds formulas and range guard") {
    const SrBoundsReport id3 = check_srcvp_bounds(Basis(Matrix::Identity(3, 3)));
    CHECK(id3.length_ok);
    CHECK(id3.od_ok);
    CHECK(id3.angle_ok);
    CHECK(id3.lambda_1 == doctest::Approx(1.0));
    CHECK(id3.length_bound == doctest::Approx(std::sqrt(12.0 / 2.0)));

    const SrBoundsReport t09 = check_srcvp_bounds(Basis(Matrix::Identity(2, 2)), 0.9);
    CHECK(t09.length_bound == doctest::Approx(std::sqrt(8.0 / 2.6)));

    CHECK_THROWS_AS(check_srcvp_bounds(Basis(Matrix::Identity(5, 5)), 1.0), InvalidInputError);
}

TEST_CASE("cvp subroutine above the enumeration cap is refused") {
    SrConfig cfg = cvp_config();
    cfg.enumeration_cap = 4;
    CHECK_THROWS_AS(sr_reduce(Basis(Matrix::Identity(6, 6)), cfg), InvalidInputError);
    CHECK_THROWS_AS(sr_cvp_heuristic(Basis(Matrix::Identity(6, 6)), 1.0, 4), InvalidInputError);
}
