#include "dcid/error.hpp"
#include "dcid/icm.hpp"
#include "dcid/scenario.hpp"

#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace dcid;
using dcid::test::normal_matrix;

namespace {

struct Truth {
    Matrix z, z1, z2;
};

Truth truth(Index n, Index dim, std::uint64_t seed)
{
    return {normal_matrix(n, dim, seed), normal_matrix(n, dim, seed + 1), normal_matrix(n, dim, seed + 2)};
}

} // namespace

TEST_CASE("informativeness oracles")
{
    const Truth t = truth(10000, 1, 1);
    CHECK(informativeness(t.z, t.z) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(informativeness(t.z1, t.z) <= 0.02);
    const Truth big = truth(100000, 1, 4);
    const Matrix noisy = big.z + normal_matrix(100000, 1, 7);
    CHECK(informativeness(noisy, big.z) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("compactness oracles")
{
    const Truth t = truth(10000, 2, 10);
    CHECK(compactness(t.z, t.z) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(compactness(t.z, hstack(t.z, t.z1)) == doctest::Approx(0.5).epsilon(0.04));
    Matrix a = normal_matrix(2, 2, 13);
    a.diagonal().array() += 2.0;
    CHECK(compactness(t.z, t.z * a) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("minimality oracles")
{
    const Truth t = truth(10000, 1, 20);
    CHECK(minimality(t.z, t.z1, t.z2) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(minimality(hstack(t.z1, t.z2), t.z1, t.z2) <= 0.02);
    const Matrix replicated = hstack(hstack(t.z, t.z), t.z1);
    CHECK(minimality(replicated, t.z1, t.z2) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("score_icm oracles")
{
    const Truth t = truth(10000, 1, 30);
    const IcmScore perfect = score_icm(t.z, t.z, t.z1, t.z2);
    CHECK(perfect.icm >= 0.95);
    CHECK(perfect.n_components == 1);
    CHECK(score_icm(t.z1, t.z, t.z1, t.z2).icm <= 0.02);
    const IcmScore replicated = score_icm(hstack(hstack(t.z, t.z), t.z1), t.z, t.z1, t.z2);
    CHECK(std::abs(replicated.icm - 1.0 / 3.0) <= 0.03);
    CHECK(replicated.n_components == 3);
}

TEST_CASE("empty estimates score zero")
{
    const Truth t = truth(100, 1, 40);
    const IcmScore s = score_icm(Matrix(100, 0), t.z, t.z1, t.z2);
    CHECK(s.icm == 0.0);
    CHECK(s.informativeness == 0.0);
    CHECK(s.compactness == 0.0);
    CHECK(s.minimality == 0.0);
    CHECK(s.n_components == 0);
    CHECK_THROWS_AS(informativeness(Matrix(100, 0), t.z), ValidationError);
}

TEST_CASE("score properties on random estimates")
{
    Rng rng{111};
    for (int trial = 0; trial < 15; ++trial) {
        const Index dim = test::uniform_index(rng, 1, 3);
        const Truth t = truth(3000, dim, 500 + 10 * trial);
        const Index cols = test::uniform_index(rng, 1, 4);
        const double leak = test::uniform_real(rng, 0.0, 1.0);
        const Matrix mix = hstack(t.z, leak * t.z1) * normal_matrix(2 * dim, cols, 600 + trial);
        const Matrix z_hat = mix + 0.3 * normal_matrix(3000, cols, 700 + trial);

        const IcmScore s = score_icm(z_hat, t.z, t.z1, t.z2);
        CHECK(std::abs(s.icm - s.informativeness * s.compactness * s.minimality) <= 1e-12);
        for (double v : {s.icm, s.informativeness, s.compactness, s.minimality}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(s.icm <= std::min({s.informativeness, s.compactness, s.minimality}) + 1e-15);

        // Probes through an invertible map of z_hat see the same column space.
        Matrix a = test::random_orthogonal(cols, 800 + trial) * Vector::LinSpaced(cols, 0.5, 2.0).asDiagonal();
        const Matrix mapped = z_hat * a;
        CHECK(std::abs(informativeness(mapped, t.z) - s.informativeness) < 1e-6);
        CHECK(std::abs(minimality(mapped, t.z1, t.z2) - s.minimality) < 1e-6);

        Matrix permuted = z_hat.rowwise().reverse();
        const IcmScore p = score_icm(permuted, t.z, t.z1, t.z2);
        CHECK(std::abs(p.informativeness - s.informativeness) < 1e-9);
        CHECK(std::abs(p.compactness - s.compactness) < 1e-9);
        CHECK(std::abs(p.minimality - s.minimality) < 1e-9);
    }
}

TEST_CASE("icm is rotation invariant for estimates whitened on the scoring rows")
{
    const R2Options in_sample{.mode = ProbeMode::in_sample};
    for (int trial = 0; trial < 10; ++trial) {
        const Truth t = truth(2000, 2, 900 + 10 * trial);
        const Matrix raw = hstack(t.z, 0.5 * t.z1) * normal_matrix(4, 3, 950 + trial) +
                           0.3 * normal_matrix(2000, 3, 960 + trial);
        const Matrix centered = raw.rowwise() - raw.colwise().mean();
        const Matrix cov = centered.transpose() * centered / 2000.0;
        const Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
        const Matrix z_hat = centered * eig.operatorInverseSqrt();

        const IcmScore s = score_icm(z_hat, t.z, t.z1, t.z2, in_sample);
        const Matrix q = test::random_orthogonal(3, 970 + trial);
        const IcmScore r = score_icm(z_hat * q, t.z, t.z1, t.z2, in_sample);
        CHECK(std::abs(r.icm - s.icm) < 1e-6);
        CHECK(std::abs(r.compactness - s.compactness) < 1e-6);
    }
}

TEST_CASE("compactness depends on the basis of an anisotropic estimate")
{
    // Averaging per-column R^2 weighs columns equally, so a rotation that mixes
    // a pure-z column with a pure-noise column of different scale moves the score.
    const Truth t = truth(5000, 1, 990);
    const Matrix z_hat = hstack(t.z, 5.0 * t.z1);
    Matrix q(2, 2);
    q << std::sqrt(0.5), -std::sqrt(0.5), std::sqrt(0.5), std::sqrt(0.5);
    const double before = compactness(t.z, z_hat);
    const double after = compactness(t.z, z_hat * q);
    CHECK(before == doctest::Approx(0.5).epsilon(0.04));
    CHECK(after < 0.1);
}

TEST_CASE("dataset scoring uses the test rows")
{
    ScenarioConfig cfg;
    cfg.n_samples = 4000;
    cfg.seed = 3;
    const GroundTruthDataset ds = generate_dataset(cfg);
    const auto rows = ds.rows_in(Split::test);
    const IcmScore s = score_icm(select_rows(ds.z, rows), ds);
    CHECK(s.icm >= 0.95);
    CHECK_THROWS_AS(score_icm(ds.z, ds), ValidationError);
    CHECK(score_icm(Matrix(static_cast<Index>(rows.size()), 0), ds).icm == 0.0);
}
