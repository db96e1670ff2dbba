#include <doctest.h>

#include <random>

#include "qnt/oracle.hpp"

using namespace qnt;
using namespace qnt::oracle;

namespace {

Vector random_theta(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vector t(n);
    for (int j = 0; j < n; ++j) t[j] = unif(rng);
    return t;
}

void check_valid_density(const DensityMatrix& rho) {
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(rho);
    CHECK(solver.eigenvalues().minCoeff() > -1e-10);
}

}  // namespace

TEST_CASE("apply_bitflip basics") {
    DensityMatrix rho = DensityMatrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    CHECK((apply_bitflip(rho, 0, 1.0) - rho).cwiseAbs().maxCoeff() == 0.0);

    const DensityMatrix mixed = apply_bitflip(rho, 0, 0.58);
    CHECK(mixed(0, 0).real() == doctest::Approx(0.58));
    CHECK(mixed(1, 1).real() == doctest::Approx(0.42));

    DensityMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK((apply_bitflip(plus, 0, 0.3) - plus).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(apply_bitflip(rho, 1, 0.5), std::out_of_range);
}

TEST_CASE("noiseless circuits produce pure targets") {
    const Vector ones = Vector::Ones(3);
    const DensityMatrix ie = run_circuit({Circuit::IndependentEncoding, 0}, 3, ones);
    const Eigen::VectorXcd ghz = ghz_vector(BitString::from_label("000"));
    CHECK(std::abs((ghz.adjoint() * ie * ghz)(0, 0).real() - 1.0) < 1e-12);

    const DensityMatrix m = run_circuit({Circuit::Multicast, 0}, 3, ones);
    CHECK(m(0, 0).real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(run_circuit({Circuit::Multicast, 0}, 7, Vector::Ones(7)),
                    std::invalid_argument);
}

TEST_CASE("ghz projectors resolve identity and overlap rule holds") {
    const int n = 3;
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
        const Eigen::VectorXcd phi = ghz_vector(BitString(v, n));
        const Eigen::MatrixXcd proj = phi * phi.adjoint();
        CHECK((proj * proj - proj).cwiseAbs().maxCoeff() < 1e-12);
        total += proj;
    }
    CHECK((total - Eigen::MatrixXcd::Identity(1 << n, 1 << n)).cwiseAbs().maxCoeff() <
          1e-12);

    CHECK(ghz_overlap(BitString::from_label("000"), BitString::from_label("000")) ==
          doctest::Approx(0.25));
    CHECK(ghz_overlap(BitString::from_label("001"), BitString::from_label("000")) == 0.0);
    for (std::uint32_t sv = 0; sv < (1u << n); ++sv) {
        double sum = 0.0;
        for (std::uint32_t xv = 0; xv < (1u << n); ++xv)
            sum += ghz_overlap(BitString(xv, n), BitString(sv, n));
        CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("ghz_overlap agrees with explicit X-basis expansion") {
    // Adjudicates the printed closed form of the X-overlap rule against the
    // stated parity condition by direct linear algebra.
    const int n = 3;
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd h;
    h << r, r, r, -r;
    for (std::uint32_t sv = 0; sv < (1u << n); ++sv) {
        const Eigen::VectorXcd phi = ghz_vector(BitString(sv, n));
        for (std::uint32_t xv = 0; xv < (1u << n); ++xv) {
            // |x+> = H^{otimes n} |x>
            Eigen::VectorXcd xplus = Eigen::VectorXcd::Zero(1 << n);
            xplus[xv] = 1.0;
            DensityMatrix rho = xplus * xplus.adjoint();
            for (int q = 0; q < n; ++q) rho = apply_one_qubit(rho, q, h);
            const double overlap = (phi.adjoint() * rho * phi)(0, 0).real();
            CHECK(overlap ==
                  doctest::Approx(ghz_overlap(BitString(xv, n), BitString(sv, n)))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("circuit outputs are valid and diagonal in the claimed eigenbasis") {
    std::mt19937_64 rng(21);
    for (int n = 2; n <= 4; ++n) {
        const Vector theta = random_theta(rng, n);
        for (Circuit c : {Circuit::Multicast, Circuit::IndependentEncoding,
                          Circuit::RootIndependent, Circuit::BackAndForth}) {
            const DensityMatrix rho = run_circuit({c, 0}, n, theta);
            check_valid_density(rho);
            const bool ghz_diag =
                c == Circuit::IndependentEncoding || c == Circuit::BackAndForth;
            if (ghz_diag) {
                const int q = circuit_qubits(c, n);
                for (std::uint32_t a = 0; a < (1u << q); ++a)
                    for (std::uint32_t b = 0; b < a; ++b) {
                        const Eigen::VectorXcd pa = ghz_vector(BitString(a, q));
                        const Eigen::VectorXcd pb = ghz_vector(BitString(b, q));
                        CHECK(std::abs((pa.adjoint() * rho * pb)(0, 0)) < 1e-12);
                    }
            } else {
                DensityMatrix off = rho;
                off.diagonal().setZero();
                CHECK(off.cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("born distribution spot checks") {
    const int q = 2;
    const DensityMatrix mixed =
        DensityMatrix::Identity(1 << q, 1 << q) / static_cast<double>(1 << q);
    const auto uniform = born_distribution(mixed, MeasBasis::Z);
    CHECK((uniform.probs.array() - 0.25).abs().maxCoeff() < 1e-15);

    const Vector theta = Vector::Constant(3, 0.58);
    const auto bx = born_distribution(
        run_circuit({Circuit::BackAndForth, 0}, 3, theta), MeasBasis::X);
    CHECK(bx.prob(BitString::from_label("000")) == doctest::Approx(0.145).epsilon(1e-9));
}

TEST_CASE("closed forms match the oracle") {
    std::mt19937_64 rng(99);
    double max_dev = 0.0;
    for (int n = 2; n <= 4; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const Vector theta = random_theta(rng, n);
            const int root = static_cast<int>(rng() % n);
            for (Circuit c : {Circuit::Multicast, Circuit::IndependentEncoding,
                              Circuit::RootIndependent, Circuit::BackAndForth}) {
                for (Basis b : {Basis::Eigen, Basis::Z, Basis::X}) {
                    if (!basis_defined(c, b)) continue;
                    const auto closed = meas_dist({c, root}, b, n, theta);
                    const auto exact = born_distribution(
                        run_circuit({c, root}, n, theta), meas_basis_for(c, b));
                    max_dev = std::max(
                        max_dev, (closed.probs - exact.probs).cwiseAbs().maxCoeff());
                }
            }
        }
    }
    CHECK(max_dev < 1e-9);
}
