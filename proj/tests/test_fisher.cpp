#include <doctest.h>

#include <cmath>
#include <random>

#include "qnt/fisher.hpp"

using namespace qnt;

namespace {

FisherMatrix step_cfim(Circuit c, Basis b, int n, const Vector& theta) {
    return cfim(meas_dist({c, 0}, b, n, theta), meas_dist_grad({c, 0}, b, n, theta));
}

}  // namespace

TEST_CASE("IE eigen information is the Bernoulli diagonal") {
    const double t = 0.58;
    const Vector theta = Vector::Constant(3, t);
    const FisherMatrix f = step_cfim(Circuit::IndependentEncoding, Basis::Eigen, 3, theta);
    const double want = 1.0 / (t * (1.0 - t));
    CHECK((f - want * FisherMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(want == doctest::Approx(4.10509).epsilon(1e-4));
}

TEST_CASE("IE X informs only theta_0") {
    const double t = 0.58;
    const Vector theta = Vector::Constant(3, t);
    const FisherMatrix f = step_cfim(Circuit::IndependentEncoding, Basis::X, 3, theta);
    CHECK(f(0, 0) == doctest::Approx(1.0 / (t * (1.0 - t))).epsilon(1e-12));
    CHECK(f.bottomRightCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cfim matches finite-difference information") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.1, 0.9);
    std::uniform_int_distribution<int> pick_circuit(0, 3);
    std::uniform_int_distribution<int> pick_basis(0, 2);
    const double h = 1e-5;
    int cases = 0;
    while (cases < 20) {
        const Circuit c = static_cast<Circuit>(pick_circuit(rng));
        const Basis b = static_cast<Basis>(pick_basis(rng));
        if (!basis_defined(c, b)) continue;
        ++cases;
        const int n = 3;
        Vector theta(n);
        for (int j = 0; j < n; ++j) theta[j] = unif(rng);

        const FisherMatrix f = step_cfim(c, b, n, theta);
        // Rebuild the distribution at perturbed theta and form the CFIM from
        // finite-difference gradients.
        const auto base = meas_dist({c, 0}, b, n, theta);
        Eigen::MatrixXd fd(base.probs.size(), n);
        for (int j = 0; j < n; ++j) {
            Vector up = theta, dn = theta;
            up[j] += h;
            dn[j] -= h;
            fd.col(j) = (meas_dist({c, 0}, b, n, up).probs -
                         meas_dist({c, 0}, b, n, dn).probs) /
                        (2 * h);
        }
        FisherMatrix ref = FisherMatrix::Zero(n, n);
        for (Eigen::Index s = 0; s < base.probs.size(); ++s) {
            if (base.probs[s] <= 1e-14) continue;
            ref.noalias() += fd.row(s).transpose() * fd.row(s) / base.probs[s];
        }
        CHECK((f - ref).cwiseAbs().maxCoeff() / std::max(ref.cwiseAbs().maxCoeff(), 1.0) <
              1e-5);
    }
}

TEST_CASE("protocol_qfim closed forms and linearity") {
    const double t = 0.58;
    const Vector theta = Vector::Constant(3, t);

    const ProtocolSpec ie1 = plan_protocol(Protocol::IE_1STEP, 3, 6);
    const FisherMatrix f1 = protocol_qfim(ie1, theta);
    CHECK((f1 - (6.0 / (t * (1 - t))) * FisherMatrix::Identity(3, 3))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    CHECK(qcrb_trace(f1).trace_inv == doctest::Approx(0.1218).epsilon(1e-10));

    const ProtocolSpec ie2 = plan_protocol(Protocol::IE_2STEP, 3, 6);
    const FisherMatrix f2 = protocol_qfim(ie2, theta);
    CHECK((f2 - (3.0 / (t * (1 - t))) * FisherMatrix::Identity(3, 3))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    CHECK(qcrb_trace(f2).trace_inv == doctest::Approx(0.2436).epsilon(1e-10));

    // Scaling m scales F linearly.
    const ProtocolSpec ie1_big = plan_protocol(Protocol::IE_1STEP, 3, 60);
    CHECK((protocol_qfim(ie1_big, theta) - 10.0 * f1).cwiseAbs().maxCoeff() < 1e-8);

    // Additivity across steps.
    ProtocolSpec z_only = ie2, x_only = ie2;
    z_only.steps = {ie2.steps[0]};
    x_only.steps = {ie2.steps[1]};
    CHECK((protocol_qfim(z_only, theta) + protocol_qfim(x_only, theta) - f2)
              .cwiseAbs()
              .maxCoeff() == 0.0);

    CHECK_THROWS_AS(protocol_qfim(ie1, Vector::Ones(3)), std::invalid_argument);
}

TEST_CASE("qcrb_trace diagnostics") {
    CHECK(qcrb_trace(FisherMatrix::Identity(3, 3)).trace_inv == doctest::Approx(3.0));

    const FisherMatrix f = 6.0 * 4.105090312162734 * FisherMatrix::Identity(3, 3);
    CHECK(qcrb_trace(f).trace_inv == doctest::Approx(0.1218).epsilon(1e-10));

    // M-based protocols are singular at theta* = 1/2.
    const ProtocolSpec rim = plan_protocol(Protocol::RIM_2STEP, 3, 6);
    const QcrbResult at_half = qcrb_trace(protocol_qfim(rim, Vector::Constant(3, 0.5)));
    CHECK(at_half.singular);
}

TEST_CASE("cfim outputs are symmetric PSD") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    for (Protocol p : kAllProtocols) {
        Vector theta(3);
        for (int j = 0; j < 3; ++j) theta[j] = unif(rng);
        const FisherMatrix f =
            protocol_qfim(plan_protocol(p, 3, 6 * protocol_step_count(p, 3)), theta);
        CHECK((f - f.transpose()).cwiseAbs().maxCoeff() < 1e-10);
        Eigen::SelfAdjointEigenSolver<FisherMatrix> solver(f);
        CHECK(solver.eigenvalues().minCoeff() > -1e-9);
    }
}

TEST_CASE("reflection symmetry of the QCRB trace") {
    for (Protocol p : kAllProtocols) {
        const ProtocolSpec spec = plan_protocol(p, 3, 6 * protocol_step_count(p, 3));
        for (double t : {0.58, 0.7, 0.9}) {
            const QcrbResult a = qcrb_trace(protocol_qfim(spec, Vector::Constant(3, t)));
            const QcrbResult b =
                qcrb_trace(protocol_qfim(spec, Vector::Constant(3, 1.0 - t)));
            REQUIRE_FALSE(a.singular);
            REQUIRE_FALSE(b.singular);
            CHECK(std::abs(a.trace_inv - b.trace_inv) < 1e-8);
        }
    }
}
