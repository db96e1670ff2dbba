#include "qnt/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qnt::oracle {

namespace {

int qubit_count(const DensityMatrix& rho) {
    const auto dim = rho.rows();
    if (dim < 2 || rho.cols() != dim || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("oracle: density matrix dimension not a power of two");
    int q = 0;
    for (auto d = dim; d > 1; d >>= 1) ++q;
    if (q > kMaxQubits) throw std::invalid_argument("oracle: qubit cap exceeded");
    return q;
}

Eigen::Matrix2cd gate_h() {
    Eigen::Matrix2cd h;
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    return h;
}

Eigen::Matrix2cd gate_x() {
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    return x;
}

Eigen::Matrix2cd gate_z() {
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    return z;
}

/// Full-dimension operator acting with `gate` on one qubit of q.
Eigen::MatrixXcd embed_one_qubit(int q, int qubit, const Eigen::Matrix2cd& gate) {
    // Build gate_0 ⊗ gate_1 ⊗ ... so qubit 0 is the most significant bit,
    // matching the label convention used everywhere else.
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = q - 1; k >= 0; --k) {
        const Eigen::Matrix2cd& factor =
            k == qubit ? gate : Eigen::Matrix2cd::Identity();
        Eigen::MatrixXcd next(op.rows() * 2, op.cols() * 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                next.block(a * op.rows(), b * op.cols(), op.rows(), op.cols()) =
                    factor(a, b) * op;
        op = std::move(next);
    }
    return op;
}

DensityMatrix fresh_zero_state(int q) {
    DensityMatrix rho = DensityMatrix::Zero(std::int64_t{1} << q, std::int64_t{1} << q);
    rho(0, 0) = 1.0;
    return rho;
}

std::vector<int> range_targets(int from, int to_exclusive) {
    std::vector<int> t;
    for (int k = from; k < to_exclusive; ++k) t.push_back(k);
    return t;
}

Vector permuted_theta(const Eigen::Ref<const Vector>& theta, int root) {
    Vector t = theta;
    if (root != 0) std::swap(t[0], t[root]);
    return t;
}

}  // namespace

int circuit_qubits(Circuit kind, int n) { return dist_width(kind, n); }

MeasBasis meas_basis_for(Circuit kind, Basis basis) {
    if (!basis_defined(kind, basis))
        throw std::invalid_argument("oracle: undefined (circuit, basis) pair");
    const bool ghz_diag =
        kind == Circuit::IndependentEncoding || kind == Circuit::BackAndForth;
    switch (basis) {
        case Basis::Eigen: return ghz_diag ? MeasBasis::GHZ : MeasBasis::Z;
        case Basis::Z: return MeasBasis::Z;
        case Basis::X: return MeasBasis::X;
    }
    throw std::logic_error("meas_basis_for: bad enum");
}

DensityMatrix apply_bitflip(const DensityMatrix& rho, int qubit, double theta_e) {
    const int q = qubit_count(rho);
    if (qubit < 0 || qubit >= q) throw std::out_of_range("apply_bitflip: qubit index");
    const Eigen::MatrixXcd x = embed_one_qubit(q, qubit, gate_x());
    return theta_e * rho + (1.0 - theta_e) * (x * rho * x.adjoint());
}

DensityMatrix apply_one_qubit(const DensityMatrix& rho, int qubit,
                              const Eigen::Matrix2cd& gate) {
    const int q = qubit_count(rho);
    if (qubit < 0 || qubit >= q) throw std::out_of_range("apply_one_qubit: qubit index");
    const Eigen::MatrixXcd g = embed_one_qubit(q, qubit, gate);
    return g * rho * g.adjoint();
}

DensityMatrix apply_cnot(const DensityMatrix& rho, int control,
                         const std::vector<int>& targets) {
    const int q = qubit_count(rho);
    const auto dim = rho.rows();
    // Permutation matrix: basis state i maps to i with targets flipped when
    // the control bit of i is set. Qubit 0 is the leftmost label bit.
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        std::int64_t out = i;
        if ((i >> (q - 1 - control)) & 1)
            for (int t : targets) out ^= std::int64_t{1} << (q - 1 - t);
        u(out, i) = 1.0;
    }
    return u * rho * u.adjoint();
}

DensityMatrix run_circuit(CircuitId circuit, int n, const Eigen::Ref<const Vector>& theta) {
    if (n < 2 || n > kMaxQubits)
        throw std::invalid_argument("run_circuit: n outside oracle range [2, 6]");
    if (theta.size() != n) throw std::invalid_argument("run_circuit: theta size != n");
    const Vector t = permuted_theta(theta, circuit.root);
    const int q = circuit_qubits(circuit.kind, n);
    DensityMatrix rho = fresh_zero_state(q);

    switch (circuit.kind) {
        case Circuit::Multicast: {
            // Root sends |0> through channel 0; center fans out with a
            // multi-target CNOT; each output transits a leaf channel.
            rho = apply_bitflip(rho, 0, t[0]);
            rho = apply_cnot(rho, 0, range_targets(1, q));
            for (int k = 0; k < q; ++k) rho = apply_bitflip(rho, k, t[k + 1]);
            break;
        }
        case Circuit::RootIndependent: {
            // Root sends |+> through channel 0 (X-invariant); center applies
            // H and fans out. Qubit labels follow the leaves v_1..v_{n-1}.
            rho = apply_one_qubit(rho, 0, gate_h());
            rho = apply_bitflip(rho, 0, t[0]);
            rho = apply_one_qubit(rho, 0, gate_h());
            rho = apply_cnot(rho, 0, range_targets(1, q));
            for (int k = 0; k < q; ++k) rho = apply_bitflip(rho, k, t[k + 1]);
            break;
        }
        case Circuit::IndependentEncoding: {
            // Root keeps qubit 0 of a Bell pair and applies XHX; qubit 1
            // transits channel 0, gets ZHZ at the center, and seeds the fan-out.
            rho = apply_one_qubit(rho, 0, gate_h());
            rho = apply_cnot(rho, 0, {1});
            const Eigen::Matrix2cd xhx = gate_x() * gate_h() * gate_x();
            const Eigen::Matrix2cd zhz = gate_z() * gate_h() * gate_z();
            rho = apply_one_qubit(rho, 0, xhx);
            rho = apply_bitflip(rho, 1, t[0]);
            rho = apply_one_qubit(rho, 1, zhz);
            if (q > 2) rho = apply_cnot(rho, 1, range_targets(2, q));
            for (int k = 1; k < q; ++k) rho = apply_bitflip(rho, k, t[k]);
            break;
        }
        case Circuit::BackAndForth: {
            // Root's qubit transits channel 0, seeds a GHZ circuit at the
            // center, and returns through channel 0; leaves get the targets.
            rho = apply_bitflip(rho, 0, t[0]);
            rho = apply_one_qubit(rho, 0, gate_h());
            rho = apply_cnot(rho, 0, range_targets(1, q));
            rho = apply_bitflip(rho, 0, t[0]);
            for (int k = 1; k < q; ++k) rho = apply_bitflip(rho, k, t[k]);
            break;
        }
    }
    return rho;
}

Eigen::VectorXcd ghz_vector(const BitString& s) {
    const int q = s.width();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(std::int64_t{1} << q);
    // |Phi_s> = (|0 s_{1:}> + (-1)^{s_0} |1 s̄_{1:}>) / sqrt(2)
    const BitString tail = s.tail();
    const std::int64_t lo = tail.value();
    const std::int64_t hi = (std::int64_t{1} << (q - 1)) | tail.negated().value();
    const double r = 1.0 / std::sqrt(2.0);
    v[lo] = r;
    v[hi] = s.head() ? -r : r;
    return v;
}

double ghz_overlap(const BitString& x, const BitString& s) {
    if (x.width() != s.width())
        throw std::invalid_argument("ghz_overlap: width mismatch");
    if (parity(x) != s.head()) return 0.0;
    return 1.0 / static_cast<double>(std::int64_t{1} << (x.width() - 1));
}

OutcomeDistribution born_distribution(const DensityMatrix& rho, MeasBasis basis) {
    const int q = qubit_count(rho);
    DensityMatrix work = rho;
    if (basis == MeasBasis::X)
        for (int k = 0; k < q; ++k) work = apply_one_qubit(work, k, gate_h());

    OutcomeDistribution dist{q, Vector(std::int64_t{1} << q)};
    if (basis == MeasBasis::GHZ) {
        for (std::uint32_t v = 0; v < (std::uint32_t{1} << q); ++v) {
            const Eigen::VectorXcd phi = ghz_vector(BitString(v, q));
            dist.probs[v] = (phi.adjoint() * work * phi)(0, 0).real();
        }
    } else {
        dist.probs = work.diagonal().real();
    }
    return dist;
}

}  // namespace qnt::oracle
