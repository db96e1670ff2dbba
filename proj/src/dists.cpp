#include "qnt/dists.hpp"

#include <stdexcept>

namespace qnt {

namespace {

void check_args(CircuitId circuit, int n, const Eigen::Ref<const Vector>& theta) {
    if (n < 2) throw std::invalid_argument("dists: need n >= 2 channels");
    if (theta.size() != n) throw std::invalid_argument("dists: theta size != n");
    if (circuit.root < 0 || circuit.root >= n)
        throw std::invalid_argument("dists: root out of range");
    if (dist_width(circuit.kind, n) > BitString::kMaxWidth)
        throw std::invalid_argument("dists: outcome width exceeds dense-table cap");
}

/// theta with the roles of channel 0 and channel `root` swapped.
Vector permuted_theta(const Eigen::Ref<const Vector>& theta, int root) {
    Vector t = theta;
    if (root != 0) std::swap(t[0], t[root]);
    return t;
}

double p_m(const BitString& s, const Eigen::Ref<const Vector>& theta) {
    const auto leaf = theta.tail(theta.size() - 1);
    return theta[0] * alpha(s, leaf) + (1.0 - theta[0]) * alpha(s.negated(), leaf);
}

double p_m_grad(const BitString& s, const Eigen::Ref<const Vector>& theta, int j) {
    const auto leaf = theta.tail(theta.size() - 1);
    if (j == 0) return alpha(s, leaf) - alpha(s.negated(), leaf);
    return theta[0] * alpha_grad(s, leaf, j - 1) +
           (1.0 - theta[0]) * alpha_grad(s.negated(), leaf, j - 1);
}

/// Z-basis label reduction for GHZ-diagonal states: z_{1:} XOR (z_0 · 1̃).
BitString reduce_z(const BitString& z) {
    BitString t = z.tail();
    return z.head() ? t.negated() : t;
}

double bernoulli(int bit, double theta0) { return bit ? 1.0 - theta0 : theta0; }

}  // namespace

std::string circuit_name(Circuit c) {
    switch (c) {
        case Circuit::Multicast: return "M";
        case Circuit::IndependentEncoding: return "IE";
        case Circuit::RootIndependent: return "RI";
        case Circuit::BackAndForth: return "BF";
    }
    throw std::logic_error("circuit_name: bad enum");
}

std::string basis_name(Basis b) {
    switch (b) {
        case Basis::Eigen: return "eigen";
        case Basis::Z: return "z";
        case Basis::X: return "x";
    }
    throw std::logic_error("basis_name: bad enum");
}

Circuit circuit_from_name(const std::string& name) {
    if (name == "M") return Circuit::Multicast;
    if (name == "IE") return Circuit::IndependentEncoding;
    if (name == "RI") return Circuit::RootIndependent;
    if (name == "BF") return Circuit::BackAndForth;
    throw std::invalid_argument("unknown circuit name: " + name);
}

Basis basis_from_name(const std::string& name) {
    if (name == "eigen") return Basis::Eigen;
    if (name == "z") return Basis::Z;
    if (name == "x") return Basis::X;
    throw std::invalid_argument("unknown basis name: " + name);
}

int dist_width(Circuit kind, int n) {
    switch (kind) {
        case Circuit::Multicast:
        case Circuit::RootIndependent:
            return n - 1;
        case Circuit::IndependentEncoding:
        case Circuit::BackAndForth:
            return n;
    }
    throw std::logic_error("dist_width: bad enum");
}

bool basis_defined(Circuit kind, Basis basis) {
    if (basis == Basis::Eigen) return true;
    if (basis == Basis::Z)
        return true;  // Z on M/RI coincides with Eigen
    return kind == Circuit::IndependentEncoding || kind == Circuit::BackAndForth;
}

OutcomeDistribution state_dist(CircuitId circuit, int n,
                               const Eigen::Ref<const Vector>& theta) {
    check_args(circuit, n, theta);
    const Vector t = permuted_theta(theta, circuit.root);
    const int width = dist_width(circuit.kind, n);
    OutcomeDistribution dist{width, Vector(std::int64_t{1} << width)};
    for (std::uint32_t v = 0; v < dist.probs.size(); ++v) {
        const BitString s(v, width);
        double p = 0.0;
        switch (circuit.kind) {
            case Circuit::Multicast:
                p = p_m(s, t);
                break;
            case Circuit::IndependentEncoding:
                p = alpha(s, t);
                break;
            case Circuit::RootIndependent:
                p = alpha(s, t.tail(n - 1));
                break;
            case Circuit::BackAndForth:
                p = bernoulli(s.head(), t[0]) * p_m(s.tail(), t);
                break;
        }
        dist.probs[v] = p;
    }
    return dist;
}

OutcomeDistribution meas_dist(CircuitId circuit, Basis basis, int n,
                              const Eigen::Ref<const Vector>& theta) {
    check_args(circuit, n, theta);
    if (!basis_defined(circuit.kind, basis))
        throw std::invalid_argument("meas_dist: undefined (circuit, basis) pair");
    if (basis == Basis::Eigen ||
        circuit.kind == Circuit::Multicast || circuit.kind == Circuit::RootIndependent)
        return state_dist(circuit, n, theta);

    const Vector t = permuted_theta(theta, circuit.root);
    const int width = n;
    OutcomeDistribution dist{width, Vector(std::int64_t{1} << width)};
    const double x_norm = 1.0 / static_cast<double>(std::int64_t{1} << (n - 1));
    for (std::uint32_t v = 0; v < dist.probs.size(); ++v) {
        const BitString s(v, width);
        if (basis == Basis::Z) {
            const BitString r = reduce_z(s);
            if (circuit.kind == Circuit::IndependentEncoding)
                dist.probs[v] = 0.5 * alpha(r, t.tail(n - 1));
            else
                dist.probs[v] = 0.5 * p_m(r, t);
        } else {  // X
            dist.probs[v] = bernoulli(parity(s), t[0]) * x_norm;
        }
    }
    return dist;
}

DistGradient meas_dist_grad(CircuitId circuit, Basis basis, int n,
                            const Eigen::Ref<const Vector>& theta) {
    check_args(circuit, n, theta);
    if (!basis_defined(circuit.kind, basis))
        throw std::invalid_argument("meas_dist_grad: undefined (circuit, basis) pair");
    const Vector t = permuted_theta(theta, circuit.root);
    const bool eigenlike = basis == Basis::Eigen ||
                           circuit.kind == Circuit::Multicast ||
                           circuit.kind == Circuit::RootIndependent;
    const int width = eigenlike ? dist_width(circuit.kind, n) : n;
    DistGradient grad{width,
                      Eigen::MatrixXd::Zero(std::int64_t{1} << width, n)};
    const double x_norm = 1.0 / static_cast<double>(std::int64_t{1} << (n - 1));

    for (std::uint32_t v = 0; v < (std::uint32_t{1} << width); ++v) {
        const BitString s(v, width);
        for (int j = 0; j < n; ++j) {
            double g = 0.0;
            if (eigenlike) {
                switch (circuit.kind) {
                    case Circuit::Multicast:
                        g = p_m_grad(s, t, j);
                        break;
                    case Circuit::IndependentEncoding:
                        g = alpha_grad(s, t, j);
                        break;
                    case Circuit::RootIndependent:
                        g = j == 0 ? 0.0 : alpha_grad(s, t.tail(n - 1), j - 1);
                        break;
                    case Circuit::BackAndForth: {
                        const BitString tail = s.tail();
                        const double a0 = bernoulli(s.head(), t[0]);
                        g = a0 * p_m_grad(tail, t, j);
                        if (j == 0) g += (1.0 - 2.0 * s.head()) * p_m(tail, t);
                        break;
                    }
                }
            } else if (basis == Basis::Z) {
                const BitString r = reduce_z(s);
                if (circuit.kind == Circuit::IndependentEncoding)
                    g = j == 0 ? 0.0 : 0.5 * alpha_grad(r, t.tail(n - 1), j - 1);
                else
                    g = 0.5 * p_m_grad(r, t, j);
            } else {  // X
                g = j == 0 ? (1.0 - 2.0 * parity(s)) * x_norm : 0.0;
            }
            grad.partials(v, j) = g;
        }
    }
    // Undo the root permutation: column j holds ∂p/∂θ_j in network labels.
    if (circuit.root != 0) grad.partials.col(0).swap(grad.partials.col(circuit.root));
    return grad;
}

}  // namespace qnt
