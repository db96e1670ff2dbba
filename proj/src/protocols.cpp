#include "qnt/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnt {

namespace {

struct StepStats {
    ProtocolStep step;
    OutcomeDistribution table;  // exact or empirical
};

/// Outcome position holding the bit measured at end-node `node` for an RI
/// dataset rooted at `root` (parameter indices 0 and root are swapped).
int ri_position_of_node(int node, int root) {
    if (node == root) throw std::logic_error("ri_position_of_node: node is the root");
    if (node == 0) return root - 1;
    return node - 1;
}

EstimatorResult clamp_mean(const std::vector<double>& raws, bool valid) {
    double mean = 0.0;
    for (double r : raws) mean += r;
    mean /= static_cast<double>(raws.size());
    EstimatorResult out;
    out.raw = mean;
    out.value = std::clamp(mean, 0.0, 1.0);
    out.clamped = out.value != mean;
    out.valid = valid;
    return out;
}

}  // namespace

std::string protocol_name(Protocol p) {
    switch (p) {
        case Protocol::IE_1STEP: return "IE_1STEP";
        case Protocol::BF_1STEP: return "BF_1STEP";
        case Protocol::IE_2STEP: return "IE_2STEP";
        case Protocol::BF_2STEP: return "BF_2STEP";
        case Protocol::RIM_2STEP: return "RIM_2STEP";
        case Protocol::RI_NSTEP: return "RI_NSTEP";
    }
    throw std::logic_error("protocol_name: bad enum");
}

Protocol protocol_from_name(const std::string& name) {
    for (Protocol p : kAllProtocols)
        if (protocol_name(p) == name) return p;
    throw std::invalid_argument("unknown protocol name: " + name);
}

int protocol_step_count(Protocol p, int n) {
    switch (p) {
        case Protocol::IE_1STEP:
        case Protocol::BF_1STEP: return 1;
        case Protocol::IE_2STEP:
        case Protocol::BF_2STEP:
        case Protocol::RIM_2STEP: return 2;
        case Protocol::RI_NSTEP: return n;
    }
    throw std::logic_error("protocol_step_count: bad enum");
}

ProtocolSpec plan_protocol(Protocol id, int n, int m_total) {
    if (n < 2) throw std::invalid_argument("plan_protocol: need n >= 2");
    const int steps = protocol_step_count(id, n);
    if (m_total < steps || m_total % steps != 0)
        throw std::invalid_argument("plan_protocol: m_total for " + protocol_name(id) +
                                    " must be a positive multiple of " +
                                    std::to_string(steps));
    const int m_i = m_total / steps;
    ProtocolSpec spec{id, n, m_total, {}};
    switch (id) {
        case Protocol::IE_1STEP:
            spec.steps = {{{Circuit::IndependentEncoding, 0}, Basis::Eigen, m_i}};
            break;
        case Protocol::BF_1STEP:
            spec.steps = {{{Circuit::BackAndForth, 0}, Basis::Eigen, m_i}};
            break;
        case Protocol::IE_2STEP:
            spec.steps = {{{Circuit::IndependentEncoding, 0}, Basis::Z, m_i},
                          {{Circuit::IndependentEncoding, 0}, Basis::X, m_i}};
            break;
        case Protocol::BF_2STEP:
            spec.steps = {{{Circuit::BackAndForth, 0}, Basis::Z, m_i},
                          {{Circuit::BackAndForth, 0}, Basis::X, m_i}};
            break;
        case Protocol::RIM_2STEP:
            spec.steps = {{{Circuit::RootIndependent, 0}, Basis::Eigen, m_i},
                          {{Circuit::Multicast, 0}, Basis::Eigen, m_i}};
            break;
        case Protocol::RI_NSTEP:
            for (int r = 0; r < n; ++r)
                spec.steps.push_back({{Circuit::RootIndependent, r}, Basis::Eigen, m_i});
            break;
    }
    return spec;
}

EstimateReport execute_protocol(const ProtocolSpec& spec, const ParamVector& theta_true,
                                std::uint64_t seed, bool exact) {
    const int n = spec.n;
    if (theta_true.n() != n)
        throw std::invalid_argument("execute_protocol: theta size != spec.n");

    std::vector<StepStats> stats;
    stats.reserve(spec.steps.size());
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        const ProtocolStep& step = spec.steps[i];
        OutcomeDistribution table =
            meas_dist(step.circuit, step.basis, n, theta_true.theta);
        if (!exact) {
            Dataset data =
                draw_samples(table, step.copies, child_seed(seed, 0, 0, i));
            data.circuit = step.circuit;
            data.basis = step.basis;
            table = empirical_dist(data);
        }
        stats.push_back({step, std::move(table)});
    }

    std::vector<EstimatorResult> hat(static_cast<std::size_t>(n));
    switch (spec.id) {
        case Protocol::IE_1STEP:
            for (int j = 0; j < n; ++j)
                hat[j] = est_direct(prob_bit_one(stats[0].table, j));
            break;
        case Protocol::BF_1STEP: {
            hat[0] = est_direct(prob_bit_one(stats[0].table, 0));
            for (int j = 1; j < n; ++j)
                hat[j] = invert_m_marginal(prob_bit_one(stats[0].table, j), hat[0].value);
            break;
        }
        case Protocol::IE_2STEP: {
            const auto& z = stats[0].table;
            const auto& x = stats[1].table;
            hat[0] = est_direct(prob_parity(x));
            for (int j = 1; j < n; ++j) hat[j] = est_direct(prob_xor(z, j));
            break;
        }
        case Protocol::BF_2STEP: {
            const auto& z = stats[0].table;
            const auto& x = stats[1].table;
            hat[0] = est_direct(prob_parity(x));
            for (int j = 1; j < n; ++j)
                hat[j] = invert_m_marginal(prob_xor(z, j), hat[0].value);
            break;
        }
        case Protocol::RIM_2STEP: {
            const auto& ri = stats[0].table;
            const auto& mc = stats[1].table;
            for (int j = 1; j < n; ++j)
                hat[j] = est_direct(prob_bit_one(ri, j - 1));
            std::vector<double> valid_raws, all_raws;
            for (int j = 1; j < n; ++j) {
                const EstimatorResult cand =
                    invert_for_theta0(prob_bit_one(mc, j - 1), hat[j].value);
                all_raws.push_back(cand.raw);
                if (cand.valid) valid_raws.push_back(cand.raw);
            }
            hat[0] = valid_raws.empty() ? clamp_mean(all_raws, false)
                                        : clamp_mean(valid_raws, true);
            break;
        }
        case Protocol::RI_NSTEP: {
            for (int j = 0; j < n; ++j) {
                double weighted = 0.0;
                double copies = 0.0;
                for (const StepStats& s : stats) {
                    const int root = s.step.circuit.root;
                    if (root == j) continue;
                    weighted += prob_bit_one(s.table, ri_position_of_node(j, root)) *
                                s.step.copies;
                    copies += s.step.copies;
                }
                hat[j] = est_direct(weighted / copies);
            }
            break;
        }
    }

    EstimateReport report;
    report.id = spec.id;
    report.m_total = spec.m_total;
    report.seed = seed;
    report.theta_hat = std::move(hat);
    double err2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = report.theta_hat[j].value - theta_true.theta[j];
        err2 += d * d;
        if (!report.theta_hat[j].valid) ++report.invalid_count;
    }
    report.err_l2 = std::sqrt(err2);
    return report;
}

}  // namespace qnt
