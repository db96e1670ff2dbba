#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnt/estimators.hpp"
#include "qnt/fisher.hpp"
#include "qnt/oracle.hpp"
#include "qnt/protocols.hpp"

using json = nlohmann::json;

namespace {

/// Shortest round-trip decimal formatting.
std::string fmt(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::string resolve_out_path(const std::string& out) {
    if (out.empty()) return out;
    std::filesystem::path p(out);
    if (p.is_relative())
        if (const char* dir = std::getenv("QNT_OUT_DIR"))
            return (std::filesystem::path(dir) / p).string();
    return out;
}

/// Writes to the resolved path, or stdout when no path was given.
class OutputSink {
public:
    explicit OutputSink(const std::string& out) {
        if (!out.empty()) {
            path_ = resolve_out_path(out);
            file_.open(path_);
            if (!file_) throw std::runtime_error("cannot open output file: " + path_);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream file_;
};

std::vector<qnt::Protocol> parse_protocols(const std::vector<std::string>& names) {
    std::vector<qnt::Protocol> out;
    for (const std::string& name : names) {
        if (name == "all") {
            out.assign(qnt::kAllProtocols.begin(), qnt::kAllProtocols.end());
            return out;
        }
        out.push_back(qnt::protocol_from_name(name));
    }
    return out;
}

qnt::Vector parse_theta(const std::vector<double>& values) {
    qnt::Vector theta(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) theta[i] = values[i];
    return theta;
}

struct VerifyOptions {
    int n = 3;
    int draws = 100;
    double tol = 1e-9;
    std::uint64_t seed = 1;
};

int run_verify(const VerifyOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double max_dev = 0.0;
    const std::vector<std::pair<qnt::Circuit, qnt::Basis>> pairs = {
        {qnt::Circuit::Multicast, qnt::Basis::Eigen},
        {qnt::Circuit::Multicast, qnt::Basis::Z},
        {qnt::Circuit::RootIndependent, qnt::Basis::Eigen},
        {qnt::Circuit::RootIndependent, qnt::Basis::Z},
        {qnt::Circuit::IndependentEncoding, qnt::Basis::Eigen},
        {qnt::Circuit::IndependentEncoding, qnt::Basis::Z},
        {qnt::Circuit::IndependentEncoding, qnt::Basis::X},
        {qnt::Circuit::BackAndForth, qnt::Basis::Eigen},
        {qnt::Circuit::BackAndForth, qnt::Basis::Z},
        {qnt::Circuit::BackAndForth, qnt::Basis::X},
    };
    for (int d = 0; d < opt.draws; ++d) {
        qnt::Vector theta(opt.n);
        for (int j = 0; j < opt.n; ++j) theta[j] = unif(rng);
        const int root = d % opt.n;  // exercise non-zero roots too
        for (const auto& [circuit, basis] : pairs) {
            const qnt::CircuitId id{circuit, root};
            const qnt::OutcomeDistribution closed =
                qnt::meas_dist(id, basis, opt.n, theta);
            const qnt::oracle::DensityMatrix rho =
                qnt::oracle::run_circuit(id, opt.n, theta);
            const qnt::OutcomeDistribution exact = qnt::oracle::born_distribution(
                rho, qnt::oracle::meas_basis_for(circuit, basis));
            max_dev = std::max(max_dev,
                               (closed.probs - exact.probs).cwiseAbs().maxCoeff());
        }
    }
    std::cout << "verify: n=" << opt.n << " draws=" << opt.draws
              << " max deviation=" << fmt(max_dev) << " tol=" << fmt(opt.tol)
              << (max_dev < opt.tol ? " PASS" : " FAIL") << '\n';
    return max_dev < opt.tol ? 0 : 1;
}

struct SweepOptions {
    int n = 3;
    int m = 6;
    double grid_start = 0.505;
    double grid_end = 0.995;
    int points = 50;
    std::vector<std::string> protocols{"all"};
    std::string out;
    std::string format = "csv";
};

int run_sweep(const SweepOptions& opt) {
    const auto protocols = parse_protocols(opt.protocols);
    OutputSink sink(opt.out);
    json rows = json::array();
    std::ostream& os = sink.stream();
    if (opt.format == "csv")
        os << "protocol,theta_star,m_total,qcrb_trace,singular,condition_number\n";
    for (qnt::Protocol p : protocols) {
        const int steps = qnt::protocol_step_count(p, opt.n);
        const int m_used = (opt.m / steps) * steps;
        if (m_used < steps)
            throw CLI::ValidationError("sweep: m too small for " + qnt::protocol_name(p));
        const qnt::ProtocolSpec spec = qnt::plan_protocol(p, opt.n, m_used);
        for (int i = 0; i < opt.points; ++i) {
            const double t = opt.points == 1
                                 ? opt.grid_start
                                 : opt.grid_start + (opt.grid_end - opt.grid_start) *
                                                        i / (opt.points - 1);
            qnt::QcrbResult res;
            if (t <= 0.0 || t >= 1.0) {
                res.singular = true;
                res.condition_number = std::numeric_limits<double>::infinity();
            } else {
                res = qnt::qcrb_trace(
                    qnt::protocol_qfim(spec, qnt::Vector::Constant(opt.n, t)));
            }
            if (opt.format == "csv") {
                os << qnt::protocol_name(p) << ',' << fmt(t) << ',' << m_used << ','
                   << (res.singular ? "" : fmt(res.trace_inv)) << ','
                   << (res.singular ? 1 : 0) << ',' << fmt(res.condition_number)
                   << '\n';
            } else {
                json row{{"protocol", qnt::protocol_name(p)},
                         {"theta_star", t},
                         {"m_total", m_used},
                         {"singular", res.singular},
                         {"condition_number", res.condition_number}};
                if (!res.singular) row["qcrb_trace"] = res.trace_inv;
                rows.push_back(std::move(row));
            }
        }
    }
    if (opt.format == "json") os << rows.dump(2) << '\n';
    return 0;
}

struct ConvergeOptions {
    int n = 3;
    double theta_star = 0.58;
    std::vector<double> theta;
    int m_start = 36;
    int m_end = 2022;
    int m_step = 6;
    int trials = 5;
    std::uint64_t seed = 1;
    std::vector<std::string> protocols{"all"};
    std::string out;
    std::string format = "csv";
};

int run_converge(const ConvergeOptions& opt) {
    const auto protocols = parse_protocols(opt.protocols);
    const qnt::Vector theta = opt.theta.empty()
                                  ? qnt::Vector::Constant(opt.n, opt.theta_star).eval()
                                  : parse_theta(opt.theta);
    if (theta.size() != opt.n)
        throw CLI::ValidationError("converge: theta length must equal n");
    const qnt::ParamVector truth(theta);

    OutputSink sink(opt.out);
    std::ostream& os = sink.stream();
    json rows = json::array();
    std::string header = "protocol,m_total,trial,seed,err_l2";
    for (int j = 0; j < opt.n; ++j) header += ",theta_hat_" + std::to_string(j);
    header += ",invalid_count";
    if (opt.format == "csv") os << header << '\n';

    auto emit = [&](const std::string& proto, int m, long trial, std::uint64_t seed,
                    double err, const std::vector<double>& hats, int invalid) {
        if (opt.format == "csv") {
            os << proto << ',' << m << ',' << trial << ',' << seed << ',' << fmt(err);
            for (double h : hats) os << ',' << fmt(h);
            os << ',' << invalid << '\n';
        } else {
            rows.push_back(json{{"protocol", proto},
                                {"m_total", m},
                                {"trial", trial},
                                {"seed", seed},
                                {"err_l2", err},
                                {"theta_hat", hats},
                                {"invalid_count", invalid}});
        }
    };

    for (std::size_t pi = 0; pi < protocols.size(); ++pi) {
        const qnt::Protocol p = protocols[pi];
        const std::size_t proto_idx =
            static_cast<std::size_t>(std::distance(
                qnt::kAllProtocols.begin(),
                std::find(qnt::kAllProtocols.begin(), qnt::kAllProtocols.end(), p)));
        const int steps = qnt::protocol_step_count(p, opt.n);
        for (int m = opt.m_start; m <= opt.m_end; m += opt.m_step) {
            const int m_used = (m / steps) * steps;  // nearest feasible multiple
            if (m_used < steps) continue;
            const qnt::ProtocolSpec spec = qnt::plan_protocol(p, opt.n, m_used);
            double err_sum = 0.0;
            std::vector<double> hat_sum(static_cast<std::size_t>(opt.n), 0.0);
            int invalid_sum = 0;
            for (int trial = 0; trial < opt.trials; ++trial) {
                const std::uint64_t run_seed = qnt::child_seed(
                    opt.seed, proto_idx, static_cast<std::uint64_t>(trial),
                    static_cast<std::uint64_t>(m_used));
                const qnt::EstimateReport rep =
                    qnt::execute_protocol(spec, truth, run_seed);
                std::vector<double> hats;
                for (const auto& h : rep.theta_hat) hats.push_back(h.value);
                emit(qnt::protocol_name(p), m_used, trial, run_seed, rep.err_l2, hats,
                     rep.invalid_count);
                err_sum += rep.err_l2;
                for (int j = 0; j < opt.n; ++j) hat_sum[j] += hats[j];
                invalid_sum += rep.invalid_count;
            }
            std::vector<double> hat_mean;
            for (double h : hat_sum) hat_mean.push_back(h / opt.trials);
            // Mean row uses trial = -1 and seed = 0.
            emit(qnt::protocol_name(p), m_used, -1, 0, err_sum / opt.trials, hat_mean,
                 invalid_sum);
        }
    }
    if (opt.format == "json") os << rows.dump(2) << '\n';
    return 0;
}

struct EstimateOptions {
    std::string protocol = "IE_1STEP";
    std::vector<double> theta{0.58, 0.58, 0.58};
    int m = 6;
    std::uint64_t seed = 1;
    bool exact = false;
};

int run_estimate(const EstimateOptions& opt) {
    const qnt::Protocol p = qnt::protocol_from_name(opt.protocol);
    const qnt::ParamVector truth(parse_theta(opt.theta));
    const qnt::ProtocolSpec spec = qnt::plan_protocol(p, truth.n(), opt.m);
    const qnt::EstimateReport rep =
        qnt::execute_protocol(spec, truth, opt.seed, opt.exact);

    std::cout << "protocol: " << qnt::protocol_name(p) << "  m_total: " << rep.m_total
              << "  seed: " << rep.seed << (opt.exact ? "  (exact plug-in mode)" : "")
              << '\n';
    json out{{"protocol", qnt::protocol_name(p)},
             {"m_total", rep.m_total},
             {"seed", rep.seed},
             {"err_l2", rep.err_l2},
             {"invalid_count", rep.invalid_count}};
    json hats = json::array();
    for (std::size_t j = 0; j < rep.theta_hat.size(); ++j) {
        const auto& h = rep.theta_hat[j];
        std::cout << "  theta_hat_" << j << " = " << fmt(h.value)
                  << (h.valid ? "" : "  [invalid]")
                  << (h.clamped ? "  [clamped from " + fmt(h.raw) + "]" : "") << '\n';
        hats.push_back(json{{"value", h.value},
                            {"valid", h.valid},
                            {"clamped", h.clamped},
                            {"raw", h.raw}});
    }
    out["theta_hat"] = std::move(hats);
    std::cout << "  err_l2 = " << fmt(rep.err_l2) << '\n';
    std::cout << out.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tomography workbench for bit-flip quantum star networks"};
    app.require_subcommand(1);
    app.set_config("--config");

    VerifyOptions vopt;
    auto* verify = app.add_subcommand(
        "verify", "Cross-check closed-form distributions against the density-matrix oracle");
    verify->add_option("--n", vopt.n, "channel count")
        ->check(CLI::Range(2, qnt::oracle::kMaxQubits));
    verify->add_option("--draws", vopt.draws, "random theta draws")->check(CLI::PositiveNumber);
    verify->add_option("--tol", vopt.tol, "max deviation tolerance");
    verify->add_option("--seed", vopt.seed, "RNG seed");

    SweepOptions sopt;
    auto* sweep = app.add_subcommand("sweep", "QCRB trace sweep over uniform theta*");
    sweep->add_option("--n", sopt.n, "channel count")->check(CLI::Range(2, 10));
    sweep->add_option("--m", sopt.m, "copies per protocol");
    sweep->add_option("--grid-start", sopt.grid_start, "grid start");
    sweep->add_option("--grid-end", sopt.grid_end, "grid end");
    sweep->add_option("--points", sopt.points, "grid points")->check(CLI::PositiveNumber);
    sweep->add_option("--protocols", sopt.protocols, "protocol names or 'all'");
    sweep->add_option("--out", sopt.out, "output path (stdout if omitted)");
    sweep->add_option("--format", sopt.format)->check(CLI::IsMember({"csv", "json"}));

    ConvergeOptions copt;
    auto* converge =
        app.add_subcommand("converge", "Monte Carlo estimation-error convergence runs");
    converge->add_option("--n", copt.n, "channel count")->check(CLI::Range(2, 10));
    converge->add_option("--theta-star", copt.theta_star, "uniform true parameter");
    converge->add_option("--theta", copt.theta, "explicit theta vector")->delimiter(',');
    converge->add_option("--m-start", copt.m_start);
    converge->add_option("--m-end", copt.m_end);
    converge->add_option("--m-step", copt.m_step)->check(CLI::PositiveNumber);
    converge->add_option("--trials", copt.trials)->check(CLI::PositiveNumber);
    converge->add_option("--seed", copt.seed, "master seed");
    converge->add_option("--protocols", copt.protocols, "protocol names or 'all'");
    converge->add_option("--out", copt.out, "output path (stdout if omitted)");
    converge->add_option("--format", copt.format)->check(CLI::IsMember({"csv", "json"}));

    EstimateOptions eopt;
    auto* estimate = app.add_subcommand("estimate", "Run a single protocol estimation");
    estimate->add_option("--protocol", eopt.protocol, "protocol name");
    estimate->add_option("--theta", eopt.theta, "true theta vector")->delimiter(',');
    estimate->add_option("--m", eopt.m, "total copies")->check(CLI::PositiveNumber);
    estimate->add_option("--seed", eopt.seed);
    estimate->add_flag("--exact", eopt.exact, "plug-in mode with exact probabilities");

    try {
        app.parse(argc, argv);
        if (verify->parsed()) return run_verify(vopt);
        if (sweep->parsed()) return run_sweep(sopt);
        if (converge->parsed()) return run_converge(copt);
        if (estimate->parsed()) return run_estimate(eopt);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
