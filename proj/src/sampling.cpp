#include "qnt/sampling.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qnt {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Dataset draw_samples(const OutcomeDistribution& dist, int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("draw_samples: need m >= 1");
    const auto size = dist.probs.size();
    std::vector<double> cdf(static_cast<std::size_t>(size));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < size; ++i) {
        acc += dist.probs[i];
        cdf[static_cast<std::size_t>(i)] = acc;
    }
    cdf.back() = 1.0;  // guard against rounding in the last bin

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Dataset data;
    data.width = dist.width;
    data.seed = seed;
    data.outcomes.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double u = unif(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto idx = static_cast<std::uint32_t>(it - cdf.begin());
        data.outcomes.emplace_back(std::min(idx, static_cast<std::uint32_t>(size - 1)),
                                   dist.width);
    }
    return data;
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t protocol_idx,
                         std::uint64_t trial_idx, std::uint64_t step_idx) {
    std::uint64_t z = splitmix64(master);
    z = splitmix64(z ^ protocol_idx);
    z = splitmix64(z ^ trial_idx);
    z = splitmix64(z ^ step_idx);
    return z;
}

OutcomeDistribution empirical_dist(const Dataset& data) {
    if (data.outcomes.empty())
        throw std::invalid_argument("empirical_dist: empty dataset");
    OutcomeDistribution dist{data.width,
                             Vector::Zero(std::int64_t{1} << data.width)};
    const double w = 1.0 / static_cast<double>(data.outcomes.size());
    for (const BitString& s : data.outcomes) dist.probs[s.value()] += w;
    return dist;
}

void write_dataset(std::ostream& os, const Dataset& data) {
    os << "# " << circuit_name(data.circuit.kind) << ' ' << basis_name(data.basis)
       << ' ' << data.width << ' ' << data.outcomes.size() << ' ' << data.seed
       << ' ' << data.circuit.root << '\n';
    for (const BitString& s : data.outcomes) os << s.label() << '\n';
}

Dataset read_dataset(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.size() < 2 || header[0] != '#')
        throw std::runtime_error("read_dataset: missing header");
    std::istringstream hs(header.substr(1));
    std::string circuit, basis;
    int width = 0, root = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    if (!(hs >> circuit >> basis >> width >> m >> seed >> root))
        throw std::runtime_error("read_dataset: malformed header");
    Dataset data;
    data.circuit = CircuitId{circuit_from_name(circuit), root};
    data.basis = basis_from_name(basis);
    data.width = width;
    data.seed = seed;
    data.outcomes.reserve(m);
    std::string line;
    while (data.outcomes.size() < m && std::getline(is, line)) {
        if (line.empty()) continue;
        BitString s = BitString::from_label(line);
        if (s.width() != width) throw std::runtime_error("read_dataset: width mismatch");
        data.outcomes.push_back(s);
    }
    if (data.outcomes.size() != m)
        throw std::runtime_error("read_dataset: truncated outcome list");
    return data;
}

}  // namespace qnt
