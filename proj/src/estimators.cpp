#include "qnt/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qnt {

namespace {

void check_nonempty(const Dataset& data) {
    if (data.outcomes.empty())
        throw std::invalid_argument("estimators: empty dataset");
}

EstimatorResult clamp_result(double raw) {
    EstimatorResult r;
    r.raw = raw;
    r.value = std::clamp(raw, 0.0, 1.0);
    r.clamped = r.value != raw;
    return r;
}

EstimatorResult invert_bilinear(double p_one, double anchor, double eps) {
    const double denom = 1.0 - 2.0 * anchor;
    // Keep a finite best-effort value even when the guard fires, so error
    // norms downstream stay total; validity carries the provenance.
    const double raw = denom != 0.0 ? (p_one - anchor) / denom : 0.5;
    EstimatorResult r = clamp_result(raw);
    if (std::abs(denom) < eps) r.valid = false;
    return r;
}

}  // namespace

double freq_bit_one(const Dataset& data, int j) {
    check_nonempty(data);
    if (j < 0 || j >= data.width)
        throw std::out_of_range("freq_bit_one: bit index out of range");
    std::size_t count = 0;
    for (const BitString& s : data.outcomes) count += static_cast<std::size_t>(s.bit(j));
    return static_cast<double>(count) / static_cast<double>(data.outcomes.size());
}

double freq_xor(const Dataset& data, int j) {
    check_nonempty(data);
    if (j < 1 || j >= data.width)
        throw std::out_of_range("freq_xor: bit index must be in [1, width)");
    std::size_t count = 0;
    for (const BitString& s : data.outcomes)
        count += static_cast<std::size_t>(s.bit(0) ^ s.bit(j));
    return static_cast<double>(count) / static_cast<double>(data.outcomes.size());
}

double freq_parity(const Dataset& data) {
    check_nonempty(data);
    std::size_t count = 0;
    for (const BitString& s : data.outcomes) count += static_cast<std::size_t>(parity(s));
    return static_cast<double>(count) / static_cast<double>(data.outcomes.size());
}

double prob_bit_one(const OutcomeDistribution& dist, int j) {
    if (j < 0 || j >= dist.width)
        throw std::out_of_range("prob_bit_one: bit index out of range");
    double p = 0.0;
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << dist.width); ++v)
        if (BitString(v, dist.width).bit(j)) p += dist.probs[v];
    return p;
}

double prob_xor(const OutcomeDistribution& dist, int j) {
    if (j < 1 || j >= dist.width)
        throw std::out_of_range("prob_xor: bit index must be in [1, width)");
    double p = 0.0;
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << dist.width); ++v) {
        const BitString s(v, dist.width);
        if (s.bit(0) ^ s.bit(j)) p += dist.probs[v];
    }
    return p;
}

double prob_parity(const OutcomeDistribution& dist) {
    double p = 0.0;
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << dist.width); ++v)
        if (parity(BitString(v, dist.width))) p += dist.probs[v];
    return p;
}

EstimatorResult est_direct(double p_one) { return clamp_result(1.0 - p_one); }

EstimatorResult invert_m_marginal(double p_one, double theta0_hat, double eps) {
    return invert_bilinear(p_one, theta0_hat, eps);
}

EstimatorResult invert_for_theta0(double p_one, double thetaj_hat, double eps) {
    return invert_bilinear(p_one, thetaj_hat, eps);
}

}  // namespace qnt
