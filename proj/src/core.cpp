#include "qnt/core.hpp"

namespace qnt {

BitString BitString::from_label(const std::string& label) {
    if (label.empty() || label.size() > kMaxWidth)
        throw std::invalid_argument("BitString::from_label: bad label length");
    std::uint32_t v = 0;
    for (char c : label) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("BitString::from_label: non-binary digit");
        v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return BitString(v, static_cast<int>(label.size()));
}

std::string BitString::label() const {
    std::string out(static_cast<std::size_t>(width_), '0');
    for (int j = 0; j < width_; ++j)
        out[static_cast<std::size_t>(j)] = static_cast<char>('0' + bit(j));
    return out;
}

int parity(const BitString& s) {
    int acc = 0;
    for (int j = 0; j < s.width(); ++j) acc ^= s.bit(j);
    return acc;
}

double alpha(const BitString& s, const Eigen::Ref<const Vector>& theta) {
    if (theta.size() != s.width())
        throw std::invalid_argument("alpha: width mismatch");
    double p = 1.0;
    for (int j = 0; j < s.width(); ++j)
        p *= s.bit(j) ? (1.0 - theta[j]) : theta[j];
    return p;
}

double alpha_grad(const BitString& s, const Eigen::Ref<const Vector>& theta, int j) {
    if (theta.size() != s.width())
        throw std::invalid_argument("alpha_grad: width mismatch");
    if (j < 0 || j >= s.width())
        throw std::out_of_range("alpha_grad: parameter index out of range");
    double p = 1.0;
    for (int i = 0; i < s.width(); ++i) {
        if (i == j) continue;
        p *= s.bit(i) ? (1.0 - theta[i]) : theta[i];
    }
    return (1.0 - 2.0 * s.bit(j)) * p;
}

}  // namespace qnt
