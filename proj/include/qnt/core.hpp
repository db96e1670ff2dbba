#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace qnt {

using Vector = Eigen::VectorXd;

/// A k-bit string. Bit 0 is the leftmost character of the label, so the
/// label "100" has bit(0) == 1. Width is capped at 20 (dense-table regime).
class BitString {
public:
    static constexpr int kMaxWidth = 20;

    BitString(std::uint32_t value, int width) : value_(value), width_(width) {
        if (width < 1 || width > kMaxWidth)
            throw std::invalid_argument("BitString: width must be in [1, 20]");
        if (width < 32 && value >= (std::uint32_t{1} << width))
            throw std::invalid_argument("BitString: value does not fit width");
    }

    static BitString from_label(const std::string& label);

    int width() const { return width_; }
    std::uint32_t value() const { return value_; }

    /// Bit j, counted from the left (bit 0 is the most significant).
    int bit(int j) const {
        if (j < 0 || j >= width_)
            throw std::out_of_range("BitString::bit: index out of range");
        return static_cast<int>((value_ >> (width_ - 1 - j)) & 1u);
    }

    /// Bitwise negation s̄.
    BitString negated() const {
        std::uint32_t mask = (std::uint32_t{1} << width_) - 1;
        return BitString(~value_ & mask, width_);
    }

    BitString operator^(const BitString& other) const {
        if (other.width_ != width_)
            throw std::invalid_argument("BitString: xor width mismatch");
        return BitString(value_ ^ other.value_, width_);
    }

    bool operator==(const BitString& other) const = default;

    /// Leading bit s_0.
    int head() const { return bit(0); }

    /// The string s_{1:} with the leading bit removed. Requires width >= 2.
    BitString tail() const {
        if (width_ < 2)
            throw std::invalid_argument("BitString::tail: width must be >= 2");
        std::uint32_t mask = (std::uint32_t{1} << (width_ - 1)) - 1;
        return BitString(value_ & mask, width_ - 1);
    }

    std::string label() const;

private:
    std::uint32_t value_;
    int width_;
};

/// Channel parameter vector. theta[j] is the identity (no-flip) coefficient
/// of channel j; the flip probability is 1 - theta[j].
struct ParamVector {
    Vector theta;

    explicit ParamVector(Vector t) : theta(std::move(t)) {
        if (theta.size() < 2)
            throw std::invalid_argument("ParamVector: need at least 2 channels");
        for (Eigen::Index j = 0; j < theta.size(); ++j)
            if (!(theta[j] >= 0.0 && theta[j] <= 1.0))
                throw std::invalid_argument("ParamVector: theta out of [0, 1]");
    }

    int n() const { return static_cast<int>(theta.size()); }
};

/// Binary parity (sum of bits mod 2).
int parity(const BitString& s);

/// Joint law of independent Bernoulli bits: prod_j [ s̄_j θ_j + s_j (1-θ_j) ].
/// θ_j is the probability of observing bit j as 0.
double alpha(const BitString& s, const Eigen::Ref<const Vector>& theta);

/// Analytic partial derivative ∂α/∂θ_j = (1 - 2 s_j) · Π_{i≠j} [s̄_i θ_i + s_i (1-θ_i)].
double alpha_grad(const BitString& s, const Eigen::Ref<const Vector>& theta, int j);

}  // namespace qnt
