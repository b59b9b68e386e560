#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace pmcts {

// D-dimensional reward, one component per objective. D is fixed per
// planning problem; every mixed-dimension operation throws.
class RewardVector {
public:
    RewardVector() = default;

    explicit RewardVector(std::size_t dims, double value = 0.0)
        : values_(dims, value) {}

    RewardVector(std::initializer_list<double> values) : values_(values) {}

    static RewardVector zeros(std::size_t dims) { return RewardVector(dims, 0.0); }

    std::size_t dims() const { return values_.size(); }

    double operator[](std::size_t d) const { return values_[d]; }
    double& operator[](std::size_t d) { return values_[d]; }

    RewardVector& operator+=(const RewardVector& other) {
        require_same_dims(other);
        for (std::size_t d = 0; d < values_.size(); ++d) values_[d] += other.values_[d];
        return *this;
    }

    friend RewardVector operator+(RewardVector lhs, const RewardVector& rhs) {
        lhs += rhs;
        return lhs;
    }

    friend RewardVector operator-(const RewardVector& lhs, const RewardVector& rhs) {
        lhs.require_same_dims(rhs);
        RewardVector out(lhs.dims());
        for (std::size_t d = 0; d < lhs.dims(); ++d) out[d] = lhs[d] - rhs[d];
        return out;
    }

    // Element-wise scaling.
    RewardVector scaled(double factor) const {
        RewardVector out(*this);
        for (double& v : out.values_) v *= factor;
        return out;
    }

    // Adds the same offset to every component (UCB confidence radius).
    RewardVector shifted(double offset) const {
        RewardVector out(*this);
        for (double& v : out.values_) v += offset;
        return out;
    }

    bool operator==(const RewardVector& other) const { return values_ == other.values_; }

    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    void require_same_dims(const RewardVector& other) const {
        if (values_.size() != other.values_.size())
            throw std::invalid_argument("RewardVector: dimension mismatch");
    }

private:
    std::vector<double> values_;
};

} // namespace pmcts
