#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace saddlenet {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// Invalid input: a structural invariant of the data is violated.
/// The code names the invariant (e.g. "LowDegree", "NotOrientable").
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// A numerical procedure failed (divergence, singular system, ...).
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

inline double wrap_angle(double a) {
    // representative in (-pi, pi]
    double w = std::remainder(a, kTwoPi);
    if (w <= -kPi) w += kTwoPi;
    return w;
}

/// Distance of a-b to the nearest multiple of 2*pi.
inline double angle_dist(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace saddlenet
