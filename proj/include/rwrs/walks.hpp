#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

enum class WalkKind {
    stable_increments,   // i.i.d. integer increments in the stable domain
    correlated_gaussian, // S_n = floor(X_1 + ... + X_n), X fractional Gaussian noise
};

/// Lattice walk specification.  For stable increments the step law is a
/// continuous stable draw rounded to the nearest integer; at index == 2 the
/// simple_symmetric flag selects +-1 steps with equal probability instead.
struct WalkSpec {
    WalkKind kind = WalkKind::stable_increments;
    StableParams step_law;        // stable_increments only
    bool simple_symmetric = false; // requires step_law.index == 2
    double hurst = 0.5;           // correlated_gaussian only, in (0, 1)

    void validate() const;
    /// Exponent e of the space scaling a_n = n^e: 1/index for jump walks,
    /// the Hurst index for the correlated Gaussian walk.
    double scaling_exponent() const;
};

/// Nearest-lattice-site positions S_0 = 0, S_1, ..., S_n.
struct WalkPath {
    std::vector<std::int64_t> positions;

    std::size_t length() const { return positions.empty() ? 0 : positions.size() - 1; }
};

/// The space renormalisation a_n = n^exponent (slowly varying part == 1).
struct ScalingLaw {
    double exponent = 0.5;

    double operator()(double n) const;
};

ScalingLaw scaling_for(const WalkSpec& spec);

WalkPath generate_walk(const WalkSpec& spec, std::size_t n, const SeedSpec& seed);

/// c mutually independent paths; member i consumes stream (master, base id + i).
std::vector<WalkPath> generate_walk_family(const WalkSpec& spec, std::size_t n,
                                           std::size_t count, const SeedSpec& seed);

/// Positions floor(x_1), floor(x_1 + x_2), ... from real-valued increments,
/// prefixed with S_0 = 0.  Exposed so the discretisation is testable on its own.
WalkPath path_from_real_increments(const std::vector<double>& increments);

} // namespace rwrs
