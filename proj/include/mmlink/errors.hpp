#pragma once

#include <stdexcept>
#include <string>

namespace mmlink {

// Bad scalar input: non-finite argument, nonpositive physical quantity, empty grid, ...
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Integer grouping constraint violated (user/subcarrier counts do not tile).
struct GroupingError : std::runtime_error {
    explicit GroupingError(const std::string& what) : std::runtime_error(what) {}
};

// Operating-regime violation (e.g. at least as many users as antennas on a subcarrier).
struct RegimeError : std::runtime_error {
    explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive integration ran out of subdivisions; carries the best estimate so far.
struct QuadratureError : std::runtime_error {
    double best_estimate;
    double error_bound;
    QuadratureError(const std::string& what, double estimate, double bound)
        : std::runtime_error(what), best_estimate(estimate), error_bound(bound) {}
};

// Pilot roster / allocation plan inconsistent with the configuration it is used with.
struct PlanError : std::runtime_error {
    explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

// Rank-deficient estimate under zero-forcing, or every trial failed.
struct SingularityError : std::runtime_error {
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

// File system failure while reading configs or writing results.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mmlink
