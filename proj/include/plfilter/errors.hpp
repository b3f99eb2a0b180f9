#ifndef PLFILTER_ERRORS_HPP
#define PLFILTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plf {

/// Error categories, doubling as CLI exit codes (0 = success, 1 = usage).
enum class ErrorCode : int {
    input = 2,                 // malformed input, violated precondition
    empty_region = 3,          // infeasible constraint set
    unbounded = 4,             // feasible region unbounded along some direction
    degenerate_region = 5,     // feasible region of dimension < n
    start_failure = 6,         // no feasible chain start found
    insufficient_data = 7,     // too few samples/rows for the estimator
    unsupported_dimension = 8, // grid quadrature beyond n = 3
    numerical = 9              // internal numerical failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }
    int exit_code() const { return static_cast<int>(code_); }

private:
    ErrorCode code_;
};

inline Error input_error(const std::string& msg) { return Error(ErrorCode::input, msg); }
inline Error empty_region_error(const std::string& msg) { return Error(ErrorCode::empty_region, msg); }
inline Error unbounded_error(const std::string& msg) { return Error(ErrorCode::unbounded, msg); }
inline Error degenerate_region_error(const std::string& msg) { return Error(ErrorCode::degenerate_region, msg); }
inline Error start_failure_error(const std::string& msg) { return Error(ErrorCode::start_failure, msg); }
inline Error insufficient_data_error(const std::string& msg) { return Error(ErrorCode::insufficient_data, msg); }
inline Error unsupported_dimension_error(const std::string& msg) { return Error(ErrorCode::unsupported_dimension, msg); }
inline Error numerical_error(const std::string& msg) { return Error(ErrorCode::numerical, msg); }

} // namespace plf

#endif // PLFILTER_ERRORS_HPP
