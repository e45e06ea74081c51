#pragma once

#include <cstdarg>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vm {

enum class ErrorKind { input, internal };

// Pipeline errors carry a kind so the C API / CLI can map them to exit codes
// (input -> 2, internal -> 3).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) {
    throw Error(ErrorKind::input, msg);
}
[[noreturn]] inline void throw_internal(const std::string& msg) {
    throw Error(ErrorKind::internal, msg);
}

// --- summary statistics ---------------------------------------------------

double mean(const std::vector<double>& v);
double sample_sd(const std::vector<double>& v);  // n-1 denominator, 0 for n < 2

// Midpoint convention for even counts.
double median(std::vector<double> v);

// Median absolute deviation (unscaled).
double mad(const std::vector<double>& v);

// --- strings ----------------------------------------------------------------

std::string trim(const std::string& s);
std::string lower(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
std::string strprintf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

// Locale-independent numeric parsing; throws input error with `what` context.
double parse_double(const std::string& s, const std::string& what);
long parse_long(const std::string& s, const std::string& what);

// --- determinism ------------------------------------------------------------

// splitmix64 step; derives independent RNG streams from (seed, stream id)
// so parallel iteration order cannot affect results.
uint64_t mix_seed(uint64_t seed, uint64_t stream);

// --- parallelism ------------------------------------------------------------

// Worker count is capped by the VOWELMETRICS_THREADS environment variable.
int worker_count();

// Runs fn(i) for i in [0, n). Results must be written to preallocated,
// index-addressed storage; the first exception is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace vm
