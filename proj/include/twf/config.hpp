#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twf/frey.hpp"
#include "twf/sieve.hpp"

namespace twf {

struct ConfigError : Error {
    using Error::Error;
};

// "25,16,279841", "5^2,2^4,23^4" or "11,2^4,5^2*17^2"; a leading '-' negates.
Triple parse_triple(const std::string& text);

// Signed integer product of p^e factors joined by '*'.
int64_t parse_factored(const std::string& text);

constexpr uint64_t kCiTable3Bound = 5000;

struct RunConfig {
    std::optional<Triple> triple;
    int n = 0;        // exponent for localsolve
    uint64_t p = 0;   // prime for localsolve / parity
    SieveConfig sieve;
    std::string data_dir;
    std::string output;
    bool full_scan = false;  // Table 3 to the proof bounds instead of kCiTable3Bound
};

// Reference p_max and p0 for the five triples, generic defaults otherwise.
SieveConfig default_sieve_config(const Triple& t);

// Throws ConfigError naming the first bad field.
void validate_config(const RunConfig& c);

// Flag value, else $TWF_DATA_DIR, else "data".
std::string resolve_data_dir(const std::string& flag);

}  // namespace twf
