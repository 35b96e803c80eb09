#include "twf/config.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

#include "twf/reference.hpp"

namespace twf {

namespace {

int64_t parse_nonneg(const std::string& s, const std::string& whole) {
    if (s.empty() || s.size() > 19) throw ConfigError("bad integer in '" + whole + "'");
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw ConfigError("bad integer in '" + whole + "'");
    return std::stoll(s);
}

int64_t checked_mul(int64_t a, int64_t b, const std::string& whole) {
    __int128 r = static_cast<__int128>(a) * b;
    if (r > std::numeric_limits<int64_t>::max() || r < std::numeric_limits<int64_t>::min())
        throw ConfigError("coefficient out of range in '" + whole + "'");
    return static_cast<int64_t>(r);
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

int64_t parse_factored(const std::string& text) {
    std::string s = strip(text);
    int64_t sign = 1;
    if (!s.empty() && s[0] == '-') {
        sign = -1;
        s = s.substr(1);
    }
    if (s.empty()) throw ConfigError("empty coefficient");
    int64_t value = 1;
    size_t start = 0;
    while (true) {
        size_t star = s.find('*', start);
        std::string factor = s.substr(start, star == std::string::npos ? std::string::npos : star - start);
        size_t caret = factor.find('^');
        int64_t base = parse_nonneg(factor.substr(0, caret), text);
        int64_t exp = caret == std::string::npos ? 1 : parse_nonneg(factor.substr(caret + 1), text);
        for (int64_t i = 0; i < exp; ++i) value = checked_mul(value, base, text);
        if (star == std::string::npos) break;
        start = star + 1;
    }
    return sign * value;
}

Triple parse_triple(const std::string& text) {
    std::vector<int64_t> v;
    size_t start = 0;
    while (true) {
        size_t comma = text.find(',', start);
        v.push_back(parse_factored(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (v.size() != 3) throw ConfigError("a triple needs exactly three coefficients: '" + text + "'");
    try {
        return Triple(v[0], v[1], v[2]);
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
}

SieveConfig default_sieve_config(const Triple& t) {
    SieveConfig c;
    if (const auto* row = reference::find_row(t)) {
        c.p_max = row->p_max;
        c.p0 = row->p0;
    }
    return c;
}

void validate_config(const RunConfig& c) {
    if (c.triple && c.triple->b() % 16 != 0) throw ConfigError("triple: b must be divisible by 16");
    const auto& s = c.sieve;
    if (s.p_max < 2) throw ConfigError("p_max must be at least 2");
    if (s.irr_limit == 0 || s.local_prime_limit == 0 || s.kraus_limit == 0 || s.mod9_limit == 0 ||
        s.eisenstein_bound == 0 || s.uniqueness_bound == 0 || s.n9_local_bound == 0 || s.c3_height <= 0)
        throw ConfigError("search limits must be positive");
    if (s.table3_bound0 == 0 || s.table3_bound1 == 0) throw ConfigError("table3 bounds must be positive");
    if (s.k_max < 0) throw ConfigError("k_max must be non-negative (0 selects the default)");
    if (s.threads < 1) throw ConfigError("threads must be at least 1");
}

std::string resolve_data_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("TWF_DATA_DIR")) return env;
    return "data";
}

}  // namespace twf
