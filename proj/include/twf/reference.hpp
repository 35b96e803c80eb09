#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twf/frey.hpp"

namespace twf::reference {

// One triple's expected row across the three tables.
struct ReferenceRow {
    Triple triple;
    uint64_t level;
    // Table 1
    uint64_t p_max;
    std::vector<uint64_t> L_minus_3;
    std::vector<std::pair<uint64_t, uint64_t>> local;  // (l, p)
    std::vector<std::pair<uint64_t, uint64_t>> kraus;  // (l, p)
    // Table 2
    int rank_c3;
    uint64_t p_irr;
    uint64_t p0;  // 0 where the table prints "-"
    std::vector<std::string> n_p0;
    std::vector<uint64_t> mod9;  // empty where the table prints "-"
    // Table 3
    std::vector<uint64_t> table3_p0;
    std::vector<uint64_t> table3_p1;
};

const std::vector<ReferenceRow>& reference_rows();
// nullptr when the triple is not one of the five.
const ReferenceRow* find_row(const Triple& t);

}  // namespace twf::reference
