#include "twf/reference.hpp"

namespace twf::reference {

const std::vector<ReferenceRow>& reference_rows() {
    static const std::vector<ReferenceRow> rows = {
        {Triple(25, 16, 279841), 115, 3, {5}, {{5, 11}}, {}, 2, 73, 0, {"d=1"}, {2}, {73, 163}, {}},
        {Triple(390625, 16, 37), 185, 3, {5, 19}, {{19, 19}}, {{5, 31}}, 1, 73, 73, {"d=1*"}, {2},
         {73, 307, 541}, {37}},
        {Triple(78125, 16, 2488651484819LL), 295, 3, {5, 7}, {{5, 5}}, {{7, 43}}, 2, 37, 37, {"d=6"}, {13},
         {37, 73, 163, 181, 199, 541}, {}},
        {Triple(7, 16, 506623120463LL), 329, 23, {5}, {}, {{5, 11}, {5, 41}}, 2, 109, 13, {"d=5", "d=6"}, {5, 5},
         {}, {109}},
        {Triple(11, 16, 7225), 935, 71, {5, 7}, {{5, 5}}, {{7, 29}}, 2, 37, 37, {"d=11*"}, {}, {37, 73, 307, 541},
         {}},
    };
    return rows;
}

const ReferenceRow* find_row(const Triple& t) {
    for (const auto& r : reference_rows())
        if (r.triple == t) return &r;
    return nullptr;
}

}  // namespace twf::reference
