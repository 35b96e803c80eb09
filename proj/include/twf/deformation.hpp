#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twf/elliptic.hpp"
#include "twf/newforms.hpp"
#include "twf/poly.hpp"

namespace twf {

struct LocalComponent {
    uint64_t l = 0;
    int k = 0;
    ModPoly component;  // monic, coefficients mod l^k
    ModPoly factor;     // irreducible factor mod l
    int multiplicity = 1;
};

// Coprime factorization of a monic f over Z/l^k, one component per distinct
// irreducible factor mod l, by quadratic Hensel lifting.
std::vector<LocalComponent> lift_components(const IntPoly& f, uint64_t l, int k);

// Roots mod l^r of the component (ring maps Z_l[t]/(component) -> Z/l^r).
std::vector<uint64_t> ring_maps_to(const LocalComponent& c, int r);

struct Assertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ScenarioVerdict {
    std::vector<Assertion> assertions;
    std::vector<std::string> warnings;
    std::vector<std::string> assumptions;
    std::vector<std::string> skipped;

    bool passed() const;
    // First failed assertion name, empty if none.
    std::string first_failure() const;
};

// Fixed input polynomials and curve, kept verbatim.
namespace fixtures {
IntPoly level71_cubic_a();  // t^3 - 5t^2 - 2t + 25
IntPoly level71_cubic_b();  // t^3 + 3t^2 - 2t - 7
IntPoly level935_hecke_poly();  // minimal polynomial of a_3 on the degree-11 class
CurveQ curve_142e1();  // y^2 + xy = x^3 - x^2 - 2626x + 52244
}  // namespace fixtures

struct Level71Options {
    int k = 3;
    IntPoly cubic_a = fixtures::level71_cubic_a();
    IntPoly cubic_b = fixtures::level71_cubic_b();
};

ScenarioVerdict verify_level71_scenario(const Level71Options& opt = {});

struct Level935Options {
    IntPoly hecke_poly = fixtures::level935_hecke_poly();
    // Level-935 classes from data; empty means the eigenvalue part is skipped.
    std::vector<NewformClass> classes;
};

ScenarioVerdict verify_level935_scenario(const Level935Options& opt = {});

// Ramified deformation check for a class: the component of min_poly at the
// prime lambda (multiplicity > 1) admits no ring map to Z/l^2.
struct DeformationCheck {
    LocalComponent component;
    std::vector<uint64_t> maps_mod_l2;
    bool eliminated() const { return maps_mod_l2.empty(); }
};
DeformationCheck deformation_check(const NewformClass& f, const PrimeAboveL& lambda);

}  // namespace twf
