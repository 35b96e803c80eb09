#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twf/arith.hpp"
#include "twf/poly.hpp"

namespace twf {

// A Galois-conjugacy class of newforms, eigenvalues written as polynomials
// in one generator theta with min_poly(theta) = 0.
struct NewformClass {
    uint64_t level = 0;
    int degree = 0;
    std::optional<std::string> label;
    IntPoly min_poly;
    std::map<uint64_t, QPoly> eigenvalues;
    std::vector<uint64_t> index_coprime_to;

    const QPoly& eigenvalue(uint64_t p) const;  // DataError when absent
    bool has_eigenvalue(uint64_t p) const { return eigenvalues.count(p) != 0; }
    bool index_coprime(uint64_t l) const;
    std::string name() const;
};

// Throws DataError on any violated invariant.
void validate_class(const NewformClass& f);

std::vector<NewformClass> load_newforms(std::istream& in);
std::vector<NewformClass> load_newforms_file(const std::string& path);
// <dir>/level_<N>.json
std::vector<NewformClass> load_level(const std::string& dir, uint64_t level);
std::string level_file_name(uint64_t level);

struct PrimeAboveL {
    uint64_t l = 0;
    int index = 0;  // position in primes_above output
    int inertia_degree = 0;
    int multiplicity = 1;
    bool ramified = false;
    ModPoly local_factor;
    std::optional<uint64_t> residue_root;
    std::optional<ResidueClass> lifted_root;  // mod l^2, unramified degree 1 only
};

std::vector<PrimeAboveL> primes_above(const NewformClass& f, uint64_t l);

// Norm_{K/Q}(a - a_p(f)) = Res(min_poly, D (a - h_p)) / D^deg.
BigInt eigen_norm(const NewformClass& f, uint64_t p, int64_t a);

uint64_t eigen_mod_lambda(const NewformClass& f, uint64_t p, const PrimeAboveL& lambda);
// Residue modulo l^k through the Hensel-lifted root; unramified degree 1.
uint64_t eigen_mod_lambda_power(const NewformClass& f, uint64_t p, const PrimeAboveL& lambda, int k);
uint64_t eigen_mod_lambda_sq(const NewformClass& f, uint64_t p, const PrimeAboveL& lambda);

struct EisensteinCheck {
    bool eisenstein = false;
    bool vacuous = false;  // no admissible q below the bound
    std::optional<uint64_t> violating_prime;
    std::vector<uint64_t> checked;
};

EisensteinCheck is_eisenstein_mod_lambda(const NewformClass& f, const PrimeAboveL& lambda, uint64_t bound);

// Characteristic polynomial of a_p(f) acting on K_f, monic ascending.
std::vector<Rational> eigen_charpoly(const NewformClass& f, uint64_t p);
Rational eigen_trace(const NewformClass& f, uint64_t p);
bool eigen_generates_field(const NewformClass& f, uint64_t p);

}  // namespace twf
