#include "twf/newforms.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"

namespace twf {

using nlohmann::json;

const QPoly& NewformClass::eigenvalue(uint64_t p) const {
    auto it = eigenvalues.find(p);
    if (it == eigenvalues.end())
        throw DataError("missing eigenvalue a_" + std::to_string(p) + " for class " + name());
    return it->second;
}

bool NewformClass::index_coprime(uint64_t l) const {
    return std::find(index_coprime_to.begin(), index_coprime_to.end(), l) != index_coprime_to.end();
}

std::string NewformClass::name() const {
    if (label) return *label;
    return std::to_string(level) + ":d" + std::to_string(degree);
}

void validate_class(const NewformClass& f) {
    const std::string who = "class " + f.name() + ": ";
    if (f.level == 0) throw DataError(who + "level must be positive");
    if (f.degree < 1) throw DataError(who + "degree must be positive");
    if (!f.min_poly.is_monic()) throw DataError(who + "min_poly is not monic");
    if (f.min_poly.degree() != f.degree) throw DataError(who + "degree does not match min_poly");
    if (!is_squarefree(f.min_poly)) throw DataError(who + "min_poly is not squarefree");
    for (uint64_t l : f.index_coprime_to)
        if (!is_prime(l)) throw DataError(who + "index_coprime_to entry is not prime");
    for (const auto& [p, h] : f.eigenvalues) {
        if (!is_prime(p)) throw DataError(who + "eigenvalue key " + std::to_string(p) + " is not prime");
        if (h.c.empty()) throw DataError(who + "empty eigenvalue polynomial at " + std::to_string(p));
        for (const auto& q : h.c) {
            for (uint64_t l : f.index_coprime_to) {
                if (mpz_divisible_ui_p(q.get_den_mpz_t(), l))
                    throw DataError(who + "denominator at a_" + std::to_string(p) + " divisible by " +
                                    std::to_string(l) + ", which is asserted coprime to the index");
            }
        }
    }
}

namespace {

BigInt parse_integer(const json& v, const std::string& where) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return big_from_u64(v.get<uint64_t>());
        return big_from_i64(v.get<int64_t>());
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (start == s.size() || !std::all_of(s.begin() + start, s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw DataError(where + ": not a decimal integer: \"" + s + "\"");
        return BigInt(s[0] == '+' ? s.substr(1) : s, 10);
    }
    throw DataError(where + ": expected an integer or a decimal string (floats are rejected)");
}

uint64_t parse_small(const json& v, const std::string& where) {
    BigInt b = parse_integer(v, where);
    if (b < 0 || !fits_i64(b)) throw DataError(where + ": expected a nonnegative 63-bit integer");
    return to_u64(b);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw DataError(where + ": expected an object");
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || item.key() == k;
        if (!ok) throw DataError(where + ": unknown key \"" + item.key() + "\"");
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw DataError(where + ": missing key \"" + key + "\"");
    return *it;
}

NewformClass parse_class(const json& c, uint64_t level, size_t idx) {
    const std::string where = "classes[" + std::to_string(idx) + "]";
    reject_unknown(c, {"label", "degree", "min_poly", "index_coprime_to", "eigenvalues"}, where);
    NewformClass f;
    f.level = level;
    if (c.contains("label")) {
        if (!c["label"].is_string()) throw DataError(where + ".label: expected a string");
        f.label = c["label"].get<std::string>();
    }
    f.degree = static_cast<int>(parse_small(require(c, "degree", where), where + ".degree"));
    const json& mp = require(c, "min_poly", where);
    if (!mp.is_array() || mp.empty()) throw DataError(where + ".min_poly: expected a nonempty array");
    std::vector<BigInt> coeffs;
    for (size_t i = 0; i < mp.size(); ++i) coeffs.push_back(parse_integer(mp[i], where + ".min_poly"));
    f.min_poly = IntPoly(coeffs);
    const json& idx_list = require(c, "index_coprime_to", where);
    if (!idx_list.is_array()) throw DataError(where + ".index_coprime_to: expected an array");
    for (const auto& v : idx_list) f.index_coprime_to.push_back(parse_small(v, where + ".index_coprime_to"));
    const json& ev = require(c, "eigenvalues", where);
    if (!ev.is_object()) throw DataError(where + ".eigenvalues: expected an object");
    for (const auto& item : ev.items()) {
        const std::string key = item.key();
        if (key.empty() || !std::all_of(key.begin(), key.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw DataError(where + ".eigenvalues: key \"" + key + "\" is not a prime");
        uint64_t p = std::stoull(key);
        const json& terms = item.value();
        if (!terms.is_array()) throw DataError(where + ".eigenvalues." + key + ": expected an array");
        QPoly h;
        for (const auto& pair : terms) {
            if (!pair.is_array() || pair.size() != 2)
                throw DataError(where + ".eigenvalues." + key + ": expected [num, den] pairs");
            BigInt num = parse_integer(pair[0], where + ".eigenvalues." + key);
            BigInt den = parse_integer(pair[1], where + ".eigenvalues." + key);
            if (den == 0) throw DataError(where + ".eigenvalues." + key + ": zero denominator");
            Rational q(num, den);
            q.canonicalize();
            h.c.push_back(q);
        }
        while (h.c.size() > 1 && h.c.back() == 0) h.c.pop_back();
        if (!f.eigenvalues.emplace(p, std::move(h)).second)
            throw DataError(where + ".eigenvalues: duplicate prime " + key);
    }
    validate_class(f);
    return f;
}

}  // namespace

std::vector<NewformClass> load_newforms(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed JSON: ") + e.what());
    }
    reject_unknown(doc, {"level", "classes"}, "top level");
    uint64_t level = parse_small(require(doc, "level", "top level"), "level");
    if (level == 0) throw DataError("level must be positive");
    const json& classes = require(doc, "classes", "top level");
    if (!classes.is_array()) throw DataError("classes: expected an array");
    std::vector<NewformClass> out;
    std::set<std::string> labels;
    for (size_t i = 0; i < classes.size(); ++i) {
        NewformClass f = parse_class(classes[i], level, i);
        if (f.label && !labels.insert(*f.label).second)
            throw DataError("duplicate class label \"" + *f.label + "\" at level " + std::to_string(level));
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<NewformClass> load_newforms_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open newform data file " + path);
    return load_newforms(in);
}

std::string level_file_name(uint64_t level) { return "level_" + std::to_string(level) + ".json"; }

std::vector<NewformClass> load_level(const std::string& dir, uint64_t level) {
    auto classes = load_newforms_file(dir + "/" + level_file_name(level));
    for (const auto& f : classes)
        if (f.level != level) throw DataError("file for level " + std::to_string(level) + " holds another level");
    return classes;
}

std::vector<PrimeAboveL> primes_above(const NewformClass& f, uint64_t l) {
    if (!f.index_coprime(l))
        throw PreconditionError("primes_above: index not asserted coprime to " + std::to_string(l) + " for " + f.name());
    std::vector<PrimeAboveL> out;
    int idx = 0;
    for (const auto& fac : factor_mod_l(f.min_poly, l)) {
        PrimeAboveL lam;
        lam.l = l;
        lam.index = idx++;
        lam.inertia_degree = fac.factor.degree();
        lam.multiplicity = fac.multiplicity;
        lam.ramified = fac.multiplicity > 1;
        lam.local_factor = fac.factor;
        if (lam.inertia_degree == 1) {
            uint64_t r = sub_mod(0, fac.factor.c[0], l);
            lam.residue_root = r;
            if (!lam.ramified) lam.lifted_root = hensel_lift_root(f.min_poly, r, l, 2);
        }
        out.push_back(std::move(lam));
    }
    return out;
}

BigInt eigen_norm(const NewformClass& f, uint64_t p, int64_t a) {
    const QPoly& h = f.eigenvalue(p);
    BigInt D = h.common_denominator();
    std::vector<BigInt> g(std::max<size_t>(h.c.size(), 1), 0);
    for (size_t i = 0; i < h.c.size(); ++i) {
        Rational v = -h.c[i] * Rational(D);
        g[i] = v.get_num();
    }
    g[0] += big_from_i64(a) * D;
    IntPoly gp(g);
    if (gp.is_zero()) return 0;
    BigInt res = resultant(f.min_poly, gp);
    BigInt Dd = big_pow(D, static_cast<unsigned long>(f.degree));
    BigInt q;
    mpz_divexact(q.get_mpz_t(), res.get_mpz_t(), Dd.get_mpz_t());
    return q;
}

uint64_t eigen_mod_lambda(const NewformClass& f, uint64_t p, const PrimeAboveL& lambda) {
    if (lambda.inertia_degree != 1 || !lambda.residue_root)
        throw PreconditionError("eigen_mod_lambda: prime above l must have inertia degree 1");
    return f.eigenvalue(p).eval_mod(*lambda.residue_root, lambda.l);
}

uint64_t eigen_mod_lambda_power(const NewformClass& f, uint64_t p, const PrimeAboveL& lambda, int k) {
    if (k < 1) throw PreconditionError("eigen_mod_lambda_power: k must be positive");
    if (k == 1) return eigen_mod_lambda(f, p, lambda);
    if (lambda.inertia_degree != 1 || !lambda.residue_root)
        throw PreconditionError("eigen_mod_lambda_power: prime above l must have inertia degree 1");
    if (lambda.ramified) throw RamifiedPrimeError("eigen_mod_lambda_power: ramified prime has no canonical lift");
    ResidueClass root = hensel_lift_root(f.min_poly, *lambda.residue_root, lambda.l, k);
    return f.eigenvalue(p).eval_mod(root.value, root.modulus);
}

uint64_t eigen_mod_lambda_sq(const NewformClass& f, uint64_t p, const PrimeAboveL& lambda) {
    return eigen_mod_lambda_power(f, p, lambda, 2);
}

EisensteinCheck is_eisenstein_mod_lambda(const NewformClass& f, const PrimeAboveL& lambda, uint64_t bound) {
    if (lambda.inertia_degree != 1) throw PreconditionError("is_eisenstein_mod_lambda: degree-1 prime required");
    EisensteinCheck out;
    const uint64_t l = lambda.l;
    for (uint64_t q : primes_up_to(bound)) {
        if (q == l || f.level % q == 0) continue;
        out.checked.push_back(q);
        if (eigen_mod_lambda(f, q, lambda) != (1 + q) % l) {
            out.violating_prime = q;
            return out;
        }
    }
    out.eisenstein = true;
    out.vacuous = out.checked.empty();
    return out;
}

namespace {

using QMatrix = std::vector<std::vector<Rational>>;

// Matrix of multiplication by h(theta) on the basis 1, theta, ..., theta^(d-1).
QMatrix multiplication_matrix(const NewformClass& f, const QPoly& h) {
    const int d = f.degree;
    const auto& Q = f.min_poly.coeffs();
    QMatrix M(d, std::vector<Rational>(d, 0));
    for (int j = 0; j < d; ++j) {
        std::vector<Rational> v(std::max<size_t>(h.c.size() + j, d), 0);
        for (size_t i = 0; i < h.c.size(); ++i) v[i + j] = h.c[i];
        for (int i = static_cast<int>(v.size()) - 1; i >= d; --i) {
            if (v[i] == 0) continue;
            Rational c = v[i];
            for (int k = 0; k < d; ++k) v[i - d + k] -= c * Rational(Q[k]);
            v[i] = 0;
        }
        for (int i = 0; i < d; ++i) M[i][j] = v[i];
    }
    return M;
}

}  // namespace

std::vector<Rational> eigen_charpoly(const NewformClass& f, uint64_t p) {
    const int d = f.degree;
    QMatrix A = multiplication_matrix(f, f.eigenvalue(p));
    // Faddeev-LeVerrier, exact over Q
    std::vector<Rational> c(d + 1, 0);
    c[d] = 1;
    QMatrix Mk(d, std::vector<Rational>(d, 0));
    for (int k = 1; k <= d; ++k) {
        QMatrix next(d, std::vector<Rational>(d, 0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Rational s = 0;
                for (int t = 0; t < d; ++t) s += A[i][t] * Mk[t][j];
                next[i][j] = s;
            }
        for (int i = 0; i < d; ++i) next[i][i] += c[d - k + 1];
        Mk = std::move(next);
        Rational tr = 0;
        for (int i = 0; i < d; ++i)
            for (int t = 0; t < d; ++t) tr += A[i][t] * Mk[t][i];
        c[d - k] = -tr / k;
    }
    return c;
}

Rational eigen_trace(const NewformClass& f, uint64_t p) {
    QMatrix A = multiplication_matrix(f, f.eigenvalue(p));
    Rational tr = 0;
    for (int i = 0; i < f.degree; ++i) tr += A[i][i];
    return tr;
}

bool eigen_generates_field(const NewformClass& f, uint64_t p) {
    auto chi = eigen_charpoly(f, p);
    BigInt D = 1;
    for (const auto& q : chi) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), q.get_den_mpz_t());
    std::vector<BigInt> z;
    for (const auto& q : chi) z.push_back(Rational(q * Rational(D)).get_num());
    return is_squarefree(IntPoly(z));
}

}  // namespace twf
