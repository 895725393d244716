#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qsing/group_spec.hpp"
#include "qsing/matrix_group.hpp"

namespace qsing {

/// Representation families of the classification list, plus the small-group
/// families of section 2.3.
enum class RepFamily {
    pi,          // type I
    alpha_II,    // type II, induced
    nu_III1,     // type III, 9 does not divide n: pi (x) tau
    nu_III2,     // type III, 9 | n, 3 does not divide d: pi (x) tau_j
    mu_III3,     // type III, 3 | d: induced from <A, B^d, P, Q>
    psi_IV1a,    // type IV direct product, 9 does not divide n: pi (x) o_j
    gamma_IV1b,  // type IV, 9 does not divide n, induced from nu
    xi_IV2a,     // type IV direct product, 9 | n: pi (x) o_j
    gamma_IV2b,  // type IV, 9 | n, induced from nu
    eta_IV3,     // type IV, 3 | d, induced from mu
    iota_V,      // type V: pi (x) iota_j
    kappa_VI,    // type VI, induced from iota
    alpha_Q,     // Q2^a
    tau_T,       // T*_v
    o_O,         // O*_v
    iota_I       // I*
};

std::string to_string(RepFamily f);
RepFamily rep_family_from_string(const std::string& s);

/// Index tuple of one representation.  k, l, j are each reduced mod their
/// family modulus; unused indices are absent.
struct RepSpec {
    RepFamily family = RepFamily::pi;
    std::optional<std::int64_t> k;
    std::optional<std::int64_t> l;
    std::optional<std::int64_t> j;

    std::string str() const;
    friend bool operator<(const RepSpec& a, const RepSpec& b) {
        auto t = [](const RepSpec& r) {
            return std::tuple(static_cast<int>(r.family), r.k.value_or(-1), r.l.value_or(-1),
                              r.j.value_or(-1));
        };
        return t(a) < t(b);
    }
    friend bool operator==(const RepSpec& a, const RepSpec& b) { return !(a < b) && !(b < a); }
};

void to_json(nlohmann::json& j, const RepSpec& r);
void from_json(const nlohmann::json& j, RepSpec& r);

/// A built representation: exact generator images.
struct Representation {
    GroupSpec spec;
    RepSpec rep;
    std::int64_t dim = 0;
    std::vector<std::pair<std::string, CMatrix>> images; // label -> matrix

    const CMatrix& image(const std::string& label) const;
};

/// Small-group representations of section 2.3.
///   alpha_Q: Q2^a, a >= 3, k odd, 1 <= k < 2^(a-2)
///   tau_T:   T*_v; v = 0 builds tau of T* itself (scalar 1); v >= 1 uses
///            the scalar e^(2 pi i k / 3^v)
///   o_O:     O*_v; v = 1: j in {1, 2}; v > 1: j = 1 mod 3, 4-dimensional
///   iota_I:  I*, j = +-1 (iota_{-1} is the entrywise Galois twist
///            zeta_5 -> zeta_5^2 of iota_1)
Representation build_small(RepFamily family, std::int64_t v_or_a, std::int64_t index);

/// The List: builds the representation of `spec` named by `rep`.
Representation build(const GroupSpec& spec, const RepSpec& rep);

/// Every defining relation of the presentation evaluated as an exact matrix
/// identity; returns the failed relations (empty = pass).
std::vector<std::string> verify_relations(const Representation& rep);

/// Exact character-norm criterion: (1/|G|) sum chi(g) chi(g^-1) = 1.
bool irreducible(const Representation& rep, const MatrixGroup& g);

/// For type IV: whether the group splits as <A,B^(3^v)> x O*_v, decided by
/// exact character comparison of pi and pi composed with conjugation by R
/// over the type I subgroup.
bool type_iv_is_direct_product(const GroupSpec& spec);

/// Cached per-spec representation data: the deduplicated class list, the
/// map from raw index tuples to class representatives, per-class generator
/// determinants and one reference group with its BFS words.
struct RepIndex {
    GroupSpec spec;
    std::vector<RepSpec> classes;
    std::map<RepSpec, RepSpec> raw_to_class;
    /// determinant of every generator image, per class (labels as in build)
    std::map<RepSpec, std::vector<std::pair<std::string, Cyclotomic>>> dets;
    std::map<RepSpec, std::int64_t> dims;
    std::shared_ptr<MatrixGroup> group; // image of classes.front()
};

/// All index tuples in range with the required coprimality, deduplicated up
/// to equivalence by exact character equality.
std::vector<RepSpec> enumerate_repspecs(const GroupSpec& spec);

/// Cached full index (thread-safe, built on first use).
std::shared_ptr<const RepIndex> rep_index(const GroupSpec& spec);

/// Per-element traces along the reference BFS word DAG.
std::vector<Cyclotomic> character(const Representation& rep, const MatrixGroup& ref);

} // namespace qsing
