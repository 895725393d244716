#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qsing {

/// Group families of the classification: the solvable types I-IV, the
/// nonsolvable types V-VI, and the small groups of section 2.3 used as
/// building blocks (generalized quaternion, binary tetrahedral/octahedral/
/// icosahedral).
enum class GroupKind { I, II, III, IV, V, VI, Q2a, Tstar, Ostar, Istar };

std::string to_string(GroupKind k);
GroupKind group_kind_from_string(const std::string& s);

/// Parameters of one group.  m, n, r are the metacyclic data (types I-IV and
/// the K factor of V-VI); l, k the extra conjugation exponents (II, IV, VI);
/// v the 3-adic level of T*_v / O*_v; a the exponent of Q2^a.
struct GroupSpec {
    GroupKind kind = GroupKind::I;
    std::int64_t m = 1;
    std::int64_t n = 1;
    std::int64_t r = 1;
    std::optional<std::int64_t> l;
    std::optional<std::int64_t> k;
    std::optional<std::int64_t> v;
    std::optional<std::int64_t> a;

    /// Multiplicative order of r mod m (1 when m = 1).
    std::int64_t d() const;

    bool is_trivial() const { return kind == GroupKind::I && m == 1 && n == 1; }

    /// Dimension of the irreducible fixed-point-free representations:
    /// d, 2d or 4d depending on the type.
    std::int64_t irrep_dim() const;

    std::string str() const;
    /// Deterministic total order, used for sorting sweeps.
    friend bool operator<(const GroupSpec& a, const GroupSpec& b) {
        auto t = [](const GroupSpec& s) {
            return std::tuple(static_cast<int>(s.kind), s.m, s.n, s.r, s.l.value_or(0),
                              s.k.value_or(0), s.v.value_or(0), s.a.value_or(0));
        };
        return t(a) < t(b);
    }
    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        return !(a < b) && !(b < a);
    }
};

/// Every arithmetic condition of Table 1 for the kind, the divisibility
/// condition on d, and the type-specific constraints.  Empty means valid.
std::vector<std::string> validate_spec(const GroupSpec& s);

/// The abstract group order (Table 1 "Order" column and section 2.3).
/// Throws std::invalid_argument on an invalid spec.
std::int64_t abstract_order(const GroupSpec& s);

/// All valid specs with abstract_order <= max_order, in deterministic order.
/// Small kinds (Q2a, T*, O*, I*) are included only when requested: as
/// abstract groups they coincide with particular type I-VI entries.
std::vector<GroupSpec> all_specs(std::int64_t max_order, bool include_small_kinds);

void to_json(nlohmann::json& j, const GroupSpec& s);
void from_json(const nlohmann::json& j, GroupSpec& s);

// Modular helpers shared by the group/representation modules.
std::int64_t mod_pos(std::int64_t x, std::int64_t m);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m);
std::int64_t inv_mod(std::int64_t a, std::int64_t m);
std::int64_t mult_order(std::int64_t r, std::int64_t m);

} // namespace qsing
