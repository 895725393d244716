#include "qsing/group_spec.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qsing {

std::int64_t mod_pos(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t result = 1;
    b = mod_pos(b, m);
    while (e > 0) {
        if (e & 1) result = mul_mod(result, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t g0 = m, g1 = mod_pos(a, m), u0 = 0, u1 = 1;
    while (g1 != 0) {
        std::int64_t q = g0 / g1;
        std::int64_t g2 = g0 - q * g1, u2 = u0 - q * u1;
        g0 = g1;
        g1 = g2;
        u0 = u1;
        u1 = u2;
    }
    if (g0 != 1) throw std::invalid_argument("inv_mod: not invertible");
    return mod_pos(u0, m);
}

std::int64_t mult_order(std::int64_t r, std::int64_t m) {
    if (m == 1) return 1;
    r = mod_pos(r, m);
    if (std::gcd(r, m) != 1) return 0; // undefined
    std::int64_t p = r % m, ord = 1;
    while (p != 1) {
        p = mul_mod(p, r, m);
        ++ord;
        if (ord > m) return 0;
    }
    return ord;
}

std::string to_string(GroupKind k) {
    switch (k) {
        case GroupKind::I: return "I";
        case GroupKind::II: return "II";
        case GroupKind::III: return "III";
        case GroupKind::IV: return "IV";
        case GroupKind::V: return "V";
        case GroupKind::VI: return "VI";
        case GroupKind::Q2a: return "Q2a";
        case GroupKind::Tstar: return "Tstar";
        case GroupKind::Ostar: return "Ostar";
        case GroupKind::Istar: return "Istar";
    }
    return "?";
}

GroupKind group_kind_from_string(const std::string& s) {
    if (s == "I") return GroupKind::I;
    if (s == "II") return GroupKind::II;
    if (s == "III") return GroupKind::III;
    if (s == "IV") return GroupKind::IV;
    if (s == "V") return GroupKind::V;
    if (s == "VI") return GroupKind::VI;
    if (s == "Q2a") return GroupKind::Q2a;
    if (s == "Tstar") return GroupKind::Tstar;
    if (s == "Ostar") return GroupKind::Ostar;
    if (s == "Istar") return GroupKind::Istar;
    throw std::invalid_argument("unknown group kind: " + s);
}

std::int64_t GroupSpec::d() const {
    std::int64_t ord = mult_order(r, m);
    if (ord == 0) throw std::invalid_argument("d(): r is not a unit mod m");
    return ord;
}

namespace {

std::int64_t v3(std::int64_t n) {
    std::int64_t v = 0;
    while (n % 3 == 0) {
        n /= 3;
        ++v;
    }
    return v;
}

std::int64_t v2(std::int64_t n) {
    std::int64_t v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    return v;
}

// Conditions shared by types I-IV (and the K factor of V-VI): Table 1 row I
// plus the divisibility condition on d from Theorem 6.1.11.
void check_metacyclic(const GroupSpec& s, std::vector<std::string>& out) {
    if (s.m < 1) out.push_back("m must be >= 1");
    if (s.n < 1) out.push_back("n must be >= 1");
    if (s.m < 1 || s.n < 1) return;
    if (s.r < 1) {
        out.push_back("r must be >= 1");
        return;
    }
    if (s.m > 1) {
        std::int64_t rm = mod_pos(s.r, s.m);
        // gcd(n(r-1), m) = 1 iff gcd(n, m) = gcd(r-1, m) = 1; note
        // gcd(0, m) = m, so r = 1 (mod m) forces m = 1.
        if (std::gcd(mod_pos(s.n, s.m), s.m) != 1 || std::gcd(mod_pos(rm - 1, s.m), s.m) != 1)
            out.push_back("(n(r-1), m) = 1 fails");
        if (mult_order(s.r, s.m) == 0) {
            out.push_back("r must be a unit mod m");
            return;
        }
        if (pow_mod(s.r, s.n, s.m) != 1) out.push_back("r^n = 1 (mod m) fails");
    }
    std::int64_t d = mult_order(s.r, s.m);
    if (s.n % d != 0) {
        out.push_back("d must divide n");
        return;
    }
    std::int64_t nd = s.n / d;
    std::int64_t dd = d;
    for (std::int64_t p = 2; dd > 1; ++p) {
        if (p * p > dd) p = dd;
        if (dd % p == 0) {
            if (nd % p != 0)
                out.push_back("prime divisor " + std::to_string(p) + " of d does not divide n/d");
            while (dd % p == 0) dd /= p;
        }
    }
}

} // namespace

std::vector<std::string> validate_spec(const GroupSpec& s) {
    std::vector<std::string> out;
    switch (s.kind) {
        case GroupKind::I:
            check_metacyclic(s, out);
            break;
        case GroupKind::II: {
            check_metacyclic(s, out);
            if (!s.l || !s.k) {
                out.push_back("type II requires l and k");
                break;
            }
            std::int64_t u = v2(s.n);
            if (u < 2) out.push_back("n = 2^u v with u >= 2 fails");
            if (s.m > 1) {
                if (pow_mod(*s.l, 2, s.m) != 1) out.push_back("l^2 = 1 (mod m) fails");
                std::int64_t d = mult_order(s.r, s.m);
                if (d > 0 && pow_mod(s.r, mod_pos(*s.k - 1, d), s.m) != 1)
                    out.push_back("r^(k-1) = 1 (mod m) fails");
            }
            if (u >= 2 && mod_pos(*s.k + 1, std::int64_t(1) << u) != 0)
                out.push_back("k = -1 (mod 2^u) fails");
            if (mod_pos(*s.k * *s.k, s.n) != 1 % s.n) out.push_back("k^2 = 1 (mod n) fails");
            break;
        }
        case GroupKind::III:
            check_metacyclic(s, out);
            if (s.n % 2 == 0) out.push_back("n must be odd (n = 1 mod 2)");
            if (s.n % 3 != 0) out.push_back("n must be divisible by 3");
            break;
        case GroupKind::IV: {
            check_metacyclic(s, out);
            if (s.n % 2 == 0) out.push_back("n must be odd (n = 1 mod 2)");
            if (s.n % 3 != 0) out.push_back("n must be divisible by 3");
            if (!s.l || !s.k) {
                out.push_back("type IV requires l and k");
                break;
            }
            if (mod_pos(*s.k * *s.k, s.n) != 1 % s.n) out.push_back("k^2 = 1 (mod n) fails");
            if (mod_pos(*s.k + 1, 3) != 0) out.push_back("k = -1 (mod 3) fails");
            if (s.m > 1) {
                std::int64_t d = mult_order(s.r, s.m);
                if (d > 0 && pow_mod(s.r, mod_pos(*s.k - 1, d), s.m) != 1)
                    out.push_back("r^(k-1) = 1 (mod m) fails");
                if (pow_mod(*s.l, 2, s.m) != 1) out.push_back("l^2 = 1 (mod m) fails");
            }
            break;
        }
        case GroupKind::V:
            check_metacyclic(s, out);
            if (std::gcd(s.m * s.n, std::int64_t(30)) != 1)
                out.push_back("order of K must be coprime with 30");
            break;
        case GroupKind::VI: {
            check_metacyclic(s, out);
            if (std::gcd(s.m * s.n, std::int64_t(30)) != 1)
                out.push_back("order of K must be coprime with 30");
            if (!s.l || !s.k) {
                out.push_back("type VI requires l and k");
                break;
            }
            if (s.m > 1 && pow_mod(*s.l, 2, s.m) != 1) out.push_back("l^2 = 1 (mod m) fails");
            if (mod_pos(*s.k * *s.k, s.n) != 1 % s.n) out.push_back("k^2 = 1 (mod n) fails");
            if (s.m > 1) {
                std::int64_t d = mult_order(s.r, s.m);
                if (d > 0 && pow_mod(s.r, mod_pos(*s.k - 1, d), s.m) != 1)
                    out.push_back("r^(k-1) = 1 (mod m) fails");
            }
            break;
        }
        case GroupKind::Q2a:
            if (!s.a || *s.a < 3) out.push_back("Q2a requires a >= 3");
            break;
        case GroupKind::Tstar:
        case GroupKind::Ostar:
            if (!s.v || *s.v < 1) out.push_back("generalized polyhedral group requires v >= 1");
            break;
        case GroupKind::Istar:
            break;
    }
    return out;
}

std::int64_t abstract_order(const GroupSpec& s) {
    auto viol = validate_spec(s);
    if (!viol.empty()) throw std::invalid_argument("abstract_order: invalid spec: " + viol.front());
    switch (s.kind) {
        case GroupKind::I: return s.m * s.n;
        case GroupKind::II: return 2 * s.m * s.n;
        case GroupKind::III: return 8 * s.m * s.n;
        case GroupKind::IV: return 16 * s.m * s.n;
        case GroupKind::V: return 120 * s.m * s.n;
        case GroupKind::VI: return 240 * s.m * s.n;
        case GroupKind::Q2a: return std::int64_t(1) << *s.a;
        case GroupKind::Tstar: {
            std::int64_t p = 1;
            for (std::int64_t i = 0; i < *s.v; ++i) p *= 3;
            return 8 * p;
        }
        case GroupKind::Ostar: {
            std::int64_t p = 1;
            for (std::int64_t i = 0; i < *s.v; ++i) p *= 3;
            return 16 * p;
        }
        case GroupKind::Istar: return 120;
    }
    return 0;
}

std::int64_t GroupSpec::irrep_dim() const {
    std::int64_t dd = d();
    switch (kind) {
        case GroupKind::I: return dd;
        case GroupKind::II: return 2 * dd;
        case GroupKind::III: return 2 * dd;
        case GroupKind::IV: {
            // Direct-product case 1a has dimension 2d, the rest 4d.  The
            // direct product holds iff conjugation by R fixes some pi of
            // <A, B^3> up to equivalence: l in {r^i mod m} and k = 1 mod n'/3.
            if (v3(n) == 1) {
                std::int64_t ntp = (n / 3) / dd;
                bool k_ok = mod_pos(k.value_or(1) - 1, ntp) == 0;
                bool l_ok = (m == 1);
                if (!l_ok) {
                    std::int64_t p = 1;
                    for (std::int64_t i = 0; i < dd && !l_ok; ++i) {
                        if (mod_pos(l.value_or(1), m) == p) l_ok = true;
                        p = mul_mod(p, mod_pos(r, m), m);
                    }
                }
                if (k_ok && l_ok) return 2 * dd;
            }
            return 4 * dd;
        }
        case GroupKind::V: return 2 * dd;
        case GroupKind::VI: return 4 * dd;
        case GroupKind::Q2a: return 2;
        case GroupKind::Tstar: return 2;
        case GroupKind::Ostar: return *v == 1 ? 2 : 4;
        case GroupKind::Istar: return 2;
    }
    return 0;
}

std::string GroupSpec::str() const {
    std::ostringstream os;
    os << to_string(kind) << "(m=" << m << ",n=" << n << ",r=" << r;
    if (l) os << ",l=" << *l;
    if (k) os << ",k=" << *k;
    if (v) os << ",v=" << *v;
    if (a) os << ",a=" << *a;
    os << ")";
    return os.str();
}

namespace {

template <typename F>
void for_metacyclic(std::int64_t max_mn, F&& fn) {
    for (std::int64_t m = 1; m <= max_mn; ++m) {
        for (std::int64_t n = 1; m * n <= max_mn; ++n) {
            std::int64_t rmax = std::max<std::int64_t>(m, 1);
            for (std::int64_t r = 1; r <= rmax; ++r) {
                GroupSpec s;
                s.m = m;
                s.n = n;
                s.r = r;
                fn(s);
                if (m == 1) break; // r is only meaningful mod m
            }
        }
    }
}

} // namespace

std::vector<GroupSpec> all_specs(std::int64_t max_order, bool include_small_kinds) {
    std::vector<GroupSpec> out;
    // Type I
    for_metacyclic(max_order, [&](GroupSpec s) {
        s.kind = GroupKind::I;
        if (validate_spec(s).empty()) out.push_back(s);
    });
    // Type II
    for_metacyclic(max_order / 2, [&](GroupSpec s) {
        s.kind = GroupKind::II;
        for (std::int64_t l = 0; l < std::max<std::int64_t>(s.m, 1); ++l) {
            for (std::int64_t k = 0; k < s.n; ++k) {
                s.l = l;
                s.k = k;
                if (validate_spec(s).empty()) out.push_back(s);
            }
        }
    });
    // Type III
    for_metacyclic(max_order / 8, [&](GroupSpec s) {
        s.kind = GroupKind::III;
        if (validate_spec(s).empty()) out.push_back(s);
    });
    // Type IV
    for_metacyclic(max_order / 16, [&](GroupSpec s) {
        s.kind = GroupKind::IV;
        for (std::int64_t l = 0; l < std::max<std::int64_t>(s.m, 1); ++l) {
            for (std::int64_t k = 0; k < s.n; ++k) {
                s.l = l;
                s.k = k;
                if (validate_spec(s).empty()) out.push_back(s);
            }
        }
    });
    // Type V
    for_metacyclic(max_order / 120, [&](GroupSpec s) {
        s.kind = GroupKind::V;
        if (validate_spec(s).empty()) out.push_back(s);
    });
    // Type VI
    for_metacyclic(max_order / 240, [&](GroupSpec s) {
        s.kind = GroupKind::VI;
        for (std::int64_t l = 0; l < std::max<std::int64_t>(s.m, 1); ++l) {
            for (std::int64_t k = 0; k < s.n; ++k) {
                s.l = l;
                s.k = k;
                if (validate_spec(s).empty()) out.push_back(s);
            }
        }
    });
    if (include_small_kinds) {
        for (std::int64_t a = 3; (std::int64_t(1) << a) <= max_order; ++a) {
            GroupSpec s;
            s.kind = GroupKind::Q2a;
            s.a = a;
            out.push_back(s);
        }
        for (std::int64_t v = 1, o = 24; o <= max_order; ++v, o *= 3) {
            GroupSpec s;
            s.kind = GroupKind::Tstar;
            s.v = v;
            out.push_back(s);
        }
        for (std::int64_t v = 1, o = 48; o <= max_order; ++v, o *= 3) {
            GroupSpec s;
            s.kind = GroupKind::Ostar;
            s.v = v;
            out.push_back(s);
        }
        if (max_order >= 120) {
            GroupSpec s;
            s.kind = GroupKind::Istar;
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void to_json(nlohmann::json& j, const GroupSpec& s) {
    j = nlohmann::json{{"kind", to_string(s.kind)}, {"m", s.m}, {"n", s.n}, {"r", s.r}};
    j["l"] = s.l ? nlohmann::json(*s.l) : nlohmann::json(nullptr);
    j["k"] = s.k ? nlohmann::json(*s.k) : nlohmann::json(nullptr);
    j["v"] = s.v ? nlohmann::json(*s.v) : nlohmann::json(nullptr);
    j["a"] = s.a ? nlohmann::json(*s.a) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, GroupSpec& s) {
    s.kind = group_kind_from_string(j.at("kind").get<std::string>());
    s.m = j.value("m", std::int64_t(1));
    s.n = j.value("n", std::int64_t(1));
    s.r = j.value("r", std::int64_t(1));
    auto opt = [&](const char* key) -> std::optional<std::int64_t> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return j.at(key).get<std::int64_t>();
    };
    s.l = opt("l");
    s.k = opt("k");
    s.v = opt("v");
    s.a = opt("a");
}

} // namespace qsing
