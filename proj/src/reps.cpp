#include "qsing/reps.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qsing/errors.hpp"

namespace qsing {

namespace {

Cyclotomic zeta(std::int64_t j, std::int64_t m) { return Cyclotomic::root_of_unity(j, m); }

std::int64_t v3(std::int64_t n) {
    std::int64_t v = 0;
    while (n % 3 == 0) {
        n /= 3;
        ++v;
    }
    return v;
}

std::int64_t pow3(std::int64_t v) {
    std::int64_t p = 1;
    while (v-- > 0) p *= 3;
    return p;
}

std::vector<std::int64_t> units_mod(std::int64_t m) {
    if (m == 1) return {0};
    std::vector<std::int64_t> out;
    for (std::int64_t x = 1; x < m; ++x)
        if (std::gcd(x, m) == 1) out.push_back(x);
    return out;
}

CMatrix matrix_galois(const CMatrix& m, std::int64_t u) {
    CMatrix r(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) {
            std::int64_t c = m.at(i, j).conductor();
            std::int64_t uu = mod_pos(u, c);
            if (std::gcd(uu, c) != 1) {
                // lift into a field where u is a valid exponent
                std::int64_t target = c;
                while (std::gcd(mod_pos(u, target), target) != 1) target *= c;
                r.at(i, j) = m.at(i, j).lifted_to(target).galois(mod_pos(u, target));
            } else {
                r.at(i, j) = m.at(i, j).galois(uu);
            }
        }
    return r;
}

// ---------------------------------------------------------------------------
// type I building blocks (also the subgroup representations for III-VI)

// pi_{k,l}(A) for the type I data (m, n, r): diag(zeta_m^(k r^i)).
CMatrix pi_A(std::int64_t m, std::int64_t r, std::int64_t d, std::int64_t k) {
    std::vector<Cyclotomic> diag;
    std::int64_t e = mod_pos(k, std::max<std::int64_t>(m, 1));
    for (std::int64_t i = 0; i < d; ++i) {
        diag.push_back(zeta(e, m));
        e = mul_mod(e, mod_pos(r, m) == 0 ? 0 : mod_pos(r, m), std::max<std::int64_t>(m, 1));
    }
    return CMatrix::diagonal(diag);
}

// pi_{k,l}(B): the cycle with corner zeta_{n'}^l, n' = n/d.
CMatrix pi_B(std::int64_t n, std::int64_t d, std::int64_t l) {
    std::int64_t np = n / d;
    CMatrix b(static_cast<int>(d));
    for (std::int64_t i = 0; i + 1 < d; ++i) b.at(i, i + 1) = Cyclotomic::one();
    b.at(d - 1, 0) = zeta(mod_pos(l, np), np);
    return b;
}

// ---------------------------------------------------------------------------
// small-group matrices (section 2.3)

const Cyclotomic& c_i() {
    static const Cyclotomic v = zeta(1, 4);
    return v;
}

// tau(X) without the scalar: -(1/2) [[1+i, 1+i],[-1+i, 1-i]]
CMatrix tau_x_base() {
    Cyclotomic i = c_i();
    Cyclotomic mhalf = Cyclotomic::from_rational(Rational(-1, 2));
    CMatrix m(2);
    m.at(0, 0) = mhalf * (Cyclotomic::one() + i);
    m.at(0, 1) = mhalf * (Cyclotomic::one() + i);
    m.at(1, 0) = mhalf * (-Cyclotomic::one() + i);
    m.at(1, 1) = mhalf * (Cyclotomic::one() - i);
    return m;
}

CMatrix tau_X(std::int64_t v, std::int64_t k) {
    CMatrix base = tau_x_base();
    if (v == 0) return base;
    Cyclotomic s = zeta(mod_pos(k, pow3(v)), pow3(v));
    CMatrix r(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.at(i, j) = s * base.at(i, j);
    return r;
}

CMatrix tau_P() { return CMatrix::diagonal({c_i(), -c_i()}); }

CMatrix tau_Q() {
    CMatrix m(2);
    m.at(0, 1) = Cyclotomic::one();
    m.at(1, 0) = -Cyclotomic::one();
    return m;
}

// O*: R with R^2 = P^2 = -I, R P R^-1 = QP, R Q R^-1 = Q^-1, R X R^-1 = X^-1.
// (i/sqrt2) [[1, -1], [-1, -1]]
CMatrix o_R() {
    Cyclotomic inv_sqrt2 = (zeta(1, 8) + zeta(7, 8)).inv();
    Cyclotomic w = c_i() * inv_sqrt2;
    CMatrix m(2);
    m.at(0, 0) = w;
    m.at(0, 1) = -w;
    m.at(1, 0) = -w;
    m.at(1, 1) = -w;
    return m;
}

// iota_1 of I* (epsilon = zeta_5)
CMatrix iota1_V() { return CMatrix::diagonal({zeta(3, 5), zeta(2, 5)}); }

CMatrix iota1_U() {
    CMatrix m(2);
    m.at(0, 1) = -Cyclotomic::one();
    m.at(1, 0) = Cyclotomic::one();
    return m;
}

Cyclotomic inv_sqrt5() {
    // sqrt5 = 1 + 2(eps + eps^4)
    Cyclotomic s5 = Cyclotomic::one() + Cyclotomic::from_int(2) * (zeta(1, 5) + zeta(4, 5));
    return s5.inv();
}

CMatrix iota1_T() {
    Cyclotomic e1 = zeta(1, 5), e2 = zeta(2, 5), e3 = zeta(3, 5), e4 = zeta(4, 5);
    Cyclotomic w = inv_sqrt5();
    CMatrix m(2);
    m.at(0, 0) = w * (-(e1 - e4));
    m.at(0, 1) = w * (e2 - e3);
    m.at(1, 0) = w * (e2 - e3);
    m.at(1, 1) = w * (e1 - e4);
    return m;
}

CMatrix iota_V(std::int64_t j) { return j == 1 ? iota1_V() : matrix_galois(iota1_V(), 2); }
CMatrix iota_U(std::int64_t j) { return j == 1 ? iota1_U() : matrix_galois(iota1_U(), 2); }
CMatrix iota_T(std::int64_t j) { return j == 1 ? iota1_T() : matrix_galois(iota1_T(), 2); }

// ---------------------------------------------------------------------------
// theta of type VI: the outer automorphism of I*, transcribed for -V and -T
// and extended to arbitrary elements through BFS words.

struct IcosaTheta {
    std::shared_ptr<MatrixGroup> group; // <(-V), (-T)> under iota_1
    CMatrix thV, thT, thU;              // iota_1(theta(V)) etc.
};

CMatrix theta_of(const MatrixGroup& g, const CMatrix& thnV, const CMatrix& thnT,
                 const CMatrix& target) {
    int idx = g.find(target);
    if (idx < 0) throw std::logic_error("theta_of: target not in I*");
    std::vector<int> word;
    while (idx > 0) {
        word.push_back(g.gen_index(idx));
        idx = g.parent(idx);
    }
    std::reverse(word.begin(), word.end());
    CMatrix acc = CMatrix::identity(2);
    for (int w : word) acc = acc * (w == 0 ? thnV : thnT);
    return acc;
}

const IcosaTheta& icosa_theta() {
    static std::once_flag flag;
    static IcosaTheta tbl;
    std::call_once(flag, [] {
        CMatrix nV = -iota1_V();
        CMatrix nT = -iota1_T();
        tbl.group = std::make_shared<MatrixGroup>(generate({{"nV", nV}, {"nT", nT}}, 120));
        if (tbl.group->order() != 120) throw std::logic_error("icosa_theta: |I*| != 120");
        // theta(-V), theta(-T) as printed; eps = zeta_5
        Cyclotomic e1 = zeta(1, 5), e2 = zeta(2, 5), e3 = zeta(3, 5), e4 = zeta(4, 5);
        Cyclotomic fifth = Cyclotomic::from_rational(Rational(1, 5));
        CMatrix thnV(2);
        thnV.at(0, 0) = fifth * (Cyclotomic::one() - e1 + Cyclotomic::from_int(2) * e2 -
                                 Cyclotomic::from_int(2) * e4);
        thnV.at(0, 1) = fifth * (Cyclotomic::from_int(-2) + Cyclotomic::from_int(2) * e1 + e2 - e4);
        thnV.at(1, 0) = fifth * (Cyclotomic::from_int(2) + e1 - e3 - Cyclotomic::from_int(2) * e4);
        thnV.at(1, 1) = fifth * (Cyclotomic::one() - Cyclotomic::from_int(2) * e1 +
                                 Cyclotomic::from_int(2) * e3 - e4);
        CMatrix thnT(2);
        thnT.at(0, 1) = -e1;
        thnT.at(1, 0) = e4;
        // the images must land back in iota_1(I*)
        if (tbl.group->find(thnV) < 0 || tbl.group->find(thnT) < 0)
            throw std::logic_error("icosa_theta: printed theta images not in I*");
        tbl.thV = theta_of(*tbl.group, thnV, thnT, iota1_V());
        tbl.thT = theta_of(*tbl.group, thnV, thnT, iota1_T());
        tbl.thU = theta_of(*tbl.group, thnV, thnT, iota1_U());
        // theta must be an involution up to inner triviality: theta^2 = id
        auto th2 = [&](const CMatrix& m) { return theta_of(*tbl.group, thnV, thnT, m); };
        if (th2(tbl.thV) != iota1_V() || th2(tbl.thT) != iota1_T() || th2(tbl.thU) != iota1_U())
            throw std::logic_error("icosa_theta: theta is not an involution");
    });
    return tbl;
}

// Word over {V, T} for iota_1(theta(g)), g in {V, T, U}: used as the RHS of
// the S-conjugation relations.  -V = V T^2 and -T = T^3 translate the BFS
// generators.
std::vector<std::pair<std::string, std::int64_t>> theta_word(const std::string& label) {
    const IcosaTheta& tbl = icosa_theta();
    const CMatrix* target = nullptr;
    if (label == "V") target = &tbl.thV;
    else if (label == "T") target = &tbl.thT;
    else target = &tbl.thU;
    int idx = tbl.group->find(*target);
    if (idx < 0) throw std::logic_error("theta_word: image not in I*");
    std::vector<int> gens;
    while (idx > 0) {
        gens.push_back(tbl.group->gen_index(idx));
        idx = tbl.group->parent(idx);
    }
    std::reverse(gens.begin(), gens.end());
    std::vector<std::pair<std::string, std::int64_t>> word;
    for (int g : gens) {
        if (g == 0) { // -V = V * T^2
            word.emplace_back("V", 1);
            word.emplace_back("T", 2);
        } else { // -T = T^3
            word.emplace_back("T", 3);
        }
    }
    if (word.empty()) word.emplace_back("V", 0);
    return word;
}

// ---------------------------------------------------------------------------
// decomposition B = Btilde^x * X^y inside <B> for types III and IV; X is the
// power of B playing the generator of T*_v / O*_v, chosen so that
// conjugation by X acts on <P,Q> exactly as the presentation's X does.
struct BSplit {
    std::int64_t e;     // 3^v
    std::int64_t npp;   // n'' = n / 3^v
    std::int64_t X_exp; // X = B^X_exp
    std::int64_t s;     // X_exp = s * n'', s n'' = 1 mod 3
    std::int64_t x, y;  // B = Btilde^x X^y, Btilde = B^(3^v)
};

BSplit b_split(std::int64_t n) {
    BSplit out;
    std::int64_t v = v3(n);
    out.e = pow3(v);
    out.npp = n / out.e;
    out.s = (out.npp % 3 == 1) ? 1 : 2;
    out.X_exp = out.s * out.npp;
    out.y = inv_mod(mod_pos(out.X_exp, out.e), out.e);
    if (out.npp > 1) {
        std::int64_t num = mod_pos(1 - out.X_exp * out.y, n);
        out.x = (num / out.e) % out.npp;
    } else {
        out.x = 0;
    }
    return out;
}

GroupSpec subgroup_type_I(const GroupSpec& s, std::int64_t index_exp) {
    GroupSpec h;
    h.kind = GroupKind::I;
    h.m = s.m;
    h.n = s.n / index_exp;
    h.r = s.m == 1 ? 1 : pow_mod(s.r, index_exp, s.m);
    if (h.r == 0) h.r = 1;
    return h;
}

// mu_{k,l} (type III, 3 | d): the Q8 blocks iterate the automorphism
// P -> Q -> PQ coming from conjugation by B.
void mu_blocks(std::int64_t d, std::vector<CMatrix>& ps, std::vector<CMatrix>& qs) {
    CMatrix p = tau_Q(); // alpha(P) = [[0,1],[-1,0]]
    CMatrix q = tau_P(); // alpha(Q) = diag(i, -i)
    for (std::int64_t i = 0; i < d; ++i) {
        ps.push_back(p);
        qs.push_back(q);
        CMatrix np = q;
        CMatrix nq = p * q;
        p = np;
        q = nq;
    }
}

CMatrix block_diag_list(const std::vector<CMatrix>& blocks) {
    int dim = 0;
    for (const auto& b : blocks) dim += b.dim();
    CMatrix r(dim);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.dim(); ++i)
            for (int j = 0; j < b.dim(); ++j) r.at(off + i, off + j) = b.at(i, j);
        off += b.dim();
    }
    return r;
}

// [[0, I], [corner, 0]] with square blocks.
CMatrix induced_R(const CMatrix& corner) {
    int h = corner.dim();
    CMatrix r(2 * h);
    for (int i = 0; i < h; ++i) r.at(i, h + i) = Cyclotomic::one();
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) r.at(h + i, j) = corner.at(i, j);
    return r;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void require_unit(std::optional<std::int64_t> idx, std::int64_t mod, const std::string& what) {
    require(idx.has_value(), what + " index required");
    if (mod == 1) {
        require(*idx == 0, what + " must be 0 when the modulus is 1");
        return;
    }
    require(*idx >= 0 && *idx < mod && std::gcd(*idx, mod) == 1,
            what + " must be a unit mod " + std::to_string(mod));
}

} // namespace

std::string to_string(RepFamily f) {
    switch (f) {
        case RepFamily::pi: return "pi";
        case RepFamily::alpha_II: return "alpha_II";
        case RepFamily::nu_III1: return "nu_III1";
        case RepFamily::nu_III2: return "nu_III2";
        case RepFamily::mu_III3: return "mu_III3";
        case RepFamily::psi_IV1a: return "psi_IV1a";
        case RepFamily::gamma_IV1b: return "gamma_IV1b";
        case RepFamily::xi_IV2a: return "xi_IV2a";
        case RepFamily::gamma_IV2b: return "gamma_IV2b";
        case RepFamily::eta_IV3: return "eta_IV3";
        case RepFamily::iota_V: return "iota_V";
        case RepFamily::kappa_VI: return "kappa_VI";
        case RepFamily::alpha_Q: return "alpha_Q";
        case RepFamily::tau_T: return "tau_T";
        case RepFamily::o_O: return "o_O";
        case RepFamily::iota_I: return "iota_I";
    }
    return "?";
}

RepFamily rep_family_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(RepFamily::iota_I); ++i)
        if (to_string(static_cast<RepFamily>(i)) == s) return static_cast<RepFamily>(i);
    throw std::invalid_argument("unknown representation family: " + s);
}

std::string RepSpec::str() const {
    std::ostringstream os;
    os << to_string(family) << "(";
    bool first = true;
    auto emit = [&](const char* name, const std::optional<std::int64_t>& v) {
        if (!v) return;
        if (!first) os << ",";
        os << name << "=" << *v;
        first = false;
    };
    emit("k", k);
    emit("l", l);
    emit("j", j);
    os << ")";
    return os.str();
}

void to_json(nlohmann::json& jj, const RepSpec& r) {
    jj = nlohmann::json{{"family", to_string(r.family)}};
    jj["k"] = r.k ? nlohmann::json(*r.k) : nlohmann::json(nullptr);
    jj["l"] = r.l ? nlohmann::json(*r.l) : nlohmann::json(nullptr);
    jj["j"] = r.j ? nlohmann::json(*r.j) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& jj, RepSpec& r) {
    r.family = rep_family_from_string(jj.at("family").get<std::string>());
    auto opt = [&](const char* key) -> std::optional<std::int64_t> {
        if (!jj.contains(key) || jj.at(key).is_null()) return std::nullopt;
        return jj.at(key).get<std::int64_t>();
    };
    r.k = opt("k");
    r.l = opt("l");
    r.j = opt("j");
}

const CMatrix& Representation::image(const std::string& label) const {
    for (const auto& [name, m] : images)
        if (name == label) return m;
    throw std::invalid_argument("Representation::image: no generator " + label);
}

Representation build_small(RepFamily family, std::int64_t v_or_a, std::int64_t index) {
    Representation rep;
    switch (family) {
        case RepFamily::alpha_Q: {
            std::int64_t a = v_or_a;
            require(a >= 3, "alpha_Q: a >= 3 required");
            std::int64_t half = std::int64_t(1) << (a - 1);
            require(index >= 1 && index < half / 2 && index % 2 == 1,
                    "alpha_Q: k must be odd, 1 <= k < 2^(a-2)");
            rep.spec.kind = GroupKind::Q2a;
            rep.spec.a = a;
            rep.rep.family = family;
            rep.rep.k = index;
            rep.dim = 2;
            CMatrix p = tau_Q(); // [[0,1],[-1,0]]
            CMatrix q = CMatrix::diagonal({zeta(index, half), zeta(half - index, half)});
            rep.images = {{"P", p}, {"Q", q}};
            return rep;
        }
        case RepFamily::tau_T: {
            std::int64_t v = v_or_a;
            require(v >= 0, "tau_T: v >= 0");
            rep.spec.kind = GroupKind::Tstar;
            rep.spec.v = std::max<std::int64_t>(v, 1);
            rep.rep.family = family;
            if (v >= 1) {
                require(index >= 1 && index < pow3(v) && index % 3 != 0,
                        "tau_T: k must be a unit mod 3^v");
                rep.rep.k = index;
            }
            rep.dim = 2;
            rep.images = {{"X", tau_X(v, v >= 1 ? index : 0)}, {"P", tau_P()}, {"Q", tau_Q()}};
            return rep;
        }
        case RepFamily::o_O: {
            std::int64_t v = v_or_a;
            require(v >= 1, "o_O: v >= 1");
            rep.spec.kind = GroupKind::Ostar;
            rep.spec.v = v;
            rep.rep.family = family;
            rep.rep.j = index;
            if (v == 1) {
                require(index == 1 || index == 2, "o_O: j in {1,2} when v = 1");
                rep.dim = 2;
                CMatrix r = o_R();
                if (index == 2) r = -r;
                rep.images = {{"X", tau_X(0, 0)}, {"P", tau_P()}, {"Q", tau_Q()}, {"R", r}};
                return rep;
            }
            require(index >= 1 && index < pow3(v) && index % 3 == 1,
                    "o_O: j = 1 mod 3, 1 <= j < 3^v when v > 1");
            rep.dim = 4;
            CMatrix tx = tau_X(v, index);
            CMatrix X = CMatrix::block_diag(tx, tx.inverse());
            CMatrix P = CMatrix::block_diag(tau_P(), tau_Q() * tau_P());
            CMatrix Q = CMatrix::block_diag(tau_Q(), tau_Q().inverse());
            // R^2 = P^2 = -I, so the induced corner tau_k(R^2) = -I
            CMatrix R = induced_R(CMatrix::scalar(2, -Cyclotomic::one()));
            rep.images = {{"X", X}, {"P", P}, {"Q", Q}, {"R", R}};
            return rep;
        }
        case RepFamily::iota_I: {
            require(index == 1 || index == -1, "iota_I: j = +-1");
            rep.spec.kind = GroupKind::Istar;
            rep.rep.family = family;
            rep.rep.j = index;
            rep.dim = 2;
            rep.images = {{"V", iota_V(index)}, {"T", iota_T(index)}, {"U", iota_U(index)}};
            return rep;
        }
        default:
            throw std::invalid_argument("build_small: not a small-group family");
    }
}

bool type_iv_is_direct_product(const GroupSpec& spec) {
    require(spec.kind == GroupKind::IV, "type_iv_is_direct_product: type IV only");
    const std::int64_t e = pow3(v3(spec.n));
    const GroupSpec h = subgroup_type_I(spec, e);
    const std::int64_t d = h.d();
    const std::int64_t kk = mod_pos(spec.k.value_or(1), std::max<std::int64_t>(h.n, 1));
    const std::int64_t ll = mod_pos(spec.l.value_or(1), std::max<std::int64_t>(h.m, 1));
    // chi_{pi o sigma}(A^i Bt^j) = chi_pi(A^(i l) Bt^(j k)); compare tables.
    for (std::int64_t k0 : units_mod(h.m)) {
        for (std::int64_t l0 : units_mod(h.n)) {
            CMatrix A = pi_A(h.m, h.r, d, k0);
            CMatrix B = pi_B(h.n, d, l0);
            // trace table chi(A^i B^j)
            std::vector<std::vector<Cyclotomic>> chi(h.m, std::vector<Cyclotomic>(h.n));
            CMatrix Ai = CMatrix::identity(static_cast<int>(d));
            for (std::int64_t i = 0; i < h.m; ++i) {
                CMatrix cur = Ai;
                for (std::int64_t jj = 0; jj < h.n; ++jj) {
                    chi[i][jj] = cur.trace();
                    cur = cur * B;
                }
                Ai = Ai * A;
            }
            bool fixed = true;
            for (std::int64_t i = 0; i < h.m && fixed; ++i)
                for (std::int64_t jj = 0; jj < h.n && fixed; ++jj) {
                    std::int64_t i2 = h.m == 1 ? 0 : mul_mod(i, ll, h.m);
                    std::int64_t j2 = mul_mod(jj, kk, h.n);
                    if (!(chi[i][jj] == chi[i2][j2])) fixed = false;
                }
            if (fixed) return true;
        }
    }
    return false;
}

Representation build(const GroupSpec& spec, const RepSpec& rep) {
    {
        auto viol = validate_spec(spec);
        require(viol.empty(), "build: invalid spec: " + (viol.empty() ? "" : viol.front()));
    }
    switch (spec.kind) {
        case GroupKind::Q2a:
            require(rep.family == RepFamily::alpha_Q, "build: family mismatch for Q2a");
            return build_small(rep.family, *spec.a, rep.k.value_or(0));
        case GroupKind::Tstar:
            require(rep.family == RepFamily::tau_T, "build: family mismatch for Tstar");
            // v = 1 carries no index: the only fixed-point-free class is tau
            if (*spec.v == 1 && !rep.k) return build_small(rep.family, 0, 0);
            return build_small(rep.family, *spec.v, rep.k.value_or(0));
        case GroupKind::Ostar:
            require(rep.family == RepFamily::o_O, "build: family mismatch for Ostar");
            return build_small(rep.family, *spec.v, rep.j.value_or(0));
        case GroupKind::Istar:
            require(rep.family == RepFamily::iota_I, "build: family mismatch for Istar");
            return build_small(rep.family, 0, rep.j.value_or(0));
        default: break;
    }

    const std::int64_t d = spec.d();
    Representation out;
    out.spec = spec;
    out.rep = rep;

    switch (spec.kind) {
        case GroupKind::I: {
            require(rep.family == RepFamily::pi, "build: type I takes family pi");
            require_unit(rep.k, spec.m, "pi: k");
            require_unit(rep.l, spec.n, "pi: l");
            out.dim = d;
            out.images = {{"A", pi_A(spec.m, spec.r, d, *rep.k)}, {"B", pi_B(spec.n, d, *rep.l)}};
            return out;
        }
        case GroupKind::II: {
            require(rep.family == RepFamily::alpha_II, "build: type II takes family alpha_II");
            require_unit(rep.k, spec.m, "alpha: k'");
            require_unit(rep.l, spec.n, "alpha: l'");
            out.dim = 2 * d;
            CMatrix A = pi_A(spec.m, spec.r, d, *rep.k);
            CMatrix B = pi_B(spec.n, d, *rep.l);
            CMatrix Al = A.pow(mod_pos(spec.l.value_or(0), std::max<std::int64_t>(spec.m, 1)));
            if (spec.m == 1) Al = A;
            CMatrix Bk = B.pow(mod_pos(*spec.k, spec.n));
            out.images = {{"A", CMatrix::block_diag(A, Al)},
                          {"B", CMatrix::block_diag(B, Bk)},
                          {"R", induced_R(B.pow(spec.n / 2))}};
            return out;
        }
        case GroupKind::III: {
            const std::int64_t v = v3(spec.n);
            const BSplit bs = b_split(spec.n);
            if (rep.family == RepFamily::nu_III1) {
                require(v == 1, "nu_III1 requires 9 not dividing n");
                const GroupSpec h = subgroup_type_I(spec, 3);
                require_unit(rep.k, h.m, "nu: k");
                require_unit(rep.l, h.n, "nu: l");
                out.dim = 2 * d;
                CMatrix pA = pi_A(h.m, h.r, d, *rep.k);
                CMatrix pB = pi_B(h.n, d, *rep.l);
                CMatrix tX = tau_X(0, 0);
                out.images = {{"A", CMatrix::kronecker(pA, CMatrix::identity(2))},
                              {"B", CMatrix::kronecker(pB.pow(bs.x), tX.pow(bs.y))},
                              {"P", CMatrix::kronecker(CMatrix::identity(static_cast<int>(d)),
                                                       tau_P())},
                              {"Q", CMatrix::kronecker(CMatrix::identity(static_cast<int>(d)),
                                                       tau_Q())}};
                return out;
            }
            if (rep.family == RepFamily::nu_III2) {
                require(v >= 2 && d % 3 != 0, "nu_III2 requires 9 | n and 3 not dividing d");
                const GroupSpec h = subgroup_type_I(spec, bs.e);
                require_unit(rep.k, h.m, "nu: k");
                require_unit(rep.l, h.n, "nu: l");
                require(rep.j && *rep.j >= 1 && *rep.j < bs.e && *rep.j % 3 != 0,
                        "nu: j must be a unit mod 3^v");
                out.dim = 2 * d;
                // the stored index j refers to the scalar of X = B^(s n''):
                // build the T-block with jt = j*s so the 5th-column formulas
                // hold for the stored label
                std::int64_t jt = mod_pos(*rep.j * bs.s, bs.e);
                CMatrix pA = pi_A(h.m, h.r, d, *rep.k);
                CMatrix pB = pi_B(h.n, d, *rep.l);
                CMatrix tX = tau_X(v, jt);
                out.images = {{"A", CMatrix::kronecker(pA, CMatrix::identity(2))},
                              {"B", CMatrix::kronecker(pB.pow(bs.x), tX.pow(bs.y))},
                              {"P", CMatrix::kronecker(CMatrix::identity(static_cast<int>(d)),
                                                       tau_P())},
                              {"Q", CMatrix::kronecker(CMatrix::identity(static_cast<int>(d)),
                                                       tau_Q())}};
                return out;
            }
            require(rep.family == RepFamily::mu_III3, "build: family mismatch for type III");
            require(d % 3 == 0, "mu_III3 requires 3 | d");
            require_unit(rep.k, spec.m, "mu: k");
            require_unit(rep.l, spec.n, "mu: l");
            out.dim = 2 * d;
            {
                std::vector<CMatrix> ps, qs;
                mu_blocks(d, ps, qs);
                out.images = {{"A", CMatrix::kronecker(pi_A(spec.m, spec.r, d, *rep.k),
                                                       CMatrix::identity(2))},
                              {"B", CMatrix::kronecker(pi_B(spec.n, d, *rep.l),
                                                       CMatrix::identity(2))},
                              {"P", block_diag_list(ps)},
                              {"Q", block_diag_list(qs)}};
            }
            return out;
        }
        case GroupKind::IV: {
            const std::int64_t v = v3(spec.n);
            const BSplit bs = b_split(spec.n);
            const bool dp = type_iv_is_direct_product(spec);
            if (rep.family == RepFamily::psi_IV1a || rep.family == RepFamily::xi_IV2a) {
                require(dp, "psi/xi require the direct product case");
                const GroupSpec h = subgroup_type_I(spec, bs.e);
                require_unit(rep.k, h.m, "psi/xi: k");
                require_unit(rep.l, h.n, "psi/xi: l");
                CMatrix pA = pi_A(h.m, h.r, d, *rep.k);
                CMatrix pB = pi_B(h.n, d, *rep.l);
                if (rep.family == RepFamily::psi_IV1a) {
                    require(v == 1, "psi_IV1a requires 9 not dividing n");
                    require(rep.j && (*rep.j == 1 || *rep.j == 2), "psi: j in {1,2}");
                    out.dim = 2 * d;
                    CMatrix r = o_R();
                    if (*rep.j == 2) r = -r;
                    CMatrix id_d = CMatrix::identity(static_cast<int>(d));
                    out.images = {{"A", CMatrix::kronecker(pA, CMatrix::identity(2))},
                                  {"B", CMatrix::kronecker(pB.pow(bs.x), tau_X(0, 0).pow(bs.y))},
                                  {"P", CMatrix::kronecker(id_d, tau_P())},
                                  {"Q", CMatrix::kronecker(id_d, tau_Q())},
                                  {"R", CMatrix::kronecker(id_d, r)}};
                    return out;
                }
                require(v >= 2 && d % 3 != 0, "xi_IV2a requires 9 | n, 3 not dividing d");
                require(rep.j && *rep.j >= 1 && *rep.j < bs.e && *rep.j % 3 == 1,
                        "xi: j = 1 mod 3");
                out.dim = 4 * d;
                std::int64_t jt = mod_pos(*rep.j * bs.s, bs.e);
                if (jt % 3 == 2) jt = bs.e - jt; // o_j and o_{-j} are equivalent
                Representation oj = build_small(RepFamily::o_O, v, jt);
                CMatrix id_d = CMatrix::identity(static_cast<int>(d));
                out.images = {{"A", CMatrix::kronecker(pA, CMatrix::identity(4))},
                              {"B", CMatrix::kronecker(pB.pow(bs.x), oj.image("X").pow(bs.y))},
                              {"P", CMatrix::kronecker(id_d, oj.image("P"))},
                              {"Q", CMatrix::kronecker(id_d, oj.image("Q"))},
                              {"R", CMatrix::kronecker(id_d, oj.image("R"))}};
                return out;
            }
            if (rep.family == RepFamily::gamma_IV1b || rep.family == RepFamily::gamma_IV2b ||
                rep.family == RepFamily::eta_IV3) {
                GroupSpec sub = spec;
                sub.kind = GroupKind::III;
                sub.l.reset();
                sub.k.reset();
                RepSpec nu;
                if (rep.family == RepFamily::gamma_IV1b) {
                    require(v == 1 && !dp, "gamma_IV1b: 9 not dividing n, not a direct product");
                    nu.family = RepFamily::nu_III1;
                } else if (rep.family == RepFamily::gamma_IV2b) {
                    require(v >= 2 && d % 3 != 0 && !dp,
                            "gamma_IV2b: 9 | n, 3 not dividing d, not a direct product");
                    nu.family = RepFamily::nu_III2;
                } else {
                    require(d % 3 == 0, "eta_IV3 requires 3 | d");
                    nu.family = RepFamily::mu_III3;
                }
                nu.k = rep.k;
                nu.l = rep.l;
                nu.j = rep.j;
                Representation base = build(sub, nu);
                out.dim = 2 * base.dim;
                const std::int64_t ll = spec.l.value_or(0);
                const std::int64_t kk = *spec.k;
                CMatrix nA = base.image("A");
                CMatrix nB = base.image("B");
                CMatrix nP = base.image("P");
                CMatrix nQ = base.image("Q");
                CMatrix Al = spec.m == 1 ? nA : nA.pow(mod_pos(ll, spec.m));
                out.images = {{"A", CMatrix::block_diag(nA, Al)},
                              {"B", CMatrix::block_diag(nB, nB.pow(mod_pos(kk, spec.n)))},
                              {"P", CMatrix::block_diag(nP, nQ * nP)},
                              {"Q", CMatrix::block_diag(nQ, nQ.inverse())},
                              {"R", induced_R(nP * nP)}};
                return out;
            }
            throw std::invalid_argument("build: family mismatch for type IV");
        }
        case GroupKind::V: {
            require(rep.family == RepFamily::iota_V, "build: type V takes family iota_V");
            require_unit(rep.k, spec.m, "iota: k");
            require_unit(rep.l, spec.n, "iota: l");
            require(rep.j && (*rep.j == 1 || *rep.j == -1), "iota: j = +-1");
            out.dim = 2 * d;
            CMatrix pA = pi_A(spec.m, spec.r, d, *rep.k);
            CMatrix pB = pi_B(spec.n, d, *rep.l);
            CMatrix id_d = CMatrix::identity(static_cast<int>(d));
            out.images = {{"A", CMatrix::kronecker(pA, CMatrix::identity(2))},
                          {"B", CMatrix::kronecker(pB, CMatrix::identity(2))},
                          {"V", CMatrix::kronecker(id_d, iota_V(*rep.j))},
                          {"T", CMatrix::kronecker(id_d, iota_T(*rep.j))},
                          {"U", CMatrix::kronecker(id_d, iota_U(*rep.j))}};
            return out;
        }
        case GroupKind::VI: {
            require(rep.family == RepFamily::kappa_VI, "build: type VI takes family kappa_VI");
            require_unit(rep.k, spec.m, "kappa: k'");
            require_unit(rep.l, spec.n, "kappa: l'");
            require(rep.j && (*rep.j == 1 || *rep.j == -1), "kappa: j = +-1");
            out.dim = 4 * d;
            GroupSpec vspec = spec;
            vspec.kind = GroupKind::V;
            vspec.l.reset();
            vspec.k.reset();
            RepSpec vrep;
            vrep.family = RepFamily::iota_V;
            vrep.k = rep.k;
            vrep.l = rep.l;
            vrep.j = rep.j;
            Representation base = build(vspec, vrep);
            const IcosaTheta& tbl = icosa_theta();
            auto theta_img = [&](const CMatrix& th) {
                CMatrix m = *rep.j == 1 ? th : matrix_galois(th, 2);
                return CMatrix::kronecker(CMatrix::identity(static_cast<int>(d)), m);
            };
            const std::int64_t ll = spec.l.value_or(0);
            const std::int64_t kk = spec.k.value_or(0);
            CMatrix iA = base.image("A");
            CMatrix iB = base.image("B");
            CMatrix Al = spec.m == 1 ? iA : iA.pow(mod_pos(ll, spec.m));
            CMatrix Bk = iB.pow(mod_pos(kk, spec.n));
            CMatrix S(static_cast<int>(out.dim));
            const int h = static_cast<int>(2 * d);
            for (int i = 0; i < h; ++i) {
                S.at(i, h + i) = Cyclotomic::one();
                S.at(h + i, i) = -Cyclotomic::one();
            }
            out.images = {{"A", CMatrix::block_diag(iA, Al)},
                          {"B", CMatrix::block_diag(iB, Bk)},
                          {"V", CMatrix::block_diag(base.image("V"), theta_img(tbl.thV))},
                          {"T", CMatrix::block_diag(base.image("T"), theta_img(tbl.thT))},
                          {"U", CMatrix::block_diag(base.image("U"), theta_img(tbl.thU))},
                          {"S", S}};
            return out;
        }
        default:
            throw std::invalid_argument("build: unhandled kind");
    }
}

// ---------------------------------------------------------------------------
// relations

namespace {

using Word = std::vector<std::pair<std::string, std::int64_t>>;

CMatrix eval_word(const Representation& rep, const Word& w) {
    CMatrix acc = CMatrix::identity(static_cast<int>(rep.dim));
    for (const auto& [label, e] : w) {
        if (e == 0) continue;
        const CMatrix& g = rep.image(label);
        acc = acc * (e > 0 ? g.pow(e) : g.inverse().pow(-e));
    }
    return acc;
}

struct Relation {
    std::string name;
    Word lhs, rhs;
};

void add_metacyclic(const GroupSpec& s, std::vector<Relation>& rels) {
    rels.push_back({"A^m = 1", {{"A", s.m}}, {}});
    rels.push_back({"B^n = 1", {{"B", s.n}}, {}});
    rels.push_back({"B A B^-1 = A^r", {{"B", 1}, {"A", 1}, {"B", -1}}, {{"A", mod_pos(s.r, std::max<std::int64_t>(s.m, 1))}}});
}

void add_pq(std::vector<Relation>& rels) {
    rels.push_back({"P^4 = 1", {{"P", 4}}, {}});
    rels.push_back({"P^2 = Q^2", {{"P", 2}}, {{"Q", 2}}});
    rels.push_back({"P^2 = (PQ)^2", {{"P", 2}}, {{"P", 1}, {"Q", 1}, {"P", 1}, {"Q", 1}}});
    rels.push_back({"P Q P^-1 = Q^-1", {{"P", 1}, {"Q", 1}, {"P", -1}}, {{"Q", -1}}});
}

void add_icosahedral(std::vector<Relation>& rels) {
    rels.push_back({"V^5 = 1", {{"V", 5}}, {}});
    rels.push_back({"T^4 = 1", {{"T", 4}}, {}});
    rels.push_back({"T^2 = U^2", {{"T", 2}}, {{"U", 2}}});
    rels.push_back({"(VT)^3 = 1", {{"V", 1}, {"T", 1}, {"V", 1}, {"T", 1}, {"V", 1}, {"T", 1}}, {}});
    rels.push_back({"(VU)^2 = T^2",
                    {{"V", 1}, {"U", 1}, {"V", 1}, {"U", 1}},
                    {{"T", 2}}});
}

void add_commuting(const std::string& a, const std::string& b, std::vector<Relation>& rels) {
    rels.push_back({a + " " + b + " = " + b + " " + a, {{a, 1}, {b, 1}}, {{b, 1}, {a, 1}}});
}

std::vector<Relation> relations_for(const GroupSpec& s) {
    std::vector<Relation> rels;
    switch (s.kind) {
        case GroupKind::I:
            add_metacyclic(s, rels);
            break;
        case GroupKind::II:
            add_metacyclic(s, rels);
            rels.push_back({"R^2 = B^(n/2)", {{"R", 2}}, {{"B", s.n / 2}}});
            rels.push_back({"R A R^-1 = A^l",
                            {{"R", 1}, {"A", 1}, {"R", -1}},
                            {{"A", mod_pos(s.l.value_or(0), std::max<std::int64_t>(s.m, 1))}}});
            rels.push_back({"R B R^-1 = B^k",
                            {{"R", 1}, {"B", 1}, {"R", -1}},
                            {{"B", mod_pos(s.k.value_or(0), s.n)}}});
            break;
        case GroupKind::III:
            add_metacyclic(s, rels);
            add_pq(rels);
            add_commuting("A", "P", rels);
            add_commuting("A", "Q", rels);
            rels.push_back({"B P B^-1 = Q", {{"B", 1}, {"P", 1}, {"B", -1}}, {{"Q", 1}}});
            rels.push_back({"B Q B^-1 = PQ", {{"B", 1}, {"Q", 1}, {"B", -1}}, {{"P", 1}, {"Q", 1}}});
            break;
        case GroupKind::IV:
            add_metacyclic(s, rels);
            add_pq(rels);
            add_commuting("A", "P", rels);
            add_commuting("A", "Q", rels);
            rels.push_back({"B P B^-1 = Q", {{"B", 1}, {"P", 1}, {"B", -1}}, {{"Q", 1}}});
            rels.push_back({"B Q B^-1 = PQ", {{"B", 1}, {"Q", 1}, {"B", -1}}, {{"P", 1}, {"Q", 1}}});
            rels.push_back({"R^2 = P^2", {{"R", 2}}, {{"P", 2}}});
            rels.push_back({"R P R^-1 = QP", {{"R", 1}, {"P", 1}, {"R", -1}}, {{"Q", 1}, {"P", 1}}});
            rels.push_back({"R Q R^-1 = Q^-1", {{"R", 1}, {"Q", 1}, {"R", -1}}, {{"Q", -1}}});
            rels.push_back({"R A R^-1 = A^l",
                            {{"R", 1}, {"A", 1}, {"R", -1}},
                            {{"A", mod_pos(s.l.value_or(0), std::max<std::int64_t>(s.m, 1))}}});
            rels.push_back({"R B R^-1 = B^k",
                            {{"R", 1}, {"B", 1}, {"R", -1}},
                            {{"B", mod_pos(s.k.value_or(0), s.n)}}});
            break;
        case GroupKind::V:
            add_metacyclic(s, rels);
            add_icosahedral(rels);
            for (const char* kgen : {"A", "B"})
                for (const char* igen : {"V", "T", "U"}) add_commuting(kgen, igen, rels);
            break;
        case GroupKind::VI: {
            add_metacyclic(s, rels);
            add_icosahedral(rels);
            for (const char* kgen : {"A", "B"})
                for (const char* igen : {"V", "T", "U"}) add_commuting(kgen, igen, rels);
            rels.push_back({"S^2 = -1", {{"S", 2}}, {{"T", 2}}});
            rels.push_back({"S A S^-1 = A^l",
                            {{"S", 1}, {"A", 1}, {"S", -1}},
                            {{"A", mod_pos(s.l.value_or(0), std::max<std::int64_t>(s.m, 1))}}});
            rels.push_back({"S B S^-1 = B^k",
                            {{"S", 1}, {"B", 1}, {"S", -1}},
                            {{"B", mod_pos(s.k.value_or(0), s.n)}}});
            for (const char* igen : {"V", "T", "U"})
                rels.push_back({std::string("S ") + igen + " S^-1 = theta(" + igen + ")",
                                {{"S", 1}, {igen, 1}, {"S", -1}},
                                theta_word(igen)});
            break;
        }
        case GroupKind::Q2a: {
            std::int64_t half = std::int64_t(1) << (*s.a - 1);
            rels.push_back({"Q^(2^(a-1)) = 1", {{"Q", half}}, {}});
            rels.push_back({"P^2 = Q^(2^(a-2))", {{"P", 2}}, {{"Q", half / 2}}});
            rels.push_back({"P Q P^-1 = Q^-1", {{"P", 1}, {"Q", 1}, {"P", -1}}, {{"Q", -1}}});
            break;
        }
        case GroupKind::Tstar: {
            rels.push_back({"X^(3^v) = 1", {{"X", pow3(*s.v)}}, {}});
            rels.push_back({"P^4 = 1", {{"P", 4}}, {}});
            rels.push_back({"P^2 = Q^2", {{"P", 2}}, {{"Q", 2}}});
            rels.push_back({"X P X^-1 = Q", {{"X", 1}, {"P", 1}, {"X", -1}}, {{"Q", 1}}});
            rels.push_back({"X Q X^-1 = PQ", {{"X", 1}, {"Q", 1}, {"X", -1}}, {{"P", 1}, {"Q", 1}}});
            rels.push_back({"P Q P^-1 = Q^-1", {{"P", 1}, {"Q", 1}, {"P", -1}}, {{"Q", -1}}});
            break;
        }
        case GroupKind::Ostar: {
            rels.push_back({"X^(3^v) = 1", {{"X", pow3(*s.v)}}, {}});
            rels.push_back({"P^4 = 1", {{"P", 4}}, {}});
            rels.push_back({"P^2 = Q^2", {{"P", 2}}, {{"Q", 2}}});
            rels.push_back({"P^2 = R^2", {{"P", 2}}, {{"R", 2}}});
            rels.push_back({"X P X^-1 = Q", {{"X", 1}, {"P", 1}, {"X", -1}}, {{"Q", 1}}});
            rels.push_back({"X Q X^-1 = PQ", {{"X", 1}, {"Q", 1}, {"X", -1}}, {{"P", 1}, {"Q", 1}}});
            rels.push_back({"P Q P^-1 = Q^-1", {{"P", 1}, {"Q", 1}, {"P", -1}}, {{"Q", -1}}});
            rels.push_back({"R X R^-1 = X^-1", {{"R", 1}, {"X", 1}, {"R", -1}}, {{"X", -1}}});
            rels.push_back({"R P R^-1 = QP", {{"R", 1}, {"P", 1}, {"R", -1}}, {{"Q", 1}, {"P", 1}}});
            rels.push_back({"R Q R^-1 = Q^-1", {{"R", 1}, {"Q", 1}, {"R", -1}}, {{"Q", -1}}});
            break;
        }
        case GroupKind::Istar:
            add_icosahedral(rels);
            break;
    }
    return rels;
}

} // namespace

std::vector<std::string> verify_relations(const Representation& rep) {
    std::vector<std::string> failed;
    for (const auto& rel : relations_for(rep.spec)) {
        if (!(eval_word(rep, rel.lhs) == eval_word(rep, rel.rhs))) failed.push_back(rel.name);
    }
    return failed;
}

bool irreducible(const Representation& rep, const MatrixGroup& g) {
    Cyclotomic norm;
    for (int i = 0; i < g.order(); ++i) {
        Cyclotomic chi = g.element(i).trace();
        Cyclotomic chi_inv = g.element(g.inverse(i)).trace();
        norm += chi * chi_inv;
    }
    norm *= Cyclotomic::from_rational(Rational(1, g.order()));
    return norm == Cyclotomic::one();
}

std::vector<Cyclotomic> character(const Representation& rep, const MatrixGroup& ref) {
    if (static_cast<size_t>(ref.gens().size()) != rep.images.size())
        throw std::invalid_argument("character: generator count mismatch");
    std::vector<CMatrix> mats;
    mats.reserve(ref.order());
    std::vector<Cyclotomic> traces;
    traces.reserve(ref.order());
    mats.push_back(CMatrix::identity(static_cast<int>(rep.dim)));
    traces.push_back(mats[0].trace());
    for (int i = 1; i < ref.order(); ++i) {
        mats.push_back(mats[ref.parent(i)] * rep.images[ref.gen_index(i)].second);
        traces.push_back(mats.back().trace());
    }
    return traces;
}

namespace {

std::vector<RepSpec> raw_repspecs(const GroupSpec& spec) {
    std::vector<RepSpec> out;
    auto push = [&](RepFamily f, std::optional<std::int64_t> k, std::optional<std::int64_t> l,
                    std::optional<std::int64_t> j) {
        RepSpec r;
        r.family = f;
        r.k = k;
        r.l = l;
        r.j = j;
        out.push_back(r);
    };
    switch (spec.kind) {
        case GroupKind::I:
            for (auto k : units_mod(spec.m))
                for (auto l : units_mod(spec.n)) push(RepFamily::pi, k, l, std::nullopt);
            break;
        case GroupKind::II:
            for (auto k : units_mod(spec.m))
                for (auto l : units_mod(spec.n)) push(RepFamily::alpha_II, k, l, std::nullopt);
            break;
        case GroupKind::III: {
            std::int64_t v = v3(spec.n);
            std::int64_t d = spec.d();
            if (v == 1 && d % 3 != 0) {
                for (auto k : units_mod(spec.m))
                    for (auto l : units_mod(spec.n / 3)) push(RepFamily::nu_III1, k, l, std::nullopt);
            } else if (v >= 2 && d % 3 != 0) {
                for (auto k : units_mod(spec.m))
                    for (auto l : units_mod(spec.n / pow3(v)))
                        for (auto j : units_mod(pow3(v))) push(RepFamily::nu_III2, k, l, j);
            } else {
                for (auto k : units_mod(spec.m))
                    for (auto l : units_mod(spec.n)) push(RepFamily::mu_III3, k, l, std::nullopt);
            }
            break;
        }
        case GroupKind::IV: {
            std::int64_t v = v3(spec.n);
            std::int64_t d = spec.d();
            bool dp = type_iv_is_direct_product(spec);
            if (d % 3 == 0) {
                for (auto k : units_mod(spec.m))
                    for (auto l : units_mod(spec.n)) push(RepFamily::eta_IV3, k, l, std::nullopt);
            } else if (v == 1 && dp) {
                for (auto k : units_mod(spec.m))
                    for (auto l : units_mod(spec.n / 3))
                        for (std::int64_t j : {1, 2}) push(RepFamily::psi_IV1a, k, l, j);
            } else if (v == 1) {
                for (auto k : units_mod(spec.m))
                    for (auto l : units_mod(spec.n / 3))
                        push(RepFamily::gamma_IV1b, k, l, std::nullopt);
            } else if (dp) {
                for (auto k : units_mod(spec.m))
                    for (auto l : units_mod(spec.n / pow3(v)))
                        for (std::int64_t j = 1; j < pow3(v); j += 3)
                            push(RepFamily::xi_IV2a, k, l, j);
            } else {
                for (auto k : units_mod(spec.m))
                    for (auto l : units_mod(spec.n / pow3(v)))
                        for (auto j : units_mod(pow3(v))) push(RepFamily::gamma_IV2b, k, l, j);
            }
            break;
        }
        case GroupKind::V:
            for (auto k : units_mod(spec.m))
                for (auto l : units_mod(spec.n))
                    for (std::int64_t j : {1, -1}) push(RepFamily::iota_V, k, l, j);
            break;
        case GroupKind::VI:
            for (auto k : units_mod(spec.m))
                for (auto l : units_mod(spec.n))
                    for (std::int64_t j : {1, -1}) push(RepFamily::kappa_VI, k, l, j);
            break;
        case GroupKind::Q2a:
            for (std::int64_t k = 1; k < (std::int64_t(1) << (*spec.a - 2)); k += 2)
                push(RepFamily::alpha_Q, k, std::nullopt, std::nullopt);
            break;
        case GroupKind::Tstar:
            if (*spec.v == 1) {
                push(RepFamily::tau_T, std::nullopt, std::nullopt, std::nullopt);
            } else {
                for (auto k : units_mod(pow3(*spec.v)))
                    push(RepFamily::tau_T, k, std::nullopt, std::nullopt);
            }
            break;
        case GroupKind::Ostar:
            if (*spec.v == 1) {
                for (std::int64_t j : {1, 2}) push(RepFamily::o_O, std::nullopt, std::nullopt, j);
            } else {
                for (std::int64_t j = 1; j < pow3(*spec.v); j += 3)
                    push(RepFamily::o_O, std::nullopt, std::nullopt, j);
            }
            break;
        case GroupKind::Istar:
            for (std::int64_t j : {1, -1}) push(RepFamily::iota_I, std::nullopt, std::nullopt, j);
            break;
    }
    return out;
}

std::mutex g_index_mutex;
std::map<std::string, std::shared_ptr<const RepIndex>> g_index_cache;

std::string spec_cache_key(const GroupSpec& s) { return s.str(); }

std::shared_ptr<const RepIndex> build_rep_index(const GroupSpec& spec) {
    auto idx = std::make_shared<RepIndex>();
    idx->spec = spec;
    std::vector<RepSpec> raws = raw_repspecs(spec);
    if (raws.empty()) throw std::logic_error("rep index: no raw representations");

    std::vector<Representation> reps;
    reps.reserve(raws.size());
    for (const auto& r : raws) reps.push_back(build(spec, r));

    const std::int64_t order = abstract_order(spec);
    idx->group = std::make_shared<MatrixGroup>(generate(reps.front().images, order + 1));
    if (idx->group->order() != order)
        throw std::logic_error("rep index: closure order " + std::to_string(idx->group->order()) +
                               " != abstract order " + std::to_string(order) + " for " +
                               spec.str());

    // character keys at a common conductor
    std::vector<std::vector<Cyclotomic>> chars;
    chars.reserve(reps.size());
    std::int64_t L = 1;
    for (const auto& rep : reps) {
        chars.push_back(character(rep, *idx->group));
        for (const auto& t : chars.back()) {
            std::int64_t c = t.conductor();
            L = L / std::gcd(L, c) * c;
        }
    }
    std::map<std::string, RepSpec> class_of;
    for (size_t i = 0; i < reps.size(); ++i) {
        std::string key;
        for (const auto& t : chars[i]) {
            t.lifted_to(L).append_key(key);
            key += '/';
        }
        auto it = class_of.find(key);
        if (it == class_of.end()) {
            class_of.emplace(key, raws[i]);
            idx->classes.push_back(raws[i]);
            idx->raw_to_class[raws[i]] = raws[i];
            std::vector<std::pair<std::string, Cyclotomic>> dets;
            for (const auto& [label, img] : reps[i].images) dets.emplace_back(label, img.det());
            idx->dets[raws[i]] = std::move(dets);
            idx->dims[raws[i]] = reps[i].dim;
        } else {
            idx->raw_to_class[raws[i]] = it->second;
        }
    }
    std::sort(idx->classes.begin(), idx->classes.end());
    return idx;
}

} // namespace

std::shared_ptr<const RepIndex> rep_index(const GroupSpec& spec) {
    const std::string key = spec_cache_key(spec);
    {
        std::lock_guard<std::mutex> lk(g_index_mutex);
        auto it = g_index_cache.find(key);
        if (it != g_index_cache.end()) return it->second;
    }
    auto idx = build_rep_index(spec);
    std::lock_guard<std::mutex> lk(g_index_mutex);
    auto [it, inserted] = g_index_cache.emplace(key, idx);
    return it->second;
}

std::vector<RepSpec> enumerate_repspecs(const GroupSpec& spec) { return rep_index(spec)->classes; }

} // namespace qsing
