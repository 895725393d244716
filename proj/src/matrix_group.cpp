#include "qsing/matrix_group.hpp"

#include <algorithm>
#include <mutex>
#include <deque>
#include <numeric>
#include <set>

#include "qsing/errors.hpp"

namespace qsing {

MatrixGroup generate(const std::vector<std::pair<std::string, CMatrix>>& gens,
                     std::int64_t max_order) {
    if (gens.empty()) throw std::invalid_argument("generate: no generators");
    if (max_order < 1) throw std::invalid_argument("generate: max_order must be >= 1");
    const int dim = gens.front().second.dim();
    std::int64_t L = 1;
    for (const auto& [label, g] : gens) {
        if (g.dim() != dim) throw DimensionMismatch("generate: generator dimensions differ");
        std::int64_t c = g.common_conductor();
        L = L / std::gcd(L, c) * c;
    }
    MatrixGroup G;
    G.dim_ = dim;
    G.conductor_ = L;
    for (const auto& [label, g] : gens) G.gens_.emplace_back(label, g.lifted_to(L));

    CMatrix id = CMatrix::identity(dim).lifted_to(L);
    G.elements_.push_back(id);
    G.parent_.push_back(-1);
    G.gen_index_.push_back(-1);
    G.index_.emplace(id.key(), 0);

    std::deque<int> queue{0};
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (size_t j = 0; j < G.gens_.size(); ++j) {
            CMatrix prod = (G.elements_[i] * G.gens_[j].second).lifted_to(L);
            std::string key = prod.key();
            auto it = G.index_.find(key);
            if (it != G.index_.end()) continue;
            if (static_cast<std::int64_t>(G.elements_.size()) >= max_order)
                throw BoundExceeded("generate: closure exceeds max_order " +
                                    std::to_string(max_order));
            int idx = static_cast<int>(G.elements_.size());
            G.elements_.push_back(std::move(prod));
            G.parent_.push_back(i);
            G.gen_index_.push_back(static_cast<int>(j));
            G.index_.emplace(std::move(key), idx);
            queue.push_back(idx);
        }
    }
    G.order_cache_.assign(G.elements_.size(), 0);
    return G;
}

int MatrixGroup::find(const CMatrix& m) const {
    std::int64_t c = m.common_conductor();
    if (conductor_ % c == 0) {
        auto it = index_.find(m.lifted_to(conductor_).key());
        return it == index_.end() ? -1 : it->second;
    }
    // Entry conductors outside the group's field: fall back to semantic scan.
    for (int i = 0; i < order(); ++i)
        if (elements_[i] == m) return i;
    return -1;
}

int MatrixGroup::mul(int i, int j) const {
    CMatrix prod = (elements_[i] * elements_[j]).lifted_to(conductor_);
    auto it = index_.find(prod.key());
    if (it == index_.end()) throw std::logic_error("MatrixGroup::mul: product not in group");
    return it->second;
}

int MatrixGroup::inverse(int i) const {
    auto it = index_.find(elements_[i].inverse().lifted_to(conductor_).key());
    if (it == index_.end()) throw std::logic_error("MatrixGroup::inverse: not in group");
    return it->second;
}

namespace {
// Guards the lazy order cache; the rest of MatrixGroup is immutable after
// generation and safe to share.
std::mutex g_order_cache_mutex;
} // namespace

std::int64_t MatrixGroup::element_order(int i) const {
    std::lock_guard<std::mutex> lk(g_order_cache_mutex);
    if (!order_cache_.empty() && order_cache_[i] != 0) return order_cache_[i];
    std::int64_t o = 1;
    int p = i;
    while (p != 0) {
        p = mul(p, i);
        ++o;
    }
    if (!order_cache_.empty()) order_cache_[i] = o;
    return o;
}

std::int64_t MatrixGroup::exponent() const {
    std::int64_t e = 1;
    for (int i = 0; i < order(); ++i) {
        std::int64_t o = element_order(i);
        e = e / std::gcd(e, o) * o;
    }
    return e;
}

std::vector<int> MatrixGroup::close_indices(std::vector<int> seed) const {
    std::set<int> have(seed.begin(), seed.end());
    have.insert(0);
    std::deque<int> queue(have.begin(), have.end());
    std::vector<int> gens(seed.begin(), seed.end());
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (int g : gens) {
            int p = mul(i, g);
            if (have.insert(p).second) queue.push_back(p);
        }
    }
    return std::vector<int>(have.begin(), have.end());
}

bool is_fixed_point_free(const MatrixGroup& g) {
    for (int i = 1; i < g.order(); ++i)
        if (g.element(i).has_eigenvalue_one()) return false;
    return true;
}

namespace {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_prime_power(std::int64_t n, std::int64_t p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

} // namespace

bool pq_conditions_hold(const MatrixGroup& g, std::int64_t bound) {
    if (g.order() > bound) throw BoundExceeded("pq_conditions_hold: group order exceeds bound");
    // Distinct prime-order cyclic subgroups, one generator each.
    std::set<std::vector<int>> seen;
    std::vector<int> reps;
    for (int i = 1; i < g.order(); ++i) {
        if (!is_prime(g.element_order(i))) continue;
        std::vector<int> cyc = g.close_indices({i});
        if (seen.insert(cyc).second) reps.push_back(i);
    }
    for (size_t a = 0; a < reps.size(); ++a) {
        for (size_t b = a; b < reps.size(); ++b) {
            std::vector<int> sub = g.close_indices({reps[a], reps[b]});
            std::int64_t s = static_cast<std::int64_t>(sub.size());
            // order pq with p, q prime (possibly equal)?
            bool pq = false;
            for (std::int64_t p : prime_divisors(s))
                if (s % p == 0 && is_prime(s / p)) pq = true;
            if (!pq) continue;
            bool cyclic = false;
            for (int e : sub)
                if (g.element_order(e) == s) {
                    cyclic = true;
                    break;
                }
            if (!cyclic) return false;
        }
    }
    return true;
}

std::string to_string(SylowShape s) {
    switch (s) {
        case SylowShape::Cyclic: return "cyclic";
        case SylowShape::GeneralizedQuaternion: return "generalized-quaternion";
        case SylowShape::Other: return "other";
    }
    return "?";
}

std::map<std::int64_t, SylowShape> sylow_shape(const MatrixGroup& g, std::int64_t bound) {
    if (g.order() > bound) throw BoundExceeded("sylow_shape: group order exceeds bound");
    std::map<std::int64_t, SylowShape> out;
    const std::int64_t n = g.order();
    for (std::int64_t p : prime_divisors(n)) {
        std::int64_t ppart = 1;
        std::int64_t nn = n;
        while (nn % p == 0) {
            ppart *= p;
            nn /= p;
        }
        // all p-elements, maximal order first
        std::vector<int> pelems;
        for (int i = 1; i < g.order(); ++i)
            if (is_prime_power(g.element_order(i), p)) pelems.push_back(i);
        std::sort(pelems.begin(), pelems.end(), [&](int x, int y) {
            return g.element_order(x) > g.element_order(y);
        });
        std::vector<int> sylow = pelems.empty() ? std::vector<int>{0}
                                                : g.close_indices({pelems.front()});
        // Extend by normalizing p-elements; N_P(S) > S whenever S is not yet
        // Sylow, so this terminates at the full p-part.
        bool grew = true;
        while (static_cast<std::int64_t>(sylow.size()) < ppart && grew) {
            grew = false;
            std::set<int> in_sub(sylow.begin(), sylow.end());
            for (int h : pelems) {
                if (in_sub.count(h)) continue;
                int hinv = g.inverse(h);
                bool normalizes = true;
                for (int s : sylow) {
                    int conj = g.mul(g.mul(h, s), hinv);
                    if (!in_sub.count(conj)) {
                        normalizes = false;
                        break;
                    }
                }
                if (!normalizes) continue;
                std::vector<int> seed = sylow;
                seed.push_back(h);
                std::vector<int> bigger = g.close_indices(seed);
                if (is_prime_power(static_cast<std::int64_t>(bigger.size()), p) &&
                    bigger.size() > sylow.size()) {
                    sylow = std::move(bigger);
                    grew = true;
                    break;
                }
            }
        }
        const std::int64_t s = static_cast<std::int64_t>(sylow.size());
        SylowShape shape = SylowShape::Other;
        bool cyclic = false;
        for (int e : sylow)
            if (g.element_order(e) == s) {
                cyclic = true;
                break;
            }
        if (cyclic) {
            shape = SylowShape::Cyclic;
        } else if (p == 2 && s >= 8) {
            // presentation search: Q of order s/2 and P with P^2 = Q^(s/4),
            // P Q P^-1 = Q^-1
            for (int q : sylow) {
                if (g.element_order(q) != s / 2) continue;
                // q2 = Q^(2^(a-2)) = Q^(s/4)
                int q2 = 0;
                for (std::int64_t e = 0; e < s / 4; ++e) q2 = g.mul(q2, q);
                int qinv = g.inverse(q);
                bool found = false;
                for (int cand : sylow) {
                    if (g.mul(cand, cand) != q2) continue;
                    int conj = g.mul(g.mul(cand, q), g.inverse(cand));
                    if (conj != qinv) continue;
                    // <P, Q> must be the whole subgroup
                    if (g.close_indices({cand, q}).size() == sylow.size()) {
                        found = true;
                        break;
                    }
                }
                if (found) {
                    shape = SylowShape::GeneralizedQuaternion;
                    break;
                }
            }
        }
        out[p] = shape;
    }
    return out;
}

} // namespace qsing
