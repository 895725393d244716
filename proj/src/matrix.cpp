#include "qsing/matrix.hpp"

#include <numeric>
#include <sstream>

#include "qsing/errors.hpp"

namespace qsing {

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = Cyclotomic::one();
    return m;
}

CMatrix CMatrix::scalar(int dim, const Cyclotomic& c) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = c;
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<Cyclotomic>& d) {
    CMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m.at(i, i) = d[i];
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("matrix product: dimension mismatch");
    CMatrix r(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < dim_; ++k) {
            const Cyclotomic& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < dim_; ++j) {
                const Cyclotomic& y = o.at(k, j);
                if (y.is_zero()) continue;
                r.at(i, j) += x * y;
            }
        }
    }
    return r;
}

CMatrix CMatrix::operator-() const {
    CMatrix r(dim_);
    for (int i = 0; i < dim_ * dim_; ++i) r.a_[i] = -a_[i];
    return r;
}

bool operator==(const CMatrix& a, const CMatrix& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_ * a.dim_; ++i)
        if (a.a_[i] != b.a_[i]) return false;
    return true;
}

CMatrix CMatrix::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    CMatrix result = identity(dim_);
    CMatrix base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.at(i, j) = at(j, i);
    return r;
}

Cyclotomic CMatrix::trace() const {
    Cyclotomic t;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

namespace {

// Gaussian elimination with first-nonzero pivoting.  Returns the rank and,
// when wanted, accumulates the determinant.
int eliminate(CMatrix& m, Cyclotomic* det_out) {
    const int n = m.dim();
    Cyclotomic det = Cyclotomic::one();
    int rank = 0;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int pivot = -1;
        for (int i = row; i < n; ++i) {
            if (!m.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) {
            if (det_out) det = Cyclotomic::zero();
            continue;
        }
        if (pivot != row) {
            for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(row, j));
            det = -det;
        }
        const Cyclotomic inv_p = m.at(row, col).inv();
        if (det_out) det *= m.at(row, col);
        for (int i = row + 1; i < n; ++i) {
            if (m.at(i, col).is_zero()) continue;
            Cyclotomic f = m.at(i, col) * inv_p;
            for (int j = col; j < n; ++j) {
                if (m.at(row, j).is_zero()) continue;
                m.at(i, j) -= f * m.at(row, j);
            }
        }
        ++rank;
        ++row;
    }
    if (det_out) *det_out = (rank == n) ? det : Cyclotomic::zero();
    return rank;
}

} // namespace

Cyclotomic CMatrix::det() const {
    CMatrix work = *this;
    Cyclotomic d;
    eliminate(work, &d);
    return d;
}

int CMatrix::rank() const {
    CMatrix work = *this;
    return eliminate(work, nullptr);
}

CMatrix CMatrix::inverse() const {
    const int n = dim_;
    CMatrix work = *this;
    CMatrix inv = identity(n);
    // forward elimination on [work | inv]
    int row = 0;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = row; i < n; ++i)
            if (!work.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) throw DivisionByZero("matrix inverse: singular matrix");
        if (pivot != row)
            for (int j = 0; j < n; ++j) {
                std::swap(work.at(pivot, j), work.at(row, j));
                std::swap(inv.at(pivot, j), inv.at(row, j));
            }
        const Cyclotomic pi = work.at(row, col).inv();
        for (int j = 0; j < n; ++j) {
            work.at(row, j) *= pi;
            inv.at(row, j) *= pi;
        }
        for (int i = 0; i < n; ++i) {
            if (i == row || work.at(i, col).is_zero()) continue;
            Cyclotomic f = work.at(i, col);
            for (int j = 0; j < n; ++j) {
                work.at(i, j) -= f * work.at(row, j);
                inv.at(i, j) -= f * inv.at(row, j);
            }
        }
        ++row;
    }
    return inv;
}

bool CMatrix::is_identity() const {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            if (i == j) {
                if (!(at(i, j) == Cyclotomic::one())) return false;
            } else if (!at(i, j).is_zero()) {
                return false;
            }
        }
    return true;
}

bool CMatrix::has_eigenvalue_one() const {
    CMatrix work = *this;
    for (int i = 0; i < dim_; ++i) work.at(i, i) -= Cyclotomic::one();
    return work.det().is_zero();
}

bool CMatrix::is_quasireflection() const {
    if (is_identity())
        throw std::invalid_argument("is_quasireflection: identity is not a quasireflection");
    CMatrix work = *this;
    for (int i = 0; i < dim_; ++i) work.at(i, i) -= Cyclotomic::one();
    return work.rank() == 1;
}

int CMatrix::eigenvalue_multiplicity(const Cyclotomic& zeta) const {
    CMatrix work = *this;
    for (int i = 0; i < dim_; ++i) work.at(i, i) -= zeta;
    return dim_ - work.rank();
}

std::int64_t CMatrix::common_conductor() const {
    std::int64_t L = 1;
    for (const auto& c : a_) {
        std::int64_t m = c.conductor();
        L = L / std::gcd(L, m) * m;
    }
    return L;
}

CMatrix CMatrix::lifted_to(std::int64_t L) const {
    CMatrix r(dim_);
    for (int i = 0; i < dim_ * dim_; ++i) r.a_[i] = a_[i].lifted_to(L);
    return r;
}

CMatrix CMatrix::kronecker(const CMatrix& x, const CMatrix& y) {
    const int d1 = x.dim(), d2 = y.dim();
    CMatrix r(d1 * d2);
    for (int i1 = 0; i1 < d1; ++i1)
        for (int j1 = 0; j1 < d1; ++j1) {
            if (x.at(i1, j1).is_zero()) continue;
            for (int i2 = 0; i2 < d2; ++i2)
                for (int j2 = 0; j2 < d2; ++j2) {
                    if (y.at(i2, j2).is_zero()) continue;
                    r.at(i1 * d2 + i2, j1 * d2 + j2) = x.at(i1, j1) * y.at(i2, j2);
                }
        }
    return r;
}

CMatrix CMatrix::block_diag(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.dim() + b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) r.at(a.dim() + i, a.dim() + j) = b.at(i, j);
    return r;
}

std::string CMatrix::key() const {
    std::string out;
    out.reserve(dim_ * dim_ * 8);
    out += std::to_string(dim_);
    out += ';';
    for (const auto& c : a_) {
        c.append_key(out);
        out += ';';
    }
    return out;
}

std::string CMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < dim_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < dim_; ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
    }
    os << "]";
    return os.str();
}

std::int64_t CMatrix::order(std::int64_t bound) const {
    CMatrix p = *this;
    for (std::int64_t k = 1; k <= bound; ++k) {
        if (p.is_identity()) return k;
        p = p * *this;
    }
    throw BoundExceeded("matrix order exceeds bound");
}

} // namespace qsing
