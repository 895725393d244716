#pragma once

#include <string>
#include <vector>

#include "qsing/cyclotomic.hpp"

namespace qsing {

/// Dense square matrix over the cyclotomic field.  Immutable by convention;
/// all operations return new values.
class CMatrix {
  public:
    CMatrix() : dim_(0) {}
    explicit CMatrix(int dim) : dim_(dim), a_(dim * dim, Cyclotomic::zero()) {}

    static CMatrix identity(int dim);
    /// Scalar matrix c * I.
    static CMatrix scalar(int dim, const Cyclotomic& c);
    static CMatrix diagonal(const std::vector<Cyclotomic>& d);

    int dim() const { return dim_; }
    const Cyclotomic& at(int i, int j) const { return a_[i * dim_ + j]; }
    Cyclotomic& at(int i, int j) { return a_[i * dim_ + j]; }

    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator-() const;
    friend bool operator==(const CMatrix& a, const CMatrix& b);
    friend bool operator!=(const CMatrix& a, const CMatrix& b) { return !(a == b); }

    CMatrix pow(std::int64_t e) const;
    CMatrix inverse() const;
    CMatrix transpose() const;

    Cyclotomic det() const;
    Cyclotomic trace() const;
    int rank() const;

    bool is_identity() const;

    /// true iff det(g - I) = 0, i.e. 1 is an eigenvalue.
    bool has_eigenvalue_one() const;
    /// true iff rank(g - I) = 1.  The identity is rejected.
    bool is_quasireflection() const;

    /// Multiplicity of zeta as an eigenvalue, computed as dim - rank(g - zeta*I).
    /// (Exact count for the diagonalizable matrices handled here.)
    int eigenvalue_multiplicity(const Cyclotomic& zeta) const;

    /// All entries reinterpreted in Q(zeta_L); L must be a common multiple
    /// of the entry conductors.
    CMatrix lifted_to(std::int64_t L) const;
    /// Least common multiple of the entry conductors.
    std::int64_t common_conductor() const;

    /// Kronecker product, (x ⊗ y)[(i1*D2+i2),(j1*D2+j2)] = x[i1,j1]*y[i2,j2].
    static CMatrix kronecker(const CMatrix& x, const CMatrix& y);
    /// Block diagonal [a 0; 0 b].
    static CMatrix block_diag(const CMatrix& a, const CMatrix& b);

    /// Canonical serialization of the lifted entries: equal keys iff equal
    /// matrices, provided both sides were lifted to the same conductor.
    std::string key() const;

    /// Row-major list of entry strings.
    std::string str() const;

    /// Multiplicative order (smallest k >= 1 with g^k = I); throws
    /// BoundExceeded past `bound` iterations.
    std::int64_t order(std::int64_t bound = 100000) const;

  private:
    int dim_;
    std::vector<Cyclotomic> a_;
};

} // namespace qsing
