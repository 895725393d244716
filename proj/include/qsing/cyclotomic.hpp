#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qsing/rational.hpp"

namespace qsing {

/// Per-conductor data: the cyclotomic polynomial Phi_M and the reduction
/// rows x^k mod Phi_M for k in [deg, 2*deg-2].  Shared, immutable once built.
struct ConductorData {
    std::int64_t conductor = 1;
    int degree = 1;                       // = phi(M)
    std::vector<Int> phi;                 // monic, length degree+1
    std::vector<std::vector<Int>> rows;   // rows[k-degree] = x^k mod Phi_M
};

std::int64_t euler_phi(std::int64_t m);

/// An element of the cyclotomic field Q(zeta_M) in the power basis of
/// Q[x]/(Phi_M).  Stored as an integer coefficient vector over a single
/// positive denominator; the reduced form is canonical, so structural
/// equality (after lifting to a common conductor) is field equality.
///
/// Values are immutable in practice: every operation returns a new value.
/// The Phi_M cache behind the arithmetic is guarded by a mutex, so values
/// may be used freely from concurrent workers.
class Cyclotomic {
  public:
    /// Zero of Q = Q(zeta_1).
    Cyclotomic();

    static Cyclotomic zero() { return Cyclotomic(); }
    static Cyclotomic one() { return from_rational(Rational(1)); }
    static Cyclotomic from_rational(const Rational& q);
    static Cyclotomic from_int(long n) { return from_rational(Rational(n)); }

    /// zeta_M^(j mod M).  M = 0 is rejected.
    static Cyclotomic root_of_unity(std::int64_t j, std::int64_t m);

    /// Conductor cap guarding against accidental blowup (default 10^5).
    static void set_conductor_cap(std::int64_t cap);
    static std::int64_t conductor_cap();

    std::int64_t conductor() const { return data_->conductor; }
    int degree() const { return data_->degree; }

    /// Coefficient of zeta_M^i in the power basis, as a reduced rational.
    Rational coeff(int i) const { return Rational(num_[i], den_); }

    bool is_zero() const;
    bool is_rational() const;
    /// The value as a rational; requires is_rational().
    Rational rational_value() const;

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    Cyclotomic inv() const;
    /// Complex conjugation, zeta_M -> zeta_M^(-1).
    Cyclotomic conj() const;
    /// Field automorphism zeta_M -> zeta_M^u, gcd(u, M) = 1.
    Cyclotomic galois(std::int64_t u) const;
    Cyclotomic pow(std::int64_t e) const;

    /// Reinterprets the element in Q(zeta_L); L must be a multiple of the
    /// current conductor.  The conductor is never minimized.
    Cyclotomic lifted_to(std::int64_t L) const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// Non-authoritative numerical embedding zeta_M -> exp(2*pi*i/M).
    /// Diagnostics only; never used in any correctness decision.
    std::complex<double> approx() const;

    /// Text form "c[M]:(q0,q1,...)" with rationals "p/q".
    std::string str() const;
    static Cyclotomic parse(const std::string& s);

    /// Compact key for hashing; equal keys iff equal values at equal
    /// conductor (callers lift to a shared conductor first).
    void append_key(std::string& out) const;

  private:
    Cyclotomic(std::shared_ptr<const ConductorData> data, std::vector<Int> num, Int den);
    void normalize();

    std::shared_ptr<const ConductorData> data_;
    std::vector<Int> num_;
    Int den_;
};

} // namespace qsing
