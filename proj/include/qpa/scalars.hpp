#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace qpa {

/// Arbitrary-precision rational scalar. The GMP backend keeps every value
/// canonical (reduced fraction, positive denominator), so equality is exact
/// and representation-independent.
using Rational = boost::multiprecision::mpq_rational;

bool is_prime(std::int64_t n);

/// Element of a prime field F_p with the modulus carried by the value.
///
/// modulus() == 0 marks a bare integer literal that has not yet met a field
/// element. Generic code (Eigen included) constructs Scalar(0) and Scalar(1)
/// with no way to name a modulus; a literal adopts the modulus of the first
/// moded operand it is combined with. Combining two elements of different
/// prime fields throws.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(std::int64_t v) : v_(v), p_(0) {}
    Fp(int v) : v_(v), p_(0) {}
    Fp(std::int64_t v, std::int64_t p) : v_(v), p_(p) {
        if (p_ < 0) throw std::invalid_argument("Fp: negative modulus");
        reduce();
    }

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }
    bool is_literal() const { return p_ == 0; }

    Fp operator-() const {
        if (p_ == 0) return Fp(-v_);
        return Fp(v_ == 0 ? 0 : p_ - v_, p_);
    }

    Fp& operator+=(const Fp& o) { return apply(o, Op::Add); }
    Fp& operator-=(const Fp& o) { return apply(o, Op::Sub); }
    Fp& operator*=(const Fp& o) { return apply(o, Op::Mul); }
    Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }

    friend bool operator==(const Fp& a, const Fp& b) {
        std::int64_t p = merged(a.p_, b.p_);
        if (p == 0) return a.v_ == b.v_;
        return mod(a.v_, p) == mod(b.v_, p);
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    bool is_zero() const { return p_ == 0 ? v_ == 0 : v_ == 0; }

    Fp inverse() const;

    std::string str() const { return std::to_string(v_); }

    friend std::ostream& operator<<(std::ostream& os, const Fp& x);

private:
    enum class Op { Add, Sub, Mul };

    static std::int64_t mod(std::int64_t v, std::int64_t p) {
        std::int64_t r = v % p;
        return r < 0 ? r + p : r;
    }
    static std::int64_t merged(std::int64_t a, std::int64_t b) {
        if (a == 0) return b;
        if (b == 0) return a;
        if (a != b) throw std::logic_error("Fp: mixed moduli");
        return a;
    }

    void reduce() {
        if (p_ != 0) v_ = mod(v_, p_);
    }

    Fp& apply(const Fp& o, Op op) {
        p_ = merged(p_, o.p_);
        std::int64_t b = o.v_;
        if (p_ != 0) {
            v_ = mod(v_, p_);
            b = mod(b, p_);
        }
        switch (op) {
            case Op::Add: v_ = v_ + b; break;
            case Op::Sub: v_ = v_ - b; break;
            case Op::Mul:
                if (p_ != 0)
                    v_ = static_cast<std::int64_t>(
                        static_cast<__int128>(v_) * b % p_);
                else
                    v_ = v_ * b;
                break;
        }
        reduce();
        return *this;
    }

    std::int64_t v_;
    std::int64_t p_;
};

/// Ground field descriptor: Q or F_p with p prime.
struct FieldSpec {
    enum class Kind { rationals, prime_field };
    Kind kind = Kind::rationals;
    std::int64_t p = 0;

    static FieldSpec Q() { return FieldSpec{Kind::rationals, 0}; }
    static FieldSpec F(std::int64_t p);

    /// Accepts "Q" or "F<p>", e.g. "F101".
    static FieldSpec parse(const std::string& text);

    bool is_rationals() const { return kind == Kind::rationals; }
    std::string label() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Uniform scalar construction/printing for templated code.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static bool matches(const FieldSpec& spec) { return spec.is_rationals(); }
    static Rational from_int(const FieldSpec&, std::int64_t n) { return Rational(n); }
    static Rational parse(const FieldSpec&, const std::string& text) {
        return Rational(text);
    }
    static std::string str(const Rational& x) { return x.str(); }
    static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct FieldOps<Fp> {
    static bool matches(const FieldSpec& spec) {
        return spec.kind == FieldSpec::Kind::prime_field;
    }
    static Fp from_int(const FieldSpec& spec, std::int64_t n) { return Fp(n, spec.p); }
    static Fp parse(const FieldSpec& spec, const std::string& text);
    static std::string str(const Fp& x) { return x.str(); }
    static bool is_zero(const Fp& x) { return x.is_zero(); }
};

}  // namespace qpa

namespace Eigen {

template <>
struct NumTraits<qpa::Fp> {
    using Real = qpa::Fp;
    using NonInteger = qpa::Fp;
    using Literal = qpa::Fp;
    using Nested = qpa::Fp;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 3,
        MulCost = 9,
    };
    static qpa::Fp epsilon() { return qpa::Fp(0); }
    static qpa::Fp dummy_precision() { return qpa::Fp(0); }
    static int digits10() { return 0; }
};

}  // namespace Eigen
