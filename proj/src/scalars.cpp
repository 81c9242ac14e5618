#include "qpa/scalars.hpp"

#include <ostream>

namespace qpa {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Fp Fp::inverse() const {
    if (p_ == 0) {
        if (v_ == 1 || v_ == -1) return *this;
        throw std::logic_error("Fp: inverse of a literal without a modulus");
    }
    if (v_ == 0) throw std::domain_error("Fp: division by zero");
    // extended Euclid
    std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    return Fp(x0, p_);
}

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

FieldSpec FieldSpec::F(std::int64_t p) {
    if (p > (std::int64_t(1) << 31) - 1)
        throw std::invalid_argument("field: modulus too large");
    if (!is_prime(p))
        throw std::invalid_argument("field: modulus " + std::to_string(p) +
                                    " is not prime");
    return FieldSpec{Kind::prime_field, p};
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "Q") return Q();
    if (text.size() >= 2 && text[0] == 'F') {
        std::size_t pos = 0;
        std::int64_t p = 0;
        try {
            p = std::stoll(text.substr(1), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("field: cannot parse '" + text + "'");
        }
        if (pos != text.size() - 1)
            throw std::invalid_argument("field: cannot parse '" + text + "'");
        return F(p);
    }
    throw std::invalid_argument("field: expected 'Q' or 'F<prime>', got '" +
                                text + "'");
}

std::string FieldSpec::label() const {
    return is_rationals() ? "Q" : "F" + std::to_string(p);
}

Fp FieldOps<Fp>::parse(const FieldSpec& spec, const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Fp(std::stoll(text), spec.p);
    Fp num(std::stoll(text.substr(0, slash)), spec.p);
    Fp den(std::stoll(text.substr(slash + 1)), spec.p);
    return num / den;
}

}  // namespace qpa
