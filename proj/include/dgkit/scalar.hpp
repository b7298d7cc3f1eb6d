#ifndef DGKIT_SCALAR_HPP
#define DGKIT_SCALAR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dgkit {

enum class ErrorKind {
    UnknownLabel,
    AxiomViolation,
    MissingAugmentation,
    EmptyWindow,
    WindowTooSmall,
    UnsupportedBrane,
    LiftFailure,
    DegeneratePairing,
    NotAssociative,
    WiringTypeError,
    DimensionMismatch,
    ParseError,
    Usage,
    Internal,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::MissingAugmentation: return "MissingAugmentation";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::UnsupportedBrane: return "UnsupportedBrane";
    case ErrorKind::LiftFailure: return "LiftFailure";
    case ErrorKind::DegeneratePairing: return "DegeneratePairing";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::WiringTypeError: return "WiringTypeError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Internal: return "Internal";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::vector<std::string> witnesses = {})
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind(kind), witnesses(std::move(witnesses)) {}

    ErrorKind kind;
    std::vector<std::string> witnesses;
};

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t fp_inverse(std::uint64_t a, std::uint64_t p) {
    // extended Euclid; a nonzero mod p
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw Error(ErrorKind::Internal, "not invertible mod p");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

} // namespace detail

/// The ground field: the rationals, or a prime field F_p with p < 2^31.
class Field {
public:
    Field() : p_(0) {}

    static Field Q() { return Field(); }

    static Field Fp(std::uint32_t p) {
        if (p >= (1u << 31) || !detail::is_prime_u32(p))
            throw Error(ErrorKind::ParseError, "Fp modulus must be a prime < 2^31, got " + std::to_string(p));
        Field f;
        f.p_ = p;
        return f;
    }

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }

    std::string name() const { return p_ == 0 ? std::string("Q") : "F" + std::to_string(p_); }

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    std::uint32_t p_;
};

/// Exact field element: a rational in lowest terms (positive denominator) or a
/// residue in [0, p).  Mixed-field arithmetic is rejected.
class Scalar {
public:
    Scalar() : p_(0), q_(0) {}

    static Scalar zero(const Field& f) { return from_int(0, f); }
    static Scalar one(const Field& f) { return from_int(1, f); }

    static Scalar from_int(long v, const Field& f) {
        Scalar s;
        if (f.is_rational()) {
            s.p_ = 0;
            s.q_ = v;
        } else {
            s.p_ = f.characteristic();
            long m = v % static_cast<long>(s.p_);
            if (m < 0) m += s.p_;
            s.r_ = static_cast<std::uint64_t>(m);
        }
        return s;
    }

    /// Parses "a", "-a", or "a/b" (decimal) into the field.
    static Scalar parse(const std::string& text, const Field& f) {
        if (text.empty()) throw Error(ErrorKind::ParseError, "empty coefficient");
        mpq_class q;
        try {
            q = mpq_class(text);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorKind::ParseError, "bad coefficient '" + text + "'");
        }
        q.canonicalize();
        if (f.is_rational()) {
            Scalar s;
            s.p_ = 0;
            s.q_ = q;
            return s;
        }
        // reduce a/b mod p
        const std::uint32_t p = f.characteristic();
        mpz_class num = q.get_num(), den = q.get_den();
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_class nm = num % pz; if (nm < 0) nm += pz;
        mpz_class dm = den % pz;
        if (dm == 0) throw Error(ErrorKind::ParseError, "denominator divisible by p in '" + text + "'");
        std::uint64_t n64 = nm.get_ui();
        std::uint64_t d64 = dm.get_ui();
        Scalar s;
        s.p_ = p;
        s.r_ = (n64 * detail::fp_inverse(d64, p)) % p;
        return s;
    }

    Field field() const { return p_ == 0 ? Field::Q() : Field::Fp(p_); }

    bool is_zero() const { return p_ == 0 ? q_ == 0 : r_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

    Scalar operator+(const Scalar& o) const {
        check(o);
        Scalar s(*this);
        if (p_ == 0) s.q_ += o.q_;
        else s.r_ = (r_ + o.r_) % p_;
        return s;
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        Scalar s(*this);
        if (p_ == 0) s.q_ -= o.q_;
        else s.r_ = (r_ + p_ - o.r_) % p_;
        return s;
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        Scalar s(*this);
        if (p_ == 0) s.q_ *= o.q_;
        else s.r_ = (r_ * o.r_) % p_;
        return s;
    }
    Scalar operator/(const Scalar& o) const {
        check(o);
        if (o.is_zero()) throw Error(ErrorKind::Internal, "division by zero");
        Scalar s(*this);
        if (p_ == 0) s.q_ /= o.q_;
        else s.r_ = (r_ * detail::fp_inverse(o.r_, p_)) % p_;
        return s;
    }
    Scalar operator-() const {
        Scalar s(*this);
        if (p_ == 0) s.q_ = -q_;
        else s.r_ = r_ == 0 ? 0 : p_ - r_;
        return s;
    }
    Scalar inverse() const { return one(field()) / *this; }

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const {
        return p_ == o.p_ && (p_ == 0 ? q_ == o.q_ : r_ == o.r_);
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Decimal "p/q" (or plain integer) for rationals; plain residue for F_p.
    std::string str() const {
        if (p_ == 0) return q_.get_str();
        return std::to_string(r_);
    }

    /// Rational value (rationals only).
    const mpq_class& rational() const {
        if (p_ != 0) throw Error(ErrorKind::Internal, "not a rational scalar");
        return q_;
    }

private:
    void check(const Scalar& o) const {
        if (p_ != o.p_) throw Error(ErrorKind::DimensionMismatch, "scalars from different fields");
    }

    std::uint32_t p_;       // 0 = rational
    mpq_class q_;           // value when rational
    std::uint64_t r_ = 0;   // value when residue
};

inline Scalar sign_scalar(int exponent, const Field& f) {
    return (exponent % 2 == 0) ? Scalar::one(f) : -Scalar::one(f);
}

} // namespace dgkit

#endif
