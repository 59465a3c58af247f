#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lpaqb {

class Scalar;

// An exact involutive coefficient field. Three choices are offered:
// rationals with the identity involution, Gaussian rationals a+bi with
// conjugation, and a prime field F_p with the identity involution.
class Field {
public:
    enum class Kind { Rationals, GaussianRationals, Prime };

    static Field rationals();
    static Field gaussian_rationals();
    static Field prime(unsigned long p);

    /// Parses a field selector: "q" | "qi" | "fp:<p>".
    static Field parse(std::string_view selector);

    Kind kind() const { return kind_; }
    unsigned long characteristic() const { return p_; }  // 0 for the rational fields
    std::string name() const;

    Scalar zero() const;
    Scalar one() const;
    Scalar integer(long n) const;
    Scalar rational(long num, long den) const;
    Scalar gaussian(long re_num, long re_den, long im_num, long im_den) const;

    /// Inverse of str(): "a/b", "a/b+c/d i", "c/d i", "n mod p".
    Scalar parse_scalar(std::string_view text) const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    Field(Kind kind, unsigned long p) : kind_(kind), p_(p) {}

    Kind kind_;
    unsigned long p_;
};

// A value of one specific Field. All arithmetic is exact; operations on
// scalars from different fields throw std::invalid_argument.
class Scalar {
public:
    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar conj() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const;

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

private:
    friend class Field;
    Scalar(Field field, mpq_class re, mpq_class im);

    void check_same_field_(const Scalar& other) const;
    void reduce_();  // canonical residue for prime fields

    Field field_;
    mpq_class re_, im_;
};

}  // namespace lpaqb
