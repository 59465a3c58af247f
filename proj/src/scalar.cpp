#include "lpaqb/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace lpaqb {

namespace {

bool looks_like_rational(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    if (digits == 0) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    return digits > 0 && i == s.size();
}

mpq_class parse_rational(std::string_view s) {
    if (!looks_like_rational(s))
        throw std::invalid_argument("malformed rational: \"" + std::string(s) + "\"");
    mpq_class q(std::string(s), 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in \"" + std::string(s) + "\"");
    q.canonicalize();
    return q;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

bool is_probable_prime(unsigned long p) {
    mpz_class z(static_cast<unsigned long>(p));
    return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

}  // namespace

Field Field::rationals() { return Field(Kind::Rationals, 0); }
Field Field::gaussian_rationals() { return Field(Kind::GaussianRationals, 0); }

Field Field::prime(unsigned long p) {
    if (p < 2 || !is_probable_prime(p))
        throw std::invalid_argument("field modulus must be prime, got " + std::to_string(p));
    return Field(Kind::Prime, p);
}

Field Field::parse(std::string_view selector) {
    if (selector == "q") return rationals();
    if (selector == "qi") return gaussian_rationals();
    if (selector.substr(0, 3) == "fp:") {
        std::string digits(selector.substr(3));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad prime in field selector \"" + std::string(selector) + "\"");
        return prime(std::stoul(digits));
    }
    throw std::invalid_argument("unknown field selector \"" + std::string(selector) +
                                "\" (expected q, qi, or fp:<p>)");
}

std::string Field::name() const {
    switch (kind_) {
        case Kind::Rationals: return "q";
        case Kind::GaussianRationals: return "qi";
        case Kind::Prime: return "fp:" + std::to_string(p_);
    }
    return "?";
}

Scalar Field::zero() const { return Scalar(*this, 0, 0); }
Scalar Field::one() const { return Scalar(*this, 1, 0); }
Scalar Field::integer(long n) const { return Scalar(*this, mpq_class(n), 0); }

Scalar Field::rational(long num, long den) const {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (kind_ == Kind::Prime) {
        // num/den reduced into F_p.
        return Scalar(*this, mpq_class(num), 0) * Scalar(*this, mpq_class(den), 0).inverse();
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(*this, q, 0);
}

Scalar Field::gaussian(long re_num, long re_den, long im_num, long im_den) const {
    if (kind_ != Kind::GaussianRationals)
        throw std::invalid_argument("imaginary parts need the Gaussian rational field");
    if (re_den == 0 || im_den == 0) throw std::invalid_argument("zero denominator");
    mpq_class re(re_num, re_den), im(im_num, im_den);
    re.canonicalize();
    im.canonicalize();
    return Scalar(*this, re, im);
}

Scalar Field::parse_scalar(std::string_view text) const {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty scalar");
    switch (kind_) {
        case Kind::Rationals:
            return Scalar(*this, parse_rational(s), 0);
        case Kind::Prime: {
            std::size_t mod = s.find(" mod ");
            std::string_view num = s;
            if (mod != std::string_view::npos) {
                std::string_view p_part = trim(s.substr(mod + 5));
                if (p_part != std::to_string(p_))
                    throw std::invalid_argument("modulus mismatch in \"" + std::string(text) + "\"");
                num = trim(s.substr(0, mod));
            }
            return Scalar(*this, parse_rational(num), 0);
        }
        case Kind::GaussianRationals: {
            if (s.back() == 'i') {
                s.remove_suffix(1);
                s = trim(s);
                // Split "re+im" / "re-im" at the last sign past position 0;
                // a lone token is a pure imaginary part.
                std::size_t split = std::string_view::npos;
                for (std::size_t i = s.size(); i-- > 1;) {
                    if (s[i] == '+' || s[i] == '-') { split = i; break; }
                }
                if (split == std::string_view::npos)
                    return Scalar(*this, 0, parse_rational(s));
                mpq_class re = parse_rational(trim(s.substr(0, split)));
                mpq_class im = parse_rational(trim(s.substr(split + (s[split] == '+' ? 1 : 0))));
                return Scalar(*this, re, im);
            }
            return Scalar(*this, parse_rational(s), 0);
        }
    }
    throw std::logic_error("unreachable");
}

Scalar::Scalar(Field field, mpq_class re, mpq_class im)
    : field_(field), re_(std::move(re)), im_(std::move(im)) {
    reduce_();
}

void Scalar::reduce_() {
    if (field_.kind() == Field::Kind::Prime) {
        // Residues are kept canonical in [0, p). Rational inputs are reduced
        // via modular inverse of the denominator.
        mpz_class p(field_.characteristic());
        mpz_class num = re_.get_num(), den = re_.get_den();
        if (den != 1) {
            mpz_class inv;
            if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
                throw std::invalid_argument("denominator not invertible mod " + p.get_str());
            num *= inv;
        }
        mpz_class r;
        mpz_mod(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
        re_ = mpq_class(r);
        im_ = 0;
    } else if (field_.kind() == Field::Kind::Rationals) {
        im_ = 0;
    }
}

bool Scalar::is_zero() const { return re_ == 0 && im_ == 0; }
bool Scalar::is_one() const { return re_ == 1 && im_ == 0; }

void Scalar::check_same_field_(const Scalar& other) const {
    if (!(field_ == other.field_))
        throw std::invalid_argument("mixed-field scalar arithmetic (" + field_.name() + " vs " +
                                    other.field_.name() + ")");
}

Scalar Scalar::operator-() const { return Scalar(field_, -re_, -im_); }

Scalar Scalar::conj() const {
    if (field_.kind() == Field::Kind::GaussianRationals) return Scalar(field_, re_, -im_);
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::invalid_argument("inverse of zero");
    switch (field_.kind()) {
        case Field::Kind::Rationals:
            return Scalar(field_, 1 / re_, 0);
        case Field::Kind::GaussianRationals: {
            mpq_class norm = re_ * re_ + im_ * im_;
            return Scalar(field_, re_ / norm, -im_ / norm);
        }
        case Field::Kind::Prime: {
            mpz_class p(field_.characteristic()), inv;
            mpz_class num = re_.get_num();
            if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) == 0)
                throw std::invalid_argument("not invertible mod " + p.get_str());
            return Scalar(field_, mpq_class(inv), 0);
        }
    }
    throw std::logic_error("unreachable");
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    check_same_field_(rhs);
    re_ += rhs.re_;
    im_ += rhs.im_;
    reduce_();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    check_same_field_(rhs);
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    reduce_();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    check_same_field_(rhs);
    if (field_.kind() == Field::Kind::GaussianRationals) {
        mpq_class re = re_ * rhs.re_ - im_ * rhs.im_;
        mpq_class im = re_ * rhs.im_ + im_ * rhs.re_;
        re_ = re;
        im_ = im;
    } else {
        re_ *= rhs.re_;
    }
    reduce_();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.re_ == b.re_ && a.im_ == b.im_;
}

std::string Scalar::str() const {
    switch (field_.kind()) {
        case Field::Kind::Rationals:
            return re_.get_str();
        case Field::Kind::Prime:
            return re_.get_num().get_str() + " mod " + std::to_string(field_.characteristic());
        case Field::Kind::GaussianRationals: {
            if (im_ == 0) return re_.get_str();
            std::string im_part = abs(im_).get_str() + " i";
            if (re_ == 0) return (im_ < 0 ? "-" : "") + im_part;
            return re_.get_str() + (im_ < 0 ? "-" : "+") + im_part;
        }
    }
    return "?";
}

}  // namespace lpaqb
