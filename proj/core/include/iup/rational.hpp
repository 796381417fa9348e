#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace iup {

using Rational = mpq_class;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

// Parses "p/q", "-7", "0.43", "1.5e-3". Decimal input is converted exactly.
Rational parse_rational(std::string_view text);

// mpq_class(n, d) does not reduce; use this for literals like 44/100.
Rational rat(long num, long den);
std::string to_string(const Rational& q);
Rational floor_of(const Rational& q);
double to_double(const Rational& q);
// Exact binary expansion of a finite double.
Rational from_double(double x);

Vector parse_vector(std::string_view comma_separated);

// A rational extended by -inf and +inf. Used for constraint bounds.
class ExtRational {
public:
    enum class Kind { NegInf, Finite, PosInf };

    ExtRational() = default;
    ExtRational(const Rational& v) : kind_(Kind::Finite), value_(v) {}
    ExtRational(long v) : kind_(Kind::Finite), value_(v) {}

    static ExtRational neg_inf();
    static ExtRational pos_inf();

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    // Throws if infinite.
    const Rational& value() const;

    ExtRational operator-() const;
    // Scaling by zero yields exactly zero.
    ExtRational scaled(const Rational& c) const;
    ExtRational shifted(const Rational& c) const;

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

private:
    Kind kind_ = Kind::Finite;
    Rational value_ = 0;
};

// Sum of two extended values; throws on (+inf) + (-inf).
ExtRational add(const ExtRational& a, const ExtRational& b);

std::string to_string(const ExtRational& x);
ExtRational parse_ext_rational(std::string_view text);
double to_double(const ExtRational& x);

}  // namespace iup
