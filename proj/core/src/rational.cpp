#include "iup/rational.hpp"

#include "iup/error.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace iup {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateMatrix: return "DegenerateMatrix";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::CoefficientMismatch: return "CoefficientMismatch";
        case ErrorKind::EmptyPolytope: return "EmptyPolytope";
        case ErrorKind::NonPositiveScale: return "NonPositiveScale";
        case ErrorKind::UnboundedResult: return "UnboundedResult";
        case ErrorKind::NotCompatible: return "NotCompatible";
        case ErrorKind::IncompatibleSymmetry: return "IncompatibleSymmetry";
        case ErrorKind::GroupNotFinite: return "GroupNotFinite";
        case ErrorKind::OnDiscontinuity: return "OnDiscontinuity";
        case ErrorKind::OnBoundary: return "OnBoundary";
        case ErrorKind::EscapedAmbient: return "EscapedAmbient";
        case ErrorKind::NoPlateau: return "NoPlateau";
        case ErrorKind::AmbiguousTransition: return "AmbiguousTransition";
        case ErrorKind::UnassignedImage: return "UnassignedImage";
        case ErrorKind::NotBracketing: return "NotBracketing";
        case ErrorKind::NonMonotone: return "NonMonotone";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::DeltaInfeasible: return "DeltaInfeasible";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_decimal(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string_view::npos) {
        std::string_view exp_part = s.substr(epos + 1);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6)
            throw Error(ErrorKind::ParseError, "bad exponent in '" + std::string(s) + "'");
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
        s = s.substr(0, epos);
    }
    std::string digits;
    auto dot = s.find('.');
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
        throw Error(ErrorKind::ParseError, "empty number");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
        throw Error(ErrorKind::ParseError, "bad number '" + std::string(s) + "'");
    digits.append(int_part);
    digits.append(frac_part);
    exponent -= static_cast<long>(frac_part.size());

    mpz_class numerator(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational q = exponent >= 0 ? Rational(numerator * scale) : Rational(numerator, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s);
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
        num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den))
        throw Error(ErrorKind::ParseError, "bad rational '" + std::string(s) + "'");
    mpz_class n(std::string(num_digits), 10);
    if (num.front() == '-') n = -n;
    mpz_class dd(std::string(den), 10);
    if (dd == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
    Rational q(n, dd);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational floor_of(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rat(long num, long den) {
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational from_double(double x) {
    if (!std::isfinite(x)) throw Error(ErrorKind::ParseError, "non-finite double");
    return Rational(x);
}

Vector parse_vector(std::string_view comma_separated) {
    Vector out;
    std::string_view s = trim(comma_separated);
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    while (true) {
        auto comma = s.find(',');
        out.push_back(parse_rational(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

ExtRational ExtRational::neg_inf() {
    ExtRational x;
    x.kind_ = Kind::NegInf;
    return x;
}

ExtRational ExtRational::pos_inf() {
    ExtRational x;
    x.kind_ = Kind::PosInf;
    return x;
}

const Rational& ExtRational::value() const {
    if (kind_ != Kind::Finite) throw Error(ErrorKind::UnboundedResult, "infinite bound where a finite value is required");
    return value_;
}

ExtRational ExtRational::operator-() const {
    switch (kind_) {
        case Kind::NegInf: return pos_inf();
        case Kind::PosInf: return neg_inf();
        case Kind::Finite: break;
    }
    return ExtRational(Rational(-value_));
}

ExtRational ExtRational::scaled(const Rational& c) const {
    if (sgn(c) == 0) return ExtRational(0L);
    if (kind_ == Kind::Finite) return ExtRational(Rational(value_ * c));
    return sgn(c) > 0 ? *this : -*this;
}

ExtRational ExtRational::shifted(const Rational& c) const {
    if (kind_ != Kind::Finite) return *this;
    return ExtRational(Rational(value_ + c));
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != ExtRational::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    auto rank = [](ExtRational::Kind k) { return static_cast<int>(k); };
    if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
    if (a.kind_ != ExtRational::Kind::Finite) return std::strong_ordering::equal;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

ExtRational add(const ExtRational& a, const ExtRational& b) {
    if (a.is_finite() && b.is_finite()) return ExtRational(Rational(a.value() + b.value()));
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
        throw Error(ErrorKind::UnboundedResult, "inf - inf");
    return a.is_finite() ? b : a;
}

std::string to_string(const ExtRational& x) {
    if (x.is_neg_inf()) return "-inf";
    if (x.is_pos_inf()) return "+inf";
    return to_string(x.value());
}

ExtRational parse_ext_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s == "-inf") return ExtRational::neg_inf();
    if (s == "+inf" || s == "inf") return ExtRational::pos_inf();
    return ExtRational(parse_rational(s));
}

double to_double(const ExtRational& x) {
    if (x.is_neg_inf()) return -std::numeric_limits<double>::infinity();
    if (x.is_pos_inf()) return std::numeric_limits<double>::infinity();
    return x.value().get_d();
}

}  // namespace iup
