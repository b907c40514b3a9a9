#include "gdmatch/scalar.hpp"

#include "gdmatch/errors.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

namespace gdm {

std::string_view to_string(NumericMode mode)
{
    return mode == NumericMode::exact ? "exact" : "float";
}

NumericMode numeric_mode_from_string(std::string_view text)
{
    if (text == "exact") return NumericMode::exact;
    if (text == "float") return NumericMode::floating;
    throw InputError("unknown numeric mode '" + std::string(text) + "' (expected exact|float)");
}

Scalar Scalar::rational(long num, unsigned long den)
{
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    return Scalar(std::move(q));
}

Scalar Scalar::zero(NumericMode mode)
{
    return mode == NumericMode::exact ? Scalar() : Scalar(0.0);
}

namespace {

// Exact value of a decimal literal such as "-12.5e-3".
mpq_class parse_decimal(std::string_view text)
{
    std::string mantissa(text);
    long exponent = 0;
    if (auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
        exponent = std::stol(mantissa.substr(e + 1));
        mantissa.resize(e);
    }
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        exponent -= static_cast<long>(mantissa.size() - dot - 1);
        mantissa.erase(dot, 1);
    }
    if (mantissa.empty() || mantissa == "-" || mantissa == "+") {
        throw InputError("malformed number '" + std::string(text) + "'");
    }
    if (mantissa.front() == '+') mantissa.erase(0, 1);
    mpz_class num;
    if (num.set_str(mantissa, 10) != 0) throw InputError("malformed number '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    mpq_class q = exponent < 0 ? mpq_class(num, scale) : mpq_class(num * scale);
    q.canonicalize();
    return q;
}

} // namespace

Scalar Scalar::parse(std::string_view text, NumericMode mode)
{
    if (text.empty()) throw InputError("empty number");
    mpq_class q;
    if (text.find('/') != std::string_view::npos) {
        std::string s(text);
        if (s.front() == '+') s.erase(0, 1);
        if (q.set_str(s, 10) != 0) throw InputError("malformed rational '" + std::string(text) + "'");
        if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        q.canonicalize();
    } else {
        q = parse_decimal(text);
    }
    Scalar out(std::move(q));
    return out.converted(mode);
}

NumericMode Scalar::mode() const noexcept
{
    return std::holds_alternative<mpq_class>(value_) ? NumericMode::exact : NumericMode::floating;
}

const mpq_class& Scalar::as_rational() const
{
    if (!is_exact()) throw std::logic_error("floating scalar has no exact rational value");
    return std::get<mpq_class>(value_);
}

double Scalar::to_double() const
{
    if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_d();
    return std::get<double>(value_);
}

Scalar Scalar::converted(NumericMode target) const
{
    if (mode() == target) return *this;
    if (target == NumericMode::floating) return Scalar(to_double());
    double d = std::get<double>(value_);
    if (!std::isfinite(d)) throw InputError("non-finite value cannot be made exact");
    return Scalar(mpq_class(d));
}

std::string Scalar::str() const
{
    if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
    return std::string(buf, end);
}

Scalar Scalar::operator-() const
{
    if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
    return Scalar(-std::get<double>(value_));
}

namespace {

template <typename ExactOp, typename FloatOp>
void combine(std::variant<mpq_class, double>& lhs, const Scalar& rhs, ExactOp exact_op, FloatOp float_op)
{
    if (auto* q = std::get_if<mpq_class>(&lhs); q && rhs.is_exact()) {
        exact_op(*q, rhs.as_rational());
        return;
    }
    double l = std::holds_alternative<double>(lhs) ? std::get<double>(lhs) : std::get<mpq_class>(lhs).get_d();
    lhs = float_op(l, rhs.to_double());
}

} // namespace

Scalar& Scalar::operator+=(const Scalar& rhs)
{
    combine(value_, rhs, [](mpq_class& a, const mpq_class& b) { a += b; },
            [](double a, double b) { return a + b; });
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs)
{
    combine(value_, rhs, [](mpq_class& a, const mpq_class& b) { a -= b; },
            [](double a, double b) { return a - b; });
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs)
{
    combine(value_, rhs, [](mpq_class& a, const mpq_class& b) { a *= b; },
            [](double a, double b) { return a * b; });
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs)
{
    if (rhs.sign() == 0 && rhs.is_exact()) throw std::domain_error("division by exact zero");
    combine(value_, rhs, [](mpq_class& a, const mpq_class& b) { a /= b; },
            [](double a, double b) { return a / b; });
    return *this;
}

bool operator==(const Scalar& lhs, const Scalar& rhs)
{
    if (lhs.is_exact() && rhs.is_exact()) return lhs.as_rational() == rhs.as_rational();
    return lhs.to_double() == rhs.to_double();
}

std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs)
{
    if (lhs.is_exact() && rhs.is_exact()) {
        int c = cmp(lhs.as_rational(), rhs.as_rational());
        return c < 0 ? std::partial_ordering::less
             : c > 0 ? std::partial_ordering::greater
                     : std::partial_ordering::equivalent;
    }
    return lhs.to_double() <=> rhs.to_double();
}

int Scalar::sign() const
{
    if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q);
    double d = std::get<double>(value_);
    return (d > 0) - (d < 0);
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }
Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar sqrt(const Scalar& x)
{
    return Scalar(std::sqrt(x.to_double()));
}

bool tolerant_equal(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) return a == b;
    return std::abs(a.to_double() - b.to_double()) <= kTightEpsilon;
}

bool tolerant_le(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) return a <= b;
    return a.to_double() <= b.to_double() + kTightEpsilon;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

} // namespace gdm
