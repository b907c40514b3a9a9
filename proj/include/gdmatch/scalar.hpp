#ifndef GDMATCH_SCALAR_HPP
#define GDMATCH_SCALAR_HPP

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace gdm {

/// Arithmetic backing every time and distance quantity of an instance.
enum class NumericMode { exact, floating };

/// Tolerance used for tightness and equality checks in floating mode.
inline constexpr double kTightEpsilon = 1e-9;

std::string_view to_string(NumericMode mode);
NumericMode numeric_mode_from_string(std::string_view text);

/**
 *  A number under one of two numeric contracts: an exact rational (GMP) or a
 *  binary64 double.
 *
 *  Mixing an exact and a floating operand yields a floating result. A
 *  default-constructed Scalar is the exact zero, which therefore acts as a
 *  neutral element in either mode.
 */
class Scalar {
public:
    Scalar() : value_(mpq_class(0)) {}
    Scalar(int v) : value_(mpq_class(v)) {}
    explicit Scalar(mpq_class v) : value_(std::move(v)) { std::get<mpq_class>(value_).canonicalize(); }
    explicit Scalar(double v) : value_(v) {}

    static Scalar rational(long num, unsigned long den);
    static Scalar zero(NumericMode mode);

    /// Parses "n", "p/q" or a decimal literal. Decimal literals are read exactly.
    static Scalar parse(std::string_view text, NumericMode mode);

    NumericMode mode() const noexcept;
    bool is_exact() const noexcept { return mode() == NumericMode::exact; }

    const mpq_class& as_rational() const;
    double to_double() const;
    Scalar converted(NumericMode mode) const;

    /// "n" or "p/q" for exact values; shortest round-trip decimal otherwise.
    std::string str() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    friend bool operator==(const Scalar& lhs, const Scalar& rhs);
    friend std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

    int sign() const;

private:
    std::variant<mpq_class, double> value_;
};

Scalar abs(const Scalar& x);
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);
Scalar sqrt(const Scalar& x);

/// a == b exactly in exact mode, |a - b| <= kTightEpsilon otherwise.
bool tolerant_equal(const Scalar& a, const Scalar& b);
/// a <= b exactly in exact mode, a <= b + kTightEpsilon otherwise.
bool tolerant_le(const Scalar& a, const Scalar& b);

std::ostream& operator<<(std::ostream& os, const Scalar& x);

} // namespace gdm

#endif // GDMATCH_SCALAR_HPP
