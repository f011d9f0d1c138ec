#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

namespace planarstat {

/// Arbitrary-precision rational, kept canonical (reduced, positive denominator).
using Rational = mpq_class;

/// Builds a canonical rational from an integer fraction.
Rational make_rational(long num, long den = 1);

/// Exact element a + b*sqrt(5) of the real quadratic field Q(sqrt5).
///
/// Both coordinates are canonical rationals, so the representation is unique
/// per value and componentwise equality decides value equality. The golden
/// ratio phi = (1+sqrt5)/2 satisfies phi^2 = phi + 1 under these operations.
class FieldElement {
public:
    FieldElement() : a_(0), b_(0) {}
    FieldElement(long value) : a_(value), b_(0) {}  // NOLINT: implicit by design
    FieldElement(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static FieldElement sqrt5() { return {Rational(0), Rational(1)}; }
    static FieldElement phi();      // (1 + sqrt5) / 2
    static FieldElement phi_inv();  // phi - 1 = 1/phi

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

    /// Exact sign of a + b*sqrt5 as -1, 0 or +1.
    int sign() const;

    FieldElement operator-() const { return {-a_, -b_}; }
    FieldElement operator+(const FieldElement& o) const { return {a_ + o.a_, b_ + o.b_}; }
    FieldElement operator-(const FieldElement& o) const { return {a_ - o.a_, b_ - o.b_}; }
    FieldElement operator*(const FieldElement& o) const {
        return {a_ * o.a_ + 5 * b_ * o.b_, a_ * o.b_ + b_ * o.a_};
    }
    /// Exact division; throws std::domain_error on zero divisor.
    FieldElement operator/(const FieldElement& o) const;

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    bool operator==(const FieldElement& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // value order (real-number order via exact sign of the difference)
    bool operator<(const FieldElement& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const FieldElement& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const FieldElement& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const FieldElement& o) const { return (*this - o).sign() >= 0; }

    double to_double() const;
    std::string str() const;

private:
    Rational a_, b_;
};

/// Lexicographic order on the (a, b) representation; cheaper than value order
/// and just as total, meant for canonical sort keys.
bool lex_less(const FieldElement& u, const FieldElement& v);

/// Exact 3-vector over Q(sqrt5).
struct FieldVec3 {
    FieldElement x, y, z;

    bool operator==(const FieldVec3& o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const FieldVec3& o) const { return !(*this == o); }
    FieldVec3 operator-(const FieldVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    FieldVec3 operator+(const FieldVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    FieldVec3 operator-() const { return {-x, -y, -z}; }
    bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }
};

FieldElement dot(const FieldVec3& u, const FieldVec3& v);
FieldVec3 cross(const FieldVec3& u, const FieldVec3& v);
FieldVec3 sub_vec(const FieldVec3& u, const FieldVec3& v);
FieldVec3 scale(const FieldElement& s, const FieldVec3& v);
FieldElement squared_distance(const FieldVec3& u, const FieldVec3& v);

/// Exact 3x3 matrix, row major.
struct FieldMat3 {
    std::array<std::array<FieldElement, 3>, 3> m;

    static FieldMat3 identity();
    static FieldMat3 from_columns(const FieldVec3& c0, const FieldVec3& c1, const FieldVec3& c2);

    FieldVec3 apply(const FieldVec3& v) const;
    FieldMat3 operator*(const FieldMat3& o) const;
    FieldMat3 transposed() const;
    FieldElement determinant() const;
    /// Exact inverse via the adjugate; throws std::domain_error if singular.
    FieldMat3 inverse() const;
    bool operator==(const FieldMat3& o) const { return m == o.m; }
};

}  // namespace planarstat
