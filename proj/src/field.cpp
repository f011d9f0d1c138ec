#include "planarstat/field.hpp"

#include <cmath>
#include <stdexcept>

namespace planarstat {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

FieldElement FieldElement::phi() { return {make_rational(1, 2), make_rational(1, 2)}; }

FieldElement FieldElement::phi_inv() { return {make_rational(-1, 2), make_rational(1, 2)}; }

int FieldElement::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: the dominant term decides; compare a^2 against 5 b^2
    const Rational lhs = a_ * a_;
    const Rational rhs = 5 * b_ * b_;
    const int c = cmp(lhs, rhs);
    if (c == 0) return 0;  // only possible for a = b = 0, already handled
    return c > 0 ? sa : sb;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    // 1/(c + d*sqrt5) = (c - d*sqrt5) / (c^2 - 5 d^2); the norm is nonzero
    // for any nonzero element since sqrt5 is irrational
    const Rational norm = o.a_ * o.a_ - 5 * o.b_ * o.b_;
    if (sgn(norm) == 0) throw std::domain_error("division by zero field element");
    const FieldElement conj{o.a_ / norm, -o.b_ / norm};
    return *this * conj;
}

double FieldElement::to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(5.0);
}

std::string FieldElement::str() const {
    if (sgn(b_) == 0) return a_.get_str();
    std::string bterm;
    if (b_ == 1) {
        bterm = "sqrt5";
    } else if (b_ == -1) {
        bterm = "-sqrt5";
    } else {
        bterm = b_.get_str() + "*sqrt5";
    }
    if (sgn(a_) == 0) return bterm;
    if (sgn(b_) > 0) return a_.get_str() + "+" + bterm;
    return a_.get_str() + bterm;  // bterm carries the minus sign
}

bool lex_less(const FieldElement& u, const FieldElement& v) {
    const int c = cmp(u.a(), v.a());
    if (c != 0) return c < 0;
    return cmp(u.b(), v.b()) < 0;
}

FieldElement dot(const FieldVec3& u, const FieldVec3& v) {
    return u.x * v.x + u.y * v.y + u.z * v.z;
}

FieldVec3 cross(const FieldVec3& u, const FieldVec3& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

FieldVec3 sub_vec(const FieldVec3& u, const FieldVec3& v) { return u - v; }

FieldVec3 scale(const FieldElement& s, const FieldVec3& v) {
    return {s * v.x, s * v.y, s * v.z};
}

FieldElement squared_distance(const FieldVec3& u, const FieldVec3& v) {
    const FieldVec3 d = u - v;
    return dot(d, d);
}

FieldMat3 FieldMat3::identity() {
    FieldMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = FieldElement(i == j ? 1 : 0);
    return r;
}

FieldMat3 FieldMat3::from_columns(const FieldVec3& c0, const FieldVec3& c1, const FieldVec3& c2) {
    FieldMat3 r;
    r.m[0] = {c0.x, c1.x, c2.x};
    r.m[1] = {c0.y, c1.y, c2.y};
    r.m[2] = {c0.z, c1.z, c2.z};
    return r;
}

FieldVec3 FieldMat3::apply(const FieldVec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

FieldMat3 FieldMat3::operator*(const FieldMat3& o) const {
    FieldMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            FieldElement s;
            for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

FieldMat3 FieldMat3::transposed() const {
    FieldMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
}

FieldElement FieldMat3::determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

FieldMat3 FieldMat3::inverse() const {
    const FieldElement det = determinant();
    if (det.is_zero()) throw std::domain_error("singular matrix");
    FieldMat3 adj;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            // cofactor transpose: adj[j][i] = minor(i, j) with cyclic index
            // choice absorbing the sign
            adj.m[j][i] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    FieldMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = adj.m[i][j] / det;
    return r;
}

}  // namespace planarstat
