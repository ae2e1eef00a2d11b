#include "ssys/scheme.hpp"

#include <cmath>
#include <stdexcept>

namespace ssys {

double Vec2::norm() const { return std::hypot(u, v); }

double ParameterScheme::a(int i) const {
    switch (i) {
        case 1: return a1;
        case 2: return a2;
        case 3: return a3;
        case 4: return a4;
    }
    throw std::out_of_range("ParameterScheme::a index");
}

double ParameterScheme::b(int i) const {
    switch (i) {
        case 1: return b1;
        case 2: return b2;
        case 3: return b3;
        case 4: return b4;
    }
    throw std::out_of_range("ParameterScheme::b index");
}

double ParameterScheme::max_abs() const {
    double m = 0.0;
    for (double x : flat()) m = std::max(m, std::abs(x));
    return m;
}

bool ParameterScheme::all_finite() const {
    for (double x : flat())
        if (!std::isfinite(x)) return false;
    return true;
}

Vec2 SymmetryElement::apply(Vec2 p) const {
    return {m[0][0] * p.u + m[0][1] * p.v, m[1][0] * p.u + m[1][1] * p.v};
}

namespace {

constexpr std::array<SymmetryElement, 8> kGroup = {{
    {SymmetryTag::r0, {{{1, 0}, {0, 1}}}},
    {SymmetryTag::r1, {{{0, -1}, {1, 0}}}},
    {SymmetryTag::r2, {{{-1, 0}, {0, -1}}}},
    {SymmetryTag::r3, {{{0, 1}, {-1, 0}}}},
    {SymmetryTag::s0, {{{1, 0}, {0, -1}}}},
    {SymmetryTag::s1, {{{0, 1}, {1, 0}}}},
    {SymmetryTag::s2, {{{-1, 0}, {0, 1}}}},
    {SymmetryTag::s3, {{{0, -1}, {-1, 0}}}},
}};

}  // namespace

const std::array<SymmetryElement, 8>& dihedral_group() { return kGroup; }

const SymmetryElement& symmetry(SymmetryTag tag) { return kGroup[static_cast<int>(tag)]; }

std::string to_string(SymmetryTag tag) {
    static const char* names[] = {"r0", "r1", "r2", "r3", "s0", "s1", "s2", "s3"};
    return names[static_cast<int>(tag)];
}

SymmetryElement compose(const SymmetryElement& g, const SymmetryElement& h) {
    std::array<std::array<int, 2>, 2> p{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p[i][j] = g.m[i][0] * h.m[0][j] + g.m[i][1] * h.m[1][j];
    for (const auto& e : kGroup)
        if (e.m == p) return e;
    throw std::logic_error("composition left the dihedral group");
}

SymmetryElement inverse(const SymmetryElement& g) {
    // orthogonal integer matrix: inverse is the transpose
    std::array<std::array<int, 2>, 2> t = {{{g.m[0][0], g.m[1][0]}, {g.m[0][1], g.m[1][1]}}};
    for (const auto& e : kGroup)
        if (e.m == t) return e;
    throw std::logic_error("inverse left the dihedral group");
}

ParameterScheme apply_symmetry(const ParameterScheme& s, const SymmetryElement& g) {
    // Under X' = gX the exponent rows e_i = (a_i, b_i) become e_i g^{-1}
    // = e_i g^T, and component j of the new field is the signed source
    // component picked by row j of g; a negative sign swaps the two
    // monomials of that source component.
    const std::array<std::array<double, 2>, 4> e = {{{s.a1, s.b1}, {s.a2, s.b2}, {s.a3, s.b3}, {s.a4, s.b4}}};
    auto transformed = [&](int i) -> std::array<double, 2> {
        return {e[i][0] * g.m[0][0] + e[i][1] * g.m[0][1],
                e[i][0] * g.m[1][0] + e[i][1] * g.m[1][1]};
    };
    auto pick = [&](int row) -> std::pair<int, int> {
        const int j = (g.m[row][0] != 0) ? 0 : 1;
        int first = 2 * j, second = 2 * j + 1;
        if (g.m[row][j] < 0) std::swap(first, second);
        return {first, second};
    };

    const auto [u1, u2] = pick(0);
    const auto [v1, v2] = pick(1);
    const auto m1 = transformed(u1), m2 = transformed(u2);
    const auto m3 = transformed(v1), m4 = transformed(v2);
    return {m1[0], m2[0], m3[0], m4[0], m1[1], m2[1], m3[1], m4[1]};
}

ParameterScheme time_reverse(const ParameterScheme& s) {
    return {s.a2, s.a1, s.a4, s.a3, s.b2, s.b1, s.b4, s.b3};
}

ParameterScheme shift_equivalent(const ParameterScheme& s, double a, double b) {
    return {s.a1 - a, s.a2 - a, s.a3 - a, s.a4 - a, s.b1 - b, s.b2 - b, s.b3 - b, s.b4 - b};
}

ParameterScheme uniform_scale(const ParameterScheme& s, double c) {
    if (!(c > 0.0)) throw std::domain_error("uniform_scale requires c > 0");
    return {s.a1 / c, s.a2 / c, s.a3 / c, s.a4 / c, s.b1 / c, s.b2 / c, s.b3 / c, s.b4 / c};
}

Sign sign_of(double x, double eps) {
    if (std::abs(x) <= eps) return Sign::zero;
    return x > 0.0 ? Sign::positive : Sign::negative;
}

namespace {

char sign_char(Sign s) {
    switch (s) {
        case Sign::negative: return '-';
        case Sign::zero: return '0';
        case Sign::positive: return '+';
    }
    return '?';
}

bool entry_matches(SignPattern::Entry e, Sign s) {
    switch (e) {
        case SignPattern::Entry::any: return true;
        case SignPattern::Entry::negative: return s == Sign::negative;
        case SignPattern::Entry::zero: return s == Sign::zero;
        case SignPattern::Entry::positive: return s == Sign::positive;
    }
    return false;
}

}  // namespace

std::string SignMatrix::str() const {
    std::string out = "(";
    out += sign_char(s11);
    out += ',';
    out += sign_char(s12);
    out += ';';
    out += sign_char(s21);
    out += ',';
    out += sign_char(s22);
    out += ')';
    return out;
}

bool SignPattern::matches(const SignMatrix& sm) const {
    return entry_matches(e11, sm.s11) && entry_matches(e12, sm.s12) &&
           entry_matches(e21, sm.s21) && entry_matches(e22, sm.s22);
}

}  // namespace ssys
