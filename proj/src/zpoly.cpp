#include "hhdkit/zpoly.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace hhdkit {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_monomial(const char* a, int i, const char* b, int j) {
    std::string s;
    if (i == 1) s += std::string(" ") + a;
    if (i > 1) s += std::string(" ") + a + "^" + std::to_string(i);
    if (j == 1) s += std::string(" ") + b;
    if (j > 1) s += std::string(" ") + b + "^" + std::to_string(j);
    return s;
}

// Quotient q near c/n with q * n == c exactly, so differentiation inverts
// integration at coefficient level. The correctly rounded quotient can be a
// final ulp off (n = 5, 7, ...); the preimage of c under y -> fl(y n) is an
// interval wider than the grid spacing, so a representable q always exists
// within a couple of ulps.
double exact_inverse_div(double c, int n) {
    double q = c / n;
    if (!std::isfinite(q) || q * n == c) return q;
    for (int step = 0; step < 8; ++step) {
        const double huge = std::numeric_limits<double>::infinity();
        q = std::nextafter(q, q * n > c ? -huge : huge);
        if (q * n == c) return q;
    }
    return c / n;
}

Complex exact_inverse_div(Complex c, int n) {
    return {exact_inverse_div(c.real(), n), exact_inverse_div(c.imag(), n)};
}

}  // namespace

ZPoly ZPoly::term(int m, int k, Complex c) {
    ZPoly p;
    p.add_term(m, k, c);
    return p;
}

void ZPoly::add_term(int m, int k, Complex c) {
    auto key = std::make_pair(m, k);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (std::abs(c) > kCoeffPrune) terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (std::abs(it->second) <= kCoeffPrune) terms_.erase(it);
}

Complex ZPoly::coeff(int m, int k) const {
    auto it = terms_.find({m, k});
    return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

double ZPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
    return *this;
}

ZPoly& ZPoly::operator*=(Complex c) {
    ZPoly out;
    for (const auto& [key, v] : terms_) out.add_term(key.first, key.second, v * c);
    *this = std::move(out);
    return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    ZPoly out;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

RealPoly2 RealPoly2::term(int i, int j, double c) {
    RealPoly2 p;
    p.add_term(i, j, c);
    return p;
}

void RealPoly2::add_term(int i, int j, double c) {
    auto key = std::make_pair(i, j);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (std::abs(c) > kCoeffPrune) terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (std::abs(it->second) <= kCoeffPrune) terms_.erase(it);
}

double RealPoly2::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? 0.0 : it->second;
}

double RealPoly2::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

double RealPoly2::evaluate(double x, double y) const {
    double sum = 0.0;
    for (const auto& [key, c] : terms_) sum += c * std::pow(x, key.first) * std::pow(y, key.second);
    return sum;
}

RealPoly2& RealPoly2::operator+=(const RealPoly2& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
}

RealPoly2& RealPoly2::operator-=(const RealPoly2& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
    return *this;
}

RealPoly2& RealPoly2::operator*=(double c) {
    RealPoly2 out;
    for (const auto& [key, v] : terms_) out.add_term(key.first, key.second, v * c);
    *this = std::move(out);
    return *this;
}

RealPoly2 operator*(const RealPoly2& a, const RealPoly2& b) {
    RealPoly2 out;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

ZPoly d_dz(const ZPoly& w) {
    ZPoly out;
    for (const auto& [key, c] : w.terms())
        if (key.first > 0) out.add_term(key.first - 1, key.second, c * double(key.first));
    return out;
}

ZPoly d_dzbar(const ZPoly& w) {
    ZPoly out;
    for (const auto& [key, c] : w.terms())
        if (key.second > 0) out.add_term(key.first, key.second - 1, c * double(key.second));
    return out;
}

ZPoly integrate_dz(const ZPoly& f) {
    ZPoly out;
    for (const auto& [key, c] : f.terms())
        out.add_term(key.first + 1, key.second, exact_inverse_div(c, key.first + 1));
    return out;
}

ZPoly conjugate(const ZPoly& w) {
    ZPoly out;
    for (const auto& [key, c] : w.terms()) out.add_term(key.second, key.first, std::conj(c));
    return out;
}

ZPoly mod_squared_diff(const ZPoly& w) {
    ZPoly wz = d_dz(w);
    ZPoly wzb = d_dzbar(w);
    return wz * conjugate(wz) - wzb * conjugate(wzb);
}

Complex evaluate(const ZPoly& w, Complex z) {
    const Complex zb = std::conj(z);
    Complex sum{0.0, 0.0};
    for (const auto& [key, c] : w.terms())
        sum += c * std::pow(z, key.first) * std::pow(zb, key.second);
    return sum;
}

RealPoly2 d_dx(const RealPoly2& p) {
    RealPoly2 out;
    for (const auto& [key, c] : p.terms())
        if (key.first > 0) out.add_term(key.first - 1, key.second, c * double(key.first));
    return out;
}

RealPoly2 d_dy(const RealPoly2& p) {
    RealPoly2 out;
    for (const auto& [key, c] : p.terms())
        if (key.second > 0) out.add_term(key.first, key.second - 1, c * double(key.second));
    return out;
}

ZPoly field_to_zpoly(const RealPoly2& f, const RealPoly2& g) {
    // x = (z + zbar)/2 and y = -(i/2)(z - zbar); powers cached up to the
    // largest exponent that occurs
    int max_i = 0, max_j = 0;
    for (const auto* p : {&f, &g}) {
        for (const auto& [key, c] : p->terms()) {
            max_i = std::max(max_i, key.first);
            max_j = std::max(max_j, key.second);
        }
    }
    ZPoly xsub;
    xsub.add_term(1, 0, 0.5);
    xsub.add_term(0, 1, 0.5);
    ZPoly ysub;
    ysub.add_term(1, 0, Complex(0.0, -0.5));
    ysub.add_term(0, 1, Complex(0.0, 0.5));

    std::vector<ZPoly> xpow(max_i + 1), ypow(max_j + 1);
    xpow[0] = ZPoly::term(0, 0, 1.0);
    for (int i = 1; i <= max_i; ++i) xpow[i] = xpow[i - 1] * xsub;
    ypow[0] = ZPoly::term(0, 0, 1.0);
    for (int j = 1; j <= max_j; ++j) ypow[j] = ypow[j - 1] * ysub;

    ZPoly out;
    auto accumulate = [&](const RealPoly2& p, Complex scale) {
        for (const auto& [key, c] : p.terms()) {
            out += (xpow[key.first] * ypow[key.second]) * (scale * c);
        }
    };
    accumulate(f, Complex(1.0, 0.0));
    accumulate(g, Complex(0.0, -1.0));
    return out;
}

XYTermMap zpoly_to_xy(const ZPoly& w) {
    int max_m = 0, max_k = 0;
    for (const auto& [key, c] : w.terms()) {
        max_m = std::max(max_m, key.first);
        max_k = std::max(max_k, key.second);
    }
    // powers of z = x + iy and zbar = x - iy as (x, y)-coefficient maps
    auto mul = [](const XYTermMap& a, const XYTermMap& b) {
        XYTermMap out;
        for (const auto& [ka, ca] : a)
            for (const auto& [kb, cb] : b) {
                auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
                out[key] += ca * cb;
            }
        return out;
    };
    XYTermMap one{{{0, 0}, Complex(1.0, 0.0)}};
    XYTermMap zsub{{{1, 0}, Complex(1.0, 0.0)}, {{0, 1}, Complex(0.0, 1.0)}};
    XYTermMap zbsub{{{1, 0}, Complex(1.0, 0.0)}, {{0, 1}, Complex(0.0, -1.0)}};
    std::vector<XYTermMap> zpow(max_m + 1, one), zbpow(max_k + 1, one);
    for (int m = 1; m <= max_m; ++m) zpow[m] = mul(zpow[m - 1], zsub);
    for (int k = 1; k <= max_k; ++k) zbpow[k] = mul(zbpow[k - 1], zbsub);

    XYTermMap out;
    for (const auto& [key, c] : w.terms()) {
        for (const auto& [kx, cx] : mul(zpow[key.first], zbpow[key.second])) {
            out[kx] += c * cx;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (std::abs(it->second) <= kCoeffPrune)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

RealParts zpoly_to_real_parts(const ZPoly& w) {
    ZPoly wc = conjugate(w);
    ZPoly v_z = (w + wc) * Complex(-0.25, 0.0);
    ZPoly h_z = (w - wc) * Complex(0.0, -0.25);  // 1/(4i) = -i/4
    RealParts out;
    for (const auto& [key, c] : zpoly_to_xy(v_z)) out.v.add_term(key.first, key.second, c.real());
    for (const auto& [key, c] : zpoly_to_xy(h_z)) out.h.add_term(key.first, key.second, c.real());
    return out;
}

std::string to_string(const ZPoly& w) {
    if (w.empty()) return "0";
    std::string s;
    for (const auto& [key, c] : w.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + fmt_double(c.real()) + (c.imag() < 0 ? "" : "+") + fmt_double(c.imag()) + "i)";
        s += fmt_monomial("z", key.first, "zb", key.second);
    }
    return s;
}

std::string to_string(const RealPoly2& p) {
    if (p.empty()) return "0";
    std::string s;
    for (const auto& [key, c] : p.terms()) {
        if (!s.empty()) s += " + ";
        s += fmt_double(c);
        s += fmt_monomial("x", key.first, "y", key.second);
    }
    return s;
}

}  // namespace hhdkit
