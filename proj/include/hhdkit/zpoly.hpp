#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace hhdkit {

using Complex = std::complex<double>;

/// Coefficients with magnitude at or below this are dropped from storage.
inline constexpr double kCoeffPrune = 1e-14;

/// Graded lexicographic order on exponent pairs; makes iteration order the
/// display order.
struct GradedLess {
    bool operator()(const std::pair<int, int>& a, const std::pair<int, int>& b) const {
        const int ga = a.first + a.second;
        const int gb = b.first + b.second;
        if (ga != gb) return ga < gb;
        return a < b;
    }
};

/// Finitely supported complex polynomial in z and zbar, treated as
/// independent variables. Term key (m, k) means z^m zbar^k.
class ZPoly {
public:
    using TermMap = std::map<std::pair<int, int>, Complex, GradedLess>;

    ZPoly() = default;
    static ZPoly term(int m, int k, Complex c);

    void add_term(int m, int k, Complex c);
    Complex coeff(int m, int k) const;
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    double max_abs_coeff() const;
    bool is_zero(double tol = 1e-10) const { return max_abs_coeff() <= tol; }

    ZPoly& operator+=(const ZPoly& o);
    ZPoly& operator-=(const ZPoly& o);
    ZPoly& operator*=(Complex c);
    friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
    friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
    friend ZPoly operator*(ZPoly a, Complex c) { return a *= c; }
    friend ZPoly operator*(Complex c, ZPoly a) { return a *= c; }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    bool operator==(const ZPoly& o) const { return terms_ == o.terms_; }

private:
    TermMap terms_;
};

/// Finitely supported real polynomial in (x, y). Term key (i, j) means x^i y^j.
class RealPoly2 {
public:
    using TermMap = std::map<std::pair<int, int>, double, GradedLess>;

    RealPoly2() = default;
    static RealPoly2 term(int i, int j, double c);

    void add_term(int i, int j, double c);
    double coeff(int i, int j) const;
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    double max_abs_coeff() const;
    bool is_zero(double tol = 1e-10) const { return max_abs_coeff() <= tol; }
    double evaluate(double x, double y) const;

    RealPoly2& operator+=(const RealPoly2& o);
    RealPoly2& operator-=(const RealPoly2& o);
    RealPoly2& operator*=(double c);
    friend RealPoly2 operator+(RealPoly2 a, const RealPoly2& b) { return a += b; }
    friend RealPoly2 operator-(RealPoly2 a, const RealPoly2& b) { return a -= b; }
    friend RealPoly2 operator*(RealPoly2 a, double c) { return a *= c; }
    friend RealPoly2 operator*(double c, RealPoly2 a) { return a *= c; }
    friend RealPoly2 operator*(const RealPoly2& a, const RealPoly2& b);
    bool operator==(const RealPoly2& o) const { return terms_ == o.terms_; }

private:
    TermMap terms_;
};

/// Formal Wirtinger derivative in z: (m, k) c -> (m-1, k) m c.
ZPoly d_dz(const ZPoly& w);

/// Formal Wirtinger derivative in zbar: (m, k) c -> (m, k-1) k c.
ZPoly d_dzbar(const ZPoly& w);

/// Antiderivative in z with zero integration constant;
/// d_dz(integrate_dz(f)) == f exactly at coefficient level.
ZPoly integrate_dz(const ZPoly& f);

/// Pointwise complex conjugate as a formal operation:
/// (m, k) c -> (k, m) conj(c).
ZPoly conjugate(const ZPoly& w);

/// |dW/dz|^2 - |dW/dzbar|^2 as a formal polynomial. W gives a strictly
/// orthogonal decomposition iff this vanishes identically.
ZPoly mod_squared_diff(const ZPoly& w);

/// Numeric evaluation with zbar = conj(z).
Complex evaluate(const ZPoly& w, Complex z);

RealPoly2 d_dx(const RealPoly2& p);
RealPoly2 d_dy(const RealPoly2& p);

/// F(z, zbar) = f - i g rewritten through x = (z + zbar)/2,
/// y = (z - zbar)/(2i).
ZPoly field_to_zpoly(const RealPoly2& f, const RealPoly2& g);

struct RealParts {
    RealPoly2 v;
    RealPoly2 h;
};

/// V = -(W + conj W)/4 and H = (W - conj W)/(4i), rewritten to (x, y)
/// through z = x + i y. Imaginary residues below 1e-12 are dropped.
RealParts zpoly_to_real_parts(const ZPoly& w);

/// Complex (x, y)-coefficient view of a ZPoly after substituting z = x + iy.
using XYTermMap = std::map<std::pair<int, int>, Complex, GradedLess>;
XYTermMap zpoly_to_xy(const ZPoly& w);

/// Deterministic text rendering, graded lexicographic term order.
std::string to_string(const ZPoly& w);
std::string to_string(const RealPoly2& p);

}  // namespace hhdkit
