#include "hyperlat/asymptotics.hpp"

#include "hyperlat/shapes.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace hyperlat {

namespace {

struct Mat2 {
    BigInt a, b, c, d;
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

Mat2 transfer_matrix(LatticeParams params) {
    const long long p = params.p, q = params.q;
    if (p >= 4)
        return {BigInt(q - 3), BigInt(q - 2), BigInt(8 - 3 * p - 3 * q + p * q),
                BigInt(5 - 2 * p - 3 * q + p * q)};
    return {BigInt(1), BigInt(1), BigInt(q - 6), BigInt(q - 5)};
}

std::pair<BigInt, BigInt> initial_vector(LatticeParams params) {
    if (params.p >= 4) return {BigInt(0), BigInt(params.p)};
    return {BigInt(3), BigInt(3 * (params.q - 4))};
}

void check_close(double a, double b, double rel, const char* what) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    if (std::fabs(a - b) > rel * scale)
        throw InvariantViolation(std::string(what) + ": " + std::to_string(a) +
                                 " vs " + std::to_string(b));
}

} // namespace

SpectralData spectral(LatticeParams params) {
    const double p = params.p, q = params.q;
    SpectralData s;
    if (params.p >= 4) {
        s.trace = 2 + params.p * (params.q - 2) - 2 * params.q;
        s.discriminant =
            (params.p - 2) * (params.q - 2) * (params.q * (params.p - 2) - 2 * params.p);
        if (s.discriminant <= 0)
            throw InvariantViolation("spectral: non-positive discriminant");
        const double root = std::sqrt(double(s.discriminant));
        s.lambda_plus = 0.5 * (double(s.trace) + root);
        s.lambda_minus = 0.5 * (double(s.trace) - root);
        const double d = std::sqrt((p - 2) * (p * (q - 2) - 2 * q));
        const double sq = std::sqrt(q - 2);
        s.a_plus = d - 2 * sq + p * sq;
        s.a_minus = d + 2 * sq - p * sq;
        s.c_pq = p / (2 * d);
    } else {
        if (params.q < 7) throw NonsenseParams("spectral: p = 3 requires q >= 7");
        s.trace = params.q - 4;
        s.discriminant = (params.q - 6) * (params.q - 2);
        if (s.discriminant <= 0)
            throw InvariantViolation("spectral: non-positive discriminant");
        const double root = std::sqrt(double(s.discriminant));
        s.lambda_plus = 0.5 * (double(s.trace) + root);
        s.lambda_minus = 0.5 * (double(s.trace) - root);
        s.a_plus = 1.5 * (q - 3 + (q - 5) * (q - 2) / root);
        s.a_minus = 1.5 * (q - 3 - (q - 5) * (q - 2) / root);
        s.c_pq = 0;
    }
    s.det = 1;
    // det(T) = 1 symbolically for both transfer matrices; verify on the instance.
    const Mat2 t = transfer_matrix(params);
    if (t.a * t.d - t.b * t.c != 1)
        throw InvariantViolation("spectral: transfer matrix determinant != 1");
    if (t.a + t.d != s.trace)
        throw InvariantViolation("spectral: trace mismatch");
    check_close(s.lambda_plus * s.lambda_minus, 1.0, 1e-12, "lambda+ * lambda-");
    check_close(s.lambda_plus + s.lambda_minus, double(s.trace), 1e-12, "lambda+ + lambda-");
    return s;
}

double cheeger_constant(LatticeParams params) {
    const double p = params.p, q = params.q;
    const double closed = (q - 2) * std::sqrt(1.0 - 4.0 / ((p - 2) * (q - 2)));
    const SpectralData s = spectral(params);
    if (params.p >= 4) {
        const double limit = 2 * std::sqrt(q - 2) * (s.lambda_plus - 1) / s.a_plus;
        check_close(closed, limit, 1e-12, "cheeger closed form vs ball-ratio limit");
    } else {
        const double limit = 3 * std::sqrt((q - 2) / (q - 6)) * s.lambda_plus *
                             (s.lambda_plus - 1) / s.a_plus;
        check_close(closed, limit, 1e-12, "cheeger closed form vs p=3 limit");
    }
    return closed;
}

BigRational cheeger_constant_squared(LatticeParams params) {
    const long long p = params.p, q = params.q;
    return BigRational(q - 2) * BigRational(q - 2) -
           BigRational(4 * (q - 2), p - 2);
}

std::vector<BigRational> ball_ratio_sequence(LatticeParams params, int n_max) {
    const LayerCounts counts(params, n_max);
    std::vector<BigRational> out;
    out.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        out.emplace_back(counts.boundary_size(n), counts.ball_size(n));
    return out;
}

std::vector<BigRational> minimal_shape_ratio_sequence(LatticeParams params,
                                                      const std::vector<BigInt>& n_values) {
    std::vector<BigRational> out;
    out.reserve(n_values.size());
    for (const BigInt& n : n_values)
        out.emplace_back(minimal_perimeter_closed_form(params, n), n);
    return out;
}

// ---------------------------------------------------------------------------
// Polynomials and growth functions
// ---------------------------------------------------------------------------

BigInt Poly::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void Poly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool Poly::operator==(const Poly& o) const {
    Poly a = *this, b = o;
    a.trim();
    b.trim();
    return a.c == b.c;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(int(i)) + b.at(int(i));
    r.trim();
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

Poly poly_scale(const Poly& a, const BigInt& s) {
    Poly r = a;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
}

RationalFunction growth_function(LatticeParams params) {
    const long long p = params.p, q = params.q;
    const Mat2 t = transfer_matrix(params);
    const auto [v0, v1] = initial_vector(params);

    // Closed form.
    RationalFunction closed;
    if (p >= 4) {
        closed.numerator = {{BigInt(p), BigInt(p)}};
        closed.denominator = {{BigInt(1), BigInt(2 * q + 2 * p - p * q - 2), BigInt(1)}};
    } else {
        // 3 + 3(q-3-z)/(z^2 + (4-q)z + 1) over a common denominator.
        closed.numerator = {{BigInt(3 * q - 6), BigInt(9 - 3 * q), BigInt(3)}};
        closed.denominator = {{BigInt(1), BigInt(4 - q), BigInt(1)}};
    }

    // Independent construction: c0 + (1,1) adj(Id - zT) z u / det(Id - zT),
    // where u = T (v0,v1)^T and c0 is the constant term of the closed form.
    const BigInt u0 = t.a * v0 + t.b * v1;
    const BigInt u1 = t.c * v0 + t.d * v1;
    const Poly det = {{BigInt(1), -(t.a + t.d), t.a * t.d - t.b * t.c}};
    // (1,1) adj(Id - zT) = (1 - z*d + z*c, 1 - z*a + z*b).
    const Poly row0 = {{BigInt(1), t.c - t.d}};
    const Poly row1 = {{BigInt(1), t.b - t.a}};
    const Poly zu0 = {{BigInt(0), u0}};
    const Poly zu1 = {{BigInt(0), u1}};
    const BigInt c0 = p >= 4 ? BigInt(p) : BigInt(3 * (q - 2));
    Poly constructed_num =
        poly_add(poly_scale(det, c0), poly_add(poly_mul(row0, zu0), poly_mul(row1, zu1)));

    if (!(constructed_num == closed.numerator) || !(det == closed.denominator))
        throw InvariantViolation("growth_function: closed form disagrees with the "
                                 "matrix construction");
    return closed;
}

std::vector<BigInt> series_coefficients(const RationalFunction& f, int n_max) {
    if (n_max < 0) throw NonsenseParams("series_coefficients: n_max must be >= 0");
    Poly den = f.denominator;
    den.trim();
    if (den.c.empty() || den.c[0] == 0)
        throw NonsenseParams("series_coefficients: denominator has zero constant term");
    const BigInt d0 = den.c[0];
    if (d0 != 1 && d0 != -1)
        throw NonsenseParams("series_coefficients: denominator constant term must be a unit");
    std::vector<BigInt> a(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        BigInt acc = f.numerator.at(n);
        for (int j = 1; j <= den.degree() && j <= n; ++j) acc -= den.c[j] * a[n - j];
        a[n] = acc / d0;
    }
    return a;
}

BigInt animal_count_exact(LatticeParams params, int n) {
    const Mat2 t = transfer_matrix(params);
    auto [s0, s1] = initial_vector(params);
    if (params.p >= 4) {
        if (n < 0) throw NonsenseParams("animal_count_exact: n must be >= 0");
        for (int k = 0; k < n; ++k) {
            const BigInt n0 = t.a * s0 + t.b * s1;
            const BigInt n1 = t.c * s0 + t.d * s1;
            s0 = n0;
            s1 = n1;
        }
        return s0 + s1;
    }
    if (n < 1) throw NonsenseParams("animal_count_exact: p = 3 requires n >= 1");
    for (int k = 0; k < n - 1; ++k) {
        const BigInt n0 = t.a * s0 + t.b * s1;
        const BigInt n1 = t.c * s0 + t.d * s1;
        s0 = n0;
        s1 = n1;
    }
    return 3 + s0 + s1;
}

double animal_count_closed_form(LatticeParams params, int n) {
    const SpectralData s = spectral(params);
    if (params.p >= 4) {
        if (n < 0) throw NonsenseParams("animal_count_closed_form: n must be >= 0");
        return s.c_pq * (s.a_plus * std::pow(s.lambda_plus, n) +
                         s.a_minus * std::pow(s.lambda_minus, n));
    }
    if (n < 1) throw NonsenseParams("animal_count_closed_form: p = 3 requires n >= 1");
    return 3 + s.a_plus * std::pow(s.lambda_plus, n - 1) +
           s.a_minus * std::pow(s.lambda_minus, n - 1);
}

BigRational euler_characteristic(LatticeParams params) {
    const long long p = params.p, q = params.q;
    const RationalFunction f = growth_function(params);
    const BigInt num1 = f.numerator.eval(1);
    const BigInt den1 = f.denominator.eval(1);
    if (num1 == 0) throw InvariantViolation("euler_characteristic: f(1) = 0");
    const BigRational chi(den1, num1);
    if (chi != BigRational(2 * q + 2 * p - p * q, 2 * p))
        throw InvariantViolation("euler_characteristic: 1/f(1) != (2q+2p-pq)/(2p)");
    if (p == 3 && chi != BigRational(6 - q, 6))
        throw InvariantViolation("euler_characteristic: p=3 form mismatch");
    return chi;
}

std::vector<BigRational> remark_bound_sequence(LatticeParams params, int n_max) {
    const LayerCounts counts(params, n_max + 1);
    std::vector<BigRational> out;
    out.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const BigInt l = counts.layer_size(n + 1);
        if (params.p >= 4) {
            out.push_back(BigRational(params.q - 2) -
                          BigRational(2 * counts.i_count(n + 1), l));
        } else {
            out.push_back(BigRational(params.q - 4) -
                          BigRational(2 * counts.i2_count(n + 1), l));
        }
    }
    return out;
}

} // namespace hyperlat
