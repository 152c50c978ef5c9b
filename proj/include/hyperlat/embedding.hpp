#pragma once

#include "hyperlat/lattice.hpp"

#include <complex>
#include <string>
#include <vector>

namespace hyperlat {

using Complex = std::complex<double>;

// Unit-disc isometry in SU(1,1) form: z -> (a z + b) / (conj(b) z + conj(a)),
// |a|^2 - |b|^2 = 1.
struct MobiusTransform {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};

    Complex apply(Complex z) const { return (a * z + b) / (std::conj(b) * z + std::conj(a)); }
    MobiusTransform then(const MobiusTransform& inner) const; // this ∘ inner
    double det() const { return std::norm(a) - std::norm(b); }

    static MobiusTransform identity() { return {}; }
    static MobiusTransform rotation(double theta);                  // around 0
    static MobiusTransform translation(Complex c);                  // 0 -> c
    static MobiusTransform rotation_about(Complex c, double theta); // around c
};

// Poincare-disc metric with curvature -1: ds = 2|dz| / (1 - |z|^2).
double hyperbolic_distance(Complex z, Complex w);

// Embedding conventions: the fundamental face is centred at 0 with its first
// vertex at z = r on the positive real axis; r^2 = cos((a+b)/2)/cos((a-b)/2)
// with a = 2pi/q, b = 2pi/p. The printed generator matrices swap the roles:
// rho_a rotates by beta about the face centre, rho_b by alpha about z = r.
struct EmbeddingConfig {
    double alpha = 0;
    double beta = 0;
    double r = 0;
    double dedup_tolerance = 1e-9; // hyperbolic distance
    double svg_size = 900.0;
    double edge_stroke = 1.2;
    double vertex_radius = 2.2;
    double highlight_radius = 5.0;
    double cull_radius = 0.9995;
    std::vector<std::string> palette = {"#e0457b", "#2a9d48", "#2e6fdf",
                                        "#e8a117", "#8c4fd0", "#19b5b0"};

    static EmbeddingConfig for_params(LatticeParams params);
};

// rho(a): rotation by beta about the face centre (as printed); rho(b):
// rotation by alpha about the base vertex z = r.
MobiusTransform rho_a(const EmbeddingConfig& cfg);
MobiusTransform rho_b(const EmbeddingConfig& cfg);

// Coordinates for every vertex of the ball, by corona replay: each new face is
// placed off an already-placed edge, on the opposite side from the face that
// edge already belongs to. Re-derived coordinates of already-placed vertices
// must agree within the dedup tolerance, and distinct vertices must not
// collide (DedupAmbiguity).
std::vector<Complex> embed_ball(const LatticeBall& ball, const EmbeddingConfig& cfg);

} // namespace hyperlat
