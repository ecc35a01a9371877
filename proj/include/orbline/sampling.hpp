#pragma once

#include <random>

#include "orbline/hqe.hpp"

namespace orbline {

// 1 + `terms` random monomials of degree 1..c.D in the side-1 slice, with
// x^{0|1} eps^{-1|0|1} and small integer coefficients.
inline TauFunction random_tau(const CoordsPtr& c, std::mt19937& rng, int terms = 5) {
    Poly p = c->one(Frame::kQ);
    std::uniform_int_distribution<int> var(0, c->per_side() - 1), deg(1, std::max(1, c->D)), co(1, 3), sg(0, 1),
        xe(0, 1), he(-1, 1);
    for (int t = 0; t < terms; ++t) {
        Mono m{};
        const int d = deg(rng);
        for (int j = 0; j < d; ++j) ++m[c->side_base(1) + var(rng)];
        m[Coords::x] = static_cast<std::int8_t>(xe(rng));
        m[Coords::h] = static_cast<std::int8_t>(he(rng));
        p.add(m, Scalar(c->f, Rat(sg(rng) ? co(rng) : -co(rng))));
    }
    return TauFunction{c, p};
}

// coefficients in {-2..2}/{1,2} for z^lo..z^hi
inline HField random_hfield(const Field* f, std::mt19937& rng, int lo, int hi) {
    std::uniform_int_distribution<int> c(-2, 2);
    HField r(f);
    for (int k = lo; k <= hi; ++k) {
        CohVector v(f);
        for (int a = 0; a <= f->n; ++a) v[a] = Scalar(f, frac(c(rng), 1 + (a % 2)));
        r.c[k] = v;
    }
    return r;
}

// 1 + `terms` monomials in q_{a,k}, k <= kmax, of degree <= deg, times hbar^{-1/2..1/2}
inline Poly random_fock_tau(const FockSpace& fs, std::mt19937& rng, int terms, int deg, int kmax) {
    std::uniform_int_distribution<int> a(0, fs.f->n), k(0, kmax), d(0, deg), c(-3, 3), he(-1, 1);
    Poly p = fs.one();
    for (int t = 0; t < terms; ++t) {
        Mono m{};
        int dd = d(rng);
        for (int i = 0; i < dd; ++i) ++m[fs.q(a(rng), k(rng))];
        m[fs.h()] = static_cast<std::int8_t>(he(rng));
        p.add(m, Scalar(fs.f, Rat(c(rng))));
    }
    return p;
}

// blocks for isotropic_series: symmetric at odd k, antisymmetric at even k
inline std::vector<std::vector<std::vector<Rat>>> random_isotropic_blocks(const Field* f, std::mt19937& rng,
                                                                          int order) {
    const int r = static_cast<int>(isotropic_basis(f).size());
    std::uniform_int_distribution<int> c(-2, 2);
    std::vector<std::vector<std::vector<Rat>>> B(order, std::vector<std::vector<Rat>>(r, std::vector<Rat>(r)));
    for (int k = 1; k <= order; ++k)
        for (int a = 0; a < r; ++a)
            for (int b = a; b < r; ++b) {
                Rat x = c(rng);
                if (k % 2 == 0 && a == b) x = 0;
                B[k - 1][a][b] = x;
                B[k - 1][b][a] = k % 2 ? x : Rat(-x);
            }
    return B;
}

}  // namespace orbline
