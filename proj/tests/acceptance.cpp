// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
// usage: acceptance [path-to-orbline-cli]

#include <omp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "orbline/dtoda.hpp"
#include "orbline/sampling.hpp"
#include "orbline/suites.hpp"

using namespace orbline;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome from_report(const Report& r) {
    Outcome o;
    int cases = 0;
    for (const auto& c : r) {
        cases += c.instances;
        if (!c.pass() && o.pass) {
            o.pass = false;
            o.detail = c.suite + "/" + c.id + " " + c.params + ": " + c.witness;
        }
    }
    if (o.pass) o.detail = std::to_string(r.size()) + " checks, " + std::to_string(cases) + " cases";
    return o;
}

Report select(const Report& r, std::initializer_list<const char*> ids) {
    Report out;
    for (const auto& c : r)
        for (const char* id : ids)
            if (c.id == id) out.push_back(c);
    return out;
}

Report concat(Report a, const Report& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Outcome crit_tables() {
    Report r;
    for (int n = 4; n <= 8; ++n)
        r = concat(r, select(pairing_suite(Field::get(n)), {"euler_on_eps", "eps_orthonormal", "line_bundle_intersections"}));
    return from_report(r);
}

Outcome crit_roots() {
    Report r;
    for (int n = 4; n <= 8; ++n) r = concat(r, roots_suite(Field::get(n), 3));
    return from_report(r);
}

Outcome crit_averaging() {
    Report r;
    for (int n = 4; n <= 6; ++n) r = concat(r, averaging_suite(Field::get(n)));
    return from_report(r);
}

Outcome crit_phases() {
    Report r;
    for (int n = 4; n <= 6; ++n)
        r = concat(r, select(phase_suite(Field::get(n), 20),
                             {"direct_equals_closed", "direct_equals_closed_opposite", "phase_limit_identity"}));
    return from_report(r);
}

Outcome crit_b_tilde() {
    Report r;
    for (int n = 4; n <= 8; ++n)
        r = concat(r, select(phase_suite(Field::get(n), 1), {"b_tilde_three_way", "b_tilde_values", "limit_value_eps3"}));
    return from_report(r);
}

Outcome crit_fock() {
    Outcome o;
    int cases = 0;
    auto fail = [&](const std::string& what) {
        if (o.pass) o.detail = what;
        o.pass = false;
    };
    auto u2 = [](const FockSpace& fs, const Scalar& s) { return fs.var(fs.u(), 2) * s; };
    std::mt19937 rng(606);

    // Heisenberg commutation on monomials of degree <= 2
    for (int n : {4, 5}) {
        const Field* f = Field::get(n);
        auto fs = FockSpace::make(f, 3, 5);
        std::vector<Poly> span{fs.one()};
        for (int a = 0; a <= n; ++a)
            for (int k = 0; k <= 1; ++k) span.push_back(fs.var(fs.q(a, k)));
        const std::size_t lin = span.size();
        for (std::size_t i = 1; i < lin; ++i)
            for (std::size_t j = i; j < lin; ++j) span.push_back(span[i] * span[j]);
        for (int t = 0; t < 3; ++t) {
            auto F = random_hfield(f, rng, -2, 2), G = random_hfield(f, rng, -2, 2);
            for (const auto& tau : span) {
                ++cases;
                Poly lhs = heisenberg_apply(fs, F, heisenberg_apply(fs, G, tau)) -
                           heisenberg_apply(fs, G, heisenberg_apply(fs, F, tau));
                if (lhs != u2(fs, omega(F, G)) * tau) fail("Heisenberg commutator, n=" + std::to_string(n));
            }
        }
    }
    // e^{f+} e^{g-} = e^{Omega(f+, g-)} e^{g-} e^{f+}
    {
        const Field* f = Field::get(5);
        auto fs = FockSpace::make(f, 3, 4);
        for (int t = 0; t < 10; ++t) {
            ++cases;
            auto F = random_hfield(f, rng, -2, 1), G = random_hfield(f, rng, -2, 1);
            Poly tau = random_fock_tau(fs, rng, 3, 2, 1);
            Poly phase = exp_series(u2(fs, omega(F.plus(), G.minus())));
            Poly lhs = vertex_apply(fs, F.plus(), HField(f), vertex_apply(fs, HField(f), G.minus(), tau));
            if (lhs != phase * vertex_apply(fs, F.plus(), G.minus(), tau)) fail("normal ordering law");
        }
    }
    // quantization of A = B/z and A = C z on explicit states
    {
        const Field* f = Field::get(4);
        auto fs = FockSpace::make(f, 3, 6);
        Poly q00 = fs.var(fs.q(0, 0)), q01 = fs.var(fs.q(1, 0)), q001 = fs.var(fs.q(0, 1));
        Poly hm2 = fs.var(fs.h(), -2);
        MatSeries A(f);
        HMatrix B = zero_matrix(f);
        B[1][0] = Scalar(f, Rat(1));
        A.m[-1] = B;
        MatSeries P(f);
        HMatrix C = zero_matrix(f);
        C[0][1] = Scalar(f, Rat(1));
        P.m[1] = C;
        cases += 3;
        if (quantize_quadratic(fs, A, fs.one()) != q00 * q00 * hm2 * frac(-1, 2)) fail("quantized q q term");
        if (quantize_quadratic(fs, A, q01) != q00 * q00 * q01 * hm2 * frac(-1, 2) - q001) fail("quantized q p term");
        if (quantize_quadratic(fs, P, q00 * q00) != fs.var(fs.h(), 2)) fail("quantized p p term");
    }
    // W is defined (the division is exact) iff S is symplectic
    for (int n : {4, 5, 6}) {
        const Field* f = Field::get(n);
        for (int t = 0; t < 4; ++t) {
            cases += 2;
            auto S = isotropic_series(f, random_isotropic_blocks(f, rng, 2));
            bool ok = is_symplectic(S);
            try {
                w_matrices(S);
            } catch (const NotDivisible&) {
                ok = false;
            }
            if (!ok) fail("w_form on a symplectic series");
            MatSeries Sp = S;
            Sp.m[-1] = Sp.at(-1);
            Sp.m[-1][0][1] += Scalar(f, Rat(1 + t));
            bool threw = false;
            try {
                w_matrices(Sp);
            } catch (const NotDivisible&) {
                threw = true;
            }
            if (is_symplectic(Sp) || !threw) fail("w_form on a non-symplectic series");
        }
    }
    // S conjugation, 50 random instances at degree cap 3
    for (int t = 0; t < 50; ++t) {
        ++cases;
        const Field* f = Field::get(4 + t % 3);
        auto fs = FockSpace::make(f, 5, 3);
        auto S = isotropic_series(f, random_isotropic_blocks(f, rng, 2));
        auto F = random_hfield(f, rng, -1, 1);
        Poly tau = random_fock_tau(fs, rng, 3, 3, 1);
        auto [lhs, rhs] = s_conjugation_check(fs, S, F, tau);
        if (lhs != rhs) fail("S conjugation instance " + std::to_string(t));
    }
    if (o.pass) o.detail = std::to_string(cases) + " cases";
    return o;
}

Outcome crit_equivalence() {
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 2, 3);
    std::mt19937 rng(7007);
    Report r;
    for (int t = 0; t < 20; ++t) {
        TauFunction a = random_tau(c, rng, 5), b = random_tau(c, rng, 5);
        r = concat(r, equivalence_check(a, b, 2, 2, "pair=" + std::to_string(t)));
    }
    return from_report(r);
}

std::string run_cli(const std::string& cli, int threads) {
    std::string cmd = "ORBLINE_THREADS=" + std::to_string(threads) + " '" + cli + "' identities all --n 4 --order 12";
    std::unique_ptr<FILE, int (*)(FILE*)> p(popen(cmd.c_str(), "r"), pclose);
    if (!p) return "<popen failed>";
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p.get())) > 0) out.append(buf.data(), got);
    return out;
}

Outcome crit_regression(const std::string& cli) {
    const Field* f = Field::get(4);
    std::vector<std::string> outs;
    for (int threads : {1, 2, 4, 1}) {
        omp_set_num_threads(threads);
        outs.push_back(render_text(identities_all(f, 12)));
    }
    if (!cli.empty())
        for (int threads : {1, 3}) outs.push_back(run_cli(cli, threads));
    Outcome o;
    for (std::size_t i = 1; i < outs.size(); ++i)
        if (outs[i] != outs[0]) {
            o.pass = false;
            o.detail = "output " + std::to_string(i) + " differs from the first";
            return o;
        }
    if (!all_pass(identities_all(f, 12))) {
        o.pass = false;
        o.detail = "stable, but the suite itself fails";
        return o;
    }
    o.detail = std::to_string(outs.size()) + " runs, " + std::to_string(outs[0].size()) + " bytes each" +
               (cli.empty() ? " (CLI not given)" : "");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "Euler and intersection tables, n=4..8", 10, crit_tables},
        {2, "reflection vectors, n=4..8", 30, crit_roots},
        {3, "averaged, twisted and weighted sigma identities, n=4..6", 60, crit_averaging},
        {4, "phase factors direct vs closed and limit identity, N=20, n=4..6", 300, crit_phases},
        {5, "b tilde, limit and one-form agreement, n=4..8", 10, crit_b_tilde},
        {6, "Fock identities and S conjugation", 300, crit_fock},
        {7, "HQE residues equal dressed bilinear defects, 20 pairs, n=4", 600, crit_equivalence},
        {8, "identities all byte-stable across runs and threads", 600, [&] { return crit_regression(cli); }},
    };
    bool ok = true;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s > c.budget_s) {
            o.pass = false;
            o.detail += "; over the time budget";
        }
        ok = ok && o.pass;
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << s;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << o.detail << "; "
                  << t.str() << " s / " << c.budget_s << " s]" << std::endl;
    }
    return ok ? 0 : 1;
}
