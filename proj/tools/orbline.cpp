#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <omp.h>
#include <random>
#include <sstream>

#include "orbline/dtoda.hpp"
#include "orbline/periods.hpp"
#include "orbline/sampling.hpp"
#include "orbline/suites.hpp"

using namespace orbline;

namespace {

enum Exit : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kInput = 3,
    kCap = 4,
    kInternal = 5,
};

struct Options {
    int n = 4;
    int order = 12;
    int m_range = 3;
    int m_lo = -3, m_hi = 1;
    int klass = 0;
    int K = 2, D = 3;
    int m_max = 2, r_max = 2;
    int seed = -1;
    std::string tau1, tau2;
    bool json = false;
    bool compare = false;
};

void apply_threads() {
    if (const char* t = std::getenv("ORBLINE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(t, &end, 10);
        if (*t == '\0' || *end != '\0' || v < 1) throw UsageError("ORBLINE_THREADS must be a positive integer");
        omp_set_num_threads(static_cast<int>(v));
    }
}

int emit(const Report& r, bool json) {
    std::cout << (json ? render_json(r) : render_text(r));
    return all_pass(r) ? kOk : kCheckFailed;
}

TauFunction load_tau(const CoordsPtr& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    FockSpace fs = FockSpace::make(c->f, c->K, c->D);
    try {
        return TauFunction::from_fock(c, fs, parse_fock(fs, ss.str()));
    } catch (const ParseError& e) {
        std::string msg = e.what();
        msg = msg.substr(msg.find(": ") + 2);
        throw ParseError(e.line, e.column, msg + " (in " + path + ")");
    }
}

std::pair<TauFunction, TauFunction> taus(const Options& o, const CoordsPtr& c) {
    if (o.seed >= 0) {
        if (!o.tau1.empty()) throw UsageError("--seed and --tau1 are exclusive");
        std::mt19937 rng(static_cast<unsigned>(o.seed));
        TauFunction a = random_tau(c, rng);
        TauFunction b = random_tau(c, rng);
        return {a, b};
    }
    if (o.tau1.empty()) throw UsageError("give --tau1 FILE [--tau2 FILE] or --seed S");
    TauFunction a = load_tau(c, o.tau1);
    TauFunction b = o.tau2.empty() ? a : load_tau(c, o.tau2);
    return {a, b};
}

void tau_options(CLI::App* s, Options& o) {
    s->add_option("--tau1", o.tau1, "tau on the primed side, in the Fock text form");
    s->add_option("--tau2", o.tau2, "tau on the double primed side (default: tau1)");
    s->add_option("--seed", o.seed, "use a random pair instead of files")->check(CLI::NonNegativeNumber);
    s->add_option("--slice", o.K, "descendant slice K")->check(CLI::Range(0, 4));
    s->add_option("--degree-cap", o.D, "degree cap on side variables")->check(CLI::Range(1, 8));
    s->add_option("--m-max", o.m_max, "check |m| <= m-max")->check(CLI::Range(0, 8));
    s->add_option("--r-max", o.r_max, "check 0 <= r <= r-max")->check(CLI::Range(0, 8));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for the K-lattice, periods, phase factors, HQEs and D-Toda of an orbifold line"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--n", o.n, "rank parameter, 4 <= n <= 12")->check(CLI::Range(min_rank(), max_rank()));
    app.add_flag("--json", o.json, "one JSON record per line");
    app.fallthrough();

    auto* lattice = app.add_subcommand("lattice", "K-lattice reports");
    auto* lattice_table = lattice->add_subcommand("table", "Euler and intersection tables");
    lattice->require_subcommand(1);

    auto* roots = app.add_subcommand("roots", "reflection vectors");
    auto* roots_verify = roots->add_subcommand("verify", "self-intersection, count, closure, sigma action");
    roots_verify->add_option("--m-range", o.m_range, "twist range of the generating set")->check(CLI::Range(1, 6));
    roots->require_subcommand(1);

    auto* periods = app.add_subcommand("periods", "calibrated periods");
    auto* periods_dump = periods->add_subcommand("dump", "print the periods of one basis class");
    periods_dump->add_option("--class", o.klass, "basis index of the K class");
    periods_dump->add_option("--m-lo", o.m_lo);
    periods_dump->add_option("--m-hi", o.m_hi);
    periods->require_subcommand(1);

    auto* phase = app.add_subcommand("phase", "phase factors");
    auto* phase_check = phase->add_subcommand("check", "direct vs closed, limit identity, b tilde");
    phase_check->add_option("--order", o.order, "x-order N")->check(CLI::Range(1, 200));
    phase->require_subcommand(1);

    auto* ident = app.add_subcommand("identities", "identity suites");
    auto* ident_all = ident->add_subcommand("all", "every lattice, root, period and phase check");
    ident_all->add_option("--order", o.order, "x-order N for the phase checks")->check(CLI::Range(1, 200));
    ident->require_subcommand(1);

    auto* hqe = app.add_subcommand("hqe", "Hirota quadratic equations");
    auto* hqe_chk = hqe->add_subcommand("check", "residuals vanish for the given pair");
    tau_options(hqe_chk, o);
    hqe->require_subcommand(1);

    auto* dtoda = app.add_subcommand("dtoda", "bilinear wave-function equations");
    auto* dtoda_chk = dtoda->add_subcommand("check", "defects vanish for the given pair");
    tau_options(dtoda_chk, o);
    dtoda_chk->add_flag("--compare-hqe", o.compare, "also compare with the HQE residues");
    dtoda->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        apply_threads();
        const Field* f = Field::get(o.n);
        if (*lattice_table) {
            std::cout << (o.json ? lattice_table_json(f) : lattice_table_text(f));
            return kOk;
        }
        if (*roots_verify) return emit(roots_suite(f, o.m_range), o.json);
        if (*periods_dump) {
            if (o.klass < 0 || o.klass > o.n) throw UsageError("--class must lie in [0, n]");
            if (o.m_lo > o.m_hi) throw UsageError("empty m window");
            for (const auto& [m, P] : f_tilde(KClass::basis(f, o.klass), o.m_lo, o.m_hi))
                std::cout << "m=" << m << "\n" << P.str() << "\n";
            return kOk;
        }
        if (*phase_check) return emit(phase_suite(f, o.order), o.json);
        if (*ident_all) return emit(identities_all(f, o.order), o.json);
        if (*hqe_chk || *dtoda_chk) {
            auto c = Coords::make(f, o.K, o.D);
            if (o.r_max > o.K) throw CapExceeded("--r-max exceeds the slice --slice");
            auto [a, b] = taus(o, c);
            if (*hqe_chk) return emit(hqe_check(a, b, o.m_max, o.r_max), o.json);
            Report r = dtoda_check(a, b, o.m_max, o.r_max);
            if (o.compare) {
                Report e = equivalence_check(a, b, o.m_max, o.r_max);
                r.insert(r.end(), e.begin(), e.end());
            }
            return emit(r, o.json);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInput;
    } catch (const NonInvertibleTau& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const CapExceeded& e) {
        std::cerr << "window error: " << e.what() << "\n";
        return kCap;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
