#include "orbline/suites.hpp"

#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "orbline/dtoda.hpp"
#include "orbline/phase.hpp"

namespace orbline {

namespace {

using Witness = std::optional<std::string>;

std::string pair_name(const Field* f, int i, int j) { return k_basis_name(f, i) + "," + k_basis_name(f, j); }

std::string nparam(const Field* f) { return "n=" + std::to_string(f->n); }

// Runs fn(k) for k < count in parallel and keeps the first failure by k.
template <class Fn>
CheckRecord run_cases(std::string suite, std::string id, std::string params, int count, Fn fn) {
    std::vector<Witness> out(count);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < count; ++k) {
        try {
            out[k] = fn(k);
        } catch (const std::exception& e) {
            out[k] = std::string("exception: ") + e.what();
        }
    }
    CheckRecord r{std::move(suite), std::move(id), std::move(params), count, 0, ""};
    for (const auto& w : out)
        if (w) {
            if (r.failures++ == 0) r.witness = *w;
        }
    return r;
}

template <class Fn>
CheckRecord run_pairs(const Field* f, std::string suite, std::string id, Fn fn) {
    const int d = f->n + 1;
    return run_cases(std::move(suite), std::move(id), nparam(f) + " pairs=" + std::to_string(d * d), d * d,
                     [&](int k) { return fn(k / d, k % d); });
}

Witness expect_eq(const Rat& got, const Rat& want, const std::string& where) {
    if (got == want) return std::nullopt;
    return where + ": got " + got.get_str() + ", expected " + want.get_str();
}

KClass eps(const Field* f, int s, int i) { return eps_vector(f, {s, i}); }

}  // namespace

bool all_pass(const Report& r) {
    for (const auto& c : r)
        if (!c.pass()) return false;
    return true;
}

Report pairing_suite(const Field* f) {
    Report rep;
    const std::string S = "pairing";
    // values of the Euler form on the orthonormal eps basis
    {
        auto labels = eps_labels(f);
        const int L = static_cast<int>(labels.size());
        rep.push_back(run_cases(S, "euler_on_eps", nparam(f) + " pairs=" + std::to_string(L * L), L * L, [&](int k) {
            EpsLabel a = labels[k / L], b = labels[k % L];
            Rat want(0);
            if (a == b) {
                want = frac(1, 2);
            } else if (a.sector == 1 && b.sector == 1) {
                want = a.i <= b.i ? frac(1, 2) : frac(-1, 2);
            } else if (a.sector == 1 && b.sector == 2) {
                want = frac(1, 2);
            } else if (a.sector == 2 && b.sector == 1) {
                want = frac(-1, 2);
            }
            return expect_eq(euler_pair(eps_vector(f, a), eps_vector(f, b)), want, eps_name(a) + "," + eps_name(b));
        }));
        rep.push_back(run_cases(S, "eps_orthonormal", nparam(f) + " pairs=" + std::to_string(L * L), L * L, [&](int k) {
            EpsLabel a = labels[k / L], b = labels[k % L];
            return expect_eq(inter_pair(eps_vector(f, a), eps_vector(f, b)), Rat(a == b ? 1 : 0),
                             eps_name(a) + "," + eps_name(b));
        }));
    }
    // (L_i^m | L_j^k) for 1 <= m < a_i, 1 <= k < a_j: 0 off the diagonal in i, else 2 or 1 by m = k mod a_i
    {
        std::vector<std::pair<int, int>> powers;  // (i, m)
        for (int i = 1; i <= 3; ++i)
            for (int m = 1; m < f->a[i]; ++m) powers.emplace_back(i, m);
        auto cls = [&](int i, int m) {
            return i == 1 ? KClass::L1pow(f, m) : i == 2 ? KClass::L2(f) : KClass::L3(f);
        };
        const int P = static_cast<int>(powers.size());
        rep.push_back(run_cases(S, "line_bundle_intersections", nparam(f) + " pairs=" + std::to_string(P * P), P * P,
                                [&](int k) {
                                    auto [i, m] = powers[k / P];
                                    auto [j, l] = powers[k % P];
                                    Rat want = i != j ? Rat(0) : Rat((m - l) % f->a[i] == 0 ? 2 : 1);
                                    return expect_eq(inter_pair(cls(i, m), cls(j, l)), want,
                                                     "L" + std::to_string(i) + "^" + std::to_string(m) + ",L" +
                                                         std::to_string(j) + "^" + std::to_string(l));
                                }));
    }
    rep.push_back(run_pairs(f, S, "serre_duality", [&](int i, int j) {
        KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
        return expect_eq(euler_pair(b, a), -euler_pair(a, sigma_inv(b)), pair_name(f, i, j));
    }));
    rep.push_back(run_pairs(f, S, "sigma_invariance", [&](int i, int j) {
        KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
        return expect_eq(euler_pair(sigma(a), sigma(b)), euler_pair(a, b), pair_name(f, i, j));
    }));
    rep.push_back(run_pairs(f, S, "gram_fast_path", [&](int i, int j) {
        KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
        return expect_eq(euler_fast(a, b), euler_pair(a, b), pair_name(f, i, j));
    }));
    return rep;
}

Report averaging_suite(const Field* f) {
    Report rep;
    const std::string S = "averaging";
    const int kappa = f->kappa;
    rep.push_back(run_pairs(f, S, "euler_against_average_right", [&](int i, int j) {
        KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
        Rat want = rank(a) * degree(b) - rank(b) * degree(a) + rank(a) * rank(b);
        return expect_eq(euler_pair(a, beta_zero(b)), want, pair_name(f, i, j));
    }));
    rep.push_back(run_pairs(f, S, "euler_against_average_left", [&](int i, int j) {
        KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
        Rat want = rank(b) * degree(a) - rank(a) * degree(b) + rank(a) * rank(b) * (frac(1, f->n - 2) - 1);
        return expect_eq(euler_pair(beta_zero(b), a), want, pair_name(f, i, j));
    }));
    rep.push_back(run_pairs(f, S, "twisted_intersection", [&](int i, int j) -> Witness {
        KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
        KClass btw = beta_twisted(b);
        for (int s = 0; s < kappa; ++s) {
            Cyclotomic want(f);
            for (int jj = 1; jj <= 3; ++jj) {
                const int aj = f->a[jj];
                for (int p = 1; p < aj; ++p)
                    want += Cyclotomic::eta_j(f, jj, static_cast<long>(p) * s) * chi(jj, p, a) * chi(jj, aj - p, b) *
                            frac(1, aj);
            }
            if (!want.is_rational())
                return pair_name(f, i, j) + " s=" + std::to_string(s) + ": right side not rational";
            if (auto w = expect_eq(inter_pair(a, sigma_pow(btw, s)), want.rational(),
                                   pair_name(f, i, j) + " s=" + std::to_string(s)))
                return w;
        }
        return std::nullopt;
    }));
    rep.push_back(run_pairs(f, S, "weighted_sigma_sum", [&](int i, int j) {
        KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
        Rat lhs(0);
        KClass sb = b;
        for (int s = 1; s <= kappa; ++s) {
            sb = sigma(sb);
            lhs += (frac(1, 2) - frac(s, kappa)) * inter_pair(a, sb);
        }
        Rat want = -euler_pair(a, b) + rank(a) * degree(b) - rank(b) * degree(a);
        return expect_eq(lhs, want, pair_name(f, i, j));
    }));
    rep.push_back(run_cases(S, "twisted_rank_zero", nparam(f) + " classes=" + std::to_string(f->n + 1), f->n + 1,
                            [&](int i) { return expect_eq(rank(beta_twisted(KClass::basis(f, i))), Rat(0), k_basis_name(f, i)); }));
    return rep;
}

Report roots_suite(const Field* f, int m_range) {
    Report rep;
    const std::string S = "roots";
    const int n = f->n;
    const std::string p = nparam(f) + " m_range=" + std::to_string(m_range);
    const auto roots = reflection_vectors(f, m_range);
    std::set<KClass> mod_set;
    for (const auto& v : roots) mod_set.insert(canonical_mod_kernel(v));
    const std::vector<KClass> mod(mod_set.begin(), mod_set.end());
    const int R = static_cast<int>(roots.size()), M = static_cast<int>(mod.size());

    rep.push_back(run_cases(S, "self_intersection_two", p + " roots=" + std::to_string(R), R, [&](int k) -> Witness {
        Rat v = inter_fast(roots[k], roots[k]);
        if (v == 2) return std::nullopt;
        return roots[k].str() + ": " + v.get_str();
    }));
    rep.push_back(run_cases(S, "count_mod_kernel", p, 1, [&](int) -> Witness {
        if (M == 2 * n * (n - 1)) return std::nullopt;
        return "found " + std::to_string(M) + ", expected " + std::to_string(2 * n * (n - 1));
    }));
    rep.push_back(run_cases(S, "closed_under_reflection", p + " pairs=" + std::to_string(M * M), M * M, [&](int k) -> Witness {
        const KClass& a = mod[k / M];
        const KClass& x = mod[k % M];
        if (mod_set.count(canonical_mod_kernel(reflect(a, x)))) return std::nullopt;
        return "s_" + a.str() + "(" + x.str() + ") leaves the set";
    }));
    rep.push_back(run_cases(S, "sigma_on_eps", nparam(f), n, [&](int k) -> Witness {
        const KClass kern = KClass::L(f) - KClass::one(f);
        KClass got, want;
        std::string what;
        if (k < n - 3) {
            got = sigma(eps(f, 1, k + 1)), want = eps(f, 1, k + 2), what = eps_name({1, k + 1});
        } else if (k == n - 3) {
            got = sigma(eps(f, 1, n - 2)), want = eps(f, 1, 1) + kern, what = eps_name({1, n - 2});
        } else if (k == n - 2) {
            got = sigma(eps(f, 2, 1)), want = -eps(f, 2, 1) + kern, what = eps_name({2, 1});
        } else {
            got = sigma(eps(f, 3, 1)), want = -eps(f, 3, 1), what = eps_name({3, 1});
        }
        if (got == want) return std::nullopt;
        return "sigma(" + what + ") = " + got.str();
    }));
    return rep;
}

Report phase_suite(const Field* f, int order) {
    Report rep;
    const std::string S = "phase";
    const std::string N = " N=" + std::to_string(order);
    const int d = f->n + 1;
    rep.push_back(run_cases(S, "direct_equals_closed", nparam(f) + N + " pairs=" + std::to_string(d * d), d * d,
                            [&](int k) -> Witness {
                                KClass a = KClass::basis(f, k / d), b = KClass::basis(f, k % d);
                                auto diff = phase_direct(a, b, order).first_difference(phase_closed(a, b, order));
                                if (!diff) return std::nullopt;
                                return pair_name(f, k / d, k % d) + ": " + *diff;
                            }));
    const auto E = e_set(f);
    const int ne = static_cast<int>(E.size());
    rep.push_back(run_cases(S, "direct_equals_closed_opposite", nparam(f) + N + " classes=" + std::to_string(ne), ne,
                            [&](int k) -> Witness {
                                auto diff = phase_direct(E[k], -E[k], order).first_difference(phase_closed(E[k], -E[k], order));
                                if (!diff) return std::nullopt;
                                return E[k].str() + ": " + *diff;
                            }));
    const int h = static_cast<int>(h_basis(f).size());
    rep.push_back(run_cases(S, "phase_limit_identity", nparam(f) + N + " pairs=" + std::to_string(h * h), h * h,
                            [&](int k) -> Witness {
                                const int i = k / h, j = k % h;
                                auto l = phase_limit_lhs(f, i, j, order), r = phase_limit_rhs(f, i, j, order);
                                for (size_t c = 0; c < l.size() && c < r.size(); ++c)
                                    if (l[c] != r[c])
                                        return h_basis_name(f, i) + "," + h_basis_name(f, j) + " x^" + std::to_string(c) +
                                               ": " + l[c].str() + " vs " + r[c].str();
                                if (l.size() != r.size()) return std::string("length mismatch");
                                return std::nullopt;
                            }));
    const PuiseuxLog lambda = PuiseuxLog::term(f, Rat(1), 0, Scalar(f, Rat(1)));
    rep.push_back(run_cases(S, "b_tilde_three_way", nparam(f) + " classes=" + std::to_string(ne), ne, [&](int k) -> Witness {
        const KClass& e = E[k];
        const PuiseuxLog b = b_tilde(e);
        if (!(b_from_limit(e).value * b == lambda)) return e.str() + ": limit times b_tilde is not lambda";
        const int sector = classify_eps(e).first.sector;
        if (!(pullback_b(b, sector) == sector_one_form(e))) return e.str() + ": pullback differs from the sector weight";
        return std::nullopt;
    }));
    rep.push_back(run_cases(S, "b_tilde_values", nparam(f), f->n, [&](int k) -> Witness {
        const int n2 = f->n - 2;
        if (k < n2) {
            // (Q/(n-2)) lambda^{-1/(n-2)} eta^{-i}
            const int i = k + 1;
            PuiseuxLog want = PuiseuxLog::term(
                f, frac(-1, n2), 0,
                Scalar(Cyclotomic::eta_j(f, 1, -i)) * Scalar::symbol(f, kNQ) * frac(1, n2));
            if (b_tilde(eps(f, 1, i)) == want) return std::nullopt;
            return eps_name({1, i}) + ": " + b_tilde(eps(f, 1, i)).str();
        }
        const int s = k == n2 ? 2 : 3;
        PuiseuxLog want = PuiseuxLog::constant(Scalar(f, s == 2 ? frac(-1, 4) : frac(1, 4)));
        if (b_tilde(eps(f, s, 1)) == want) return std::nullopt;
        return eps_name({s, 1}) + ": " + b_tilde(eps(f, s, 1)).str();
    }));
    rep.push_back(run_cases(S, "limit_value_eps3", nparam(f), 1, [&](int) -> Witness {
        if (b_from_limit(eps(f, 3, 1)).value == lambda * Scalar(f, Rat(4))) return std::nullopt;
        return b_from_limit(eps(f, 3, 1)).value.str();
    }));
    return rep;
}

Report periods_suite(const Field* f) {
    Report rep;
    const std::string S = "periods";
    const int d = f->n + 1;
    constexpr int lo = -4, hi = 2;
    const int w = hi - lo + 1;
    const std::string p = nparam(f) + " m=" + std::to_string(lo) + ".." + std::to_string(hi);
    rep.push_back(run_cases(S, "closed_form_matches_h_side", p, d * w, [&](int k) -> Witness {
        const int i = k / w, m = lo + k % w;
        if (calibrated_period(KClass::basis(f, i), m).comp == period_on_h(psi_map(KClass::basis(f, i)), m))
            return std::nullopt;
        return k_basis_name(f, i) + " m=" + std::to_string(m);
    }));
    rep.push_back(run_cases(S, "derivative_shifts_m", p, d * w, [&](int k) -> Witness {
        const int i = k / w, m = lo + k % w;
        if (calibrated_period(KClass::basis(f, i), m).derivative() == calibrated_period(KClass::basis(f, i), m + 1))
            return std::nullopt;
        return k_basis_name(f, i) + " m=" + std::to_string(m);
    }));
    rep.push_back(run_cases(S, "monodromy_is_sigma", p, d * w, [&](int k) -> Witness {
        const int i = k / w, m = lo + k % w;
        KClass a = KClass::basis(f, i);
        if (calibrated_period(a, m).monodromy() == calibrated_period(sigma(a), m)) return std::nullopt;
        return k_basis_name(f, i) + " m=" + std::to_string(m);
    }));
    return rep;
}

namespace {

std::string mr(int m, int r) { return "m=" + std::to_string(m) + " r=" + std::to_string(r); }

template <class Fn>
Report per_window(const std::string& suite, const std::string& id, const Field* f, int m_max, int r_max, Fn fn) {
    if (m_max < 0 || r_max < 0) throw UsageError("windows must be nonempty");
    Report rep;
    const int w = 2 * m_max + 1;
    for (int r = 0; r <= r_max; ++r)
        for (int k = 0; k < w; ++k) {
            const int m = k - m_max;
            CheckRecord c = run_cases(suite, id, nparam(f) + " " + mr(m, r), 1, [&](int) { return fn(m, r); });
            rep.push_back(std::move(c));
        }
    return rep;
}

std::string leading(const Poly& p) {
    if (p.is_zero()) return "0";
    Poly one(p.field(), p.ring(), p.cap());
    const auto& [m, s] = *p.terms().begin();
    one.add(m, s);
    return std::to_string(p.size()) + " terms, first " + one.str();
}

}  // namespace

Report hqe_check(const TauFunction& tau1, const TauFunction& tau2, int m_max, int r_max) {
    HqeSystem h(tau1, tau2);
    return per_window("hqe", "residual_vanishes", tau1.c->f, m_max, r_max, [&](int m, int r) -> Witness {
        Poly v = h.residual(m, r);
        if (v.is_zero()) return std::nullopt;
        return leading(v);
    });
}

Report dtoda_check(const TauFunction& tau1, const TauFunction& tau2, int m_max, int r_max) {
    DTodaSystem d(tau1, tau2);
    return per_window("dtoda", "defect_vanishes", tau1.c->f, m_max, r_max, [&](int m, int r) -> Witness {
        Poly v = d.defect(m, r);
        if (v.is_zero()) return std::nullopt;
        return leading(v);
    });
}

Report equivalence_check(const TauFunction& tau1, const TauFunction& tau2, int m_max, int r_max,
                         const std::string& label) {
    HqeSystem h(tau1, tau2);
    DTodaSystem d(tau1, tau2);
    Report rep = per_window("equivalence", "hqe_equals_dressed_defect", tau1.c->f, m_max, r_max, [&](int m, int r) -> Witness {
        Poly diff = d.dressed_defect(m, r) - hqe_in_t_frame(h, *tau1.c, m, r);
        if (diff.is_zero()) return std::nullopt;
        return "difference: " + leading(diff);
    });
    if (!label.empty())
        for (auto& c : rep) c.params = label + " " + c.params;
    return rep;
}

std::string lattice_table_text(const Field* f) {
    std::ostringstream os;
    const int d = f->n + 1;
    auto cell = [](const Rat& q, std::size_t w) {
        std::string s = q.get_str();
        return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
    };
    std::size_t w = 6;
    for (int i = 0; i < d; ++i) w = std::max(w, k_basis_name(f, i).size() + 1);
    for (const char* which : {"euler", "intersection"}) {
        const bool eu = which[0] == 'e';
        os << which << " form on the basis, n=" << f->n << "\n" << std::string(w, ' ');
        for (int j = 0; j < d; ++j) os << std::string(w - k_basis_name(f, j).size(), ' ') << k_basis_name(f, j);
        os << "\n";
        for (int i = 0; i < d; ++i) {
            os << std::string(w - k_basis_name(f, i).size(), ' ') << k_basis_name(f, i);
            for (int j = 0; j < d; ++j) {
                KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
                os << cell(eu ? euler_pair(a, b) : inter_pair(a, b), w);
            }
            os << "\n";
        }
        os << "\n";
    }
    auto labels = eps_labels(f);
    std::size_t we = 6;
    for (auto l : labels) we = std::max(we, eps_name(l).size() + 1);
    os << "euler form on eps, n=" << f->n << "\n" << std::string(we, ' ');
    for (auto b : labels) os << std::string(we - eps_name(b).size(), ' ') << eps_name(b);
    os << "\n";
    for (auto a : labels) {
        os << std::string(we - eps_name(a).size(), ' ') << eps_name(a);
        for (auto b : labels) os << cell(euler_pair(eps_vector(f, a), eps_vector(f, b)), we);
        os << "\n";
    }
    return os.str();
}

std::string lattice_table_json(const Field* f) {
    std::ostringstream os;
    const int d = f->n + 1;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
            nlohmann::ordered_json r;
            r["n"] = f->n;
            r["left"] = k_basis_name(f, i);
            r["right"] = k_basis_name(f, j);
            r["euler"] = euler_pair(a, b).get_str();
            r["intersection"] = inter_pair(a, b).get_str();
            os << r.dump() << '\n';
        }
    for (auto la : eps_labels(f))
        for (auto lb : eps_labels(f)) {
            KClass a = eps_vector(f, la), b = eps_vector(f, lb);
            nlohmann::ordered_json r;
            r["n"] = f->n;
            r["left"] = eps_name(la);
            r["right"] = eps_name(lb);
            r["euler"] = euler_pair(a, b).get_str();
            r["intersection"] = inter_pair(a, b).get_str();
            os << r.dump() << '\n';
        }
    return os.str();
}

Report identities_all(const Field* f, int order) {
    Report rep;
    for (Report part : {pairing_suite(f), averaging_suite(f), roots_suite(f, 3), periods_suite(f), phase_suite(f, order)})
        rep.insert(rep.end(), part.begin(), part.end());
    return rep;
}

std::string render_text(const Report& r) {
    std::size_t w = 0;
    for (const auto& c : r) w = std::max(w, c.suite.size() + c.id.size() + 1);
    std::ostringstream os;
    int failed = 0;
    for (const auto& c : r) {
        std::string name = c.suite + "/" + c.id;
        os << (c.pass() ? "PASS " : "FAIL ") << name << std::string(w - name.size() + 2, ' ') << c.params
           << " cases=" << c.instances;
        if (!c.pass()) {
            ++failed;
            os << " failures=" << c.failures << " first: " << c.witness;
        }
        os << '\n';
    }
    os << (failed ? "FAIL " : "PASS ") << r.size() - failed << "/" << r.size() << " checks passed\n";
    return os.str();
}

std::string render_json(const Report& r) {
    std::ostringstream os;
    for (const auto& c : r) {
        nlohmann::ordered_json j;
        j["suite"] = c.suite;
        j["id"] = c.id;
        j["params"] = c.params;
        j["cases"] = c.instances;
        j["status"] = c.pass() ? "PASS" : "FAIL";
        j["failures"] = c.failures;
        if (!c.pass()) j["witness"] = c.witness;
        os << j.dump() << '\n';
    }
    return os.str();
}

}  // namespace orbline
