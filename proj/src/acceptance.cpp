#include "halfsign/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "halfsign/bfree.hpp"
#include "halfsign/dickman.hpp"
#include "halfsign/friable.hpp"
#include "halfsign/hsummatory.hpp"
#include "halfsign/modulus.hpp"
#include "halfsign/shimura.hpp"

namespace halfsign::accept {

using arith::Integer;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream o;
    o.precision(digits);
    o << v;
    return o.str();
}

// q prod_{m <= 9} (1 - q^m)^24 by repeated multiplication of polynomials
// truncated at degree 9; tau(n) is the coefficient of q^n.
std::vector<Integer> small_tau_oracle() {
    const int top = 9;
    std::vector<Integer> poly(top, 0);
    poly[0] = 1;
    for (int m = 1; m < top; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (int d = top - 1; d >= m; --d) poly[d] -= poly[d - m];
    std::vector<Integer> tau(top + 1, 0);
    for (int n = 1; n <= top; ++n) tau[n] = poly[n - 1];
    return tau;
}

Outcome c1_eta_hecke() {
    const auto table = eigen::delta_coefficients(10'000);
    const u64 recurrences = eigen::verify_hecke_recurrence(table);
    const u64 pairs = arith::verify_multiplicative(table.c);
    const auto tau = small_tau_oracle();
    bool spots = true;
    for (u64 n : {2, 3, 7}) spots = spots && table.c[n] == tau[n];
    spots = spots && table.c[2] == -24 && table.c[3] == 252 && table.c[7] == -16744;
    return {spots, std::to_string(recurrences) + " recurrences, " + std::to_string(pairs) +
                       " coprime pairs, tau(2), tau(3), tau(7) = " + table.c[2].get_str() + ", " +
                       table.c[3].get_str() + ", " + table.c[7].get_str()};
}

Outcome c2_shimura_round_trip() {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 10'000);
    const u64 checked = shimura::verify_shimura_forward(table);
    return {checked == 10'000, std::to_string(checked) + " coefficients reconstructed"};
}

Outcome c3_multiplicativity() {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 10'000);
    const u64 a_pairs = arith::verify_multiplicative(table.A());
    const auto signs = arith::make_table("eps", table.limit(), [&](u64 n) { return Integer(table.sign(n)); });
    const u64 e_pairs = arith::verify_multiplicative(signs);
    return {a_pairs > 0 && a_pairs == e_pairs, std::to_string(a_pairs) + " coprime pairs for A and for eps"};
}

Outcome c4_first_negative() {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 10'000);
    const auto nf = shimura::first_negative_index(table);
    const auto yf = hsum::compute_y_f(table);
    const bool ok = nf.n_f && *nf.n_f == 7 && yf.y_f == 6 && static_cast<double>(*nf.n_f) <= nf.benchmark;
    return {ok, "n_f = " + (nf.n_f ? std::to_string(*nf.n_f) : std::string("none")) + ", y_f = " +
                    std::to_string(yf.y_f) + ", benchmark " + fmt(nf.benchmark, 4)};
}

Outcome c5_dickman() {
    const auto coarse = dickman::solve_dickman(3.0, 0.005);
    const auto fine = dickman::solve_dickman(3.0, 0.0025);
    bool ones = true;
    double log_err = 0.0, refine = 0.0;
    for (std::size_t i = 0; i < coarse.knots().size(); ++i) {
        const double u = coarse.knot_u(i);
        const double v = coarse.knots()[i];
        if (u <= 1.0) ones = ones && v == 1.0;
        if (u >= 1.0 && u <= 2.0) log_err = std::max(log_err, std::fabs(v - (1.0 - std::log(u))));
        refine = std::max(refine, std::fabs(v - fine.knots()[2 * i]));
    }
    const auto k1 = dickman::solve_kappa(coarse);
    const auto k2 = dickman::solve_kappa(fine);
    const bool ok = ones && log_err <= 1e-10 && coarse.max_residual() <= 1e-8 && refine <= 1e-9 &&
                    k1.f_lower > 0 && k1.kappa > 10.0 / 9.0 && k1.residual <= 1e-9 &&
                    std::fabs(k1.kappa - k2.kappa) <= 1e-8;
    return {ok, "|rho - (1 - log u)| " + fmt(log_err, 3) + ", residual " + fmt(coarse.max_residual(), 3) +
                    ", refinement " + fmt(refine, 3) + ", kappa = " + fmt(k1.kappa, 10) + ", F(10/9) = " +
                    fmt(k1.f_lower, 5)};
}

u64 xi_brute(const arith::FactorSieve& sieve, u64 x, u64 y, u64 q) {
    u64 count = 0;
    for (u64 n = 1; n <= x; ++n) {
        if (arith::gcd(n, q) != 1 || !sieve.squarefree(n)) continue;
        if (sieve.largest_prime_factor(n) <= y) ++count;
    }
    return count;
}

Outcome c6_xi_oracle() {
    const u64 top = 10'000;
    const arith::FactorSieve sieve(top);
    const std::vector<std::pair<u64, std::vector<u64>>> qs = {{1, {}}, {2, {2}}, {6, {2, 3}}, {30, {2, 3, 5}}};
    u64 checked = 0;
    for (const auto& [q, primes] : qs) {
        for (u64 y : {u64{10}, u64{31}, u64{100}, u64{0}}) {
            // Running brute-force prefix counts; y = 0 stands for y = x.
            u64 running = 0, all_smooth = 0;
            for (u64 x = 1; x <= top; ++x) {
                const bool base = arith::gcd(x, q) == 1 && sieve.squarefree(x);
                if (base) {
                    ++all_smooth;
                    if (y && sieve.largest_prime_factor(x) <= y) ++running;
                }
                const u64 expect = y ? running : all_smooth;
                const u64 got = friable::xi_count(x, y ? y : std::max<u64>(x, 2), primes).count;
                if (got != expect)
                    return {false, "mismatch at x = " + std::to_string(x) + ", y = " + std::to_string(y) +
                                       ", q = " + std::to_string(q)};
                ++checked;
            }
        }
        if (xi_brute(sieve, top, 100, q) != friable::xi_count(top, 100, primes).count)
            return {false, "direct brute force disagrees at q = " + std::to_string(q)};
    }
    return {true, std::to_string(checked) + " (x, y, q) cases"};
}

std::vector<u64> random_coprime_set(std::mt19937_64& rng, u64 max_element) {
    std::uniform_int_distribution<u64> size_dist(1, 6), value(2, max_element);
    const u64 size = size_dist(rng);
    std::vector<u64> out;
    for (int tries = 0; tries < 200 && out.size() < size; ++tries) {
        const u64 b = value(rng);
        bool ok = true;
        for (u64 c : out) ok = ok && arith::gcd(b, c) == 1;
        if (ok) out.push_back(b);
    }
    return out;
}

u64 bfree_brute(const std::vector<u64>& set, u64 x, u64 y, u64 q = 1, u64 a = 0) {
    u64 count = 0;
    for (u64 n = x + 1; n <= x + y; ++n) {
        if (n % q != a % q) continue;
        bool free = true;
        for (u64 b : set) free = free && n % b != 0;
        count += free;
    }
    return count;
}

Outcome c7_bfree_oracle(u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> xs(0, 10'000), ys(1, 1'000), kind(0, 2);
    const auto squares = bfree::BFreeSet::squares_of_primes(20'000);
    for (int i = 0; i < 200; ++i) {
        const u64 x = xs(rng), y = ys(rng);
        bfree::BFreeSet set;
        switch (kind(rng)) {
            case 0: set = squares; break;
            case 1: set = bfree::BFreeSet::explicit_set({2}); break;
            default: set = bfree::BFreeSet::explicit_set(random_coprime_set(rng, 200)); break;
        }
        bfree::validate_bset(set);
        if (bfree::sieve_interval(set, x, y).count != bfree_brute(set.elements, x, y))
            return {false, "window (" + std::to_string(x) + ", " + std::to_string(x + y) + "] disagrees"};
    }
    const u64 top = 100'000;
    const arith::FactorSieve sieve(top);
    const auto sq = bfree::sieve_interval(bfree::BFreeSet::squares_of_primes(top), 0, top, true);
    std::vector<bool> member(top + 1, false);
    for (u64 n : sq.members) member[n] = true;
    for (u64 n = 1; n <= top; ++n)
        if (member[n] != (n == 1 || sieve.squarefree(n)))
            return {false, "square-free indicator differs at n = " + std::to_string(n)};
    for (u64 q : {3, 4, 5}) {
        std::vector<u64> el;
        for (u64 b : squares.elements)
            if (arith::gcd(b, q) == 1) el.push_back(b);
        const auto set = bfree::BFreeSet::explicit_set(el);
        const u64 whole = bfree::sieve_interval(set, 1'000, 5'000).count;
        u64 sum = 0;
        for (u64 a = 1; a <= q; ++a) sum += bfree::sieve_progression(set, 1'000, 5'000, a, q).count;
        if (sum != whole) return {false, "progressions mod " + std::to_string(q) + " do not sum to the interval"};
    }
    return {true, "200 random windows, mu^2 on [1, 1e5], progressions mod 3, 4, 5"};
}

Outcome c8_form_guarantee() {
    const auto def = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 10'000);
    const auto f1 = bfree::build_form_bset(def, 10'000);
    auto inst = shimura::FormInstance::default_delta();
    const auto near = eigen::synthetic_near_bound(12);
    inst.backend = eigen::LiftBackend::synthetic(
        12, 1,
        [near](u64 p) -> Integer {
            if (p == 11 || p == 101) return arith::ipow(p, 5);  // A(p) = c(p) - p^5 = 0
            return near.prime_coefficient(p);
        },
        "zeros at 11 and 101");
    const auto syn = shimura::halfintegral_coefficients(inst, 10'000);
    const auto f2 = bfree::build_form_bset(syn, 10'000);
    const bool zeros_ok = f2.vanishing_primes == std::vector<u64>{11, 101};
    const bool ok = !f1.guarantee_violation && f1.vanishing_primes.empty() && !f2.guarantee_violation && zeros_ok;
    return {ok, "default: " + std::to_string(f1.guarantee_checked) + " B-free n, synthetic: " +
                    std::to_string(f2.guarantee_checked) + " B-free n, " +
                    std::to_string(f2.vanishing_primes.size()) + " vanishing primes"};
}

Outcome c9_ell_recurrence() {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 1'000);
    u64 count = 0;
    for (u64 p : table.sieve().primes()) {
        if (p > 100) break;
        const auto e = shimura::ell_prime_power_factors(table, p, 6);
        if (!e.identity_holds) return {false, "identity fails at p = " + std::to_string(p)};
        if (!e.bound_holds) return {false, "bound fails at p = " + std::to_string(p)};
        count += 7;
    }
    return {true, std::to_string(count) + " prime powers p^nu, p <= 100, nu <= 6"};
}

Outcome c10_hall_tenenbaum() {
    const auto c = shimura::hall_tenenbaum_constant();
    const bool ok = std::fabs(c.K - 0.32867) < 5e-6;
    return {ok, "phi0 = " + fmt(c.phi0, 10) + ", K = " + fmt(c.K, 10)};
}

Outcome a11_balance(const shimura::HalfIntegralTable& table) {
    const auto rows = shimura::sign_balance_report(table, {1'000, 10'000, 100'000});
    bool trend = true;
    for (std::size_t i = 1; i < rows.size(); ++i) trend = trend && *rows[i].balance <= *rows[i - 1].balance;
    const double last = *rows.back().balance;
    const double formula = 3.0 * *rows.back().envelope;
    std::string d = "balance";
    for (const auto& r : rows) d += " " + fmt(*r.balance, 4);
    d += "; threshold 0.33 (3 (log x)^(-1/4) = " + fmt(formula, 4) + ")";
    return {trend && last < 0.33 && last < formula, d};
}

Outcome a12_negative_density(const shimura::HalfIntegralTable& table) {
    const auto d = shimura::negative_prime_density(table, 100'000);
    return {std::fabs(d.fraction - 0.5) <= 0.05,
            std::to_string(d.negative) + " of " + std::to_string(d.primes) + " primes, fraction " + fmt(d.fraction, 5)};
}

Outcome a13_lemma41() {
    const auto rho = dickman::solve_dickman(3.0, 0.005);
    bool ok = true;
    std::string d = "ratios";
    for (double u : {1.0, 1.25, 1.5}) {
        const auto r = friable::lemma41_ratio(1'000, u, std::vector<u64>{}, rho);
        ok = ok && r.in_band;
        d += " " + fmt(r.ratio, 5);
    }
    return {ok, d};
}

Outcome a14_prop1_lemma42(const shimura::HalfIntegralTable& table) {
    const auto ctx = make_modulus_context(6, 4);
    const auto p1 = hsum::prop1_ratio_report(table, ctx, {100.0, 1'000.0, 10'000.0, 100'000.0});
    bool finite = true;
    std::string d = "prop1";
    for (const auto& r : p1.rows) {
        finite = finite && std::isfinite(r.ratio);
        d += " " + fmt(r.ratio, 4);
    }
    const auto rho = dickman::solve_dickman(3.0, 0.005);
    const hsum::HFunction h(ctx, 1'000.0);
    d += "; lemma42";
    for (const auto& r : hsum::lemma42_report(h, rho, {1.0, 1.1, 1.2})) {
        finite = finite && std::isfinite(r.ratio);
        d += " " + fmt(r.ratio, 4);
    }
    const auto serre = shimura::serre_exceptional_count(table, 100'000);
    d += "; Serre count " + std::to_string(serre.count) + " (envelope " + fmt(serre.envelope, 5) + ")";
    return {finite && !p1.exploding && serre.count == 0, d};
}

}  // namespace

Summary run_acceptance(std::ostream& out, u64 seed) {
    Summary summary;
    auto run = [&](int id, const std::string& name, bool hard, double limit, const std::function<Outcome()>& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        r.hard = hard;
        r.limit_seconds = limit;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.passed = o.passed && (!hard || r.seconds < limit);
        r.detail = o.detail;
        if (o.passed && hard && r.seconds >= limit) r.detail += " (over time limit)";
        const char* tag = r.passed ? "PASS" : (hard ? "FAIL" : "WARN");
        out << "[" << tag << "] " << (hard ? "hard " : "advisory ") << id << " " << name << " ("
            << fmt(r.seconds, 3) << " s";
        if (hard) out << " of " << fmt(limit, 3) << " s";
        out << "): " << r.detail << std::endl;
        if (!r.passed) ++(hard ? summary.hard_failures : summary.advisory_warnings);
        summary.results.push_back(std::move(r));
    };

    run(1, "eta product vs Hecke recurrence", true, 30, c1_eta_hecke);
    run(2, "Shimura round trip", true, 10, c2_shimura_round_trip);
    run(3, "multiplicativity of A and eps", true, 10, c3_multiplicativity);
    run(4, "first negative index", true, 1, c4_first_negative);
    run(5, "Dickman function and kappa", true, 5, c5_dickman);
    run(6, "Xi_q oracle equivalence", true, 60, c6_xi_oracle);
    run(7, "B-free oracle equivalence", true, 60, [seed] { return c7_bfree_oracle(seed); });
    run(8, "B_f guarantee", true, 10, c8_form_guarantee);
    run(9, "l-recurrence in cleared form", true, 5, c9_ell_recurrence);
    run(10, "Hall-Tenenbaum constant", true, 1, c10_hall_tenenbaum);

    std::optional<shimura::HalfIntegralTable> big;
    auto table = [&]() -> const shimura::HalfIntegralTable& {
        if (!big) big = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 100'000);
        return *big;
    };
    run(11, "sign balance", false, 0, [&] { return a11_balance(table()); });
    run(12, "negative prime density", false, 0, [&] { return a12_negative_density(table()); });
    run(13, "friable count ratio", false, 0, a13_lemma41);
    run(14, "summatory ratios and exceptional primes", false, 0, [&] { return a14_prop1_lemma42(table()); });

    out << "hard failures: " << summary.hard_failures << ", advisory warnings: " << summary.advisory_warnings
        << std::endl;
    return summary;
}

}  // namespace halfsign::accept
