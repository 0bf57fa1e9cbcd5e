#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "halfsign/bfree.hpp"

using namespace halfsign;
using arith::Integer;

namespace {

std::vector<u64> brute(const std::vector<u64>& set, u64 x, u64 y, u64 q = 1, u64 a = 0) {
    std::vector<u64> out;
    for (u64 n = x + 1; n <= x + y; ++n) {
        if (n % q != a % q) continue;
        bool free = true;
        for (u64 b : set) free = free && n % b != 0;
        if (free) out.push_back(n);
    }
    return out;
}

std::vector<u64> random_valid_set(std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> size(1, 6), value(2, 300);
    std::vector<u64> out;
    const u64 want = size(rng);
    for (int i = 0; i < 500 && out.size() < want; ++i) {
        const u64 b = value(rng);
        bool ok = true;
        for (u64 c : out) ok = ok && arith::gcd(b, c) == 1;
        if (ok) out.push_back(b);
    }
    return out;
}

shimura::FormInstance zeros_instance() {
    auto inst = shimura::FormInstance::default_delta();
    const auto near = eigen::synthetic_near_bound(12);
    inst.backend = eigen::LiftBackend::synthetic(
        12, 1,
        [near](u64 p) -> Integer {
            if (p == 11 || p == 101) return arith::ipow(p, 5);
            return near.prime_coefficient(p);
        },
        "zeros");
    return inst;
}

}  // namespace

TEST_CASE("set validation") {
    const auto squares = bfree::BFreeSet::squares_of_primes(1'000'000);
    const auto cert = bfree::validate_bset(squares);
    CHECK(cert.size == 168);
    CHECK(cert.reciprocal_sum < std::numbers::pi * std::numbers::pi / 6 - 1);
    REQUIRE(cert.tail_bound);
    CHECK(*cert.tail_bound == doctest::Approx(1e-3));
    CHECK(cert.reciprocal_sum + *cert.tail_bound > 0.4522474200);  // sum over all primes of 1/p^2

    try {
        bfree::validate_bset(bfree::BFreeSet::explicit_set({4, 6}));
        FAIL("shared factor not detected");
    } catch (const InvalidSetError& e) {
        CHECK(e.first == 4);
        CHECK(e.second == 6);
    }
    try {
        bfree::validate_bset(bfree::BFreeSet::explicit_set({15, 22, 49, 91}));
        FAIL("shared factor not detected");
    } catch (const InvalidSetError& e) {
        CHECK(e.first == 49);
        CHECK(e.second == 91);
    }
    CHECK_THROWS_AS(bfree::validate_bset(bfree::BFreeSet::explicit_set({1, 3})), InvalidSetError);
    CHECK(bfree::validate_bset(bfree::BFreeSet::explicit_set({2})).reciprocal_sum == 0.5);
}

TEST_CASE("interval examples") {
    const auto squares = bfree::BFreeSet::squares_of_primes(10'000);
    const auto w = bfree::sieve_interval(squares, 100, 10, true);
    CHECK(w.count == 8);
    CHECK(w.members == std::vector<u64>{101, 102, 103, 105, 106, 107, 109, 110});
    const auto odd = bfree::sieve_interval(bfree::BFreeSet::explicit_set({2}), 10, 10, true);
    CHECK(odd.members == std::vector<u64>{11, 13, 15, 17, 19});
    CHECK(odd.density == doctest::Approx(0.5));
    CHECK(odd.benchmark == doctest::Approx(std::pow(10.0, 7.0 / 17.0)));
    CHECK_THROWS_AS(bfree::sieve_interval(squares, 9'990, 11), CoverageError);
    CHECK_THROWS_AS(bfree::sieve_interval(bfree::BFreeSet::explicit_set({2}), 999'999'999, 2), CapacityError);
}

TEST_CASE("interval sieve equals brute force") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<u64> xs(0, 10'000), ys(1, 1'000);
    const auto squares = bfree::BFreeSet::squares_of_primes(11'000);
    for (int i = 0; i < 300; ++i) {
        const u64 x = xs(rng), y = ys(rng);
        const auto set = i % 3 == 0 ? squares
                         : i % 3 == 1 ? bfree::BFreeSet::explicit_set({2})
                                      : bfree::BFreeSet::explicit_set(random_valid_set(rng));
        CHECK(bfree::sieve_interval(set, x, y, true).members == brute(set.elements, x, y));
    }
}

TEST_CASE("squares of primes give the square-free numbers") {
    const u64 top = 100'000;
    const auto w = bfree::sieve_interval(bfree::BFreeSet::squares_of_primes(top), 0, top, true);
    const arith::FactorSieve sieve(top);
    std::vector<bool> member(top + 1, false);
    for (u64 n : w.members) member[n] = true;
    for (u64 n = 1; n <= top; ++n) CHECK(member[n] == (n == 1 || sieve.squarefree(n)));
}

TEST_CASE("progressions") {
    const auto squares = bfree::BFreeSet::squares_of_primes(10'000);
    CHECK(bfree::sieve_progression(squares, 100, 100, 1, 4).count == brute(squares.elements, 100, 100, 4, 1).size());
    CHECK(bfree::sieve_progression(squares, 100, 100, 1, 1).count == bfree::sieve_interval(squares, 100, 100).count);
    CHECK_THROWS_AS(bfree::sieve_progression(squares, 100, 100, 2, 2), PreconditionError);
    CHECK_THROWS_AS(bfree::sieve_progression(squares, 100, 100, 0, 3), PreconditionError);
    CHECK_THROWS_AS(bfree::sieve_progression(squares, 100, 100, 4, 3), PreconditionError);

    for (u64 q : {3, 4, 5}) {
        std::vector<u64> el;
        for (u64 b : squares.elements)
            if (arith::gcd(b, q) == 1) el.push_back(b);
        const auto set = bfree::BFreeSet::explicit_set(el);
        u64 sum = 0;
        for (u64 a = 1; a <= q; ++a) {
            const auto w = bfree::sieve_progression(set, 2'000, 3'000, a, q);
            CHECK(w.count == brute(el, 2'000, 3'000, q, a).size());
            CHECK(w.density == doctest::Approx(w.count * static_cast<double>(q) / 3'000));
            sum += w.count;
        }
        CHECK(sum == bfree::sieve_interval(set, 2'000, 3'000).count);
    }
}

TEST_CASE("set built from the form") {
    const auto def = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 10'000);
    const auto f = bfree::build_form_bset(def, 10'000);
    CHECK(f.vanishing_primes.empty());
    CHECK(f.set.elements.front() == 4);
    CHECK(!f.guarantee_violation);
    CHECK(f.guarantee_checked == bfree::sieve_interval(bfree::BFreeSet::squares_of_primes(10'000), 0, 10'000).count);
    CHECK(bfree::vanishing_prime_reciprocal_sum(f).sum == 0.0);
    CHECK_THROWS_AS(bfree::build_form_bset(def, 10'001), ShapeError);

    const auto zeros = shimura::halfintegral_coefficients(zeros_instance(), 10'000);
    const auto z = bfree::build_form_bset(zeros, 10'000);
    CHECK(z.vanishing_primes == std::vector<u64>{11, 101});
    CHECK(std::binary_search(z.set.elements.begin(), z.set.elements.end(), 11));
    CHECK(!std::binary_search(z.set.elements.begin(), z.set.elements.end(), 121));
    CHECK(!z.guarantee_violation);
    CHECK_NOTHROW(bfree::validate_bset(z.set));
    for (u64 n = 1; n <= 10'000; ++n)
        if (z.set.is_free(n)) CHECK(sgn(zeros[n]) != 0);
    const auto recip = bfree::vanishing_prime_reciprocal_sum(z);
    CHECK(recip.sum == doctest::Approx(1.0 / 11 + 1.0 / 101));
    CHECK(recip.envelope == doctest::Approx(1e4 / std::pow(std::log(1e4), 1.25)));
    const auto small = bfree::vanishing_prime_reciprocal_sum(bfree::build_form_bset(zeros, 50));
    CHECK(small.sum <= recip.sum);
}
