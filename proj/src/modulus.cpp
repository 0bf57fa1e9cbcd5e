#include "halfsign/modulus.hpp"

#include <algorithm>
#include <cmath>

namespace halfsign {

bool ModulusContext::divides_Nk(u64 p) const {
    return std::binary_search(Nk_primes.begin(), Nk_primes.end(), p);
}

double ModulusContext::Lq() const { return std::log(static_cast<double>(omega()) + 3.0); }

ModulusContext make_modulus_context(unsigned k, u64 N, u64 C0) {
    if (k < 1 || N < 4 || N % 4 != 0) throw DomainError("modulus context needs k >= 1 and 4 | N");
    if (C0 < 1) throw DomainError("C0 must be positive");
    ModulusContext ctx;
    ctx.k = k;
    ctx.N = N;
    ctx.C0 = C0;
    ctx.L = std::log(static_cast<double>(C0) * k * static_cast<double>(N));
    const u64 bound = static_cast<u64>(std::floor(ctx.L * ctx.L));
    const u64 half = N / 2;
    const u64 sieve_limit = std::max<u64>({bound, 2});
    arith::FactorSieve sieve(sieve_limit);
    for (u64 p : sieve.primes())
        if (p <= bound) ctx.Nk_primes.push_back(p);
    u64 m = half;
    for (u64 p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        ctx.Nk_primes.push_back(p);
    }
    if (m > 1) ctx.Nk_primes.push_back(m);
    std::sort(ctx.Nk_primes.begin(), ctx.Nk_primes.end());
    ctx.Nk_primes.erase(std::unique(ctx.Nk_primes.begin(), ctx.Nk_primes.end()), ctx.Nk_primes.end());
    ctx.Nk = 1;
    for (u64 p : ctx.Nk_primes) ctx.Nk *= p;
    return ctx;
}

}  // namespace halfsign
