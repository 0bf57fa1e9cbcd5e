#ifndef HALFSIGN_MODULUS_HPP
#define HALFSIGN_MODULUS_HPP

#include <vector>

#include "halfsign/arithfn.hpp"

namespace halfsign {

inline constexpr u64 kDefaultC0 = 100;

/// L = log(C0 k N) and N_k = product of the primes p <= L^2 or p | N/2.
struct ModulusContext {
    unsigned k = 0;
    u64 N = 0;
    u64 C0 = kDefaultC0;
    double L = 0.0;
    arith::Integer Nk;
    std::vector<u64> Nk_primes;  // ascending

    bool divides_Nk(u64 p) const;
    std::size_t omega() const { return Nk_primes.size(); }
    /// log(omega(N_k) + 3)
    double Lq() const;
};

ModulusContext make_modulus_context(unsigned k, u64 N, u64 C0 = kDefaultC0);

}  // namespace halfsign

#endif
