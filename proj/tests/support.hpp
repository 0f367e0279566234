#pragma once

#include <initializer_list>
#include <random>
#include <tuple>

#include "projkit/jet.hpp"
#include "projkit/rational.hpp"

namespace projkit::testing {

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

// Jet from (i, j, coefficient) triples.
inline Jet2 jet(std::initializer_list<std::tuple<int, int, Rational>> terms, int order = kDefaultOrder)
{
    Jet2 u(order);
    for (const auto &[i, j, c] : terms) {
        u.set_coeff(i, j, u.coeff(i, j) + c);
    }
    return u;
}

// Univariate jet in x from its coefficient list.
inline Jet2 xpoly(std::initializer_list<Rational> coeffs, int order = kDefaultOrder)
{
    Jet2 u(order);
    int i = 0;
    for (const auto &c : coeffs) {
        if (i <= order) {
            u.set_coeff(i, 0, c);
        }
        ++i;
    }
    return u;
}

/// Small random rationals with |num| <= 5 and 1 <= den <= 5.
class RandomSource {
public:
    explicit RandomSource(unsigned seed) : gen_(seed) {}

    Rational rational(int bound = 5)
    {
        std::uniform_int_distribution<long> num(-bound, bound);
        std::uniform_int_distribution<long> den(1, bound);
        return make_rational(num(gen_), den(gen_));
    }

    Rational nonzero_rational(int bound = 5)
    {
        Rational r;
        do {
            r = rational(bound);
        } while (sgn(r) == 0);
        return r;
    }

    int integer(int lo, int hi)
    {
        std::uniform_int_distribution<int> dist(lo, hi);
        return dist(gen_);
    }

    /// Dense random jet up to total degree max_degree (sparse-ish: each
    /// coefficient is zero with probability 1/3).
    Jet2 jet(int order, int max_degree, bool with_constant = true)
    {
        Jet2 u(order);
        for (int d = with_constant ? 0 : 1; d <= std::min(order, max_degree); ++d) {
            for (int j = 0; j <= d; ++j) {
                if (integer(0, 2) != 0) {
                    u.set_coeff(d - j, j, rational());
                }
            }
        }
        return u;
    }

    Jet2 xjet(int order, int max_degree, bool with_constant = true)
    {
        Jet2 u(order);
        for (int i = with_constant ? 0 : 1; i <= std::min(order, max_degree); ++i) {
            u.set_coeff(i, 0, rational());
        }
        return u;
    }

    std::mt19937 &engine() { return gen_; }

private:
    std::mt19937 gen_;
};

} // namespace projkit::testing
