#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "projkit/rational.hpp"

namespace projkit {

/// Polynomial in the slope p = y' whose coefficients are functions of (x, y).
/// R is a jet-like ring (Jet2 or DualJet). Coefficient k multiplies p^k.
template <class R>
class SlopePoly {
public:
    SlopePoly() = default;
    SlopePoly(std::initializer_list<R> coeffs) : c_(coeffs) {}
    explicit SlopePoly(std::vector<R> coeffs) : c_(std::move(coeffs)) {}

    std::size_t size() const { return c_.size(); }
    const R &operator[](std::size_t k) const { return c_[k]; }
    R &operator[](std::size_t k) { return c_[k]; }
    const std::vector<R> &coefficients() const { return c_; }

    /// Highest k with a coefficient that is nonzero to its effective order;
    /// -1 for the zero polynomial.
    int degree() const
    {
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (!is_zero(c_[k])) {
                return static_cast<int>(k);
            }
        }
        return -1;
    }

    friend SlopePoly operator+(const SlopePoly &a, const SlopePoly &b)
    {
        return combine(a, b, [](const R &u, const R &v) { return u + v; });
    }

    friend SlopePoly operator-(const SlopePoly &a, const SlopePoly &b)
    {
        return combine(a, b, [](const R &u, const R &v) { return u - v; });
    }

    friend SlopePoly operator*(const SlopePoly &a, const SlopePoly &b)
    {
        if (a.c_.empty() || b.c_.empty()) {
            return {};
        }
        std::vector<R> out(a.c_.size() + b.c_.size() - 1);
        std::vector<bool> set(out.size(), false);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                R term = a.c_[i] * b.c_[j];
                if (set[i + j]) {
                    out[i + j] = out[i + j] + term;
                } else {
                    out[i + j] = std::move(term);
                    set[i + j] = true;
                }
            }
        }
        return SlopePoly(std::move(out));
    }

    friend SlopePoly operator*(const R &s, const SlopePoly &a)
    {
        std::vector<R> out;
        out.reserve(a.c_.size());
        for (const auto &c : a.c_) {
            out.push_back(s * c);
        }
        return SlopePoly(std::move(out));
    }

    friend SlopePoly operator*(const Rational &s, const SlopePoly &a)
    {
        std::vector<R> out;
        out.reserve(a.c_.size());
        for (const auto &c : a.c_) {
            out.push_back(c * s);
        }
        return SlopePoly(std::move(out));
    }

private:
    template <class Op>
    static SlopePoly combine(const SlopePoly &a, const SlopePoly &b, Op op)
    {
        const std::size_t n = std::max(a.c_.size(), b.c_.size());
        std::vector<R> out;
        out.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (k < a.c_.size() && k < b.c_.size()) {
                out.push_back(op(a.c_[k], b.c_[k]));
            } else if (k < a.c_.size()) {
                out.push_back(a.c_[k]);
            } else {
                out.push_back(op(b.c_[k] * Rational(0), b.c_[k]));
            }
        }
        return SlopePoly(std::move(out));
    }

    std::vector<R> c_;
};

} // namespace projkit
