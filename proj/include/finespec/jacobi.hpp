#pragma once

// Jacobi polynomials with half-integer parameters over exact rationals.
// Gamma values at half-integers carry sqrt(pi) as a formal tag; ratios used
// by the H-polynomial identities cancel it, and conversions to plain
// rationals insist that it has.

#include <vector>

#include "finespec/rational.hpp"

namespace finespec {

// value = r * sqrt(pi)^tag
struct TaggedRational {
    Rational r;
    int tag = 0;

    TaggedRational() = default;
    TaggedRational(Rational v, int t = 0) : r(std::move(v)), tag(t) {}

    Rational require_plain() const {
        if (tag != 0 && r != 0)
            throw std::domain_error("sqrt(pi) tag did not cancel");
        return r;
    }
};

TaggedRational tr_mul(const TaggedRational& a, const TaggedRational& b);
TaggedRational tr_div(const TaggedRational& a, const TaggedRational& b);
TaggedRational tr_add(const TaggedRational& a, const TaggedRational& b);

// Gamma at integers and half-integers, as rising products from Gamma(1) = 1
// and Gamma(1/2) = sqrt(pi).  Throws on nonpositive-integer poles.
TaggedRational gamma_half(const Rational& q);

// P_deg^{(alpha,beta)}(z) for half-integer alpha, beta > -1.
TaggedRational jacobi_eval(long deg, const Rational& alpha, const Rational& beta,
                           const Rational& z);

// Coefficients of P_deg^{(alpha,beta)} in powers of z; requires cancellation.
std::vector<Rational> jacobi_coeffs(long deg, const Rational& alpha, const Rational& beta);

}  // namespace finespec
