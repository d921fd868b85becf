#include "finespec/jacobi.hpp"

#include <stdexcept>

namespace finespec {

TaggedRational tr_mul(const TaggedRational& a, const TaggedRational& b) {
    return {a.r * b.r, a.tag + b.tag};
}

TaggedRational tr_div(const TaggedRational& a, const TaggedRational& b) {
    if (b.r == 0) throw std::domain_error("TaggedRational: division by zero");
    return {a.r / b.r, a.tag - b.tag};
}

TaggedRational tr_add(const TaggedRational& a, const TaggedRational& b) {
    if (a.r == 0) return b;
    if (b.r == 0) return a;
    if (a.tag != b.tag) throw std::domain_error("TaggedRational: adding mismatched sqrt(pi) tags");
    return {a.r + b.r, a.tag};
}

TaggedRational gamma_half(const Rational& q) {
    Integer den = q.get_den();
    if (den == 1) {
        Integer num = q.get_num();
        if (num <= 0) throw std::domain_error("gamma_half: pole at nonpositive integer");
        return {Rational(factorial(num.get_si() - 1)), 0};
    }
    if (den != 2) throw std::domain_error("gamma_half: argument must be integer or half-integer");
    // q = m + 1/2; rising (falling) product from Gamma(1/2) = sqrt(pi)
    Integer twom = q.get_num() - 1;  // q = (2m+1)/2
    long m = Integer(twom / 2).get_si();
    Rational r(1);
    if (m >= 0) {
        Rational x(1, 2);
        for (long i = 0; i < m; ++i) {
            r *= x;
            x += 1;
        }
    } else {
        // Gamma(1/2 - k) = Gamma(1/2) / [(1/2 - 1)(1/2 - 2)...(1/2 - k)]
        Rational x(1, 2);
        for (long i = 0; i < -m; ++i) {
            x -= 1;
            r /= x;
        }
    }
    return {r, 1};
}

TaggedRational jacobi_eval(long deg, const Rational& alpha, const Rational& beta,
                           const Rational& z) {
    if (deg < 0) throw std::domain_error("jacobi_eval: negative degree");
    if (alpha <= -1 || beta <= -1) throw std::domain_error("jacobi_eval: need alpha, beta > -1");
    TaggedRational pref = tr_div(gamma_half(alpha + deg + 1),
                                 tr_mul({Rational(factorial(deg)), 0},
                                        gamma_half(Rational(deg) + alpha + beta + 1)));
    TaggedRational sum{Rational(0), 0};
    Rational half_zm1 = (z - 1) / 2;
    for (long nu = 0; nu <= deg; ++nu) {
        TaggedRational term = tr_div(gamma_half(Rational(deg) + alpha + beta + nu + 1),
                                     gamma_half(alpha + nu + 1));
        term.r *= Rational(binom(deg, nu)) * rat_pow(half_zm1, nu);
        sum = tr_add(sum, term);
    }
    return tr_mul(pref, sum);
}

std::vector<Rational> jacobi_coeffs(long deg, const Rational& alpha, const Rational& beta) {
    if (deg < 0) throw std::domain_error("jacobi_coeffs: negative degree");
    if (alpha <= -1 || beta <= -1) throw std::domain_error("jacobi_coeffs: need alpha, beta > -1");
    TaggedRational pref = tr_div(gamma_half(alpha + deg + 1),
                                 tr_mul({Rational(factorial(deg)), 0},
                                        gamma_half(Rational(deg) + alpha + beta + 1)));
    std::vector<TaggedRational> acc(std::size_t(deg) + 1, TaggedRational{Rational(0), 0});
    for (long nu = 0; nu <= deg; ++nu) {
        TaggedRational tc = tr_div(gamma_half(Rational(deg) + alpha + beta + nu + 1),
                                   gamma_half(alpha + nu + 1));
        tc.r *= Rational(binom(deg, nu)) / rat_pow(Rational(2), nu);
        // ((z-1)/2)^nu contributes binomially to each power of z
        for (long p = 0; p <= nu; ++p) {
            TaggedRational piece = tc;
            piece.r *= Rational(binom(nu, p)) * rat_pow(Rational(-1), nu - p);
            acc[std::size_t(p)] = tr_add(acc[std::size_t(p)], piece);
        }
    }
    std::vector<Rational> out;
    out.reserve(acc.size());
    for (auto& a : acc) out.push_back(tr_mul(pref, a).require_plain());
    return out;
}

}  // namespace finespec
