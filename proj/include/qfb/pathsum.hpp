#ifndef QFB_PATHSUM_HPP
#define QFB_PATHSUM_HPP

#include "qfb/core.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <utility>

namespace qfb {

/**
 * Sum of causal monomials
 *
 *   coeff * (t - j tau)^p / p! * Theta(t - j tau)
 *
 * keyed by (j, p). The 1/p! basis makes time integration (1/s in the
 * Laplace domain) a pure shift p -> p + 1, and a delay by tau
 * (e^{-tau s}) a shift j -> j + 1. The delay tau itself is only needed at
 * evaluation.
 */
class DelayedPolynomial {
public:
    using Key = std::pair<int, int>;  // (j, p)

    static constexpr double prune_threshold = 1e-300;

    DelayedPolynomial() = default;
    static DelayedPolynomial monomial(cplx coeff, int j, int p);

    void add_term(cplx coeff, int j, int p);
    cplx coefficient(int j, int p) const;
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const std::map<Key, cplx>& terms() const { return terms_; }

    DelayedPolynomial& operator+=(const DelayedPolynomial& other);
    DelayedPolynomial operator+(const DelayedPolynomial& other) const;
    DelayedPolynomial operator*(cplx scale) const;

    /// Value at time t >= 0.
    cplx evaluate(double t, double tau) const;

    /// One "coeff_re coeff_im j p" line per term.
    void write(std::ostream& os) const;
    std::string to_text() const;
    static DelayedPolynomial read(std::istream& is);

private:
    void prune();

    std::map<Key, cplx> terms_;
};

/// Multiplication by 1/s: (j, p) -> (j, p + 1).
DelayedPolynomial op_integrate(const DelayedPolynomial& poly);

/// Action of (phase e^{-tau s} - 1): the copy delayed by one round trip
/// minus the original.
DelayedPolynomial op_delay_minus_identity(const DelayedPolynomial& poly, cplx phase = 1.0);

inline constexpr int neumann_max_order = 60;

struct NeumannAmplitudes {
    DelayedPolynomial ce;
    DelayedPolynomial cg;
};

/**
 * Partial sums of the photon-path series
 *
 *   (ce, cg)(s) = sum_{n=0}^{order} L^n (1/s, 0),
 *
 *   L = [ 0          i gamma / s                        ]
 *       [ i gamma/s  (kappa / s) (phase e^{-tau s} - 1) ]
 *
 * starting from ce(0) = 1, cg(0) = 0. Orders above neumann_max_order are
 * refused; integrate the delay equation for those times instead.
 */
NeumannAmplitudes neumann_series(int order, double gamma, double kappa, cplx phase = 1.0);

DelayedPolynomial neumann_cg(int order, double gamma, double kappa, cplx phase = 1.0);

}  // namespace qfb

#endif  // QFB_PATHSUM_HPP
