#include "qfb/pathsum.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace qfb {

DelayedPolynomial DelayedPolynomial::monomial(cplx coeff, int j, int p)
{
    DelayedPolynomial poly;
    poly.add_term(coeff, j, p);
    return poly;
}

void DelayedPolynomial::add_term(cplx coeff, int j, int p)
{
    if (j < 0 || p < 0)
        throw std::invalid_argument("delay index and power must be non-negative");
    const Key key{j, p};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (std::abs(coeff) >= prune_threshold)
            terms_.emplace(key, coeff);
        return;
    }
    it->second += coeff;
    if (std::abs(it->second) < prune_threshold)
        terms_.erase(it);
}

cplx DelayedPolynomial::coefficient(int j, int p) const
{
    const auto it = terms_.find({j, p});
    return it == terms_.end() ? cplx{} : it->second;
}

void DelayedPolynomial::prune()
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < prune_threshold)
            it = terms_.erase(it);
        else
            ++it;
    }
}

DelayedPolynomial& DelayedPolynomial::operator+=(const DelayedPolynomial& other)
{
    for (const auto& [key, c] : other.terms_)
        add_term(c, key.first, key.second);
    return *this;
}

DelayedPolynomial DelayedPolynomial::operator+(const DelayedPolynomial& other) const
{
    DelayedPolynomial r = *this;
    r += other;
    return r;
}

DelayedPolynomial DelayedPolynomial::operator*(cplx scale) const
{
    DelayedPolynomial r = *this;
    for (auto& [key, c] : r.terms_)
        c *= scale;
    r.prune();
    return r;
}

cplx DelayedPolynomial::evaluate(double t, double tau) const
{
    if (!(t >= 0.0))
        throw std::domain_error("time must be non-negative");
    // terms are ordered by j, then p ascending
    std::complex<long double> total = 0.0L;
    auto it = terms_.begin();
    while (it != terms_.end()) {
        const int j = it->first.first;
        const long double u = static_cast<long double>(t) - j * static_cast<long double>(tau);
        if (u < 0.0L)
            break;
        long double basis = 1.0L;  // u^p / p!
        int p = 0;
        for (; it != terms_.end() && it->first.first == j; ++it) {
            for (; p < it->first.second; ++p)
                basis *= u / (p + 1);
            total += std::complex<long double>(it->second.real(), it->second.imag()) * basis;
        }
    }
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

void DelayedPolynomial::write(std::ostream& os) const
{
    const auto old = os.precision(17);
    for (const auto& [key, c] : terms_)
        os << c.real() << ' ' << c.imag() << ' ' << key.first << ' ' << key.second << '\n';
    os.precision(old);
}

std::string DelayedPolynomial::to_text() const
{
    std::ostringstream os;
    write(os);
    return os.str();
}

DelayedPolynomial DelayedPolynomial::read(std::istream& is)
{
    DelayedPolynomial poly;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#')
            continue;
        std::istringstream ls(line);
        double re = 0.0, im = 0.0;
        int j = 0, p = 0;
        std::string rest;
        if (!(ls >> re >> im >> j >> p) || (ls >> rest))
            throw std::invalid_argument("malformed term at line " + std::to_string(line_no));
        poly.add_term({re, im}, j, p);
    }
    return poly;
}

DelayedPolynomial op_integrate(const DelayedPolynomial& poly)
{
    DelayedPolynomial r;
    for (const auto& [key, c] : poly.terms())
        r.add_term(c, key.first, key.second + 1);
    return r;
}

DelayedPolynomial op_delay_minus_identity(const DelayedPolynomial& poly, cplx phase)
{
    DelayedPolynomial r;
    for (const auto& [key, c] : poly.terms()) {
        r.add_term(phase * c, key.first + 1, key.second);
        r.add_term(-c, key.first, key.second);
    }
    return r;
}

NeumannAmplitudes neumann_series(int order, double gamma, double kappa, cplx phase)
{
    if (order < 1)
        throw std::invalid_argument("Neumann order must be at least 1");
    if (order > neumann_max_order) {
        std::ostringstream os;
        os << "Neumann order " << order << " exceeds " << neumann_max_order
           << " (term count grows quadratically); integrate the delay equation instead";
        throw std::invalid_argument(os.str());
    }
    const cplx swap = imag_unit * gamma;

    // v_0 = (1/s, 0): the step function in the time domain
    DelayedPolynomial ce = DelayedPolynomial::monomial(1.0, 0, 0);
    DelayedPolynomial cg;
    NeumannAmplitudes sum{ce, cg};
    for (int n = 0; n < order; ++n) {
        DelayedPolynomial next_ce = op_integrate(cg) * swap;
        DelayedPolynomial next_cg =
            op_integrate(ce) * swap + op_integrate(op_delay_minus_identity(cg, phase)) * kappa;
        ce = std::move(next_ce);
        cg = std::move(next_cg);
        sum.ce += ce;
        sum.cg += cg;
    }
    return sum;
}

DelayedPolynomial neumann_cg(int order, double gamma, double kappa, cplx phase)
{
    return neumann_series(order, gamma, kappa, phase).cg;
}

}  // namespace qfb
