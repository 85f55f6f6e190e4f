#include "choq/exponents.hpp"

#include <cmath>
#include <sstream>

namespace choq {

void ProblemParams::validate() const {
    if (N < 1 || N > 3) throw std::invalid_argument("ProblemParams: N must be 1, 2 or 3");
    if (!(alpha > 0.0 && alpha < double(N)))
        throw std::invalid_argument("ProblemParams: alpha must lie in (0, N)");
    if (!(mu > 0.0)) throw std::invalid_argument("ProblemParams: mu must be positive");
    if (!(a > 0.0)) throw std::invalid_argument("ProblemParams: a must be positive");
    if (!(kappa >= 0.0)) throw std::invalid_argument("ProblemParams: kappa must be >= 0");
    if (!(p > 1.0)) throw std::invalid_argument("ProblemParams: p must exceed 1");
    if (!(q > 2.0)) throw std::invalid_argument("ProblemParams: q must exceed 2");
}

std::string CritBound::str() const {
    if (unbounded_) return "unbounded";
    std::ostringstream os;
    os << v_;
    return os.str();
}

CriticalExponents derive_exponents(const ProblemParams& params) {
    params.validate();
    const double N = params.N;
    const double alpha = params.alpha;
    CriticalExponents ce;
    ce.p_lower = (N + alpha) / N;
    ce.p_star = 1.0 + (2.0 + alpha) / N;
    ce.q_star = 2.0 + 4.0 / N;
    if (params.N >= 3) {
        ce.p_bar = CritBound::finite((N + alpha) / (N - 2.0));
        ce.two_star = CritBound::finite(2.0 * N / (N - 2.0));
    } else {
        ce.p_bar = CritBound::unbounded();
        ce.two_star = CritBound::unbounded();
    }
    ce.eta_p = N / 2.0 - (N + alpha) / (2.0 * params.p);
    ce.gamma_q = N / 2.0 - N / params.q;
    return ce;
}

bool is_mass_critical_q(const ProblemParams& params, const CriticalExponents& ce) {
    return std::abs(params.q - ce.q_star) <= 1e-12 * ce.q_star;
}

} // namespace choq
