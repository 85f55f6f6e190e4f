#ifndef CHOQ_EXPONENTS_HPP
#define CHOQ_EXPONENTS_HPP

#include <stdexcept>
#include <string>

namespace choq {

/// Problem data for -Δu = λu + κ(I_α∗|u|^p)|u|^{p-2}u + μ|u|^{q-2}u with
/// prescribed mass ∫|u|² = a². κ = 1 is the standard equation; κ = 0 drops
/// the nonlocal term and recovers pure NLS oracles.
struct ProblemParams {
    int    N     = 3;
    double alpha = 2.0;
    double p     = 3.0;
    double q     = 4.0;
    double mu    = 1.0;
    double a     = 1.0;
    double kappa = 1.0;

    void validate() const;
};

/// An exponent bound that may be +infinity (N = 1, 2 cases). Never a large
/// float sentinel: unbounded is an explicit state.
class CritBound {
  public:
    static CritBound finite(double v) { return CritBound(false, v); }
    static CritBound unbounded() { return CritBound(true, 0.0); }

    bool is_unbounded() const { return unbounded_; }
    double value() const {
        if (unbounded_) throw std::logic_error("CritBound: value() on unbounded bound");
        return v_;
    }
    /// bound > x (true for the unbounded variant)
    bool exceeds(double x) const { return unbounded_ || v_ > x; }
    /// bound >= x
    bool at_least(double x) const { return unbounded_ || v_ >= x; }
    std::string str() const;

  private:
    CritBound(bool unb, double v) : unbounded_(unb), v_(v) {}
    bool unbounded_;
    double v_;
};

struct CriticalExponents {
    CritBound p_bar    = CritBound::unbounded(); ///< HLS upper critical (N+α)/(N-2)
    double    p_lower  = 0.0;                    ///< HLS lower critical (N+α)/N
    double    p_star   = 0.0;                    ///< L²-critical Choquard 1+(2+α)/N
    double    q_star   = 0.0;                    ///< L²-critical local 2+4/N
    CritBound two_star = CritBound::unbounded(); ///< Sobolev 2N/(N-2)
    double    eta_p    = 0.0;                    ///< N/2 - (N+α)/(2p)
    double    gamma_q  = 0.0;                    ///< N/2 - N/q

    /// Fiber-map exponents of e^{cs} in Ψ_u(s): kinetic 2, nonlocal
    /// Np-N-α = 2pη_p, local Nq/2-N = qγ_q.
    double nonlocal_rate(const ProblemParams& pp) const { return 2.0 * pp.p * eta_p; }
    double local_rate(const ProblemParams& pp) const { return pp.q * gamma_q; }
};

CriticalExponents derive_exponents(const ProblemParams& params);

/// q equals the L²-critical local exponent (exact up to fp round-off of q*).
bool is_mass_critical_q(const ProblemParams& params, const CriticalExponents& ce);

} // namespace choq

#endif
