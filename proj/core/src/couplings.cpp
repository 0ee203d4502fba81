#include "wqed/couplings.hpp"

#include <cmath>
#include <sstream>

namespace wqed {

namespace {

// e^{-k/xi} with the xi -> 0 limit resolved (1 for k = 0, 0 for k > 0).
double decay(double xi, int k) {
    if (k == 0) return 1.0;
    if (xi <= 0.0) return 0.0;
    return std::exp(-static_cast<double>(k) / xi);
}

int sign_of(double x) { return (x > 0) - (x < 0); }

struct BathRoots {
    double r;     // sqrt((D^2 - 4J^2)(D^2 - 4J^2 d^2)) > 0 inside a gap
    double y;     // the |y| < 1 root of y_pm, signed (negative in the MBG)
    Bandgap gap;
};

BathRoots classify_bath(const PhysicalBathParams& p) {
    const double J = p.hopping, d = p.dimerization, D = p.detuning;
    if (J <= 0.0) throw InvalidParameter("hopping must be positive");
    if (p.coupling <= 0.0) throw InvalidParameter("coupling must be positive");
    if (std::abs(d) >= 1.0)
        throw InvalidParameter("bath dimerization must lie strictly inside (-1, 1)");

    Bandgap gap;
    if (D < -2.0 * J) {
        gap = Bandgap::Lower;
    } else if (D > 2.0 * J) {
        gap = Bandgap::Upper;
    } else if (d == 0.0 && D == 0.0) {
        throw DegenerateBath("delta = 0 leaves no middle bandgap");
    } else if (std::abs(D) < 2.0 * J * std::abs(d)) {
        gap = Bandgap::Middle;
    } else {
        throw DetuningInBand("detuning lies inside an energy band");
    }

    const double r2 = (D * D - 4.0 * J * J) * (D * D - 4.0 * J * J * d * d);
    const double r = std::sqrt(r2);
    const double num = D * D - 2.0 * J * J * (1.0 + d * d);
    const double den = 2.0 * J * J * (1.0 - d * d);
    const double yp = (num + r) / den;
    const double ym = (num - r) / den;
    const double y = std::abs(yp) < std::abs(ym) ? yp : ym;
    return {r, y, gap};
}

} // namespace

std::string to_string(Bandgap b) {
    switch (b) {
        case Bandgap::Lower: return "lower";
        case Bandgap::Middle: return "middle";
        default: return "upper";
    }
}

std::string to_string(Boundary b) { return b == Boundary::OBC ? "obc" : "pbc"; }

double EffectiveCouplings::eta() const {
    // Clamp against tiny negative 1 - delta_eff^2 at full dimerization.
    return std::sqrt(decay(xi, 1) *
                     std::max(0.0, 1.0 - delta_eff * delta_eff));
}

double region_threshold(double xi) {
    const double e = decay(xi, 1);
    return (1.0 - e) / (1.0 + e);
}

Region feasible_region_check(double xi, double delta_eff) {
    if (xi < 0.0) throw InvalidParameter("xi must be nonnegative");
    const double a = std::abs(delta_eff);
    if (a > 1.0) throw InvalidParameter("delta_eff must lie in [-1, 1]");
    const double t = region_threshold(xi);
    if (a < t) return Region::LowerUpperOnly;
    if (a > t) return Region::MiddleOnly;
    return Region::Boundary;
}

EffectiveCouplings EffectiveCouplings::make(Bandgap bandgap, double xi,
                                            double delta_eff, double jtilde,
                                            int detuning_sign) {
    if (xi < 0.0) throw InvalidParameter("xi must be nonnegative");
    if (std::abs(delta_eff) > 1.0)
        throw InvalidParameter("delta_eff must lie in [-1, 1]");
    if (jtilde <= 0.0) throw InvalidParameter("jtilde must be positive");

    const double t = region_threshold(xi);
    if (bandgap == Bandgap::Middle) {
        if (delta_eff == 0.0)
            throw InvalidParameter("middle bandgap requires nonzero delta_eff");
        if (std::abs(delta_eff) < t)
            throw InvalidParameter("(xi, delta_eff) not reachable in the middle bandgap");
    } else {
        // delta_eff = 0 is the undimerized bath; any xi is allowed there.
        if (delta_eff != 0.0 && std::abs(delta_eff) > t)
            throw InvalidParameter("(xi, delta_eff) not reachable in the outer bandgaps");
    }

    if (detuning_sign == 0)
        detuning_sign = bandgap == Bandgap::Lower ? -1 : +1;
    if (bandgap == Bandgap::Lower && detuning_sign != -1)
        throw InvalidParameter("lower bandgap implies negative detuning");
    if (bandgap == Bandgap::Upper && detuning_sign != +1)
        throw InvalidParameter("upper bandgap implies positive detuning");

    return {bandgap, xi, delta_eff, jtilde, detuning_sign};
}

EffectiveCouplings effective_from_physical(const PhysicalBathParams& p) {
    const auto [r, y, gap] = classify_bath(p);
    const double J = p.hopping, d = p.dimerization, D = p.detuning;
    const double ay = std::abs(y);
    const double xi = ay > 0.0 ? -1.0 / std::log(ay) : 0.0;
    const double t = (1.0 - ay) / (1.0 + ay);
    const bool middle = gap == Bandgap::Middle;
    const double delta_eff = middle ? t / d : t * d;
    const double jtilde = p.coupling * p.coupling * J * (1.0 + ay) / r *
                          (middle ? std::abs(d) : 1.0);
    int dsign = sign_of(D);
    if (dsign == 0) dsign = +1; // Delta = 0: the AA/BB couplings vanish anyway
    return {gap, xi, delta_eff, jtilde, dsign};
}

double coupling_constant(const EffectiveCouplings& c, int n, PairKind pair) {
    if (n < 0) throw InvalidParameter("pair distance must be nonnegative");
    if (n == 0 && pair != PairKind::AB) return 0.0;

    const double jt = c.jtilde;
    const double de = c.delta_eff;
    if (c.bandgap != Bandgap::Middle) {
        switch (pair) {
            case PairKind::AB:
                return -jt * (1.0 + de) * decay(c.xi, n);
            case PairKind::BA:
                return -jt * (1.0 - de) * decay(c.xi, n - 1);
            default:
                return jt * c.detuning_sign * c.eta() * decay(c.xi, n - 1);
        }
    }
    const int sd = sign_of(de);
    const int alt = n % 2 == 0 ? 1 : -1; // (-1)^n
    switch (pair) {
        case PairKind::AB:
            return jt * sd * (1.0 + de) * alt * decay(c.xi, n);
        case PairKind::BA:
            return -jt * sd * (1.0 - de) * (-alt) * decay(c.xi, n - 1);
        default:
            return jt * c.detuning_sign * c.eta() * (-alt) * decay(c.xi, n - 1);
    }
}

double self_energy_real(const PhysicalBathParams& p, int n, PairKind pair) {
    const auto [r, y, gap] = classify_bath(p);
    const double g2 = p.coupling * p.coupling;
    const double J = p.hopping, d = p.dimerization, D = p.detuning;
    // Upper sign of the closed-form self-energy applies in the middle
    // bandgap, lower sign in the outer ones.
    const double s = gap == Bandgap::Middle ? +1.0 : -1.0;
    switch (pair) {
        case PairKind::AA:
        case PairKind::BB:
            return -s * g2 * D * std::pow(y, std::abs(n)) / r;
        case PairKind::AB:
            return s * g2 * J *
                   ((1.0 + d) * std::pow(y, std::abs(n)) +
                    (1.0 - d) * std::pow(y, std::abs(n + 1))) /
                   r;
        default: // BA_n = AB_{-n}
            return s * g2 * J *
                   ((1.0 + d) * std::pow(y, std::abs(n)) +
                    (1.0 - d) * std::pow(y, std::abs(n - 1))) /
                   r;
    }
}

namespace {

PairKind pair_kind(int left_parity, int right_parity) {
    if (left_parity == 0) return right_parity == 0 ? PairKind::AA : PairKind::AB;
    return right_parity == 0 ? PairKind::BA : PairKind::BB;
}

// Coupling (units of jtilde) between ordered sites u < v on an open chain.
double site_coupling(const EffectiveCouplings& c, int u, int v, int n_max) {
    const int n = v / 2 - u / 2;
    if (n > n_max) return 0.0;
    return coupling_constant(c, n, pair_kind(u % 2, v % 2)) / c.jtilde;
}

} // namespace

CouplingMatrix build_coupling_matrix(const EffectiveCouplings& c, int n_spins,
                                     Boundary boundary, int n_max,
                                     bool throw_on_small_cutoff) {
    if (n_spins < 2 || n_spins > 1024 || n_spins % 2 != 0)
        throw OddSize("n_spins must be even and within [2, 1024]");
    if (n_max == 0)
        n_max = std::min(static_cast<int>(std::ceil(30.0 * c.xi)) + 1, n_spins);
    if (n_max < 1) throw InvalidParameter("n_max must be at least 1");

    const bool warn = decay(c.xi, n_max) > 1e-6;
    if (warn && throw_on_small_cutoff)
        throw CutoffTooSmall("truncated tail exceeds 1e-6 jtilde");

    CouplingMatrix cm;
    cm.n_spins = n_spins;
    cm.boundary = boundary;
    cm.jtilde = c.jtilde;
    cm.n_max = n_max;
    cm.cutoff_warning = warn;
    cm.entries = Eigen::MatrixXd::Zero(n_spins, n_spins);

    for (int i = 0; i < n_spins; ++i) {
        for (int j = i + 1; j < n_spins; ++j) {
            double value = 0.0;
            if (boundary == Boundary::OBC) {
                value = site_coupling(c, i, j, n_max);
            } else {
                const int d1 = j - i;
                const int d2 = n_spins - d1;
                const double direct = site_coupling(c, i, j, n_max);
                const double wrap = site_coupling(c, j, i + n_spins, n_max);
                if (d1 < d2) value = direct;
                else if (d1 > d2) value = wrap;
                else value = std::abs(direct) >= std::abs(wrap) ? direct : wrap;
            }
            if (std::abs(value) < 1e-12) continue;
            cm.entries(i, j) = value;
            cm.entries(j, i) = value;
        }
    }
    return cm;
}

CouplingMatrix make_uniform_lbg(int n_spins, double jtilde) {
    if (n_spins < 2 || n_spins % 2 != 0) throw OddSize("n_spins must be even");
    CouplingMatrix cm;
    cm.n_spins = n_spins;
    cm.boundary = Boundary::PBC;
    cm.jtilde = jtilde;
    cm.n_max = n_spins;
    cm.entries = -Eigen::MatrixXd::Ones(n_spins, n_spins);
    cm.entries.diagonal().setZero();
    return cm;
}

CouplingMatrix make_uniform_ubg(int n_spins, double jtilde) {
    CouplingMatrix cm = make_uniform_lbg(n_spins, jtilde);
    for (int i = 0; i < n_spins; ++i)
        for (int j = 0; j < n_spins; ++j)
            if (i != j && i % 2 == j % 2) cm.entries(i, j) = 1.0;
    return cm;
}

CouplingMatrix make_nn_dimerized(int n_spins, double delta_eff,
                                 Boundary boundary, double jtilde) {
    if (n_spins < 2 || n_spins % 2 != 0) throw OddSize("n_spins must be even");
    CouplingMatrix cm;
    cm.n_spins = n_spins;
    cm.boundary = boundary;
    cm.jtilde = jtilde;
    cm.n_max = 1;
    cm.entries = Eigen::MatrixXd::Zero(n_spins, n_spins);
    const int last = boundary == Boundary::PBC ? n_spins : n_spins - 1;
    for (int i = 0; i < last; ++i) {
        const int j = (i + 1) % n_spins;
        const double v = -(1.0 + (i % 2 == 0 ? delta_eff : -delta_eff));
        cm.entries(i, j) = v;
        cm.entries(j, i) = v;
    }
    return cm;
}

std::string CouplingMatrix::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"n\": " << n_spins << ", \"boundary\": \"" << to_string(boundary)
       << "\", \"jtilde\": " << jtilde << ", \"entries\": [";
    for (int i = 0; i < n_spins; ++i)
        for (int j = 0; j < n_spins; ++j)
            os << entries(i, j) << (i == n_spins - 1 && j == n_spins - 1 ? "" : ", ");
    os << "]}";
    return os.str();
}

} // namespace wqed
