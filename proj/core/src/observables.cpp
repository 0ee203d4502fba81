#include "wqed/observables.hpp"

#include <algorithm>
#include <cmath>

namespace wqed {

namespace {

// Binary-search lookup that tolerates configurations outside the sector.
std::optional<std::size_t> find_config(const SectorBasis& basis,
                                       std::uint64_t config) {
    const auto& states = basis.states();
    const auto it = std::lower_bound(states.begin(), states.end(), config);
    if (it == states.end() || *it != config) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

// Applies an operator string (rightmost factor first) to a configuration.
// Returns the resulting configuration and amplitude, or nullopt when some
// ladder operator annihilates the state.
std::optional<std::pair<std::uint64_t, double>> apply_string(
    std::uint64_t config, const std::vector<SiteOp>& ops) {
    double factor = 1.0;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const std::uint64_t mask = std::uint64_t{1} << it->site;
        switch (it->op) {
        case SpinOp::Plus:
            if (config & mask) return std::nullopt;
            config |= mask;
            break;
        case SpinOp::Minus:
            if (!(config & mask)) return std::nullopt;
            config &= ~mask;
            break;
        case SpinOp::Z:
            factor *= (config & mask) ? 0.5 : -0.5;
            break;
        }
    }
    return std::make_pair(config, factor);
}

void check_site(const SectorBasis& basis, int site) {
    if (site < 0 || site >= basis.n_spins())
        throw WindowOutOfRange("operator site outside the chain");
}

int wrap(int site, int n, Boundary boundary) {
    if (boundary == Boundary::PBC) return ((site % n) + n) % n;
    return site;
}

std::vector<OpTerm> bond_component_terms(int i, int j, int k, int l,
                                         char axis) {
    // B^a_. B^a_. with the bonds on sites (i, j) and (k, l).
    if (axis == 'z')
        return {{1.0,
                 {{SpinOp::Z, i}, {SpinOp::Z, j}, {SpinOp::Z, k}, {SpinOp::Z, l}}}};
    if (axis != 'x' && axis != 'y')
        throw InvalidParameter("axis must be one of x, y, z");
    // S^x = (S+ + S-)/2, S^y = (S+ - S-)/(2i); expand both bonds. Strings
    // with a net magnetization change drop out of sector expectations on
    // their own.
    const Complex unit = axis == 'x' ? Complex{0.5, 0.0} : Complex{0.0, -0.5};
    const Complex sign = axis == 'x' ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
    std::vector<OpTerm> terms;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    OpTerm term;
                    term.coeff = unit * unit * unit * unit *
                                 (a ? sign : Complex{1.0}) *
                                 (b ? sign : Complex{1.0}) *
                                 (c ? sign : Complex{1.0}) *
                                 (d ? sign : Complex{1.0});
                    term.ops = {{a ? SpinOp::Minus : SpinOp::Plus, i},
                                {b ? SpinOp::Minus : SpinOp::Plus, j},
                                {c ? SpinOp::Minus : SpinOp::Plus, k},
                                {d ? SpinOp::Minus : SpinOp::Plus, l}};
                    terms.push_back(std::move(term));
                }
    return terms;
}

std::vector<OpTerm> kappa_product(int n, int m) {
    // kappa_j = (i/2)(S+_j S-_{j+1} - S-_j S+_{j+1}); product of two.
    std::vector<OpTerm> terms;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            OpTerm term;
            term.coeff = Complex{-0.25, 0.0} * (a ? -1.0 : 1.0) *
                         (b ? -1.0 : 1.0);
            term.ops = {{a ? SpinOp::Minus : SpinOp::Plus, n},
                        {a ? SpinOp::Plus : SpinOp::Minus, n + 1},
                        {b ? SpinOp::Minus : SpinOp::Plus, m},
                        {b ? SpinOp::Plus : SpinOp::Minus, m + 1}};
            terms.push_back(std::move(term));
        }
    return terms;
}

} // namespace

Complex matrix_element(const SectorBasis& basis, const Eigen::VectorXcd& bra,
                       const Eigen::VectorXcd& ket,
                       const std::vector<SiteOp>& ops) {
    if (bra.size() != static_cast<Eigen::Index>(basis.size()) ||
        ket.size() != static_cast<Eigen::Index>(basis.size()))
        throw SizeMismatch("state length does not match the sector dimension");
    for (const auto& op : ops) check_site(basis, op.site);
    Complex total{};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (ket(i) == Complex{}) continue;
        const auto mapped = apply_string(basis.state(i), ops);
        if (!mapped) continue;
        const auto target = find_config(basis, mapped->first);
        if (!target) continue;
        total += std::conj(bra(*target)) * mapped->second * ket(i);
    }
    return total;
}

Complex expectation(const SectorBasis& basis, const Eigen::MatrixXcd& states,
                    const std::vector<OpTerm>& terms) {
    if (states.cols() < 1) throw InvalidParameter("no states supplied");
    Complex total{};
    for (Eigen::Index s = 0; s < states.cols(); ++s)
        for (const auto& term : terms)
            total += term.coeff *
                     matrix_element(basis, states.col(s), states.col(s), term.ops);
    return total / static_cast<double>(states.cols());
}

Eigen::VectorXd local_magnetization(const SectorBasis& basis,
                                    const Eigen::MatrixXcd& states) {
    if (states.rows() != static_cast<Eigen::Index>(basis.size()))
        throw SectorMismatch("state length does not match the sector dimension");
    if (states.cols() < 1) throw InvalidParameter("no states supplied");
    const int n = basis.n_spins();
    Eigen::VectorXd mz = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double weight = states.row(i).squaredNorm();
        if (weight == 0.0) continue;
        const std::uint64_t config = basis.state(i);
        for (int j = 0; j < n; ++j)
            mz(j) += weight * ((config >> j) & 1 ? 0.5 : -0.5);
    }
    return mz / static_cast<double>(states.cols());
}

CorrelationProfile two_point_correlations(const SectorBasis& basis,
                                          const Eigen::MatrixXcd& states,
                                          char axis, int r_max,
                                          std::optional<int> reference) {
    const int n = basis.n_spins();
    const int c = reference.value_or(n / 2);
    if (c < 0 || r_max < 1 || c + r_max >= n)
        throw WindowOutOfRange("correlation window exceeds the chain");

    CorrelationProfile profile;
    profile.axis = axis;
    profile.reference = c;
    profile.values.resize(r_max);

    if (axis == 'z') {
        const Eigen::VectorXd mz = local_magnetization(basis, states);
        for (int r = 1; r <= r_max; ++r) {
            const Complex zz = expectation(
                basis, states, {{1.0, {{SpinOp::Z, c}, {SpinOp::Z, c + r}}}});
            profile.values[r - 1] = zz.real() - mz(c) * mz(c + r);
        }
        return profile;
    }
    if (axis != 'x' && axis != 'y')
        throw InvalidParameter("axis must be one of x, y, z");
    // <S^x S^x> = <S^y S^y> = (<S+S-> + <S-S+>)/4 on a magnetization sector,
    // and <S^x> = <S^y> = 0, so the connected part is the bare correlator.
    for (int r = 1; r <= r_max; ++r) {
        const Complex ladder = expectation(
            basis, states,
            {{0.25, {{SpinOp::Plus, c}, {SpinOp::Minus, c + r}}},
             {0.25, {{SpinOp::Minus, c}, {SpinOp::Plus, c + r}}}});
        profile.values[r - 1] = ladder.real();
    }
    return profile;
}

double bond_energy(const SectorBasis& basis, const Eigen::MatrixXcd& states,
                   int n, Boundary boundary) {
    const int size = basis.n_spins();
    const int i = wrap(n, size, boundary);
    const int j = wrap(n + 1, size, boundary);
    if (boundary == Boundary::OBC && (n < 0 || n + 1 >= size))
        throw WindowOutOfRange("bond outside the open chain");
    const Complex value = expectation(
        basis, states,
        {{1.0, {{SpinOp::Z, i}, {SpinOp::Z, j}}},
         {0.5, {{SpinOp::Plus, i}, {SpinOp::Minus, j}}},
         {0.5, {{SpinOp::Minus, i}, {SpinOp::Plus, j}}}});
    return value.real();
}

BondOrderResult bond_order(const SectorBasis& basis,
                           const Eigen::MatrixXcd& states, int period,
                           Boundary boundary,
                           std::optional<std::pair<int, int>> window) {
    if (period < 1) throw InvalidParameter("period must be at least 1");
    const int n = basis.n_spins();
    int n0, length;
    if (window) {
        std::tie(n0, length) = *window;
    } else if (boundary == Boundary::PBC) {
        n0 = 0;
        length = n;
    } else {
        n0 = n / 4;
        length = n / 2;
    }
    const int max_bond = boundary == Boundary::PBC ? n : n - 1;
    if (length < 1 || n0 < 0 || n0 + length > max_bond)
        throw WindowOutOfRange("bond-order window exceeds the chain");

    Complex order{};
    for (int bond = n0; bond < n0 + length; ++bond) {
        const double phase = -2.0 * M_PI * bond / period;
        order += bond_energy(basis, states, bond, boundary) *
                 Complex{std::cos(phase), std::sin(phase)};
    }
    BondOrderResult result;
    result.period = period;
    result.order = order / static_cast<double>(length);
    result.window_start = n0;
    result.window_length = length;
    return result;
}

double bond_bond_correlator(const SectorBasis& basis,
                            const Eigen::MatrixXcd& states, int n, int r,
                            char axis, Boundary boundary) {
    const int size = basis.n_spins();
    if (boundary == Boundary::OBC && (n < 0 || n + r + 1 >= size))
        throw WindowOutOfRange("bond pair outside the open chain");
    const auto terms = bond_component_terms(
        wrap(n, size, boundary), wrap(n + 1, size, boundary),
        wrap(n + r, size, boundary), wrap(n + r + 1, size, boundary), axis);
    return expectation(basis, states, terms).real();
}

Complex multipolar_correlator(const SectorBasis& basis,
                              const Eigen::MatrixXcd& states,
                              MultipolarKind kind, int r) {
    if (r < 0) throw InvalidParameter("separation must be non-negative");
    const int n_spins = basis.n_spins();
    // Support of the string for anchor n, and the term list.
    const auto support = [&](int n) -> std::pair<int, int> {
        switch (kind) {
        case MultipolarKind::C2: return {n - 1, n + r + 1};
        case MultipolarKind::C3: return {n - 2, n + r + 2};
        case MultipolarKind::CKappa: return {n, n + r + 1};
        }
        throw InvalidParameter("unknown correlator kind");
    };
    const auto terms = [&](int n) -> std::vector<OpTerm> {
        switch (kind) {
        case MultipolarKind::C2:
            return {{1.0,
                     {{SpinOp::Plus, n - 1},
                      {SpinOp::Plus, n},
                      {SpinOp::Minus, n + r},
                      {SpinOp::Minus, n + r + 1}}}};
        case MultipolarKind::C3:
            return {{1.0,
                     {{SpinOp::Plus, n - 2},
                      {SpinOp::Plus, n - 1},
                      {SpinOp::Plus, n},
                      {SpinOp::Minus, n + r},
                      {SpinOp::Minus, n + r + 1},
                      {SpinOp::Minus, n + r + 2}}}};
        case MultipolarKind::CKappa: return kappa_product(n, n + r);
        }
        throw InvalidParameter("unknown correlator kind");
    };

    // Average over the anchor placements whose support sits closest to the
    // middle of the chain.
    const double middle = 0.5 * (n_spins - 1);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> anchors;
    for (int n = 0; n < n_spins; ++n) {
        const auto [lo, hi] = support(n);
        if (lo < 0 || hi >= n_spins) continue;
        const double dist = std::abs(0.5 * (lo + hi) - middle);
        if (dist < best - 1e-9) {
            best = dist;
            anchors = {n};
        } else if (dist < best + 1e-9) {
            anchors.push_back(n);
        }
    }
    if (anchors.empty())
        throw WindowOutOfRange("correlator does not fit on the chain");

    Complex total{};
    for (const int n : anchors) total += expectation(basis, states, terms(n));
    return total / static_cast<double>(anchors.size());
}

} // namespace wqed
