#include "gravvac/generators.hpp"

#include "gravvac/error.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace gravvac {

namespace {
const cplx I(0.0, 1.0);

CMatrix diag_matrix(const Eigen::VectorXd& e) {
    CMatrix h = CMatrix::Zero(e.size(), e.size());
    for (Eigen::Index k = 0; k < e.size(); ++k) h(k, k) = e(k);
    return h;
}

struct Ops {
    CMatrix id, b2, bd2, b4, bd4;
};

Ops make_ops(int dim) {
    const Ladder l = ladder(dim);
    Ops o;
    o.id = CMatrix::Identity(dim, dim);
    o.b2 = l.lower * l.lower;
    o.bd2 = l.raise * l.raise;
    o.b4 = o.b2 * o.b2;
    o.bd4 = o.bd2 * o.bd2;
    return o;
}

void require(int dim, int min_dim, const char* who) {
    if (dim < min_dim)
        throw DomainError(std::string("fock invariant violated: ") + who + " needs dim >= " + std::to_string(min_dim));
}

// E_n = (1 - m - 3p) n + (m - p) n^2; the rwa case is p = 0.
Eigen::VectorXd ladder_energies(int dim, double p, double m) {
    Eigen::VectorXd e(dim);
    for (int n = 0; n < dim; ++n) e(n) = (1.0 - m - 3.0 * p) * n + (m - p) * double(n) * n;
    return e;
}

Liouvillian rwa(Variant v, const VacuumCoefficients& c, int dim, bool renormalized) {
    require(dim, 4, "rwa generator");
    const double m = active_shifts(v, c, renormalized).second;
    const Ops o = make_ops(dim);
    return Liouvillian(dim, v, diag_matrix(ladder_energies(dim, 0.0, m)), dissipator_terms(c.gamma, o.b2), c,
                       renormalized);
}

Liouvillian full(Variant v, const VacuumCoefficients& c, int dim, bool renormalized) {
    require(dim, 6, "full generator");
    const auto [p, m] = active_shifts(v, c, renormalized);
    const double g = c.gamma;
    const double s = v == Variant::x_full ? -1.0 : 1.0;
    const Ops o = make_ops(dim);
    std::vector<SandwichTerm> t = dissipator_terms(g, o.b2);
    using G = TermGroup;
    // s i p (b+2 . b+2 - b+4 . + . b4 - b2 . b2)
    const cplx cp = s * I * p;
    t.push_back({cp, o.bd2, o.bd2, G::counter_rotating_plus});
    t.push_back({-cp, o.bd4, o.id, G::counter_rotating_plus});
    t.push_back({cp, o.id, o.b4, G::counter_rotating_plus});
    t.push_back({-cp, o.b2, o.b2, G::counter_rotating_plus});
    // s (i m + g/2)(b4 . - b2 . b2)
    const cplx ca = s * (I * m + g / 2.0);
    t.push_back({ca, o.b4, o.id, G::counter_rotating_b4});
    t.push_back({-ca, o.b2, o.b2, G::counter_rotating_b4});
    // s (i m - g/2)(b+2 . b+2 - . b+4)
    const cplx cb = s * (I * m - g / 2.0);
    t.push_back({cb, o.bd2, o.bd2, G::counter_rotating_b4dag});
    t.push_back({-cb, o.id, o.bd4, G::counter_rotating_b4dag});
    return Liouvillian(dim, v, diag_matrix(ladder_energies(dim, p, m)), std::move(t), c, renormalized);
}
} // namespace

std::string to_string(Variant v) {
    switch (v) {
    case Variant::x_full: return "x_full";
    case Variant::x_rwa: return "x_rwa";
    case Variant::xi_full: return "xi_full";
    case Variant::xi_rwa: return "xi_rwa";
    case Variant::amp_only: return "amp_only";
    case Variant::phase_only: return "phase_only";
    case Variant::custom: return "custom";
    }
    return "custom";
}

Variant parse_variant(const std::string& s) {
    for (Variant v : {Variant::x_full, Variant::x_rwa, Variant::xi_full, Variant::xi_rwa, Variant::amp_only,
                      Variant::phase_only})
        if (to_string(v) == s) return v;
    throw DomainError("unknown variant '" + s + "'");
}

bool is_full(Variant v) { return v == Variant::x_full || v == Variant::xi_full; }

Liouvillian::Liouvillian(int dim, Variant variant, CMatrix hamiltonian, std::vector<SandwichTerm> terms,
                         VacuumCoefficients coeffs, bool renormalized)
    : dim_(dim), variant_(variant), hamiltonian_(std::move(hamiltonian)), terms_(std::move(terms)),
      coeffs_(coeffs), renormalized_(renormalized) {
    if (hamiltonian_.rows() != dim || hamiltonian_.cols() != dim) throw DomainError("Liouvillian: Hamiltonian size");
    for (const auto& t : terms_)
        if (t.left.rows() != dim || t.right.rows() != dim) throw DomainError("Liouvillian: term size");
}

CMatrix Liouvillian::apply(const CMatrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) throw DomainError("Liouvillian: dimension mismatch");
    CMatrix out = -I * (hamiltonian_ * rho - rho * hamiltonian_);
    for (const auto& t : terms_) out.noalias() += t.coeff * (t.left * rho * t.right);
    return out;
}

CMatrix Liouvillian::dense() const {
    if (dim_ > kDenseLimit) throw DomainError("Liouvillian::dense: dim > 32, use matrix-free application");
    const CMatrix id = CMatrix::Identity(dim_, dim_);
    // vec(A X B) = (B^T kron A) vec(X)
    CMatrix m = -I * (Eigen::kroneckerProduct(id, hamiltonian_).eval() -
                      Eigen::kroneckerProduct(hamiltonian_.transpose(), id).eval());
    for (const auto& t : terms_) m += t.coeff * Eigen::kroneckerProduct(t.right.transpose(), t.left).eval();
    return m;
}

std::vector<SandwichTerm> dissipator_terms(double rate, const CMatrix& jump) {
    const CMatrix ll = jump.adjoint() * jump;
    const CMatrix id = CMatrix::Identity(jump.rows(), jump.cols());
    return {{rate, jump, jump.adjoint(), TermGroup::dissipator},
            {-rate / 2.0, ll, id, TermGroup::dissipator},
            {-rate / 2.0, id, ll, TermGroup::dissipator}};
}

std::pair<double, double> active_shifts(Variant v, const VacuumCoefficients& c, bool renormalized) {
    switch (v) {
    case Variant::x_full:
    case Variant::x_rwa:
        return renormalized ? std::pair{c.delta_plus_r, c.delta_minus_r} : std::pair{c.delta_plus, c.delta_minus};
    case Variant::xi_full:
    case Variant::xi_rwa:
        return renormalized ? std::pair{c.big_delta_plus_r, c.big_delta_minus_r}
                            : std::pair{c.big_delta_plus, c.big_delta_minus};
    default: return {0.0, 0.0};
    }
}

Liouvillian liouvillian_x_rwa(const VacuumCoefficients& c, int dim, bool r) { return rwa(Variant::x_rwa, c, dim, r); }
Liouvillian liouvillian_xi_rwa(const VacuumCoefficients& c, int dim, bool r) { return rwa(Variant::xi_rwa, c, dim, r); }
Liouvillian liouvillian_x_full(const VacuumCoefficients& c, int dim, bool r) { return full(Variant::x_full, c, dim, r); }
Liouvillian liouvillian_xi_full(const VacuumCoefficients& c, int dim, bool r) {
    return full(Variant::xi_full, c, dim, r);
}

Liouvillian lindblad_amp(double rate, int dim) {
    if (!(rate >= 0.0)) throw DomainError("lindblad_amp: rate must be >= 0");
    require(dim, 2, "lindblad_amp");
    const Ladder l = ladder(dim);
    VacuumCoefficients c;
    c.gamma = rate;
    return Liouvillian(dim, Variant::amp_only, CMatrix::Zero(dim, dim), dissipator_terms(rate, l.lower * l.lower), c);
}

Liouvillian lindblad_pha(double rate, int dim) {
    if (!(rate >= 0.0)) throw DomainError("lindblad_pha: rate must be >= 0");
    require(dim, 2, "lindblad_pha");
    VacuumCoefficients c;
    c.gamma = rate;
    return Liouvillian(dim, Variant::phase_only, CMatrix::Zero(dim, dim), dissipator_terms(rate, number_operator(dim)),
                       c);
}

Liouvillian zero_generator(int dim) {
    require(dim, 2, "zero generator");
    return Liouvillian(dim, Variant::custom, CMatrix::Zero(dim, dim), {});
}

Liouvillian make_liouvillian(Variant v, const VacuumCoefficients& c, int dim, bool renormalized) {
    switch (v) {
    case Variant::x_full: return liouvillian_x_full(c, dim, renormalized);
    case Variant::x_rwa: return liouvillian_x_rwa(c, dim, renormalized);
    case Variant::xi_full: return liouvillian_xi_full(c, dim, renormalized);
    case Variant::xi_rwa: return liouvillian_xi_rwa(c, dim, renormalized);
    case Variant::amp_only: return lindblad_amp(c.gamma, dim);
    case Variant::phase_only: return lindblad_pha(c.gamma, dim);
    case Variant::custom: break;
    }
    throw DomainError("make_liouvillian: custom generators are assembled directly");
}

Eigen::VectorXd effective_hamiltonian(const Liouvillian& L) {
    const CMatrix& h = L.hamiltonian();
    Eigen::VectorXd e(L.dim());
    for (int n = 0; n < L.dim(); ++n) e(n) = h(n, n).real() - h(0, 0).real();
    return e;
}

} // namespace gravvac
