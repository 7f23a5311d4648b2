#pragma once

#include "gravvac/coeffs.hpp"
#include "gravvac/fock.hpp"

#include <string>
#include <vector>

namespace gravvac {

enum class Variant { x_full, x_rwa, xi_full, xi_rwa, amp_only, phase_only, custom };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);
bool is_full(Variant v);

/// Which group of the master equation a sandwich term belongs to.
enum class TermGroup { dissipator, counter_rotating_plus, counter_rotating_b4, counter_rotating_b4dag, other };

/// coeff * left * rho * right
struct SandwichTerm {
    cplx coeff;
    CMatrix left;
    CMatrix right;
    TermGroup group = TermGroup::other;
};

/// L[rho] = -i [H, rho] + sum_k c_k A_k rho B_k, with omega = 1.
class Liouvillian {
public:
    Liouvillian() = default;
    Liouvillian(int dim, Variant variant, CMatrix hamiltonian, std::vector<SandwichTerm> terms,
                VacuumCoefficients coeffs = {}, bool renormalized = true);

    int dim() const { return dim_; }
    Variant variant() const { return variant_; }
    const VacuumCoefficients& coeffs() const { return coeffs_; }
    bool renormalized() const { return renormalized_; }
    const CMatrix& hamiltonian() const { return hamiltonian_; }
    const std::vector<SandwichTerm>& terms() const { return terms_; }
    std::vector<SandwichTerm>& mutable_terms() { return terms_; }

    /// Matrix-free application.
    CMatrix apply(const CMatrix& rho) const;
    CMatrix operator()(const CMatrix& rho) const { return apply(rho); }

    /// N^2 x N^2 matrix under column-major vectorization; dim <= 32 only.
    CMatrix dense() const;

private:
    int dim_ = 0;
    Variant variant_ = Variant::custom;
    CMatrix hamiltonian_;
    std::vector<SandwichTerm> terms_;
    VacuumCoefficients coeffs_;
    bool renormalized_ = true;
};

inline constexpr int kDenseLimit = 32;

/// Gamma D[A] as three sandwich terms.
std::vector<SandwichTerm> dissipator_terms(double rate, const CMatrix& jump);

Liouvillian liouvillian_x_rwa(const VacuumCoefficients& c, int dim, bool renormalized = true);
Liouvillian liouvillian_xi_rwa(const VacuumCoefficients& c, int dim, bool renormalized = true);
Liouvillian liouvillian_x_full(const VacuumCoefficients& c, int dim, bool renormalized = true);
Liouvillian liouvillian_xi_full(const VacuumCoefficients& c, int dim, bool renormalized = true);
Liouvillian lindblad_amp(double rate, int dim);
Liouvillian lindblad_pha(double rate, int dim);
Liouvillian zero_generator(int dim);

/// Dispatch on variant; amp/pha use c.gamma as rate.
Liouvillian make_liouvillian(Variant v, const VacuumCoefficients& c, int dim, bool renormalized = true);

/// E_n with the unitary part equal to -i [diag(E), .].
Eigen::VectorXd effective_hamiltonian(const Liouvillian& L);

/// The shift pair (plus, minus) a variant uses under the renormalized flag.
std::pair<double, double> active_shifts(Variant v, const VacuumCoefficients& c, bool renormalized);

} // namespace gravvac
