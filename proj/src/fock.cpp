#include "sps/fock.hpp"

namespace sps {

namespace {

double factorial(int n)
{
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

double binomial(int n, int k)
{
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// Beam-splitter action on one spectral tag of one term. Slots sa, sb are
// occupation indices holding n and m photons; expand
//   (u00 a+ + u10 b+)^n (u01 a+ + u11 b+)^m |vac>
// and deposit each monomial with its bosonic normalization.
void expand_pair(const Occupation& base, Complex amp, int sa, int sb,
                 const Eigen::Matrix2cd& u, PhotonicState& out)
{
    const int n = base[sa];
    const int m = base[sb];
    Occupation stripped = base;
    stripped[sa] = 0;
    stripped[sb] = 0;
    if (n == 0 && m == 0) {
        out.add(stripped, amp);
        return;
    }
    const double src_norm = 1.0 / std::sqrt(factorial(n) * factorial(m));
    for (int k = 0; k <= n; ++k) {
        for (int l = 0; l <= m; ++l) {
            const int na = k + l;            // photons ending up in slot sa
            const int nb = n - k + m - l;    // photons ending up in slot sb
            const Complex c = binomial(n, k) * binomial(m, l) *
                              std::pow(u(0, 0), k) * std::pow(u(1, 0), n - k) *
                              std::pow(u(0, 1), l) * std::pow(u(1, 1), m - l);
            Occupation occ = stripped;
            occ[sa] = static_cast<std::uint8_t>(na);
            occ[sb] = static_cast<std::uint8_t>(nb);
            out.add(occ, amp * src_norm * c * std::sqrt(factorial(na) * factorial(nb)));
        }
    }
}

}  // namespace

PhotonicState apply_element(const PhotonicState& state, const NetworkElement& el)
{
    PhotonicState mid;
    for (const auto& [occ, amp] : state.terms) {
        if (total_photons(occ) > kMaxPhotons) {
            throw CapacityError("apply_element: more than 4 photons");
        }
        expand_pair(occ, amp, 2 * el.mode_a, 2 * el.mode_b, el.u, mid);
    }
    PhotonicState out;
    for (const auto& [occ, amp] : mid.terms) {
        expand_pair(occ, amp, 2 * el.mode_a + 1, 2 * el.mode_b + 1, el.u, out);
    }
    out.prune();
    return out;
}

PhotonicState apply_network(const PhotonicState& state, const LinearNetwork& net)
{
    PhotonicState cur = state;
    for (const auto& el : net.elements) cur = apply_element(cur, el);
    return cur;
}

Eigen::MatrixXcd network_mode_matrix(const LinearNetwork& net)
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * kSpatialModes, 2 * kSpatialModes);
    for (const auto& el : net.elements) {
        Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(2 * kSpatialModes, 2 * kSpatialModes);
        for (int tag = 0; tag < 2; ++tag) {
            const int a = 2 * el.mode_a + tag;
            const int b = 2 * el.mode_b + tag;
            step(a, a) = el.u(0, 0);
            step(b, a) = el.u(1, 0);
            step(a, b) = el.u(0, 1);
            step(b, b) = el.u(1, 1);
        }
        m = step * m;
    }
    return m;
}

}  // namespace sps
