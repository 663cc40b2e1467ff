// Few-photon Fock states over four spatial modes, each carrying a matched or
// orthogonal spectral tag, and linear-network evolution by multinomial
// expansion of the transformed creation operators.
#ifndef SPS_FOCK_HPP
#define SPS_FOCK_HPP

#include "sps/interference.hpp"

#include <array>
#include <cstdint>
#include <map>

namespace sps {

inline constexpr int kSpatialModes = 4;
inline constexpr int kMaxPhotons = 4;

// Occupation index 2*mode + tag, tag 0 = matched, 1 = orthogonal.
using Occupation = std::array<std::uint8_t, 2 * kSpatialModes>;

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int total_photons(const Occupation& occ)
{
    int n = 0;
    for (const auto x : occ) n += x;
    return n;
}

inline int photons_in_mode(const Occupation& occ, int mode)
{
    return occ[2 * mode] + occ[2 * mode + 1];
}

struct PhotonicState {
    std::map<Occupation, Complex> terms;

    PhotonicState& add(const Occupation& occ, Complex amp)
    {
        if (total_photons(occ) > kMaxPhotons) {
            throw CapacityError("PhotonicState: more than 4 photons");
        }
        terms[occ] += amp;
        return *this;
    }

    double norm_squared() const
    {
        double n = 0.0;
        for (const auto& [occ, amp] : terms) n += std::norm(amp);
        return n;
    }

    Complex inner(const PhotonicState& other) const  // <this|other>
    {
        Complex s = 0.0;
        for (const auto& [occ, amp] : terms) {
            if (const auto it = other.terms.find(occ); it != other.terms.end()) {
                s += std::conj(amp) * it->second;
            }
        }
        return s;
    }

    void prune(double eps = 1e-15)
    {
        for (auto it = terms.begin(); it != terms.end();) {
            it = std::abs(it->second) < eps ? terms.erase(it) : std::next(it);
        }
    }
};

// One splitter of the network: creation operators transform as
//   a+_a -> u(0,0) a+_a + u(1,0) a+_b,   a+_b -> u(0,1) a+_a + u(1,1) a+_b,
// identically for both spectral tags.
struct NetworkElement {
    int mode_a = 0;
    int mode_b = 1;
    Eigen::Matrix2cd u;
};

struct LinearNetwork {
    std::vector<NetworkElement> elements;
};

// For BeamSplitter the creation operators happen to transform with the same
// matrix as the annihilation-operator input-output relation.
inline NetworkElement network_element(const BeamSplitter& bs, int mode_a, int mode_b)
{
    return NetworkElement{mode_a, mode_b, bs.unitary()};
}

PhotonicState apply_element(const PhotonicState& state, const NetworkElement& el);
PhotonicState apply_network(const PhotonicState& state, const LinearNetwork& net);

// Composite action on the 8 tagged creation operators; used to verify network
// unitarity.
Eigen::MatrixXcd network_mode_matrix(const LinearNetwork& net);

}  // namespace sps

#endif
