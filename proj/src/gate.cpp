#include "sps/gate.hpp"

#include "sps/parallel.hpp"

#include <limits>
#include <random>

namespace sps {

namespace {

constexpr int kDetectorA = 2;
constexpr int kDetectorB = 3;

Occupation vacuum()
{
    return Occupation{};
}

}  // namespace

LinearNetwork cs_gate_network()
{
    const double c = 1.0 / std::sqrt(3.0);
    const double s = std::sqrt(2.0 / 3.0);
    const double c4 = std::sqrt((3.0 + std::sqrt(6.0)) / 6.0);
    const double s4 = std::sqrt((3.0 - std::sqrt(6.0)) / 6.0);

    auto mat = [](double m00, double m01, double m10, double m11) {
        Eigen::Matrix2cd u;
        u << m00, m01, m10, m11;
        return u;
    };

    LinearNetwork net;
    net.elements.push_back({0, 2, mat(c, -s, s, c)});
    net.elements.push_back({1, 3, mat(-c, s, s, c)});
    net.elements.push_back({0, 1, mat(-c, -s, -s, c)});
    net.elements.push_back({kDetectorA, kDetectorB, mat(c4, s4, -s4, c4)});
    return net;
}

PhotonicState gate_input_state(const GateInput& in, Complex helper_overlap)
{
    const Complex cm = helper_overlap;
    const double so = std::sqrt(std::max(0.0, 1.0 - std::norm(cm)));

    PhotonicState state;
    const Complex amps[4] = {in.a00, in.a01, in.a10, in.a11};
    for (int q = 0; q < 4; ++q) {
        if (amps[q] == Complex(0.0)) continue;
        Occupation occ = vacuum();
        occ[2 * 0] = static_cast<std::uint8_t>((q >> 1) & 1);  // qubit 0, matched
        occ[2 * 1] = static_cast<std::uint8_t>(q & 1);         // qubit 1, matched
        occ[2 * kDetectorA] = 1;                               // helper, matched
        Occupation matched = occ;
        matched[2 * kDetectorB] = 1;
        state.add(matched, amps[q] * cm);
        if (so > 0.0) {
            Occupation orth = occ;
            orth[2 * kDetectorB + 1] = 1;
            state.add(orth, amps[q] * so);
        }
    }
    state.prune();
    return state;
}

PostselectionResult postselect_11(const PhotonicState& state)
{
    std::map<std::pair<int, int>, PhotonicState> groups;
    for (const auto& [occ, amp] : state.terms) {
        if (photons_in_mode(occ, kDetectorA) != 1 || photons_in_mode(occ, kDetectorB) != 1) {
            continue;
        }
        const int tag_a = occ[2 * kDetectorA + 1] == 1 ? 1 : 0;
        const int tag_b = occ[2 * kDetectorB + 1] == 1 ? 1 : 0;
        Occupation stripped = occ;
        stripped[2 * kDetectorA] = stripped[2 * kDetectorA + 1] = 0;
        stripped[2 * kDetectorB] = stripped[2 * kDetectorB + 1] = 0;
        groups[{tag_a, tag_b}].add(stripped, amp);
    }

    PostselectionResult result;
    for (auto& [key, branch] : groups) {
        branch.prune();
        if (branch.terms.empty()) continue;
        result.success_probability += branch.norm_squared();
        result.branches.push_back(std::move(branch));
    }
    return result;
}

PhotonicState ideal_gate_output(const GateInput& in)
{
    const auto out = apply_network(gate_input_state(in, 1.0), cs_gate_network());
    auto ps = postselect_11(out);
    if (ps.branches.size() != 1 || ps.success_probability <= 0.0) {
        throw UndefinedFidelityError("ideal_gate_output: postselection failed");
    }
    PhotonicState ideal = std::move(ps.branches.front());
    const double norm = std::sqrt(ideal.norm_squared());
    for (auto& [occ, amp] : ideal.terms) amp /= norm;
    return ideal;
}

double jittered_gate_fidelity(const GateInput& in, double epsilon, const JitterModel& jm)
{
    const PhotonicState ideal = ideal_gate_output(in);
    const auto out = apply_network(gate_input_state(in, jm.overlap(epsilon)), cs_gate_network());
    const auto ps = postselect_11(out);
    if (ps.success_probability <= 0.0) {
        throw UndefinedFidelityError("jittered_gate_fidelity: zero success probability");
    }
    double overlap = 0.0;
    for (const auto& branch : ps.branches) {
        overlap += std::norm(ideal.inner(branch));
    }
    return overlap / ps.success_probability;
}

double visibility(double epsilon0, double tau)
{
    if (epsilon0 < 0.0 || tau <= 0.0) {
        throw ParameterError("visibility: need epsilon0 >= 0, tau > 0");
    }
    const double x = epsilon0 / tau;
    if (x < 1e-6) {
        return 1.0 - x / 2.0 + x * x / 6.0;
    }
    return (1.0 - std::exp(-x)) / x;
}

Quadrature gauss_legendre(int n)
{
    if (n < 1) throw ParameterError("gauss_legendre: n >= 1");
    Quadrature q;
    q.nodes.assign(n, 0.0);
    q.weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

double mean_gate_fidelity(const GateInput& in, double epsilon0, const JitterModel& jm,
                          int quad_points)
{
    if (epsilon0 == 0.0) {
        return jittered_gate_fidelity(in, 0.0, jm);
    }
    const Quadrature q = gauss_legendre(quad_points);
    double acc = 0.0;
    for (int i = 0; i < quad_points; ++i) {
        const double eps = 0.5 * epsilon0 * (q.nodes[i] + 1.0);
        acc += 0.5 * q.weights[i] * jittered_gate_fidelity(in, eps, jm);
    }
    return acc;
}

std::vector<GateInput> gate_input_search_set()
{
    std::vector<GateInput> inputs;
    auto from_vec = [](const std::array<Complex, 4>& a) {
        return GateInput{a[0], a[1], a[2], a[3]};
    };

    for (int q = 0; q < 4; ++q) {
        std::array<Complex, 4> a{};
        a[q] = 1.0;
        inputs.push_back(from_vec(a));
    }

    const double angles[4] = {M_PI / 10.0, M_PI / 8.0, M_PI / 4.0, 3.0 * M_PI / 8.0};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            for (const double th : angles) {
                std::array<Complex, 4> a{};
                a[i] = std::cos(th);
                a[j] = std::sin(th);
                inputs.push_back(from_vec(a));
            }
        }
    }

    std::mt19937 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int r = 0; r < 50; ++r) {
        std::array<Complex, 4> a{};
        double n2 = 0.0;
        for (auto& c : a) {
            c = Complex(gauss(rng), gauss(rng));
            n2 += std::norm(c);
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& c : a) c *= inv;
        inputs.push_back(from_vec(a));
    }
    return inputs;
}

std::vector<double> default_epsilon0_grid()
{
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.001);
    return grid;
}

std::vector<FidelityCurvePoint> min_fidelity_curve(const std::vector<double>& epsilon0_over_tau,
                                                   const std::vector<GateInput>& inputs,
                                                   int quad_points)
{
    if (inputs.empty()) throw ParameterError("min_fidelity_curve: empty input set");
    const JitterModel jm{1.0};
    std::vector<FidelityCurvePoint> curve(epsilon0_over_tau.size());
    parallel_for(epsilon0_over_tau.size(), [&](std::size_t p) {
        const double eps0 = epsilon0_over_tau[p];
        FidelityCurvePoint point;
        point.epsilon0 = eps0;
        point.visibility = visibility(eps0, 1.0);
        point.min_fidelity = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const double f = mean_gate_fidelity(inputs[i], eps0, jm, quad_points);
            if (f < point.min_fidelity) {
                point.min_fidelity = f;
                point.worst_input = i;
            }
        }
        curve[p] = point;
    });
    return curve;
}

RationalFit fit_fidelity_vs_visibility(const std::vector<FidelityCurvePoint>& curve)
{
    if (curve.size() < 5) throw ParameterError("fit_fidelity_vs_visibility: need >= 5 points");
    const auto n = static_cast<Eigen::Index>(curve.size());
    Eigen::MatrixXd a(n, 5);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = curve[i].visibility;
        const double f = curve[i].min_fidelity;
        a(i, 0) = 1.0;
        a(i, 1) = v;
        a(i, 2) = v * v;
        a(i, 3) = -f * v;
        a(i, 4) = -f * v * v;
        b(i) = f;
    }
    const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    RationalFit fit;
    fit.c0 = x(0);
    fit.c1 = x(1);
    fit.c2 = x(2);
    fit.d1 = x(3);
    fit.d2 = x(4);
    fit.max_residual = 0.0;
    for (const auto& pt : curve) {
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(pt.min_fidelity - fit(pt.visibility)));
    }
    return fit;
}

}  // namespace sps
