#include "fluxcat/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <thread>

#include "fluxcat/errors.hpp"
#include "fluxcat/numerics.hpp"

namespace fluxcat {

namespace {

double max_branch_speed(const BranchPair& branches) {
    return std::max(norm(branches.v_left), norm(branches.v_right));
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs `work(chunk_index)` for chunk_index in [0, chunks) on `threads`
/// workers, then combines the per-chunk partials in ascending chunk order.
/// The chunk count is fixed by the caller, so the total is bit-identical
/// for any thread count.
double parallel_chunk_sum(int chunks, int threads,
                          const std::function<double(int)>& work) {
    std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
    std::atomic<int> next{0};
    auto body = [&] {
        for (;;) {
            const int c = next.fetch_add(1);
            if (c >= chunks) return;
            partial[static_cast<std::size_t>(c)] = work(c);
        }
    };
    if (threads <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
    CompensatedSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

/// Distinct transverse shells rho^2 = i^2 + j^2 (in grid units) with their
/// multiplicities, ascending. Covers the full (2M+1)^2 transverse plane.
struct TransverseShells {
    std::vector<std::int64_t> rho2;
    std::vector<double> multiplicity;
};

TransverseShells transverse_shells(int max_index) {
    const std::int64_t m = max_index;
    std::vector<std::uint32_t> histogram(static_cast<std::size_t>(2 * m * m + 1), 0);
    for (std::int64_t i = -m; i <= m; ++i)
        for (std::int64_t j = -m; j <= m; ++j)
            ++histogram[static_cast<std::size_t>(i * i + j * j)];
    TransverseShells shells;
    for (std::size_t r = 0; r < histogram.size(); ++r) {
        if (histogram[r] == 0) continue;
        shells.rho2.push_back(static_cast<std::int64_t>(r));
        shells.multiplicity.push_back(static_cast<double>(histogram[r]));
    }
    return shells;
}

constexpr int kChunks = 128;  // fixed so results do not depend on thread count

int component_axis(Vec3 v) {
    // Returns the single axis the vector lies on, -1 if none (zero vector
    // counts as lying on every axis and returns -2).
    const bool on_x = v.y == 0.0 && v.z == 0.0;
    const bool on_y = v.x == 0.0 && v.z == 0.0;
    const bool on_z = v.x == 0.0 && v.y == 0.0;
    if (on_x && on_y && on_z) return -2;
    if (on_x) return 0;
    if (on_y) return 1;
    if (on_z) return 2;
    return -1;
}

double axis_component(Vec3 v, int axis) {
    switch (axis) {
        case 0: return v.x;
        case 1: return v.y;
        default: return v.z;
    }
}

}  // namespace

namespace detail {

bool axis_aligned(const BranchPair& branches, int& axis_out) {
    const int left = component_axis(branches.v_left);
    const int right = component_axis(branches.v_right);
    if (left == -1 || right == -1) return false;
    if (left == -2 && right == -2) {
        axis_out = 2;
        return true;
    }
    if (left == -2) {
        axis_out = right;
        return true;
    }
    if (right == -2 || left == right) {
        axis_out = left;
        return true;
    }
    return false;
}

}  // namespace detail

Lattice build_lattice(const LatticeSpec& spec) {
    const auto c = constants();
    const Material& mat = spec.material;
    if (!(spec.box_length > 0.0))
        throw ValidationError("LatticeSpec: box_length must be > 0");
    if (spec.max_mode_index < 1)
        throw ValidationError("LatticeSpec: max_mode_index must be >= 1");

    const double speed = max_branch_speed(spec.branches);
    if (speed >= mat.critical_velocity)
        throw ValidationError("LatticeSpec: branch speed reaches v_crit; "
                              "the branch pair is unphysical");

    const double b = 2.0 * std::numbers::pi / spec.box_length;
    const double xi_spacing = c.reduced_planck * mat.fermi_velocity * b;
    if (xi_spacing > 0.25 * mat.gap * (1.0 + 1e-12))
        throw ValidationError(
            "LatticeSpec: mode spacing cannot resolve the coherence peak: "
            "hbar*v_F*(2*pi/box_length) = " + std::to_string(xi_spacing) +
            " J exceeds gap/4 = " + std::to_string(0.25 * mat.gap) + " J");

    const double boosted_radius =
        mat.fermi_momentum + c.electron_mass * speed / c.reduced_planck;
    if (!(boosted_radius < spec.max_mode_index * b))
        throw ValidationError(
            "LatticeSpec: boosted Fermi sphere is clipped by the grid: need "
            "k_F + m*max|v|/hbar < max_mode_index * (2*pi/box_length)");

    const std::uint64_t per_axis = 2ULL * static_cast<std::uint64_t>(spec.max_mode_index) + 1ULL;
    const std::uint64_t modes = 2ULL * per_axis * per_axis * per_axis;  // 2 spins
    const std::uint64_t m64 = static_cast<std::uint64_t>(spec.max_mode_index);
    const std::uint64_t memory = (2ULL * m64 * m64 + 1ULL) * 20ULL;  // shell table, approx
    if (modes > spec.max_modes)
        throw ResourceLimitError(
            "LatticeSpec: " + std::to_string(modes) + " modes exceed the configured limit " +
            std::to_string(spec.max_modes) + " (approx. working memory " +
            std::to_string(memory / (1024 * 1024)) + " MiB)");

    Lattice lattice;
    lattice.spec_ = spec;
    lattice.mode_spacing_ = b;
    lattice.mode_count_ = modes;
    lattice.memory_estimate_bytes_ = memory;
    return lattice;
}

namespace detail {

namespace {

/// |n_L - n_R| summed over the cube when both branch velocities lie on one
/// axis: group the two transverse index axes into shells rho^2 with integer
/// multiplicity, leaving a 1-D scan along the boost axis per shell.
double exact_sum_axis_aligned(const Lattice& lattice, int axis) {
    const auto c = constants();
    const LatticeSpec& spec = lattice.spec();
    const Material& mat = spec.material;
    const int m = spec.max_mode_index;
    const double b = lattice.mode_spacing();
    const double shift_l =
        c.electron_mass * axis_component(spec.branches.v_left, axis) / c.reduced_planck;
    const double shift_r =
        c.electron_mass * axis_component(spec.branches.v_right, axis) / c.reduced_planck;
    const double hh = c.reduced_planck * c.reduced_planck / (2.0 * c.electron_mass);
    const double eps_f = mat.fermi_energy;
    const double gap2 = mat.gap * mat.gap;

    const auto shells = transverse_shells(m);
    const int n_axis = 2 * m + 1;
    std::vector<double> zl2(static_cast<std::size_t>(n_axis));
    std::vector<double> zr2(static_cast<std::size_t>(n_axis));
    for (int k = -m; k <= m; ++k) {
        const double kb = k * b;
        zl2[static_cast<std::size_t>(k + m)] = (kb - shift_l) * (kb - shift_l);
        zr2[static_cast<std::size_t>(k + m)] = (kb - shift_r) * (kb - shift_r);
    }

    const std::size_t n_shells = shells.rho2.size();
    const double bb = b * b;
    auto chunk_sum = [&](int chunk) {
        const std::size_t lo = n_shells * static_cast<std::size_t>(chunk) / kChunks;
        const std::size_t hi = n_shells * (static_cast<std::size_t>(chunk) + 1) / kChunks;
        CompensatedSum acc;
        for (std::size_t s = lo; s < hi; ++s) {
            const double a = static_cast<double>(shells.rho2[s]) * bb;
            double line = 0.0;
            for (int k = 0; k < n_axis; ++k) {
                const double xi_l = hh * (a + zl2[static_cast<std::size_t>(k)]) - eps_f;
                const double xi_r = hh * (a + zr2[static_cast<std::size_t>(k)]) - eps_f;
                // |n_L - n_R| = |xi_R/Omega_R - xi_L/Omega_L| / 2; the
                // ratio form avoids the 1 - xi/Omega cancellation.
                const double rl = xi_l / std::sqrt(xi_l * xi_l + gap2);
                const double rr = xi_r / std::sqrt(xi_r * xi_r + gap2);
                line += std::fabs(rr - rl);
            }
            acc.add(0.5 * line * shells.multiplicity[s]);
        }
        return acc.value();
    };
    return parallel_chunk_sum(kChunks, resolve_threads(spec.threads), chunk_sum);
}

double exact_sum_general(const Lattice& lattice) {
    const auto c = constants();
    const LatticeSpec& spec = lattice.spec();
    const Material& mat = spec.material;
    const int m = spec.max_mode_index;
    const double b = lattice.mode_spacing();
    const double scale = c.electron_mass / c.reduced_planck;
    const Vec3 sl = scale * spec.branches.v_left;
    const Vec3 sr = scale * spec.branches.v_right;
    const double hh = c.reduced_planck * c.reduced_planck / (2.0 * c.electron_mass);
    const double eps_f = mat.fermi_energy;
    const double gap2 = mat.gap * mat.gap;

    const int n_axis = 2 * m + 1;
    auto chunk_sum = [&](int chunk) {
        const int lo = -m + n_axis * chunk / kChunks;
        const int hi = -m + n_axis * (chunk + 1) / kChunks;
        CompensatedSum acc;
        for (int i = lo; i < hi; ++i) {
            for (int j = -m; j <= m; ++j) {
                double line = 0.0;
                for (int k = -m; k <= m; ++k) {
                    const Vec3 q{i * b, j * b, k * b};
                    const Vec3 kl = q - sl;
                    const Vec3 kr = q - sr;
                    const double xi_l = hh * dot(kl, kl) - eps_f;
                    const double xi_r = hh * dot(kr, kr) - eps_f;
                    const double rl = xi_l / std::sqrt(xi_l * xi_l + gap2);
                    const double rr = xi_r / std::sqrt(xi_r * xi_r + gap2);
                    line += std::fabs(rr - rl);
                }
                acc.add(0.5 * line);
            }
        }
        return acc.value();
    };
    return parallel_chunk_sum(kChunks, resolve_threads(spec.threads), chunk_sum);
}

double first_order_sum_axis_aligned(const Lattice& lattice, int axis) {
    const auto c = constants();
    const LatticeSpec& spec = lattice.spec();
    const Material& mat = spec.material;
    const int m = spec.max_mode_index;
    const double b = lattice.mode_spacing();
    const double dv = axis_component(spec.branches.delta_v(), axis);
    const double hh = c.reduced_planck * c.reduced_planck / (2.0 * c.electron_mass);
    const double eps_f = mat.fermi_energy;
    const double gap2 = mat.gap * mat.gap;
    const double hbar_dv = c.reduced_planck * std::fabs(dv);

    const auto shells = transverse_shells(m);
    const std::size_t n_shells = shells.rho2.size();
    const double bb = b * b;
    auto chunk_sum = [&](int chunk) {
        const std::size_t lo = n_shells * static_cast<std::size_t>(chunk) / kChunks;
        const std::size_t hi = n_shells * (static_cast<std::size_t>(chunk) + 1) / kChunks;
        CompensatedSum acc;
        for (std::size_t s = lo; s < hi; ++s) {
            const double a = static_cast<double>(shells.rho2[s]) * bb;
            double line = 0.0;
            for (int k = -m; k <= m; ++k) {
                const double kb = k * b;
                const double x = hh * (a + kb * kb) - eps_f;
                const double omega2 = x * x + gap2;
                const double omega3 = omega2 * std::sqrt(omega2);
                line += gap2 / (2.0 * omega3) * hbar_dv * std::fabs(kb);
            }
            acc.add(line * shells.multiplicity[s]);
        }
        return acc.value();
    };
    return parallel_chunk_sum(kChunks, resolve_threads(spec.threads), chunk_sum);
}

double first_order_sum_general(const Lattice& lattice) {
    const auto c = constants();
    const LatticeSpec& spec = lattice.spec();
    const Material& mat = spec.material;
    const int m = spec.max_mode_index;
    const double b = lattice.mode_spacing();
    const Vec3 dv = spec.branches.delta_v();
    const double hh = c.reduced_planck * c.reduced_planck / (2.0 * c.electron_mass);
    const double eps_f = mat.fermi_energy;
    const double gap2 = mat.gap * mat.gap;

    const int n_axis = 2 * m + 1;
    auto chunk_sum = [&](int chunk) {
        const int lo = -m + n_axis * chunk / kChunks;
        const int hi = -m + n_axis * (chunk + 1) / kChunks;
        CompensatedSum acc;
        for (int i = lo; i < hi; ++i) {
            for (int j = -m; j <= m; ++j) {
                double line = 0.0;
                for (int k = -m; k <= m; ++k) {
                    const Vec3 q{i * b, j * b, k * b};
                    const double x = hh * dot(q, q) - eps_f;
                    const double omega2 = x * x + gap2;
                    const double omega3 = omega2 * std::sqrt(omega2);
                    line += gap2 / (2.0 * omega3) * c.reduced_planck * std::fabs(dot(q, dv));
                }
                acc.add(line);
            }
        }
        return acc.value();
    };
    return parallel_chunk_sum(kChunks, resolve_threads(spec.threads), chunk_sum);
}

}  // namespace

double exact_mode_sum_single_spin(const Lattice& lattice) {
    int axis = 2;
    if (axis_aligned(lattice.spec().branches, axis))
        return exact_sum_axis_aligned(lattice, axis);
    return exact_sum_general(lattice);
}

double first_order_mode_sum_single_spin(const Lattice& lattice) {
    int axis = 2;
    if (axis_aligned(lattice.spec().branches, axis))
        return first_order_sum_axis_aligned(lattice, axis);
    return first_order_sum_general(lattice);
}

}  // namespace detail

LatticeResult exact_delta_N(const Lattice& lattice) {
    const LatticeSpec& spec = lattice.spec();
    const double single_spin = detail::exact_mode_sum_single_spin(lattice);
    const double delta_n = (2.0 * single_spin) / 2.0;  // spin sum, halved

    const Material& mat = spec.material;
    const double volume = spec.box_length * spec.box_length * spec.box_length;
    const double kf3 = mat.fermi_momentum * mat.fermi_momentum * mat.fermi_momentum;
    const double prediction = volume * kf3 * norm(spec.branches.delta_v()) /
                              (4.0 * std::numbers::pi * std::numbers::pi *
                               mat.fermi_velocity);

    LatticeResult result;
    result.delta_N_lattice = delta_n;
    result.delta_N_continuum_prediction = prediction;
    result.mode_count = lattice.mode_count();
    result.box_length = spec.box_length;
    result.max_mode_index = spec.max_mode_index;
    if (prediction == 0.0) {
        result.exact_zero = delta_n == 0.0;
        result.relative_deviation = result.exact_zero ? 0.0 : HUGE_VAL;
    } else {
        result.relative_deviation = std::fabs(delta_n - prediction) / prediction;
    }
    return result;
}

double first_order_delta_N(const Lattice& lattice) {
    const Material& mat = lattice.spec().material;
    const BranchPair& branches = lattice.spec().branches;
    if (validity(mat, branches.v_left).status == ValidityStatus::invalid ||
        validity(mat, branches.v_right).status == ValidityStatus::invalid)
        throw ValidationError("first_order_delta_N: branch expansion ratio is in the "
                              "invalid band (>= 0.5)");
    const double single_spin = detail::first_order_mode_sum_single_spin(lattice);
    return (2.0 * single_spin) / 2.0;
}

std::vector<LatticeResult> convergence_study(const LatticeSpec& base_spec, int levels) {
    if (levels < 2)
        throw ValidationError("convergence_study: levels must be >= 2");
    std::vector<LatticeResult> results;
    results.reserve(static_cast<std::size_t>(levels));
    for (int level = 0; level < levels; ++level) {
        LatticeSpec spec = base_spec;
        const int factor = 1 << level;
        if (base_spec.max_mode_index > (1 << 24) / factor)
            throw ResourceLimitError("convergence_study: refined max_mode_index overflows "
                                     "a practical grid size");
        spec.box_length = base_spec.box_length * factor;
        spec.max_mode_index = base_spec.max_mode_index * factor;
        results.push_back(exact_delta_N(build_lattice(spec)));
    }
    return results;
}

LatticeSpec study_spec(double gap_ratio, double delta_v_ratio, double margin, int threads) {
    const auto c = constants();
    LatticeSpec spec;
    spec.material = make_material_with_gap_ratio("lattice-oracle", 1.0e6, gap_ratio);
    const Material& mat = spec.material;

    const double dv = delta_v_ratio * mat.critical_velocity;
    spec.branches = BranchPair{Vec3{0.0, 0.0, +0.5 * dv}, Vec3{0.0, 0.0, -0.5 * dv}};

    // Spacing just under the gap/4 resolution limit; cube `margin` times
    // the boosted Fermi radius.
    const double b_limit = 0.25 * mat.gap / (c.reduced_planck * mat.fermi_velocity);
    const double b = b_limit / 1.02;
    spec.box_length = 2.0 * std::numbers::pi / b;
    const double boosted_radius =
        mat.fermi_momentum + c.electron_mass * (0.5 * dv) / c.reduced_planck;
    spec.max_mode_index = static_cast<int>(std::ceil(margin * boosted_radius / b));
    spec.max_modes = 200'000'000'000ULL;  // the study streams; see module notes
    spec.threads = threads;
    return spec;
}

}  // namespace fluxcat
