// Copyright 2026 The cvtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvtele/mcoracle.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cvtele/criteria.h"
#include "cvtele/gaussian_stream.h"

namespace cvtele {

namespace {

// Counter word 1 of the Philox block separates input streams from latent-mode streams,
// so user-chosen mode ids can never collide with the input quadratures.
constexpr uint64_t INPUT_DOMAIN = 0;
constexpr uint64_t NOISE_DOMAIN = 1;
constexpr uint64_t PLUS_INPUT_STREAM = 0;
constexpr uint64_t MINUS_INPUT_STREAM = 1;

constexpr double FD_STEP = 1e-5;

void require_shots(uint64_t n_shots) {
    if (n_shots < MIN_SHOTS) {
        throw std::invalid_argument("need at least " + std::to_string(MIN_SHOTS) + " shots");
    }
}

void require_defined_output(const QuadratureMap &map) {
    if (map.gain() == 0 && added_noise_variance(map) == 0) {
        throw std::domain_error("quadrature output carries neither signal nor noise");
    }
}

CoMoments simulate_chunk(
    const QuadratureMap &map, double v_in, double signal, uint64_t input_stream, uint64_t seed, uint64_t first,
    size_t len) {
    std::vector<double> x(len), y(len), z(len);
    GaussianStream(seed, input_stream, INPUT_DOMAIN).fill(first, x);
    const double sd_in = std::sqrt(v_in);
    for (size_t k = 0; k < len; ++k) {
        x[k] = signal + sd_in * x[k];
        y[k] = map.gain() * x[k];
    }
    for (const auto &term : map.noise()) {
        GaussianStream(seed, term.id.value, NOISE_DOMAIN).fill(first, z);
        const double scale = term.coefficient * std::sqrt(term.variance);
        for (size_t k = 0; k < len; ++k) {
            y[k] += scale * z[k];
        }
    }
    return CoMoments::of(x.data(), y.data(), len);
}

/// First-order error propagation: sqrt(grad^T cov grad) with a central-difference gradient.
template <size_t N, typename F>
double delta_method(F f, const std::array<double, N> &theta, const std::array<std::array<double, N>, N> &cov,
                    const std::array<double, N> &step) {
    std::array<double, N> grad{};
    for (size_t i = 0; i < N; ++i) {
        if (step[i] == 0) {
            continue;
        }
        auto up = theta;
        auto down = theta;
        up[i] += step[i];
        down[i] -= step[i];
        grad[i] = (f(up) - f(down)) / (2 * step[i]);
    }
    double q = 0;
    for (size_t i = 0; i < N; ++i) {
        for (size_t j = 0; j < N; ++j) {
            q += grad[i] * cov[i][j] * grad[j];
        }
    }
    return std::sqrt(std::max(0.0, q));
}

// Second-moment parameter layout per quadrature: {S_xx, S_yy, S_xy}.
using Sigma2 = std::array<std::array<double, 2>, 2>;

/// Cov(S_ab, S_cd) = (s_ac s_bd + s_ad s_bc) / (n - 1) for Gaussian records.
std::array<std::array<double, 3>, 3> second_moment_cov(double sxx, double syy, double sxy, uint64_t n) {
    Sigma2 s{{{sxx, sxy}, {sxy, syy}}};
    const std::array<std::array<int, 2>, 3> idx{{{0, 0}, {1, 1}, {0, 1}}};
    std::array<std::array<double, 3>, 3> out{};
    for (size_t i = 0; i < 3; ++i) {
        for (size_t j = 0; j < 3; ++j) {
            int a = idx[i][0], b = idx[i][1], c = idx[j][0], d = idx[j][1];
            out[i][j] = (s[a][c] * s[b][d] + s[a][d] * s[b][c]) / static_cast<double>(n - 1);
        }
    }
    return out;
}

std::array<double, 3> second_moment_steps(double sxx, double syy) {
    return {FD_STEP * sxx, FD_STEP * syy, FD_STEP * std::sqrt(sxx * syy)};
}

}  // namespace

CoMoments CoMoments::of(const double *x, const double *y, size_t n) {
    CoMoments m;
    m.n = n;
    if (n == 0) {
        return m;
    }
    double sx = 0, sy = 0;
    for (size_t k = 0; k < n; ++k) {
        sx += x[k];
        sy += y[k];
    }
    m.mean_x = sx / static_cast<double>(n);
    m.mean_y = sy / static_cast<double>(n);
    for (size_t k = 0; k < n; ++k) {
        double dx = x[k] - m.mean_x;
        double dy = y[k] - m.mean_y;
        m.m2_x += dx * dx;
        m.m2_y += dy * dy;
        m.c_xy += dx * dy;
    }
    return m;
}

void CoMoments::merge(const CoMoments &o) {
    if (o.n == 0) {
        return;
    }
    if (n == 0) {
        *this = o;
        return;
    }
    double na = static_cast<double>(n);
    double nb = static_cast<double>(o.n);
    double total = na + nb;
    double dx = o.mean_x - mean_x;
    double dy = o.mean_y - mean_y;
    mean_x += dx * nb / total;
    mean_y += dy * nb / total;
    m2_x += o.m2_x + dx * dx * na * nb / total;
    m2_y += o.m2_y + dy * dy * na * nb / total;
    c_xy += o.c_xy + dx * dy * na * nb / total;
    n += o.n;
}

QuadratureRecords simulate(const Teleporter &t, const InputState &in, uint64_t n_shots, uint64_t seed,
                           unsigned workers) {
    require_shots(n_shots);
    const uint64_t n_chunks = (n_shots + CHUNK_SHOTS - 1) / CHUNK_SHOTS;
    std::vector<QuadratureRecords> chunks(n_chunks);

    std::atomic<uint64_t> next{0};
    auto work = [&]() {
        for (uint64_t c = next++; c < n_chunks; c = next++) {
            uint64_t first = c * CHUNK_SHOTS;
            size_t len = static_cast<size_t>(std::min(CHUNK_SHOTS, n_shots - first));
            chunks[c].plus = simulate_chunk(t.plus, in.v_plus(), in.s_plus(), PLUS_INPUT_STREAM, seed, first, len);
            chunks[c].minus =
                simulate_chunk(t.minus, in.v_minus(), in.s_minus(), MINUS_INPUT_STREAM, seed, first, len);
        }
    };

    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<uint64_t>(workers, n_chunks));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    QuadratureRecords total;
    for (const auto &c : chunks) {
        total.plus.merge(c.plus);
        total.minus.merge(c.minus);
    }
    return total;
}

SampleStats sample_criteria(const Teleporter &t, const InputState &in, uint64_t n_shots, uint64_t seed,
                            unsigned workers) {
    require_shots(n_shots);
    require_defined_output(t.plus);
    require_defined_output(t.minus);
    QuadratureRecords rec = simulate(t, in, n_shots, seed, workers);

    // theta = {Sxx+, Syy+, Sxy+, Sxx-, Syy-, Sxy-}
    using Theta = std::array<double, 6>;
    Theta theta{rec.plus.var_x(), rec.plus.var_y(), rec.plus.cov_xy(),
                rec.minus.var_x(), rec.minus.var_y(), rec.minus.cov_xy()};
    std::array<std::array<double, 6>, 6> cov{};
    Theta step{};
    for (size_t q = 0; q < 2; ++q) {
        size_t o = 3 * q;
        auto block = second_moment_cov(theta[o], theta[o + 1], theta[o + 2], n_shots);
        auto st = second_moment_steps(theta[o], theta[o + 1]);
        for (size_t i = 0; i < 3; ++i) {
            step[o + i] = st[i];
            for (size_t j = 0; j < 3; ++j) {
                cov[o + i][o + j] = block[i][j];
            }
        }
    }

    auto corr = [](const Theta &p, size_t o) { return p[o + 2] * p[o + 2] / (p[o] * p[o + 1]); };
    auto vcv = [&](const Theta &p, size_t o) { return p[o + 1] * (1 - corr(p, o)); };
    auto c_f = [](const Theta &p) {
        double s = p[2] + p[5];
        return s * s / ((p[0] + p[3]) * (p[1] + p[4]));
    };

    auto est = [&](auto f) { return Estimate{f(theta), delta_method(f, theta, cov, step)}; };

    SampleStats s{};
    s.n_shots = n_shots;
    s.seed = seed;
    s.v_in_plus = est([](const Theta &p) { return p[0]; });
    s.v_out_plus = est([](const Theta &p) { return p[1]; });
    s.cov_plus = est([](const Theta &p) { return p[2]; });
    s.v_in_minus = est([](const Theta &p) { return p[3]; });
    s.v_out_minus = est([](const Theta &p) { return p[4]; });
    s.cov_minus = est([](const Theta &p) { return p[5]; });
    s.c_plus = est([&](const Theta &p) { return corr(p, 0); });
    s.c_minus = est([&](const Theta &p) { return corr(p, 3); });
    s.ts_plus = s.c_plus;
    s.ts_minus = s.c_minus;
    s.vcv_plus = est([&](const Theta &p) { return vcv(p, 0); });
    s.vcv_minus = est([&](const Theta &p) { return vcv(p, 3); });
    s.t_t = est([&](const Theta &p) { return corr(p, 0) + corr(p, 3); });
    s.v_t = est([&](const Theta &p) { return 0.5 * (vcv(p, 0) + vcv(p, 3)); });
    s.c_f = est(c_f);
    s.v_cvf = est([&](const Theta &p) { return 0.5 * (p[1] + p[4]) * (1 - c_f(p)); });
    return s;
}

namespace {

/// theta = {mean_x, mean_y, Sxx, Syy, Sxy} for one quadrature record pair.
Estimate injected_transfer(const CoMoments &m) {
    using Theta = std::array<double, 5>;
    const double n = static_cast<double>(m.n);
    Theta theta{m.mean_x, m.mean_y, m.var_x(), m.var_y(), m.cov_xy()};
    std::array<std::array<double, 5>, 5> cov{};
    cov[0][0] = theta[2] / n;
    cov[1][1] = theta[3] / n;
    cov[0][1] = cov[1][0] = theta[4] / n;
    auto block = second_moment_cov(theta[2], theta[3], theta[4], m.n);
    for (size_t i = 0; i < 3; ++i) {
        for (size_t j = 0; j < 3; ++j) {
            cov[2 + i][2 + j] = block[i][j];
        }
    }
    auto st = second_moment_steps(theta[2], theta[3]);
    Theta step{FD_STEP * std::max(std::abs(theta[0]), std::sqrt(theta[2] / n)),
               FD_STEP * std::max(std::abs(theta[1]), std::sqrt(theta[3] / n)), st[0], st[1], st[2]};
    auto f = [](const Theta &p) {
        double snr_in = p[0] * p[0] / p[2];
        double snr_out = p[1] * p[1] / p[3];
        return snr_out / snr_in;
    };
    return Estimate{f(theta), delta_method(f, theta, cov, step)};
}

}  // namespace

InjectedTransfer sample_signal_transfer(const Teleporter &t, const InputState &in, uint64_t n_shots, uint64_t seed,
                                        unsigned workers) {
    require_shots(n_shots);
    if (in.s_plus() == 0 && in.s_minus() == 0) {
        throw std::invalid_argument("signal transfer needs a non-zero test signal on at least one quadrature");
    }
    require_defined_output(t.plus);
    require_defined_output(t.minus);
    QuadratureRecords rec = simulate(t, in, n_shots, seed, workers);
    InjectedTransfer out;
    if (in.s_plus() != 0) {
        out.ts_plus = injected_transfer(rec.plus);
    }
    if (in.s_minus() != 0) {
        out.ts_minus = injected_transfer(rec.minus);
    }
    return out;
}

bool within_error(double analytic, const Estimate &estimate, double sigmas) {
    double slack = sigmas * estimate.std_error + 1e-9 * std::max(1.0, std::abs(analytic));
    return std::abs(analytic - estimate.value) <= slack;
}

std::vector<VerificationRow> verification_table(const Teleporter &t, const InputState &in, const SampleStats &stats,
                                                const InjectedTransfer *injected, double sigmas) {
    CriteriaReport r = classify(t, in);
    std::vector<VerificationRow> rows;
    auto add = [&](std::string name, double analytic, const Estimate &e) {
        rows.push_back(VerificationRow{std::move(name), analytic, e, within_error(analytic, e, sigmas)});
    };
    add("v_out_plus", output_variance(t.plus, in.v_plus()), stats.v_out_plus);
    add("v_out_minus", output_variance(t.minus, in.v_minus()), stats.v_out_minus);
    add("cov_plus", in_out_covariance(t.plus, in.v_plus()), stats.cov_plus);
    add("cov_minus", in_out_covariance(t.minus, in.v_minus()), stats.cov_minus);
    add("ts_plus", r.ts_plus, stats.ts_plus);
    add("ts_minus", r.ts_minus, stats.ts_minus);
    add("c_plus", r.c_plus, stats.c_plus);
    add("c_minus", r.c_minus, stats.c_minus);
    add("vcv_plus", r.vcv_plus, stats.vcv_plus);
    add("vcv_minus", r.vcv_minus, stats.vcv_minus);
    add("t_t", r.t_t, stats.t_t);
    add("v_t", r.v_t, stats.v_t);
    add("c_f", r.c_f, stats.c_f);
    add("v_cvf", r.v_cvf, stats.v_cvf);
    if (injected != nullptr) {
        if (injected->ts_plus) {
            add("ts_plus_injected", r.ts_plus, *injected->ts_plus);
        }
        if (injected->ts_minus) {
            add("ts_minus_injected", r.ts_minus, *injected->ts_minus);
        }
    }
    return rows;
}

}  // namespace cvtele
