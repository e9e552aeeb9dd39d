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

#ifndef _CVTELE_MCORACLE_H
#define _CVTELE_MCORACLE_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvtele/linmode.h"
#include "cvtele/teleporter.h"

/// Shot-by-shot Monte Carlo re-estimation of the teleportation criteria.
///
/// Every shot draws the input quadratures and every latent noise mode from independent
/// GaussianStreams, forms the output record through the linear map, and accumulates
/// input/output co-moments. Shots are processed in fixed chunks of CHUNK_SHOTS; chunk results
/// are merged in chunk order, so the result is bit-identical for any worker count.
namespace cvtele {

constexpr uint64_t CHUNK_SHOTS = uint64_t{1} << 16;
constexpr uint64_t MIN_SHOTS = 100;

/// Mergeable first and second co-moments of a pair of records (x = input, y = output).
struct CoMoments {
    uint64_t n = 0;
    double mean_x = 0;
    double mean_y = 0;
    double m2_x = 0;
    double m2_y = 0;
    double c_xy = 0;

    /// Two-pass moments of equal-length records.
    static CoMoments of(const double *x, const double *y, size_t n);
    /// Chan et al. pairwise combination.
    void merge(const CoMoments &other);

    /// Unbiased (n - 1) estimators.
    double var_x() const {
        return m2_x / static_cast<double>(n - 1);
    }
    double var_y() const {
        return m2_y / static_cast<double>(n - 1);
    }
    double cov_xy() const {
        return c_xy / static_cast<double>(n - 1);
    }
};

struct QuadratureRecords {
    CoMoments plus;
    CoMoments minus;
};

/// Runs the shots and returns the per-quadrature co-moments. Test signals s+- from `in`
/// are added to the input record as a constant offset.
/// workers == 0 uses the hardware concurrency.
QuadratureRecords simulate(const Teleporter &t, const InputState &in, uint64_t n_shots, uint64_t seed,
                           unsigned workers = 0);

struct Estimate {
    double value;
    double std_error;
};

struct SampleStats {
    uint64_t n_shots;
    uint64_t seed;
    Estimate v_in_plus;
    Estimate v_in_minus;
    Estimate v_out_plus;
    Estimate v_out_minus;
    Estimate cov_plus;
    Estimate cov_minus;
    Estimate c_plus;
    Estimate c_minus;
    /// Signal transfer through the identity T_s = C, i.e. the squared sample correlation.
    Estimate ts_plus;
    Estimate ts_minus;
    Estimate vcv_plus;
    Estimate vcv_minus;
    Estimate t_t;
    Estimate v_t;
    Estimate c_f;
    Estimate v_cvf;
};

/// Sample estimates of every criterion, with delta-method standard errors under Gaussian
/// moment statistics (Var S = 2 sigma^4 / (n-1) and its bivariate generalisation).
/// Standard errors are positive except for degenerate records such as output == input.
///
/// Throws std::invalid_argument if n_shots < MIN_SHOTS, std::domain_error if a quadrature
/// output carries neither signal nor noise.
SampleStats sample_criteria(const Teleporter &t, const InputState &in, uint64_t n_shots, uint64_t seed,
                            unsigned workers = 0);

struct InjectedTransfer {
    /// Present for each quadrature with a non-zero test signal.
    std::optional<Estimate> ts_plus;
    std::optional<Estimate> ts_minus;
};

/// Signal transfer from injected test signals: SNR = mean^2 / variance on the input and output
/// records, T_s = SNR_out / SNR_in. The signal is a constant offset on the quadrature record.
/// Throws std::invalid_argument if both signal amplitudes are zero or n_shots < MIN_SHOTS.
InjectedTransfer sample_signal_transfer(const Teleporter &t, const InputState &in, uint64_t n_shots, uint64_t seed,
                                        unsigned workers = 0);

struct VerificationRow {
    std::string quantity;
    double analytic;
    Estimate estimate;
    bool pass;
};

constexpr double DEFAULT_SIGMAS = 5;

/// |analytic - estimate| <= sigmas * std_error + 1e-9 * max(1, |analytic|).
/// The absolute slack admits floating rounding when a record is reproduced exactly.
bool within_error(double analytic, const Estimate &estimate, double sigmas = DEFAULT_SIGMAS);

/// Analytic-versus-sampled comparison for every criterion, plus the injected-signal transfers
/// when given.
std::vector<VerificationRow> verification_table(const Teleporter &t, const InputState &in, const SampleStats &stats,
                                                const InjectedTransfer *injected = nullptr,
                                                double sigmas = DEFAULT_SIGMAS);

}  // namespace cvtele

#endif
