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

#include "cvtele/predictions.h"

#include <cmath>

#include "cvtele/criteria.h"
#include "gtest/gtest.h"

using namespace cvtele;

namespace {

double eq_epr(double lambda, double v) {
    return 0.5 * (1 + lambda) * (1 + lambda) * v + 0.5 * (1 - lambda) * (1 - lambda) / v;
}

double eq_single_mode(double lambda, double v) {
    return 0.25 * (1 + lambda) * (1 + lambda) * (1 + v) + 0.25 * (1 - lambda) * (1 - lambda) * (1 + 1 / v);
}

/// Brute-force minimum on a uniform lambda grid over [-2, 2].
template <typename F>
GainOptimum scan_minimum(F f) {
    const int n = 4'000'000;
    GainOptimum best{-2, f(-2)};
    for (int k = 1; k <= n; ++k) {
        double lambda = -2 + 4.0 * k / n;
        double v = f(lambda);
        if (v < best.v_cvf) {
            best = {lambda, v};
        }
    }
    return best;
}

}  // namespace

TEST(predictions, output_variance_symmetric) {
    ASSERT_NEAR(output_variance_symmetric(make_epr(1, 0.25), InputState(0.3, 1 / 0.3), Quadrature::Plus), 0.8, 1e-12);
    ASSERT_NEAR(output_variance_symmetric(make_epr(1, 1), InputState(0.01, 100), Quadrature::Plus), 2.01, 1e-12);
    auto zero_gain = make_epr(0, 0.4);
    ASSERT_NEAR(output_variance_symmetric(zero_gain, InputState(0.2, 5), Quadrature::Plus),
                field_conditional_variance(zero_gain, InputState(0.2, 5)), 1e-12);
    // Non-Epr teleporters use the generic map.
    auto custom = make_custom(QuadratureMap(1, {{ModeId{1}, 1, 1}}), QuadratureMap(0.5, {{ModeId{2}, 1, 1}}));
    ASSERT_EQ(output_variance_symmetric(custom, InputState::vacuum(), Quadrature::Minus), 1.25);
}

TEST(predictions, output_variance_identity_on_grid) {
    for (int i = 0; i <= 20; ++i) {
        double lambda = -2 + 0.2 * i;
        for (int j = 1; j <= 10; ++j) {
            double v_ent = j / 10.0;
            auto t = make_epr(lambda, v_ent);
            for (double v_in : {0.05, 0.3, 1.0, 2.5}) {
                InputState in(v_in, 1 / v_in);
                double generic = output_variance(t.plus, v_in);
                ASSERT_NEAR(symmetric_output_variance(field_conditional_variance(t, in), lambda, v_in), generic,
                            1e-12 * std::max(1.0, generic));
                ASSERT_NO_THROW(output_variance_symmetric(t, in, Quadrature::Minus));
            }
        }
    }
}

TEST(predictions, squeezing_preserved) {
    ASSERT_TRUE(squeezing_preserved(0.5, 1, 0.3));
    ASSERT_FALSE(squeezing_preserved(0.9, 1, 0.5));
    for (double lambda : {-2.0, -0.5, 0.0, 0.3, 1.0, 3.0}) {
        for (double v_in : {1e-6, 0.1, 0.5, 0.99}) {
            ASSERT_FALSE(squeezing_preserved(1.0, lambda, v_in));
        }
    }
    ASSERT_TRUE(squeezing_preserved(make_epr(1, 0.25), 0.3));
    ASSERT_FALSE(squeezing_preserved(make_epr(1, 1), 0.01));
    ASSERT_THROW(squeezing_preserved(make_epr(1, 0.25), 1.2), std::invalid_argument);
    ASSERT_THROW(squeezing_preserved(make_single_mode(1, 0.25), 0.3), std::invalid_argument);
    ASSERT_THROW(squeezing_preserved(0.5, 1, 1.0), std::invalid_argument);
}

TEST(predictions, bell_s) {
    ASSERT_NEAR(bell_s({1.5, 1, 0}), 1.5, 1e-15);
    ASSERT_NEAR(bell_s({1.5, 1, 1}), 1.0, 1e-15);
    ASSERT_NEAR(bell_s({1.5, 1, 2}), 2.5 / 3.0, 1e-15);
    ASSERT_THROW(bell_s({1.6, 1, 0.5}), std::invalid_argument);
    ASSERT_THROW(bell_s({1.5, 0, 1}), std::domain_error);
    ASSERT_THROW(bell_s({1.5, 0.5, 0.5}), std::domain_error);
}

TEST(predictions, bell_s_monotone_in_v_cvf) {
    for (double lambda : {0.5, 1.0, 2.0, -1.0}) {
        for (double s_i : {0.6, 1.0, 1.5}) {
            // Above the pole at v_cvf = 1 - 2 lambda^2.
            double pole = 1 - 2 * lambda * lambda;
            double prev = INFINITY;
            for (int k = 1; k <= 400; ++k) {
                double v = std::max(pole, 0.0) + 0.01 * k;
                double s = bell_s({s_i, lambda, v});
                ASSERT_LT(s, prev);
                prev = s;
            }
        }
    }
}

TEST(predictions, optimal_gain_closed_form) {
    auto g = optimal_gain(Family::Epr, 1);
    ASSERT_NEAR(g.lambda, 0, 1e-15);
    ASSERT_NEAR(g.v_cvf, 1, 1e-15);
    g = optimal_gain(Family::Epr, 0.25);
    ASSERT_NEAR(g.v_cvf, 8.0 / 17.0, 1e-15);
    ASSERT_NEAR(g.lambda, 3.75 / 4.25, 1e-15);
    for (double v_s : {0.01, 0.1, 0.5, 1.0}) {
        g = optimal_gain(Family::SingleMode, v_s);
        ASSERT_NEAR(g.v_cvf, 1, 1e-12);
        ASSERT_NEAR(g.lambda, (1 - v_s) / (1 + v_s), 1e-12);
    }
    ASSERT_THROW(optimal_gain(Family::Classical, 0.5), std::invalid_argument);
    ASSERT_THROW(optimal_gain(Family::Epr, 0), std::invalid_argument);
    ASSERT_THROW(optimal_gain(Family::SingleMode, 2), std::invalid_argument);
}

TEST(predictions, optimal_gain_matches_brute_force_scan) {
    for (double v : {0.01, 0.1, 0.25, 0.5, 0.9, 1.0}) {
        auto epr = scan_minimum([v](double l) { return eq_epr(l, v); });
        ASSERT_NEAR(optimal_gain(Family::Epr, v).v_cvf, epr.v_cvf, 1e-9);
        ASSERT_NEAR(optimal_gain(Family::Epr, v).lambda, epr.lambda, 2e-6);
        auto sm = scan_minimum([v](double l) { return eq_single_mode(l, v); });
        ASSERT_NEAR(optimal_gain(Family::SingleMode, v).v_cvf, sm.v_cvf, 1e-9);
    }
}

TEST(predictions, search_optimal_gain_matches_closed_form) {
    for (double v : {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) {
        auto sm = search_optimal_gain(
            [v](double l) { return field_conditional_variance(make_single_mode(l, v), InputState::vacuum()); }, -2, 2);
        ASSERT_NEAR(sm.v_cvf, optimal_gain(Family::SingleMode, v).v_cvf, 1e-9);
        ASSERT_GE(sm.v_cvf, 1 - 1e-9);
        auto epr = search_optimal_gain(
            [v](double l) { return field_conditional_variance(make_epr(l, v), InputState::vacuum()); }, -2, 2);
        ASSERT_NEAR(epr.v_cvf, optimal_gain(Family::Epr, v).v_cvf, 1e-9);
        ASSERT_EQ(epr.v_cvf < 1, v < 1);
    }
    ASSERT_THROW(search_optimal_gain([](double l) { return l * l; }, 1, 1), std::invalid_argument);
}
